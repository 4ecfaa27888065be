"""Constraint gadgets: arithmetic, bits and comparisons, Poseidon, Merkle
paths, and Jubjub/Schnorr verification.

Every gadget takes the constraint system first and returns ``LC`` values.
Products where one side is a constant are folded into linear terms and cost
nothing.
"""

from __future__ import annotations

from . import jubjub as J
from .field import BITS, P, inv_or_zero
from .poseidon import Tag, default_params
from .r1cs import LC, ConstraintSystem, lc_sum


def mul(cs: ConstraintSystem, a, b, label: str = "mul") -> LC:
    a, b = LC.of(a), LC.of(b)
    if a.is_constant():
        return b * a.constant_value()
    if b.is_constant():
        return a * b.constant_value()
    out = cs.private(cs.value(a) * cs.value(b))
    cs.enforce(a, b, out, label)
    return out


def divide(cs: ConstraintSystem, num, den, label: str = "div") -> LC:
    """``num / den`` with the constraint ``out * den = num`` (den must be nonzero)."""
    num, den = LC.of(num), LC.of(den)
    out = cs.private(cs.value(num) * inv_or_zero(cs.value(den)))
    cs.enforce(out, den, num, label)
    return out


def assert_equal(cs: ConstraintSystem, a, b, label: str = "eq") -> None:
    cs.enforce(LC.of(a) - LC.of(b), LC.const(1), LC(), label)


def assert_boolean(cs: ConstraintSystem, bit: LC, label: str = "bool") -> None:
    cs.enforce(bit, LC.const(1) - bit, LC(), label)


def alloc_boolean(cs: ConstraintSystem, value: int, label: str = "bool") -> LC:
    bit = cs.private(1 if value else 0)
    assert_boolean(cs, bit, label)
    return bit


def to_bits(cs: ConstraintSystem, x, n: int, label: str = "bits") -> list[LC]:
    """Little-endian ``n``-bit decomposition of ``x``; requires ``n < 255`` or a
    later canonicity check, since longer decompositions can wrap mod P."""
    x = LC.of(x)
    v = cs.value(x)
    bits = [alloc_boolean(cs, (v >> i) & 1, label) for i in range(n)]
    assert_equal(cs, lc_sum(b * (1 << i) for i, b in enumerate(bits)), x, label + ".pack")
    return bits


def pack(bits: list) -> LC:
    return lc_sum(LC.of(b) * (1 << i) for i, b in enumerate(bits))


def is_zero(cs: ConstraintSystem, x, label: str = "is_zero") -> LC:
    x = LC.of(x)
    v = cs.value(x)
    inv = cs.private(inv_or_zero(v))
    z = cs.private(1 if v == 0 else 0)
    cs.enforce(x, inv, LC.const(1) - z, label)
    cs.enforce(x, z, LC(), label)
    return z


def select(cs: ConstraintSystem, bit, if_one, if_zero, label: str = "select") -> LC:
    """``bit ? if_one : if_zero`` for a boolean ``bit``."""
    if_one, if_zero = LC.of(if_one), LC.of(if_zero)
    return if_zero + mul(cs, bit, if_one - if_zero, label)


_LO = 128
_HI = BITS - _LO  # 127


def less_than(cs: ConstraintSystem, x_bits: list, y_bits: list, label: str = "lt") -> LC:
    """Boolean ``x < y`` for 255-bit canonical decompositions (entries may be ints).

    Splits each side into a 128-bit low limb and a 127-bit high limb; limb
    differences offset by a power of two stay far below P, so one extra
    decomposition per limb exposes the borrow.
    """
    x_lo, x_hi = pack(x_bits[:_LO]), pack(x_bits[_LO:])
    y_lo, y_hi = pack(y_bits[:_LO]), pack(y_bits[_LO:])
    lo_ge = to_bits(cs, x_lo - y_lo + (1 << _LO), _LO + 1, label + ".lo")[_LO]
    hi_ge = to_bits(cs, x_hi - y_hi + (1 << _HI), _HI + 1, label + ".hi")[_HI]
    hi_eq = is_zero(cs, x_hi - y_hi, label + ".hi_eq")
    # hi_lt and hi_eq are exclusive, so the disjunction is a plain sum
    return (LC.const(1) - hi_ge) + mul(cs, hi_eq, LC.const(1) - lo_ge, label + ".and")


def const_bits(v: int, n: int = BITS) -> list[int]:
    return [(v >> i) & 1 for i in range(n)]


def canonical_bits(cs: ConstraintSystem, x, label: str = "canon") -> list[LC]:
    """255-bit decomposition of ``x`` whose integer value is below P."""
    bits = to_bits(cs, x, BITS, label)
    lt = less_than(cs, bits, const_bits(P), label + ".lt_p")
    assert_equal(cs, lt, 1, label + ".lt_p")
    return bits


# -- Poseidon -----------------------------------------------------------------

def _pow5(cs: ConstraintSystem, x: LC, label: str) -> LC:
    x2 = mul(cs, x, x, label)
    x4 = mul(cs, x2, x2, label)
    return mul(cs, x4, x, label)


def poseidon_permute(cs: ConstraintSystem, state: list, label: str = "poseidon") -> list[LC]:
    params = default_params()
    s = [LC.of(v) for v in state]
    m = params.mds
    for r, rc in enumerate(params.round_constants):
        s = [s[i] + rc[i] for i in range(3)]
        if params.is_full_round(r):
            s = [_pow5(cs, x, label) for x in s]
        else:
            s[0] = _pow5(cs, s[0], label)
        s = [lc_sum(s[j] * m[i][j] for j in range(3)) for i in range(3)]
    return s


def hash2(cs: ConstraintSystem, tag: int, a, b, label: str = "hash") -> LC:
    return poseidon_permute(cs, [int(tag), a, b], label)[0]


# -- Merkle / complementary tree ------------------------------------------------

def merkle_root(cs: ConstraintSystem, leaf: LC, directions: list, siblings: list,
                label: str = "merkle") -> LC:
    cur = leaf
    for d, sib in zip(directions, siblings):
        left = select(cs, d, sib, cur, label + ".swap")
        right = cur + LC.of(sib) - left
        cur = hash2(cs, Tag.NODE, left, right, label + ".node")
    return cur


def ver_non_mem(cs: ConstraintSystem, root, ps, a, b, directions: list, siblings: list,
                label: str = "nonmem") -> None:
    """Constrain ``a <= ps < b`` and membership of leaf ``H(a, b)`` under ``root``.

    ``directions`` must already be constrained boolean.
    """
    ps_bits = canonical_bits(cs, ps, label + ".ps")
    a_bits = canonical_bits(cs, a, label + ".a")
    b_bits = canonical_bits(cs, b, label + ".b")
    assert_equal(cs, less_than(cs, ps_bits, a_bits, label + ".ps_lt_a"), 0, label + ".a_le_ps")
    assert_equal(cs, less_than(cs, ps_bits, b_bits, label + ".ps_lt_b"), 1, label + ".ps_lt_b")
    leaf = hash2(cs, Tag.LEAF, a, b, label + ".leaf")
    assert_equal(cs, merkle_root(cs, leaf, directions, siblings, label), root, label + ".root")


# -- Jubjub ---------------------------------------------------------------------

def point_add(cs: ConstraintSystem, p1, p2, label: str = "jj.add"):
    """Complete twisted-Edwards addition; 7 constraints, fewer with a constant operand."""
    x1, y1 = LC.of(p1[0]), LC.of(p1[1])
    x2, y2 = LC.of(p2[0]), LC.of(p2[1])
    x1y2 = mul(cs, x1, y2, label)
    y1x2 = mul(cs, y1, x2, label)
    x1x2 = mul(cs, x1, x2, label)
    y1y2 = mul(cs, y1, y2, label)
    dt = mul(cs, x1x2, y1y2, label) * J.D
    x3 = divide(cs, x1y2 + y1x2, LC.const(1) + dt, label)
    y3 = divide(cs, y1y2 + x1x2, LC.const(1) - dt, label)
    return x3, y3


def point_double(cs: ConstraintSystem, pt, label: str = "jj.dbl"):
    """Doubling for an on-curve point via ``2xy/(y^2-x^2)``, ``(y^2+x^2)/(2+x^2-y^2)``."""
    x, y = LC.of(pt[0]), LC.of(pt[1])
    xx = mul(cs, x, x, label)
    yy = mul(cs, y, y, label)
    xy = mul(cs, x, y, label)
    x3 = divide(cs, xy * 2, yy - xx, label)
    y3 = divide(cs, yy + xx, LC.const(2) + xx - yy, label)
    return x3, y3


def assert_on_curve(cs: ConstraintSystem, pt, label: str = "jj.on_curve") -> None:
    x, y = LC.of(pt[0]), LC.of(pt[1])
    xx = mul(cs, x, x, label)
    yy = mul(cs, y, y, label)
    xxyy = mul(cs, xx, yy, label)
    assert_equal(cs, yy - xx, LC.const(1) + xxyy * J.D, label)


def fixed_base_mul(cs: ConstraintSystem, bits: list, base, label: str = "jj.fixed"):
    """sum(bit_i * 2^i * base) using precomputed constant multiples."""
    acc = (LC.const(J.IDENTITY[0]), LC.const(J.IDENTITY[1]))
    mult = base
    for i, bit in enumerate(bits):
        added = point_add(cs, acc, mult, label)
        acc = (select(cs, bit, added[0], acc[0], label), select(cs, bit, added[1], acc[1], label))
        mult = J.add(mult, mult)
    return acc


def variable_base_mul(cs: ConstraintSystem, bits: list, pt, label: str = "jj.var"):
    """Double-and-add over little-endian ``bits`` (processed high to low)."""
    acc = (LC.const(0), LC.const(1))
    px, py = LC.of(pt[0]), LC.of(pt[1])
    for bit in reversed(bits):
        acc = point_double(cs, acc, label)
        q = (mul(cs, bit, px, label), LC.const(1) + mul(cs, bit, py - 1, label))
        acc = point_add(cs, acc, q, label)
    return acc


def schnorr_verify(cs: ConstraintSystem, pk, r_point, s, message, label: str = "schnorr") -> None:
    """Constrain ``s < l`` and ``s*G == R + c*PK`` with ``c`` recomputed from ``(R, PK, message)``."""
    assert_on_curve(cs, r_point, label + ".R")
    hr = hash2(cs, Tag.CHALLENGE, r_point[0], r_point[1], label + ".c")
    hpk = hash2(cs, Tag.CHALLENGE, pk[0], pk[1], label + ".c")
    c = hash2(cs, Tag.CHALLENGE, hr, hash2(cs, Tag.CHALLENGE, hpk, message, label + ".c"), label + ".c")
    c_bits = canonical_bits(cs, c, label + ".c_bits")
    s_bits = to_bits(cs, s, J.SCALAR_BITS, label + ".s_bits")
    s_lt = less_than(cs, s_bits + [0] * (BITS - J.SCALAR_BITS), const_bits(J.ORDER), label + ".s_lt_l")
    assert_equal(cs, s_lt, 1, label + ".s_lt_l")
    lhs = fixed_base_mul(cs, s_bits, J.generator(), label + ".sG")
    cpk = variable_base_mul(cs, c_bits, pk, label + ".cPK")
    rhs = point_add(cs, r_point, cpk, label + ".R+cPK")
    assert_equal(cs, lhs[0], rhs[0], label + ".x")
    assert_equal(cs, lhs[1], rhs[1], label + ".y")
