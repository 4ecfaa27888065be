"""Scalar field of BLS12-381 and fixed-width element encoding.

Field elements are plain Python ints kept in ``[0, P)``.  Nothing here wraps
them in a class: every protocol value (identities, seeds, pseudonyms, hash
outputs, accumulator roots) is just an int that has been reduced.
"""

from __future__ import annotations

import secrets

P = 0x73EDA753299D7D483339D80809A1D80553BDA402FFFE5BFEFFFFFFFF00000001
BITS = P.bit_length()  # 255
BYTES = 32
TWO_ADICITY = 32
# 7 generates the full multiplicative group; its (P-1)/2^32 power is a 2^32-th root of unity
MULTIPLICATIVE_GENERATOR = 7
ROOT_OF_UNITY = pow(MULTIPLICATIVE_GENERATOR, (P - 1) >> TWO_ADICITY, P)


def fe(v: int) -> int:
    return v % P


def canonical_int(v: int) -> int:
    """Canonical representative of ``v``; order matches integer order on ``[0, P)``."""
    if not 0 <= v < P:
        raise ValueError("not a reduced field element")
    return v


def inv(v: int) -> int:
    if v % P == 0:
        raise ZeroDivisionError("inverse of zero")
    return pow(v, -1, P)


def inv_or_zero(v: int) -> int:
    v %= P
    return pow(v, -1, P) if v else 0


def batch_inv(values: list[int]) -> list[int]:
    """Montgomery's trick; zeros map to zero."""
    n = len(values)
    prefix = [1] * (n + 1)
    acc = 1
    for i, v in enumerate(values):
        if v:
            acc = acc * v % P
        prefix[i + 1] = acc
    inv_acc = pow(acc, P - 2, P)
    out = [0] * n
    for i in range(n - 1, -1, -1):
        v = values[i]
        if v:
            out[i] = inv_acc * prefix[i] % P
            inv_acc = inv_acc * v % P
    return out


def random_fe(rng=None) -> int:
    if rng is None:
        return secrets.randbelow(P)
    return rng.randrange(P)


def to_bytes(v: int) -> bytes:
    return canonical_int(v).to_bytes(BYTES, "little")


def from_bytes(data: bytes) -> int:
    if len(data) != BYTES:
        raise ValueError(f"expected {BYTES} bytes, got {len(data)}")
    v = int.from_bytes(data, "little")
    if v >= P:
        raise ValueError("non-canonical field encoding")
    return v


def to_hex(v: int) -> str:
    return to_bytes(v).hex()


def from_hex(s: str) -> int:
    return from_bytes(bytes.fromhex(s))


def sqrt(v: int) -> int | None:
    """Tonelli-Shanks square root, or None for non-residues."""
    v %= P
    if v == 0:
        return 0
    if pow(v, (P - 1) // 2, P) != 1:
        return None
    q = (P - 1) >> TWO_ADICITY
    m = TWO_ADICITY
    c = pow(MULTIPLICATIVE_GENERATOR, q, P)
    t = pow(v, q, P)
    r = pow(v, (q + 1) // 2, P)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % P
            i += 1
        b = pow(c, 1 << (m - i - 1), P)
        m, c = i, b * b % P
        t, r = t * c % P, r * b % P
    return r
