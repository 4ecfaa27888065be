"""Rank-1 constraint systems over the BLS12-381 scalar field.

Synthesis always carries concrete values.  Compiling a relation means
synthesizing it on a blank instance and keeping only the matrices; because
no gadget branches on values, the matrices do not depend on the instance
(tests check this by comparing digests across instances).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable

from .errors import SynthesisError
from .field import P

ONE = 0


class LC:
    """Sparse linear combination ``sum(coeff * var)``; var 0 is the constant 1."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[int, int] | None = None):
        self.terms = terms if terms is not None else {}

    @staticmethod
    def const(c: int) -> "LC":
        c %= P
        return LC({ONE: c} if c else {})

    @staticmethod
    def var(v: int) -> "LC":
        return LC({v: 1})

    @staticmethod
    def of(x) -> "LC":
        return x if isinstance(x, LC) else LC.const(x)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and ONE in self.terms)

    def constant_value(self) -> int:
        return self.terms.get(ONE, 0)

    def __add__(self, other) -> "LC":
        other = LC.of(other)
        out = dict(self.terms)
        for v, c in other.terms.items():
            s = (out.get(v, 0) + c) % P
            if s:
                out[v] = s
            else:
                out.pop(v, None)
        return LC(out)

    __radd__ = __add__

    def __neg__(self) -> "LC":
        return LC({v: (-c) % P for v, c in self.terms.items()})

    def __sub__(self, other) -> "LC":
        return self + (-LC.of(other))

    def __rsub__(self, other) -> "LC":
        return LC.of(other) + (-self)

    def __mul__(self, k: int) -> "LC":
        if isinstance(k, LC):
            raise TypeError("LC * LC is not linear; use a multiplication gadget")
        k %= P
        if not k:
            return LC()
        return LC({v: c * k % P for v, c in self.terms.items()})

    __rmul__ = __mul__


@dataclass(frozen=True)
class R1CS:
    """Compiled constraint matrices.  Column 0 is the constant, then public
    inputs, then private wires."""

    num_inputs: int  # including the constant column
    num_aux: int
    a: tuple[tuple[tuple[int, int], ...], ...]
    b: tuple[tuple[tuple[int, int], ...], ...]
    c: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def num_constraints(self) -> int:
        return len(self.a)

    @property
    def num_vars(self) -> int:
        return self.num_inputs + self.num_aux

    @property
    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(b"%d|%d|%d|" % (self.num_inputs, self.num_aux, len(self.a)))
        for mat in (self.a, self.b, self.c):
            for row in mat:
                h.update(b";")
                for col, coeff in row:
                    h.update(b"%d:%x," % (col, coeff))
        return h.hexdigest()

    def is_satisfied(self, z: list[int]) -> int | None:
        """Index of the first violated row for full assignment ``z``, else None."""
        if len(z) != self.num_vars or z[0] != 1:
            return -1
        for i, (ra, rb, rc) in enumerate(zip(self.a, self.b, self.c)):
            va = sum(c * z[j] for j, c in ra) % P
            vb = sum(c * z[j] for j, c in rb) % P
            vc = sum(c * z[j] for j, c in rc) % P
            if va * vb % P != vc:
                return i
        return None


class ConstraintSystem:
    def __init__(self):
        self.inputs: list[int] = [1]
        self.aux: list[int] = []
        self.constraints: list[tuple[LC, LC, LC]] = []
        self.labels: list[str] = []
        self._sealed_inputs = False

    # public input ids are >= 0, private ids are ~k (negative)
    def public(self, value: int) -> LC:
        if self._sealed_inputs:
            raise SynthesisError("public inputs must be allocated before private wires")
        self.inputs.append(value % P)
        return LC.var(len(self.inputs) - 1)

    def private(self, value: int) -> LC:
        self._sealed_inputs = True
        self.aux.append(value % P)
        return LC.var(~(len(self.aux) - 1))

    def value(self, lc) -> int:
        if not isinstance(lc, LC):
            return lc % P
        total = 0
        for v, c in lc.terms.items():
            total += c * (self.inputs[v] if v >= 0 else self.aux[~v])
        return total % P

    def enforce(self, a, b, c, label: str = "") -> None:
        self.constraints.append((LC.of(a), LC.of(b), LC.of(c)))
        self.labels.append(label)

    @property
    def num_constraints(self) -> int:
        return len(self.constraints)

    def assignment(self) -> list[int]:
        return self.inputs + self.aux

    def public_values(self) -> list[int]:
        return self.inputs[1:]

    def unsatisfied(self) -> list[int]:
        bad = []
        for i, (a, b, c) in enumerate(self.constraints):
            if self.value(a) * self.value(b) % P != self.value(c):
                bad.append(i)
        return bad

    def is_satisfied(self) -> bool:
        return not self.unsatisfied()

    def compile(self) -> R1CS:
        n_in = len(self.inputs)

        def col(v: int) -> int:
            return v if v >= 0 else n_in + ~v

        def row(lc: LC) -> tuple[tuple[int, int], ...]:
            return tuple(sorted((col(v), c) for v, c in lc.terms.items()))

        a, b, c = [], [], []
        for la, lb, lc in self.constraints:
            a.append(row(la))
            b.append(row(lb))
            c.append(row(lc))
        return R1CS(n_in, len(self.aux), tuple(a), tuple(b), tuple(c))


def lc_sum(items: Iterable) -> LC:
    out = LC()
    for x in items:
        out = out + x
    return out
