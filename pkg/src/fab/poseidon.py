"""Poseidon permutation (x^5, width 3) over the BLS12-381 scalar field.

One instance serves every hashing need in the protocol.  Uses are separated
by a domain tag written into the capacity lane before the permutation, so
``hash2(LEAF, a, b)`` and ``hash2(NODE, a, b)`` are unrelated functions.

Round constants come from the Grain LFSR stream seeded with the instance
description (field, sbox, n, t, R_F, R_P).  The MDS matrix is the Cauchy
matrix ``1 / (x_i + y_j)`` with ``x_i = i`` and ``y_j = t + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache

from .field import BITS, P

WIDTH = 3
ALPHA = 5
FULL_ROUNDS = 8
PARTIAL_ROUNDS = 57


class Tag(IntEnum):
    """Domain tags; the value is placed in the capacity lane."""

    CRED = 1
    PSEUDONYM = 2
    LEAF = 3
    NODE = 4
    CHALLENGE = 5


def _grain_bits(field: int, sbox: int, n: int, t: int, r_f: int, r_p: int):
    init = (
        format(field, "02b")
        + format(sbox, "04b")
        + format(n, "012b")
        + format(t, "012b")
        + format(r_f, "010b")
        + format(r_p, "010b")
        + "1" * 30
    )
    state = [int(c) for c in init]

    def step() -> int:
        bit = state[62] ^ state[51] ^ state[38] ^ state[23] ^ state[13] ^ state[0]
        state.pop(0)
        state.append(bit)
        return bit

    for _ in range(160):
        step()
    while True:
        # self-shrinking: emit the second bit of each pair whose first bit is 1
        first = step()
        while first == 0:
            step()
            first = step()
        yield step()


@dataclass(frozen=True)
class PoseidonParams:
    width: int
    full_rounds: int
    partial_rounds: int
    round_constants: tuple[tuple[int, ...], ...]
    mds: tuple[tuple[int, ...], ...]

    @property
    def rounds(self) -> int:
        return self.full_rounds + self.partial_rounds

    def is_full_round(self, r: int) -> bool:
        half = self.full_rounds // 2
        return r < half or r >= half + self.partial_rounds


@lru_cache(maxsize=None)
def default_params() -> PoseidonParams:
    t, r_f, r_p = WIDTH, FULL_ROUNDS, PARTIAL_ROUNDS
    bits = _grain_bits(1, 0, BITS, t, r_f, r_p)
    constants: list[int] = []
    while len(constants) < (r_f + r_p) * t:
        v = 0
        for _ in range(BITS):
            v = (v << 1) | next(bits)
        if v < P:
            constants.append(v)
    rc = tuple(tuple(constants[r * t:(r + 1) * t]) for r in range(r_f + r_p))
    mds = tuple(
        tuple(pow(i + (t + j), P - 2, P) for j in range(t)) for i in range(t)
    )
    return PoseidonParams(t, r_f, r_p, rc, mds)


def permute(state: list[int], params: PoseidonParams | None = None) -> list[int]:
    params = params or default_params()
    s0, s1, s2 = state
    m = params.mds
    m00, m01, m02 = m[0]
    m10, m11, m12 = m[1]
    m20, m21, m22 = m[2]
    half = params.full_rounds // 2
    last_partial = half + params.partial_rounds
    for r, (c0, c1, c2) in enumerate(params.round_constants):
        s0 += c0
        s1 += c1
        s2 += c2
        if r < half or r >= last_partial:
            s0 = pow(s0, 5, P)
            s1 = pow(s1, 5, P)
            s2 = pow(s2, 5, P)
        else:
            s0 = pow(s0, 5, P)
        s0, s1, s2 = (
            (m00 * s0 + m01 * s1 + m02 * s2) % P,
            (m10 * s0 + m11 * s1 + m12 * s2) % P,
            (m20 * s0 + m21 * s1 + m22 * s2) % P,
        )
    return [s0, s1, s2]


def hash2(tag: int, a: int, b: int) -> int:
    """Two-to-one compression with the domain tag in the capacity lane."""
    return permute([int(tag), a, b])[0]


def prf(x: int, s: int) -> int:
    """Pseudonym of identity ``x`` in the realm with seed ``s``."""
    return hash2(Tag.PSEUDONYM, x, s)


def credential_hash(x: int) -> int:
    return hash2(Tag.CRED, x, 0)
