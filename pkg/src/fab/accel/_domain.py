"""Evaluation-domain helpers shared by both kernel flavours."""

from functools import lru_cache

import numpy as np

from ..field import MULTIPLICATIVE_GENERATOR, P, ROOT_OF_UNITY, TWO_ADICITY

COSET_SHIFT = MULTIPLICATIVE_GENERATOR


def root_of_unity(n: int) -> int:
    if n & (n - 1) or n == 0:
        raise ValueError("domain size must be a power of two")
    k = n.bit_length() - 1
    if k > TWO_ADICITY:
        raise ValueError("domain too large for the field's 2-adicity")
    return pow(ROOT_OF_UNITY, 1 << (TWO_ADICITY - k), P)


def powers(base: int, count: int) -> list[int]:
    out = [1] * count
    for i in range(1, count):
        out[i] = out[i - 1] * base % P
    return out


@lru_cache(maxsize=32)
def bitrev_perm(n: int) -> np.ndarray:
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    return rev
