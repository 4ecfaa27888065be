"""List-in/list-out wrappers around the njit kernels."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from ..field import P
from ..poseidon import default_params
from . import _domain
from ._numba import (
    ONE_LIMBS, R2, ints_to_limbs, limbs_to_ints, map_mul, map_sub,
    ntt_inplace, poseidon_first_lane,
)

_R2 = R2.reshape(1, -1)
_ONE = ONE_LIMBS.reshape(1, -1)


def _mont(values) -> np.ndarray:
    return map_mul(ints_to_limbs(values), _R2)


def _canon(arr: np.ndarray) -> list[int]:
    return limbs_to_ints(map_mul(arr, _ONE))


@lru_cache(maxsize=1)
def _poseidon_tables():
    params = default_params()
    rc = _mont([c for row in params.round_constants for c in row])
    mds = _mont([c for row in params.mds for c in row])
    return rc, mds, params.full_rounds // 2, params.partial_rounds


def poseidon_many(tags, lefts, rights) -> list[int]:
    n = len(lefts)
    if n == 0:
        return []
    tag_list = [int(t) for t in tags] if np.ndim(tags) else [int(tags)] * n
    flat = []
    for t, a, b in zip(tag_list, lefts, rights):
        flat.extend((t, a, b))
    states = _mont(flat).reshape(n, 3, 8)
    rc, mds, half, partial = _poseidon_tables()
    return _canon(poseidon_first_lane(states, rc, mds, half, partial))


@lru_cache(maxsize=16)
def _twiddles(n: int, inverse: bool) -> np.ndarray:
    root = _domain.root_of_unity(n)
    if inverse:
        root = pow(root, P - 2, P)
    return _mont(_domain.powers(root, max(n // 2, 1)))


def _ntt_mont(a: np.ndarray, inverse: bool) -> np.ndarray:
    n = a.shape[0]
    a = np.ascontiguousarray(a[_domain.bitrev_perm(n)])
    ntt_inplace(a, _twiddles(n, inverse))
    return a


@lru_cache(maxsize=16)
def _scales(n: int):
    g = _domain.COSET_SHIFT
    n_inv = pow(n, P - 2, P)
    shift = _mont(_domain.powers(g, n))
    # 1/n folded into the inverse-coset unshift
    unshift = _mont([v * n_inv % P for v in _domain.powers(pow(g, P - 2, P), n)])
    z_inv = pow((pow(g, n, P) - 1) % P, P - 2, P)
    return shift, unshift, _mont([n_inv]), _mont([z_inv])


def ntt(values, inverse: bool = False) -> list[int]:
    n = len(values)
    a = _ntt_mont(_mont(values), inverse)
    if inverse:
        a = map_mul(a, _scales(n)[2])
    return _canon(a)


def qap_quotient(a_evals, b_evals, c_evals) -> list[int]:
    n = len(a_evals)
    shift, unshift, n_inv, z_inv = _scales(n)
    coset = []
    for evals in (a_evals, b_evals, c_evals):
        coeffs = map_mul(_ntt_mont(_mont(evals), True), n_inv)
        coset.append(_ntt_mont(map_mul(coeffs, shift), False))
    h = map_mul(map_sub(map_mul(coset[0], coset[1]), coset[2]), z_inv)
    return _canon(map_mul(_ntt_mont(h, True), unshift))
