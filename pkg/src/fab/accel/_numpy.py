"""Pure-numpy kernels: object arrays of Python ints, vectorized per round/stage."""

from __future__ import annotations

import numpy as np

from ..field import P
from ..poseidon import default_params
from . import _domain


def poseidon_many(tags, lefts, rights) -> list[int]:
    params = default_params()
    n = len(lefts)
    s0 = np.empty(n, dtype=object)
    s0[:] = [int(t) for t in tags] if np.ndim(tags) else [int(tags)] * n
    s1 = np.array([int(v) for v in lefts] + [0], dtype=object)[:n]
    s2 = np.array([int(v) for v in rights] + [0], dtype=object)[:n]
    (m00, m01, m02), (m10, m11, m12), (m20, m21, m22) = params.mds
    for r, (c0, c1, c2) in enumerate(params.round_constants):
        s0 = (s0 + c0) % P
        s1 = (s1 + c1) % P
        s2 = (s2 + c2) % P
        lanes = (0, 1, 2) if params.is_full_round(r) else (0,)
        for lane in lanes:
            x = (s0, s1, s2)[lane]
            x2 = x * x % P
            x5 = x2 * x2 % P * x % P
            if lane == 0:
                s0 = x5
            elif lane == 1:
                s1 = x5
            else:
                s2 = x5
        s0, s1, s2 = (
            (m00 * s0 + m01 * s1 + m02 * s2) % P,
            (m10 * s0 + m11 * s1 + m12 * s2) % P,
            (m20 * s0 + m21 * s1 + m22 * s2) % P,
        )
    return [int(v) for v in s0]


def _ntt(a: np.ndarray, root: int) -> np.ndarray:
    n = a.shape[0]
    a = a[_domain.bitrev_perm(n)]
    tw = np.array(_domain.powers(root, max(n // 2, 1)), dtype=object)
    size = 2
    while size <= n:
        half = size // 2
        w = tw[:: n // size][:half]
        blocks = a.reshape(-1, size)
        u = blocks[:, :half]
        v = blocks[:, half:] * w % P
        a = np.concatenate([(u + v) % P, (u - v) % P], axis=1).reshape(n)
        size *= 2
    return a


def ntt(values, inverse: bool = False) -> list[int]:
    n = len(values)
    a = np.array([int(v) for v in values] + [0], dtype=object)[:n]
    root = _domain.root_of_unity(n)
    if inverse:
        out = _ntt(a, pow(root, P - 2, P)) * pow(n, P - 2, P) % P
    else:
        out = _ntt(a, root)
    return [int(v) for v in out]


def qap_quotient(a_evals, b_evals, c_evals) -> list[int]:
    """Coefficients of (A*B - C) / Z, with A, B, C given on the size-n domain."""
    n = len(a_evals)
    root = _domain.root_of_unity(n)
    root_inv = pow(root, P - 2, P)
    n_inv = pow(n, P - 2, P)
    g = _domain.COSET_SHIFT
    shift = np.array(_domain.powers(g, n), dtype=object)
    shift_inv = np.array(_domain.powers(pow(g, P - 2, P), n), dtype=object)
    coset = []
    for evals in (a_evals, b_evals, c_evals):
        arr = np.array([int(v) for v in evals] + [0], dtype=object)[:n]
        coeffs = _ntt(arr, root_inv) * n_inv % P
        coset.append(_ntt(coeffs * shift % P, root))
    z_inv = pow((pow(g, n, P) - 1) % P, P - 2, P)
    h = (coset[0] * coset[1] - coset[2]) % P * z_inv % P
    coeffs = _ntt(h, root_inv) * n_inv % P * shift_inv % P
    return [int(v) for v in coeffs]
