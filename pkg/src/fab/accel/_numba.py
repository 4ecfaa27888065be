"""njit kernels: Montgomery arithmetic on 8 x 32-bit limbs held in uint64.

Every limb product plus the running column sum fits below 2^64, which is
why the limbs are 32 bits wide.  Field elements live in registers as
8-tuples; the add/sub/mul bodies are generated fully unrolled because numba
keeps unrolled scalar code in registers and loops over scratch arrays run
about three times slower.  Arrays cross the Python boundary as ``(n, 8)``
little-endian limbs.
"""

import numpy as np
from numba import njit

from ..field import P
from ._limbs import add, add_i, load, load_i, mul, mul_i, store, store_i, sub_i

NLIMBS = 8


def int_to_limbs(v: int) -> np.ndarray:
    return np.frombuffer(v.to_bytes(32, "little"), dtype="<u4").astype(np.uint64)


def ints_to_limbs(values) -> np.ndarray:
    raw = b"".join(int(v).to_bytes(32, "little") for v in values)
    return np.frombuffer(raw, dtype="<u4").astype(np.uint64).reshape(-1, NLIMBS)


def limbs_to_ints(arr: np.ndarray) -> list[int]:
    raw = np.ascontiguousarray(arr, dtype="<u4").tobytes()
    return [int.from_bytes(raw[i:i + 32], "little") for i in range(0, len(raw), 32)]


PL = int_to_limbs(P)
N0 = np.uint64((-pow(P, -1, 1 << 32)) % (1 << 32))
R2 = int_to_limbs(pow(2, 512, P))
ONE_LIMBS = int_to_limbs(1)




@njit(cache=True)
def map_mul(x, y):
    """Row-wise x * y; ``y`` may have a single row to broadcast."""
    out = np.empty_like(x)
    bcast = y.shape[0] == 1
    for i in range(x.shape[0]):
        store_i(out, i, mul_i(load_i(x, i), load_i(y, 0 if bcast else i)))
    return out


@njit(cache=True)
def map_sub(x, y):
    out = np.empty_like(x)
    for i in range(x.shape[0]):
        store_i(out, i, sub_i(load_i(x, i), load_i(y, i)))
    return out


@njit(cache=True)
def poseidon_first_lane(states, rc, mds, n_full_half, n_partial):
    """Permute each (3, 8) row of ``states`` in Montgomery form; return lane 0."""
    n = states.shape[0]
    rounds = rc.shape[0] // 3
    out = np.empty((n, NLIMBS), dtype=np.uint64)
    m00, m01, m02 = load(mds, 0), load(mds, 1), load(mds, 2)
    m10, m11, m12 = load(mds, 3), load(mds, 4), load(mds, 5)
    m20, m21, m22 = load(mds, 6), load(mds, 7), load(mds, 8)
    for row in range(n):
        s0 = load(states[row], 0)
        s1 = load(states[row], 1)
        s2 = load(states[row], 2)
        for r in range(rounds):
            s0 = add(s0, load(rc, 3 * r))
            s1 = add(s1, load(rc, 3 * r + 1))
            s2 = add(s2, load(rc, 3 * r + 2))
            x2 = mul(s0, s0)
            s0 = mul(mul(x2, x2), s0)
            if r < n_full_half or r >= n_full_half + n_partial:
                x2 = mul(s1, s1)
                s1 = mul(mul(x2, x2), s1)
                x2 = mul(s2, s2)
                s2 = mul(mul(x2, x2), s2)
            n0 = add(add(mul(m00, s0), mul(m01, s1)), mul(m02, s2))
            n1 = add(add(mul(m10, s0), mul(m11, s1)), mul(m12, s2))
            n2 = add(add(mul(m20, s0), mul(m21, s1)), mul(m22, s2))
            s0, s1, s2 = n0, n1, n2
        store(out, row, s0)
    return out


@njit(cache=True)
def ntt_inplace(a, twiddles):
    """Radix-2 DIT butterflies over bit-reversed Montgomery rows of ``a``.

    ``twiddles`` holds w^0 .. w^(n/2 - 1) for the primitive n-th root w.
    """
    n = a.shape[0]
    size = 2
    while size <= n:
        half = size // 2
        step = n // size
        for start in range(0, n, size):
            for k in range(half):
                v = mul_i(load_i(a, start + k + half), load_i(twiddles, k * step))
                u = load_i(a, start + k)
                store_i(a, start + k, add_i(u, v))
                store_i(a, start + k + half, sub_i(u, v))
        size *= 2
