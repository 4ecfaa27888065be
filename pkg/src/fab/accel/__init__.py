"""Hot numeric kernels with two interchangeable implementations.

``numba`` runs limb-level Montgomery arithmetic under ``@njit``; ``numpy``
uses object arrays of Python ints.  Both produce identical results.  The
``FAB_NUMBA`` environment variable picks one at import time: ``0`` forces
the numpy path, anything else (or unset) uses numba when it is importable.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _numpy

try:
    from . import _numba_api
except ImportError:  # numba missing
    _numba_api = None

KERNELS: dict[str, ModuleType] = {"numpy": _numpy}
if _numba_api is not None:
    KERNELS["numba"] = _numba_api


def _select() -> str:
    if os.environ.get("FAB_NUMBA", "1") == "0" or "numba" not in KERNELS:
        return "numpy"
    return "numba"


BACKEND = _select()


def kernels(name: str | None = None) -> ModuleType:
    return KERNELS[name or BACKEND]


def poseidon_many(tags, lefts, rights) -> list[int]:
    return KERNELS[BACKEND].poseidon_many(tags, lefts, rights)


def ntt(values, inverse: bool = False) -> list[int]:
    return KERNELS[BACKEND].ntt(values, inverse)


def qap_quotient(a_evals, b_evals, c_evals) -> list[int]:
    return KERNELS[BACKEND].qap_quotient(a_evals, b_evals, c_evals)
