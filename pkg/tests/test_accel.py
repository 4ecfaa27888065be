"""Numba and numpy kernels agree with each other and with naive oracles."""

from __future__ import annotations

import os
import random
import subprocess
import sys
from pathlib import Path

import pytest

from fab import accel
from fab.accel import _domain, _limbgen
from fab.field import P
from fab.poseidon import Tag, hash2

KERNELS = sorted(accel.KERNELS)


def _naive_dft(values, root):
    n = len(values)
    return [sum(v * pow(root, i * j, P) for j, v in enumerate(values)) % P for i in range(n)]


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % P
    return out


def test_numba_available():
    assert "numba" in accel.KERNELS


def test_limbs_file_matches_generator():
    path = Path(_limbgen.__file__).with_name("_limbs.py")
    assert path.read_text() == _limbgen.render()


@pytest.mark.parametrize("name", KERNELS)
def test_poseidon_many_matches_scalar(name):
    rng = random.Random(0)
    n = 37
    lefts = [rng.randrange(P) for _ in range(n)]
    rights = [rng.randrange(P) for _ in range(n)]
    lefts[0], rights[0] = P - 1, 0
    expected = [hash2(Tag.NODE, a, b) for a, b in zip(lefts, rights)]
    assert accel.kernels(name).poseidon_many(Tag.NODE, lefts, rights) == expected


@pytest.mark.parametrize("name", KERNELS)
def test_poseidon_many_per_item_tags(name):
    rng = random.Random(1)
    tags = [rng.choice(list(Tag)) for _ in range(16)]
    lefts = [rng.randrange(P) for _ in range(16)]
    rights = [rng.randrange(P) for _ in range(16)]
    expected = [hash2(t, a, b) for t, a, b in zip(tags, lefts, rights)]
    assert accel.kernels(name).poseidon_many(tags, lefts, rights) == expected


@pytest.mark.parametrize("name", KERNELS)
@pytest.mark.parametrize("n", [1, 2, 8, 16])
def test_ntt_matches_naive_dft(name, n):
    rng = random.Random(n)
    values = [rng.randrange(P) for _ in range(n)]
    k = accel.kernels(name)
    assert k.ntt(values) == _naive_dft(values, _domain.root_of_unity(n))
    assert k.ntt(k.ntt(values), inverse=True) == values


@pytest.mark.parametrize("name", KERNELS)
def test_qap_quotient_matches_polynomial_division(name):
    n = 8
    rng = random.Random(5)
    a = [rng.randrange(P) for _ in range(n)]
    b = [rng.randrange(P) for _ in range(n)]
    c = [x * y % P for x, y in zip(a, b)]
    k = accel.kernels(name)
    root_inv = pow(_domain.root_of_unity(n), -1, P)
    n_inv = pow(n, -1, P)
    coeffs = [[v * n_inv % P for v in _naive_dft(e, root_inv)] for e in (a, b, c)]
    num = _poly_mul(coeffs[0], coeffs[1])
    for i, v in enumerate(coeffs[2]):
        num[i] = (num[i] - v) % P
    # divide by x^n - 1
    quotient = [0] * (len(num) - n)
    for i in range(len(num) - 1, n - 1, -1):
        q = num[i]
        quotient[i - n] = q
        num[i] = 0
        num[i - n] = (num[i - n] + q) % P
    assert all(v == 0 for v in num)
    h = k.qap_quotient(a, b, c)
    assert h[: len(quotient)] == quotient
    assert all(v == 0 for v in h[len(quotient):])


def test_backends_agree_on_larger_inputs():
    rng = random.Random(9)
    n = 256
    a = [rng.randrange(P) for _ in range(n)]
    b = [rng.randrange(P) for _ in range(n)]
    c = [rng.randrange(P) for _ in range(n)]
    np_k, nb_k = accel.kernels("numpy"), accel.kernels("numba")
    assert np_k.qap_quotient(a, b, c) == nb_k.qap_quotient(a, b, c)
    assert np_k.poseidon_many(Tag.LEAF, a, b) == nb_k.poseidon_many(Tag.LEAF, a, b)


def test_env_flag_selects_numpy():
    code = "from fab import accel; print(accel.BACKEND)"
    env = dict(os.environ, FAB_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    env["FAB_NUMBA"] = "1"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numba"
