"""Jubjub: the twisted Edwards curve -x^2 + y^2 = 1 + d x^2 y^2 over the
BLS12-381 scalar field.  Points are affine ``(x, y)`` tuples; the identity is
``(0, 1)``.  Scalar multiplication runs in projective coordinates."""

from __future__ import annotations

import hashlib
from functools import lru_cache

from . import field as F
from .field import P

A = P - 1
D = (-10240 * pow(10241, P - 2, P)) % P
ORDER = 0x0E7DB4EA6533AFA906673B0101343B00A6682093CCC81082D0970E5ED6F72CB7
COFACTOR = 8
SCALAR_BITS = ORDER.bit_length()  # 252
IDENTITY = (0, 1)


def on_curve(pt) -> bool:
    x, y = pt
    if not (0 <= x < P and 0 <= y < P):
        return False
    xx, yy = x * x % P, y * y % P
    return (A * xx + yy - 1 - D * xx % P * yy) % P == 0


def add(p1, p2):
    x1, y1 = p1
    x2, y2 = p2
    t = D * x1 % P * x2 % P * y1 % P * y2 % P
    x3 = (x1 * y2 + y1 * x2) * pow(1 + t, P - 2, P) % P
    y3 = (y1 * y2 - A * x1 * x2) * pow(1 - t, P - 2, P) % P
    return (x3, y3)


def neg(pt):
    return ((-pt[0]) % P, pt[1])


def _proj_add(p, q):
    X1, Y1, Z1 = p
    X2, Y2, Z2 = q
    a = Z1 * Z2 % P
    b = a * a % P
    c = X1 * X2 % P
    d = Y1 * Y2 % P
    e = D * c % P * d % P
    f = (b - e) % P
    g = (b + e) % P
    X3 = a * f % P * (((X1 + Y1) * (X2 + Y2) - c - d) % P) % P
    Y3 = a * g % P * ((d - A * c) % P) % P
    return (X3, Y3, f * g % P)


def mul(k: int, pt):
    """k * pt for any integer k >= 0 (not reduced mod ORDER)."""
    if k < 0:
        return mul(-k, neg(pt))
    acc = (0, 1, 1)
    base = (pt[0], pt[1], 1)
    for bit in bin(k)[2:] if k else "":
        acc = _proj_add(acc, acc)
        if bit == "1":
            acc = _proj_add(acc, base)
    X, Y, Z = acc
    zi = pow(Z, P - 2, P)
    return (X * zi % P, Y * zi % P)


def in_subgroup(pt) -> bool:
    return on_curve(pt) and mul(ORDER, pt) == IDENTITY


def _point_for_y(y: int):
    # x^2 = (y^2 - 1) / (d y^2 - a)
    yy = y * y % P
    den = (D * yy - A) % P
    if den == 0:
        return None
    x = F.sqrt((yy - 1) * pow(den, P - 2, P) % P)
    if x is None:
        return None
    return (min(x, P - x), y)


@lru_cache(maxsize=None)
def generator():
    """Prime-order generator from try-and-increment on a fixed seed, cleared of the cofactor."""
    counter = 0
    while True:
        seed = hashlib.sha256(b"fab/jubjub/generator/%d" % counter).digest()
        pt = _point_for_y(int.from_bytes(seed, "little") % P)
        counter += 1
        if pt is None:
            continue
        g = mul(COFACTOR, pt)
        if g != IDENTITY and mul(ORDER, g) == IDENTITY:
            return g


def to_bytes(pt) -> bytes:
    return F.to_bytes(pt[0]) + F.to_bytes(pt[1])


def from_bytes(data: bytes):
    if len(data) != 2 * F.BYTES:
        raise ValueError("point encoding must be 64 bytes")
    pt = (F.from_bytes(data[:32]), F.from_bytes(data[32:]))
    if not on_curve(pt):
        raise ValueError("point not on curve")
    return pt
