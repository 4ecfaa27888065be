"""Constraint gadgets agree with native arithmetic."""

from __future__ import annotations

import random

import pytest

from fab import field as F
from fab import gadgets as G
from fab import jubjub as J
from fab.credentials import Signature, ip_init, ip_sign, schnorr_verify
from fab.errors import SynthesisError
from fab.poseidon import Tag, hash2
from fab.r1cs import LC, ConstraintSystem


def test_hash2_dual_evaluation():
    rng = random.Random(0)
    cs = ConstraintSystem()
    for _ in range(100):
        a, b = rng.randrange(F.P), rng.randrange(F.P)
        tag = rng.choice(list(Tag))
        out = G.hash2(cs, tag, cs.private(a), cs.private(b))
        assert cs.value(out) == hash2(tag, a, b)
    assert cs.is_satisfied()


def test_less_than_matches_integers():
    rng = random.Random(1)
    edge = [0, 1, F.P - 1, F.P - 2, 1 << 128, (1 << 128) - 1, 1 << 127]
    pairs = [(x, y) for x in edge for y in edge]
    pairs += [(rng.randrange(F.P), rng.randrange(F.P)) for _ in range(40)]
    pairs += [(v, v + 1) for v in (rng.randrange(F.P - 1) for _ in range(10))]
    for x, y in pairs:
        cs = ConstraintSystem()
        xb = G.canonical_bits(cs, cs.private(x))
        yb = G.canonical_bits(cs, cs.private(y))
        lt = G.less_than(cs, xb, yb)
        assert cs.value(lt) == int(x < y), (x, y)
        assert cs.is_satisfied()


def test_to_bits_overflow_unsatisfiable():
    cs = ConstraintSystem()
    G.to_bits(cs, cs.private(300), 8)
    assert not cs.is_satisfied()


def test_is_zero_and_select():
    cs = ConstraintSystem()
    assert cs.value(G.is_zero(cs, cs.private(0))) == 1
    assert cs.value(G.is_zero(cs, cs.private(5))) == 0
    one, zero = cs.private(1), cs.private(0)
    assert cs.value(G.select(cs, one, LC.const(7), LC.const(9))) == 7
    assert cs.value(G.select(cs, zero, LC.const(7), LC.const(9))) == 9
    assert cs.is_satisfied()


def test_point_ops_match_native():
    rng = random.Random(2)
    g = J.generator()
    for _ in range(10):
        p1 = J.mul(rng.randrange(J.ORDER), g)
        p2 = J.mul(rng.randrange(J.ORDER), g)
        cs = ConstraintSystem()
        w1 = (cs.private(p1[0]), cs.private(p1[1]))
        w2 = (cs.private(p2[0]), cs.private(p2[1]))
        s = G.point_add(cs, w1, w2)
        d = G.point_double(cs, w1)
        G.assert_on_curve(cs, w1)
        assert (cs.value(s[0]), cs.value(s[1])) == J.add(p1, p2)
        assert (cs.value(d[0]), cs.value(d[1])) == J.add(p1, p1)
        assert cs.is_satisfied()


def test_off_curve_point_unsatisfiable():
    cs = ConstraintSystem()
    G.assert_on_curve(cs, (cs.private(1), cs.private(2)))
    assert not cs.is_satisfied()


def test_scalar_mul_matches_native():
    rng = random.Random(3)
    g = J.generator()
    for _ in range(3):
        k = rng.randrange(J.ORDER)
        pt = J.mul(rng.randrange(J.ORDER), g)
        cs = ConstraintSystem()
        bits = G.to_bits(cs, cs.private(k), J.SCALAR_BITS)
        fixed = G.fixed_base_mul(cs, bits, g)
        var = G.variable_base_mul(cs, bits, (cs.private(pt[0]), cs.private(pt[1])))
        assert (cs.value(fixed[0]), cs.value(fixed[1])) == J.mul(k, g)
        assert (cs.value(var[0]), cs.value(var[1])) == J.mul(k, pt)
        assert cs.is_satisfied()


def _schnorr_cs(pk, sig, message) -> ConstraintSystem:
    cs = ConstraintSystem()
    pkw = (cs.public(pk.point[0]), cs.public(pk.point[1]))
    m = cs.public(message)
    r = (cs.private(sig.r[0]), cs.private(sig.r[1]))
    s = cs.private(sig.s % F.P)
    G.schnorr_verify(cs, pkw, r, s, m)
    return cs


def test_schnorr_gadget_agrees_with_native():
    rng = random.Random(4)
    kp = ip_init(rng)
    other = ip_init(rng)
    for i in range(20):
        m = rng.randrange(F.P)
        sig = ip_sign(kp.sk, m, rng)
        pk = kp.pk if i % 3 else other.pk
        msg = m if i % 5 else (m + 1) % F.P
        assert _schnorr_cs(pk, sig, msg).is_satisfied() == schnorr_verify(pk, msg, sig)


def test_schnorr_gadget_rejects_non_reduced_scalar():
    kp = ip_init(random.Random(5))
    sig = ip_sign(kp.sk, 11)
    big = Signature(sig.r, sig.s + J.ORDER)
    assert not schnorr_verify(kp.pk, 11, big)
    assert not _schnorr_cs(kp.pk, big, 11).is_satisfied()


def test_public_after_private_rejected():
    cs = ConstraintSystem()
    cs.private(1)
    with pytest.raises(SynthesisError):
        cs.public(2)


def test_constant_products_are_free():
    cs = ConstraintSystem()
    x = cs.private(3)
    out = G.mul(cs, x, LC.const(5))
    assert cs.num_constraints == 0
    assert cs.value(out) == 15
