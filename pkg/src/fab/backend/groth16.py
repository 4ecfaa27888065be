"""Groth16 over BLS12-381 (group arithmetic from arkworks bindings).

The R1CS is turned into a QAP over a radix-2 domain of size ``n`` with one
extra row ``z_j * 1 = 0`` per public input, which keeps the input
polynomials linearly independent.  Proofs are ``(A, B, C)`` in compressed
form: 48 + 96 + 48 = 192 bytes for every statement.
"""

from __future__ import annotations

import hashlib
import secrets
from dataclasses import dataclass, field

from py_arkworks_bls12381 import GT, G1Point, G2Point, Scalar

from .. import accel
from ..accel._domain import powers, root_of_unity
from ..errors import ProtocolError, SynthesisError, TrapdoorUnavailable, UnsatisfiedRelation
from ..field import P, batch_inv
from ..relations import Relation, relation_for_id
from . import Proof, RelationKeys

NAME = "groth16"
PROOF_BYTES = 48 + 96 + 48
G1 = G1Point()
G2 = G2Point()


def _rand(rng) -> int:
    v = 0
    while v == 0:
        v = rng.randrange(P)
    return v


def _g1(k: int) -> G1Point:
    return G1 * Scalar(k % P) if k % P else G1Point.identity()


def _g2(k: int) -> G2Point:
    return G2 * Scalar(k % P) if k % P else G2Point.identity()


def _msm(points: list, scalars: list[int], identity):
    pts, scs = [], []
    for pt, s in zip(points, scalars):
        if s:
            pts.append(pt)
            scs.append(Scalar(s))
    if not pts:
        return identity
    return type(identity).multiexp_unchecked(pts, scs)


def _b(pt) -> bytes:
    return bytes(pt.to_compressed_bytes())


def domain_size(num_constraints: int, num_inputs: int) -> int:
    n = 1
    while n < num_constraints + num_inputs:
        n <<= 1
    return n


@dataclass
class VerifyingKey:
    relation: Relation
    params_digest: str | None
    circuit_digest: str
    alpha_g1: G1Point
    beta_g2: G2Point
    gamma_g2: G2Point
    delta_g2: G2Point
    ic: list[G1Point]

    def to_dict(self) -> dict:
        return {
            "backend": NAME,
            "relation_id": self.relation.id,
            "params_digest": self.params_digest,
            "circuit_digest": self.circuit_digest,
            "alpha_g1": _b(self.alpha_g1).hex(),
            "beta_g2": _b(self.beta_g2).hex(),
            "gamma_g2": _b(self.gamma_g2).hex(),
            "delta_g2": _b(self.delta_g2).hex(),
            "ic": [_b(p).hex() for p in self.ic],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "VerifyingKey":
        if d.get("backend") != NAME:
            raise ProtocolError("not a groth16 verifying key")
        g1 = lambda h: G1Point.from_compressed_bytes(bytes.fromhex(h))  # noqa: E731
        g2 = lambda h: G2Point.from_compressed_bytes(bytes.fromhex(h))  # noqa: E731
        return cls(relation_for_id(d["relation_id"]), d["params_digest"], d["circuit_digest"],
                   g1(d["alpha_g1"]), g2(d["beta_g2"]), g2(d["gamma_g2"]), g2(d["delta_g2"]),
                   [g1(h) for h in d["ic"]])

    def digest(self) -> str:
        import json
        return hashlib.sha256(json.dumps(self.to_dict(), sort_keys=True).encode()).hexdigest()


@dataclass
class ProvingKey:
    vk: VerifyingKey
    domain: int
    beta_g1: G1Point
    delta_g1: G1Point
    a_query: list[G1Point]
    b_g1_query: list[G1Point]
    b_g2_query: list[G2Point]
    h_query: list[G1Point]
    l_query: list[G1Point]

    @property
    def relation(self) -> Relation:
        return self.vk.relation

    def to_dict(self) -> dict:
        hx = lambda pts: [_b(p).hex() for p in pts]  # noqa: E731
        return {
            "vk": self.vk.to_dict(), "domain": self.domain,
            "beta_g1": _b(self.beta_g1).hex(), "delta_g1": _b(self.delta_g1).hex(),
            "a_query": hx(self.a_query), "b_g1_query": hx(self.b_g1_query),
            "b_g2_query": hx(self.b_g2_query), "h_query": hx(self.h_query), "l_query": hx(self.l_query),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ProvingKey":
        # the prover only hurts itself with a bad key, so skip subgroup checks
        g1 = lambda h: G1Point.from_compressed_bytes_unchecked(bytes.fromhex(h))  # noqa: E731
        g2 = lambda h: G2Point.from_compressed_bytes_unchecked(bytes.fromhex(h))  # noqa: E731
        return cls(VerifyingKey.from_dict(d["vk"]), int(d["domain"]), g1(d["beta_g1"]), g1(d["delta_g1"]),
                   [g1(h) for h in d["a_query"]], [g1(h) for h in d["b_g1_query"]],
                   [g2(h) for h in d["b_g2_query"]], [g1(h) for h in d["h_query"]],
                   [g1(h) for h in d["l_query"]])


@dataclass
class Trapdoor:
    alpha: int
    beta: int
    gamma: int
    delta: int
    tau: int
    ic_scalars: list[int] = field(default_factory=list)  # (beta*u_j + alpha*v_j + w_j)(tau)


def _evaluations(r1cs, z: list[int], n: int) -> tuple[list[int], list[int], list[int]]:
    m = r1cs.num_constraints
    out = []
    for mat in (r1cs.a, r1cs.b, r1cs.c):
        ev = [sum(c * z[j] for j, c in row) % P for row in mat]
        ev.extend([0] * (n - m))
        out.append(ev)
    for j in range(r1cs.num_inputs):
        out[0][m + j] = z[j]
    return out[0], out[1], out[2]


class Groth16Backend:
    name = NAME

    def setup(self, relation: Relation, params_digest: str | None = None, rng=None,
              with_trapdoor: bool = True) -> RelationKeys:
        rng = rng or secrets.SystemRandom()
        r1cs = relation.compile()
        m, ni, nv = r1cs.num_constraints, r1cs.num_inputs, r1cs.num_vars
        n = domain_size(m, ni)
        alpha, beta, gamma, delta = (_rand(rng) for _ in range(4))
        tau = _rand(rng)
        while pow(tau, n, P) == 1:
            tau = _rand(rng)

        # Lagrange basis at tau: L_i = (tau^n - 1)/n * w^i / (tau - w^i)
        w_pows = powers(root_of_unity(n), n)
        scale = (pow(tau, n, P) - 1) * pow(n, P - 2, P) % P
        inv = batch_inv([(tau - w) % P for w in w_pows])
        lag = [scale * w % P * i % P for w, i in zip(w_pows, inv)]

        u, v, w = [0] * nv, [0] * nv, [0] * nv
        for acc, mat in ((u, r1cs.a), (v, r1cs.b), (w, r1cs.c)):
            for i, row in enumerate(mat):
                li = lag[i]
                for j, c in row:
                    acc[j] = (acc[j] + c * li) % P
        for j in range(ni):
            u[j] = (u[j] + lag[m + j]) % P

        k = [(beta * u[j] + alpha * v[j] + w[j]) % P for j in range(nv)]
        gamma_inv, delta_inv = pow(gamma, P - 2, P), pow(delta, P - 2, P)
        zt_delta = (pow(tau, n, P) - 1) * delta_inv % P

        vk = VerifyingKey(relation, params_digest, r1cs.digest, _g1(alpha), _g2(beta), _g2(gamma),
                          _g2(delta), [_g1(k[j] * gamma_inv) for j in range(ni)])
        pk = ProvingKey(
            vk, n, _g1(beta), _g1(delta),
            [_g1(x) for x in u], [_g1(x) for x in v], [_g2(x) for x in v],
            [_g1(t * zt_delta) for t in powers(tau, n - 1)],
            [_g1(k[j] * delta_inv) for j in range(ni, nv)],
        )
        td = Trapdoor(alpha, beta, gamma, delta, tau, k[:ni]) if with_trapdoor else None
        return RelationKeys(NAME, pk, vk, td)

    def prove(self, pk: ProvingKey, stmt, wit, rng=None) -> Proof:
        rng = rng or secrets.SystemRandom()
        relation = pk.relation
        r1cs = relation.compile()
        try:
            cs = relation.assign(stmt, wit)
        except SynthesisError as exc:
            raise UnsatisfiedRelation(str(exc)) from exc
        if not relation.statement_ok(stmt):
            raise UnsatisfiedRelation("statement fails native validity checks")
        z = cs.assignment()
        a_ev, b_ev, c_ev = _evaluations(r1cs, z, pk.domain)
        if any(x * y % P != c for x, y, c in zip(a_ev, b_ev, c_ev)):
            raise UnsatisfiedRelation(f"witness does not satisfy {relation.id}")
        h = accel.qap_quotient(a_ev, b_ev, c_ev)[: pk.domain - 1]

        r, s = _rand(rng), _rand(rng)
        ni = r1cs.num_inputs
        vk = pk.vk
        a = vk.alpha_g1 + _msm(pk.a_query, z, G1Point.identity()) + pk.delta_g1 * Scalar(r)
        b2 = vk.beta_g2 + _msm(pk.b_g2_query, z, G2Point.identity()) + vk.delta_g2 * Scalar(s)
        b1 = pk.beta_g1 + _msm(pk.b_g1_query, z, G1Point.identity()) + pk.delta_g1 * Scalar(s)
        c = (_msm(pk.l_query, z[ni:], G1Point.identity()) + _msm(pk.h_query, h, G1Point.identity())
             + a * Scalar(s) + b1 * Scalar(r) - pk.delta_g1 * Scalar(r * s % P))
        return Proof(NAME, relation.id, _b(a) + _b(b2) + _b(c))

    def verify(self, vk: VerifyingKey, stmt, proof: Proof) -> bool:
        if proof.backend != NAME or proof.relation_id != vk.relation.id:
            return False
        if len(proof.data) != PROOF_BYTES or not vk.relation.statement_ok(stmt):
            return False
        try:
            a = G1Point.from_compressed_bytes(proof.data[:48])
            b = G2Point.from_compressed_bytes(proof.data[48:144])
            c = G1Point.from_compressed_bytes(proof.data[144:])
        except ValueError:
            return False
        x = [1] + stmt.public_inputs()
        if len(x) != len(vk.ic):
            return False
        ic = _msm(vk.ic, x, G1Point.identity())
        lhs = GT.multi_pairing([a, -vk.alpha_g1, -ic, -c], [b, vk.beta_g2, vk.gamma_g2, vk.delta_g2])
        return lhs == GT.one()

    def simulate(self, keys: RelationKeys, stmt, rng=None) -> Proof:
        """Proof from the trapdoor alone: random ``A, B`` and the ``C`` that balances them."""
        td = keys.td
        if td is None:
            raise TrapdoorUnavailable("keys were generated without a trapdoor")
        rng = rng or secrets.SystemRandom()
        a, b = _rand(rng), _rand(rng)
        x = [1] + stmt.public_inputs()
        acc = sum(xi * ki for xi, ki in zip(x, td.ic_scalars)) % P
        c = (a * b - td.alpha * td.beta - acc) * pow(td.delta, P - 2, P) % P
        return Proof(NAME, keys.vk.relation.id, _b(_g1(a)) + _b(_g2(b)) + _b(_g1(c)))
