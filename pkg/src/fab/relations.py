"""Statements, witnesses and the two relations proven during authentication.

``auth``: the prover holds a credential ``(x, sigma)`` signed under ``pk_ip``
and ``ps_r = prf(x, s_r)``.

``block``: the same ``x`` gives ``ps_r`` in the target realm, and
``prf(x, s_t)`` is outside the blocklist accumulated under ``acc_t``.

Each relation has a native evaluator (the oracle) and a circuit.  A
(statement, witness) pair is *satisfiable* when synthesis accepts its shape
and every constraint holds; tests check this agrees with the evaluator.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from functools import lru_cache

from . import field as F
from . import gadgets as G
from . import jubjub as J
from .accumulator import NonMembershipWitness, ver_non_mem
from .credentials import Credential, PublicKey, Signature, verify_credential
from .errors import SynthesisError
from .params import SystemParams
from .poseidon import Tag, prf
from .r1cs import R1CS, ConstraintSystem

AUTH_ID = "auth"


def block_id(depth: int) -> str:
    return f"block/d{depth}"


def _canonical(v) -> int:
    if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < F.P:
        raise SynthesisError(f"not a canonical field element: {v!r}")
    return v


def _digest(relation_id: str, values: list[int]) -> bytes:
    h = hashlib.sha256(relation_id.encode() + b"\x00")
    for v in values:
        h.update(F.to_bytes(v))
    return h.digest()


@dataclass(frozen=True)
class AuthStatement:
    pk_ip: PublicKey
    s_r: int
    ps_r: int

    def public_inputs(self) -> list[int]:
        return [self.pk_ip.point[0], self.pk_ip.point[1], self.s_r, self.ps_r]

    def to_bytes(self) -> bytes:
        return b"".join(F.to_bytes(v) for v in self.public_inputs())

    def to_dict(self) -> dict:
        return {"pk_ip": self.pk_ip.to_hex(), "s_r": F.to_hex(self.s_r), "ps_r": F.to_hex(self.ps_r)}

    @classmethod
    def from_dict(cls, d: dict) -> "AuthStatement":
        return cls(PublicKey.from_hex(d["pk_ip"]), F.from_hex(d["s_r"]), F.from_hex(d["ps_r"]))


@dataclass(frozen=True)
class AuthWitness:
    sigma: Signature
    x: int

    def to_dict(self) -> dict:
        return {"sigma": self.sigma.to_hex(), "x": F.to_hex(self.x)}

    @classmethod
    def from_dict(cls, d: dict) -> "AuthWitness":
        return cls(Signature.from_hex(d["sigma"]), F.from_hex(d["x"]))


@dataclass(frozen=True)
class BlockStatement:
    ps_r: int
    s_r: int
    s_t: int
    acc_t: int

    def public_inputs(self) -> list[int]:
        return [self.ps_r, self.s_r, self.s_t, self.acc_t]

    def to_bytes(self) -> bytes:
        return b"".join(F.to_bytes(v) for v in self.public_inputs())

    def to_dict(self) -> dict:
        return {k: F.to_hex(v) for k, v in zip(("ps_r", "s_r", "s_t", "acc_t"), self.public_inputs())}

    @classmethod
    def from_dict(cls, d: dict) -> "BlockStatement":
        return cls(*(F.from_hex(d[k]) for k in ("ps_r", "s_r", "s_t", "acc_t")))


@dataclass(frozen=True)
class BlockWitness:
    w: NonMembershipWitness
    x: int

    def to_dict(self) -> dict:
        return {"w": self.w.to_dict(), "x": F.to_hex(self.x)}

    @classmethod
    def from_dict(cls, d: dict) -> "BlockWitness":
        return cls(NonMembershipWitness.from_dict(d["w"]), F.from_hex(d["x"]))


def _statement_ok(values) -> bool:
    return all(isinstance(v, int) and 0 <= v < F.P for v in values)


def eval_auth(stmt: AuthStatement, wit: AuthWitness) -> bool:
    if not (_statement_ok(stmt.public_inputs()) and stmt.pk_ip.is_valid()):
        return False
    if not (isinstance(wit.x, int) and 0 <= wit.x < F.P):
        return False
    return verify_credential(stmt.pk_ip, Credential(wit.x, wit.sigma)) and prf(wit.x, stmt.s_r) == stmt.ps_r


def eval_block(stmt: BlockStatement, wit: BlockWitness, depth: int) -> bool:
    if not _statement_ok(stmt.public_inputs()):
        return False
    if not (isinstance(wit.x, int) and 0 <= wit.x < F.P):
        return False
    if prf(wit.x, stmt.s_r) != stmt.ps_r:
        return False
    return ver_non_mem(stmt.acc_t, prf(wit.x, stmt.s_t), wit.w, depth=depth)


# -- circuits -------------------------------------------------------------------

def synthesize_auth(cs: ConstraintSystem, stmt: AuthStatement, wit: AuthWitness) -> None:
    pkx, pky, s_r, ps_r = (cs.public(_canonical(v)) for v in stmt.public_inputs())
    x = cs.private(_canonical(wit.x))
    r = wit.sigma.r
    if not (isinstance(r, tuple) and len(r) == 2):
        raise SynthesisError("malformed signature point")
    rx, ry = cs.private(_canonical(r[0])), cs.private(_canonical(r[1]))
    s = wit.sigma.s
    if not (isinstance(s, int) and 0 <= s < (1 << J.SCALAR_BITS)):
        raise SynthesisError("signature scalar out of range")
    s = cs.private(s)
    message = G.hash2(cs, Tag.CRED, x, 0, "cred")
    G.schnorr_verify(cs, (pkx, pky), (rx, ry), s, message)
    G.assert_equal(cs, G.hash2(cs, Tag.PSEUDONYM, x, s_r, "ps_r"), ps_r, "ps_r")


def synthesize_ver_non_mem(cs: ConstraintSystem, root, ps, w: NonMembershipWitness, depth: int) -> None:
    """Allocate ``w`` as private wires and constrain it against ``root`` and ``ps``."""
    if len(w.path) != depth or len(w.directions) != depth:
        raise SynthesisError(f"witness path length must be {depth}")
    if any(d not in (0, 1) for d in w.directions):
        raise SynthesisError("path directions must be bits")
    if w.leaf_index != sum(d << k for k, d in enumerate(w.directions)):
        raise SynthesisError("leaf index disagrees with path directions")
    a = cs.private(_canonical(w.a))
    b = cs.private(_canonical(w.b))
    dirs = [G.alloc_boolean(cs, d, "dir") for d in w.directions]
    sibs = [cs.private(_canonical(v)) for v in w.path]
    G.ver_non_mem(cs, root, ps, a, b, dirs, sibs)


def synthesize_block(cs: ConstraintSystem, stmt: BlockStatement, wit: BlockWitness, depth: int) -> None:
    ps_r, s_r, s_t, acc_t = (cs.public(_canonical(v)) for v in stmt.public_inputs())
    x = cs.private(_canonical(wit.x))
    G.assert_equal(cs, G.hash2(cs, Tag.PSEUDONYM, x, s_r, "ps_r"), ps_r, "ps_r")
    ps_t = G.hash2(cs, Tag.PSEUDONYM, x, s_t, "ps_t")
    synthesize_ver_non_mem(cs, acc_t, ps_t, wit.w, depth)


# -- relation objects --------------------------------------------------------------

class Relation:
    """Uniform interface the proof backends consume."""

    id: str
    num_public: int = 4

    def evaluate(self, stmt, wit) -> bool:
        raise NotImplementedError

    def synthesize(self, cs: ConstraintSystem, stmt, wit) -> None:
        raise NotImplementedError

    def blank(self) -> tuple:
        raise NotImplementedError

    def statement_ok(self, stmt) -> bool:
        """Checks a verifier performs natively before trusting a proof."""
        return _statement_ok(stmt.public_inputs())

    def statement_digest(self, stmt) -> bytes:
        return _digest(self.id, stmt.public_inputs())

    def assign(self, stmt, wit) -> ConstraintSystem:
        cs = ConstraintSystem()
        self.synthesize(cs, stmt, wit)
        return cs

    def is_satisfied(self, stmt, wit) -> bool:
        try:
            cs = self.assign(stmt, wit)
        except SynthesisError:
            return False
        return self.statement_ok(stmt) and self.compile().is_satisfied(cs.assignment()) is None

    def compile(self) -> R1CS:
        return _compile(self)

    def __eq__(self, other):
        return isinstance(other, Relation) and self.id == other.id

    def __hash__(self):
        return hash(self.id)

    def __repr__(self):
        return f"<Relation {self.id}>"


class AuthRelation(Relation):
    id = AUTH_ID
    statement_type = AuthStatement
    witness_type = AuthWitness

    def evaluate(self, stmt, wit) -> bool:
        return eval_auth(stmt, wit)

    def synthesize(self, cs, stmt, wit) -> None:
        synthesize_auth(cs, stmt, wit)

    def statement_ok(self, stmt) -> bool:
        return super().statement_ok(stmt) and stmt.pk_ip.is_valid()

    def blank(self):
        return (AuthStatement(PublicKey(J.generator()), 0, 0),
                AuthWitness(Signature(J.IDENTITY, 0), 0))


class BlockRelation(Relation):
    statement_type = BlockStatement
    witness_type = BlockWitness

    def __init__(self, depth: int):
        self.depth = depth
        self.id = block_id(depth)

    def evaluate(self, stmt, wit) -> bool:
        return eval_block(stmt, wit, self.depth)

    def synthesize(self, cs, stmt, wit) -> None:
        synthesize_block(cs, stmt, wit, self.depth)

    def blank(self):
        w = NonMembershipWitness(0, 0, 0, (0,) * self.depth, (0,) * self.depth)
        return BlockStatement(0, 0, 0, 0), BlockWitness(w, 0)


@lru_cache(maxsize=None)
def _compile(relation: Relation) -> R1CS:
    return relation.assign(*relation.blank()).compile()


def auth_relation(params: SystemParams | None = None) -> AuthRelation:
    return AuthRelation()


def block_relation(params: SystemParams) -> BlockRelation:
    return BlockRelation(params.depth)


def relation_for_id(relation_id: str) -> Relation:
    if relation_id == AUTH_ID:
        return AuthRelation()
    if relation_id.startswith("block/d") and relation_id[7:].isdigit():
        return BlockRelation(int(relation_id[7:]))
    raise ValueError(f"unknown relation id {relation_id!r}")


def compile_auth(params: SystemParams | None = None) -> R1CS:
    return auth_relation(params).compile()


def compile_block(params: SystemParams) -> R1CS:
    return block_relation(params).compile()
