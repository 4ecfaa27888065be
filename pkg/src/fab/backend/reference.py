"""Transparent backend: proof = statement digest + serialized witness.

Not zero-knowledge.  Simulated proofs are an HMAC of the statement digest
under a setup-local key that test-mode verifying keys carry; production keys
omit it, so simulated proofs never verify there.
"""

from __future__ import annotations

import hashlib
import hmac
import json
import secrets
from dataclasses import dataclass

from ..errors import ProtocolError, TrapdoorUnavailable, UnsatisfiedRelation
from ..relations import Relation, relation_for_id
from . import Proof, RelationKeys

NAME = "reference"
_WITNESS, _SIMULATED = b"W", b"S"


@dataclass(frozen=True)
class ReferenceKey:
    relation: Relation
    params_digest: str | None
    circuit_digest: str
    sim_key: bytes | None = None

    def to_dict(self) -> dict:
        return {"backend": NAME, "relation_id": self.relation.id, "params_digest": self.params_digest,
                "circuit_digest": self.circuit_digest}

    @classmethod
    def from_dict(cls, d: dict) -> "ReferenceKey":
        if d.get("backend") != NAME:
            raise ProtocolError("not a reference key")
        relation = relation_for_id(d["relation_id"])
        if relation.compile().digest != d["circuit_digest"]:
            raise ProtocolError("circuit digest does not match this build")
        return cls(relation, d["params_digest"], d["circuit_digest"])

    def digest(self) -> str:
        return hashlib.sha256(json.dumps(self.to_dict(), sort_keys=True).encode()).hexdigest()


class ReferenceBackend:
    name = NAME

    def setup(self, relation: Relation, params_digest: str | None = None, rng=None,
              with_trapdoor: bool = True) -> RelationKeys:
        token = None
        if with_trapdoor:
            token = rng.randbytes(32) if rng is not None else secrets.token_bytes(32)
        key = ReferenceKey(relation, params_digest, relation.compile().digest, token)
        return RelationKeys(NAME, key, key, token)

    def prove(self, pk: ReferenceKey, stmt, wit, rng=None) -> Proof:
        if not pk.relation.evaluate(stmt, wit):
            raise UnsatisfiedRelation(f"witness does not satisfy {pk.relation.id}")
        body = json.dumps(wit.to_dict(), sort_keys=True, separators=(",", ":")).encode()
        return Proof(NAME, pk.relation.id, _WITNESS + pk.relation.statement_digest(stmt) + body)

    def verify(self, vk: ReferenceKey, stmt, proof: Proof) -> bool:
        rel = vk.relation
        if proof.backend != NAME or proof.relation_id != rel.id:
            return False
        data = proof.data
        if len(data) < 33 or not rel.statement_ok(stmt):
            return False
        digest = rel.statement_digest(stmt)
        if not hmac.compare_digest(data[1:33], digest):
            return False
        if data[:1] == _SIMULATED:
            if vk.sim_key is None:
                return False
            return hmac.compare_digest(data[33:], hmac.new(vk.sim_key, digest, hashlib.sha256).digest())
        if data[:1] != _WITNESS:
            return False
        try:
            wit = rel.witness_type.from_dict(json.loads(data[33:]))
        except (ValueError, KeyError, TypeError, ProtocolError):
            return False
        return rel.evaluate(stmt, wit)

    def simulate(self, keys: RelationKeys, stmt) -> Proof:
        if keys.td is None:
            raise TrapdoorUnavailable("reference keys were generated without a simulation key")
        rel = keys.vk.relation
        digest = rel.statement_digest(stmt)
        tag = hmac.new(keys.td, digest, hashlib.sha256).digest()
        return Proof(NAME, rel.id, _SIMULATED + digest + tag)
