"""Realms, system keys and the Auth/Verify protocol.

A ``Realm`` is the single-writer mutable state a maintainer holds.  Every
block, unblock or trust change bumps its epoch.  ``RealmSnapshot`` is the
immutable view that gets published and that ``auth``/``verify`` consume.

Bundles record the epoch of every realm they were proven against.  The
verifier requires equality with its freshly fetched states and raises
``EpochMismatch`` otherwise, so clients know to rebuild and retry.
"""

from __future__ import annotations

import json
import secrets
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from . import field as F
from .accumulator import ComplementaryMerkleTree, NonMembershipWitness, ver_non_mem
from .backend import Proof, RelationKeys, get_backend
from .credentials import Credential, PublicKey
from .errors import (Blocked, DuplicateTrust, EpochMismatch, NotTrusted, ProtocolError,
                     UnknownRealm, UnreachableRealm)
from .params import SystemParams
from .poseidon import prf
from .relations import (AuthRelation, AuthStatement, AuthWitness, BlockRelation, BlockStatement,
                        BlockWitness)


@dataclass(frozen=True)
class SystemKeys:
    params: SystemParams
    backend: str
    auth: RelationKeys
    block: RelationKeys

    def without_trapdoors(self) -> "SystemKeys":
        strip = lambda k: RelationKeys(k.backend, k.pk, k.vk, None)  # noqa: E731
        return SystemKeys(self.params, self.backend, strip(self.auth), strip(self.block))

    def to_dict(self, include_proving: bool = True) -> dict:
        from .backend.serialize import key_to_dict
        out = {"params": self.params.to_dict(), "params_digest": self.params.digest, "backend": self.backend}
        for name, keys in (("auth", self.auth), ("block", self.block)):
            out[name] = {"vk": key_to_dict(keys.vk)}
            if include_proving:
                out[name]["pk"] = key_to_dict(keys.pk)
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "SystemKeys":
        from .backend.serialize import key_from_dict
        params = SystemParams.from_dict(d["params"])
        parts = []
        for name in ("auth", "block"):
            vk = key_from_dict(d["backend"], "vk", d[name]["vk"])
            pk = key_from_dict(d["backend"], "pk", d[name]["pk"]) if "pk" in d[name] else None
            parts.append(RelationKeys(d["backend"], pk, vk, None))
        return cls(params, d["backend"], *parts)


def setup_system(params: SystemParams | None = None, backend: str = "groth16", rng=None,
                 with_trapdoor: bool = False) -> SystemKeys:
    """Compile and key both relations.  Trapdoors are kept only on request (tests)."""
    params = params or SystemParams()
    be = get_backend(backend)
    auth = be.setup(AuthRelation(), params.digest, rng=rng, with_trapdoor=with_trapdoor)
    block = be.setup(BlockRelation(params.depth), params.digest, rng=rng, with_trapdoor=with_trapdoor)
    return SystemKeys(params, backend, auth, block)


# -- realm state -------------------------------------------------------------------

@dataclass(frozen=True)
class RealmSnapshot:
    """Published realm state.  ``tree`` may be absent on the verifier side,
    which only needs the root."""

    realm_id: str
    seed: int
    root: int
    depth: int
    epoch: int
    trusted: tuple[str, ...]
    tree: ComplementaryMerkleTree | None = field(default=None, compare=False, repr=False)

    @classmethod
    def of_tree(cls, realm_id: str, seed: int, tree: ComplementaryMerkleTree, epoch: int,
                trusted: Iterable[str]) -> "RealmSnapshot":
        return cls(realm_id, seed, tree.root, tree.depth, epoch, tuple(trusted), tree)

    def to_record(self, params_digest: str | None = None) -> dict:
        if self.tree is None:
            raise ProtocolError("snapshot without a tree cannot be published")
        return {
            "realm_id": self.realm_id,
            "params_digest": params_digest,
            "seed": F.to_hex(self.seed),
            "root": F.to_hex(self.root),
            "depth": self.depth,
            "tree": self.tree.to_dict(),
            "epoch": self.epoch,
            "trusted": list(self.trusted),
        }

    @classmethod
    def from_record(cls, d: dict, with_tree: bool = True) -> "RealmSnapshot":
        try:
            root = F.from_hex(d["root"])
            tree = ComplementaryMerkleTree.from_dict(d["tree"]) if with_tree else None
            snap = cls(d["realm_id"], F.from_hex(d["seed"]), root, int(d["depth"]), int(d["epoch"]),
                       tuple(d["trusted"]), tree)
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(f"malformed realm record: {exc}") from exc
        if tree is not None and (tree.root != root or tree.depth != snap.depth):
            raise ProtocolError(f"realm {snap.realm_id}: tree does not match published root")
        return snap


class Realm:
    """Mutable realm state; one writer at a time."""

    def __init__(self, realm_id: str, params: SystemParams, seed: int | None = None,
                 tree: ComplementaryMerkleTree | None = None, epoch: int = 0,
                 trusted: Iterable[str] = ()):
        self.realm_id = realm_id
        self.params = params
        self.seed = seed if seed is not None else secrets.randbelow(F.P)
        self.tree = tree if tree is not None else ComplementaryMerkleTree.create(params.depth)
        self.epoch = epoch
        self.trusted: list[str] = list(trusted)
        self._snapshot: RealmSnapshot | None = None

    @classmethod
    def from_snapshot(cls, snap: RealmSnapshot, params: SystemParams) -> "Realm":
        if snap.tree is None:
            raise ProtocolError("restoring a realm needs the full tree")
        return cls(snap.realm_id, params, snap.seed, snap.tree.copy(), snap.epoch, snap.trusted)

    def _bump(self) -> None:
        self.epoch += 1
        self._snapshot = None

    def pseudonym(self, x: int) -> int:
        return prf(x, self.seed)

    def block(self, ps: int) -> int:
        self.tree.add(ps)
        self._bump()
        return self.epoch

    def unblock(self, ps: int) -> int:
        self.tree.remove(ps)
        self._bump()
        return self.epoch

    def trust(self, realm_id: str, known: Iterable[str] | None = None) -> int:
        """``known`` lists registered realm ids; pass it to enforce registration."""
        if realm_id == self.realm_id:
            raise DuplicateTrust("a realm implicitly enforces its own blocklist")
        if known is not None and realm_id not in set(known):
            raise UnknownRealm(f"realm {realm_id} is not registered")
        if realm_id in self.trusted:
            raise DuplicateTrust(f"realm {realm_id} is already trusted")
        self.trusted.append(realm_id)
        self._bump()
        return self.epoch

    def untrust(self, realm_id: str) -> int:
        if realm_id not in self.trusted:
            raise NotTrusted(f"realm {realm_id} is not trusted")
        self.trusted.remove(realm_id)
        self._bump()
        return self.epoch

    def snapshot(self) -> RealmSnapshot:
        if self._snapshot is None:
            self._snapshot = RealmSnapshot.of_tree(self.realm_id, self.seed, self.tree.copy(),
                                                   self.epoch, self.trusted)
        return self._snapshot


def create_realm(params: SystemParams, realm_id: str | None = None, rng=None) -> Realm:
    seed = rng.randrange(F.P) if rng is not None else secrets.randbelow(F.P)
    return Realm(realm_id or secrets.token_hex(8), params, seed)


# -- bundles -----------------------------------------------------------------------

@dataclass(frozen=True)
class BlockProof:
    realm_id: str
    epoch: int
    proof: Proof


@dataclass(frozen=True)
class AuthBundle:
    params_digest: str
    target_realm_id: str
    target_epoch: int
    ps_r: int
    w_r: NonMembershipWitness
    pi_auth: Proof
    pi_block: tuple[BlockProof, ...]

    @property
    def proof_bytes(self) -> int:
        return self.pi_auth.size + sum(b.proof.size for b in self.pi_block)

    def to_dict(self) -> dict:
        return {
            "params_digest": self.params_digest,
            "target_realm_id": self.target_realm_id,
            "target_epoch": self.target_epoch,
            "ps_r": F.to_hex(self.ps_r),
            "w_r": self.w_r.to_dict(),
            "pi_auth": self.pi_auth.to_hex(),
            "pi_block": [[b.realm_id, b.epoch, b.proof.to_hex()] for b in self.pi_block],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "AuthBundle":
        try:
            return cls(
                d["params_digest"], d["target_realm_id"], int(d["target_epoch"]), F.from_hex(d["ps_r"]),
                NonMembershipWitness.from_dict(d["w_r"]), Proof.from_hex(d["pi_auth"]),
                tuple(BlockProof(rid, int(ep), Proof.from_hex(p)) for rid, ep, p in d["pi_block"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(f"malformed bundle: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, s: str) -> "AuthBundle":
        try:
            return cls.from_dict(json.loads(s))
        except json.JSONDecodeError as exc:
            raise ProtocolError(f"malformed bundle: {exc}") from exc


def _check_trusted_order(target: RealmSnapshot, trusted: list[RealmSnapshot]) -> None:
    ids = tuple(t.realm_id for t in trusted)
    if ids != target.trusted:
        raise ProtocolError(f"trusted states {ids} do not match published list {target.trusted}")


def auth(keys: SystemKeys, credential: Credential, pk_ip: PublicKey, target: RealmSnapshot,
         trusted: list[RealmSnapshot], rng=None) -> AuthBundle:
    """Build a bundle for ``target``; raises ``Blocked`` before any proving work."""
    _check_trusted_order(target, trusted)
    if target.tree is None or any(t.tree is None for t in trusted):
        raise ProtocolError("auth needs full trees for the target and trusted realms")
    x = credential.x
    ps_r = prf(x, target.seed)
    w_r = target.tree.non_mem_prove(ps_r)
    if w_r is None:
        raise Blocked(target.realm_id)
    witnesses = []
    for t in trusted:
        w = t.tree.non_mem_prove(prf(x, t.seed))
        if w is None:
            raise Blocked(t.realm_id)
        witnesses.append(w)

    be = get_backend(keys.backend)
    pi_auth = be.prove(keys.auth.pk, AuthStatement(pk_ip, target.seed, ps_r),
                       AuthWitness(credential.sigma, x), rng=rng)
    pi_block = tuple(
        BlockProof(t.realm_id, t.epoch,
                   be.prove(keys.block.pk, BlockStatement(ps_r, target.seed, t.seed, t.root),
                            BlockWitness(w, x), rng=rng))
        for t, w in zip(trusted, witnesses)
    )
    return AuthBundle(keys.params.digest, target.realm_id, target.epoch, ps_r, w_r, pi_auth, pi_block)


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    reason: str | None = None
    realm_id: str | None = None

    def __bool__(self) -> bool:
        return self.accepted


def check(keys: SystemKeys, pk_ip: PublicKey, bundle: AuthBundle, target: RealmSnapshot,
          trusted: Mapping[str, RealmSnapshot | None] | list[RealmSnapshot]) -> Verdict:
    """Like ``verify`` but says which check failed."""
    if not isinstance(trusted, Mapping):
        trusted = {t.realm_id: t for t in trusted}
    if bundle.params_digest != keys.params.digest:
        return Verdict(False, "ParamsMismatch")
    if bundle.target_realm_id != target.realm_id:
        return Verdict(False, "WrongTarget", target.realm_id)
    if bundle.target_epoch != target.epoch:
        raise EpochMismatch(target.realm_id, bundle.target_epoch, target.epoch)
    if tuple(b.realm_id for b in bundle.pi_block) != target.trusted:
        return Verdict(False, "TrustListMismatch", target.realm_id)
    states = []
    for b in bundle.pi_block:
        state = trusted.get(b.realm_id)
        if state is None:
            raise UnreachableRealm(f"trusted realm {b.realm_id} could not be fetched")
        if b.epoch != state.epoch:
            raise EpochMismatch(b.realm_id, b.epoch, state.epoch)
        states.append(state)
    depth = keys.params.depth
    if target.depth != depth or any(s.depth != depth for s in states):
        return Verdict(False, "DepthMismatch")
    if not ver_non_mem(target.root, bundle.ps_r, bundle.w_r, depth=depth):
        return Verdict(False, "Blocked", target.realm_id)

    be = get_backend(keys.backend)
    if not be.verify(keys.auth.vk, AuthStatement(pk_ip, target.seed, bundle.ps_r), bundle.pi_auth):
        return Verdict(False, "InvalidAuthProof", target.realm_id)
    for b, state in zip(bundle.pi_block, states):
        stmt = BlockStatement(bundle.ps_r, target.seed, state.seed, state.root)
        if not be.verify(keys.block.vk, stmt, b.proof):
            return Verdict(False, "InvalidBlockProof", b.realm_id)
    return Verdict(True)


def verify(keys: SystemKeys, pk_ip: PublicKey, bundle: AuthBundle, target: RealmSnapshot,
           trusted: Mapping[str, RealmSnapshot | None] | list[RealmSnapshot]) -> bool:
    """Accept iff the clear witness, the auth proof and every block proof check out.

    ``trusted`` holds the verifier's freshly fetched states.  A missing or
    ``None`` entry for a realm on the target's list raises ``UnreachableRealm``;
    an epoch that differs from the bundle raises ``EpochMismatch``.
    """
    return check(keys, pk_ip, bundle, target, trusted).accepted
