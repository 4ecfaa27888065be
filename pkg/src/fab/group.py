"""Messaging groups backed by realms, with proposal-and-commit semantics.

Each group owns one realm.  Members propose blocklist, trust and membership
changes; any member may commit the pending list.  A commit applies every
proposal to a working copy, skips idempotent conflicts (blocking an already
blocked pseudonym, trusting an already trusted realm), publishes each new
realm epoch to the directory, and only then swaps the working copy in.  Any
other error aborts the commit with no state change.

Joiners present an ``AuthBundle``; the group verifies it against states
fetched from the directory in a single closure request.
"""

from __future__ import annotations

import enum
import json
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable

from .credentials import Credential, IdentityProvider, PublicKey, register
from .directory import DirectoryClient, DirectoryStore, InProcessTransport, fetch_states
from .errors import (AlreadyBlocked, DuplicateTrust, EpochMismatch, FabError, NotAMember, NotBlocked,
                     NothingToCommit, NotTrusted)
from .params import SystemParams
from .poseidon import prf
from .realm import AuthBundle, Realm, SystemKeys, auth, check, create_realm, setup_system


class Kind(str, enum.Enum):
    BLOCK = "block"
    UNBLOCK = "unblock"
    TRUST = "trust"
    UNTRUST = "untrust"
    ADD = "add"
    REMOVE = "remove"


@dataclass(frozen=True)
class JoinRequest:
    """KeyPackage analog: the joiner's bundle for this group's realm."""

    bundle: AuthBundle


@dataclass(frozen=True)
class Proposal:
    kind: Kind
    proposer: int
    ps: int | None = None
    realm_id: str | None = None
    request: JoinRequest | None = None


@dataclass(frozen=True)
class JoinResult:
    accepted: bool
    reason: str | None = None
    realm_id: str | None = None


@dataclass
class Group:
    realm: Realm
    keys: SystemKeys
    pk_ip: PublicKey
    directory: DirectoryClient
    maintainer_sk: int
    members: set[int] = field(default_factory=set)
    pending: list[Proposal] = field(default_factory=list)
    context_epoch: int = 0

    @classmethod
    def create(cls, realm: Realm, keys: SystemKeys, pk_ip: PublicKey, directory: DirectoryClient,
               maintainer_sk: int) -> "Group":
        directory.register(realm.snapshot().to_record(keys.params.digest), maintainer_sk)
        return cls(realm, keys, pk_ip, directory, maintainer_sk)

    @property
    def realm_id(self) -> str:
        return self.realm.realm_id

    def _require_member(self, ps: int) -> None:
        if ps not in self.members:
            raise NotAMember("pseudonym is not a member of this group")

    def propose(self, member: int, proposal: Proposal) -> int:
        self._require_member(member)
        self.pending.append(proposal)
        return len(self.pending) - 1

    def join(self, request: JoinRequest) -> JoinResult:
        result = self.check_join(request)
        if result.accepted:
            self.members.add(request.bundle.ps_r)
        return result

    def check_join(self, request: JoinRequest) -> JoinResult:
        """Verify a join request against freshly fetched states, without applying it."""
        bundle = request.bundle
        if bundle.target_realm_id != self.realm_id:
            return JoinResult(False, "WrongTarget", bundle.target_realm_id)
        try:
            target, trusted = fetch_states(self.directory, self.realm_id, with_tree=False)
            verdict = check(self.keys, self.pk_ip, bundle, target, trusted)
        except EpochMismatch as exc:
            return JoinResult(False, exc.code, exc.realm_id)
        except FabError as exc:
            return JoinResult(False, exc.code)
        if not verdict.accepted:
            return JoinResult(False, verdict.reason, verdict.realm_id)
        return JoinResult(True)

    def commit(self, committer: int) -> int:
        self._require_member(committer)
        if not self.pending:
            raise NothingToCommit("no pending proposals")
        work = Realm.from_snapshot(self.realm.snapshot(), self.realm.params)
        members = set(self.members)
        records = []
        known = None
        for p in self.pending:
            before = work.epoch
            try:
                if p.kind is Kind.BLOCK:
                    work.block(p.ps)
                elif p.kind is Kind.UNBLOCK:
                    work.unblock(p.ps)
                elif p.kind is Kind.TRUST:
                    known = known if known is not None else self.directory.list()
                    work.trust(p.realm_id, known)
                elif p.kind is Kind.UNTRUST:
                    work.untrust(p.realm_id)
                elif p.kind is Kind.REMOVE:
                    members.discard(p.ps)
                elif p.kind is Kind.ADD:
                    if self.check_join(p.request).accepted:
                        members.add(p.request.bundle.ps_r)
            except (AlreadyBlocked, NotBlocked, DuplicateTrust, NotTrusted):
                continue
            if work.epoch != before:
                records.append(work.snapshot().to_record(self.keys.params.digest))
        members = {m for m in members if not work.tree.is_blocked(m)}
        for record in records:
            self.directory.publish(record, self.maintainer_sk)
        self.realm = work
        self.members = members
        self.pending = []
        self.context_epoch += 1
        return self.context_epoch


# -- scenarios ------------------------------------------------------------------------

class ScenarioError(Exception):
    pass


@dataclass
class _World:
    keys: SystemKeys
    ip: IdentityProvider
    directory: DirectoryClient
    rng: random.Random
    groups: dict[str, Group] = field(default_factory=dict)
    users: dict[str, Credential] = field(default_factory=dict)

    def ps(self, user: str, group: str) -> int:
        return prf(self.users[user].x, self.groups[group].realm.seed)


def _join(world: _World, user: str, group_name: str) -> JoinResult:
    group = world.groups[group_name]
    try:
        target, trusted = fetch_states(world.directory, group.realm_id)
        bundle = auth(world.keys, world.users[user], world.ip.pk, target, trusted, rng=world.rng)
    except FabError as exc:
        return JoinResult(False, exc.code, getattr(exc, "realm_id", None))
    return group.join(JoinRequest(bundle))


def run_scenario(lines: Iterable[str], backend: str = "reference", directory: DirectoryClient | None = None
                 ) -> list[dict]:
    """Execute JSON-lines actions; returns one result dict per action.

    Actions: ``setup``, ``create-group``, ``register-user``, ``join``,
    ``propose``, ``commit``, ``assert``.  Any action may carry ``expect``;
    a mismatch raises ``ScenarioError``.
    """
    world: _World | None = None
    results = []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        step = json.loads(line)
        action = step["action"]
        if action == "setup":
            rng = random.Random(step.get("seed", 0))
            params = SystemParams(depth=int(step.get("depth", 8)))
            keys = setup_system(params, step.get("backend", backend), rng=rng)
            client = directory or DirectoryClient(InProcessTransport(DirectoryStore()))
            world = _World(keys, IdentityProvider(rng=rng), client, rng)
            outcome = "ok"
        elif world is None:
            raise ScenarioError(f"line {lineno}: first action must be setup")
        elif action == "create-group":
            realm = create_realm(world.keys.params, step["group"], world.rng)
            world.groups[step["group"]] = Group.create(realm, world.keys, world.ip.pk, world.directory,
                                                       world.rng.randrange(1, 1 << 250))
            outcome = "ok"
        elif action == "register-user":
            world.users[step["user"]] = register(world.rng.randrange(1, 1 << 250), world.ip)
            outcome = "ok"
        elif action == "join":
            res = _join(world, step["user"], step["group"])
            outcome = "accepted" if res.accepted else res.reason
        elif action == "propose":
            g = world.groups[step["group"]]
            kind = Kind(step["kind"])
            ps = world.ps(step["target"], step["group"]) if "target" in step else None
            request = None
            if kind is Kind.ADD:
                target, trusted = fetch_states(world.directory, g.realm_id)
                request = JoinRequest(auth(world.keys, world.users[step["target"]], world.ip.pk, target, trusted))
            try:
                g.propose(world.ps(step["by"], step["group"]),
                          Proposal(kind, world.ps(step["by"], step["group"]), ps, step.get("realm"), request))
                outcome = "ok"
            except FabError as exc:
                outcome = exc.code
        elif action == "commit":
            try:
                world.groups[step["group"]].commit(world.ps(step["by"], step["group"]))
                outcome = "ok"
            except FabError as exc:
                outcome = exc.code
        elif action == "assert":
            g = world.groups[step["group"]]
            if "member" in step:
                outcome = world.ps(step["member"], step["group"]) in g.members
            elif "blocked" in step:
                outcome = g.realm.tree.is_blocked(world.ps(step["blocked"], step["group"]))
            elif "epoch" in step:
                outcome = g.realm.epoch
            else:
                raise ScenarioError(f"line {lineno}: assert needs member, blocked or epoch")
        else:
            raise ScenarioError(f"line {lineno}: unknown action {action!r}")
        result = {"line": lineno, "action": action, "outcome": outcome}
        if "expect" in step:
            result["expect"] = step["expect"]
            if step["expect"] != outcome:
                raise ScenarioError(f"line {lineno}: {action} expected {step['expect']!r}, got {outcome!r}")
        results.append(result)
    return results


def run_scenario_file(path: str | Path, backend: str = "reference") -> list[dict]:
    with open(path) as f:
        return run_scenario(f, backend)
