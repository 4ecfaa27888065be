"""Complementary Merkle tree: a negative accumulator over disjoint intervals.

The tree keeps the complement of the blocked set as half-open intervals
``[a, b)``, one per leaf slot.  A leaf holds ``hash(LEAF, a, b)``; empty slots
hold the constant 0.  Non-membership of ``ps`` is shown by a leaf whose
interval contains it plus the Merkle path to the root.

The element domain is ``[0, top)``.  In production ``top = P - 1`` (the
value ``P - 1`` can never be blocked or authenticated).  Tests use small
integer domains with a cheap injective hasher so that every state can be
checked exhaustively.
"""

from __future__ import annotations

import hashlib
import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence

from sortedcontainers import SortedDict

from . import accel
from . import field as F
from .errors import AlreadyBlocked, CapacityExceeded, NotBlocked, OutOfDomain
from .poseidon import Tag, hash2

EMPTY = 0


class PoseidonHasher:
    """Production hasher; batched calls go through the accelerated kernels."""

    name = "poseidon"

    def leaf(self, a: int, b: int) -> int:
        return hash2(Tag.LEAF, a, b)

    def node(self, left: int, right: int) -> int:
        return hash2(Tag.NODE, left, right)

    def leaves(self, pairs: Sequence[tuple[int, int]]) -> list[int]:
        if len(pairs) < 8:
            return [self.leaf(a, b) for a, b in pairs]
        return accel.poseidon_many(Tag.LEAF, [a for a, _ in pairs], [b for _, b in pairs])

    def nodes(self, pairs: Sequence[tuple[int, int]]) -> list[int]:
        if len(pairs) < 8:
            return [self.node(l, r) for l, r in pairs]
        return accel.poseidon_many(Tag.NODE, [l for l, _ in pairs], [r for _, r in pairs])


class ToyHasher:
    """Fast collision-resistant stand-in for tests over small domains."""

    name = "toy"

    def _h(self, tag: int, a: int, b: int) -> int:
        data = b"%d|%d|%d" % (tag, a, b)
        # +1 keeps outputs away from the EMPTY marker
        return int.from_bytes(hashlib.blake2b(data, digest_size=16).digest(), "little") + 1

    def leaf(self, a: int, b: int) -> int:
        return self._h(Tag.LEAF, a, b)

    def node(self, left: int, right: int) -> int:
        return self._h(Tag.NODE, left, right)

    def leaves(self, pairs):
        return [self.leaf(a, b) for a, b in pairs]

    def nodes(self, pairs):
        return [self.node(l, r) for l, r in pairs]


POSEIDON = PoseidonHasher()
PRODUCTION_TOP = F.P - 1


@dataclass(frozen=True)
class NonMembershipWitness:
    a: int
    b: int
    leaf_index: int
    path: tuple[int, ...]
    directions: tuple[int, ...]  # bit k = 1 when the level-k node is a right child

    def to_dict(self) -> dict:
        return {
            "a": F.to_hex(self.a),
            "b": F.to_hex(self.b),
            "leaf_index": self.leaf_index,
            "path": [F.to_hex(s) for s in self.path],
            "directions": list(self.directions),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "NonMembershipWitness":
        return cls(
            a=F.from_hex(d["a"]),
            b=F.from_hex(d["b"]),
            leaf_index=int(d["leaf_index"]),
            path=tuple(F.from_hex(s) for s in d["path"]),
            directions=tuple(int(x) for x in d["directions"]),
        )


@dataclass(frozen=True)
class UpdateRecord:
    changed_slots: tuple[int, ...]
    root: int


def _zero_hashes(hasher, depth: int) -> list[int]:
    zeros = [EMPTY]
    for _ in range(depth):
        zeros.append(hasher.node(zeros[-1], zeros[-1]))
    return zeros


class ComplementaryMerkleTree:
    def __init__(self, depth: int, top: int = PRODUCTION_TOP, hasher=POSEIDON):
        if depth < 1:
            raise ValueError("depth must be at least 1")
        if top < 1:
            raise ValueError("domain must be nonempty")
        self.depth = depth
        self.top = top
        self.hasher = hasher
        self._zeros = _zero_hashes(hasher, depth)
        # levels[k] maps node index -> hash for nodes that differ from zeros[k]
        self._levels: list[dict[int, int]] = [dict() for _ in range(depth + 1)]
        self._slots: dict[int, tuple[int, int]] = {}
        self._index: SortedDict = SortedDict()
        self._blocked: set[int] = set()
        self._freed: list[int] = []
        self._next_unused = 0

    @classmethod
    def create(cls, depth: int, top: int = PRODUCTION_TOP, hasher=POSEIDON) -> "ComplementaryMerkleTree":
        tree = cls(depth, top, hasher)
        slot = tree._take_slot()
        tree._store(slot, 0, top)
        tree._rehash([slot])
        return tree

    # -- read access -------------------------------------------------------

    @property
    def capacity(self) -> int:
        return 1 << self.depth

    @property
    def root(self) -> int:
        return self._levels[self.depth].get(0, self._zeros[self.depth])

    @property
    def blocked(self) -> frozenset[int]:
        return frozenset(self._blocked)

    def is_blocked(self, ps: int) -> bool:
        return ps in self._blocked

    def leaves(self) -> dict[int, tuple[int, int]]:
        return dict(self._slots)

    def intervals(self) -> list[tuple[int, int]]:
        return [self._slots[s] for s in self._index.values()]

    def free_slots(self) -> list[int]:
        return sorted(self._freed)

    def leaf_hash(self, slot: int) -> int:
        return self._levels[0].get(slot, EMPTY)

    def node(self, level: int, index: int) -> int:
        return self._levels[level].get(index, self._zeros[level])

    def _containing(self, ps: int) -> int | None:
        pos = self._index.bisect_right(ps) - 1
        if pos < 0:
            return None
        a = self._index.keys()[pos]
        slot = self._index[a]
        if ps < self._slots[slot][1]:
            return slot
        return None

    # -- slot bookkeeping --------------------------------------------------

    def _lowest_free(self) -> int | None:
        if self._freed:
            return self._freed[0]
        if self._next_unused < self.capacity:
            return self._next_unused
        return None

    def _take_slot(self) -> int:
        if self._freed:
            return heapq.heappop(self._freed)
        if self._next_unused >= self.capacity:
            raise CapacityExceeded(f"all {self.capacity} leaf slots are occupied")
        slot = self._next_unused
        self._next_unused += 1
        return slot

    def _store(self, slot: int, a: int, b: int) -> None:
        old = self._slots.get(slot)
        if old is not None:
            del self._index[old[0]]
        self._slots[slot] = (a, b)
        self._index[a] = slot
        self._levels[0][slot] = self.hasher.leaf(a, b)

    def _release(self, slot: int) -> None:
        a, _ = self._slots.pop(slot)
        del self._index[a]
        self._levels[0].pop(slot, None)
        heapq.heappush(self._freed, slot)

    def _rehash(self, slots: Iterable[int]) -> None:
        dirty = set(slots)
        for level in range(self.depth):
            parents = {i >> 1 for i in dirty}
            below, above = self._levels[level], self._levels[level + 1]
            zero_below, zero_above = self._zeros[level], self._zeros[level + 1]
            for p in parents:
                h = self.hasher.node(below.get(2 * p, zero_below), below.get(2 * p + 1, zero_below))
                if h == zero_above:
                    above.pop(p, None)
                else:
                    above[p] = h
            dirty = parents

    # -- mutation ----------------------------------------------------------

    def _check_domain(self, ps: int) -> None:
        if not 0 <= ps < self.top:
            raise OutOfDomain(f"{ps} is outside the blockable domain [0, {self.top})")

    def add(self, ps: int) -> UpdateRecord:
        """Block ``ps``: split the interval holding it around the point."""
        self._check_domain(ps)
        if ps in self._blocked:
            raise AlreadyBlocked(f"{ps} is already blocked")
        if len(self._blocked) >= self.capacity:
            raise CapacityExceeded(f"blocklist holds its maximum of {self.capacity} entries")
        slot = self._containing(ps)
        assert slot is not None, "partition invariant broken"
        a, b = self._slots[slot]
        left = (a, ps) if a < ps else None
        right = (ps + 1, b) if ps + 1 < b else None
        if left and right and self._lowest_free() is None:
            raise CapacityExceeded(f"all {self.capacity} leaf slots are occupied")

        changed = [slot]
        if left:
            self._store(slot, *left)
            if right:
                new = self._take_slot()
                self._store(new, *right)
                changed.append(new)
        elif right:
            self._store(slot, *right)
        else:
            self._release(slot)
        self._blocked.add(ps)
        self._rehash(changed)
        return UpdateRecord(tuple(changed), self.root)

    def remove(self, ps: int) -> UpdateRecord:
        """Unblock ``ps``: merge it back with whichever neighbours exist."""
        if ps not in self._blocked:
            raise NotBlocked(f"{ps} is not blocked")
        left_slot = self._containing(ps - 1) if ps > 0 else None
        right_slot = self._index.get(ps + 1)

        if left_slot is not None and right_slot is not None:
            a = self._slots[left_slot][0]
            b = self._slots[right_slot][1]
            self._release(right_slot)
            self._store(left_slot, a, b)
            changed = [left_slot, right_slot]
        elif left_slot is not None:
            self._store(left_slot, self._slots[left_slot][0], ps + 1)
            changed = [left_slot]
        elif right_slot is not None:
            b = self._slots[right_slot][1]
            self._store(right_slot, ps, b)
            changed = [right_slot]
        else:
            # fewer intervals than blocked entries + 1, so a slot is always free here
            new = self._take_slot()
            self._store(new, ps, ps + 1)
            changed = [new]
        self._blocked.discard(ps)
        self._rehash(changed)
        return UpdateRecord(tuple(changed), self.root)

    # -- proofs ------------------------------------------------------------

    def path(self, slot: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        siblings, directions = [], []
        idx = slot
        for level in range(self.depth):
            siblings.append(self.node(level, idx ^ 1))
            directions.append(idx & 1)
            idx >>= 1
        return tuple(siblings), tuple(directions)

    def non_mem_prove(self, ps: int) -> NonMembershipWitness | None:
        if ps in self._blocked or not 0 <= ps < self.top:
            return None
        slot = self._containing(ps)
        if slot is None:
            return None
        a, b = self._slots[slot]
        siblings, directions = self.path(slot)
        return NonMembershipWitness(a, b, slot, siblings, directions)

    # -- copies and bulk construction -------------------------------------

    def copy(self) -> "ComplementaryMerkleTree":
        other = ComplementaryMerkleTree.__new__(ComplementaryMerkleTree)
        other.depth, other.top, other.hasher = self.depth, self.top, self.hasher
        other._zeros = self._zeros
        other._levels = [dict(level) for level in self._levels]
        other._slots = dict(self._slots)
        other._index = self._index.copy()
        other._blocked = set(self._blocked)
        other._freed = list(self._freed)
        other._next_unused = self._next_unused
        return other

    @classmethod
    def from_slots(cls, depth: int, slots: dict[int, tuple[int, int]], blocked: Iterable[int],
                   top: int = PRODUCTION_TOP, hasher=POSEIDON) -> "ComplementaryMerkleTree":
        """Rebuild a tree from its occupied slots, hashing level by level in batches."""
        tree = cls(depth, top, hasher)
        tree._blocked = set(blocked)
        if any(not 0 <= s < tree.capacity for s in slots):
            raise ValueError("slot index outside the tree")
        order = sorted(slots)
        for s in order:
            tree._slots[s] = slots[s]
            tree._index[slots[s][0]] = s
        tree._levels[0] = dict(zip(order, hasher.leaves([slots[s] for s in order])))
        tree._next_unused = (order[-1] + 1) if order else 0
        occupied = set(order)
        tree._freed = [s for s in range(tree._next_unused) if s not in occupied]
        heapq.heapify(tree._freed)
        for level in range(depth):
            below, zero = tree._levels[level], tree._zeros[level]
            parents = sorted({i >> 1 for i in below})
            pairs = [(below.get(2 * p, zero), below.get(2 * p + 1, zero)) for p in parents]
            tree._levels[level + 1] = dict(zip(parents, hasher.nodes(pairs)))
        tree.check_partition()
        return tree

    @classmethod
    def from_blocked(cls, depth: int, blocked: Iterable[int], top: int = PRODUCTION_TOP,
                     hasher=POSEIDON) -> "ComplementaryMerkleTree":
        """Bulk-load the tree holding exactly ``blocked``, intervals in ascending slots.

        The slot layout differs from one produced by sequential ``add`` calls,
        so roots differ too; the represented set is the same.
        """
        points = sorted(set(blocked))
        if points and (points[0] < 0 or points[-1] >= top):
            raise OutOfDomain("blocked value outside the domain")
        if len(points) > (1 << depth):
            raise CapacityExceeded("more blocked values than the tree can hold")
        intervals, start = [], 0
        for x in points:
            if start < x:
                intervals.append((start, x))
            start = x + 1
        if start < top:
            intervals.append((start, top))
        if len(intervals) > (1 << depth):
            raise CapacityExceeded("more intervals than leaf slots")
        return cls.from_slots(depth, dict(enumerate(intervals)), points, top, hasher)

    def check_partition(self) -> None:
        """Raise AssertionError unless the intervals tile ``[0, top)`` minus the blocked set."""
        cursor = 0
        for a, slot in self._index.items():
            lo, hi = self._slots[slot]
            assert lo == a and lo < hi, "stored interval malformed"
            assert lo >= cursor, "intervals overlap"
            for gap in range(cursor, lo) if lo - cursor < 4096 else ():
                assert gap in self._blocked, "uncovered point is not blocked"
            cursor = hi
        assert cursor <= self.top
        assert len(self._blocked) <= self.capacity
        covered_gap = self.top - sum(hi - lo for lo, hi in self._slots.values())
        assert covered_gap == len(self._blocked), "blocked count does not match the uncovered span"

    # -- serialization -----------------------------------------------------

    def to_dict(self, params_digest: str | None = None) -> dict:
        return {
            "params_digest": params_digest,
            "depth": self.depth,
            "top": F.to_hex(self.top),
            "hasher": self.hasher.name,
            "occupied": [[s, F.to_hex(a), F.to_hex(b)] for s, (a, b) in sorted(self._slots.items())],
            "blocked": [F.to_hex(x) for x in sorted(self._blocked)],
            "root": F.to_hex(self.root),
        }

    @classmethod
    def from_dict(cls, d: dict, hasher=None) -> "ComplementaryMerkleTree":
        if hasher is None:
            hasher = ToyHasher() if d.get("hasher") == "toy" else POSEIDON
        slots = {int(s): (F.from_hex(a), F.from_hex(b)) for s, a, b in d["occupied"]}
        tree = cls.from_slots(int(d["depth"]), slots, [F.from_hex(x) for x in d["blocked"]],
                              F.from_hex(d["top"]), hasher)
        if "root" in d and F.from_hex(d["root"]) != tree.root:
            raise ValueError("serialized root does not match rebuilt tree")
        return tree


def ver_non_mem(root: int, ps: int, w: NonMembershipWitness, hasher=POSEIDON,
                depth: int | None = None) -> bool:
    """Accept iff ``a <= ps < b`` and the leaf's path recomputes ``root``."""
    try:
        if depth is not None and len(w.path) != depth:
            return False
        if len(w.directions) != len(w.path):
            return False
        if not 0 <= w.leaf_index < (1 << len(w.path)):
            return False
        if any(((w.leaf_index >> k) & 1) != d for k, d in enumerate(w.directions)):
            return False
        if not (0 <= w.a <= ps < w.b < F.P):
            return False
        h = hasher.leaf(w.a, w.b)
        for sibling, d in zip(w.path, w.directions):
            h = hasher.node(sibling, h) if d else hasher.node(h, sibling)
        return h == root
    except (TypeError, AttributeError, ValueError):
        return False
