"""System parameters and their content digest."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from functools import cached_property

from . import field as F
from .poseidon import Tag, default_params

DEFAULT_DEPTH = 20


@dataclass(frozen=True)
class SystemParams:
    depth: int = DEFAULT_DEPTH
    modulus: int = F.P
    tags: dict[str, int] = field(default_factory=lambda: {t.name: int(t) for t in Tag})

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("tree depth must be at least 1")
        if len(set(self.tags.values())) != len(self.tags):
            raise ValueError("domain tags must be pairwise distinct")
        if self.modulus != F.P:
            raise ValueError("only the BLS12-381 scalar field is supported")

    def __hash__(self):
        return hash(self.digest)

    @property
    def capacity(self) -> int:
        return 1 << self.depth

    def to_dict(self) -> dict:
        h = default_params()
        constants = b"".join(F.to_bytes(c) for row in h.round_constants for c in row)
        mds = b"".join(F.to_bytes(c) for row in h.mds for c in row)
        return {
            "field_modulus": hex(self.modulus),
            "hash": {
                "name": "poseidon",
                "width": h.width,
                "alpha": 5,
                "full_rounds": h.full_rounds,
                "partial_rounds": h.partial_rounds,
                "round_constants_sha256": hashlib.sha256(constants).hexdigest(),
                "mds_sha256": hashlib.sha256(mds).hexdigest(),
            },
            "tree_depth": self.depth,
            "tags": dict(sorted(self.tags.items())),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SystemParams":
        params = cls(depth=int(d["tree_depth"]), modulus=int(d["field_modulus"], 16),
                     tags={k: int(v) for k, v in d["tags"].items()})
        if params.to_dict() != d:
            raise ValueError("parameter set does not match this build's hash instance")
        return params

    @cached_property
    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()
