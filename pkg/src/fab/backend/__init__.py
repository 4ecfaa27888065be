"""Proof backends sharing one Setup/Prove/Verify/Sim interface.

``reference`` is transparent: its proof is the serialized witness and
verification is the native evaluator.  ``groth16`` is a pairing-based
preprocessing SNARK over BLS12-381.  Both consume the ``Relation`` objects in
``fab.relations``.

Proof wire format: backend tag byte, relation id (u8 length + ASCII), then
proof bytes with a u32 big-endian length prefix.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Any

from ..errors import ProtocolError

TAGS = {"reference": 0x01, "groth16": 0x02}
NAMES = {v: k for k, v in TAGS.items()}


@dataclass(frozen=True)
class Proof:
    backend: str
    relation_id: str
    data: bytes

    def to_bytes(self) -> bytes:
        rid = self.relation_id.encode("ascii")
        return bytes([TAGS[self.backend], len(rid)]) + rid + struct.pack(">I", len(self.data)) + self.data

    @classmethod
    def from_bytes(cls, raw: bytes) -> "Proof":
        try:
            backend = NAMES[raw[0]]
            n = raw[1]
            rid = raw[2:2 + n].decode("ascii")
            (length,) = struct.unpack(">I", raw[2 + n:6 + n])
            data = raw[6 + n:]
        except (IndexError, KeyError, UnicodeDecodeError, struct.error) as exc:
            raise ProtocolError(f"malformed proof encoding: {exc}") from exc
        if len(rid) != n or len(data) != length:
            raise ProtocolError("malformed proof encoding: length mismatch")
        return cls(backend, rid, data)

    @property
    def size(self) -> int:
        return len(self.to_bytes())

    def to_hex(self) -> str:
        return self.to_bytes().hex()

    @classmethod
    def from_hex(cls, s: str) -> "Proof":
        try:
            return cls.from_bytes(bytes.fromhex(s))
        except ValueError as exc:
            raise ProtocolError(str(exc)) from exc


@dataclass(frozen=True)
class RelationKeys:
    """``td`` is None outside test harnesses."""

    backend: str
    pk: Any
    vk: Any
    td: Any = None


def get_backend(name: str):
    if name == "reference":
        from . import reference
        return reference.ReferenceBackend()
    if name == "groth16":
        from . import groth16
        return groth16.Groth16Backend()
    raise ValueError(f"unknown backend {name!r}")


__all__ = ["Proof", "RelationKeys", "get_backend", "TAGS"]
