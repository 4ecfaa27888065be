"""JSON forms of proving and verifying keys for both backends.  Trapdoors are never serialized."""

from __future__ import annotations

from ..errors import ProtocolError


def key_to_dict(key) -> dict:
    return key.to_dict()


def key_from_dict(backend: str, kind: str, d: dict):
    if backend == "reference":
        from .reference import ReferenceKey
        return ReferenceKey.from_dict(d)
    if backend == "groth16":
        from .groth16 import ProvingKey, VerifyingKey
        return (ProvingKey if kind == "pk" else VerifyingKey).from_dict(d)
    raise ProtocolError(f"unknown backend {backend!r}")
