"""Identity Provider keys, Schnorr signatures over Jubjub, and credentials.

The IP signs ``hash(CRED, x, 0)`` and never sees ``x``.  Signatures are
``(R, s)`` with ``s*G == R + c*PK`` and ``c = H(H(R), H(H(PK), m))``; that
challenge uses only the field hash, so the relation circuit can recompute it.
"""

from __future__ import annotations

import secrets
from dataclasses import dataclass
from typing import Callable

from . import field as F
from . import jubjub as J
from .poseidon import Tag, credential_hash, hash2


def challenge(r_point, pk, message: int) -> int:
    hr = hash2(Tag.CHALLENGE, r_point[0], r_point[1])
    hpk = hash2(Tag.CHALLENGE, pk[0], pk[1])
    return hash2(Tag.CHALLENGE, hr, hash2(Tag.CHALLENGE, hpk, message))


@dataclass(frozen=True)
class Signature:
    r: tuple[int, int]
    s: int

    def to_bytes(self) -> bytes:
        return J.to_bytes(self.r) + self.s.to_bytes(32, "little")

    @classmethod
    def from_bytes(cls, data: bytes) -> "Signature":
        if len(data) != 96:
            raise ValueError("signature encoding must be 96 bytes")
        return cls(J.from_bytes(data[:64]), int.from_bytes(data[64:], "little"))

    def to_hex(self) -> str:
        return self.to_bytes().hex()

    @classmethod
    def from_hex(cls, s: str) -> "Signature":
        return cls.from_bytes(bytes.fromhex(s))


@dataclass(frozen=True)
class PublicKey:
    point: tuple[int, int]

    def to_hex(self) -> str:
        return J.to_bytes(self.point).hex()

    @classmethod
    def from_hex(cls, s: str) -> "PublicKey":
        return cls(J.from_bytes(bytes.fromhex(s)))

    def is_valid(self) -> bool:
        return self.point != J.IDENTITY and J.in_subgroup(self.point)


@dataclass(frozen=True)
class IdentityProviderKeypair:
    sk: int
    pk: PublicKey

    @classmethod
    def from_secret(cls, sk: int) -> "IdentityProviderKeypair":
        if not 0 < sk < J.ORDER:
            raise ValueError("secret key out of range")
        return cls(sk, PublicKey(J.mul(sk, J.generator())))

    def to_dict(self) -> dict:
        return {"sk": hex(self.sk), "pk": self.pk.to_hex()}

    @classmethod
    def from_dict(cls, d: dict) -> "IdentityProviderKeypair":
        kp = cls.from_secret(int(d["sk"], 16))
        if kp.pk.to_hex() != d["pk"]:
            raise ValueError("public key does not match secret key")
        return kp


def ip_init(rng=None) -> IdentityProviderKeypair:
    sk = 0
    while sk == 0:
        sk = secrets.randbelow(J.ORDER) if rng is None else rng.randrange(J.ORDER)
    return IdentityProviderKeypair.from_secret(sk)


def ip_sign(sk: int, h_x: int, rng=None) -> Signature:
    g = J.generator()
    pk = J.mul(sk, g)
    k = 0
    while k == 0:
        k = secrets.randbelow(J.ORDER) if rng is None else rng.randrange(J.ORDER)
    r_point = J.mul(k, g)
    c = challenge(r_point, pk, h_x)
    return Signature(r_point, (k + c * sk) % J.ORDER)


def schnorr_verify(pk: PublicKey, message: int, sig: Signature) -> bool:
    try:
        if not (0 <= sig.s < J.ORDER and J.on_curve(sig.r) and J.on_curve(pk.point)):
            return False
        c = challenge(sig.r, pk.point, message)
        lhs = J.mul(sig.s, J.generator())
        return lhs == J.add(sig.r, J.mul(c, pk.point))
    except (TypeError, ValueError, AttributeError):
        return False


@dataclass(frozen=True)
class Credential:
    x: int
    sigma: Signature

    def to_dict(self, params_digest: str | None = None) -> dict:
        return {"params_digest": params_digest, "x": F.to_hex(self.x), "sigma": self.sigma.to_hex()}

    @classmethod
    def from_dict(cls, d: dict) -> "Credential":
        return cls(F.from_hex(d["x"]), Signature.from_hex(d["sigma"]))


class IdentityProvider:
    """Holds the IP keypair and signs credential hashes.

    ``policy`` sees each credential hash before signing and may raise to
    refuse it; this is where a deployment would enforce one credential per
    person.  The default accepts everything.
    """

    def __init__(self, keypair: IdentityProviderKeypair | None = None,
                 policy: Callable[[int], None] | None = None, rng=None):
        self.keypair = keypair or ip_init(rng)
        self.policy = policy
        self._rng = rng

    @property
    def pk(self) -> PublicKey:
        return self.keypair.pk

    def sign(self, h_x: int) -> Signature:
        if self.policy is not None:
            self.policy(h_x)
        return ip_sign(self.keypair.sk, h_x, self._rng)


def register(x: int, ip: IdentityProvider) -> Credential:
    return Credential(x, ip.sign(credential_hash(x)))


def verify_credential(pk: PublicKey, cred: Credential) -> bool:
    if not 0 <= cred.x < F.P:
        return False
    return schnorr_verify(pk, credential_hash(cred.x), cred.sigma)
