"""Exception hierarchy.  Every error carries a short machine-readable code."""


class FabError(Exception):
    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class AlreadyBlocked(FabError):
    code = "AlreadyBlocked"


class NotBlocked(FabError):
    code = "NotBlocked"


class CapacityExceeded(FabError):
    code = "CapacityExceeded"


class OutOfDomain(FabError):
    code = "OutOfDomain"


class SynthesisError(FabError):
    code = "SynthesisError"


class UnsatisfiedRelation(FabError):
    code = "UnsatisfiedRelation"


class TrapdoorUnavailable(FabError):
    code = "TrapdoorUnavailable"


class Blocked(FabError):
    """The user cannot produce a non-membership witness for ``realm_id``."""

    code = "Blocked"

    def __init__(self, realm_id: str):
        super().__init__(f"pseudonym is blocked in realm {realm_id}")
        self.realm_id = realm_id

    def to_dict(self) -> dict:
        return {**super().to_dict(), "realm_id": self.realm_id}


class EpochMismatch(FabError):
    code = "EpochMismatch"

    def __init__(self, realm_id: str, bundle_epoch: int, current_epoch: int):
        super().__init__(
            f"realm {realm_id}: bundle built at epoch {bundle_epoch}, current is {current_epoch}"
        )
        self.realm_id = realm_id
        self.bundle_epoch = bundle_epoch
        self.current_epoch = current_epoch

    def to_dict(self) -> dict:
        return {**super().to_dict(), "realm_id": self.realm_id}


class UnreachableRealm(FabError):
    code = "UnreachableRealm"


class UnknownRealm(FabError):
    code = "UnknownRealm"


class DuplicateTrust(FabError):
    code = "DuplicateTrust"


class NotTrusted(FabError):
    code = "NotTrusted"


class DanglingTrust(FabError):
    code = "DanglingTrust"

    def __init__(self, missing: list[str]):
        super().__init__(f"trusted realms not registered: {', '.join(missing)}")
        self.missing = list(missing)

    def to_dict(self) -> dict:
        return {**super().to_dict(), "missing": self.missing}


class EpochRegression(FabError):
    code = "EpochRegression"


class BadSignature(FabError):
    code = "BadSignature"


class AlreadyRegistered(FabError):
    code = "AlreadyRegistered"


class NotAMember(FabError):
    code = "NotAMember"


class NothingToCommit(FabError):
    code = "NothingToCommit"


class ProtocolError(FabError):
    code = "ProtocolError"


def error_from_dict(d: dict) -> FabError:
    """Rebuild an error sent over the wire; unknown codes become ProtocolError."""
    code, message = d.get("error"), d.get("message", "")
    if code == "DanglingTrust":
        return DanglingTrust(d.get("missing", []))
    if code == "Blocked":
        return Blocked(d.get("realm_id", "?"))
    for cls in FabError.__subclasses__():
        if cls.code == code and cls not in (EpochMismatch,):
            return cls(message)
    return ProtocolError(f"{code}: {message}")
