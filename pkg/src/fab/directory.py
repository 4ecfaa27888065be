"""Realm directory: signed realm records, system keys, and the wire protocol.

Each realm registers a maintainer key at epoch 0; every later publication
must carry the next epoch and a maintainer signature over the record.
Reads of several records (``fetch_closure``) happen under one lock, so they
all come from the same store version.

Wire format: 4-byte big-endian length, then canonical JSON.  Requests are
``{"op": ..., "args": {...}}``; responses are ``{"ok": true, "version": v,
"result": ...}`` or ``{"ok": false, "version": v, "error": code, ...}``.

On disk: ``index.json`` (maintainer keys, latest epochs, store version) plus
one ``realms/<id>.jsonl`` per realm holding every accepted record, one JSON
object per line.
"""

from __future__ import annotations

import hashlib
import json
import os
import re
import socket
import socketserver
import struct
import threading
from pathlib import Path
from typing import Any

from . import field as F
from . import jubjub as J
from .credentials import PublicKey, Signature, ip_sign, schnorr_verify
from .errors import (AlreadyRegistered, BadSignature, DanglingTrust, EpochRegression, FabError,
                     ProtocolError, UnknownRealm, error_from_dict)

OPS = ("REGISTER", "PUBLISH", "FETCH", "FETCH_CLOSURE", "LIST", "GET_KEYS", "UNREGISTER")
MAX_MESSAGE = 256 << 20
_REALM_ID = re.compile(r"^[A-Za-z0-9_.-]{1,64}$")


def canonical_json(obj: Any) -> bytes:
    return json.dumps(obj, sort_keys=True, separators=(",", ":")).encode()


def record_message(record: dict) -> int:
    """Field element a maintainer signs for ``record``."""
    return int.from_bytes(hashlib.sha256(b"fab/record\x00" + canonical_json(record)).digest(), "little") % F.P


def sign_record(record: dict, maintainer_sk: int, rng=None) -> str:
    return ip_sign(maintainer_sk, record_message(record), rng).to_hex()


def _unregister_message(realm_id: str) -> int:
    return int.from_bytes(hashlib.sha256(b"fab/unregister\x00" + realm_id.encode()).digest(), "little") % F.P


def sign_unregister(realm_id: str, maintainer_sk: int, rng=None) -> str:
    return ip_sign(maintainer_sk, _unregister_message(realm_id), rng).to_hex()


def _check_sig(pk_hex: str, message: int, sig_hex: str) -> None:
    try:
        pk, sig = PublicKey.from_hex(pk_hex), Signature.from_hex(sig_hex)
    except (ValueError, TypeError) as exc:
        raise BadSignature(f"malformed signature or key: {exc}") from exc
    if not schnorr_verify(pk, message, sig):
        raise BadSignature("record signature does not verify under the maintainer key")


class DirectoryStore:
    """Thread-safe store.  Writers are serialized; readers see whole versions."""

    def __init__(self, path: str | os.PathLike | None = None, system: dict | None = None):
        self._lock = threading.RLock()
        self.version = 0
        self._maintainers: dict[str, str] = {}
        self._history: dict[str, list[dict]] = {}
        self.system = system or {}
        self.path = Path(path) if path is not None else None
        if self.path is not None:
            self._load()

    # -- persistence ---------------------------------------------------------

    def _realm_log(self, realm_id: str) -> Path:
        return self.path / "realms" / f"{realm_id}.jsonl"

    def _load(self) -> None:
        index_path = self.path / "index.json"
        if not index_path.exists():
            return
        index = json.loads(index_path.read_text())
        self.version = index["version"]
        self._maintainers = dict(index["maintainers"])
        for rid in self._maintainers:
            lines = self._realm_log(rid).read_text().splitlines()
            history = [json.loads(line)["record"] for line in lines if line.strip()]
            if len(history) != index["epochs"][rid] + 1:
                raise ProtocolError(f"realm log for {rid} disagrees with the index")
            self._history[rid] = history

    def _persist(self, realm_id: str, entry: dict | None) -> None:
        if self.path is None:
            return
        (self.path / "realms").mkdir(parents=True, exist_ok=True)
        if entry is not None:
            with open(self._realm_log(realm_id), "ab") as f:
                f.write(canonical_json(entry) + b"\n")
        index = {
            "version": self.version,
            "maintainers": self._maintainers,
            "epochs": {rid: len(h) - 1 for rid, h in self._history.items()},
        }
        tmp = self.path / "index.json.tmp"
        tmp.write_bytes(canonical_json(index))
        os.replace(tmp, self.path / "index.json")

    # -- writes --------------------------------------------------------------

    def register(self, record: dict, signature: str, maintainer_pk: str) -> int:
        rid = record.get("realm_id")
        if not isinstance(rid, str) or not _REALM_ID.match(rid):
            raise ProtocolError(f"invalid realm id {rid!r}")
        if record.get("epoch") != 0:
            raise EpochRegression("a realm registers at epoch 0")
        _check_sig(maintainer_pk, record_message(record), signature)
        with self._lock:
            if rid in self._maintainers:
                raise AlreadyRegistered(f"realm {rid} is already registered")
            self._maintainers[rid] = maintainer_pk
            self._history[rid] = [record]
            self.version += 1
            if self.path is not None and self._realm_log(rid).exists():
                self._realm_log(rid).unlink()
            self._persist(rid, {"record": record, "signature": signature})
            return self.version

    def publish(self, record: dict, signature: str) -> int:
        rid = record.get("realm_id")
        with self._lock:
            if rid not in self._maintainers:
                raise UnknownRealm(f"realm {rid} is not registered")
            current = self._history[rid][-1]["epoch"]
            if record.get("epoch") != current + 1:
                raise EpochRegression(f"realm {rid}: expected epoch {current + 1}, got {record.get('epoch')}")
            if record.get("seed") != self._history[rid][0]["seed"]:
                raise ProtocolError(f"realm {rid}: seed cannot change")
            _check_sig(self._maintainers[rid], record_message(record), signature)
            self._history[rid].append(record)
            self.version += 1
            self._persist(rid, {"record": record, "signature": signature})
            return self.version

    def unregister(self, realm_id: str, signature: str) -> int:
        with self._lock:
            if realm_id not in self._maintainers:
                raise UnknownRealm(f"realm {realm_id} is not registered")
            _check_sig(self._maintainers[realm_id], _unregister_message(realm_id), signature)
            del self._maintainers[realm_id]
            del self._history[realm_id]
            self.version += 1
            if self.path is not None:
                log = self._realm_log(realm_id)
                if log.exists():
                    log.rename(log.with_suffix(f".retired-{self.version}"))
            self._persist(realm_id, None)
            return self.version

    # -- reads ---------------------------------------------------------------

    def fetch(self, realm_id: str) -> tuple[int, dict]:
        with self._lock:
            if realm_id not in self._history:
                raise UnknownRealm(f"realm {realm_id} is not registered")
            return self.version, self._history[realm_id][-1]

    def fetch_closure(self, realm_id: str) -> tuple[int, dict, list[dict]]:
        with self._lock:
            version, target = self.fetch(realm_id)
            missing = [t for t in target["trusted"] if t not in self._history]
            if missing:
                raise DanglingTrust(missing)
            return version, target, [self._history[t][-1] for t in target["trusted"]]

    def history(self, realm_id: str) -> list[int]:
        with self._lock:
            if realm_id not in self._history:
                raise UnknownRealm(f"realm {realm_id} is not registered")
            return [r["epoch"] for r in self._history[realm_id]]

    def list(self) -> tuple[int, dict[str, int]]:
        with self._lock:
            return self.version, {rid: h[-1]["epoch"] for rid, h in sorted(self._history.items())}

    # -- request dispatch ----------------------------------------------------

    def handle(self, request: dict) -> dict:
        """Process one decoded request; never raises."""
        try:
            op, args = request.get("op"), request.get("args") or {}
            if op == "REGISTER":
                result = None
                version = self.register(args["record"], args["signature"], args["maintainer_pk"])
            elif op == "PUBLISH":
                result = None
                version = self.publish(args["record"], args["signature"])
            elif op == "UNREGISTER":
                result = None
                version = self.unregister(args["realm_id"], args["signature"])
            elif op == "FETCH":
                version, result = self.fetch(args["realm_id"])
            elif op == "FETCH_CLOSURE":
                version, target, trusted = self.fetch_closure(args["realm_id"])
                result = {"target": target, "trusted": trusted}
            elif op == "LIST":
                version, result = self.list()
            elif op == "GET_KEYS":
                version, result = self.version, self.system
            else:
                raise ProtocolError(f"unknown op {op!r}")
            return {"ok": True, "version": version, "result": result}
        except FabError as exc:
            return {"ok": False, "version": self.version, **exc.to_dict()}
        except (KeyError, TypeError, AttributeError) as exc:
            return {"ok": False, "version": self.version, **ProtocolError(f"bad request: {exc!r}").to_dict()}


# -- framing -------------------------------------------------------------------------

def send_message(sock: socket.socket, obj: Any) -> None:
    body = canonical_json(obj)
    sock.sendall(struct.pack(">I", len(body)) + body)


def _recv_exact(sock: socket.socket, n: int) -> bytes:
    buf = bytearray()
    while len(buf) < n:
        chunk = sock.recv(n - len(buf))
        if not chunk:
            raise ConnectionError("connection closed mid-message")
        buf.extend(chunk)
    return bytes(buf)


def recv_message(sock: socket.socket) -> Any:
    (length,) = struct.unpack(">I", _recv_exact(sock, 4))
    if length > MAX_MESSAGE:
        raise ProtocolError("message too large")
    try:
        return json.loads(_recv_exact(sock, length))
    except json.JSONDecodeError as exc:
        raise ProtocolError(f"malformed message: {exc}") from exc


class _Handler(socketserver.BaseRequestHandler):
    def handle(self) -> None:
        store: DirectoryStore = self.server.store  # type: ignore[attr-defined]
        while True:
            try:
                request = recv_message(self.request)
            except (ConnectionError, struct.error):
                return
            except ProtocolError as exc:
                send_message(self.request, {"ok": False, "version": store.version, **exc.to_dict()})
                return
            send_message(self.request, store.handle(request))


class DirectoryServer(socketserver.ThreadingTCPServer):
    daemon_threads = True
    allow_reuse_address = True

    def __init__(self, store: DirectoryStore, host: str = "127.0.0.1", port: int = 0):
        super().__init__((host, port), _Handler)
        self.store = store

    @property
    def address(self) -> tuple[str, int]:
        return self.server_address[0], self.server_address[1]

    def start(self) -> threading.Thread:
        t = threading.Thread(target=self.serve_forever, daemon=True)
        t.start()
        return t


# -- transports and client -----------------------------------------------------------

class InProcessTransport:
    """Round-trips every request through JSON so it behaves like the socket path."""

    def __init__(self, store: DirectoryStore):
        self.store = store

    def request(self, obj: dict) -> dict:
        return json.loads(canonical_json(self.store.handle(json.loads(canonical_json(obj)))))


class TcpTransport:
    def __init__(self, host: str, port: int, timeout: float = 30.0):
        self.host, self.port, self.timeout = host, port, timeout
        self._sock: socket.socket | None = None
        self._lock = threading.Lock()

    def request(self, obj: dict) -> dict:
        with self._lock:
            if self._sock is None:
                self._sock = socket.create_connection((self.host, self.port), timeout=self.timeout)
            try:
                send_message(self._sock, obj)
                return recv_message(self._sock)
            except (OSError, struct.error):
                self.close()
                raise

    def close(self) -> None:
        if self._sock is not None:
            self._sock.close()
            self._sock = None


class DirectoryClient:
    """Typed wrapper over a transport.  ``calls`` logs every op issued."""

    def __init__(self, transport):
        self.transport = transport
        self.calls: list[str] = []
        self.last_version: int | None = None

    def _call(self, op: str, **args):
        self.calls.append(op)
        response = self.transport.request({"op": op, "args": args})
        self.last_version = response.get("version")
        if not response.get("ok"):
            raise error_from_dict(response)
        return response.get("result")

    def register(self, record: dict, maintainer_sk: int, rng=None) -> None:
        pk = J.to_bytes(J.mul(maintainer_sk, J.generator())).hex()
        self._call("REGISTER", record=record, signature=sign_record(record, maintainer_sk, rng), maintainer_pk=pk)

    def publish(self, record: dict, maintainer_sk: int, rng=None) -> None:
        self._call("PUBLISH", record=record, signature=sign_record(record, maintainer_sk, rng))

    def unregister(self, realm_id: str, maintainer_sk: int, rng=None) -> None:
        self._call("UNREGISTER", realm_id=realm_id, signature=sign_unregister(realm_id, maintainer_sk, rng))

    def fetch(self, realm_id: str) -> dict:
        return self._call("FETCH", realm_id=realm_id)

    def fetch_closure(self, realm_id: str) -> tuple[dict, list[dict]]:
        result = self._call("FETCH_CLOSURE", realm_id=realm_id)
        return result["target"], result["trusted"]

    def list(self) -> dict[str, int]:
        return self._call("LIST")

    def get_keys(self) -> dict:
        return self._call("GET_KEYS")


def connect(address: str) -> DirectoryClient:
    host, _, port = address.rpartition(":")
    return DirectoryClient(TcpTransport(host or "127.0.0.1", int(port)))


def fetch_states(client: DirectoryClient, realm_id: str, with_tree: bool = True):
    """One FETCH_CLOSURE call, decoded into snapshots ``(target, [trusted...])``."""
    from .realm import RealmSnapshot
    target, trusted = client.fetch_closure(realm_id)
    return (RealmSnapshot.from_record(target, with_tree),
            [RealmSnapshot.from_record(t, with_tree) for t in trusted])
