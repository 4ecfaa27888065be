"""Command-line entry points for every protocol role.

Results go to stdout as JSON.  Failures exit nonzero with an error object on
stderr.  Defaults come from ``--config`` (JSON or TOML), then environment
variables ``FAB_DIRECTORY``, ``FAB_KEYS``, ``FAB_BACKEND``, ``FAB_DEPTH``,
then explicit flags.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import secrets
import sys
from pathlib import Path

from . import field as F
from . import jubjub as J
from .credentials import (Credential, IdentityProvider, IdentityProviderKeypair, PublicKey, ip_sign,
                          register)
from .errors import FabError, ProtocolError
from .params import DEFAULT_DEPTH, SystemParams

ENV = {"directory": "FAB_DIRECTORY", "keys": "FAB_KEYS", "backend": "FAB_BACKEND", "depth": "FAB_DEPTH"}


def load_config(path: str | None) -> dict:
    conf: dict = {}
    if path:
        text = Path(path).read_text()
        if path.endswith(".toml"):
            try:
                import tomllib
            except ModuleNotFoundError:
                import tomli as tomllib
            conf = tomllib.loads(text)
        else:
            conf = json.loads(text)
    for key, var in ENV.items():
        if os.environ.get(var):
            conf[key] = os.environ[var]
    return conf


def _read_json(path) -> dict:
    return json.loads(Path(path).read_text())


def _write_json(path, obj) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(json.dumps(obj, indent=1, sort_keys=True))


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def _keys_path(args) -> Path:
    if not args.keys:
        raise ProtocolError("no key directory given (--keys, config or FAB_KEYS)")
    p = Path(args.keys)
    return p / "system.json" if p.is_dir() else p


def _load_keys(args):
    from .realm import SystemKeys
    return SystemKeys.from_dict(_read_json(_keys_path(args)))


def _client(args):
    from .directory import connect
    if not args.directory:
        raise ProtocolError("no directory address given (--directory, config or FAB_DIRECTORY)")
    return connect(args.directory)


def _parse_field(text: str) -> int:
    text = text.strip()
    return F.from_hex(text) if len(text) == 64 else int(text, 0) % F.P


# -- setup / ip / user --------------------------------------------------------------

def cmd_setup(args) -> None:
    from .realm import setup_system
    params = SystemParams(depth=int(args.depth))
    rng = random.Random(args.seed) if args.seed is not None else None
    keys = setup_system(params, args.backend, rng=rng)
    out = Path(args.out)
    _write_json(out / "system.json", keys.to_dict())
    _write_json(out / "verifying.json", keys.to_dict(include_proving=False))
    _emit({"params_digest": params.digest, "backend": args.backend, "depth": params.depth, "out": str(out)})


def cmd_ip_init(args) -> None:
    kp = IdentityProvider().keypair
    _write_json(args.out, kp.to_dict())
    _emit({"pk": kp.pk.to_hex()})


def cmd_ip_sign(args) -> None:
    kp = IdentityProviderKeypair.from_dict(_read_json(args.key))
    _emit({"signature": ip_sign(kp.sk, _parse_field(args.message)).to_hex()})


def cmd_user_register(args) -> None:
    ip = IdentityProvider(IdentityProviderKeypair.from_dict(_read_json(args.ip)))
    x = _parse_field(args.x) if args.x else secrets.randbelow(F.P)
    cred = register(x, ip)
    _write_json(args.out, {"credential": cred.to_dict(), "pk_ip": ip.pk.to_hex()})
    _emit({"credential": args.out, "pk_ip": ip.pk.to_hex()})


def cmd_user_auth(args) -> None:
    from .directory import fetch_states
    from .realm import auth
    keys = _load_keys(args)
    data = _read_json(args.cred)
    cred = Credential.from_dict(data["credential"])
    client = _client(args)
    target, trusted = fetch_states(client, args.target)
    bundle = auth(keys, cred, PublicKey.from_hex(data["pk_ip"]), target, trusted)
    Path(args.out).write_text(bundle.to_json())
    _emit({"bundle": args.out, "ps_r": F.to_hex(bundle.ps_r), "target_epoch": bundle.target_epoch,
           "block_proofs": len(bundle.pi_block), "proof_bytes": bundle.proof_bytes})


def cmd_verify(args) -> int:
    from .directory import fetch_states
    from .realm import AuthBundle, SystemKeys, check
    client = _client(args)
    system = None
    if args.keys:
        keys = _load_keys(args)
    else:
        system = client.get_keys()
        keys = SystemKeys.from_dict(system)
    if args.ip_pk:
        pk_ip = PublicKey.from_hex(args.ip_pk)
    else:
        system = system or client.get_keys()
        if "pk_ip" not in system:
            raise ProtocolError("no IP key given and the directory does not publish one")
        pk_ip = PublicKey.from_hex(system["pk_ip"])
    bundle = AuthBundle.from_json(Path(args.bundle).read_text())
    target, trusted = fetch_states(client, args.realm, with_tree=False)
    verdict = check(keys, pk_ip, bundle, target, trusted)
    result = {"accepted": verdict.accepted, "reason": verdict.reason, "realm_id": verdict.realm_id}
    if not verdict.accepted:
        print(json.dumps({"error": "Rejected", **result}, sort_keys=True), file=sys.stderr)
        return 1
    _emit(result)
    return 0


# -- realms ---------------------------------------------------------------------------

def _load_realm(path):
    from .realm import Realm, RealmSnapshot
    data = _read_json(path)
    snap = RealmSnapshot.from_record(data["realm"])
    params = SystemParams(depth=snap.depth)
    return Realm.from_snapshot(snap, params), data


def _save_realm(path, realm, data, args) -> dict:
    record = realm.snapshot().to_record(data.get("params_digest"))
    data["realm"] = record
    data.setdefault("unpublished", []).append(record)
    if args.directory and "genesis" not in data:
        _flush(data, _client(args))
    _write_json(path, data)
    return {"realm_id": realm.realm_id, "epoch": realm.epoch, "root": F.to_hex(realm.snapshot().root),
            "unpublished": len(data["unpublished"])}


def _flush(data: dict, client) -> None:
    sk = F.from_hex(data["maintainer_sk"])
    while data["unpublished"]:
        client.publish(data["unpublished"][0], sk)
        data["unpublished"].pop(0)


def cmd_realm_create(args) -> None:
    from .realm import create_realm
    keys = _load_keys(args) if args.keys else None
    params = keys.params if keys else SystemParams(depth=int(args.depth))
    realm = create_realm(params, args.id)
    sk = secrets.randbelow(J.ORDER - 1) + 1
    record = realm.snapshot().to_record(params.digest)
    data = {"realm": record, "maintainer_sk": F.to_hex(sk), "params_digest": params.digest, "unpublished": []}
    registered = False
    if args.directory:
        _client(args).register(record, sk)
        registered = True
    else:
        data["genesis"] = record
    _write_json(args.out, data)
    _emit({"realm_id": realm.realm_id, "epoch": 0, "registered": registered, "state": args.out})


def _realm_ps(args) -> int:
    if args.ps:
        return _parse_field(args.ps)
    raise ProtocolError("give --ps")


def cmd_realm_block(args) -> None:
    realm, data = _load_realm(args.state)
    realm.block(_realm_ps(args))
    _emit(_save_realm(args.state, realm, data, args))


def cmd_realm_unblock(args) -> None:
    realm, data = _load_realm(args.state)
    realm.unblock(_realm_ps(args))
    _emit(_save_realm(args.state, realm, data, args))


def cmd_realm_trust(args) -> None:
    realm, data = _load_realm(args.state)
    known = _client(args).list() if args.directory else None
    realm.trust(args.realm, known)
    _emit(_save_realm(args.state, realm, data, args))


def cmd_realm_untrust(args) -> None:
    realm, data = _load_realm(args.state)
    realm.untrust(args.realm)
    _emit(_save_realm(args.state, realm, data, args))


def cmd_realm_publish(args) -> None:
    data = _read_json(args.state)
    client = _client(args)
    genesis = data.pop("genesis", None)
    if genesis is not None:
        client.register(genesis, F.from_hex(data["maintainer_sk"]))
    _flush(data, client)
    _write_json(args.state, data)
    _emit({"realm_id": data["realm"]["realm_id"], "epoch": data["realm"]["epoch"], "published": True})


def cmd_realm_pseudonym(args) -> None:
    from .poseidon import prf
    realm, _ = _load_realm(args.state)
    cred = Credential.from_dict(_read_json(args.cred)["credential"])
    _emit({"realm_id": realm.realm_id, "ps": F.to_hex(prf(cred.x, realm.seed))})


# -- directory / group / bench ---------------------------------------------------------

def cmd_directory_serve(args) -> None:
    from .directory import DirectoryServer, DirectoryStore
    system = {}
    if args.keys:
        system = _read_json(_keys_path(args))
        for rel in ("auth", "block"):
            system[rel].pop("pk", None)
    if args.ip:
        system["pk_ip"] = IdentityProviderKeypair.from_dict(_read_json(args.ip)).pk.to_hex()
    store = DirectoryStore(args.data, system)
    server = DirectoryServer(store, args.host, int(args.port))
    host, port = server.address
    print(json.dumps({"listening": f"{host}:{port}", "version": store.version}), flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()


def cmd_group_run(args) -> None:
    from .group import run_scenario_file
    for result in run_scenario_file(args.scenario, args.backend):
        _emit(result)


def cmd_bench(args) -> None:
    from . import bench
    ints = lambda s: [int(v) for v in s.split(",") if v]  # noqa: E731
    rows = []
    if args.kernels:
        rows += bench.bench_kernels(ints(args.kernel_sizes), args.iters, args.warmup)
    if not args.kernels_only:
        rows += bench.bench_protocol(args.backend, ints(args.depths), ints(args.R), args.iters, args.warmup)
        if args.fills:
            fills = [float(v) for v in args.fills.split(",")]
            rows += bench.bench_fill(args.backend, int(args.fill_depth), fills, 1, args.iters, args.warmup)
    bench.write_csv(rows, args.out)
    digests = sorted({SystemParams(depth=d).digest for d in ints(args.depths)}) if not args.kernels_only else []
    _emit({"csv": args.out, "rows": len(rows), "git_revision": bench.git_revision(),
           "params_digests": digests, "fits": bench.summarize(rows)})


# -- parser -----------------------------------------------------------------------------

def build_parser(conf: dict) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fab", description="Federated anonymous blocklisting")
    p.add_argument("--config", help="JSON or TOML file with defaults")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, keys=False, directory=False):
        if keys:
            sp.add_argument("--keys", default=conf.get("keys"), help="key directory or system.json")
        if directory:
            sp.add_argument("--directory", default=conf.get("directory"), help="host:port")
        return sp

    sp = sub.add_parser("setup", help="generate system keys")
    sp.add_argument("--depth", type=int, default=int(conf.get("depth", DEFAULT_DEPTH)))
    sp.add_argument("--backend", default=conf.get("backend", "groth16"), choices=("groth16", "reference"))
    sp.add_argument("--out", default=conf.get("keys", "keys"))
    sp.add_argument("--seed", type=int, help="deterministic setup (testing only)")
    sp.set_defaults(fn=cmd_setup)

    ip = sub.add_parser("ip", help="identity provider").add_subparsers(dest="sub", required=True)
    sp = ip.add_parser("init")
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_ip_init)
    sp = ip.add_parser("sign", help="sign a credential hash")
    sp.add_argument("--key", required=True)
    sp.add_argument("--message", required=True, help="field element (64 hex chars or integer)")
    sp.set_defaults(fn=cmd_ip_sign)

    user = sub.add_parser("user", help="user actions").add_subparsers(dest="sub", required=True)
    sp = user.add_parser("register")
    sp.add_argument("--ip", required=True, help="IP key file")
    sp.add_argument("--x", help="credential secret (random if omitted)")
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_user_register)
    sp = common(user.add_parser("auth"), keys=True, directory=True)
    sp.add_argument("--cred", required=True)
    sp.add_argument("--target", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_user_auth)

    realm = sub.add_parser("realm", help="realm maintenance").add_subparsers(dest="sub", required=True)
    sp = common(realm.add_parser("create"), keys=True, directory=True)
    sp.add_argument("--id")
    sp.add_argument("--depth", type=int, default=int(conf.get("depth", DEFAULT_DEPTH)))
    sp.add_argument("--out", required=True)
    sp.set_defaults(fn=cmd_realm_create)
    for name, fn in (("block", cmd_realm_block), ("unblock", cmd_realm_unblock)):
        sp = common(realm.add_parser(name), directory=True)
        sp.add_argument("--state", required=True)
        sp.add_argument("--ps", help="pseudonym in this realm")
        sp.set_defaults(fn=fn)
    for name, fn in (("trust", cmd_realm_trust), ("untrust", cmd_realm_untrust)):
        sp = common(realm.add_parser(name), directory=True)
        sp.add_argument("--state", required=True)
        sp.add_argument("--realm", required=True)
        sp.set_defaults(fn=fn)
    sp = common(realm.add_parser("publish"), directory=True)
    sp.add_argument("--state", required=True)
    sp.set_defaults(fn=cmd_realm_publish)
    sp = realm.add_parser("pseudonym", help="pseudonym of a credential in this realm (moderation aid)")
    sp.add_argument("--state", required=True)
    sp.add_argument("--cred", required=True)
    sp.set_defaults(fn=cmd_realm_pseudonym)

    sp = common(sub.add_parser("verify", help="verify a bundle"), keys=True, directory=True)
    sp.add_argument("--bundle", required=True)
    sp.add_argument("--realm", required=True)
    sp.add_argument("--ip-pk", help="IP public key hex (else from the directory)")
    sp.set_defaults(fn=cmd_verify)

    d = sub.add_parser("directory").add_subparsers(dest="sub", required=True)
    sp = common(d.add_parser("serve"), keys=True)
    sp.add_argument("--data", default="directory-data")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=7420)
    sp.add_argument("--ip", help="IP key file whose public key to publish")
    sp.set_defaults(fn=cmd_directory_serve)

    g = sub.add_parser("group").add_subparsers(dest="sub", required=True)
    sp = g.add_parser("run")
    sp.add_argument("scenario")
    sp.add_argument("--backend", default=conf.get("backend", "reference"))
    sp.set_defaults(fn=cmd_group_run)

    sp = sub.add_parser("bench", help="scaling and kernel benchmarks")
    sp.add_argument("--backend", default=conf.get("backend", "groth16"))
    sp.add_argument("--depths", default="10,14,20")
    sp.add_argument("--R", default="1,5,10,20")
    sp.add_argument("--iters", type=int, default=10)
    sp.add_argument("--warmup", type=int, default=2)
    sp.add_argument("--fills", default="0,0.5,0.9", help="empty string to skip")
    sp.add_argument("--fill-depth", type=int, default=16)
    sp.add_argument("--kernels", action="store_true", help="also compare numba and numpy kernels")
    sp.add_argument("--kernels-only", action="store_true")
    sp.add_argument("--kernel-sizes", default="10,13")
    sp.add_argument("--out", default="bench.csv")
    sp.set_defaults(fn=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        conf = load_config(known.config)
    except (OSError, ValueError) as exc:
        print(json.dumps({"error": "ConfigError", "message": str(exc)}), file=sys.stderr)
        return 2
    args = build_parser(conf).parse_args(argv)
    if args.cmd == "bench" and args.kernels_only:
        args.kernels = True
    try:
        rc = args.fn(args)
    except FabError as exc:
        print(json.dumps(exc.to_dict(), sort_keys=True), file=sys.stderr)
        return 1
    except (OSError, ValueError, KeyError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
