"""Command-line flows against a live TCP directory."""

from __future__ import annotations

import json
import subprocess
import sys

import pytest

from fab.cli import load_config, main
from fab.directory import DirectoryServer, DirectoryStore


def run(capsys, *argv):
    rc = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    lines = [json.loads(line) for line in out.splitlines() if line.strip()]
    return rc, (lines[-1] if lines else None), (json.loads(err) if err.strip() else None)


@pytest.fixture
def env(tmp_path, capsys):
    rc, out, _ = run(capsys, "setup", "--backend", "reference", "--depth", 4, "--seed", 1,
                     "--out", tmp_path / "keys")
    assert rc == 0 and out["depth"] == 4
    rc, _, _ = run(capsys, "ip", "init", "--out", tmp_path / "ip.json")
    assert rc == 0
    system = json.loads((tmp_path / "keys" / "verifying.json").read_text())
    system["pk_ip"] = json.loads((tmp_path / "ip.json").read_text())["pk"]
    server = DirectoryServer(DirectoryStore(tmp_path / "dir", system))
    server.start()
    host, port = server.address
    yield tmp_path, f"{host}:{port}"
    server.shutdown()
    server.server_close()


def test_federated_block_flow(env, capsys):
    tmp, addr = env
    keys = ["--keys", tmp / "keys", "--directory", addr]
    for rid in ("A", "B", "C"):
        assert run(capsys, "realm", "create", *keys, "--id", rid, "--out", tmp / f"{rid}.json")[0] == 0
    for rid in ("B", "C"):
        assert run(capsys, "realm", "trust", "--directory", addr, "--state", tmp / "A.json", "--realm", rid)[0] == 0
    for name in ("alice", "spam"):
        assert run(capsys, "user", "register", "--ip", tmp / "ip.json", "--out", tmp / f"{name}.json")[0] == 0

    _, out, _ = run(capsys, "user", "auth", *keys, "--cred", tmp / "alice.json", "--target", "A",
                    "--out", tmp / "alice.bundle")
    assert out["block_proofs"] == 2
    rc, out, _ = run(capsys, "verify", "--directory", addr, "--bundle", tmp / "alice.bundle", "--realm", "A")
    assert rc == 0 and out["accepted"]

    _, ps, _ = run(capsys, "realm", "pseudonym", "--state", tmp / "B.json", "--cred", tmp / "spam.json")
    assert run(capsys, "realm", "block", "--directory", addr, "--state", tmp / "B.json", "--ps", ps["ps"])[0] == 0
    rc, _, err = run(capsys, "user", "auth", *keys, "--cred", tmp / "spam.json", "--target", "A",
                     "--out", tmp / "spam.bundle")
    assert rc == 1 and err["error"] == "Blocked" and err["realm_id"] == "B"
    # a bundle built before the block is stale, not accepted
    rc, _, err = run(capsys, "verify", *keys, "--bundle", tmp / "alice.bundle", "--realm", "A")
    assert rc == 1 and (err["error"], err["realm_id"]) == ("EpochMismatch", "B")

    assert run(capsys, "realm", "untrust", "--directory", addr, "--state", tmp / "A.json", "--realm", "B")[0] == 0
    rc, out, _ = run(capsys, "user", "auth", *keys, "--cred", tmp / "spam.json", "--target", "A",
                     "--out", tmp / "spam.bundle")
    assert rc == 0 and out["block_proofs"] == 1
    assert run(capsys, "verify", "--directory", addr, "--bundle", tmp / "spam.bundle", "--realm", "A")[0] == 0


def test_offline_realm_then_publish(env, capsys):
    tmp, addr = env
    state = tmp / "R.json"
    assert run(capsys, "realm", "create", "--keys", tmp / "keys", "--id", "R", "--out", state)[1]["registered"] is False
    _, out, _ = run(capsys, "realm", "block", "--state", state, "--ps", "12345")
    assert out["epoch"] == 1 and out["unpublished"] == 1
    _, out, _ = run(capsys, "realm", "publish", "--directory", addr, "--state", state)
    assert out == {"realm_id": "R", "epoch": 1, "published": True}
    data = json.loads(state.read_text())
    assert data["unpublished"] == [] and "genesis" not in data


def test_errors_are_json_on_stderr(env, capsys):
    tmp, addr = env
    rc, _, err = run(capsys, "user", "auth", "--keys", tmp / "keys", "--directory", addr,
                     "--cred", tmp / "missing.json", "--target", "A", "--out", tmp / "x")
    assert rc == 1 and err["error"] == "FileNotFoundError"
    rc, _, err = run(capsys, "verify", "--keys", tmp / "keys", "--bundle", tmp / "x", "--realm", "A")
    assert rc == 1 and err["error"] == "ProtocolError"
    state = tmp / "S.json"
    run(capsys, "realm", "create", "--keys", tmp / "keys", "--directory", addr, "--id", "S", "--out", state)
    rc, _, err = run(capsys, "realm", "untrust", "--state", state, "--realm", "Q")
    assert rc == 1 and err["error"] == "NotTrusted"


def test_ip_sign_verifies(tmp_path, capsys):
    from fab.credentials import IdentityProviderKeypair, Signature, schnorr_verify
    run(capsys, "ip", "init", "--out", tmp_path / "ip.json")
    _, out, _ = run(capsys, "ip", "sign", "--key", tmp_path / "ip.json", "--message", "99")
    kp = IdentityProviderKeypair.from_dict(json.loads((tmp_path / "ip.json").read_text()))
    assert schnorr_verify(kp.pk, 99, Signature.from_hex(out["signature"]))


def test_config_toml_and_env_override(tmp_path, monkeypatch):
    conf = tmp_path / "fab.toml"
    conf.write_text('directory = "127.0.0.1:1"\nkeys = "k"\nbackend = "reference"\n')
    monkeypatch.delenv("FAB_DIRECTORY", raising=False)
    monkeypatch.setenv("FAB_KEYS", "from-env")
    assert load_config(str(conf)) == {"directory": "127.0.0.1:1", "keys": "from-env", "backend": "reference"}
    js = tmp_path / "fab.json"
    js.write_text('{"depth": 6}')
    assert load_config(str(js))["depth"] == 6


def test_config_supplies_defaults(tmp_path, capsys):
    conf = tmp_path / "fab.json"
    conf.write_text(json.dumps({"backend": "reference", "depth": 3, "keys": str(tmp_path / "ks")}))
    rc, out, _ = run(capsys, "--config", conf, "setup", "--seed", 2)
    assert rc == 0 and out["backend"] == "reference" and out["depth"] == 3
    assert (tmp_path / "ks" / "system.json").exists()
    rc, _, err = run(capsys, "--config", tmp_path / "absent.toml", "setup")
    assert rc == 2 and err["error"] == "ConfigError"


def test_group_run_and_kernel_bench(tmp_path, capsys):
    from pathlib import Path
    scenario = Path(__file__).resolve().parents[1] / "scenarios" / "federation.jsonl"
    assert main(["group", "run", str(scenario)]) == 0
    capsys.readouterr()
    out_csv = tmp_path / "k.csv"
    rc, out, _ = run(capsys, "bench", "--kernels-only", "--kernel-sizes", "6", "--iters", 2, "--warmup", 1,
                     "--out", out_csv)
    assert rc == 0 and out["rows"] > 0
    header = out_csv.read_text().splitlines()[0]
    assert header == "backend,d,R,op,median_ms,proof_bytes"


def test_console_script_exit_code(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "fab.cli", "realm", "untrust", "--state",
                           str(tmp_path / "nope.json"), "--realm", "X"], capture_output=True, text=True)
    assert proc.returncode == 1
    assert json.loads(proc.stderr)["error"] == "FileNotFoundError"
