"""Benchmark harness: protocol scaling and kernel speed.

Every timing is the median of ``iters`` runs after ``warmup`` discarded runs.
CSV columns are fixed: ``backend, d, R, op, median_ms, proof_bytes``.

Protocol ops (backend = proof backend):
  ``auth``          full bundle construction with R trusted realms
  ``verify``        full bundle verification
  ``verify_block``  one block-proof verification
  ``auth@fill=F``   auth with R trusted realms, every realm filled to F of capacity

Kernel ops (backend = ``numba`` or ``numpy``, d = log2 of the problem size):
  ``poseidon_batch``  batched two-to-one hashes
  ``qap_quotient``    coset-NTT quotient over the evaluation domain
"""

from __future__ import annotations

import csv
import random
import statistics
import subprocess
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from . import accel
from .accumulator import ComplementaryMerkleTree
from .credentials import IdentityProvider, register
from .field import P
from .params import SystemParams
from .realm import Realm, RealmSnapshot, SystemKeys, auth, setup_system, verify
from .relations import BlockStatement

COLUMNS = ("backend", "d", "R", "op", "median_ms", "proof_bytes")


@dataclass(frozen=True)
class Row:
    backend: str
    d: int
    R: int
    op: str
    median_ms: float
    proof_bytes: int


def median_ms(fn: Callable[[], object], iters: int = 10, warmup: int = 2) -> float:
    for _ in range(warmup):
        fn()
    samples = []
    for _ in range(iters):
        t0 = time.perf_counter()
        fn()
        samples.append((time.perf_counter() - t0) * 1e3)
    return statistics.median(samples)


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares ``y = slope*x + intercept``; returns (slope, intercept, r_squared)."""
    x, y = np.asarray(xs, float), np.asarray(ys, float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float((resid ** 2).sum()) / ss_tot if ss_tot else 1.0
    return float(slope), float(intercept), r2


def git_revision() -> str:
    try:
        out = subprocess.run(["git", "rev-parse", "--short", "HEAD"], capture_output=True, text=True, timeout=5)
        return out.stdout.strip() or "unknown"
    except OSError:
        return "unknown"


def filled_realm(realm_id: str, params: SystemParams, fill: float, rng: random.Random) -> Realm:
    """Realm whose tree holds ``fill * capacity`` random blocked values (bulk-loaded)."""
    count = int(fill * params.capacity)
    blocked = {rng.randrange(P - 1) for _ in range(count)}
    while len(blocked) < count:
        blocked.add(rng.randrange(P - 1))
    tree = ComplementaryMerkleTree.from_blocked(params.depth, blocked) if count else None
    return Realm(realm_id, params, rng.randrange(P), tree)


class ProtocolBench:
    """One system setup plus a pool of realms, reused across measurements."""

    def __init__(self, backend: str, depth: int, max_r: int, seed: int = 0, fill: float = 0.0,
                 keys: SystemKeys | None = None):
        self.rng = random.Random(seed)
        self.params = SystemParams(depth=depth)
        self.backend = backend
        self.keys = keys or setup_system(self.params, backend, rng=self.rng)
        self.ip = IdentityProvider(rng=self.rng)
        self.cred = register(self.rng.randrange(P), self.ip)
        self.target = filled_realm("target", self.params, fill, self.rng)
        self.trusted = [filled_realm(f"t{i}", self.params, fill, self.rng) for i in range(max_r)]

    def states(self, r: int):
        t = self.target
        ids = [x.realm_id for x in self.trusted[:r]]
        return (RealmSnapshot.of_tree(t.realm_id, t.seed, t.tree, t.epoch, ids),
                [x.snapshot() for x in self.trusted[:r]])

    def bundle(self, r: int):
        target, trusted = self.states(r)
        return auth(self.keys, self.cred, self.ip.pk, target, trusted, rng=self.rng)

    def measure(self, r: int, iters: int, warmup: int, op_suffix: str = "") -> list[Row]:
        target, trusted = self.states(r)
        holder = {}

        def run_auth():
            holder["b"] = auth(self.keys, self.cred, self.ip.pk, target, trusted, rng=self.rng)

        d = self.params.depth
        auth_ms = median_ms(run_auth, iters, warmup)
        bundle = holder["b"]
        rows = [Row(self.backend, d, r, "auth" + op_suffix, auth_ms, bundle.proof_bytes)]
        if op_suffix:
            return rows
        assert verify(self.keys, self.ip.pk, bundle, target, trusted)
        rows.append(Row(self.backend, d, r, "verify",
                        median_ms(lambda: verify(self.keys, self.ip.pk, bundle, target, trusted), iters, warmup),
                        bundle.proof_bytes))
        if bundle.pi_block:
            from .backend import get_backend
            be = get_backend(self.backend)
            bp, state = bundle.pi_block[0], trusted[0]
            stmt = BlockStatement(bundle.ps_r, target.seed, state.seed, state.root)
            rows.append(Row(self.backend, d, r, "verify_block",
                            median_ms(lambda: be.verify(self.keys.block.vk, stmt, bp.proof), iters, warmup),
                            bp.proof.size))
        return rows


def bench_protocol(backend: str, depths: Iterable[int], r_values: Sequence[int], iters: int = 10,
                   warmup: int = 2, seed: int = 0) -> list[Row]:
    rows = []
    for d in depths:
        pb = ProtocolBench(backend, d, max(r_values), seed)
        for r in r_values:
            rows.extend(pb.measure(r, iters, warmup))
    return rows


def bench_fill(backend: str, depth: int, fills: Sequence[float], r: int = 1, iters: int = 10,
               warmup: int = 2, seed: int = 0, keys: SystemKeys | None = None) -> list[Row]:
    rows = []
    for fill in fills:
        pb = ProtocolBench(backend, depth, r, seed, fill, keys)
        keys = pb.keys
        rows.extend(pb.measure(r, iters, warmup, f"@fill={fill:.2f}"))
        del pb  # filled trees at high depth are large; free before the next fill
    return rows


def bench_kernels(log_sizes: Sequence[int] = (10, 13), iters: int = 10, warmup: int = 2,
                  seed: int = 0) -> list[Row]:
    rng = random.Random(seed)
    rows = []
    for name in accel.KERNELS:
        k = accel.kernels(name)
        for lg in log_sizes:
            n = 1 << lg
            tags = [3] * n
            lefts = [rng.randrange(P) for _ in range(n)]
            rights = [rng.randrange(P) for _ in range(n)]
            rows.append(Row(name, lg, 0, "poseidon_batch",
                            median_ms(lambda: k.poseidon_many(tags, lefts, rights), iters, warmup), 0))
            a = [rng.randrange(P) for _ in range(n)]
            b = [rng.randrange(P) for _ in range(n)]
            c = [x * y % P for x, y in zip(a, b)]
            rows.append(Row(name, lg, 0, "qap_quotient",
                            median_ms(lambda: k.qap_quotient(a, b, c), iters, warmup), 0))
    return rows


def summarize(rows: Sequence[Row]) -> dict:
    """Fitted auth-time slopes per (backend, d) and per-proof sizes."""
    out = {}
    keys = sorted({(r.backend, r.d) for r in rows if r.op == "auth"})
    for backend, d in keys:
        pts = sorted((r.R, r.median_ms, r.proof_bytes) for r in rows
                     if r.op == "auth" and r.backend == backend and r.d == d)
        entry = {"points": len(pts)}
        if len(pts) >= 2:
            slope, intercept, r2 = linear_fit([p[0] for p in pts], [p[1] for p in pts])
            entry.update(slope_ms_per_realm=slope, intercept_ms=intercept, r_squared=r2)
            size_slope, size_icpt, _ = linear_fit([p[0] for p in pts], [p[2] for p in pts])
            entry.update(block_proof_bytes=size_slope, auth_proof_bytes=size_icpt)
        out[f"{backend}/d{d}"] = entry
    return out


def write_csv(rows: Sequence[Row], path: str) -> None:
    with open(path, "w", newline="") as f:
        w = csv.DictWriter(f, fieldnames=COLUMNS)
        w.writeheader()
        for r in rows:
            d = asdict(r)
            d["median_ms"] = f"{r.median_ms:.3f}"
            w.writerow(d)
