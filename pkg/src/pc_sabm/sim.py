"""Seeded Monte Carlo BER/BLER simulation of product-code decoders.

Every block draws its information bits and noise from its own Philox stream
keyed by ``(seed, ebno index, decoder index, block index)``, and the stop rule
is only evaluated at fixed batch boundaries, so the number of workers never
changes a single count.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import math
import os
import tempfile
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .bch import build_code
from .channel import block_rng, hard_decision, sigma_from_ebno, transmit
from .decode import PAPER_WEIGHTS, DecoderConfig, DecoderKind, decode
from .product import ProductCode

log = logging.getLogger(__name__)

CSV_COLUMNS = ("decoder", "code", "ebno_db", "blocks", "bit_errors", "ber",
               "block_errors", "bler", "pre_fec_ber", "seed")
FORMATS = ("csv", "json", "gnuplot")
DECODER_INDEX = {kind: i for i, kind in enumerate(DecoderKind)}


@dataclass
class SimPoint:
    decoder: str
    code: str
    ebno_db: float
    blocks: int
    bit_errors: int
    ber: float
    block_errors: int
    bler: float
    pre_fec_ber: float
    seed: int
    converged: bool = field(default=True, compare=False)

    def record(self) -> dict:
        return {c: getattr(self, c) for c in CSV_COLUMNS}


@dataclass
class SweepConfig:
    code: tuple[int, int, int] = (7, 2, 1)
    decoders: tuple[DecoderKind, ...] = tuple(DecoderKind)
    ebno_grid: tuple[float, ...] = (4.0,)
    max_blocks: int = 100_000
    min_bit_errors: int = 100
    seed: int = 42
    total_iterations: int = 10
    marking_iterations: int = 5
    threshold: float = 5.0
    weights: tuple[float, ...] = PAPER_WEIGHTS
    all_zero: bool = False
    batch_size: int = 16
    workers: int | None = None
    out: str | None = None
    fmt: str = "csv"

    def __post_init__(self):
        self.code = tuple(int(x) for x in self.code)
        self.decoders = tuple(DecoderKind.parse(d) for d in self.decoders)
        self.ebno_grid = tuple(float(x) for x in self.ebno_grid)
        self.weights = tuple(float(w) for w in self.weights)
        if not self.ebno_grid:
            raise ValueError("Eb/N0 grid is empty")
        if not self.decoders:
            raise ValueError("no decoders selected")
        if self.max_blocks < 1 or self.batch_size < 1:
            raise ValueError("max_blocks and batch_size must be >= 1")
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown output format {self.fmt!r}")
        for kind in self.decoders:  # fail fast on bad iteration/weight combos
            self.decoder_config(kind)

    @property
    def code_label(self) -> str:
        return ",".join(str(x) for x in self.code)

    def decoder_config(self, kind) -> DecoderConfig:
        return DecoderConfig(self.total_iterations, self.marking_iterations, self.threshold,
                             self.weights, DecoderKind.parse(kind))


def parse_grid(spec: str) -> tuple[float, ...]:
    """``"start:stop:step"`` (stop inclusive), ``"a,b,c"`` or a single value."""
    if ":" in spec:
        start, stop, step = (float(x) for x in spec.split(":"))
        if step <= 0 or stop < start:
            raise ValueError(f"bad Eb/N0 range {spec!r}")
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return tuple(round(start + i * step, 10) for i in range(count))
    return tuple(float(x) for x in spec.split(",") if x.strip())


def worker_count(requested: int | None = None) -> int:
    n = requested or os.cpu_count() or 1
    cap = os.environ.get("PC_SABM_THREADS")
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def simulate_blocks(code_params, config: DecoderConfig, ebno_db: float, seed: int,
                    ebno_index: int, start: int, stop: int, all_zero: bool = False
                    ) -> tuple[int, int, int, int]:
    """Blocks ``start..stop-1`` of one point.

    Returns (blocks, info bit errors, block errors, pre-FEC bit errors).
    """
    code = build_code(*code_params)
    pc = ProductCode(code)
    sigma = sigma_from_ebno(ebno_db, pc.rate)
    dec_index = DECODER_INDEX[config.decoder_kind]
    bit_err = blk_err = pre_err = 0
    for b in range(start, stop):
        rng = block_rng(seed, ebno_index, dec_index, b)
        if all_zero:
            tx = np.zeros((pc.n, pc.n), dtype=np.uint8)
        else:
            _, tx = pc.random_block(rng)
        rel = transmit(tx, sigma, rng)
        pre_err += int(np.count_nonzero(hard_decision(rel) != tx))
        out = decode(rel, code, config, tx=tx)
        e = int(np.count_nonzero(out[: pc.k, : pc.k] != tx[: pc.k, : pc.k]))
        bit_err += e
        blk_err += e > 0
    return stop - start, bit_err, blk_err, pre_err


def run_point(cfg: SweepConfig, ebno_db: float, decoder_kind, ebno_index: int = 0,
              executor: Executor | None = None, workers: int = 1) -> SimPoint:
    """Simulate until ``min_bit_errors`` info-bit errors or ``max_blocks`` blocks."""
    kind = DecoderKind.parse(decoder_kind)
    config = cfg.decoder_config(kind)
    code = build_code(*cfg.code)
    k, n = code.k, code.n
    starts = list(range(0, cfg.max_blocks, cfg.batch_size))

    def args(s):
        return (cfg.code, config, ebno_db, cfg.seed, ebno_index, s,
                min(s + cfg.batch_size, cfg.max_blocks), cfg.all_zero)

    blocks = bit_err = blk_err = pre_err = 0

    def absorb(res):
        nonlocal blocks, bit_err, blk_err, pre_err
        blocks += res[0]
        bit_err += res[1]
        blk_err += res[2]
        pre_err += res[3]
        return bit_err >= cfg.min_bit_errors

    if executor is None:
        for s in starts:
            if absorb(simulate_blocks(*args(s))):
                break
    else:
        # keep a window of batches in flight, consume strictly in order
        pending = []
        it = iter(starts)
        for s in it:
            pending.append(executor.submit(simulate_blocks, *args(s)))
            if len(pending) >= 2 * workers:
                break
        while pending:
            done = absorb(pending.pop(0).result())
            if done:
                for f in pending:
                    f.cancel()
                break
            nxt = next(it, None)
            if nxt is not None:
                pending.append(executor.submit(simulate_blocks, *args(nxt)))

    converged = bit_err >= cfg.min_bit_errors
    if not converged:
        log.info("%s at %.3f dB under-converged: %d bit errors in %d blocks",
                 kind.cli_name, ebno_db, bit_err, blocks)
    return SimPoint(
        decoder=kind.cli_name, code=cfg.code_label, ebno_db=ebno_db, blocks=blocks,
        bit_errors=bit_err, ber=bit_err / (blocks * k * k), block_errors=blk_err,
        bler=blk_err / blocks, pre_fec_ber=pre_err / (blocks * n * n), seed=cfg.seed,
        converged=converged,
    )


def run_sweep(cfg: SweepConfig, on_point: Callable[[SimPoint], None] | None = None
              ) -> list[SimPoint]:
    """All (decoder, Eb/N0) pairs, ordered by decoder then Eb/N0.

    When ``cfg.out`` is set the output file is rewritten after every point,
    so an interrupted sweep leaves a valid partial file behind.
    """
    workers = worker_count(cfg.workers)
    points: list[SimPoint] = []
    executor = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for kind in cfg.decoders:
            for i, ebno in enumerate(cfg.ebno_grid):
                p = run_point(cfg, ebno, kind, i, executor, workers)
                points.append(p)
                log.info("%-8s %6.3f dB  BER %.3e  (%d blocks, %d errors)",
                         p.decoder, p.ebno_db, p.ber, p.blocks, p.bit_errors)
                if cfg.out:
                    emit(points, cfg.out, cfg.fmt)
                if on_point is not None:
                    on_point(p)
            check_monotone([p for p in points if p.decoder == kind.cli_name])
    finally:
        if executor is not None:
            executor.shutdown(cancel_futures=True)
    return points


def check_monotone(points: Sequence[SimPoint]) -> bool:
    """Warn when converged BER rises with Eb/N0."""
    conv = sorted((p for p in points if p.converged), key=lambda p: p.ebno_db)
    ok = True
    for a, b in zip(conv, conv[1:]):
        if b.ber > a.ber:
            log.warning("%s: BER rises from %.3e at %.3f dB to %.3e at %.3f dB",
                        a.decoder, a.ber, a.ebno_db, b.ber, b.ebno_db)
            ok = False
    return ok


# --- persistence --------------------------------------------------------


def format_points(points: Sequence[SimPoint], fmt: str = "csv") -> str:
    if not points:
        raise ValueError("nothing to emit")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for p in points:
            w.writerow([repr(v) if isinstance(v, float) else v for v in p.record().values()])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([p.record() for p in points], indent=1) + "\n"
    if fmt == "gnuplot":
        lines = [f"# post-FEC BER sweep, code ({points[0].code})",
                 "# columns: ebno_db ber bler pre_fec_ber blocks bit_errors",
                 "# one data block per decoder; plot with: set logscale y; "
                 "plot for [i=0:*] 'file' index i using 1:2 with linespoints"]
        decoders = list(dict.fromkeys(p.decoder for p in points))
        for i, d in enumerate(decoders):
            if i:
                lines += ["", ""]
            lines.append(f"# index {i}: {d}")
            for p in sorted((p for p in points if p.decoder == d), key=lambda p: p.ebno_db):
                lines.append(f"{p.ebno_db!r} {p.ber!r} {p.bler!r} {p.pre_fec_ber!r} "
                             f"{p.blocks} {p.bit_errors}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown output format {fmt!r}")


def emit(points: Sequence[SimPoint], path, fmt: str = "csv") -> Path:
    """Atomically (re)write ``path`` with all points."""
    text = format_points(points, fmt)
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
    return path


def _coerce(rec: dict) -> SimPoint:
    kw = {}
    for c in CSV_COLUMNS:
        v = rec[c]
        if c in ("blocks", "bit_errors", "block_errors", "seed"):
            v = int(v)
        elif c in ("ebno_db", "ber", "bler", "pre_fec_ber"):
            v = float(v)
        else:
            v = str(v)
        kw[c] = v
    return SimPoint(**kw)


def load_points(path, fmt: str | None = None) -> list[SimPoint]:
    """Read points written by :func:`emit` in csv or json format."""
    path = Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "csv")
    text = path.read_text()
    if fmt == "json":
        return [_coerce(r) for r in json.loads(text)]
    if fmt == "csv":
        return [_coerce(r) for r in csv.DictReader(io.StringIO(text))]
    raise ValueError(f"cannot load format {fmt!r}")


def wilson_interval(errors: int, trials: int, z: float = 1.959963984540054
                    ) -> tuple[float, float]:
    if trials <= 0:
        return 0.0, 1.0
    p = errors / trials
    den = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / den
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / den
    lo = 0.0 if errors == 0 else max(0.0, centre - half)
    hi = 1.0 if errors == trials else min(1.0, centre + half)
    return lo, hi


def ebno_at_ber(points: Iterable[SimPoint], target: float) -> float | None:
    """Log-linear interpolation of the Eb/N0 where BER first drops to ``target``.

    A crossing onto a zero-error point returns that point's Eb/N0, an upper
    bound on the true crossing.
    """
    pts = sorted(points, key=lambda p: p.ebno_db)
    for a, b in zip(pts, pts[1:]):
        if a.ber >= target >= b.ber and a.ber > 0:
            if b.ber == 0:
                return b.ebno_db
            la, lb = math.log10(a.ber), math.log10(b.ber)
            if la == lb:
                return a.ebno_db
            return a.ebno_db + (math.log10(target) - la) / (lb - la) * (b.ebno_db - a.ebno_db)
    return None
