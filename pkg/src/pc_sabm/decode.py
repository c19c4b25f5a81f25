"""Iterative hard-decision decoders for product codes.

Four decoders share one row/column schedule:

* ``ibdd``    plain iterative bounded-distance decoding,
* ``ideal``   iBDD with a genie that rejects every miscorrection,
* ``sabm``    soft-aided bit marking, HRBs marked once from the channel LLRs,
* ``sabm_sr`` SABM re-marked every half-iteration from scaled reliabilities
  ``phi = w_k * u + llr`` where ``u`` is the quantized BDD output.

Blocks are indexed ``[row, column]``; column stages run on the transpose.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bch import BchCode, apply_flips
from .channel import hard_decision
from .product import DimensionMismatch

PAPER_WEIGHTS = (3.42, 3.87, 4.08, 4.27, 4.49)


class DecoderKind(str, enum.Enum):
    IBDD = "ibdd"
    IDEAL = "ideal"
    SABM = "sabm"
    SABM_SR = "sabm_sr"

    @classmethod
    def parse(cls, name) -> "DecoderKind":
        if isinstance(name, cls):
            return name
        return cls(str(name).strip().lower().replace("-", "_"))

    @property
    def cli_name(self) -> str:
        return self.value.replace("_", "-")


@dataclass(frozen=True)
class DecoderConfig:
    total_iterations: int = 10
    marking_iterations: int = 5
    threshold: float = 5.0
    weights: tuple[float, ...] = PAPER_WEIGHTS
    decoder_kind: DecoderKind = DecoderKind.IBDD
    use_locks: bool = True

    def __post_init__(self):
        object.__setattr__(self, "decoder_kind", DecoderKind.parse(self.decoder_kind))
        object.__setattr__(self, "weights", tuple(float(w) for w in self.weights))
        if not 0 <= self.marking_iterations <= self.total_iterations:
            raise ValueError("need 0 <= marking_iterations <= total_iterations")
        if len(self.weights) != self.marking_iterations:
            raise ValueError(
                f"expected {self.marking_iterations} weights, got {len(self.weights)}"
            )
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be non-negative")
        if not self.threshold > 0:
            raise ValueError("threshold must be positive")


# --- marking and scaled reliabilities -----------------------------------


def mark(rel, threshold: float) -> np.ndarray:
    """Highly reliable bits: |rel| >= threshold."""
    if not threshold > 0:
        raise ValueError("threshold must be positive")
    return np.abs(np.asarray(rel)) >= threshold


def scaled_reliabilities(u, llr, w: float) -> np.ndarray:
    u = np.asarray(u)
    llr = np.asarray(llr)
    if u.shape != llr.shape:
        raise DimensionMismatch(f"u {u.shape} and llr {llr.shape} differ")
    return w * u + llr


def quantize_bdd_output(stage_results, block) -> np.ndarray:
    """u = 2b - 1 on successfully decoded lines, 0 on failed lines.

    ``stage_results`` holds one entry per line: a bool, a
    :class:`~pc_sabm.bch.BddOutcome` or a :class:`ComponentDecodeReport`.
    """
    block = np.asarray(block)
    ok = np.array([_line_ok(r) for r in stage_results], dtype=bool)
    if ok.shape != (block.shape[0],):
        raise DimensionMismatch("need exactly one stage result per line")
    u = 2 * block.astype(np.int8) - 1
    u[~ok] = 0
    return u


def _line_ok(result) -> bool:
    if isinstance(result, ComponentDecodeReport):
        return result.succeeded
    if hasattr(result, "corrected"):
        return result.corrected
    return bool(result)


# --- single component word ----------------------------------------------


class ComponentStatus(enum.Enum):
    SUCCESS = "success"
    REATTEMPT_SUCCESS = "reattempt_success"
    REATTEMPT_FAILED = "reattempt_failed"


@dataclass
class ComponentDecodeReport:
    output: np.ndarray
    status: ComponentStatus
    attempts: int
    miscorrection_detected: bool = False
    flipped_positions: tuple[int, ...] = field(default=())

    @property
    def succeeded(self) -> bool:
        return self.status is not ComponentStatus.REATTEMPT_FAILED


def least_reliable(rel_line, count: int) -> np.ndarray:
    """Indices of the ``count`` smallest |rel|, ties to the lowest index."""
    return np.argsort(np.abs(np.asarray(rel_line)), kind="stable")[:count]


def miscorrection_flip_count(code: BchCode, n_flipped: int) -> int:
    return max(1, code.d_min - code.t - n_flipped)


def sabm_component_decode(word, rel_line, hrb_line, locked_line, code: BchCode
                          ) -> ComponentDecodeReport:
    """BDD with HRB/lock miscorrection screening and one bit-flipped retry."""
    word = np.asarray(word, dtype=np.uint8)
    protected = np.asarray(hrb_line, dtype=bool) | np.asarray(locked_line, dtype=bool)
    if not (len(word) == len(rel_line) == len(protected) == code.n):
        raise DimensionMismatch(f"all lines must have length {code.n}")

    first = code.bdd_decode(word)
    if first.corrected:
        if not protected[list(first.flipped_positions)].any():
            return ComponentDecodeReport(first.codeword, ComponentStatus.SUCCESS, 1,
                                         flipped_positions=first.flipped_positions)
        detected = True
        n_flip = miscorrection_flip_count(code, len(first.flipped_positions))
    else:
        detected = False
        n_flip = 1

    retry = word.copy()
    retry[least_reliable(rel_line, n_flip)] ^= 1
    second = code.bdd_decode(retry)
    if second.corrected:
        changed = np.flatnonzero(second.codeword != word)
        if not protected[changed].any():
            return ComponentDecodeReport(second.codeword, ComponentStatus.REATTEMPT_SUCCESS,
                                         2, detected, tuple(int(c) for c in changed))
    return ComponentDecodeReport(word.copy(), ComponentStatus.REATTEMPT_FAILED, 2, detected)


# --- vectorized stages over all lines of a block ------------------------


def bdd_stage(code: BchCode, words: np.ndarray, tx: np.ndarray | None = None
              ) -> tuple[np.ndarray, np.ndarray]:
    """Plain BDD on every row; with ``tx`` given, miscorrections count as failures."""
    ok, flips = code.decode_lines(words)
    out = apply_flips(words, np.where(ok[:, None], flips, -1))
    if tx is not None:
        bad = ok & (out != tx).any(axis=1)
        out[bad] = words[bad]
        ok = ok & ~bad
    return out, ok


def sabm_stage(code: BchCode, words: np.ndarray, rel: np.ndarray, protected: np.ndarray
               ) -> tuple[np.ndarray, np.ndarray]:
    """:func:`sabm_component_decode` applied to every row at once.

    Returns the output words and the per-line success flags.
    """
    n_lines = len(words)
    ok, flips = code.decode_lines(words)
    valid = flips >= 0
    lines = np.arange(n_lines)[:, None]
    hit = (protected[lines, np.where(valid, flips, 0)] & valid).any(axis=1)
    accept = ok & ~hit

    out = apply_flips(words, np.where(accept[:, None], flips, -1))
    success = accept.copy()
    redo = np.flatnonzero(~accept)
    if len(redo) == 0:
        return out, success

    n_flip = np.where(ok[redo], np.maximum(1, code.d_min - code.t - valid[redo].sum(axis=1)), 1)
    order = np.argsort(np.abs(rel[redo]), axis=1, kind="stable")[:, : n_flip.max()]
    order = np.where(np.arange(order.shape[1]) < n_flip[:, None], order, -1)
    retry = apply_flips(words[redo], order)

    ok2, flips2 = code.decode_lines(retry)
    cand = apply_flips(retry, np.where(ok2[:, None], flips2, -1))
    changed = cand != words[redo]
    ok2 &= ~(changed & protected[redo]).any(axis=1)
    out[redo[ok2]] = cand[ok2]
    success[redo[ok2]] = True
    return out, success


# --- block decoders -----------------------------------------------------

TraceHook = Callable[[dict], None]


def _decode(rel, code: BchCode, config: DecoderConfig, tx=None,
            trace: TraceHook | None = None) -> np.ndarray:
    rel = np.asarray(rel, dtype=np.float64)
    n = code.n
    if rel.shape != (n, n):
        raise DimensionMismatch(f"reliabilities must be {n}x{n}, got {rel.shape}")
    kind = config.decoder_kind
    marking = config.marking_iterations if kind in (DecoderKind.SABM, DecoderKind.SABM_SR) else 0
    thr = config.threshold
    ideal = kind is DecoderKind.IDEAL
    if ideal and tx is None:
        raise ValueError("the ideal decoder needs the transmitted block")

    bits = hard_decision(rel)
    channel_hrb = mark(rel, thr)
    phi = rel
    prev_ok = None  # success flags of the most recent orthogonal stage

    for it in range(config.total_iterations):
        before = bits
        if it < marking:
            w = config.weights[it] if kind is DecoderKind.SABM_SR else 0.0
            all_ok = True
            for stage in ("row", "col"):
                view_bits = bits if stage == "row" else bits.T
                if kind is DecoderKind.SABM_SR:
                    src = phi if stage == "row" else phi.T
                    hrb = mark(src, thr)
                else:
                    src = rel if stage == "row" else rel.T
                    hrb = channel_hrb if stage == "row" else channel_hrb.T
                protected = hrb
                if config.use_locks and prev_ok is not None:
                    protected = hrb | prev_ok[None, :]
                new, ok = sabm_stage(code, view_bits, src, protected)
                prev_ok = ok
                all_ok = all_ok and bool(ok.all())
                if kind is DecoderKind.SABM_SR:
                    u = np.where(ok[:, None], 2.0 * new - 1.0, 0.0)
                    phi_view = w * u + (rel if stage == "row" else rel.T)
                    phi = phi_view if stage == "row" else phi_view.T
                bits = new if stage == "row" else new.T
                if trace is not None:
                    trace({"iteration": it, "stage": stage, "hrb": hrb if stage == "row" else hrb.T,
                           "success": ok, "bits": bits.copy(),
                           "phi": phi.copy() if kind is DecoderKind.SABM_SR else None})
        else:
            bits, row_ok = bdd_stage(code, bits, tx if ideal else None)
            if trace is not None:
                trace({"iteration": it, "stage": "row", "success": row_ok, "bits": bits.copy()})
            cols, col_ok = bdd_stage(code, bits.T, tx.T if ideal else None)
            bits = cols.T
            if trace is not None:
                trace({"iteration": it, "stage": "col", "success": col_ok, "bits": bits.copy()})
            all_ok = bool(row_ok.all() and col_ok.all())
        if all_ok and np.array_equal(before, bits):
            # every line is a codeword: the remaining stages cannot change anything
            break
    return np.ascontiguousarray(bits)


def ibdd_decode(rel, code: BchCode, config: DecoderConfig | None = None, trace=None):
    config = config or DecoderConfig()
    return _decode(rel, code, _as_kind(config, DecoderKind.IBDD), trace=trace)


def ideal_ibdd_decode(rel, tx, code: BchCode, config: DecoderConfig | None = None, trace=None):
    config = config or DecoderConfig()
    return _decode(rel, code, _as_kind(config, DecoderKind.IDEAL), tx=np.asarray(tx),
                   trace=trace)


def sabm_decode(rel, code: BchCode, config: DecoderConfig | None = None, trace=None):
    config = config or DecoderConfig(decoder_kind=DecoderKind.SABM)
    return _decode(rel, code, _as_kind(config, DecoderKind.SABM), trace=trace)


def sabm_sr_decode(rel, code: BchCode, config: DecoderConfig | None = None, trace=None):
    config = config or DecoderConfig(decoder_kind=DecoderKind.SABM_SR)
    return _decode(rel, code, _as_kind(config, DecoderKind.SABM_SR), trace=trace)


def decode(rel, code: BchCode, config: DecoderConfig, tx=None, trace=None) -> np.ndarray:
    """Dispatch on ``config.decoder_kind``."""
    return _decode(rel, code, config, tx=tx, trace=trace)


def _as_kind(config: DecoderConfig, kind: DecoderKind) -> DecoderConfig:
    if config.decoder_kind is kind:
        return config
    return DecoderConfig(config.total_iterations, config.marking_iterations, config.threshold,
                         config.weights, kind, config.use_locks)
