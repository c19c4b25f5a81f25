"""``pc-sabm`` command line: BER sweeps and plots."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .decode import PAPER_WEIGHTS, DecoderKind
from .sim import FORMATS, SweepConfig, format_points, load_points, parse_grid, run_sweep


def _code(text):
    try:
        nu, t, e = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected nu,t,e, got {text!r}")
    return nu, t, e


def _floats(text):
    return tuple(float(x) for x in text.split(",") if x.strip())


def _grid(text):
    try:
        return parse_grid(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _decoders(text):
    try:
        return tuple(DecoderKind.parse(x) for x in text.split(",") if x.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pc-sabm", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="simulate BER vs Eb/N0")
    sw.add_argument("--code", type=_code, default=(7, 2, 1), help="nu,t,e (default 7,2,1)")
    sw.add_argument("--decoders", type=_decoders, default=tuple(DecoderKind),
                    help="comma list of ibdd,ideal,sabm,sabm-sr")
    sw.add_argument("--ebno", type=_grid, default=parse_grid("2.5:5.0:0.25"),
                    help="start:stop:step in dB (stop inclusive) or a comma list")
    sw.add_argument("--iterations", type=int, default=10)
    sw.add_argument("--marking-iterations", type=int, default=5)
    sw.add_argument("--threshold", type=float, default=5.0)
    sw.add_argument("--weights", type=_floats, default=None,
                    help=f"one per marking iteration (default {','.join(map(str, PAPER_WEIGHTS))})")
    sw.add_argument("--max-blocks", type=int, default=100_000)
    sw.add_argument("--min-bit-errors", type=int, default=100)
    sw.add_argument("--seed", type=int, default=42)
    sw.add_argument("--batch-size", type=int, default=16)
    sw.add_argument("--workers", type=int, default=None,
                    help="worker processes (capped by PC_SABM_THREADS)")
    sw.add_argument("--all-zero", action="store_true", help="transmit the all-zero block")
    sw.add_argument("--out", type=Path, default=None)
    sw.add_argument("--format", choices=FORMATS, default="csv")
    sw.add_argument("--plot", type=Path, default=None, help="also write a BER figure here")

    pl = sub.add_parser("plot", help="render a BER figure from a csv/json result file")
    pl.add_argument("results", type=Path)
    pl.add_argument("-o", "--out", type=Path, required=True)
    pl.add_argument("--title", default=None)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.command == "sweep":
            return _sweep(args, parser)
        return _plot(args)
    except OSError as exc:
        print(f"pc-sabm: {exc}", file=sys.stderr)
        return 1


def _sweep(args, parser) -> int:
    weights = args.weights
    if weights is None:
        if args.marking_iterations > len(PAPER_WEIGHTS):
            parser.error("--weights is required with more than "
                         f"{len(PAPER_WEIGHTS)} marking iterations")
        weights = PAPER_WEIGHTS[: args.marking_iterations]
    try:
        cfg = SweepConfig(
            code=args.code, decoders=args.decoders, ebno_grid=args.ebno,
            max_blocks=args.max_blocks, min_bit_errors=args.min_bit_errors, seed=args.seed,
            total_iterations=args.iterations, marking_iterations=args.marking_iterations,
            threshold=args.threshold, weights=weights, all_zero=args.all_zero,
            batch_size=args.batch_size, workers=args.workers,
            out=str(args.out) if args.out else None, fmt=args.format,
        )
    except ValueError as exc:
        parser.error(str(exc))
    points = run_sweep(cfg)
    if args.out is None:
        sys.stdout.write(format_points(points, args.format))
    if args.plot is not None:
        from .plotting import ber_figure

        ber_figure(points, args.plot)
    return 0


def _plot(args) -> int:
    from .plotting import ber_figure

    ber_figure(load_points(args.results), args.out, title=args.title)
    return 0


if __name__ == "__main__":
    sys.exit(main())
