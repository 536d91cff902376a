"""
Command-line interface.

    fieldwalk walk      --steps 4 --theta pi/2 --phi -pi/2
    fieldwalk decohere  --steps 200 --sigma-pp 0.25 --trials 50 --seed 7
    fieldwalk compare   --steps 4 --against classical
    fieldwalk resources --steps 10 --layout aom

Every command writes CSV (default) or JSON to stdout or ``--output``.
CSV floats carry 12 significant digits and rows are sorted by ascending k.
JSON is ``{"meta": {...resolved arguments...}, "data": [row, ...]}``.
Exit codes: 0 success, 2 usage or validation error, 1 runtime error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from typing import Optional, Sequence, TextIO

from . import __version__
from .analysis import moments, resource_count, tv_distance
from .coinwalk import classical_distribution, coin_from_t1, init_coin, walk_distribution
from .decoherence import NoiseConfig, run_ensemble
from .optics import BeamSplitterParams, photon_distribution, propagate

__all__ = ["main", "cmd_walk", "cmd_decohere", "cmd_compare", "cmd_resources", "parse_angle"]

_PI_RE = re.compile(r"^([+-]?)(\d*\.?\d*)\*?pi(?:/(\d*\.?\d+))?$")


def parse_angle(text: str) -> float:
    """Radians as a float literal, or a multiple of pi such as ``pi/2``, ``-pi/2``, ``2pi/3``."""
    s = text.strip().lower().replace(" ", "")
    m = _PI_RE.match(s)
    if m:
        sign, factor, divisor = m.groups()
        value = math.pi * (float(factor) if factor else 1.0)
        if divisor:
            value /= float(divisor)
        return -value if sign == "-" else value
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an angle: {text!r}") from None


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _emit(out: TextIO, fmt: str, meta: dict, header: list[str], rows: list[list],
          summary: Optional[dict] = None) -> None:
    if fmt == "json":
        doc = {"meta": meta, "data": [dict(zip(header, r)) for r in rows]}
        if summary is not None:
            doc["summary"] = summary
        out.write(json.dumps(doc, indent=2) + "\n")
        return
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) if isinstance(v, float) else v for v in r])
    for key, value in (summary or {}).items():
        buf.write(f"# {key}={_fmt(value) if isinstance(value, float) else value}\n")
    out.write(buf.getvalue())


def _t1(theta: float, phi: float) -> BeamSplitterParams:
    return BeamSplitterParams(theta, phi)


def cmd_walk(steps: int, theta: float = math.pi / 2, phi: float = -math.pi / 2,
             fmt: str = "csv", alpha_squared: float = 1.0, out: TextIO = sys.stdout) -> int:
    if steps < 1:
        raise ValueError(f"--steps must be >= 1, got {steps}")
    if alpha_squared < 0:
        raise ValueError(f"--alpha-squared must be >= 0, got {alpha_squared}")
    dist = photon_distribution(propagate(steps, _t1(theta, phi)))
    rows = [[k, v * alpha_squared] for k, v in dist.as_dict().items()]
    meta = {"command": "walk", "steps": steps, "theta": theta, "phi": phi,
            "alpha_squared": alpha_squared, "version": __version__}
    _emit(out, fmt, meta, ["k", "value"], rows)
    return 0


def cmd_decohere(steps: int, sigma_pp: float = 0.0, sigma_bs: float = 0.0, trials: int = 50,
                 seed: int = 0, mode: str = "fresh", sharing: str = "per-mode",
                 theta: float = math.pi / 2, phi: float = -math.pi / 2, fmt: str = "csv",
                 alpha_squared: float = 1.0, workers: int = 1,
                 out: TextIO = sys.stdout) -> int:
    if steps < 1:
        raise ValueError(f"--steps must be >= 1, got {steps}")
    if alpha_squared < 0:
        raise ValueError(f"--alpha-squared must be >= 0, got {alpha_squared}")
    cfg = NoiseConfig(sigma_pp, sigma_bs, trials, seed, mode, sharing)
    res = run_ensemble(steps, _t1(theta, phi), cfg, workers=workers)
    j = res.mean.j
    rows = [[int(k), float(res.mean.values[k + j]) * alpha_squared,
             float(res.stderr[k + j]) * alpha_squared]
            for k in res.mean.occupied_nodes]
    meta = {"command": "decohere", "steps": steps, "theta": theta, "phi": phi,
            "sigma_pp": cfg.sigma_pp, "sigma_bs": cfg.sigma_bs, "trials": cfg.trials,
            "seed": cfg.master_seed, "mode": cfg.randomness.value,
            "sharing": cfg.phase_sharing.value, "alpha_squared": alpha_squared,
            "version": __version__}
    _emit(out, fmt, meta, ["k", "value", "stderr"], rows)
    return 0


def cmd_compare(steps: int, against: str = "classical", theta: float = math.pi / 2,
                phi: float = -math.pi / 2, fmt: str = "csv", out: TextIO = sys.stdout) -> int:
    if steps < 1:
        raise ValueError(f"--steps must be >= 1, got {steps}")
    t1 = _t1(theta, phi)
    dist = photon_distribution(propagate(steps, t1))
    if against == "classical":
        ref = classical_distribution(steps)
    elif against == "coined":
        ref = walk_distribution(steps, init_coin(*coin_from_t1(t1)))
    else:
        raise ValueError(f"--against must be 'classical' or 'coined', got {against!r}")
    mv, mr = moments(dist), moments(ref)
    rows = [[int(k), dist[int(k)], ref[int(k)]] for k in dist.occupied_nodes]
    summary = {"tv_distance": tv_distance(dist, ref),
               "value_mean": mv.mean, "value_std": mv.std,
               "reference_mean": mr.mean, "reference_std": mr.std}
    meta = {"command": "compare", "steps": steps, "against": against,
            "theta": theta, "phi": phi, "version": __version__}
    _emit(out, fmt, meta, ["k", "value", "reference"], rows, summary)
    return 0


def cmd_resources(steps: int, layout: str = "line", fmt: str = "csv",
                  out: TextIO = sys.stdout) -> int:
    rc = resource_count(steps, layout)
    record = rc.as_dict()
    meta = {"command": "resources", "steps": steps, "layout": rc.layout.value,
            "version": __version__}
    _emit(out, fmt, meta, list(record), [list(record.values())])
    return 0


def _positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fieldwalk",
        description="Quantum walks on a line as classical field interference.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, angles=True):
        sp.add_argument("--steps", type=_positive_int, required=True)
        if angles:
            sp.add_argument("--theta", type=parse_angle, default=math.pi / 2,
                            help="T1 mixing angle in radians (default pi/2)")
            sp.add_argument("--phi", type=parse_angle, default=-math.pi / 2,
                            help="T1 phase in radians (default -pi/2)")
        sp.add_argument("--format", choices=["csv", "json"], default="csv")
        sp.add_argument("-o", "--output", default=None, help="output file (default stdout)")

    sp = sub.add_parser("walk", help="noise-free mean photon-number distribution")
    common(sp)
    sp.add_argument("--alpha-squared", type=float, default=1.0,
                    help="input mean photon number |alpha|^2")

    sp = sub.add_parser("decohere", help="trial-averaged distribution under random phases/splitters")
    common(sp)
    sp.add_argument("--sigma-pp", type=float, default=0.0)
    sp.add_argument("--sigma-bs", type=float, default=0.0)
    sp.add_argument("--trials", type=_positive_int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=["fresh", "fixed"], default="fresh")
    sp.add_argument("--sharing", choices=["per-mode", "per-step"], default="per-mode")
    sp.add_argument("--alpha-squared", type=float, default=1.0)
    sp.add_argument("--workers", type=_positive_int, default=1)

    sp = sub.add_parser("compare", help="compare against the classical or coined walk")
    common(sp)
    sp.add_argument("--against", choices=["classical", "coined"], default="classical")

    sp = sub.add_parser("resources", help="optical element counts for a layout")
    common(sp, angles=False)
    sp.add_argument("--layout", choices=["line", "aom"], default="line")
    return p


def _dispatch(args, out: TextIO) -> int:
    if args.command == "walk":
        return cmd_walk(args.steps, args.theta, args.phi, args.format, args.alpha_squared, out)
    if args.command == "decohere":
        return cmd_decohere(args.steps, args.sigma_pp, args.sigma_bs, args.trials, args.seed,
                            args.mode, args.sharing, args.theta, args.phi, args.format,
                            args.alpha_squared, args.workers, out)
    if args.command == "compare":
        return cmd_compare(args.steps, args.against, args.theta, args.phi, args.format, out)
    return cmd_resources(args.steps, args.layout, args.format, out)


def _join_angle_values(argv: Sequence[str]) -> list[str]:
    # argparse would read "-pi/2" as an option; bind it to its flag instead
    out, it = [], iter(argv)
    for tok in it:
        if tok in ("--theta", "--phi"):
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else argv
    try:
        args = parser.parse_args(_join_angle_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.output is None:
            return _dispatch(args, sys.stdout)
        buf = io.StringIO()
        code = _dispatch(args, buf)
        with open(args.output, "w", newline="") as fh:
            fh.write(buf.getvalue())
        return code
    except ValueError as exc:
        print(f"fieldwalk {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"fieldwalk {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
