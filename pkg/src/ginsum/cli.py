"""Command-line front end.

Subcommands: classify, optimize, constraints, sweep, verify.  JSON is the
canonical machine format (sorted keys, so parse/re-serialize round-trips
byte-identically); sweeps also emit CSV and an optional SVG heatmap of the
maximum sum rate with regime boundaries overlaid.

Exit codes: 0 success, 1 property failure (verify) or I/O failure, 2 usage
or validation error.  All output is deterministic given the flags; timing
goes to stderr only.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import verifier
from .model import GinsumError, MessageId, PowerSplit, VAR_ORDER, validate_params, validate_split
from .optimizer import maximize_sum_rate
from .rates import region_constraints, sum_rate_bounds
from .region_lp import max_sum_rate_lp
from .regimes import regime_report

CONSTRAINT_ORDER_NOTE = (
    "Rx1 subsets by bitmask 1..15 over (U1,V1,V2,W2), then Rx2 over "
    "(U2,V1,V2,W1); bit k selects the k-th message"
)


def _fmt(x: float) -> str:
    """12 significant digits, C locale."""
    return format(x, ".12g")


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _message_names(messages) -> list[str]:
    return [m.value for m in VAR_ORDER if m in messages]


def _split_dict(split: PowerSplit) -> dict[str, float]:
    return dict(zip(("a1", "b1", "g1", "a2", "b2", "g2"), split.as_tuple()))


def _write_file(path: str, data: str) -> None:
    """Write atomically; a failed write leaves no partial file behind."""
    tmp = path + ".tmp"
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except OSError:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _emit(data: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(data)
    else:
        _write_file(out, data)


def _parse_params(args) -> "ChannelParams":
    return validate_params(args.h1, args.h2, args.p1, args.p2)


def _parse_messages(text: str) -> frozenset[MessageId]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    try:
        return frozenset(MessageId(n.upper()) for n in names)
    except ValueError:
        valid = ",".join(m.value for m in VAR_ORDER)
        raise GinsumError(f"unknown message in {text!r}; valid: {valid}")


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def cmd_classify(args) -> int:
    params = _parse_params(args)
    report = regime_report(params)
    doc = {
        "params": {"h1": params.h1, "h2": params.h2, "p1": params.p1, "p2": params.p2},
        "regime": report.regime.value,
        "flags": report.flags.as_dict(),
        "sufficient_messages": _message_names(report.sufficient_messages),
        "sum_capacity": report.sum_capacity,
        "certificate_labels": list(report.certificate_labels),
        "notes": list(report.notes),
    }
    _emit(_json_dumps(doc), args.out)
    return 0


# ---------------------------------------------------------------------------
# optimize
# ---------------------------------------------------------------------------


def cmd_optimize(args) -> int:
    params = _parse_params(args)
    restrict = _parse_messages(args.restrict) if args.restrict else None
    result = maximize_sum_rate(
        params,
        restrict=restrict,
        grid_step=args.grid_step,
        refine_iters=args.refine_iters,
        workers=args.workers,
    )
    bounds = sum_rate_bounds(params, result.best_split)
    lp_value, _ = max_sum_rate_lp(region_constraints(params, result.best_split))
    doc = {
        "params": {"h1": params.h1, "h2": params.h2, "p1": params.p1, "p2": params.p2},
        "restrict": None if restrict is None else _message_names(restrict),
        "best_split": _split_dict(result.best_split),
        "best_value": result.best_value,
        "active_messages": _message_names(result.active_messages),
        "evaluations": result.evaluations,
        "bounds": {
            "t1": bounds.t1,
            "t2": bounds.t2,
            "t3": bounds.t3,
            "t4": bounds.t4,
            "min": bounds.min_bound,
        },
        "lp_value_at_best_split": lp_value,
    }
    _emit(_json_dumps(doc), args.out)
    return 0


# ---------------------------------------------------------------------------
# constraints
# ---------------------------------------------------------------------------


def cmd_constraints(args) -> int:
    params = _parse_params(args)
    try:
        fractions = [float(t) for t in args.split.split(",")]
    except ValueError:
        raise GinsumError(f"--split must be numeric, got {args.split!r}")
    if len(fractions) != 6:
        raise GinsumError("--split needs six comma-separated fractions a1,b1,g1,a2,b2,g2")
    split = validate_split(*fractions)
    constraints = region_constraints(params, split)
    bounds = sum_rate_bounds(params, split)
    lp_value, _ = max_sum_rate_lp(constraints)
    if args.format == "json":
        doc = {
            "params": {"h1": params.h1, "h2": params.h2, "p1": params.p1, "p2": params.p2},
            "split": _split_dict(split),
            "ordering": CONSTRAINT_ORDER_NOTE,
            "constraints": [
                {
                    "receiver": c.receiver,
                    "subset": _message_names(c.subset),
                    "rhs": c.rhs,
                }
                for c in constraints
            ],
            "bounds": {
                "t1": bounds.t1,
                "t2": bounds.t2,
                "t3": bounds.t3,
                "t4": bounds.t4,
                "min": bounds.min_bound,
            },
            "lp_value": lp_value,
        }
        _emit(_json_dumps(doc), args.out)
    else:
        lines = [f"# constraint order: {CONSTRAINT_ORDER_NOTE}", "receiver,subset,rhs"]
        for c in constraints:
            lines.append(f"{c.receiver},{'|'.join(_message_names(c.subset))},{_fmt(c.rhs)}")
        for name, v in (
            ("t1", bounds.t1),
            ("t2", bounds.t2),
            ("t3", bounds.t3),
            ("t4", bounds.t4),
            ("min_bound", bounds.min_bound),
            ("lp_value", lp_value),
        ):
            lines.append(f"# {name} = {_fmt(v)}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    """Grid over (h1, h2) at fixed powers."""

    h1_min: float
    h1_max: float
    h1_steps: int
    h2_min: float
    h2_max: float
    h2_steps: int
    p1: float
    p2: float

    def __post_init__(self) -> None:
        for lo, hi, steps, name in (
            (self.h1_min, self.h1_max, self.h1_steps, "h1"),
            (self.h2_min, self.h2_max, self.h2_steps, "h2"),
        ):
            if steps < 2:
                raise GinsumError(f"{name} range needs steps >= 2, got {steps}")
            if not lo < hi:
                raise GinsumError(f"{name} range needs min < max, got {lo}:{hi}")
            if lo < 0.0:
                raise GinsumError(f"{name} range must be nonnegative, got min {lo}")

    def axis(self, which: int) -> list[float]:
        lo, hi, steps = (
            (self.h1_min, self.h1_max, self.h1_steps)
            if which == 1
            else (self.h2_min, self.h2_max, self.h2_steps)
        )
        return [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]


def _parse_range(text: str, name: str) -> tuple[float, float, int]:
    parts = text.split(":")
    if len(parts) != 3:
        raise GinsumError(f"--{name} must be MIN:MAX:STEPS, got {text!r}")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise GinsumError(f"--{name} must be MIN:MAX:STEPS with numeric fields, got {text!r}")


def _sweep_points(spec: SweepSpec, grid_step: float, workers: int) -> list[dict]:
    points = []
    for h1 in spec.axis(1):
        for h2 in spec.axis(2):
            params = validate_params(h1, h2, spec.p1, spec.p2)
            report = regime_report(params)
            result = maximize_sum_rate(params, grid_step=grid_step, workers=workers)
            flags = report.flags.as_dict()
            points.append(
                {
                    "h1": h1,
                    "h2": h2,
                    "regime": report.regime.value,
                    "max_sum_rate": result.best_value,
                    "active_messages": _message_names(result.active_messages),
                    "subregions": [k for k, v in flags.items() if v],
                    "capacity_known": report.sum_capacity is not None,
                }
            )
    return points


def _sweep_csv(points: list[dict]) -> str:
    lines = ["h1,h2,regime,max_sum_rate,active_messages,subregions,capacity_known"]
    for p in points:
        lines.append(
            ",".join(
                (
                    _fmt(p["h1"]),
                    _fmt(p["h2"]),
                    p["regime"],
                    _fmt(p["max_sum_rate"]),
                    "|".join(p["active_messages"]),
                    "|".join(p["subregions"]),
                    "true" if p["capacity_known"] else "false",
                )
            )
        )
    return "\n".join(lines) + "\n"


_RAMP_ANCHORS = ((0, 0, 0), (40, 60, 134), (37, 130, 142), (109, 205, 89), (250, 231, 85))


def _ramp_color(t: float) -> str:
    """Fixed 256-step color ramp from black through blue-green to yellow."""
    idx = min(255, max(0, int(t * 255)))
    x = idx / 255 * (len(_RAMP_ANCHORS) - 1)
    k = min(len(_RAMP_ANCHORS) - 2, int(x))
    f = x - k
    r, g, b = (
        round(_RAMP_ANCHORS[k][c] + f * (_RAMP_ANCHORS[k + 1][c] - _RAMP_ANCHORS[k][c]))
        for c in range(3)
    )
    return f"#{r:02x}{g:02x}{b:02x}"


def _sweep_svg(spec: SweepSpec, points: list[dict]) -> str:
    n1, n2 = spec.h1_steps, spec.h2_steps
    cell = max(6, 480 // max(n1, n2))
    margin_l, margin_b, margin_t, margin_r = 60, 44, 20, 150
    width = margin_l + n1 * cell + margin_r
    height = margin_t + n2 * cell + margin_b
    values = [p["max_sum_rate"] for p in points]
    vmin, vmax = min(values), max(values)
    spread = vmax - vmin
    grid = [points[i * n2 + j] for i in range(n1) for j in range(n2)]

    def cell_xy(i: int, j: int) -> tuple[float, float]:
        # h1 increases rightward, h2 upward
        return margin_l + i * cell, margin_t + (n2 - 1 - j) * cell

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    for i in range(n1):
        for j in range(n2):
            p = grid[i * n2 + j]
            t = 0.5 if spread <= 0 else (p["max_sum_rate"] - vmin) / spread
            x, y = cell_xy(i, j)
            parts.append(
                f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" '
                f'fill="{_ramp_color(t)}"/>'
            )
    # Regime boundary overlay: white edges between cells with different labels.
    for i in range(n1):
        for j in range(n2):
            here = grid[i * n2 + j]["regime"]
            x, y = cell_xy(i, j)
            if i + 1 < n1 and grid[(i + 1) * n2 + j]["regime"] != here:
                parts.append(
                    f'<line x1="{x + cell}" y1="{y}" x2="{x + cell}" y2="{y + cell}" '
                    'stroke="white" stroke-width="2"/>'
                )
            if j + 1 < n2 and grid[i * n2 + j + 1]["regime"] != here:
                parts.append(
                    f'<line x1="{x}" y1="{y}" x2="{x + cell}" y2="{y}" '
                    'stroke="white" stroke-width="2"/>'
                )
    # Legend: the 256-step ramp with min/max annotations.
    lx = margin_l + n1 * cell + 24
    lh = n2 * cell
    for s in range(256):
        y = margin_t + lh - (s + 1) * lh / 256
        parts.append(
            f'<rect x="{lx}" y="{y:.2f}" width="16" height="{lh / 256 + 0.5:.2f}" '
            f'fill="{_ramp_color(s / 255)}"/>'
        )
    parts.append(
        f'<text x="{lx + 22}" y="{margin_t + 10}" font-size="12" '
        f'font-family="monospace">max {_fmt(vmax)}</text>'
    )
    parts.append(
        f'<text x="{lx + 22}" y="{margin_t + lh}" font-size="12" '
        f'font-family="monospace">min {_fmt(vmin)}</text>'
    )
    parts.append(
        f'<text x="{margin_l}" y="{height - 16}" font-size="12" font-family="monospace">'
        f"h1 {_fmt(spec.h1_min)}..{_fmt(spec.h1_max)} / h2 {_fmt(spec.h2_min)}.."
        f"{_fmt(spec.h2_max)} (upward), max sum rate</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def cmd_sweep(args) -> int:
    h1_lo, h1_hi, h1_steps = _parse_range(args.h1_range, "h1-range")
    h2_lo, h2_hi, h2_steps = _parse_range(args.h2_range, "h2-range")
    spec = SweepSpec(h1_lo, h1_hi, h1_steps, h2_lo, h2_hi, h2_steps, args.p1, args.p2)
    validate_params(h1_lo, h2_lo, args.p1, args.p2)
    points = _sweep_points(spec, args.grid_step, args.workers)
    if args.format == "csv":
        _emit(_sweep_csv(points), args.out)
    else:
        doc = {
            "spec": {
                "h1_range": [spec.h1_min, spec.h1_max, spec.h1_steps],
                "h2_range": [spec.h2_min, spec.h2_max, spec.h2_steps],
                "p1": spec.p1,
                "p2": spec.p2,
            },
            "points": points,
        }
        _emit(_json_dumps(doc), args.out)
    if args.svg:
        _write_file(args.svg, _sweep_svg(spec, points))
    return 0


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def cmd_verify(args) -> int:
    reports = verifier.run_suite(args.suite, args.trials, args.seed, workers=args.workers)
    doc = {
        "suite": args.suite,
        "trials": args.trials,
        "seed": args.seed,
        "reports": [verifier.report_to_dict(r) for r in reports],
        "failures_total": sum(r.failures for r in reports),
    }
    _emit(_json_dumps(doc), args.out)
    for r in reports:
        print(
            f"{r.property_id}: trials={r.trials} failures={r.failures} "
            f"elapsed={r.elapsed:.2f}s",
            file=sys.stderr,
        )
    return 0 if doc["failures_total"] == 0 else 1


# ---------------------------------------------------------------------------
# parser / entry
# ---------------------------------------------------------------------------


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--h1", type=float, required=True, help="cross gain Tx1->Rx2")
    p.add_argument("--h2", type=float, required=True, help="cross gain Tx2->Rx1")
    p.add_argument("--p1", type=float, required=True, help="power constraint at Tx1")
    p.add_argument("--p2", type=float, required=True, help="power constraint at Tx2")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ginsum",
        description="Sum rates, regimes and capacity certificates for the "
        "2x2 Gaussian interference network",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="regime report for one instance")
    _add_params(p)
    p.add_argument("--out", default=None, help="write JSON here instead of stdout")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("optimize", help="maximize the achievable sum rate")
    _add_params(p)
    p.add_argument("--restrict", default=None, help="comma-separated messages, e.g. U1,U2")
    p.add_argument("--grid-step", type=float, default=0.05, dest="grid_step")
    p.add_argument("--refine-iters", type=int, default=200, dest="refine_iters")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("constraints", help="the 30 region constraints at a split")
    _add_params(p)
    p.add_argument("--split", required=True, help="a1,b1,g1,a2,b2,g2")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_constraints)

    p = sub.add_parser("sweep", help="grid sweep over (h1, h2)")
    p.add_argument("--h1-range", required=True, dest="h1_range", help="MIN:MAX:STEPS")
    p.add_argument("--h2-range", required=True, dest="h2_range", help="MIN:MAX:STEPS")
    p.add_argument("--p1", type=float, required=True)
    p.add_argument("--p2", type=float, required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--grid-step", type=float, default=0.05, dest="grid_step")
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.add_argument("--svg", default=None, help="also write an SVG heatmap here")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the randomized property suites")
    p.add_argument("--suite", choices=sorted(verifier.SUITES), default="all")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=os.cpu_count() or 1)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; normalize other codes
        return 2 if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except GinsumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
