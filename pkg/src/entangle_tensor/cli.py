"""Command-line interface ``entangle-tensor``.

Subcommands write their results into ``--out`` (default ``.``):

* ``pullback``  JSON dump of the pullback tensor at one Schmidt parameter
* ``monotones`` CSV ``lambda,kind,n,value`` plus one SVG per kind
* ``estimate``  CSV ``kind,n,lambda,measure,measurements`` plus SVGs
* ``figure``    CSV/SVG bundle for figure 1, 2 or 3

Exit codes: 0 success, 2 domain error, 3 I/O error, 4 numerical or branch
error. On failure nothing is written and one diagnostic line goes to stderr.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Optional, Tuple

import numpy as np

from . import monotones as mono
from .errors import BranchError, DomainError, ResourceError, SingularPointError
from .estimation import (
    MeasureKind,
    measurements_closed,
    measurements_parametric,
)
from .plotting import labelled_curves_svg, order_curves_svg
from .pullback import eta_rank, omega_blocks, schmidt_pullback
from .report import csv_text, fmt, json_text, write_bundle

EXIT_OK, EXIT_DOMAIN, EXIT_IO, EXIT_NUMERIC = 0, 2, 3, 4
FORMATS = ("csv", "json", "svg")
MONOTONE_GRID = (0.0, 1.0, 0.01)
ESTIMATE_GRID = (0.001, 0.999, 0.001)
DEFAULT_ORDERS = (1, 2, 3, 4, 5)
DEFAULT_KINDS = ("linear-entropy", "negativity", "purity", "epsilon", "mu")


@dataclass(frozen=True)
class RunConfig:
    grid: Optional[Tuple[float, float, float]] = None
    orders: Optional[Tuple[int, ...]] = None
    delta: float = 1.0
    output_dir: Path = Path(".")
    formats: Tuple[str, ...] = FORMATS
    endpoint_margin: float = 1e-3

    def validate(self) -> "RunConfig":
        if self.grid is not None:
            start, stop, step = self.grid
            if not (0.0 <= start < stop <= 1.0) or not step > 0:
                raise DomainError(f"grid needs 0 <= start < stop <= 1 and step > 0, got {self.grid}")
        if self.orders is not None and (not self.orders or any(int(n) != n or n < 1 for n in self.orders)):
            raise DomainError(f"orders must be a nonempty list of integers >= 1, got {self.orders}")
        if not self.delta > 0:
            raise DomainError(f"delta must be positive, got {self.delta}")
        if not 0 <= self.endpoint_margin < 0.25:
            raise DomainError(f"endpoint margin must lie in [0, 0.25), got {self.endpoint_margin}")
        bad = set(self.formats) - set(FORMATS)
        if bad:
            raise DomainError(f"unknown formats {sorted(bad)}; choose from {FORMATS}")
        return self

    def orders_or(self, default=DEFAULT_ORDERS) -> Tuple[int, ...]:
        return tuple(self.orders) if self.orders is not None else tuple(default)

    def lambdas(self, default) -> np.ndarray:
        start, stop, step = self.grid or default
        count = int(math.floor((stop - start) / step + 1e-9)) + 1
        return np.round(start + step * np.arange(count), 12)


def parse_grid(text) -> Tuple[float, float, float]:
    if isinstance(text, dict):
        return float(text["start"]), float(text["stop"]), float(text["step"])
    if isinstance(text, (list, tuple)):
        start, stop, step = text
        return float(start), float(stop), float(step)
    try:
        start, stop, step = (float(p) for p in str(text).split(":"))
    except ValueError:
        raise DomainError(f"grid must look like start:stop:step, got {text!r}") from None
    return start, stop, step


def parse_orders(text) -> Tuple[int, ...]:
    if isinstance(text, (list, tuple)):
        items = text
    else:
        items = [p for p in str(text).split(",") if p.strip()]
    try:
        return tuple(int(p) for p in items)
    except ValueError:
        raise DomainError(f"orders must be comma-separated integers, got {text!r}") from None


def parse_formats(text) -> Tuple[str, ...]:
    items = text if isinstance(text, (list, tuple)) else str(text).split(",")
    return tuple(p.strip().lower() for p in items if p.strip())


def load_config(args) -> RunConfig:
    """Merge an optional JSON config file with command-line flags (flags win)."""
    values = {}
    if getattr(args, "config", None):
        try:
            with open(args.config, encoding="utf-8") as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise DomainError(f"invalid config file: {exc}") from None
        for key, value in raw.items():
            key = key.replace("-", "_")
            if key in ("lambda_grid", "grid"):
                values["grid"] = parse_grid(value)
            elif key == "orders":
                values["orders"] = parse_orders(value)
            elif key == "delta":
                values["delta"] = float(value)
            elif key in ("output_dir", "out"):
                values["output_dir"] = Path(value)
            elif key == "formats":
                values["formats"] = parse_formats(value)
            elif key == "endpoint_margin":
                values["endpoint_margin"] = float(value)
            else:
                raise DomainError(f"unknown config key {key!r}")
    if args.grid is not None:
        values["grid"] = parse_grid(args.grid)
    if args.orders is not None:
        values["orders"] = parse_orders(args.orders)
    if args.delta is not None:
        values["delta"] = args.delta
    if args.out is not None:
        values["output_dir"] = Path(args.out)
    if args.formats is not None:
        values["formats"] = parse_formats(args.formats)
    if args.margin is not None:
        values["endpoint_margin"] = args.margin
    return RunConfig(**values).validate()


# -- pullback ---------------------------------------------------------------

def pullback_payload(lam: float) -> dict:
    pb = schmidt_pullback(lam)
    blocks = omega_blocks(pb.omega)
    return {
        "lambda": lam,
        "kappa_re": pb.kappa.real,
        "kappa_im": pb.kappa.imag,
        "eta": pb.eta,
        "omega": pb.omega,
        "eta_eigenvalues": mono.eta_spectrum(pb.eta).eigenvalues,
        "rank": eta_rank(pb.eta),
        "omega_block_a": blocks.block_a,
        "omega_block_b": blocks.block_b,
    }


def cmd_pullback(lam: float, cfg: RunConfig) -> dict:
    lam = float(lam)
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"--lambda must lie in [0, 1], got {lam}")
    return {f"pullback_{fmt(lam)}.json": json_text(pullback_payload(lam))}


# -- monotones --------------------------------------------------------------

MONOTONE_LABELS = {
    "epsilon": "entanglement monotone epsilon_n",
    "mu": "purity monotone mu_n",
    "sym": "symmetric-power invariant S_n",
}


def monotone_rows(lambdas, orders, kinds=("epsilon", "mu", "sym")):
    table = mono.monotone_table(lambdas, orders, kinds)
    return list(table.rows(kinds))


def _series_by_order(rows, kind):
    series = {}
    for lam, k, n, value in rows:
        if k == kind:
            xs, ys = series.setdefault(n, ([], []))
            xs.append(lam)
            ys.append(value)
    return series


def cmd_monotones(cfg: RunConfig, prefix="monotones", kinds=("epsilon", "mu", "sym")) -> dict:
    lambdas = cfg.lambdas(MONOTONE_GRID)
    rows = monotone_rows(lambdas, cfg.orders_or(), kinds)
    files = {}
    if "csv" in cfg.formats:
        files[f"{prefix}.csv"] = csv_text(["lambda", "kind", "n", "value"], rows)
    if "svg" in cfg.formats:
        for kind in kinds:
            files[f"{prefix}_{kind}.svg"] = order_curves_svg(
                _series_by_order(rows, kind), "lambda", MONOTONE_LABELS[kind],
                logy=(kind == "sym"),
            )
    return files


# -- estimate ---------------------------------------------------------------

def expand_kinds(specs, orders):
    kinds = []
    for spec in specs:
        spec = spec.strip()
        if spec in ("epsilon", "mu"):
            kinds.extend(MeasureKind(spec, n) for n in orders)
        else:
            kinds.append(MeasureKind.parse(spec))
    if not kinds:
        raise DomainError("no measures requested")
    return kinds


def branch_grid(cfg: RunConfig) -> np.ndarray:
    lambdas = cfg.lambdas(ESTIMATE_GRID)
    margin = cfg.endpoint_margin
    return lambdas[(lambdas >= max(margin, 1e-12)) & (lambdas <= 0.5 - margin)]


def estimate_curves(cfg: RunConfig, kinds):
    grid = branch_grid(cfg)
    if grid.size == 0:
        raise SingularPointError("no grid points remain inside the canonical branch")
    return [measurements_parametric(kind, cfg.delta, grid) for kind in kinds]


def curve_rows(curves):
    for curve in curves:
        n = "" if curve.kind.n is None else curve.kind.n
        for value, count, lam in curve.points:
            yield curve.kind.tag, n, lam, value, count


ESTIMATE_HEADER = ["kind", "n", "lambda", "measure", "measurements"]


def cmd_estimate(cfg: RunConfig, kinds) -> dict:
    curves = estimate_curves(cfg, kinds)
    files = {}
    if "csv" in cfg.formats:
        files["estimate.csv"] = csv_text(ESTIMATE_HEADER, curve_rows(curves))
    if "svg" in cfg.formats:
        by_tag = {}
        for curve in curves:
            by_tag.setdefault(curve.kind.tag, {})[curve.kind.label] = (curve.measures, curve.measurements)
        for tag, series in by_tag.items():
            files[f"estimate_{tag}.svg"] = labelled_curves_svg(
                series, tag, f"measurements M (delta = {fmt(cfg.delta)})", logy=True)
    return files


# -- figures ----------------------------------------------------------------

def figure1(cfg: RunConfig) -> dict:
    return cmd_monotones(cfg, prefix="figure1", kinds=("epsilon", "mu"))


def fit_sym_scales(lambdas, orders=(1, 2, 3)) -> dict:
    """Ratio of the spectral invariant to each tabulated polynomial over the grid."""
    out = {}
    for n in orders:
        ratios = np.array([mono.sym_invariant(lam, n) / mono.sym_reference_polynomial(n, lam) for lam in lambdas])
        mean = float(np.mean(ratios))
        out[str(n)] = {
            "scale": mean,
            "expected": mono.SYM_SCALE[n],
            "coefficient_of_variation": float(np.std(ratios) / abs(mean)),
        }
    return out


def figure2(cfg: RunConfig) -> dict:
    orders = cfg.orders_or((1, 2, 3, 4))
    lambdas = cfg.lambdas(MONOTONE_GRID)
    files = cmd_monotones(replace(cfg, orders=orders), prefix="figure2", kinds=("sym",))
    if "json" in cfg.formats:
        files["figure2_scale.json"] = json_text({
            "orders_fitted": [1, 2, 3],
            "scale_constants": fit_sym_scales(lambdas),
        })
    return files


def figure3(cfg: RunConfig) -> dict:
    eps = [MeasureKind("epsilon", n) for n in cfg.orders_or()]
    mus = [MeasureKind("mu", n) for n in cfg.orders_or()]
    refs = [MeasureKind("linear-entropy"), MeasureKind("purity")]
    curves = estimate_curves(cfg, eps + mus + refs)
    files = {}
    if "csv" in cfg.formats:
        files["figure3.csv"] = csv_text(ESTIMATE_HEADER, curve_rows(curves))
    if "svg" in cfg.formats:
        by_kind = {c.kind: c for c in curves}
        le = by_kind[refs[0]]
        pur = by_kind[refs[1]]
        pur_closed = [measurements_closed(refs[1], p, cfg.delta) for p in pur.measures]
        ylabel = f"measurements M (delta = {fmt(cfg.delta)})"
        files["figure3_epsilon.svg"] = order_curves_svg(
            {k.n: (by_kind[k].measures, by_kind[k].measurements) for k in eps},
            "epsilon_n", ylabel, logy=True,
            references=[("linear entropy", le.measures, le.measurements)],
        )
        files["figure3_mu.svg"] = order_curves_svg(
            {k.n: (by_kind[k].measures, by_kind[k].measurements) for k in mus},
            "mu_n", ylabel, logy=True,
            references=[("purity", pur.measures, pur_closed)],
        )
    return files


FIGURES = {1: figure1, 2: figure2, 3: figure3}


def cmd_figure(which: int, cfg: RunConfig) -> dict:
    if which not in FIGURES:
        raise DomainError(f"figure must be 1, 2 or 3, got {which}")
    return FIGURES[which](cfg)


# -- entry point ------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid", help="lambda grid as start:stop:step")
    common.add_argument("--orders", help="comma-separated tensor orders, e.g. 1,2,3")
    common.add_argument("--delta", type=float, help="relative error delta (default 1)")
    common.add_argument("--out", help="output directory (default .)")
    common.add_argument("--formats", help="subset of csv,json,svg")
    common.add_argument("--margin", type=float, help="endpoint margin for estimation grids (default 1e-3)")
    common.add_argument("--config", help="JSON file with run configuration; flags override it")

    parser = argparse.ArgumentParser(
        prog="entangle-tensor",
        description="Pullback tensors, tensor-power monotones and measurement-count curves "
                    "for two-qubit Schmidt states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("pullback", parents=[common], help="dump kappa, eta, omega at one lambda")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    sub.add_parser("monotones", parents=[common], help="tabulate epsilon_n, mu_n and S_n")
    p = sub.add_parser("estimate", parents=[common], help="measurement-count curves")
    p.add_argument("--kinds", default=",".join(DEFAULT_KINDS),
                   help="comma-separated measures: linear-entropy, negativity, purity, epsilon[:n], mu[:n]")
    p = sub.add_parser("figure", parents=[common], help="reproduce figure 1, 2 or 3")
    p.add_argument("which", type=int, choices=sorted(FIGURES))
    return parser


def run(args) -> Tuple[RunConfig, dict]:
    cfg = load_config(args)
    if args.command == "pullback":
        return cfg, cmd_pullback(args.lam, cfg)
    if args.command == "monotones":
        return cfg, cmd_monotones(cfg)
    if args.command == "estimate":
        return cfg, cmd_estimate(cfg, expand_kinds(args.kinds.split(","), cfg.orders_or()))
    return cfg, cmd_figure(args.which, cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg, files = run(args)
    except DomainError as exc:
        print(f"entangle-tensor: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (SingularPointError, BranchError, ResourceError, ArithmeticError) as exc:
        print(f"entangle-tensor: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"entangle-tensor: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        out = cfg.output_dir
        if out.exists() and not (out.is_dir() and os.access(out, os.W_OK)):
            raise PermissionError(f"output directory {str(out)!r} is not writable")
        paths = write_bundle(out, files)
    except OSError as exc:
        print(f"entangle-tensor: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    for path in paths:
        print(path)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
