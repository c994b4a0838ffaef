"""``spinlab`` command-line front end.

Every subcommand reads a JSON config holding a ``model`` block, exactly one
command block and an optional ``output`` block::

    {
      "model": {"omega": 1, "delta": 0.5, "omega_t": 0.2, "delta_t": 0.05,
                "j_chain": 1, "j_couple": 3, "spin": 10},
      "spectrum": {"spins": [5, 10]},
      "output": {"path": "out", "format": "csv"}
    }

Exit codes: 0 success, 1 bad config, 2 numerical failure, 3 dimension guard.
"""

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from spinlab import diagram, landscape, perturbative, spectrum
from spinlab.errors import (
    DimensionGuardError,
    InvalidArgument,
    NumericalFailure,
    PerturbationBreakdown,
)
from spinlab.params import ModelParams

log = logging.getLogger("spinlab")

COMMANDS = ("spectrum", "landscape", "diagram", "convergence")
FORMATS = ("csv", "json")
MAX_SPIN = 200

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_GUARD = 0, 1, 2, 3


@dataclass
class RunConfig:
    model: ModelParams
    command: str
    block: dict = field(default_factory=dict)
    out: str = "."
    fmt: str = "csv"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise InvalidArgument(f"unknown command {self.command!r}")
        if self.fmt not in FORMATS:
            raise InvalidArgument(f"output format must be one of {FORMATS}, got {self.fmt!r}")

    def provenance(self):
        """Everything that determines the numbers; the output location is left out."""
        return {"model": self.model.to_dict(), self.command: dict(self.block)}

    def to_dict(self):
        return {
            "model": self.model.to_dict(),
            self.command: dict(self.block),
            "output": {"path": self.out, "format": self.fmt},
        }

    @classmethod
    def from_dict(cls, data):
        if not isinstance(data, dict):
            raise InvalidArgument("config must be a JSON object")
        unknown = set(data) - set(COMMANDS) - {"model", "output"}
        if unknown:
            raise InvalidArgument(f"unknown config sections: {sorted(unknown)}")
        present = [c for c in COMMANDS if c in data]
        if len(present) != 1:
            raise InvalidArgument(f"config needs exactly one command block, found {present}")
        command = present[0]
        block = data[command] or {}
        if not isinstance(block, dict):
            raise InvalidArgument(f"{command} block must be an object")
        try:
            model = ModelParams.from_dict(data.get("model", {}))
        except TypeError as exc:
            raise InvalidArgument(str(exc)) from exc
        output = data.get("output", {}) or {}
        return cls(model, command, dict(block), str(output.get("path", ".")), str(output.get("format", "csv")))


def load_config(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InvalidArgument(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidArgument(f"config {path} is not valid JSON: {exc}") from exc
    return RunConfig.from_dict(data)


# -- output helpers ---------------------------------------------------------


def _cell(x):
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x)).lower()
    if isinstance(x, (float, np.floating)):
        return diagram.fmt(x)
    return str(x)


def _jsonable(x):
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return None if not math.isfinite(x) else x
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def csv_text(config, columns, rows):
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(config.provenance(), sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


class Emitter:
    """Writes tables in the configured format; single writer per run."""

    def __init__(self, config):
        self.config = config
        self.dir = Path(config.out)
        self.dir.mkdir(parents=True, exist_ok=True)
        self.tables = {}
        self.written = []

    def table(self, name, columns, rows):
        rows = list(rows)
        if self.config.fmt == "csv":
            self._write(f"{name}.csv", csv_text(self.config, columns, rows))
        else:
            self.tables[name] = {"columns": list(columns), "rows": [{c: _jsonable(r[c]) for c in columns} for r in rows]}

    def document(self, name, payload):
        if self.config.fmt == "csv":
            self._write(f"{name}.json", json.dumps(_jsonable(payload), indent=1, sort_keys=True) + "\n")
        else:
            self.tables[name] = _jsonable(payload)

    def close(self):
        if self.config.fmt == "json":
            payload = {"config": self.config.provenance(), **self.tables}
            self._write(f"{self.config.command}.json", json.dumps(payload, indent=1, sort_keys=True, allow_nan=False) + "\n")
        return self.written

    def _write(self, fname, text):
        path = self.dir / fname
        path.write_text(text)
        self.written.append(path)


def _spin_tag(spin):
    return f"S{spin:g}"


# -- commands ---------------------------------------------------------------


def _guard(spin):
    if spin > MAX_SPIN:
        raise DimensionGuardError(spin, MAX_SPIN)


def cmd_spectrum(config):
    """Exact spectrum, perturbative table, matched residuals and block-elimination residuals."""
    spins = config.block.get("spins") or [config.model.spin]
    for s in spins:
        _guard(float(s))
    em = Emitter(config)
    for s in spins:
        p = config.model.replace(spin=s)
        exact = spectrum.exact_spectrum(p).eigenvalues
        fg = spectrum.fg_residuals(p, exact)

        level_rows = []
        broken = False
        for sigma in perturbative.sigmas(p):
            try:
                lev = perturbative.total_levels(p, sigma)
                level_rows.append(
                    {"sigma": sigma, "e_plus": lev.e_plus, "e_minus": lev.e_minus,
                     "E_upper": lev.E_upper, "E_lower": lev.E_lower, "flag": ""}
                )
            except PerturbationBreakdown as exc:
                broken = True
                log.warning("spin %s sigma %s: %s", p.spin, sigma, exc)
                level_rows.append(
                    {"sigma": sigma, "e_plus": math.nan, "e_minus": math.nan,
                     "E_upper": math.nan, "E_lower": math.nan, "flag": "perturbation_breakdown"}
                )
        if broken:
            approx = np.full(len(exact), math.nan)
            resid = np.full(len(exact), math.nan)
        else:
            approx = perturbative.perturbative_spectrum(p)
            resid = perturbative.match_levels(exact, approx)

        tag = _spin_tag(p.spin)
        em.table(
            f"spectrum_{tag}",
            ("index", "exact", "perturbative", "matched_residual", "fg_residual"),
            (
                {"index": i, "exact": exact[i], "perturbative": approx[i],
                 "matched_residual": resid[i], "fg_residual": fg[i]}
                for i in range(len(exact))
            ),
        )
        em.table(f"levels_{tag}", ("sigma", "e_plus", "e_minus", "E_upper", "E_lower", "flag"), level_rows)
    return em.close()


def cmd_landscape(config):
    """Sampled classical surfaces on one phi-section plus the stationary-point table."""
    samples = int(config.block.get("samples", 721))
    if samples < 2:
        raise InvalidArgument(f"samples must be >= 2, got {samples}")
    section = float(config.block.get("phi_section", 0.0))
    if section not in (0.0, math.pi):
        if abs(section - math.pi) < 1e-12:
            section = math.pi
        else:
            raise InvalidArgument("phi_section must be 0 or pi")
    resolution = int(config.block.get("resolution", landscape.DEFAULT_RESOLUTION))
    p = config.model

    theta = np.linspace(0.0, 2.0 * math.pi, samples)
    profile = {
        "theta": theta,
        "eps_plus": landscape.eps_classical(p, theta, section, 1),
        "eps_minus": landscape.eps_classical(p, theta, section, -1),
        "E_plus": landscape.total_surface(p, theta, section, 1),
        "E_minus": landscape.total_surface(p, theta, section, -1),
    }
    cols = tuple(profile)
    em = Emitter(config)
    em.table("landscape_profile", cols, ({c: profile[c][i] for c in cols} for i in range(samples)))

    points = landscape.find_stationary_points(p, resolution, section, strict=False)
    for pt in points:
        if pt.kind == landscape.DEGENERATE:
            log.warning("degenerate extremum at theta=%r", pt.theta)
    pcols = ("theta", "phi_section", "energy", "curvature", "kind", "location_class")
    em.table("landscape_points", pcols, ({c: getattr(pt, c) for c in pcols} for pt in points))

    phase = landscape.classify_configuration(points)
    summary = {
        "label": phase.label,
        "zero_is_min": phase.zero_is_min,
        "pi_is_min": phase.pi_is_min,
        "n_intermediate_minima": phase.n_intermediate_minima,
    }
    minima = [pt for pt in points if pt.kind == landscape.MINIMUM]
    if minima:
        best = landscape._pick_lowest(minima)
        summary.update(
            theta_min=best.theta, e_min=best.energy, phase_kind=landscape.PHASE_KIND[best.location_class]
        )
    scols = tuple(summary)
    em.table("landscape_summary", scols, [summary])
    return em.close()


def sweep_spec_from(config):
    p = config.model
    fields = {"omega": p.omega, "omega_t": p.omega_t, "delta": p.delta, "delta_t": p.delta_t}
    fields.update(config.block)
    return diagram.SweepSpec.from_dict(fields)


def cmd_diagram(config, threads=1):
    """Phase-diagram grid, analytic boundary curves and their consistency report."""
    spec = sweep_spec_from(config)
    grid = diagram.sweep(spec, threads=threads)
    curves = diagram.boundary_curves(spec)
    report = diagram.boundary_consistency(grid, curves)
    n_flagged = int(sum(1 for f in grid.flags.flat if f))
    if n_flagged:
        log.warning("%d cell(s) downgraded to 'other'", n_flagged)
    em = Emitter(config)
    em.table("diagram_grid", diagram.GRID_COLUMNS, diagram.grid_rows(grid))
    em.table(
        "diagram_boundaries",
        ("j_couple", "j_solid", "j_dashed"),
        (
            {"j_couple": curves["j_couple"][k], "j_solid": curves["solid"][k], "j_dashed": curves["dashed"][k]}
            for k in range(len(curves["j_couple"]))
        ),
    )
    summary = {
        "spec": spec.to_dict(),
        "label_counts": grid.label_counts(),
        "flagged_cells": [
            {"j": float(spec.j_axis[i]), "j_couple": float(spec.jc_axis[k]), "flag": str(grid.flags[i, k])}
            for i, k in np.ndindex(grid.shape) if grid.flags[i, k]
        ],
        "boundary_consistency": {k: v for k, v in report.items() if k != "columns"},
    }
    em.document("diagram_report", summary)
    return em.close()


def convergence_rows(model, spins, resolution=landscape.DEFAULT_RESOLUTION):
    best, _ = landscape.global_minimum(model, resolution)
    rows = []
    for s, e in spectrum.ground_energy_per_spin_scan(model, spins):
        rows.append({"spin": s, "e_min_per_spin": e, "classical_limit": best.energy, "gap": abs(e - best.energy)})
    return rows


def cmd_convergence(config):
    """Lowest eigenvalue per spin against the classical minimum, for each chain spin."""
    spins = config.block.get("spins") or [config.model.spin]
    for s in spins:
        _guard(float(s))
    resolution = int(config.block.get("resolution", landscape.DEFAULT_RESOLUTION))
    rows = convergence_rows(config.model, spins, resolution)
    em = Emitter(config)
    em.table("convergence", ("spin", "e_min_per_spin", "classical_limit", "gap"), rows)
    return em.close()


# -- entry point ------------------------------------------------------------


def build_parser():
    parser = argparse.ArgumentParser(prog="spinlab", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--config", required=True, help="JSON run configuration")
        sp.add_argument("--out", help="output directory (overrides config)")
        sp.add_argument("--format", choices=FORMATS, help="output format (overrides config)")
        sp.add_argument("--threads", type=int, default=None, help="worker threads (default $SPINLAB_THREADS or 1)")
    return parser


def _threads(arg):
    if arg is not None:
        return arg
    env = os.environ.get("SPINLAB_THREADS")
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise InvalidArgument(f"SPINLAB_THREADS must be an integer, got {env!r}") from exc
    return 1


def run(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        data = load_config(args.config).to_dict()
        if args.command not in data:
            present = [c for c in COMMANDS if c in data]
            raise InvalidArgument(f"config block {present} does not match subcommand {args.command!r}")
        config = RunConfig.from_dict(data)
        if args.out:
            config.out = args.out
        if args.format:
            config.fmt = args.format
        threads = _threads(args.threads)
        if threads < 1:
            raise InvalidArgument("--threads must be >= 1")
        if config.command == "diagram":
            files = cmd_diagram(config, threads)
        else:
            files = {"spectrum": cmd_spectrum, "landscape": cmd_landscape, "convergence": cmd_convergence}[
                config.command
            ](config)
    except DimensionGuardError as exc:
        log.error("%s", exc)
        return EXIT_GUARD
    except InvalidArgument as exc:
        log.error("config: %s", exc)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        log.error("numerical: %s", exc)
        return EXIT_NUMERICAL
    for f in files:
        log.info("wrote %s", f)
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
