"""Extremum-configuration phase diagram on the (J, J_couple) plane."""

import csv
import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from spinlab.errors import InvalidArgument, NumericalFailure
from spinlab.landscape import (
    MINIMUM,
    _pick_lowest,
    classify_configuration,
    find_stationary_points,
    is_configuration_three,
)
from spinlab.params import ModelParams

GRID_COLUMNS = ("j", "j_couple", "label", "e_min", "theta_min", "phi_section")


@dataclass(frozen=True)
class SweepSpec:
    j_min: float = 0.0
    j_max: float = 2.0
    j_steps: int = 100
    jc_min: float = 0.0
    jc_max: float = 4.0
    jc_steps: int = 100
    omega: float = 1.0
    omega_t: float = 0.2
    delta: float = 0.5
    delta_t: float = 0.0
    resolution: int = 1024

    def __post_init__(self):
        for name in ("j_min", "j_max", "jc_min", "jc_max", "omega", "omega_t", "delta", "delta_t"):
            if not math.isfinite(float(getattr(self, name))):
                raise InvalidArgument(f"{name} must be finite")
        if int(self.j_steps) < 1 or int(self.jc_steps) < 1:
            raise InvalidArgument("j_steps and jc_steps must be positive")
        if int(self.resolution) < 400:
            raise InvalidArgument(f"resolution must be >= 400, got {self.resolution}")

    @property
    def j_axis(self):
        return np.linspace(self.j_min, self.j_max, int(self.j_steps))

    @property
    def jc_axis(self):
        return np.linspace(self.jc_min, self.jc_max, int(self.jc_steps))

    def cell_params(self, j, jc):
        return ModelParams(
            omega=self.omega,
            delta=self.delta,
            omega_t=self.omega_t,
            delta_t=self.delta_t,
            j_chain=float(j),
            j_couple=float(jc),
        )

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise InvalidArgument(f"unknown sweep fields: {sorted(unknown)}")
        return cls(**data)


@dataclass
class PhaseGrid:
    """Per-cell results of :func:`sweep`, arrays indexed ``[i_j, i_jc]``.

    ``zero_is_min`` / ``pi_is_min`` hold 1, 0 or -1 (cell failed).
    """

    spec: SweepSpec
    labels: np.ndarray
    minima_energy: np.ndarray
    theta_min: np.ndarray
    phi_min: np.ndarray
    zero_is_min: np.ndarray
    pi_is_min: np.ndarray
    n_intermediate_minima: np.ndarray
    flags: np.ndarray

    @property
    def shape(self):
        return self.labels.shape

    def label_counts(self):
        values, counts = np.unique(self.labels, return_counts=True)
        return {str(v): int(c) for v, c in zip(values, counts)}

    def configuration_three_cells(self):
        """Indices of cells whose extremum pattern is configuration 3."""
        out = []
        for idx in np.ndindex(self.shape):
            if self.flags[idx]:
                continue
            if is_configuration_three(
                bool(self.zero_is_min[idx] == 1),
                bool(self.pi_is_min[idx] == 1),
                int(self.n_intermediate_minima[idx]),
            ):
                out.append(idx)
        return out


def classify_cell(spec, j, jc):
    """Label, lowest minimum and flags for one grid cell. Never raises on numerics."""
    params = spec.cell_params(j, jc)
    try:
        points = find_stationary_points(params, spec.resolution, 0.0)
    except NumericalFailure as exc:
        return {
            "label": "other",
            "e_min": math.nan,
            "theta_min": math.nan,
            "phi_min": math.nan,
            "zero_is_min": -1,
            "pi_is_min": -1,
            "k": -1,
            "flag": f"{type(exc).__name__}: {exc}",
        }
    phase = classify_configuration(points)
    best = _pick_lowest([p for p in points if p.kind == MINIMUM])
    return {
        "label": phase.label,
        "e_min": best.energy,
        "theta_min": best.theta,
        "phi_min": best.phi_section,
        "zero_is_min": int(phase.zero_is_min),
        "pi_is_min": int(phase.pi_is_min),
        "k": phase.n_intermediate_minima,
        "flag": "",
    }


def sweep(spec, threads=1):
    """Classify every cell of ``spec``; the result does not depend on ``threads``."""
    js = spec.j_axis
    jcs = spec.jc_axis
    cells = [(i, k) for i in range(len(js)) for k in range(len(jcs))]

    def work(ik):
        i, k = ik
        return classify_cell(spec, js[i], jcs[k])

    threads = max(1, int(threads))
    if threads == 1:
        results = [work(c) for c in cells]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, cells, chunksize=max(1, len(cells) // (8 * threads))))

    shape = (len(js), len(jcs))
    labels = np.empty(shape, dtype=object)
    e_min = np.empty(shape)
    theta_min = np.empty(shape)
    phi_min = np.empty(shape)
    zero_min = np.empty(shape, dtype=np.int8)
    pi_min = np.empty(shape, dtype=np.int8)
    kmin = np.empty(shape, dtype=np.int16)
    flags = np.empty(shape, dtype=object)
    for (i, k), r in zip(cells, results):
        labels[i, k] = r["label"]
        e_min[i, k] = r["e_min"]
        theta_min[i, k] = r["theta_min"]
        phi_min[i, k] = r["phi_min"]
        zero_min[i, k] = r["zero_is_min"]
        pi_min[i, k] = r["pi_is_min"]
        kmin[i, k] = r["k"]
        flags[i, k] = r["flag"]
    return PhaseGrid(spec, labels, e_min, theta_min, phi_min, zero_min, pi_min, kmin, flags)


def boundary_curves(spec):
    """Analytic endpoint-stability boundaries sampled on the J_couple axis.

    Returns a dict with ``j_couple``, ``solid`` (the ``theta = pi`` curvature
    vanishes) and ``dashed`` (the ``theta = 0`` curvature vanishes), each the
    value of J on the curve.
    """
    jc = spec.jc_axis
    w, d, wt = spec.omega, spec.delta, spec.omega_t
    with np.errstate(invalid="ignore", divide="ignore"):
        r_pi = np.hypot(jc - w, d)
        r_0 = np.hypot(jc + w, d)
        solid = wt + np.where(r_pi > 0, jc * (jc - w) / (2 * r_pi), 0.0)
        dashed = -wt + np.where(r_0 > 0, jc * (jc + w) / (2 * r_0), 0.0)
    return {"j_couple": jc, "solid": solid, "dashed": dashed}


def _flip_deviation(flag_column, j_axis, j_curve):
    """Worst distance in cells between flips of ``flag_column`` and the analytic ``j_curve``.

    Returns ``(deviation, n_flips)``; ``inf`` if flips and curve disagree on existence.
    """
    step = j_axis[1] - j_axis[0] if len(j_axis) > 1 else 1.0
    valid = flag_column >= 0
    flips = []
    for i in range(len(flag_column) - 1):
        if valid[i] and valid[i + 1] and flag_column[i] != flag_column[i + 1]:
            flips.append(i + 0.5)
    curve_pos = (j_curve - j_axis[0]) / step
    inside = 0.0 <= curve_pos <= len(j_axis) - 1
    if not flips:
        if not inside:
            return 0.0, 0
        # a curve sitting on a failed or edge cell is still consistent
        nearest_invalid = [abs(i - curve_pos) for i in range(len(valid)) if not valid[i]]
        if nearest_invalid and min(nearest_invalid) <= 1.0:
            return min(nearest_invalid), 0
        return math.inf, 0
    return max(abs(f - curve_pos) for f in flips), len(flips)


def boundary_consistency(grid, curves):
    """Compare endpoint-minimality flips in ``grid`` against ``curves`` column by column.

    Returns a report dict with ``max_deviation_pi``, ``max_deviation_zero``
    (in cells), ``max_deviation`` and ``consistent`` (deviation <= 2 cells).
    """
    j_axis = grid.spec.j_axis
    dev_pi = dev_0 = 0.0
    columns = []
    for k in range(grid.shape[1]):
        d_pi, n_pi = _flip_deviation(grid.pi_is_min[:, k], j_axis, curves["solid"][k])
        d_0, n_0 = _flip_deviation(grid.zero_is_min[:, k], j_axis, curves["dashed"][k])
        dev_pi = max(dev_pi, d_pi)
        dev_0 = max(dev_0, d_0)
        columns.append(
            {"j_couple": float(curves["j_couple"][k]), "deviation_pi": d_pi, "deviation_zero": d_0,
             "flips_pi": n_pi, "flips_zero": n_0}
        )
    worst = max(dev_pi, dev_0)
    return {
        "max_deviation_pi": dev_pi,
        "max_deviation_zero": dev_0,
        "max_deviation": worst,
        "consistent": bool(worst <= 2.0),
        "columns": columns,
    }


def fmt(x):
    """17 significant digits so reruns compare bitwise."""
    return format(float(x), ".17g")


def grid_rows(grid):
    js = grid.spec.j_axis
    jcs = grid.spec.jc_axis
    for i, k in np.ndindex(grid.shape):
        yield {
            "j": float(js[i]),
            "j_couple": float(jcs[k]),
            "label": str(grid.labels[i, k]),
            "e_min": float(grid.minima_energy[i, k]),
            "theta_min": float(grid.theta_min[i, k]),
            "phi_section": float(grid.phi_min[i, k]),
            "flag": str(grid.flags[i, k]),
        }


def grid_to_csv(grid, header_comment=None):
    buf = io.StringIO()
    if header_comment:
        buf.write(f"# {header_comment}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GRID_COLUMNS)
    for row in grid_rows(grid):
        w.writerow([fmt(row[c]) if isinstance(row[c], float) else row[c] for c in GRID_COLUMNS])
    return buf.getvalue()


def grid_to_json(grid, extra=None):
    payload = {"spec": grid.spec.to_dict(), "columns": list(GRID_COLUMNS) + ["flag"], "rows": []}
    for row in grid_rows(grid):
        payload["rows"].append({k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in row.items()})
    if extra:
        payload.update(extra)
    return json.dumps(payload, indent=1, sort_keys=True, allow_nan=False)
