import csv
import io
import json
import math

import numpy as np
import pytest

from spinlab.diagram import (
    GRID_COLUMNS,
    SweepSpec,
    boundary_consistency,
    boundary_curves,
    classify_cell,
    grid_to_csv,
    grid_to_json,
    sweep,
)
from spinlab.errors import InvalidArgument
from spinlab.landscape import classify_configuration, find_stationary_points


def test_spec_validation():
    with pytest.raises(InvalidArgument):
        SweepSpec(resolution=100)
    with pytest.raises(InvalidArgument):
        SweepSpec(j_steps=0)
    with pytest.raises(InvalidArgument):
        SweepSpec(omega=math.nan)
    with pytest.raises(InvalidArgument):
        SweepSpec.from_dict({"bogus": 1})
    s = SweepSpec(j_steps=7)
    assert SweepSpec.from_dict(s.to_dict()) == s


def test_uncoupled_row_transition():
    # J_couple = 0: symmetric (2a) for J < omega_t, broken pair (2b) beyond
    spec = SweepSpec(j_min=0.005, j_max=1.995, j_steps=200, jc_min=0.0, jc_max=0.0, jc_steps=1)
    grid = sweep(spec)
    labels = list(grid.labels[:, 0])
    flip = labels.index("2b")
    assert set(labels[:flip]) == {"2a"} and set(labels[flip:]) == {"2b"}
    assert spec.j_axis[flip - 1] < 0.2 < spec.j_axis[flip]


@pytest.mark.parametrize("j, jc", [(0.3, 0.4), (1.4, 2.3), (1.0, 2.0), (0.1, 3.5), (1.9, 0.2)])
def test_single_cell_matches_direct_classification(j, jc):
    spec = SweepSpec()
    cell = classify_cell(spec, j, jc)
    direct = classify_configuration(find_stationary_points(spec.cell_params(j, jc)))
    assert cell["label"] == direct.label
    assert cell["k"] == direct.n_intermediate_minima


def test_boundary_curves_at_zero_coupling():
    c = boundary_curves(SweepSpec(jc_min=0.0, jc_max=0.0, jc_steps=1))
    assert c["solid"][0] == pytest.approx(0.2)
    assert c["dashed"][0] == pytest.approx(-0.2)


def test_boundary_curves_at_resonance():
    c = boundary_curves(SweepSpec(jc_min=1.0, jc_max=1.0, jc_steps=1))
    assert c["solid"][0] == pytest.approx(0.2, abs=1e-15)
    assert c["dashed"][0] == pytest.approx(-0.2 + 2 / (2 * math.hypot(2, 0.5)))


def test_boundary_curves_asymptotic_slope():
    c = boundary_curves(SweepSpec(jc_min=1e4, jc_max=2e4, jc_steps=2))
    for key in ("solid", "dashed"):
        slope = (c[key][1] - c[key][0]) / 1e4
        assert slope == pytest.approx(0.5, abs=1e-6)


def test_boundary_curves_vanishing_tunnelling():
    # delta = 0, J_couple = omega: the solid curve's radius vanishes
    c = boundary_curves(SweepSpec(delta=0.0, jc_min=1.0, jc_max=1.0, jc_steps=1))
    assert c["solid"][0] == pytest.approx(0.2)


SMALL = SweepSpec(j_steps=12, jc_steps=10)


@pytest.fixture(scope="module")
def small_grid():
    return sweep(SMALL)


def test_sweep_deterministic(small_grid):
    assert grid_to_csv(sweep(SMALL)) == grid_to_csv(small_grid)


def test_parallel_matches_serial(small_grid):
    assert grid_to_csv(sweep(SMALL, threads=4)) == grid_to_csv(small_grid)


def test_no_configuration_three(small_grid):
    assert small_grid.configuration_three_cells() == []
    assert sum(small_grid.label_counts().values()) == 120


def test_refinement_keeps_labels_away_from_boundaries():
    coarse = sweep(SweepSpec(j_steps=8, jc_steps=8, resolution=512))
    fine = sweep(SweepSpec(j_steps=8, jc_steps=8, resolution=4096))
    np.testing.assert_array_equal(coarse.labels, fine.labels)


def test_boundary_deviation_does_not_grow_under_refinement():
    devs = []
    for n in (20, 40):
        spec = SweepSpec(j_steps=n, jc_steps=10)
        devs.append(boundary_consistency(sweep(spec), boundary_curves(spec))["max_deviation"])
    assert devs[1] <= max(devs[0], 1.0)
    assert all(d <= 1.0 for d in devs)


def test_csv_schema(small_grid):
    text = grid_to_csv(small_grid, header_comment="config: {}")
    lines = text.splitlines()
    assert lines[0] == "# config: {}"
    rows = list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))
    assert tuple(rows[0].keys()) == GRID_COLUMNS
    assert len(rows) == 120
    assert float(rows[0]["j"]) == 0.0 and float(rows[-1]["j_couple"]) == 4.0
    assert {r["phi_section"] for r in rows} == {"0"}


def test_json_schema(small_grid):
    payload = json.loads(grid_to_json(small_grid, extra={"note": 1}))
    assert payload["columns"][:-1] == list(GRID_COLUMNS)
    assert len(payload["rows"]) == 120
    assert payload["spec"]["j_steps"] == 12
    assert payload["note"] == 1


def test_flagged_cell_is_downgraded():
    # J = omega_t at J_couple = 0 is the degenerate critical point
    spec = SweepSpec(j_min=0.2, j_max=0.2, j_steps=1, jc_min=0.0, jc_max=0.0, jc_steps=1)
    grid = sweep(spec)
    assert grid.labels[0, 0] == "other"
    assert grid.flags[0, 0].startswith("DegenerateExtremum")
    assert grid.zero_is_min[0, 0] == -1
    assert "nan" in grid_to_csv(grid)
    assert json.loads(grid_to_json(grid))["rows"][0]["e_min"] is None
