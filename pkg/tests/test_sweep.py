import csv
import io
import re

import pytest

from qstirling.cycle import CostModel, Mode
from qstirling.errors import InvalidInputError
from qstirling.media import COUPLED_SPINS, SINGLE_SPIN
from qstirling.plotting import CURVES, gnuplot_script, render_efficiency_figure
from qstirling.sweep import (
    Knob,
    SweepSpec,
    kappa_sweep_spec,
    coupling_sweep_spec,
    format_value,
    run,
    to_csv,
    to_json,
)


def parse(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_minimal_sweep_has_two_rows():
    result = run(coupling_sweep_spec(1.0, 2.0, steps=2))
    rows = parse(to_csv(result))
    assert len(rows) == 2
    assert [float(r["j"]) for r in rows] == [1.0, 2.0]


def test_knob_column_first_and_unique():
    header = to_csv(run(coupling_sweep_spec(steps=3))).splitlines()[0].split(",")
    assert header[0] == "j"
    assert len(header) == len(set(header))
    header = to_csv(run(kappa_sweep_spec(steps=3))).splitlines()[0].split(",")
    assert header[0] == "kappa"


def test_row_matches_single_cycle_values():
    row = parse(to_csv(run(coupling_sweep_spec(1.0, 2.0, steps=2))))[0]
    assert float(row["work"]) == pytest.approx(0.10001280378254013, rel=1e-11)
    assert float(row["eta_regen_cost"]) == pytest.approx(0.22463791315767522, rel=1e-11)
    assert row["mode"] == "engine"


def test_kappa_sets_lambda1():
    result = run(kappa_sweep_spec(2.0, 3.0, steps=2))
    assert [r.lambda1 for r in result.reports] == [4.0, 6.0]
    assert all(r.lambda2 == 2.0 for r in result.reports)


def test_reversed_bounds_still_ascending():
    spec = SweepSpec(COUPLED_SPINS, Knob.J, 3.0, 1.0, steps=3, fixed={"lambda1": 2.0, "lambda2": 1.0, "t_hot": 3.0, "t_cold": 2.0})
    assert list(run(spec).values) == [1.0, 2.0, 3.0]


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(start=1.0, stop=1.0),
        dict(start=1.0, stop=2.0, steps=1),
        dict(start=float("nan"), stop=2.0),
    ],
)
def test_invalid_specs(kwargs):
    with pytest.raises(InvalidInputError):
        SweepSpec(SINGLE_SPIN, Knob.J, fixed={"lambda1": 1.0, "lambda2": 2.0, "t_hot": 3.0, "t_cold": 2.0}, **kwargs)


def test_kappa_requires_lambda2():
    with pytest.raises(InvalidInputError):
        SweepSpec(SINGLE_SPIN, Knob.KAPPA, 0.5, 2.0, fixed={"t_hot": 3.0, "t_cold": 2.0})


def test_missing_fixed_value():
    spec = SweepSpec(SINGLE_SPIN, Knob.LAMBDA1, 1.0, 2.0, fixed={"lambda2": 2.0, "t_hot": 3.0})
    with pytest.raises(InvalidInputError):
        run(spec)


def test_temperature_knob():
    spec = SweepSpec(SINGLE_SPIN, Knob.T_HOT, 2.5, 5.0, steps=4, fixed={"lambda1": 4.0, "lambda2": 2.0, "t_cold": 2.0})
    rows = parse(to_csv(run(spec)))
    assert rows[0].keys().__iter__().__next__() == "t_hot"
    assert float(rows[-1]["eta_carnot"]) == pytest.approx(0.6)


def test_csv_deterministic():
    assert to_csv(run(kappa_sweep_spec())) == to_csv(run(kappa_sweep_spec()))


def test_first_law_survives_round_trip():
    for spec in (kappa_sweep_spec(), coupling_sweep_spec()):
        for row in parse(to_csv(run(spec))):
            q_h, q_c, work = (float(row[k]) for k in ("q_h", "q_c", "work"))
            assert q_h + q_c == pytest.approx(work, rel=1e-10, abs=1e-12)


def test_undefined_cells_empty():
    rows = parse(to_csv(run(coupling_sweep_spec(4.2, 4.5, steps=3))))
    for row in rows:
        assert row["mode"] == Mode.NOT_ENGINE.value
        assert row["eta_regen_free"] == row["eta_conventional"] == row["carnot_deficit"] == ""


def test_format_value():
    assert format_value(None) == ""
    assert format_value(1 / 3) == "0.333333333333"
    assert format_value(-2.5e-20) == "-2.5e-20"
    assert format_value(("a", "b")) == "a;b"
    assert format_value(7) == "7"


def test_json_round_trip():
    import json

    rows = json.loads(to_json(run(coupling_sweep_spec(1.0, 2.0, steps=2))))
    assert rows[0]["j"] == 1.0 and rows[0]["mode"] == "engine"


def test_cost_model_column():
    rows = parse(to_csv(run(coupling_sweep_spec(1.0, 2.0, steps=2, cost=CostModel.parse("fixed:0.01")))))
    assert rows[0]["cost_model"] == "fixed:0.01"
    assert rows[0]["flags"] == "cost-below-carnot-minimum"


def test_gnuplot_script_references_header_columns(tmp_path):
    result = run(kappa_sweep_spec(steps=5))
    csv_path = tmp_path / "kappa.csv"
    csv_path.write_text(to_csv(result))
    script = gnuplot_script(csv_path, "kappa")
    header = set(csv_path.read_text().splitlines()[0].split(","))
    referenced = set(re.findall(r'using "([^"]+)":"([^"]+)"', script)[0]) | {
        c for pair in re.findall(r'using "([^"]+)":"([^"]+)"', script) for c in pair
    }
    assert referenced <= header
    assert {c for c, *_ in CURVES} <= referenced
    assert "kappa.csv" in script


def test_render_figure(tmp_path):
    out = render_efficiency_figure(run(coupling_sweep_spec(steps=15)), tmp_path / "coupling.png", title="J sweep")
    data = out.read_bytes()
    assert data.startswith(b"\x89PNG")
    assert len(data) > 5000
