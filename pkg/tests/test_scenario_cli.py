import json
import re

import numpy as np
import pytest

from leafspec import Leaf, leaf_boundary_sample, render_leaf_svg
from leafspec.cli import main as cli_main
from leafspec.scenario import load_scenario, run_scenario


def scenario_dict(a_minus=1.0, a_plus=(0.0, 1.0), deltas=(0.0, 0.0),
                  tasks=("fredholm",), n=256, **extra):
    scn = {
        "v": 1,
        "n": n,
        "curve": {"family": "circle"},
        "exponent": {"kind": "constant", "p": 2.0},
        "coefficients": {"a": {"size": 1, "pieces": [
            {"start": "t", "value": list(a_plus) if isinstance(a_plus, tuple) else a_plus},
            {"start": "u", "value": a_minus},
        ]}},
        "expression": {"op": "sum", "args": [
            {"op": "prod", "args": [{"gen": "mult", "coeff": "a"}, {"gen": "P"}]},
            {"gen": "Q"},
        ]},
        "points": [
            {"t": "t", "p_t": 2.0, "delta_minus": deltas[0], "delta_plus": deltas[1]},
            {"t": "u", "p_t": 2.0, "delta_minus": deltas[0], "delta_plus": deltas[1]},
        ],
        "tasks": list(tasks),
    }
    scn.update(extra)
    return scn


def write(tmp_path, obj, name="scn.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj, indent=1))
    return path


def test_minimal_fredholm_scenario(tmp_path):
    path = write(tmp_path, scenario_dict())
    out = tmp_path / "out"
    assert run_scenario(path, out) == 0
    verdict = json.loads((out / "verdict.json").read_text())
    assert verdict["criterion"]["fredholm"] is True
    intervals = {pt["t_label"]: pt["interval_low"]
                 for pt in verdict["criterion"]["per_point"]}
    assert intervals["t"] == pytest.approx(0.75)
    assert intervals["u"] == pytest.approx(0.25)


def test_not_fredholm_scenario(tmp_path):
    path = write(tmp_path, scenario_dict(a_plus=-1.0,
                                         tasks=("fredholm", "symbol_test")))
    out = tmp_path / "out"
    assert run_scenario(path, out) == 0
    verdict = json.loads((out / "verdict.json").read_text())
    assert verdict["criterion"]["fredholm"] is False
    assert verdict["symbol"]["fredholm"] is False
    assert verdict["symbol"]["method"] == "exact"


def test_verify_task_trend(tmp_path):
    path = write(tmp_path, scenario_dict(tasks=("verify",), sizes=[64, 128]))
    out = tmp_path / "out"
    assert run_scenario(path, out) == 0
    verdict = json.loads((out / "verdict.json").read_text())
    assert verdict["trend"]["trend"] == "bounded_below"
    assert verdict["trend"]["sizes"] == [64, 128]


def test_override_precedence(tmp_path):
    # the circle's true indices are ~0, which would keep the jump e -> 1
    # Fredholm; lying overrides delta = -+2pi must flip the verdict
    scn = scenario_dict(a_minus=float(np.e), a_plus=1.0,
                        deltas=(-2 * np.pi, 2 * np.pi))
    path = write(tmp_path, scn)
    out = tmp_path / "out"
    assert run_scenario(path, out) == 0
    verdict = json.loads((out / "verdict.json").read_text())
    assert verdict["criterion"]["fredholm"] is False
    lows = {p["t_label"]: p for p in verdict["criterion"]["per_point"]}
    assert lows["t"]["interval_low"] == pytest.approx(-0.5)
    assert lows["t"]["interval_high"] == pytest.approx(1.5)


def test_schema_violation_exit_2(tmp_path, capsys):
    path = write(tmp_path, {"curve": {"family": "circle"}, "tasks": []})
    assert run_scenario(path, tmp_path / "out") == 2
    msg = capsys.readouterr().out
    assert "v" in msg and re.search(r":\d+:", msg)


def test_bad_json_exit_2(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"v": 1,,}')
    assert run_scenario(path, tmp_path / "out") == 2
    assert re.search(r"broken\.json:\d+:\d+", capsys.readouterr().out)


def test_resolution_error_exit_3(tmp_path):
    scn = scenario_dict(tasks=("spirality",), n=64)
    scn["points"] = [{"t": "t"}]
    path = write(tmp_path, scn)
    assert run_scenario(path, tmp_path / "out") == 3


def test_unknown_coefficient_exit_2(tmp_path):
    scn = scenario_dict()
    scn["expression"] = {"gen": "mult", "coeff": "ghost"}
    path = write(tmp_path, scn)
    assert run_scenario(path, tmp_path / "out") == 2


def test_leaf_plot_artifacts_and_determinism(tmp_path):
    scn = scenario_dict(deltas=(-1.0, 1.0), tasks=("leaf_plot", "fredholm"))
    path = write(tmp_path, scn)
    out1, out2 = tmp_path / "o1", tmp_path / "o2"
    assert run_scenario(path, out1) == 0
    assert run_scenario(path, out2) == 0
    svg1 = (out1 / "leaf_t.svg").read_bytes()
    assert svg1 == (out2 / "leaf_t.svg").read_bytes()
    assert (out1 / "verdict.json").read_bytes() == (out2 / "verdict.json").read_bytes()
    text = svg1.decode()
    assert text.count("<polyline") == 4
    labels = set(re.findall(r'data-label="([^"]+)"', text))
    assert {"d-_to_z2", "d+_to_z2", "d+_to_z1", "d-_to_z1",
            "median", "z1", "z2"} <= labels


def test_spirality_task_output(tmp_path):
    scn = {
        "v": 1, "n": 2048,
        "curve": {"family": "log_spiral", "delta": 0.5},
        "points": [{"t": "t"}],
        "tasks": ["spirality"],
    }
    path = write(tmp_path, scn)
    out = tmp_path / "out"
    assert run_scenario(path, out) == 0
    rep = json.loads((out / "spirality.json").read_text())
    assert abs(rep["t"]["delta_minus"] - 0.5) < 0.05
    assert abs(rep["t"]["delta_plus"] - 0.5) < 0.05


def test_degenerate_leaf_single_path():
    leaf = Leaf(0, 1, 2.0, 0.0, 0.0)
    text = render_leaf_svg(leaf, leaf_boundary_sample(leaf, 128))
    assert text.count("<polyline") == 1


def test_median_marker_position():
    # symmetric leaf: the median 0.5 sits at the horizontal center of the
    # drawn geometry, so its canvas coordinates are computable from the
    # records alone (uniform scale, 10% padding, y flip)
    leaf = Leaf(0, 1, 2.0, -1.0, 1.0)
    samples = leaf_boundary_sample(leaf, 256)
    text = render_leaf_svg(leaf, samples)
    match = re.search(r'<circle data-label="median" cx="([0-9.]+)" cy="([0-9.]+)"', text)
    assert match
    cx, cy = float(match.group(1)), float(match.group(2))
    xs, ys = [0.0, 1.0, 0.5], [0.0, 0.0, 0.0]
    for piece in samples.pieces:
        xs.extend(piece.points.real)
        ys.extend(piece.points.imag)
    span = max(max(xs) - min(xs), max(ys) - min(ys))
    scale = 800.0 / (1.2 * span)
    want_x = 400.0 + (0.5 - (min(xs) + max(xs)) / 2) * scale
    want_y = 400.0 - (0.0 - (min(ys) + max(ys)) / 2) * scale
    assert abs(cx - want_x) < 1e-2 and abs(cy - want_y) < 1e-2


def test_cli_run_and_leaf(tmp_path, capsys):
    path = write(tmp_path, scenario_dict())
    assert cli_main(["run", str(path), "--out", str(tmp_path / "out")]) == 0
    svg_path = tmp_path / "leaf.svg"
    assert cli_main(["leaf", "--p", "2", "--dminus", "0", "--dplus", "0",
                     "--out", str(svg_path)]) == 0
    assert svg_path.read_text().count("<polyline") == 1


def test_cli_spirality(tmp_path, capsys):
    code = cli_main(["spirality", "--curve",
                     '{"family": "log_spiral", "delta": 0.5}',
                     "--t", "t", "--n", "2048"])
    assert code == 0
    rep = json.loads(capsys.readouterr().out)
    assert abs(rep["delta_minus"] - 0.5) < 0.05


def test_cli_bad_curve_json(capsys):
    assert cli_main(["spirality", "--curve", "{not json", "--t", "t"]) == 2


def test_scenario_round_trip_consistency(tmp_path):
    path = write(tmp_path, scenario_dict(tasks=("fredholm", "symbol_test")))
    out = tmp_path / "out"
    assert run_scenario(path, out) == 0
    text = (out / "verdict.json").read_text()
    verdict = json.loads(text)
    assert json.dumps(verdict, indent=2, sort_keys=True) + "\n" == text


def test_load_scenario_validates_tasks(tmp_path):
    scn = scenario_dict()
    scn["tasks"] = ["dance"]
    path = write(tmp_path, scn)
    with pytest.raises(Exception):
        load_scenario(path)
