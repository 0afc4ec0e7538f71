import json
import re
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from articulodyn.articmap import DEFAULT_CONFIG, config_to_dict
from articulodyn.cli import (
    control_csv_text,
    displacement_csv_text,
    main,
    read_displacement_csv,
)
from articulodyn.fleshpoints import FleshPoint
from articulodyn.pipeline import simulate
from articulodyn.score import make_cv_score, serialize_score


@pytest.fixture
def runner():
    return CliRunner()


def zero_coupling_config(tmp_path: Path) -> Path:
    cfg = config_to_dict(DEFAULT_CONFIG)
    cfg["jaw_to_lip_coupling"] = 0.0
    cfg["jaw_to_tongue_coupling"] = 0.0
    path = tmp_path / "zero.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return path


def outputs(out_dir: Path, kind: str) -> list[Path]:
    return sorted(out_dir.glob(f"{kind}_*"))


class TestSimulate:
    def test_default_cv_pa(self, runner, tmp_path):
        result = runner.invoke(main, ["simulate", "--cv", "pa", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        control = outputs(tmp_path, "control")
        displacement = outputs(tmp_path, "displacement")
        manifest = outputs(tmp_path, "manifest")
        assert len(control) == len(displacement) == len(manifest) == 1
        # header + 300 rows at dt = 1 ms over 300 ms
        lines = displacement[0].read_text().rstrip("\n").split("\n")
        assert len(lines) == 301
        assert lines[0] == "t_ms,upper_lip_y,lower_lip_y,tongue_tip_y,tongue_dorsum_y,jaw_y"
        meta = json.loads(manifest[0].read_text())
        assert meta["label"] == "/pa/"
        assert meta["dt_ms"] == 1.0
        assert set(meta["outputs"]) == {"control", "displacement"}
        assert re.fullmatch(r"[0-9a-f]{64}", meta["config_hash"])

    def test_csv_round_trip_at_six_decimals(self, runner, tmp_path):
        result = runner.invoke(main, ["simulate", "--cv", "ka", "--out", str(tmp_path)])
        assert result.exit_code == 0
        path = outputs(tmp_path, "displacement")[0]
        trajs = read_displacement_csv(path)
        # re-serializing the parsed series reproduces the file byte for byte
        run = simulate(make_cv_score("k", "a"))
        reference = displacement_csv_text(run)
        assert path.read_text() == reference
        for point in FleshPoint:
            original = run.points.series[point]
            reparsed = trajs.series[point]
            expected = np.array([float(f"{v:.6f}") for v in original])
            assert np.array_equal(reparsed, expected)

    def test_deterministic_bodies(self, runner, tmp_path):
        a_dir, b_dir = tmp_path / "a", tmp_path / "b"
        assert runner.invoke(main, ["simulate", "--cv", "tu", "--out", str(a_dir)]).exit_code == 0
        assert runner.invoke(main, ["simulate", "--cv", "tu", "--out", str(b_dir)]).exit_code == 0
        for kind in ("control", "displacement"):
            a = outputs(a_dir, kind)[0].read_text()
            b = outputs(b_dir, kind)[0].read_text()
            assert a == b

    def test_score_file_input(self, runner, tmp_path):
        score_path = tmp_path / "score.json"
        score_path.write_text(serialize_score(make_cv_score("t", "i")))
        out = tmp_path / "out"
        result = runner.invoke(
            main, ["simulate", "--score", str(score_path), "--out", str(out)]
        )
        assert result.exit_code == 0
        assert len(outputs(out, "control")) == 1

    def test_ti_jaw_peak_inside_closure(self, runner, tmp_path):
        result = runner.invoke(main, ["simulate", "--cv", "ti", "--out", str(tmp_path)])
        assert result.exit_code == 0
        trajs = read_displacement_csv(outputs(tmp_path, "displacement")[0])
        jaw = trajs.series[FleshPoint.JAW]
        peak_t = trajs.times_ms[int(np.argmax(jaw))]
        assert 60.0 <= peak_t <= 140.0

    def test_malformed_score_leaves_no_partial_files(self, runner, tmp_path):
        bad = tmp_path / "bad.json"
        bad.write_text('{"duration_ms": -5, "gestures": []}')
        out = tmp_path / "out"
        result = runner.invoke(
            main, ["simulate", "--score", str(bad), "--out", str(out)]
        )
        assert result.exit_code == 1
        assert "error" in result.output or result.output == ""
        assert not out.exists() or not list(out.glob("*.csv"))

    def test_unknown_cv(self, runner, tmp_path):
        result = runner.invoke(main, ["simulate", "--cv", "xy", "--out", str(tmp_path)])
        assert result.exit_code == 1

    def test_env_var_config_fallback(self, runner, tmp_path, monkeypatch):
        cfg_path = zero_coupling_config(tmp_path)
        out = tmp_path / "out"
        result = runner.invoke(
            main,
            ["simulate", "--cv", "pa", "--out", str(out)],
            env={"ARTICULODYN_CONFIG": str(cfg_path)},
        )
        assert result.exit_code == 0
        meta = json.loads(outputs(out, "manifest")[0].read_text())
        default_run = simulate(make_cv_score("p", "a"))
        from articulodyn.cli import config_hash

        assert meta["config_hash"] != config_hash(default_run.config)


class TestPlot:
    def make_displacement(self, runner, tmp_path) -> Path:
        assert runner.invoke(main, ["simulate", "--cv", "pa", "--out", str(tmp_path)]).exit_code == 0
        return outputs(tmp_path, "displacement")[0]

    def test_five_polylines_and_legend(self, runner, tmp_path):
        csv = self.make_displacement(runner, tmp_path)
        svg_path = tmp_path / "pa.svg"
        result = runner.invoke(main, ["plot", str(csv), "--out", str(svg_path)])
        assert result.exit_code == 0, result.output
        svg = svg_path.read_text()
        assert svg.count("<polyline") == 5
        assert svg.count('class="legend-label"') == 5
        for color in ("blue", "orange", "green", "red", "magenta"):
            assert f'stroke="{color}"' in svg

    def test_window_spans_exactly(self, runner, tmp_path):
        csv = self.make_displacement(runner, tmp_path)
        svg_path = tmp_path / "win.svg"
        result = runner.invoke(
            main, ["plot", str(csv), "--window", "40:160", "--out", str(svg_path)]
        )
        assert result.exit_code == 0
        svg = svg_path.read_text()
        xs = []
        for m in re.finditer(r'points="([^"]+)"', svg):
            xs += [float(pair.split(",")[0]) for pair in m.group(1).split()]
        # data fills the plot area: x = 40 ms maps to the left edge (margin
        # 56), x = 160 ms to the right edge (width 640 - margin 14)
        assert min(xs) == pytest.approx(56.0)
        assert max(xs) == pytest.approx(626.0)

    def test_empty_csv_exits_one_naming_file(self, runner, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        result = runner.invoke(main, ["plot", str(empty)])
        assert result.exit_code == 1
        assert "empty.csv" in result.output

    def test_window_outside_data(self, runner, tmp_path):
        csv = self.make_displacement(runner, tmp_path)
        result = runner.invoke(main, ["plot", str(csv), "--window", "100:900"])
        assert result.exit_code == 1


class TestMatrix:
    def test_default_config_green(self, runner, tmp_path):
        out = tmp_path / "matrix"
        result = runner.invoke(main, ["matrix", "--out", str(out)])
        assert result.exit_code == 0, result.output
        assert len(list(out.glob("control_*.csv"))) == 9
        assert len(list(out.glob("displacement_*.csv"))) == 9
        assert len(list(out.glob("matrix_*.svg"))) == 1
        reports = list(out.glob("checks_*.json"))
        assert len(reports) == 1
        report = json.loads(reports[0].read_text())
        assert report["passed"] is True

    def test_zero_coupling_exits_three_with_report(self, runner, tmp_path):
        cfg = zero_coupling_config(tmp_path)
        out = tmp_path / "matrix"
        result = runner.invoke(
            main, ["matrix", "--config", str(cfg), "--out", str(out)]
        )
        assert result.exit_code == 3
        assert "comovement" in result.output
        reports = list(out.glob("checks_*.json"))
        assert len(reports) == 1
        assert json.loads(reports[0].read_text())["passed"] is False

    def test_out_dir_created(self, runner, tmp_path):
        out = tmp_path / "deep" / "nested" / "dir"
        result = runner.invoke(main, ["matrix", "--out", str(out)])
        assert result.exit_code == 0
        assert out.is_dir()


class TestScoreValidate:
    def test_valid_score(self, runner, tmp_path):
        path = tmp_path / "ok.json"
        path.write_text(serialize_score(make_cv_score("p", "u")))
        result = runner.invoke(main, ["score", "validate", str(path)])
        assert result.exit_code == 0
        assert "OK" in result.output
        assert "/pu/" in result.output

    def test_invalid_score(self, runner, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"duration_ms": 100, "gestures": [], "bogus": 1}')
        result = runner.invoke(main, ["score", "validate", str(path)])
        assert result.exit_code == 1
        assert "bogus" in result.output

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(main, ["score", "validate", str(tmp_path / "nope.json")])
        assert result.exit_code == 2


def test_control_csv_columns():
    run = simulate(make_cv_score("p", "i"))
    text = control_csv_text(run)
    header = text.split("\n", 1)[0].split(",")
    assert header[0] == "t_ms"
    assert "vocalic_height" in header
    assert "act_consonantal_labial" in header
    # one value column and one activation column per task variable
    assert len(header) == 1 + 2 * 9


def test_simulate_missing_config_is_io_error(tmp_path):
    runner = CliRunner()
    result = runner.invoke(
        main,
        ["simulate", "--cv", "pa", "--config", str(tmp_path / "nope.json"),
         "--out", str(tmp_path)],
    )
    assert result.exit_code == 2
