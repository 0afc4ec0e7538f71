import dataclasses

import numpy as np
import pytest

from articulodyn.articmap import ArticulatorFrame, DEFAULT_CONFIG
from articulodyn.errors import (
    EmptyInputError,
    MissingSyllableError,
    WindowRangeError,
)
from articulodyn.fleshpoints import (
    CV_LABELS,
    FleshPoint,
    extract,
    qualitative_checks,
    window,
)
from articulodyn.pipeline import simulate
from articulodyn.score import make_cv_score


def neutral_frame(t_ms=0.0, jaw=0.0):
    return ArticulatorFrame(
        t_ms=t_ms,
        jaw_y=jaw,
        lower_lip_y=-1.0,
        upper_lip_y=1.0,
        tongue_tip_y=0.2,
        tongue_dorsum_y=0.8,
        lip_aperture=2.0,
        lip_compression=0.0,
        velum_aperture=0.0,
        glottal_aperture=0.0,
    )


class TestExtract:
    def test_single_frame(self):
        trajs = extract([neutral_frame()])
        assert set(trajs.series) == set(FleshPoint)
        for series in trajs.series.values():
            assert len(series) == 1
        assert trajs.series[FleshPoint.JAW][0] == 0.0
        assert trajs.series[FleshPoint.LOWER_LIP][0] == -1.0

    def test_empty_input(self):
        with pytest.raises(EmptyInputError):
            extract([])

    def test_jaw_passthrough(self):
        jaw_values = [0.0, 0.25, 0.5, 0.75, 1.0]
        frames = [neutral_frame(t_ms=float(i), jaw=j) for i, j in enumerate(jaw_values)]
        trajs = extract(frames)
        assert np.array_equal(trajs.series[FleshPoint.JAW], np.array(jaw_values))

    def test_pa_lower_lip_crosses_upper(self, nine_points):
        trajs = nine_points["pa"]
        lower = trajs.series[FleshPoint.LOWER_LIP]
        upper = trajs.series[FleshPoint.UPPER_LIP]
        plateau = slice(100, 125)
        assert np.max(lower[plateau] - upper[plateau]) > 0.0

    def test_length_preserving_and_point_complete(self, nine_points):
        for trajs in nine_points.values():
            assert set(trajs.series) == set(FleshPoint)
            lengths = {len(s) for s in trajs.series.values()}
            assert lengths == {300}


class TestWindow:
    def test_identity_slice(self, nine_points):
        trajs = nine_points["pa"]
        same = window(trajs, 0.0, trajs.span_ms)
        assert same.t0_ms == trajs.t0_ms
        for p in FleshPoint:
            assert np.array_equal(same.series[p], trajs.series[p])

    def test_sample_arithmetic(self, nine_points):
        sliced = window(nine_points["pa"], 40.0, 160.0)
        assert sliced.n_steps == 120
        assert sliced.t0_ms == 40.0
        assert sliced.times_ms[0] == 40.0
        assert sliced.times_ms[-1] == 159.0

    def test_out_of_range(self, nine_points):
        trajs = nine_points["pa"]
        with pytest.raises(WindowRangeError):
            window(trajs, -10.0, 100.0)
        with pytest.raises(WindowRangeError):
            window(trajs, 0.0, 301.0)
        with pytest.raises(WindowRangeError):
            window(trajs, 160.0, 40.0)

    def test_composition(self, nine_points):
        trajs = nine_points["ku"]
        once = window(trajs, 40.0, 160.0)
        twice = window(once, 0.0, 120.0)
        assert twice.t0_ms == once.t0_ms
        for p in FleshPoint:
            assert np.array_equal(twice.series[p], once.series[p])


class TestQualitativeChecks:
    def test_default_config_all_green(self, nine_points):
        report = qualitative_checks(nine_points)
        assert report.passed, report.failures
        assert all(report.jaw_peak_in_closure.values())
        assert report.jaw_ti_below_ta
        assert all(report.labial_saturation.values())
        assert all(report.comovement_ok.values())
        assert report.pa_final_jaw_below_preclosure

    def test_accepts_slashed_labels(self, nine_points):
        report = qualitative_checks(
            {f"/{k}/": v for k, v in nine_points.items()}
        )
        assert report.passed

    def test_missing_syllable(self, nine_points):
        incomplete = dict(nine_points)
        del incomplete["ku"]
        with pytest.raises(MissingSyllableError, match="ku"):
            qualitative_checks(incomplete)

    def test_zero_coupling_fails_comovement(self):
        cfg = dataclasses.replace(
            DEFAULT_CONFIG, jaw_to_lip_coupling=0.0, jaw_to_tongue_coupling=0.0
        )
        runs = {
            label: simulate(make_cv_score(label[0], label[1]), cfg).points
            for label in CV_LABELS
        }
        report = qualitative_checks(runs)
        assert not report.passed
        assert not all(report.comovement_ok.values())
        assert any(f.startswith("comovement") for f in report.failures)

    def test_flat_apical_support_breaks_ti_ta_ordering(self):
        # with no dorsum support and a labial-level apical jaw demand, the
        # /ti/ and /ta/ jaw plateaus coincide and the strict ordering fails
        cfg = dataclasses.replace(
            DEFAULT_CONFIG,
            dorsum_support_gain=0.0,
            jaw_cons_table={
                k: (0.5 if k.value == "apical" else v)
                for k, v in DEFAULT_CONFIG.jaw_cons_table.items()
            },
        )
        runs = {
            label: simulate(make_cv_score(label[0], label[1]), cfg).points
            for label in CV_LABELS
        }
        report = qualitative_checks(runs)
        assert not report.jaw_ti_below_ta
        assert "jaw_peak_ti_below_ta" in report.failures

    def test_report_is_deterministic(self, nine_points):
        a = qualitative_checks(nine_points).to_dict()
        b = qualitative_checks(nine_points).to_dict()
        assert a == b
