import pytest

from articulodyn.fleshpoints import CV_LABELS
from articulodyn.pipeline import simulate
from articulodyn.score import make_cv_score


@pytest.fixture(scope="session")
def nine_runs():
    """Default-config simulation results for all nine CV syllables."""
    return {
        label: simulate(make_cv_score(label[0], label[1])) for label in CV_LABELS
    }


@pytest.fixture(scope="session")
def nine_points(nine_runs):
    return {label: run.points for label, run in nine_runs.items()}
