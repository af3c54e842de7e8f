"""Shared fixtures: prebuilt trajectories reused across test modules."""

from pathlib import Path

import pytest

import rrshift as rr

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


def load_bundled(name):
    return rr.load_scenario(str(SCENARIO_DIR / f"{name}.json"))


@pytest.fixture(scope="session")
def time_profile():
    # time-dependent potential with a transverse component so nothing is collinear
    return rr.PotentialProfile(axis="time", v_past=[0.0, 0.2, 0.0, 0.3],
                               x1=2.0, x2=1.0)


@pytest.fixture(scope="session")
def time_traj(time_profile):
    return rr.integrate_trajectory(time_profile, [0.0, 0.1, 0.8], 1.0)


@pytest.fixture(scope="session")
def spatial_traj():
    return load_bundled("spatial").build()


@pytest.fixture(scope="session")
def collinear_traj():
    return load_bundled("collinear").build()


@pytest.fixture(scope="session")
def free_traj(time_traj):
    return rr.free_twin(time_traj)
