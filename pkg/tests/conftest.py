"""Shared fixtures: bundled example states and frozen reference profiles."""

from importlib import resources

import pytest
from click.testing import CliRunner

from cohbound import load_state, profile, synthetic_profile


@pytest.fixture(scope="session")
def data_file():
    """Resolve a bundled data file name to a filesystem path string."""
    root = resources.files("cohbound").joinpath("data")

    def get(name: str) -> str:
        return str(root.joinpath(name))

    return get


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture(scope="session")
def ex1_state(data_file):
    return load_state(data_file("example1_product.json"))[0]


@pytest.fixture(scope="session")
def ex1_profile(ex1_state):
    return profile(ex1_state)


@pytest.fixture(scope="session")
def ex2_state(data_file):
    return load_state(data_file("example2_schmidt.json"))[0]


@pytest.fixture(scope="session")
def ex2_profile(ex2_state):
    return profile(ex2_state)


@pytest.fixture(scope="session")
def pinned_profile():
    """Profile of a product state whose factors have coherences 1, 0.2, 0.1."""
    return synthetic_profile((1.0, 0.2, 0.1), (0.32, 0.1), 1.64)
