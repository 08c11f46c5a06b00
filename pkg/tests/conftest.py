from fractions import Fraction

import pytest

from cml_kit import Kernel
from cml_kit.models import load_model


@pytest.fixture(scope="session")
def fig1() -> Kernel:
    return load_model("fig1")


@pytest.fixture(scope="session")
def fig3n() -> Kernel:
    return load_model("fig3n")


@pytest.fixture(scope="session")
def fig3o() -> Kernel:
    return load_model("fig3o")


@pytest.fixture(scope="session")
def fig4n() -> Kernel:
    return load_model("fig4n")


@pytest.fixture(scope="session")
def fig4o() -> Kernel:
    return load_model("fig4o")


@pytest.fixture(scope="session")
def eps() -> Fraction:
    return Fraction(1, 10)
