import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from rho_tensor.rootdata import build_root_system

RANK_LE_3 = ["A1", "A2", "A3", "B2", "B3", "C3", "G2"]


@pytest.fixture(scope="session")
def systems():
    return {name: build_root_system(name) for name in RANK_LE_3}


@pytest.fixture(scope="session")
def a1():
    return build_root_system("A1")


@pytest.fixture(scope="session")
def a2():
    return build_root_system("A2")


@pytest.fixture(scope="session")
def b2():
    return build_root_system("B2")


@pytest.fixture(scope="session")
def g2():
    return build_root_system("G2")


@pytest.fixture(scope="session")
def sl2_affine():
    return build_root_system("A1~")


@pytest.fixture(scope="session")
def sl3_affine():
    return build_root_system("A2~")
