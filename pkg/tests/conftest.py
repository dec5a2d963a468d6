import pytest
from hypothesis import HealthCheck, settings

from cliffcode.rep import builtin_group, subgroup_from_tokens

settings.register_profile(
    "suite", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("suite")


@pytest.fixture(scope="session")
def pauli1():
    return builtin_group("pauli:1")


@pytest.fixture(scope="session")
def pauli2():
    return builtin_group("pauli:2")


@pytest.fixture(scope="session")
def weyl31():
    return builtin_group("weyl:3:1")


@pytest.fixture(scope="session")
def pauli5():
    return builtin_group("pauli:5")


@pytest.fixture(scope="session")
def five_qubit_subgroup(pauli5):
    return subgroup_from_tokens(
        pauli5, ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ", "-IIIII"])
