import pytest

from nliecoh.corpus import (
    algebra,
    all_algebras,
    deformation,
    identity_pair_deformation,
    morphism,
)


@pytest.fixture(scope="session")
def corpus_algebras():
    return all_algebras()


@pytest.fixture(scope="session")
def alg_a1():
    return algebra("a1")


@pytest.fixture(scope="session")
def alg_b1():
    return algebra("b1")


@pytest.fixture(scope="session")
def alg_b2():
    return algebra("b2")


@pytest.fixture(scope="session")
def alg_a3():
    return algebra("a3")


@pytest.fixture(scope="session")
def alg_b3():
    return algebra("b3")


@pytest.fixture(scope="session")
def phi_a1_b1():
    return morphism("a1_b1")


@pytest.fixture(scope="session")
def phi_a3_b3():
    return morphism("a3_b3")


@pytest.fixture(scope="session")
def def_order1():
    return deformation("a3_b3_1")


@pytest.fixture(scope="session")
def def_order2():
    return deformation("a3_b3_order2")


@pytest.fixture(scope="session")
def def_identity_pair():
    return identity_pair_deformation()
