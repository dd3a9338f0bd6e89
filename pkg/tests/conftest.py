import pytest

from homlie.corpus import load_example
from homlie.extension import QuadraticHomLie, central_extension
from homlie.product import ambient_product, build_A


@pytest.fixture(scope="session")
def nu6():
    return load_example("nu6").document.algebra()


@pytest.fixture(scope="session")
def double12():
    return QuadraticHomLie(load_example("double12").document.algebra())


@pytest.fixture(scope="session")
def nil_hom():
    return QuadraticHomLie(load_example("nilpotent6-hom").document.algebra())


@pytest.fixture(scope="session")
def nilpotent6():
    return load_example("nilpotent6").document


@pytest.fixture(scope="session")
def extension9():
    return load_example("extension9").document.algebra()


@pytest.fixture(scope="session")
def corpus_quadratic(double12, nil_hom):
    return {"double12": double12, "nilpotent6-hom": nil_hom}


_bundles = {}


@pytest.fixture(scope="session")
def bundle_of():
    def get(q):
        if q.name not in _bundles:
            _bundles[q.name] = central_extension(q)
        return _bundles[q.name]

    return get


@pytest.fixture(scope="session")
def nil_bundle(nil_hom, bundle_of):
    return bundle_of(nil_hom)


@pytest.fixture(scope="session")
def double_bundle(double12, bundle_of):
    return bundle_of(double12)


@pytest.fixture(scope="session")
def nil_xy(nil_bundle):
    return ambient_product(nil_bundle)


@pytest.fixture(scope="session")
def nil_A(nil_bundle, nil_xy):
    return build_A(nil_bundle, nil_xy)


@pytest.fixture(scope="session")
def double_xy(double_bundle):
    return ambient_product(double_bundle)


@pytest.fixture(scope="session")
def double_A(double_bundle, double_xy):
    return build_A(double_bundle, double_xy)
