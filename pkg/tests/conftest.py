import pytest

from diagcong.congruences import all_congruences
from diagcong.monoids import MonoidFamily, build_table, enumerate_monoid

_monoids = {}
_lattices = {}


@pytest.fixture(scope="session")
def monoid():
    """Factory for table-backed monoids, shared across the whole run."""
    def get(tag, n):
        key = (tag, n)
        if key not in _monoids:
            _monoids[key] = build_table(enumerate_monoid(MonoidFamily(tag, n)))
        return _monoids[key]
    return get


@pytest.fixture(scope="session")
def lattice(monoid):
    """Factory for brute-forced congruence lattices, shared across the run."""
    def get(tag, n):
        key = (tag, n)
        if key not in _lattices:
            _lattices[key] = all_congruences(monoid(tag, n))
        return _lattices[key]
    return get
