import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import K2, Q, algebra
from evokit.algebra import has_2li, is_degenerate
from evokit.matrix import is_monomial
from evokit.morphism import is_natural_basis_change
from evokit.opset import NOT_TRIVIAL, classify_operator_set
from evokit.randgen import (
    MONOMIAL,
    PROPERTIES,
    REJECTION,
    TWO_COLUMN,
    GenParams,
    _constructible_pairs,
    fuzz_properties,
    random_algebra,
    random_natural_basis_change,
    search_natural_basis_changes,
)


def test_random_algebra_is_deterministic():
    p = GenParams(seed=7)
    assert random_algebra(p) == random_algebra(p)
    assert random_algebra(p, random.Random(3)) == random_algebra(p, random.Random(3))


def test_empty_pool_rejected():
    with pytest.raises(ValueError):
        GenParams(denominators=())
    with pytest.raises(ValueError):
        GenParams(int_range=(2, 1))


@given(st.integers(0, 10**6))
def test_forced_degeneracy(seed):
    assert is_degenerate(random_algebra(GenParams(seed=seed, degeneracy_rate=1.0)))


@given(st.integers(0, 10**6))
def test_forced_proportional_pair(seed):
    E = random_algebra(GenParams(seed=seed, proportional_pair_rate=1.0))
    assert E.n >= 2 and not has_2li(E)


@settings(max_examples=25)
@given(st.integers(0, 10**6))
def test_forced_pairs_with_root_are_not_trivial(seed):
    E = random_algebra(GenParams(seed=seed, proportional_pair_rate=1.0))
    if _constructible_pairs(E):
        assert classify_operator_set(E, search_budget=5, max_attempts=50).verdict == NOT_TRIVIAL


@given(st.integers(0, 10**6), st.sampled_from([MONOMIAL, TWO_COLUMN, REJECTION]))
def test_generated_changes_are_valid(seed, strategy):
    rng = random.Random(seed)
    E = random_algebra(GenParams(seed=seed, proportional_pair_rate=0.5), rng)
    G = random_natural_basis_change(E, strategy, rng, max_attempts=200)
    if strategy == MONOMIAL:
        assert G is not None and is_monomial(G)
    if G is not None:
        assert is_natural_basis_change(E, G)


def test_two_column_mix_on_proportional_example():
    E = algebra([[1, 1], [2, 2]])
    G = random_natural_basis_change(E, TWO_COLUMN, random.Random(0))
    assert is_natural_basis_change(E, G)
    assert not is_monomial(G)
    assert random_natural_basis_change(algebra([[1, 0], [0, 1]]), TWO_COLUMN, random.Random(0)) is None


def test_rejection_on_identity_is_monomial():
    E = algebra([[1, 0], [0, 1]])
    rng = random.Random(5)
    for _ in range(30):
        G = random_natural_basis_change(E, REJECTION, rng)
        assert G is not None and is_monomial(G)


def test_unknown_strategy():
    with pytest.raises(ValueError):
        random_natural_basis_change(algebra([[1]]), "Nope", random.Random(0))


def test_search_budget_split():
    E = algebra([[1, 1], [2, 2]], K2)
    stats = {}
    out = list(search_natural_basis_changes(E, 10, random.Random(0), stats))
    assert stats["samples"] == 10
    assert len(out) == stats["valid"] <= 10
    assert all(is_natural_basis_change(E, G) for G in out)


def test_fuzz_report_is_deterministic_and_clean():
    p = GenParams(seed=3, degeneracy_rate=0.2, proportional_pair_rate=0.3)
    a = fuzz_properties(p, 15)
    b = fuzz_properties(p, 15)
    assert a.to_dict() == b.to_dict()
    assert a.ok and a.passed == 15
    assert set(a.checks) == set(PROPERTIES)
    assert a.checks["semitriviality"] > 0
    with pytest.raises(ValueError):
        fuzz_properties(p, 0)
