from fractions import Fraction as Fr

import pytest

from conftest import K2, K3, Q, algebra, reflection_example, rotation_example, mat
from evokit.errors import NotAutomorphism
from evokit.matrix import char_poly, diag, identity, permutation_matrix
from evokit.morphism import operator_in_new_basis
from evokit.orbit import (
    FINITE,
    INFINITE,
    NON_INTEGRAL,
    UNDECIDED,
    certify_infinite_orbit,
    orbit_explore,
    roots_in_field,
)
from evokit.scalar import Field, poly_eval


def test_identity_orbit():
    E = algebra([[1, 2], [3, 4]])
    rep = orbit_explore(E, identity(2, Q))
    assert rep.status == FINITE and rep.period == 1 and rep.distinct_count == 1
    assert certify_infinite_orbit(E, identity(2, Q)) is None


def test_reflection_orbit_is_period_two():
    E, G = reflection_example()
    rep = orbit_explore(E, G)
    assert rep.status == FINITE
    assert rep.period == 2 and rep.pre_period == 0
    assert rep.members == [E.A, E.A @ G]
    assert certify_infinite_orbit(E, G) is None
    assert set(rep.to_dict()) >= {"orbit", "status", "period"}


def test_replayed_period_matches():
    E = algebra([[5 if i == j else 2 for j in range(3)] for i in range(3)])
    P = permutation_matrix([1, 2, 0], Q)
    rep = orbit_explore(E, P)
    assert rep.status == FINITE
    M = E.A
    seq = [M]
    for _ in range(rep.pre_period + rep.period):
        M = P @ M @ P.inverse()
        seq.append(M)
    assert seq[rep.pre_period] == seq[rep.pre_period + rep.period]


def test_rank_one_example_is_infinite():
    E, G = rotation_example()
    rep = orbit_explore(E, G, max_steps=200)
    assert rep.status == INFINITE
    assert rep.distinct_count == 200
    assert len(set(rep.members)) == 200
    cert = rep.certificate
    assert cert.eigenvalue == K2("1/3 + 2/3*i*r")
    assert list(cert.minimal_poly) == [1, Fr(-2, 3), 1]
    assert cert.reason == NON_INTEGRAL
    assert poly_eval(char_poly(G), cert.eigenvalue) == 0
    assert "orbit" not in rep.to_dict()


def test_orbit_members_are_operators_of_powers():
    E, G = rotation_example()
    rep = orbit_explore(E, G, max_steps=6)
    for n in (1, 3, 5):
        assert operator_in_new_basis(E, G**n).old_basis == rep.members[n]


def test_commuting_and_zero_structure_orbits():
    # Diag(1, 2) commutes with A, so the orbit is a single point
    E = algebra([[1, 0], [0, 0]])
    G = diag([1, 2], Q)
    rep = orbit_explore(E, G, max_steps=10)
    assert rep.status == FINITE  # G commutes with A here
    E = algebra([[0, 0], [0, 0]])
    G = mat([[1, 1], [0, 1]])
    rep = orbit_explore(E, G, max_steps=10)
    assert rep.status == FINITE and rep.distinct_count == 1


def test_undecided_report_carries_bound():
    E = algebra([[0, 1], [0, 0]])
    G = diag([4, 2], Q)
    # lam_1 = lam_2^2 holds, so Diag(4, 2) is an automorphism
    rep = orbit_explore(E, G, max_steps=12)
    assert rep.status == UNDECIDED
    assert rep.bound == 12 and rep.distinct_count == 12
    assert rep.diagnostic


def test_float_backend_never_certifies():
    F = Field.float(d=2)
    E, G = rotation_example()
    Ef = algebra(E.A.tolist(), F)
    Gf = mat(G.tolist(), F)
    rep = orbit_explore(Ef, Gf, max_steps=20)
    assert rep.status == UNDECIDED


def test_not_automorphism_rejected():
    with pytest.raises(NotAutomorphism):
        orbit_explore(algebra([[1]]), mat([[2]]))
    with pytest.raises(ValueError):
        orbit_explore(algebra([[1]]), mat([[1]]), max_steps=0)


def test_roots_in_field():
    # (x - 1)(x - 2)(x + 3)
    roots = roots_in_field([6, -7, 0, 1], Q)
    assert set(roots) == {Q(-3), Q(1), Q(2)}
    # x^2 + 1 splits over the tower, not over Q
    assert roots_in_field([1, 0, 1], Q) is None
    assert set(roots_in_field([1, 0, 1], K2)) == {K2("i"), K2("-i")}
    # x^2 + x + 1 over K3
    assert set(roots_in_field([1, 1, 1], K3)) == {K3("-1/2 + 1/2*i*r"), K3("-1/2 - 1/2*i*r")}
    E, G = rotation_example()
    roots = roots_in_field(char_poly(G), K2)
    assert set(roots) == {K2(1), K2("1/3 + 2/3*i*r"), K2("1/3 - 2/3*i*r")}
