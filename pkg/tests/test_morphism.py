import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import K2, K3, Q, algebra, reflection_example, rotation_example, mat
from evokit.errors import NotAutomorphism, NotNaturalBasisChange, PreconditionError
from evokit.matrix import diag, hadamard_power, identity, permutation_matrix
from evokit.morphism import (
    adjacent_transpositions,
    conjugate_operator_of_automorphism,
    diagonal_automorphisms,
    is_endomorphism,
    is_natural_basis_change,
    monomial_automorphism_check,
    operator_in_new_basis,
    permutation_automorphisms,
    same_operator_as_L,
    symmetric_group_in_aut,
)
from strategies import algebras, matrices, vectors

OMEGA = "-1/2 + 1/2*i*r"
OMEGA_BAR = "-1/2 - 1/2*i*r"


def test_natural_basis_change_examples():
    assert not is_natural_basis_change(algebra([[1, 0], [0, 1]]), mat([[1, 1], [0, 1]]))
    assert is_natural_basis_change(algebra([[1, 1], [2, 2]]), mat([[1, -1], [1, 1]]))
    assert not is_natural_basis_change(algebra([[1, 0], [0, 1]]), mat([[1, 0], [0, 0]]))


def test_verdict_messages():
    v = is_endomorphism(algebra([[1, 0], [0, 1]]), mat([[1, 1], [0, 1]]))
    assert v.describe() == "StarConditionFailed at columns (1,2)"
    v = is_endomorphism(algebra([[1]]), mat([[2]]))
    assert not v.is_endomorphism and v.describe() == "SquareConditionFailed at column 1"
    v = is_endomorphism(algebra([[0, 0], [0, 0]]), mat([[1, 1], [1, 1]]))
    assert v.is_endomorphism and not v.is_automorphism and v.describe() == "NotInvertible"
    assert v.to_dict()["failed_condition"] == "NotInvertible"


def test_two_operator_example_is_automorphism():
    E, G = reflection_example()
    assert is_endomorphism(E, G).is_automorphism
    conj = conjugate_operator_of_automorphism(E, G)
    assert conj.matrix == E.A @ G
    # the closed form at (a, b, c, d) = (1, 2, 3, 4)
    assert conj.matrix == mat([["r", 0, 2], ["2-r", 0, "-2+2*r"], ["3*r", 0, 4]], K2)
    assert not conj.same_map


def test_rank_one_example_operator():
    E, G = rotation_example()
    v = is_endomorphism(E, G)
    assert v.is_automorphism
    assert G @ E.A == E.A
    assert E.A @ hadamard_power(G, 2) == E.A
    expected = mat(
        [
            ["5/3 - 4/3*i", 1, "-5/3 - 4/3*i"],
            ["-4/6 - 5/6*i", "-i/2", "-4/6 + 5/6*i"],
            ["-4/6 - 5/6*i", "-i/2", "-4/6 + 5/6*i"],
        ],
        K2,
    )
    assert conjugate_operator_of_automorphism(E, G).matrix == expected
    pair = operator_in_new_basis(E, G)
    assert pair.old_basis == expected
    assert pair.new_basis == G.inverse() @ expected @ G


def test_change_of_basis_examples():
    E = algebra([[1, 0], [2, 0]])
    pair = operator_in_new_basis(E, mat([[0, 3], [1, 5]]))
    assert pair.old_basis == mat([[3, 0], [6, 0]])
    E = algebra([[1, 1], [2, 2]])
    G = mat([[1, -1], [1, 1]])
    assert operator_in_new_basis(E, G).old_basis == mat([[0, 2], [0, 4]])
    assert not same_operator_as_L(E, G)
    assert same_operator_as_L(E, identity(2, Q))
    with pytest.raises(NotNaturalBasisChange):
        operator_in_new_basis(algebra([[1, 0], [0, 1]]), mat([[1, 1], [0, 1]]))


@given(st.data())
def test_diagonal_scaling_is_natural_and_criterion_matches_pointwise(data):
    E = data.draw(algebras(n=3))
    G = data.draw(matrices(n=3))
    v = is_endomorphism(E, G)
    # pointwise oracle: g(xy) == g(x) g(y) on random vectors and on basis pairs
    from evokit.algebra import multiply_elements as mul

    def hom_on(x, y):
        return G @ mul(E, x, y) == mul(E, G @ x, G @ y)

    basis = [E.basis_vector(j) for j in range(3)]
    pointwise = all(hom_on(x, y) for x in basis for y in basis)
    assert pointwise == v.is_endomorphism
    if v.is_endomorphism:
        x = data.draw(vectors(3))
        y = data.draw(vectors(3))
        assert hom_on(x, y)


def _brute_force_diagonal(A, pool):
    n = A.rows
    for lam in itertools.product(pool, repeat=n):
        if all(lam[i] == lam[j] * lam[j] for i in range(n) for j in range(n) if A[i, j]):
            yield lam


def test_diagonal_examples():
    S = diagonal_automorphisms(algebra([[1, 1], [0, 0]]))
    assert S.is_finite
    assert set(S.solutions) == {(Q(1), Q(1)), (Q(1), Q(-1))}
    E = algebra([[0, 1], [1, 0]], K3)
    S = diagonal_automorphisms(E)
    assert (K3(OMEGA), K3(OMEGA_BAR)) in S.solutions
    assert is_endomorphism(E, diag([K3(OMEGA), K3(OMEGA_BAR)], K3)).is_automorphism
    # a 3-cycle over K2: lam^7 = 1 has no nontrivial root there
    E = algebra([[0, 1, 0], [0, 0, 1], [1, 0, 0]], K2)
    assert diagonal_automorphisms(E).solutions == [(K2.one,) * 3]


@pytest.mark.parametrize("field", [Q, K2, K3])
@given(data=st.data())
def test_diagonal_solver_against_brute_force(field, data):
    E = data.draw(algebras(n=data.draw(st.integers(1, 3))))
    E = algebra(E.A.tolist(), field) if field is not Q else E
    S = diagonal_automorphisms(E)
    roots = field.roots_of_unity(24) if field is not Q else [Q(1), Q(-1)]
    pool = list(roots) + [field(2), field("1/2"), field(-3)]
    brute = set(_brute_force_diagonal(E.A, pool))
    for lam in S.solutions:
        assert S.contains(lam)
        assert is_endomorphism(E, diag(lam, field)).is_automorphism
    if S.is_finite:
        assert brute == set(S.solutions)
    else:
        assert set(S.solutions) <= set(_brute_force_diagonal(E.A, roots)) | set(S.solutions)
        for lam in brute:
            assert S.contains(lam)
        rng = random.Random(0)
        for _ in range(5):
            lam = S.sample(rng)
            assert S.contains(lam)


@given(algebras(n=3))
def test_real_diagonal_identity(E):
    if any(not any(E.A.row(i)) for i in range(E.n)):
        return
    assert diagonal_automorphisms(E).solutions == [(Q.one,) * 3]
    assert diagonal_automorphisms(E).is_finite


def test_symmetric_group():
    E = algebra([[5 if i == j else 2 for j in range(4)] for i in range(4)])
    assert symmetric_group_in_aut(E)
    assert all(is_endomorphism(E, P).is_automorphism for P in adjacent_transpositions(4, Q))
    rows = E.A.tolist()
    rows[0][1] = Q(5)
    assert not symmetric_group_in_aut(algebra(rows))
    assert not symmetric_group_in_aut(algebra([[1, 2], [3, 4]]))
    assert symmetric_group_in_aut(algebra([[7]]))


@given(algebras())
def test_symmetric_group_matches_permutation_search(E):
    import math

    assert symmetric_group_in_aut(E) == (len(permutation_automorphisms(E)) == math.factorial(E.n))


def test_monomial_check():
    E = algebra([[1, 2], [3, 4]])
    assert monomial_automorphism_check(E, identity(2, Q))
    with pytest.raises(PreconditionError):
        monomial_automorphism_check(algebra([[1, 1], [2, 2]]), identity(2, Q))
    with pytest.raises(NotAutomorphism):
        monomial_automorphism_check(E, mat([[2, 0], [0, 1]]))
    E = algebra([[5 if i == j else 2 for j in range(3)] for i in range(3)])
    assert monomial_automorphism_check(E, permutation_matrix([1, 2, 0], Q))


@given(algebras(n=3))
def test_automorphisms_under_2li_are_monomial(E):
    from evokit.algebra import has_2li, is_degenerate

    if is_degenerate(E) or not has_2li(E):
        return
    for perm in permutation_automorphisms(E):
        for lam in diagonal_automorphisms(E).solutions:
            G = permutation_matrix(perm, Q) @ diag(lam, Q)
            if is_endomorphism(E, G).is_automorphism:
                assert monomial_automorphism_check(E, G)
