"""Homomorphisms, natural-basis changes and evolution operators under them.

A linear map ``g`` with matrix ``G`` (columns = images of ``e_j``) is an
endomorphism of the algebra with structure matrix ``A`` exactly when

* ``A (G * G) == 0``   -- images of distinct basis vectors multiply to zero, and
* ``A G^(2) == G A``   -- ``g(e_j)**2 == g(e_j**2)`` for every ``j``.

An invertible ``G`` satisfying only the first condition is a change to
another natural basis; the evolution operator of that basis is
``G^-1 A G^(2)`` in its own coordinates and ``A G^(2) G^-1`` in the old ones.
"""

from __future__ import annotations

import itertools
import random
from collections import namedtuple
from dataclasses import dataclass, field

from .algebra import EvolutionAlgebra, has_2li, is_degenerate, require_same_field
from .errors import NotAutomorphism, NotNaturalBasisChange, PreconditionError, TheoremViolation
from .matrix import Matrix, diag, hadamard_power, is_monomial, permutation_matrix, star_pairs, star_product

NOT_INVERTIBLE = "NotInvertible"
STAR_FAILED = "StarConditionFailed"
SQUARE_FAILED = "SquareConditionFailed"


@dataclass(frozen=True)
class MorphismVerdict:
    """Outcome of testing a matrix against the homomorphism criteria.

    ``failed_at`` is 1-based: a column pair for the star condition, a single
    column for the square condition.
    """

    is_natural_basis: bool
    is_endomorphism: bool
    is_automorphism: bool
    failed_condition: str | None = None
    failed_at: tuple | None = None

    def describe(self) -> str:
        if self.failed_condition is None:
            return "automorphism"
        if self.failed_condition == NOT_INVERTIBLE:
            return "NotInvertible"
        if self.failed_condition == STAR_FAILED:
            return f"StarConditionFailed at columns ({self.failed_at[0]},{self.failed_at[1]})"
        return f"SquareConditionFailed at column {self.failed_at[0]}"

    def to_dict(self) -> dict:
        return {
            "is_natural_basis": self.is_natural_basis,
            "is_endomorphism": self.is_endomorphism,
            "is_automorphism": self.is_automorphism,
            "failed_condition": self.failed_condition,
            "failed_at": list(self.failed_at) if self.failed_at else None,
            "description": self.describe(),
        }


def _first_star_violation(E, G):
    if E.n < 2:
        return None
    prod = E.A @ star_product(G, G)
    for k, pair in enumerate(star_pairs(E.n)):
        if any(prod.col(k)):
            return pair
    return None


def _first_square_violation(E, G):
    lhs = E.A @ hadamard_power(G, 2)
    rhs = G @ E.A
    for j in range(E.n):
        if lhs.col(j) != rhs.col(j):
            return j
    return None


def is_natural_basis_change(E: EvolutionAlgebra, G: Matrix) -> bool:
    """``G`` invertible and ``A (G * G) == 0``: its columns form a natural basis."""
    require_same_field(E, G)
    return _first_star_violation(E, G) is None and G.rank() == E.n


def is_endomorphism(E: EvolutionAlgebra, G: Matrix) -> MorphismVerdict:
    require_same_field(E, G)
    star = _first_star_violation(E, G)
    invertible = G.rank() == E.n
    square = _first_square_violation(E, G) if star is None else None
    if star is not None:
        return MorphismVerdict(False, False, False, STAR_FAILED, (star[0] + 1, star[1] + 1))
    if square is not None:
        return MorphismVerdict(invertible, False, False, SQUARE_FAILED, (square + 1,))
    if not invertible:
        return MorphismVerdict(False, True, False, NOT_INVERTIBLE, None)
    return MorphismVerdict(True, True, True)


verdict_for = is_endomorphism


def _require_basis_change(E, G):
    if not is_natural_basis_change(E, G):
        v = is_endomorphism(E, G)
        raise NotNaturalBasisChange(f"not a natural-basis change: {v.describe()}", v)


OperatorPair = namedtuple("OperatorPair", "new_basis old_basis")


def operator_in_new_basis(E: EvolutionAlgebra, G: Matrix) -> OperatorPair:
    """Evolution operator of the basis given by ``G``, in new and old coordinates."""
    _require_basis_change(E, G)
    Ginv = G.inverse()
    AG2 = E.A @ hadamard_power(G, 2)
    return OperatorPair(Ginv @ AG2, AG2 @ Ginv)


def same_operator_as_L(E: EvolutionAlgebra, G: Matrix) -> bool:
    """Whether the new evolution operator is the same linear map as ``L``."""
    _require_basis_change(E, G)
    return E.A @ G == E.A @ hadamard_power(G, 2)


ConjugateOperator = namedtuple("ConjugateOperator", "matrix same_map")


def conjugate_operator_of_automorphism(E: EvolutionAlgebra, G: Matrix) -> ConjugateOperator:
    """``G A G^-1`` for an automorphism ``G``; ``same_map`` iff ``AG == GA``."""
    v = is_endomorphism(E, G)
    if not v.is_automorphism:
        raise NotAutomorphism(f"not an automorphism: {v.describe()}", v)
    Ginv = G.inverse()
    conj = G @ E.A @ Ginv
    via_basis = E.A @ hadamard_power(G, 2) @ Ginv
    if conj != via_basis:
        raise TheoremViolation("conjugate-operator", "A G^(2) G^-1 != G A G^-1 for an automorphism", {"A": E.A, "G": G})
    return ConjugateOperator(conj, E.A @ G == G @ E.A)


# ---------------------------------------------------------------------------
# Diagonal automorphisms
# ---------------------------------------------------------------------------


def _diagonalize(M):
    """Integer diagonalisation ``U M V = D`` by unimodular row/column moves.

    Returns ``(d, V)`` with ``d`` the positive diagonal entries (rank many)
    and ``V`` the column transform.
    """
    M = [list(r) for r in M]
    m = len(M)
    n = len(M[0]) if m else 0
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_cols(a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]
        for row in V:
            row[a], row[b] = row[b], row[a]

    def add_col(dst, src, q):  # col_dst -= q * col_src
        for row in M:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    diag_entries = []
    t = 0
    while t < min(m, n):
        while True:
            cands = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
            if not cands:
                return diag_entries, V
            if t < m and t < n and M[t][t] and all(
                M[i][t] == 0 for i in range(t + 1, m)
            ) and all(M[t][j] == 0 for j in range(t + 1, n)):
                break
            _, i, j = min(cands)
            M[t], M[i] = M[i], M[t]
            if j != t:
                swap_cols(t, j)
            p = M[t][t]
            for i in range(t + 1, m):
                q = M[i][t] // p
                if q:
                    M[i] = [a - q * b for a, b in zip(M[i], M[t])]
            for j in range(t + 1, n):
                q = M[t][j] // p
                if q:
                    add_col(j, t, q)
        if M[t][t] < 0:
            M[t] = [-a for a in M[t]]
        diag_entries.append(M[t][t])
        t += 1
    return diag_entries, V


def _power_product(field_, bases, exponents):
    acc = field_.one
    for b, k in zip(bases, exponents):
        if k:
            acc = acc * b**k
    return acc


@dataclass
class DiagonalSolutionSet:
    """All invertible ``Diag(lam)`` automorphisms.

    The general solution is ``s * prod_l t_l ** w_l`` (entry-wise) with ``s``
    in ``solutions``, ``w_l`` in ``torus_exponents`` and arbitrary nonzero
    ``t_l``, while entries at ``free_indices`` take any nonzero value.
    Roots of unity are limited to those present in the field.
    """

    A: Matrix
    solutions: list
    free_indices: frozenset = frozenset()
    torus_exponents: list = field(default_factory=list)

    @property
    def is_finite(self) -> bool:
        return not self.free_indices and not self.torus_exponents

    def contains(self, lam) -> bool:
        f = self.A.field
        lam = [f(x) for x in lam]
        if len(lam) != self.A.rows or not all(lam):
            return False
        n = self.A.rows
        return all(lam[i] == lam[j] * lam[j] for i in range(n) for j in range(n) if self.A[i, j])

    def sample(self, rng: random.Random, pool=(-3, -2, -1, 2, 3)):
        f = self.A.field
        base = list(rng.choice(self.solutions))
        for w in self.torus_exponents:
            t = f(rng.choice(pool))
            base = [b * t**k if k else b for b, k in zip(base, w)]
        for k in self.free_indices:
            base[k] = f(rng.choice(pool))
        return tuple(base)

    def to_dict(self) -> dict:
        return {
            "solutions": [[str(x) for x in s] for s in self.solutions],
            "free_indices": sorted(k + 1 for k in self.free_indices),
            "torus_exponents": [list(w) for w in self.torus_exponents],
            "finite": self.is_finite,
        }


def diagonal_automorphisms(E: EvolutionAlgebra) -> DiagonalSolutionSet:
    """Solve ``lam_i == lam_j**2`` (for every ``a_ij != 0``) in nonzero scalars.

    The constraints are multiplicative, so they are read as integer exponent
    rows ``e_i - 2 e_j`` and diagonalised over Z: each diagonal entry ``d``
    contributes a ``d``-th root of unity, each zero direction a free torus
    parameter.
    """
    n, f = E.n, E.field
    edges = [(i, j) for i in range(n) for j in range(n) if E.A[i, j]]
    involved = sorted({i for i, _ in edges} | {j for _, j in edges})
    free = frozenset(k for k in range(n) if k not in involved)
    pos = {k: p for p, k in enumerate(involved)}
    rows = []
    for i, j in edges:
        r = [0] * len(involved)
        r[pos[i]] += 1
        r[pos[j]] -= 2
        rows.append(r)
    if not involved:
        return DiagonalSolutionSet(E.A, [tuple(f.one for _ in range(n))], free, [])

    d, V = _diagonalize(rows)
    rank = len(d)
    torus = []
    for l in range(rank, len(involved)):
        w = [0] * n
        for k in involved:
            w[k] = V[pos[k]][l]
        torus.append(tuple(w))

    choices = [f.roots_of_unity(dl) for dl in d]
    sols = []
    for mu in itertools.product(*choices):
        lam = [f.one] * n
        for k in involved:
            lam[k] = _power_product(f, mu, [V[pos[k]][l] for l in range(rank)])
        sols.append(tuple(lam))
    if f.is_exact:
        sols.sort(key=lambda s: tuple(x.key() for x in s))
    return DiagonalSolutionSet(E.A, sols, free, torus)


# ---------------------------------------------------------------------------
# Permutation and monomial automorphisms
# ---------------------------------------------------------------------------


def adjacent_transpositions(n: int, field_):
    mats = []
    for k in range(n - 1):
        perm = list(range(n))
        perm[k], perm[k + 1] = perm[k + 1], perm[k]
        mats.append(permutation_matrix(perm, field_))
    return mats


def permutation_automorphisms(E: EvolutionAlgebra, max_n: int = 7):
    """All permutations (0-based image tuples) whose matrix is an automorphism."""
    if E.n > max_n:
        raise PreconditionError(f"permutation search limited to n <= {max_n}")
    out = []
    for perm in itertools.permutations(range(E.n)):
        P = permutation_matrix(perm, E.field)
        if E.A @ P == P @ E.A:  # P*P = 0 and P^(2) = P for permutations
            out.append(perm)
    return out


def _is_scalar_plus_all_ones(A: Matrix) -> bool:
    n = A.rows
    if n == 1:
        return True
    d0, o0 = A[0, 0], A[0, 1]
    return all(A[i, j] == (d0 if i == j else o0) for i in range(n) for j in range(n))


def symmetric_group_in_aut(E: EvolutionAlgebra) -> bool:
    """Whether every permutation of the basis is an automorphism.

    True exactly when ``A = alpha J + beta I``.  For ``n <= 5`` the pattern
    test is cross-checked against the adjacent transpositions.
    """
    verdict = _is_scalar_plus_all_ones(E.A)
    if E.n <= 5:
        direct = all(is_endomorphism(E, P).is_automorphism for P in adjacent_transpositions(E.n, E.field))
        if direct != verdict:
            raise TheoremViolation(
                "symmetric-group", f"pattern test says {verdict}, transposition check says {direct}", {"A": E.A}
            )
    return verdict


def monomial_automorphism_check(E: EvolutionAlgebra, G: Matrix) -> bool:
    """Under Property (2LI) every automorphism must be monomial.

    Returns ``is_monomial(G)``; a ``False`` is a counterexample.
    """
    if is_degenerate(E) or not has_2li(E):
        raise PreconditionError("monomial check needs a non-degenerate algebra with Property (2LI)")
    v = is_endomorphism(E, G)
    if not v.is_automorphism:
        raise NotAutomorphism(f"not an automorphism: {v.describe()}", v)
    return is_monomial(G)
