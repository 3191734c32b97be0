"""Evolution algebras given by a structure matrix.

Column ``j`` of the structure matrix holds the coordinates of ``e_j**2`` in
the natural basis ``e_1, ..., e_n``; distinct basis vectors multiply to zero.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldMismatchError, ShapeError, TheoremViolation
from .matrix import Matrix, from_columns
from .scalar import Field


@dataclass(frozen=True)
class EvolutionAlgebra:
    A: Matrix

    def __post_init__(self):
        if not self.A.is_square:
            raise ShapeError(f"structure matrix must be square, got {self.A.shape}")

    @classmethod
    def from_rows(cls, rows, field: Field):
        return cls(Matrix(rows, field))

    @property
    def n(self) -> int:
        return self.A.rows

    @property
    def field(self) -> Field:
        return self.A.field

    def square_of_basis(self, j: int):
        """Coordinates of ``e_j**2`` (0-based ``j``)."""
        return self.A.col(j)

    def basis_vector(self, j: int):
        f = self.field
        return tuple(f.one if k == j else f.zero for k in range(self.n))

    def _vector(self, x):
        x = tuple(self.field(v) for v in x)
        if len(x) != self.n:
            raise ShapeError(f"vector of length {len(x)} in a {self.n}-dimensional algebra")
        return x


def multiply_elements(E: EvolutionAlgebra, x, y):
    """Product ``x * y`` in coordinates: ``A (x ⊙ y)``."""
    x = E._vector(x)
    y = E._vector(y)
    return E.A.apply([a * b for a, b in zip(x, y)])


def bilinear_product(E: EvolutionAlgebra, x, y):
    """``sum_j x_j y_j e_j**2`` expanded term by term.

    Deliberately avoids the matrix route so it can serve as an oracle for
    :func:`multiply_elements`.
    """
    x = E._vector(x)
    y = E._vector(y)
    out = [E.field.zero] * E.n
    for i in range(E.n):
        for j in range(E.n):
            if i != j:
                continue  # e_i * e_j = 0 off the diagonal
            coeff = x[i] * y[j]
            sq = E.square_of_basis(j)
            out = [o + coeff * s for o, s in zip(out, sq)]
    return tuple(out)


def apply_evolution_operator(E: EvolutionAlgebra, x):
    """The evolution operator ``L``: linear, ``L(e_j) = e_j**2``."""
    return E.A.apply(E._vector(x))


def is_degenerate(E: EvolutionAlgebra) -> bool:
    return any(not any(E.A.col(j)) for j in range(E.n))


def has_2li(E: EvolutionAlgebra) -> bool:
    """Every pair ``{e_i**2, e_j**2}`` with ``i != j`` is linearly independent.

    Vacuously true for ``n == 1``.
    """
    for i in range(E.n):
        for j in range(i + 1, E.n):
            if from_columns([E.A.col(i), E.A.col(j)], E.field).rank() < 2:
                return False
    return True


def has_unique_natural_basis(E: EvolutionAlgebra) -> bool:
    if is_degenerate(E):
        return False
    return has_2li(E)


def proportional_columns(E: EvolutionAlgebra, r: int, s: int):
    """``alpha`` with ``A[:, r] == alpha * A[:, s]`` when column ``s`` is nonzero."""
    col_r, col_s = E.A.col(r), E.A.col(s)
    k = next((i for i, v in enumerate(col_s) if v), None)
    if k is None:
        return None
    alpha = col_r[k] / col_s[k]
    if all(a == alpha * b for a, b in zip(col_r, col_s)):
        return alpha
    return None


def verify_support_theorem(E: EvolutionAlgebra, G: Matrix) -> bool:
    """Check the support condition for every vector of the basis given by ``G``.

    For a column ``eta`` of ``G`` with support ``S``: if ``eta**2 == 0`` all
    ``e_i**2`` (``i`` in ``S``) vanish, otherwise they span a line.  Always
    true for a genuine natural basis; a ``False`` is a counterexample.
    """
    from .morphism import is_natural_basis_change, verdict_for
    from .errors import NotNaturalBasisChange

    if not is_natural_basis_change(E, G):
        raise NotNaturalBasisChange("G is not a natural-basis change", verdict_for(E, G))
    for j in range(E.n):
        eta = G.col(j)
        support = [i for i, v in enumerate(eta) if v]
        squares = [E.A.col(i) for i in support]
        if any(multiply_elements(E, eta, eta)):
            if from_columns(squares, E.field).rank() != 1:
                return False
        elif any(any(sq) for sq in squares):
            return False
    return True


def require_same_field(E: EvolutionAlgebra, G: Matrix):
    if G.field != E.field:
        raise FieldMismatchError(f"matrix over {G.field}, algebra over {E.field}")
    if G.shape != (E.n, E.n):
        raise ShapeError(f"expected a {E.n}x{E.n} matrix, got {G.shape}")


def assert_support_theorem(E, G):
    if not verify_support_theorem(E, G):
        raise TheoremViolation("support-theorem", "support condition failed", {"A": E.A, "G": G})
