"""Dense matrices over a single :class:`~evokit.scalar.Field`.

Besides the usual ring operations this module carries the entry-wise
products used throughout the library:

* ``hadamard_product(A, B)``   -- ``(a_ij * b_ij)``
* ``hadamard_power(A, k)``     -- ``(a_ij ** k)``
* ``star_product(A, B)``       -- column ``(i, j)``, ``i < j`` in lexicographic
  order, is ``A[:, i] * B[:, j]`` entry-wise.

Exact matrices pivot on the first nonzero entry; float matrices pivot on the
largest modulus.
"""

from __future__ import annotations

from collections import namedtuple
from itertools import combinations

from .errors import FieldMismatchError, ShapeError

GaussianResult = namedtuple("GaussianResult", "rank inverse determinant")


class Matrix:
    """Immutable row-major matrix.

    Build from nested rows; entries may be ints, Fractions, scalar strings
    or scalars of ``field``::

        Matrix([[1, "r"], ["-i/2", 0]], Field.tower(2))
    """

    __slots__ = ("rows", "cols", "field", "_e", "_hash")

    def __init__(self, rows, field):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ShapeError("matrix needs at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged rows")
        self.rows = len(rows)
        self.cols = width
        self.field = field
        self._e = tuple(field(v) for r in rows for v in r)
        self._hash = None

    @classmethod
    def _raw(cls, rows, cols, entries, field):
        m = object.__new__(cls)
        m.rows, m.cols, m.field, m._e, m._hash = rows, cols, field, tuple(entries), None
        return m

    # -- access ------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    @property
    def entries(self):
        return self._e

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i * self.cols + j]

    def row(self, i):
        return self._e[i * self.cols : (i + 1) * self.cols]

    def col(self, j):
        return self._e[j :: self.cols]

    def tolist(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def to_strings(self):
        return [[str(x) for x in self.row(i)] for i in range(self.rows)]

    def key(self):
        """Canonical hashable form (exact fields only)."""
        return tuple(x.key() for x in self._e)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(x == y for x, y in zip(self._e, other._e))

    def __hash__(self):
        if not self.field.is_exact:
            raise TypeError("float matrices are unhashable")
        if self._hash is None:
            self._hash = hash((self.shape, self.key()))
        return self._hash

    def is_zero(self):
        return not any(self._e)

    # -- ring operations ---------------------------------------------------

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatchError(f"field mismatch: {self.field} vs {other.field}")

    def _same_shape(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"shape mismatch: {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._same_shape(other)
        return Matrix._raw(self.rows, self.cols, [x + y for x, y in zip(self._e, other._e)], self.field)

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix._raw(self.rows, self.cols, [x - y for x, y in zip(self._e, other._e)], self.field)

    def __neg__(self):
        return Matrix._raw(self.rows, self.cols, [-x for x in self._e], self.field)

    def scale(self, c):
        c = self.field(c)
        return Matrix._raw(self.rows, self.cols, [c * x for x in self._e], self.field)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.cols != other.rows:
                raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
            ocols = [other.col(j) for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                for c in ocols:
                    acc = None
                    for x, y in zip(r, c):
                        if x and y:
                            acc = x * y if acc is None else acc + x * y
                    out.append(self.field.zero if acc is None else acc)
            return Matrix._raw(self.rows, other.cols, out, self.field)
        return self.apply(other)

    def apply(self, vec):
        """Matrix-vector product; ``vec`` is a sequence of scalars."""
        vec = [self.field(v) for v in vec]
        if len(vec) != self.cols:
            raise ShapeError(f"vector of length {len(vec)} for {self.shape} matrix")
        zero = self.field.zero
        out = []
        for i in range(self.rows):
            acc = zero
            for x, y in zip(self.row(i), vec):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return tuple(out)

    def __pow__(self, k: int):
        if not self.is_square:
            raise ShapeError("power of a non-square matrix")
        if k < 0:
            inv = self.inverse()
            if inv is None:
                raise ZeroDivisionError("negative power of a singular matrix")
            return inv ** (-k)
        result = identity(self.rows, self.field)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    @property
    def T(self):
        return Matrix._raw(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)], self.field)

    def trace(self):
        acc = self.field.zero
        for i in range(min(self.rows, self.cols)):
            acc = acc + self[i, i]
        return acc

    # -- entry-wise products ------------------------------------------------

    def hadamard(self, other):
        return hadamard_product(self, other)

    def hadamard_power(self, k):
        return hadamard_power(self, k)

    def star(self, other):
        return star_product(self, other)

    # -- elimination -------------------------------------------------------

    def gaussian_kernel(self):
        return gaussian_kernel(self)

    def rank(self):
        return _eliminate(self.tolist(), self.field)[0]

    def det(self):
        return gaussian_kernel(self).determinant

    def inverse(self):
        return gaussian_kernel(self).inverse

    def char_poly(self):
        return char_poly(self)

    def is_monomial(self):
        return is_monomial(self)

    def max_digits(self):
        return max(x.digits() for x in self._e)

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Matrix([{body}], {self.field})"


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def zeros(rows, cols, field):
    return Matrix._raw(rows, cols, [field.zero] * (rows * cols), field)


def identity(n, field):
    z, o = field.zero, field.one
    return Matrix._raw(n, n, [o if i == j else z for i in range(n) for j in range(n)], field)


def all_ones(n, field, cols=None):
    cols = n if cols is None else cols
    return Matrix._raw(n, cols, [field.one] * (n * cols), field)


def diag(values, field):
    values = [field(v) for v in values]
    n = len(values)
    z = field.zero
    return Matrix._raw(n, n, [values[i] if i == j else z for i in range(n) for j in range(n)], field)


def permutation_matrix(perm, field):
    """Matrix sending ``e_j`` to ``e_{perm[j]}`` (0-based images)."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {list(perm)}")
    z, o = field.zero, field.one
    return Matrix._raw(n, n, [o if perm[j] == i else z for i in range(n) for j in range(n)], field)


def column_matrix(vec, field):
    return Matrix([[v] for v in vec], field)


def from_columns(columns, field):
    columns = [list(c) for c in columns]
    return Matrix([[c[i] for c in columns] for i in range(len(columns[0]))], field)


def is_monomial(A: Matrix) -> bool:
    """Exactly one nonzero entry in every row and every column."""
    if not A.is_square:
        return False
    return all(sum(1 for x in A.row(i) if x) == 1 for i in range(A.rows)) and all(
        sum(1 for x in A.col(j) if x) == 1 for j in range(A.cols)
    )


# ---------------------------------------------------------------------------
# Entry-wise products
# ---------------------------------------------------------------------------


def hadamard_product(A: Matrix, B: Matrix) -> Matrix:
    A._same_shape(B)
    return Matrix._raw(A.rows, A.cols, [x * y for x, y in zip(A._e, B._e)], A.field)


def hadamard_power(A: Matrix, k: int) -> Matrix:
    if k < 1:
        raise ValueError("Hadamard power needs k >= 1")
    return Matrix._raw(A.rows, A.cols, [x**k for x in A._e], A.field)


def star_pairs(m: int):
    """Column index of the star product: pairs (i, j), i < j, lexicographic."""
    return list(combinations(range(m), 2))


def star_product(A: Matrix, B: Matrix) -> Matrix:
    A._same_shape(B)
    if A.cols < 2:
        raise ShapeError("star product needs at least two columns")
    pairs = star_pairs(A.cols)
    cols_a = [A.col(j) for j in range(A.cols)]
    cols_b = [B.col(j) for j in range(B.cols)]
    out = [cols_a[i][r] * cols_b[j][r] for r in range(A.rows) for i, j in pairs]
    return Matrix._raw(A.rows, len(pairs), out, A.field)


# ---------------------------------------------------------------------------
# Gaussian elimination
# ---------------------------------------------------------------------------


def _pivot(rows, r, col, exact):
    if exact:
        return next((i for i in range(r, len(rows)) if rows[i][col]), None)
    best, best_abs = None, 0.0
    for i in range(r, len(rows)):
        v = rows[i][col]
        if v and abs(v.z) > best_abs:
            best, best_abs = i, abs(v.z)
    return best


def _eliminate(rows, field, ncols=None):
    """Reduce ``rows`` in place to reduced row-echelon form.

    Only the first ``ncols`` columns are used for pivoting.  Returns
    ``(rank, pivot_columns, det_factor)``: the product of the pivots with
    the swap sign, which is the determinant for a square full-rank input.
    """
    m = len(rows)
    ncols = len(rows[0]) if ncols is None else ncols
    exact = field.is_exact
    det = field.one
    pivots = []
    r = 0
    for col in range(ncols):
        if r == m:
            break
        p = _pivot(rows, r, col, exact)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            det = -det
        pv = rows[r][col]
        det = det * pv
        inv = pv.inverse()
        rows[r] = [x * inv if x else x for x in rows[r]]
        for i in range(m):
            f = rows[i][col]
            if i != r and f:
                rows[i] = [a - f * b if b else a for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    return r, pivots, det


def gaussian_kernel(A: Matrix) -> GaussianResult:
    """Rank, inverse (``None`` when singular or non-square) and determinant.

    The determinant is ``None`` for non-square input.
    """
    if not A.is_square:
        return GaussianResult(A.rank(), None, None)
    n = A.rows
    f = A.field
    z, o = f.zero, f.one
    rows = [list(A.row(i)) + [o if i == j else z for j in range(n)] for i in range(n)]
    rank, _, det = _eliminate(rows, f, ncols=n)
    if rank < n:
        return GaussianResult(rank, None, z)
    inv = Matrix._raw(n, n, [x for r in rows for x in r[n:]], f)
    return GaussianResult(rank, inv, det)


def rank(A: Matrix) -> int:
    return A.rank()


def determinant_by_minors(A: Matrix):
    """Laplace expansion along the first row; an independent oracle."""
    if not A.is_square:
        raise ShapeError("determinant of a non-square matrix")
    n = A.rows
    if n == 1:
        return A[0, 0]
    acc = A.field.zero
    for j in range(n):
        if not A[0, j]:
            continue
        minor = Matrix._raw(n - 1, n - 1, [A[i, k] for i in range(1, n) for k in range(n) if k != j], A.field)
        term = A[0, j] * determinant_by_minors(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def char_poly(A: Matrix) -> list:
    """Coefficients of ``det(x I - A)``, constant term first (monic).

    Faddeev-LeVerrier recursion; valid in characteristic zero.
    """
    if not A.is_square:
        raise ShapeError("characteristic polynomial of a non-square matrix")
    n = A.rows
    f = A.field
    coeffs = [f.zero] * (n + 1)
    coeffs[n] = f.one
    ident = identity(n, f)
    M = zeros(n, n, f)
    for k in range(1, n + 1):
        M = A @ M + ident.scale(coeffs[n - k + 1])
        coeffs[n - k] = -(A @ M).trace() / k
    return coeffs


def matrix_poly_eval(coeffs, A: Matrix) -> Matrix:
    """``sum c_k A^k`` by Horner; used for Cayley-Hamilton checks."""
    n = A.rows
    acc = zeros(n, n, A.field)
    ident = identity(n, A.field)
    for c in reversed(coeffs):
        acc = acc @ A + ident.scale(c)
    return acc
