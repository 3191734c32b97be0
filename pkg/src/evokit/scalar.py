"""Scalars over Q, the tower field K_d = Q(i, sqrt(d)), and a float complex backend.

An element of K_d is stored as four rationals ``(a, b, c, e)`` standing for
``a + b*r + c*i + e*i*r`` where ``r = sqrt(d)``.  Since ``{1, r, i, i*r}`` is
a Q-basis of K_d, the tuple is canonical: equality and hashing work on it
directly.  Rational scalars reuse the same class with ``d = 0`` and only the
``a`` slot populated.

Scalar text syntax (whitespace ignored)::

    expr  := ['+'|'-'] term (('+'|'-') term)*
    term  := [coeff] ['*'? sym] ['*'? sym] ['/' uint]
    coeff := uint ['/' uint]
    sym   := 'i' | 'r'

e.g. ``"1/3+2/3*i*r"``, ``"-i/2"``, ``"r-1"``, ``"5/3"``.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatchError, PreconditionError, ScalarParseError

DEFAULT_EPSILON = 1e-9
SQRT_DENOMINATOR_BOUND = 10**6

# n with phi(n) <= 4: the only root-of-unity orders that fit in a degree-4 field
CYCLOTOMIC_ORDERS = (1, 2, 3, 4, 5, 6, 8, 10, 12)

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _is_squarefree(d: int) -> bool:
    k = 2
    while k * k <= d:
        if d % (k * k) == 0:
            return False
        k += 1
    return True


def _default_epsilon() -> float:
    env = os.environ.get("EVOKIT_EPSILON")
    if env:
        value = float(env)
        if value <= 0:
            raise ValueError("EVOKIT_EPSILON must be positive")
        return value
    return DEFAULT_EPSILON


# ---------------------------------------------------------------------------
# Exact scalars
# ---------------------------------------------------------------------------


def _make(a, b, c, e, d):
    x = object.__new__(TowerScalar)
    x.a, x.b, x.c, x.e, x.d = a, b, c, e, d
    return x


class TowerScalar:
    """Immutable element of Q (``d == 0``) or of K_d = Q(i, sqrt(d))."""

    __slots__ = ("a", "b", "c", "e", "d")

    def __init__(self, a=0, b=0, c=0, e=0, d: int = 0):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.e = Fraction(e)
        self.d = int(d)
        if self.d == 0 and (self.b or self.e):
            raise FieldMismatchError("sqrt(d) component requires a tower field")

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, TowerScalar):
            if other.d != self.d:
                raise FieldMismatchError(
                    f"cannot combine scalars of Q(i, sqrt({self.d})) and Q(i, sqrt({other.d}))"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return _make(Fraction(other), _ZERO, _ZERO, _ZERO, self.d)
        return None

    @property
    def coords(self) -> tuple:
        return (self.a, self.b, self.c, self.e)

    def key(self) -> tuple:
        return (self.a, self.b, self.c, self.e)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.e)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        if not (self.b or self.c or self.e or y.b or y.c or y.e):
            return _make(self.a + y.a, _ZERO, _ZERO, _ZERO, self.d)
        return _make(self.a + y.a, self.b + y.b, self.c + y.c, self.e + y.e, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return _make(self.a - y.a, self.b - y.b, self.c - y.c, self.e - y.e, self.d)

    def __rsub__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y - self

    def __neg__(self):
        return _make(-self.a, -self.b, -self.c, -self.e, self.d)

    def __pos__(self):
        return self

    def __mul__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        x = self
        if not (y.b or y.c or y.e):
            t = y.a
            if not (x.b or x.c or x.e):
                return _make(x.a * t, _ZERO, _ZERO, _ZERO, x.d)
            return _make(x.a * t, x.b * t, x.c * t, x.e * t, x.d)
        if not (x.b or x.c or x.e):
            t = x.a
            return _make(y.a * t, y.b * t, y.c * t, y.e * t, x.d)
        d = x.d
        # (p + q i)(p' + q' i) with p, q in Q(r)
        pp0 = x.a * y.a + d * x.b * y.b
        pp1 = x.a * y.b + x.b * y.a
        qq0 = x.c * y.c + d * x.e * y.e
        qq1 = x.c * y.e + x.e * y.c
        pq0 = x.a * y.c + d * x.b * y.e
        pq1 = x.a * y.e + x.b * y.c
        qp0 = x.c * y.a + d * x.e * y.b
        qp1 = x.c * y.b + x.e * y.a
        return _make(pp0 - qq0, pp1 - qq1, pq0 + qp0, pq1 + qp1, d)

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero scalar")
        x, d = self, self.d
        if not (x.b or x.c or x.e):
            return _make(1 / x.a, _ZERO, _ZERO, _ZERO, d)
        # norm down to Q(r): N = p^2 + q^2, then down to Q: u^2 - d v^2
        u = x.a * x.a + d * x.b * x.b + x.c * x.c + d * x.e * x.e
        v = 2 * (x.a * x.b + x.c * x.e)
        q_norm = u * u - d * v * v
        inv_n0, inv_n1 = u / q_norm, -v / q_norm
        # (p - q i) * (inv_n0 + inv_n1 r)
        return _make(
            x.a * inv_n0 + d * x.b * inv_n1,
            x.a * inv_n1 + x.b * inv_n0,
            -(x.c * inv_n0 + d * x.e * inv_n1),
            -(x.c * inv_n1 + x.e * inv_n0),
            d,
        )

    def __truediv__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return self * y.inverse()

    def __rtruediv__(self, other):
        y = self._coerce(other)
        if y is None:
            return NotImplemented
        return y * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = _make(_ONE, _ZERO, _ZERO, _ZERO, self.d)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self):
        """Complex conjugation: flips the sign of the i-components."""
        return _make(self.a, self.b, -self.c, -self.e, self.d)

    # -- comparison --------------------------------------------------------

    def __bool__(self):
        return bool(self.a or self.b or self.c or self.e)

    def __eq__(self, other):
        if isinstance(other, TowerScalar):
            return self.d == other.d and self.key() == other.key()
        if isinstance(other, (int, Fraction)):
            return self.a == other and not (self.b or self.c or self.e)
        return NotImplemented

    def __hash__(self):
        if not (self.b or self.c or self.e):
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.e, self.d))

    # -- conversion --------------------------------------------------------

    def embed(self, sign: int = 1) -> complex:
        """Complex value under the embedding ``r -> sign*sqrt(d)``."""
        s = sign * math.sqrt(self.d) if self.d else 0.0
        return complex(float(self.a) + float(self.b) * s, float(self.c) + float(self.e) * s)

    def __complex__(self):
        return self.embed()

    def digits(self) -> int:
        """Largest decimal length among numerators/denominators; a size guard."""
        best = 0
        for q in self.coords:
            if q:
                best = max(best, len(str(abs(q.numerator))), len(str(q.denominator)))
        return best

    def __str__(self):
        parts = []
        for q, sym in ((self.a, ""), (self.b, "r"), (self.c, "i"), (self.e, "i*r")):
            if not q:
                continue
            neg = q < 0
            q = -q if neg else q
            if not sym:
                body = str(q)
            elif q == 1:
                body = sym
            else:
                body = f"{q}*{sym}"
            parts.append(("-" if neg else "+", body))
        if not parts:
            return "0"
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, body in parts[1:]:
            out += f" {sgn} {body}"
        return out

    def __repr__(self):
        if self.d:
            return f"TowerScalar({str(self)!r}, d={self.d})"
        return f"TowerScalar({str(self)!r})"


# ---------------------------------------------------------------------------
# Float backend
# ---------------------------------------------------------------------------


class FloatScalar:
    """Complex double with epsilon equality.  Unhashable on purpose."""

    __slots__ = ("z", "eps")

    def __init__(self, z, eps: float = DEFAULT_EPSILON):
        self.z = complex(z)
        self.eps = eps

    def _val(self, other):
        if isinstance(other, FloatScalar):
            return other.z
        if isinstance(other, (int, float, complex)):
            return complex(other)
        if isinstance(other, Fraction):
            return complex(float(other))
        if isinstance(other, TowerScalar):
            return other.embed()
        return None

    def _wrap(self, z):
        return FloatScalar(z, self.eps)

    def __add__(self, other):
        v = self._val(other)
        return NotImplemented if v is None else self._wrap(self.z + v)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._val(other)
        return NotImplemented if v is None else self._wrap(self.z - v)

    def __rsub__(self, other):
        v = self._val(other)
        return NotImplemented if v is None else self._wrap(v - self.z)

    def __mul__(self, other):
        v = self._val(other)
        return NotImplemented if v is None else self._wrap(self.z * v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        if abs(v) <= self.eps:
            raise ZeroDivisionError("division by (numerically) zero scalar")
        return self._wrap(self.z / v)

    def __rtruediv__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        return self._wrap(v) / self

    def inverse(self):
        return self._wrap(1) / self

    def __neg__(self):
        return self._wrap(-self.z)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return self._wrap(self.z**k)

    def conjugate(self):
        return self._wrap(self.z.conjugate())

    def __bool__(self):
        return abs(self.z) > self.eps

    def __eq__(self, other):
        v = self._val(other)
        if v is None:
            return NotImplemented
        return abs(self.z - v) <= self.eps

    __hash__ = None

    def embed(self, sign: int = 1) -> complex:
        return self.z

    def __complex__(self):
        return self.z

    def digits(self) -> int:
        return 0

    def __str__(self):
        return repr(self.z)

    def __repr__(self):
        return f"FloatScalar({self.z!r})"


# ---------------------------------------------------------------------------
# Field descriptor
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Field:
    """Which scalars a matrix or algebra lives over.

    ``kind`` is ``"rational"``, ``"tower"`` or ``"float"``.  A float field may
    carry a ``d`` so that ``r`` stays meaningful in parsed input.
    """

    kind: str
    d: int = 0
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        if self.kind not in ("rational", "tower", "float"):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == "tower" and (self.d < 2 or not _is_squarefree(self.d)):
            raise ValueError(f"tower field needs a square-free d >= 2, got {self.d}")
        if self.kind == "rational" and self.d:
            raise ValueError("rational field takes no d")
        if self.kind == "float" and self.d and (self.d < 2 or not _is_squarefree(self.d)):
            raise ValueError(f"float field d must be square-free >= 2, got {self.d}")
        if not self.epsilon > 0:
            raise ValueError("epsilon must be positive")

    @classmethod
    def rational(cls):
        return cls("rational")

    @classmethod
    def tower(cls, d: int):
        return cls("tower", d)

    @classmethod
    def float(cls, epsilon=None, d: int = 0):
        return cls("float", d, _default_epsilon() if epsilon is None else epsilon)

    @property
    def is_exact(self) -> bool:
        return self.kind != "float"

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        """Coerce ``value`` (int, Fraction, str, complex, scalar) into this field."""
        if isinstance(value, str):
            return parse_scalar(value, self)
        if self.kind == "float":
            if isinstance(value, FloatScalar):
                return FloatScalar(value.z, self.epsilon)
            if isinstance(value, TowerScalar):
                return FloatScalar(value.embed(), self.epsilon)
            if isinstance(value, Fraction):
                value = float(value)
            return FloatScalar(value, self.epsilon)
        if isinstance(value, TowerScalar):
            if value.d != self.d:
                if value.d == 0 and self.d:  # Q sits inside every tower
                    return _make(value.a, _ZERO, _ZERO, _ZERO, self.d)
                raise FieldMismatchError(f"scalar {value!r} does not belong to {self}")
            return value
        if isinstance(value, (int, Fraction)):
            return _make(Fraction(value), _ZERO, _ZERO, _ZERO, self.d)
        raise FieldMismatchError(f"cannot coerce {value!r} into exact field {self}")

    def contains(self, x) -> bool:
        if self.kind == "float":
            return isinstance(x, FloatScalar)
        return isinstance(x, TowerScalar) and x.d == self.d

    def parse(self, text: str):
        return parse_scalar(text, self)

    def roots_of_unity(self, k: int) -> list:
        """All ``mu`` in this field with ``mu**k == 1``, starting with 1."""
        if k < 1:
            raise ValueError("k must be positive")
        if self.kind == "float":
            return [FloatScalar(cmath.exp(2j * cmath.pi * j / k), self.epsilon) for j in range(k)]
        order = self.root_of_unity_order()
        g = math.gcd(k, order)
        zeta = self.primitive_root_of_unity()
        step = zeta ** (order // g)
        out, cur = [], self.one
        for _ in range(g):
            out.append(cur)
            cur = cur * step
        return out

    def root_of_unity_order(self) -> int:
        """Order of the (cyclic) group of roots of unity inside an exact field."""
        if self.kind == "rational":
            return 2
        if self.kind == "tower":
            return {2: 8, 3: 12}.get(self.d, 4)
        raise PreconditionError("the float field contains roots of unity of every order")

    def primitive_root_of_unity(self):
        order = self.root_of_unity_order()
        half = Fraction(1, 2)
        if order == 2:
            return self(-1)
        if order == 4:
            return _make(_ZERO, _ZERO, _ONE, _ZERO, self.d)
        if order == 8:
            return _make(_ZERO, half, _ZERO, half, self.d)  # (1+i)/sqrt(2)
        return _make(_ZERO, half, half, _ZERO, self.d)  # sqrt(3)/2 + i/2

    def to_dict(self) -> dict:
        if self.kind == "rational":
            return {"kind": "rational"}
        if self.kind == "tower":
            return {"kind": "tower", "d": self.d}
        out = {"kind": "float", "epsilon": self.epsilon}
        if self.d:
            out["d"] = self.d
        return out

    @classmethod
    def from_dict(cls, data: dict):
        kind = data.get("kind")
        if kind == "rational":
            return cls.rational()
        if kind == "tower":
            return cls.tower(int(data["d"]))
        if kind == "float":
            return cls.float(data.get("epsilon"), int(data.get("d", 0)))
        raise ValueError(f"unknown field kind {kind!r}")

    def __str__(self):
        if self.kind == "rational":
            return "Q"
        if self.kind == "tower":
            return f"Q(i, sqrt({self.d}))"
        return f"C[float, eps={self.epsilon:g}]"


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str, d: int, allow_i: bool, field_name: str):
        self.text = text
        self.pos = 0
        self.d = d
        self.allow_i = allow_i
        self.field_name = field_name

    def error(self, msg, pos=None):
        raise ScalarParseError(msg, self.pos if pos is None else pos, self.text)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected unsigned integer")
        return int(self.text[start : self.pos])

    def divisor(self) -> int:
        pos = self.pos
        q = self.uint()
        if q == 0:
            self.error("division by zero literal", pos)
        return q

    def sym(self):
        c = self.peek()
        pos = self.pos
        self.pos += 1
        if c == "i":
            if not self.allow_i:
                self.error(f"i used under {self.field_name} field", pos)
            return _make(_ZERO, _ZERO, _ONE, _ZERO, self.d)
        if not self.d:
            self.error(f"r used under {self.field_name} field", pos)
        return _make(_ZERO, _ONE, _ZERO, _ZERO, self.d)

    def term(self):
        value = None
        c = self.peek()
        if c.isdigit():
            num = self.uint()
            value = Fraction(num)
            if self.peek() == "/" and self._digit_follows():
                self.pos += 1
                value /= self.divisor()
            value = _make(value, _ZERO, _ZERO, _ZERO, self.d)
        for _ in range(2):
            c = self.peek()
            if c == "*":
                self.pos += 1
                if self.peek() not in ("i", "r"):
                    self.error("expected 'i' or 'r' after '*'")
                s = self.sym()
            elif c in ("i", "r"):
                s = self.sym()
            else:
                break
            value = s if value is None else value * s
        if value is None:
            self.error("expected a term")
        if self.peek() == "/":
            self.pos += 1
            value = value / self.divisor()
        return value

    def _digit_follows(self) -> bool:
        j = self.pos + 1
        while j < len(self.text) and self.text[j].isspace():
            j += 1
        return j < len(self.text) and self.text[j].isdigit()

    def expr(self):
        total = _make(_ZERO, _ZERO, _ZERO, _ZERO, self.d)
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
        total = total + (self.term() if sign > 0 else -self.term())
        while True:
            c = self.peek()
            if c == "":
                return total
            if c not in ("+", "-"):
                self.error(f"unexpected character {c!r}")
            self.pos += 1
            t = self.term()
            total = total + t if c == "+" else total - t


def parse_scalar(text: str, field: Field):
    """Parse ``text`` into a scalar of ``field``.

    >>> parse_scalar("1/3 + 2/3*i*r", Field.tower(2)).coords
    (Fraction(1, 3), Fraction(0, 1), Fraction(0, 1), Fraction(2, 3))
    """
    if field.kind == "float":
        p = _Parser(text, field.d, True, "float")
        return FloatScalar(p.expr().embed(), field.epsilon)
    name = "Rational" if field.kind == "rational" else "tower"
    p = _Parser(text, field.d, field.kind == "tower", name)
    return p.expr()


# ---------------------------------------------------------------------------
# Algebraic queries
# ---------------------------------------------------------------------------


def embed_float(x) -> complex:
    """The scalar as a Python complex under ``r -> +sqrt(d)``."""
    return x.embed()


def _solve_in_span(vectors, target):
    """Coefficients c with sum c_k vectors[k] == target, or None (all Fractions)."""
    k = len(vectors)
    m = len(target)
    rows = [[vectors[j][i] for j in range(k)] + [target[i]] for i in range(m)]
    pivots = []
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, m) if rows[i][col]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    if any(rows[i][k] for i in range(r, m)):
        return None
    coeffs = [_ZERO] * k
    for i, col in enumerate(pivots):
        coeffs[col] = rows[i][k]
    return coeffs


def minimal_polynomial(x) -> list:
    """Monic minimal polynomial of ``x`` over Q, constant term first."""
    if isinstance(x, FloatScalar):
        raise PreconditionError("minimal polynomial needs an exact scalar")
    powers = [x**0]
    while True:
        nxt = powers[-1] * x
        coeffs = _solve_in_span([p.coords for p in powers], nxt.coords)
        if coeffs is not None:
            return [-c for c in coeffs] + [_ONE]
        powers.append(nxt)


def poly_eval(coeffs, x):
    """Horner evaluation of a constant-first coefficient list at ``x``."""
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _poly_divexact(num, den):
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for k in range(len(out) - 1, -1, -1):
        q = num[k + len(den) - 1] // den[-1]
        out[k] = q
        for j, c in enumerate(den):
            num[k + j] -= q * c
    assert not any(num), "inexact cyclotomic division"
    return out


def cyclotomic_polynomial(n: int) -> list:
    """Integer coefficients of the n-th cyclotomic polynomial, constant first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for k in range(1, n):
        if n % k == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(k))
    return poly


def is_root_of_unity(x):
    """Return ``(True, order)`` if ``x`` is a root of unity, else ``(False, None)``."""
    if isinstance(x, FloatScalar):
        raise PreconditionError("root-of-unity detection needs an exact scalar")
    if not x:
        raise ValueError("zero is not a root of unity")
    mp = minimal_polynomial(x)
    if any(c.denominator != 1 for c in mp):
        return False, None
    for n in CYCLOTOMIC_ORDERS:
        if [Fraction(c) for c in cyclotomic_polynomial(n)] == mp:
            return True, n
    return False, None


def sqrt_in_field(x):
    """A square root of ``x`` inside its own field, or ``None``.

    A float candidate is taken under both embeddings of sqrt(d), each
    coordinate rationalised with a bounded denominator, and kept only if it
    squares back to ``x`` exactly.
    """
    if isinstance(x, FloatScalar):
        return FloatScalar(cmath.sqrt(x.z), x.eps)
    if not x:
        return x
    d = x.d
    z1 = cmath.sqrt(x.embed(1))
    if d == 0:
        candidates = [(z1, z1)]
    else:
        z2 = cmath.sqrt(x.embed(-1))
        candidates = [(z1, z2), (z1, -z2)]
    rd = math.sqrt(d) if d else 1.0

    def rat(v):
        return Fraction(v).limit_denominator(SQRT_DENOMINATOR_BOUND)

    for p, m in candidates:
        a = rat((p.real + m.real) / 2)
        c = rat((p.imag + m.imag) / 2)
        if d:
            b = rat((p.real - m.real) / (2 * rd))
            e = rat((p.imag - m.imag) / (2 * rd))
        else:
            if c:
                return None  # Q has no i
            b = e = _ZERO
        y = _make(a, b, c, e, d)
        if y * y == x:
            return y
    return None
