"""Orbits ``G^n A G^-n`` of the structure matrix under an automorphism ``G``.

Each member is the reference-basis matrix of the evolution operator of the
natural basis ``g^n(e_1), ..., g^n(e_n)``.  Finite orbits are found by exact
cycle detection; infinite ones are certified through the eigenvalues of
``G`` when ``G A == A``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

import numpy as np

from .algebra import EvolutionAlgebra
from .errors import NotAutomorphism
from .matrix import Matrix, char_poly
from .morphism import is_endomorphism
from .scalar import SQRT_DENOMINATOR_BOUND, is_root_of_unity, minimal_polynomial, poly_eval, sqrt_in_field

FINITE = "Finite"
INFINITE = "InfiniteCertified"
UNDECIDED = "Undecided"

NON_INTEGRAL = "NonIntegralCoefficients"
NOT_CYCLOTOMIC = "NotCyclotomic"

DEFAULT_MAX_STEPS = 256
MAX_ENTRY_DIGITS = 10_000
MAX_CERTIFY_DIM = 4


# ---------------------------------------------------------------------------
# Roots of polynomials inside the field
# ---------------------------------------------------------------------------


def _deflate(coeffs, root):
    """Divide by ``(x - root)``; coefficients constant first."""
    n = len(coeffs) - 1
    out = [None] * n
    acc = coeffs[n]
    for k in range(n - 1, -1, -1):
        out[k] = acc
        acc = coeffs[k] + acc * root
    return out


def _rationalize(v: float) -> Fraction:
    return Fraction(v).limit_denominator(SQRT_DENOMINATOR_BOUND)


def _numeric_root_candidates(coeffs, field_):
    """Exact field elements rebuilt from floating roots under both embeddings."""
    d = field_.d
    hi_first = [complex(c.embed(1)) for c in reversed(coeffs)]
    roots_plus = np.roots(hi_first)
    if d:
        roots_minus = np.roots([complex(c.embed(-1)) for c in reversed(coeffs)])
    else:
        roots_minus = roots_plus
    rd = d**0.5 if d else 1.0
    for z1, z2 in product(roots_plus, roots_minus):
        if not d and abs(z1 - z2) > 1e-6:
            continue
        a = _rationalize((z1.real + z2.real) / 2)
        c = _rationalize((z1.imag + z2.imag) / 2)
        if d:
            b = _rationalize((z1.real - z2.real) / (2 * rd))
            e = _rationalize((z1.imag - z2.imag) / (2 * rd))
            y = field_(a) + field_(b) * field_("r") + field_(c) * field_("i") + field_(e) * field_("i*r")
        else:
            if c:
                continue
            y = field_(a)
        yield y


def roots_in_field(coeffs, field_):
    """All roots (with multiplicity) of a polynomial that splits in ``field_``.

    Returns ``None`` when the polynomial does not split into linear factors
    over the field (or a root escapes the bounded-denominator search).
    """
    coeffs = [field_(c) for c in coeffs]
    while len(coeffs) > 1 and not coeffs[-1]:
        coeffs.pop()
    lead = coeffs[-1]
    coeffs = [c / lead for c in coeffs]
    roots = []
    while len(coeffs) > 1:
        deg = len(coeffs) - 1
        if deg == 1:
            roots.append(-coeffs[0])
            break
        if deg == 2:
            c0, c1 = coeffs[0], coeffs[1]
            s = sqrt_in_field(c1 * c1 - 4 * c0)
            if s is None:
                return None
            roots += [(-c1 + s) / 2, (-c1 - s) / 2]
            break
        found = next((y for y in _numeric_root_candidates(coeffs, field_) if not poly_eval(coeffs, y)), None)
        if found is None:
            return None
        roots.append(found)
        coeffs = _deflate(coeffs, found)
    return roots


# ---------------------------------------------------------------------------
# Certificates and reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InfinityCertificate:
    """Why ``G^n A G^-n`` never repeats.

    With ``G A == A`` the orbit is ``A G^-n``.  A repeat would force
    ``A (G^k - I) == 0``; diagonalising ``G`` (distinct eigenvalues) this
    kills every eigenvector whose eigenvalue ``mu`` has ``mu**k != 1``.  If no
    eigenvalue other than 1 is a root of unity that means ``A G == A``,
    which the side conditions rule out.
    """

    eigenvalue: object
    minimal_poly: tuple
    reason: str
    eigenvalues: tuple
    side_conditions: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "eigenvalue": str(self.eigenvalue),
            "minimal_poly": [str(c) for c in self.minimal_poly],
            "reason": self.reason,
            "eigenvalues": [str(x) for x in self.eigenvalues],
            "side_conditions": dict(self.side_conditions),
        }


@dataclass
class OrbitReport:
    status: str
    distinct_count: int
    pre_period: int | None = None
    period: int | None = None
    bound: int | None = None
    certificate: InfinityCertificate | None = None
    diagnostic: str = ""
    members: list = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        out = {
            "status": self.status,
            "distinct_count": self.distinct_count,
            "pre_period": self.pre_period,
            "period": self.period,
            "bound": self.bound,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "diagnostic": self.diagnostic,
        }
        if self.status == FINITE:
            out["orbit"] = [m.to_strings() for m in self.members]
        return out


def _require_automorphism(E, G):
    v = is_endomorphism(E, G)
    if not v.is_automorphism:
        raise NotAutomorphism(f"not an automorphism: {v.describe()}", v)


def certify_infinite_orbit(E: EvolutionAlgebra, G: Matrix):
    """Certificate that the orbit is infinite, or ``None`` if the test does not apply.

    ``None`` is not a claim of finiteness.  Requires an exact field and
    ``n <= 4``.
    """
    _require_automorphism(E, G)
    if not E.field.is_exact or E.n > MAX_CERTIFY_DIM:
        return None
    A = E.A
    if G @ A != A or A @ G == A:
        return None
    cp = char_poly(G)
    roots = roots_in_field(cp, E.field)
    if roots is None:
        return None
    distinct = len({r.key() for r in roots}) == len(roots)
    if not distinct:
        return None
    chosen = None
    for mu in roots:
        if mu == 1:
            continue
        unity, _ = is_root_of_unity(mu)
        if unity:
            return None
        if chosen is None:
            chosen = mu
    if chosen is None:
        return None
    mp = minimal_polynomial(chosen)
    reason = NON_INTEGRAL if any(c.denominator != 1 for c in mp) else NOT_CYCLOTOMIC
    sides = {
        "GA_equals_A": True,
        "AG_differs_from_A": True,
        "distinct_eigenvalues": True,
        "char_poly": [str(c) for c in cp],
        "non_unit_eigenvalues_not_roots_of_unity": True,
    }
    return InfinityCertificate(chosen, tuple(mp), reason, tuple(roots), sides)


def orbit_explore(E: EvolutionAlgebra, G: Matrix, max_steps: int = DEFAULT_MAX_STEPS) -> OrbitReport:
    """Iterate ``M_0 = A``, ``M_{k+1} = G M_k G^-1`` looking for a repeat.

    At most ``max_steps`` distinct matrices are kept.  On a repeat the
    report is ``Finite`` with ``M_pre == M_{pre + period}``; otherwise an
    infinity certificate is attempted, and failing that the result is
    ``Undecided``.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    _require_automorphism(E, G)
    Ginv = G.inverse()
    exact = E.field.is_exact
    members = [E.A]
    index = {E.A: 0} if exact else None
    current = E.A
    while True:
        current = G @ current @ Ginv
        if exact:
            hit = index.get(current)
        else:
            hit = next((k for k, m in enumerate(members) if m == current), None)
        if hit is not None:
            return OrbitReport(FINITE, len(members), pre_period=hit, period=len(members) - hit, members=members)
        if len(members) >= max_steps:
            break
        if exact and current.max_digits() > MAX_ENTRY_DIGITS:
            return OrbitReport(
                UNDECIDED,
                len(members),
                bound=max_steps,
                diagnostic=f"entry size exceeded {MAX_ENTRY_DIGITS} digits after {len(members)} steps",
                members=members,
            )
        if exact:
            index[current] = len(members)
        members.append(current)
    cert = certify_infinite_orbit(E, G) if exact else None
    if cert is not None:
        return OrbitReport(INFINITE, len(members), bound=max_steps, certificate=cert, members=members)
    diag_msg = "no repeat found and no infinity certificate applies"
    if not exact:
        diag_msg = "float backend never certifies infinite orbits"
    return OrbitReport(UNDECIDED, len(members), bound=max_steps, diagnostic=diag_msg, members=members)
