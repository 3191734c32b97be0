"""The set of evolution operators written in the reference basis.

Every natural-basis change ``G`` gives an operator ``A G^(2) G^-1``; all of
them have the form ``A Diag(lam)``.  The set is *trivial* when every such
``lam`` can be taken entry-wise nonzero and all ``A Diag(lam)`` with
nonzero ``lam`` occur, *semitrivial* when only the ``A Diag(lam)`` shape is
guaranteed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .algebra import EvolutionAlgebra, has_2li, is_degenerate, proportional_columns
from .errors import PreconditionError, ShapeError, TheoremViolation
from .matrix import Matrix, diag, from_columns
from .morphism import is_natural_basis_change, operator_in_new_basis
from .scalar import sqrt_in_field

TRIVIAL = "Trivial"
NOT_TRIVIAL = "SemitrivialNotTrivial"
UNDECIDED = "SemitrivialUndecided"


def scaled_form_decompose(E: EvolutionAlgebra, M: Matrix):
    """``lam`` with ``M == A Diag(lam)``, or ``None``.

    Zero columns of ``A`` get ``lam_j = 1`` (any value would do).
    """
    if M.shape != E.A.shape:
        raise ShapeError(f"expected {E.A.shape}, got {M.shape}")
    f = E.field
    lam = []
    for j in range(E.n):
        a_col, m_col = E.A.col(j), M.col(j)
        k = next((i for i, v in enumerate(a_col) if v), None)
        if k is None:
            if any(m_col):
                return None
            lam.append(f.one)
            continue
        lj = m_col[k] / a_col[k]
        if any(m != lj * a for m, a in zip(m_col, a_col)):
            return None
        lam.append(lj)
    return tuple(lam)


def scaling_membership(E: EvolutionAlgebra, lam) -> Matrix:
    """The operator of the basis ``Diag(lam)``; equals ``A Diag(lam)``."""
    f = E.field
    lam = [f(x) for x in lam]
    if len(lam) != E.n:
        raise ShapeError("scaling vector length differs from dimension")
    if not all(lam):
        raise PreconditionError("scaling vector must be entry-wise nonzero")
    G = diag(lam, f)
    if not is_natural_basis_change(E, G):
        raise TheoremViolation("scaling-membership", "Diag(lam) rejected as a natural basis", {"lam": lam})
    op = operator_in_new_basis(E, G).old_basis
    if op != E.A @ G:
        raise TheoremViolation("scaling-membership", "A G^(2) G^-1 != A Diag(lam)", {"lam": lam})
    return op


@dataclass(frozen=True)
class Witness:
    """A natural-basis change whose operator has ``lam_j == 0`` on a nonzero column."""

    G: Matrix
    operator: Matrix
    lam: tuple
    zero_column: int  # 0-based

    def to_dict(self) -> dict:
        return {
            "G": self.G.to_strings(),
            "operator": self.operator.to_strings(),
            "lambda": [str(x) for x in self.lam],
            "zero_column": self.zero_column + 1,
        }


def nontrivial_witness(E: EvolutionAlgebra, r: int, s: int):
    """Mix columns ``r`` and ``s`` (0-based) with ``beta**2 == alpha``.

    Requires ``A[:, r] == alpha A[:, s]``, ``alpha != 0``, ``A[:, s] != 0``.
    The new basis keeps ``e_i`` for ``i`` outside ``{r, s}`` and uses
    ``e_r + beta e_s`` and ``e_r - beta e_s`` at positions ``r`` and ``s``;
    its operator kills ``e_s``.  Returns ``None`` when ``beta`` is not in the
    field.
    """
    if r == s:
        raise PreconditionError("r and s must differ")
    if not any(E.A.col(s)):
        raise PreconditionError(f"column {s + 1} of A is zero")
    alpha = proportional_columns(E, r, s)
    if alpha is None or not alpha:
        raise PreconditionError(f"column {r + 1} is not a nonzero multiple of column {s + 1}")
    beta = sqrt_in_field(alpha)
    if beta is None:
        return None
    f = E.field
    cols = [[f.one if i == j else f.zero for i in range(E.n)] for j in range(E.n)]
    eta_r = [f.zero] * E.n
    eta_s = [f.zero] * E.n
    eta_r[r], eta_r[s] = f.one, beta
    eta_s[r], eta_s[s] = f.one, -beta
    cols[r], cols[s] = eta_r, eta_s
    G = from_columns(cols, f)
    if not is_natural_basis_change(E, G):
        raise TheoremViolation("witness", "mixed basis is not natural", {"A": E.A, "G": G})
    op = operator_in_new_basis(E, G).old_basis
    lam = scaled_form_decompose(E, op)
    if lam is None or lam[s]:
        raise TheoremViolation("witness", "operator does not annihilate e_s", {"A": E.A, "G": G})
    return Witness(G, op, lam, s)


def zero_lambda_on_nonzero_column(E, lam):
    """First ``j`` with ``lam_j == 0`` while ``A[:, j] != 0``, else ``None``."""
    for j, lj in enumerate(lam):
        if not lj and any(E.A.col(j)):
            return j
    return None


@dataclass
class OperatorSetClassification:
    verdict: str
    witness: Witness | None = None
    reason: str = ""
    evidence: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "reason": self.reason,
            "witness": self.witness.to_dict() if self.witness else None,
            "evidence": dict(self.evidence),
        }


def _proportional_pairs(E):
    for s in range(E.n):
        if not any(E.A.col(s)):
            continue
        for r in range(E.n):
            if r == s:
                continue
            alpha = proportional_columns(E, r, s)
            if alpha is not None and alpha:
                yield r, s, alpha


def classify_operator_set(
    E: EvolutionAlgebra, search_budget: int = 200, seed: int = 0, max_attempts: int = 2_000
) -> OperatorSetClassification:
    """Classify the operator set as trivial, provably non-trivial, or undecided.

    1. Non-degenerate with Property (2LI): trivial.
    2. Some nonzero column is a nonzero multiple of another and the needed
       square root exists: not trivial, with an explicit witness.
    3. Otherwise sample natural-basis changes; every sample must land in
       ``A Diag(lam)`` form (a failure raises :class:`TheoremViolation`), and
       a sample with ``lam_j == 0`` on a nonzero column upgrades to (2).
    Degenerate algebras are never declared trivial.
    """
    if not is_degenerate(E) and has_2li(E):
        return OperatorSetClassification(TRIVIAL, reason="non-degenerate with Property (2LI)")

    missed = []
    for r, s, alpha in _proportional_pairs(E):
        w = nontrivial_witness(E, r, s)
        if w is not None:
            return OperatorSetClassification(
                NOT_TRIVIAL,
                witness=w,
                reason=f"column {r + 1} = ({alpha}) * column {s + 1}; mixed basis kills e_{s + 1}",
            )
        missed.append(f"beta^2 = {alpha} has no root in {E.field} (columns {r + 1},{s + 1})")

    from .randgen import search_natural_basis_changes

    stats = {"samples": 0, "valid": 0, "all_nonzero_lambda": 0}
    for G in search_natural_basis_changes(E, search_budget, random.Random(seed), stats, max_attempts):
        op = operator_in_new_basis(E, G).old_basis
        lam = scaled_form_decompose(E, op)
        if lam is None:
            raise TheoremViolation("semitrivial", "operator not of the form A Diag(lam)", {"A": E.A, "G": G})
        j = zero_lambda_on_nonzero_column(E, lam)
        if j is not None:
            return OperatorSetClassification(
                NOT_TRIVIAL,
                witness=Witness(G, op, lam, j),
                reason=f"sampled basis change kills e_{j + 1}",
                evidence=stats,
            )
        if all(lam):
            stats["all_nonzero_lambda"] += 1
    reason = "no proportional column pair with a square root in the field"
    if missed:
        reason = "; ".join(missed)
    return OperatorSetClassification(UNDECIDED, reason=reason, evidence=stats)


def operator_set_rank(E: EvolutionAlgebra) -> int:
    """Rank shared by every evolution operator of the algebra."""
    return E.A.rank()
