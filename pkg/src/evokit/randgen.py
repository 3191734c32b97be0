"""Seeded generators for algebras and natural-basis changes, and the fuzz harness.

All randomness flows through :class:`random.Random` (Mersenne Twister).
Per-instance generators are seeded with the string ``f"{seed}:{index}"``,
which CPython hashes with SHA-512, so reports are reproducible across runs
and platforms.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import algebra as alg
from . import morphism as mor
from . import opset
from .errors import EvokitError, TheoremViolation
from .matrix import Matrix, diag, from_columns, hadamard_power, identity, permutation_matrix
from .scalar import Field, sqrt_in_field

MONOMIAL = "MonomialDiagPerm"
TWO_COLUMN = "TwoColumnMix"
REJECTION = "RejectionSample"
STRATEGIES = (MONOMIAL, TWO_COLUMN, REJECTION)

DEFAULT_FIELDS = (Field.rational(), Field.tower(2), Field.tower(3))


@dataclass(frozen=True)
class GenParams:
    n_range: tuple = (2, 4)
    int_range: tuple = (-3, 3)
    denominators: tuple = (1, 2, 3)
    zero_rate: float = 0.3
    irrational_rate: float = 0.1
    fields: tuple = DEFAULT_FIELDS
    degeneracy_rate: float = 0.0
    proportional_pair_rate: float = 0.0
    seed: int = 0

    def __post_init__(self):
        lo, hi = self.int_range
        if lo > hi or not self.denominators or not self.fields:
            raise ValueError("empty entry pool")
        if self.n_range[0] < 1 or self.n_range[0] > self.n_range[1]:
            raise ValueError(f"bad n_range {self.n_range}")


def _rational(p: GenParams, rng, nonzero=False):
    lo, hi = p.int_range
    while True:
        q = Fraction(rng.randint(lo, hi), rng.choice(p.denominators))
        if q or not nonzero:
            return q


def random_scalar(p: GenParams, f: Field, rng, nonzero=False):
    while True:
        x = f(_rational(p, rng))
        if f.kind == "tower":
            for unit in ("r", "i", "i*r"):
                if rng.random() < p.irrational_rate:
                    x = x + _rational(p, rng) * f(unit)
        if x or not nonzero:
            return x


def random_algebra(p: GenParams, rng: random.Random | None = None) -> alg.EvolutionAlgebra:
    """Draw a structure matrix; forced zero columns / proportional pairs per ``p``."""
    rng = random.Random(p.seed) if rng is None else rng
    f = rng.choice(p.fields)
    n = rng.randint(*p.n_range)
    cols = [
        [f.zero if rng.random() < p.zero_rate else random_scalar(p, f, rng) for _ in range(n)] for _ in range(n)
    ]
    pair = ()
    if n >= 2 and rng.random() < p.proportional_pair_rate:
        r, s = rng.sample(range(n), 2)
        if not any(cols[s]):
            cols[s][rng.randrange(n)] = random_scalar(p, f, rng, nonzero=True)
        alpha = random_scalar(p, f, rng, nonzero=True)
        if rng.random() < 0.5:
            alpha = alpha * alpha  # keeps the square root constructible
        cols[r] = [alpha * v for v in cols[s]]
        pair = (r, s)
    if rng.random() < p.degeneracy_rate:
        others = [j for j in range(n) if j not in pair] or list(range(n))
        cols[rng.choice(others)] = [f.zero] * n
    return alg.EvolutionAlgebra(from_columns(cols, f))


# ---------------------------------------------------------------------------
# Natural-basis changes
# ---------------------------------------------------------------------------


def _small_nonzero(E, rng):
    return E.field(rng.choice((-3, -2, -1, 1, 2, 3, Fraction(1, 2), Fraction(-1, 3))))


def _monomial(E, rng):
    perm = list(range(E.n))
    rng.shuffle(perm)
    lam = [_small_nonzero(E, rng) for _ in range(E.n)]
    return diag(lam, E.field) @ permutation_matrix(perm, E.field)


def _constructible_pairs(E):
    out = []
    for s in range(E.n):
        if not any(E.A.col(s)):
            continue
        for r in range(E.n):
            if r != s:
                alpha = alg.proportional_columns(E, r, s)
                if alpha:
                    beta = sqrt_in_field(alpha)
                    if beta is not None:
                        out.append((r, s, beta))
    return out


def _two_column_mix(E, rng):
    pairs = _constructible_pairs(E)
    if not pairs:
        return None
    r, s, beta = rng.choice(pairs)
    G = identity(E.n, E.field).tolist()
    G[s][r] = beta
    G[r][s] = E.field.one
    G[s][s] = -beta
    G[r][r] = E.field.one
    G = Matrix(G, E.field)
    perm = list(range(E.n))
    rng.shuffle(perm)
    scale = diag([_small_nonzero(E, rng) for _ in range(E.n)], E.field)
    return G @ scale @ permutation_matrix(perm, E.field)


def _orthogonal(E, x, y):
    support = [j for j in range(E.n) if x[j] and y[j]]
    if not support:
        return True
    return not any(alg.multiply_elements(E, x, y))


RESTART_AFTER = 25


def _rejection(E, rng, max_attempts):
    """Draw columns one at a time, rejecting any that breaks orthogonality.

    Entries come from {-1, 0, 1} (and occasionally +-2).  ``max_attempts``
    bounds the total number of column draws.  A partial basis that keeps
    rejecting candidates is thrown away and restarted.
    """
    f = E.field
    attempts = 0
    while attempts < max_attempts:
        cols = []
        misses = 0
        while len(cols) < E.n and attempts < max_attempts and misses < RESTART_AFTER:
            attempts += 1
            c = [f(rng.choice((-1, 0, 0, 1, 1, 2, -2, 0))) for _ in range(E.n)]
            if any(c) and all(_orthogonal(E, c, prev) for prev in cols):
                cols.append(c)
                misses = 0
            else:
                misses += 1
        if len(cols) == E.n:
            G = from_columns(cols, f)
            if G.rank() == E.n:
                return G
    return None


def random_natural_basis_change(E, strategy: str, rng, max_attempts: int = 10_000):
    """A random valid natural-basis change, or ``None`` if the strategy has none."""
    rng = random.Random(rng) if not isinstance(rng, random.Random) else rng
    if strategy == MONOMIAL:
        G = _monomial(E, rng)
    elif strategy == TWO_COLUMN:
        G = _two_column_mix(E, rng)
    elif strategy == REJECTION:
        G = _rejection(E, rng, max_attempts)
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    if G is not None and not mor.is_natural_basis_change(E, G):
        raise TheoremViolation("generator", f"{strategy} produced an invalid basis change", {"A": E.A, "G": G})
    return G


def search_natural_basis_changes(E, budget: int, rng, stats=None, max_attempts: int = 2_000):
    """Yield up to ``budget`` valid changes, split 20/40/40 across strategies."""
    stats = {} if stats is None else stats
    stats.setdefault("samples", 0)
    stats.setdefault("valid", 0)
    n_mono = budget // 5
    n_mix = (2 * budget) // 5
    n_rej = budget - n_mono - n_mix
    if not _constructible_pairs(E):
        n_rej += n_mix
        n_mix = 0
    plan = [MONOMIAL] * n_mono + [TWO_COLUMN] * n_mix + [REJECTION] * n_rej
    for strategy in plan:
        stats["samples"] += 1
        G = random_natural_basis_change(E, strategy, rng, max_attempts)
        if G is not None:
            stats["valid"] += 1
            yield G


# ---------------------------------------------------------------------------
# Fuzz harness
# ---------------------------------------------------------------------------

PROPERTIES = (
    "product-diagram",
    "endomorphism-criterion",
    "support-theorem",
    "rank-invariance",
    "scaling-membership",
    "semitriviality",
    "monomial-under-2li",
    "conjugate-operator",
    "diagonal-automorphisms",
    "real-diagonal-identity",
    "witness",
    "classification",
)


class _Fail(Exception):
    def __init__(self, tag, message, G=None):
        self.tag, self.message, self.G = tag, message, G
        super().__init__(message)


@dataclass
class FuzzReport:
    seed: int
    count: int
    passed: int = 0
    checks: dict = field(default_factory=lambda: {k: 0 for k in PROPERTIES})
    failures: dict = field(default_factory=lambda: {k: 0 for k in PROPERTIES})
    counterexample: dict | None = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "count": self.count,
            "passed": self.passed,
            "ok": self.ok,
            "checks": dict(self.checks),
            "failures": dict(self.failures),
            "counterexample": self.counterexample,
        }


def _pointwise_homomorphism(E, G, vectors):
    """``g(x*y) == g(x)*g(y)`` on every basis pair and on extra ``vectors`` pairs."""
    basis = [E.basis_vector(j) for j in range(E.n)]
    pairs = [(basis[i], basis[j]) for i in range(E.n) for j in range(i, E.n)] + vectors
    for x, y in pairs:
        if G.apply(alg.multiply_elements(E, x, y)) != alg.multiply_elements(E, G.apply(x), G.apply(y)):
            return False
    return True


def _check_instance(E, p, rng, report):
    f = E.field
    check = report.checks

    def vec():
        return tuple(random_scalar(p, f, rng) for _ in range(E.n))

    # products agree with the term-by-term expansion
    for _ in range(3):
        x, y = vec(), vec()
        check["product-diagram"] += 1
        xy = alg.multiply_elements(E, x, y)
        if xy != alg.bilinear_product(E, x, y) or xy != alg.multiply_elements(E, y, x):
            raise _Fail("product-diagram", f"x={x}, y={y}")

    valid = [G for G in search_natural_basis_changes(E, 6, rng, max_attempts=60)]
    dsol = mor.diagonal_automorphisms(E)
    autos = [diag(dsol.sample(rng), f) for _ in range(2)]
    if E.n <= 4:
        autos += [permutation_matrix(perm, f) for perm in mor.permutation_automorphisms(E)[:3]]
    arbitrary = [Matrix([[random_scalar(p, f, rng) for _ in range(E.n)] for _ in range(E.n)], f) for _ in range(2)]

    for G in valid + autos + arbitrary:
        check["endomorphism-criterion"] += 1
        verdict = mor.is_endomorphism(E, G)
        extra = [(vec(), vec()) for _ in range(2)]
        if verdict.is_endomorphism != _pointwise_homomorphism(E, G, extra):
            raise _Fail("endomorphism-criterion", f"matrix criterion {verdict.describe()} disagrees", G)

    rank_a = E.A.rank()
    unique = alg.has_unique_natural_basis(E)
    for G in valid:
        check["support-theorem"] += 1
        if not alg.verify_support_theorem(E, G):
            raise _Fail("support-theorem", "support condition failed", G)
        ops = mor.operator_in_new_basis(E, G)
        check["rank-invariance"] += 1
        if ops.new_basis.rank() != rank_a or ops.old_basis.rank() != rank_a:
            raise _Fail("rank-invariance", "operator rank differs from rank(A)", G)
        check["semitriviality"] += 1
        lam = opset.scaled_form_decompose(E, ops.old_basis)
        if lam is None:
            raise _Fail("semitriviality", "operator is not A Diag(lam)", G)
        if unique:
            check["monomial-under-2li"] += 1
            if not G.is_monomial() or (lam is not None and not all(lam)):
                raise _Fail("monomial-under-2li", "non-monomial natural basis under (2LI)", G)

    lam = [random_scalar(p, f, rng, nonzero=True) for _ in range(E.n)]
    check["scaling-membership"] += 1
    if opset.scaling_membership(E, lam) != E.A @ diag(lam, f):
        raise _Fail("scaling-membership", f"lam={lam}")

    for G in autos:
        check["diagonal-automorphisms"] += 1
        if G.is_monomial() and not mor.is_endomorphism(E, G).is_automorphism:
            raise _Fail("diagonal-automorphisms", "listed solution is not an automorphism", G)
        check["conjugate-operator"] += 1
        mor.conjugate_operator_of_automorphism(E, G)
        if unique:
            check["monomial-under-2li"] += 1
            if not mor.monomial_automorphism_check(E, G):
                raise _Fail("monomial-under-2li", "non-monomial automorphism under (2LI)", G)

    if f.kind == "rational" and all(any(E.A.row(i)) for i in range(E.n)):
        check["real-diagonal-identity"] += 1
        if not dsol.is_finite or dsol.solutions != [tuple(f.one for _ in range(E.n))]:
            raise _Fail("real-diagonal-identity", f"diagonal solutions {dsol.to_dict()}")

    for r, s, _ in _constructible_pairs(E)[:2]:
        check["witness"] += 1
        w = opset.nontrivial_witness(E, r, s)
        if w is None or not mor.is_natural_basis_change(E, w.G) or w.lam[s] or not any(E.A.col(s)):
            raise _Fail("witness", f"bad witness for columns ({r + 1},{s + 1})")

    check["classification"] += 1
    cls = opset.classify_operator_set(E, search_budget=5, seed=rng.randrange(2**32), max_attempts=60)
    if cls.verdict == opset.TRIVIAL:
        for G in valid:
            lam = opset.scaled_form_decompose(E, mor.operator_in_new_basis(E, G).old_basis)
            if not all(lam):
                raise _Fail("classification", "trivial verdict but a sampled lam has a zero", G)
    if _constructible_pairs(E) and cls.verdict != opset.NOT_TRIVIAL:
        raise _Fail("classification", "constructible proportional pair but not classified non-trivial")


def fuzz_properties(p: GenParams, count: int) -> FuzzReport:
    """Run the theorem suite on ``count`` generated algebras.

    The first counterexample (lowest instance index) is recorded with its
    seed, index, property tag and matrices; later instances still run so the
    failure counts are complete.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    report = FuzzReport(p.seed, count)
    for index in range(count):
        rng = random.Random(f"{p.seed}:{index}")
        E = random_algebra(p, rng)
        try:
            _check_instance(E, p, rng, report)
        except (_Fail, TheoremViolation) as exc:
            if isinstance(exc, _Fail):
                tag, msg, G = exc.tag, exc.message, exc.G
            else:
                tag, msg, G = exc.tag, str(exc), exc.data.get("G")
            report.failures[tag] = report.failures.get(tag, 0) + 1
            if report.counterexample is None:
                report.counterexample = {
                    "seed": p.seed,
                    "index": index,
                    "property": tag,
                    "message": msg,
                    "field": E.field.to_dict(),
                    "A": E.A.to_strings(),
                    "G": G.to_strings() if isinstance(G, Matrix) else None,
                }
            continue
        report.passed += 1
    return report
