"""``evokit`` command line.

Input files are JSON documents::

    {"field": {"kind": "tower", "d": 2}, "matrix": [["1", "r-1"], ["0", "-i/2"]]}

``field`` may be ``{"kind": "rational"}``, ``{"kind": "tower", "d": D}`` or
``{"kind": "float", "epsilon": 1e-9}``; matrix files passed next to an
algebra may omit it.  Exit codes: 0 success, 1 counterexample or failed
falsification oracle, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import algebra as alg
from . import morphism as mor
from . import opset
from . import orbit as orb
from . import randgen
from .errors import EvokitError, ScalarParseError, TheoremViolation
from .matrix import Matrix
from .scalar import Field

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2


class InputError(Exception):
    pass


def _load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _parse_matrix(data, field_, path):
    rows = data.get("matrix") if isinstance(data, dict) else None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{path}: 'matrix' must be a non-empty list of rows")
    width = len(rows[0])
    parsed = []
    for i, row in enumerate(rows):
        if len(row) != width:
            raise InputError(f"{path}: row {i + 1} has {len(row)} entries, expected {width}")
        out = []
        for j, cell in enumerate(row):
            if isinstance(cell, int) and not isinstance(cell, bool):
                cell = str(cell)
            if not isinstance(cell, str):
                raise InputError(f"{path}: entry ({i + 1},{j + 1}) must be a string")
            try:
                out.append(field_.parse(cell))
            except ScalarParseError as exc:
                raise InputError(f"{path}: entry ({i + 1},{j + 1}) {cell!r}: {exc}") from exc
        parsed.append(out)
    return Matrix(parsed, field_)


def _parse_field(data, path):
    try:
        return Field.from_dict(data["field"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: invalid or missing 'field' ({exc})") from exc


def load_algebra(path) -> alg.EvolutionAlgebra:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    field_ = _parse_field(data, path)
    A = _parse_matrix(data, field_, path)
    if not A.is_square:
        raise InputError(f"{path}: structure matrix must be square, got {A.rows}x{A.cols}")
    return alg.EvolutionAlgebra(A)


def load_matrix(path, E: alg.EvolutionAlgebra) -> Matrix:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    if "field" in data and _parse_field(data, path) != E.field:
        raise InputError(f"{path}: field differs from the algebra's field {E.field}")
    G = _parse_matrix(data, E.field, path)
    if G.shape != (E.n, E.n):
        raise InputError(f"{path}: expected a {E.n}x{E.n} matrix, got {G.rows}x{G.cols}")
    return G


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def analysis_report(E: alg.EvolutionAlgebra, budget: int = 200, seed: int = 0) -> dict:
    cls = opset.classify_operator_set(E, budget, seed)
    diag_set = mor.diagonal_automorphisms(E)
    return {
        "field": E.field.to_dict(),
        "n": E.n,
        "structure_matrix": E.A.to_strings(),
        "degenerate": {"value": alg.is_degenerate(E), "source": "zero column in the structure matrix"},
        "rank": {"value": opset.operator_set_rank(E), "source": "rank shared by all evolution operators"},
        "2li": {"value": alg.has_2li(E), "source": "pairwise independence of basis squares"},
        "unique_natural_basis": {
            "value": alg.has_unique_natural_basis(E),
            "source": "non-degenerate algebras: unique natural basis iff (2LI)",
        },
        "operator_set": dict(cls.to_dict(), source="trivial/semitrivial classifier"),
        "diagonal_automorphisms": dict(diag_set.to_dict(), source="lam_i = lam_j^2 whenever a_ij != 0"),
        "symmetric_group_in_aut": {
            "value": mor.symmetric_group_in_aut(E),
            "source": "A = alpha J + beta I",
        },
    }


def _fmt_matrix(rows, indent="  "):
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    return "\n".join(indent + "[ " + "  ".join(c.rjust(w) for c, w in zip(r, widths)) + " ]" for r in rows)


def _human_analysis(rep):
    lines = [
        f"field: {Field.from_dict(rep['field'])}   n = {rep['n']}",
        "structure matrix:",
        _fmt_matrix(rep["structure_matrix"]),
        f"degenerate:            {rep['degenerate']['value']}",
        f"rank:                  {rep['rank']['value']}",
        f"property (2LI):        {rep['2li']['value']}",
        f"unique natural basis:  {rep['unique_natural_basis']['value']}",
        f"operator set:          {rep['operator_set']['verdict']} ({rep['operator_set']['reason']})",
        f"S_n in Aut(E):         {rep['symmetric_group_in_aut']['value']}",
        "diagonal automorphisms:",
    ]
    d = rep["diagonal_automorphisms"]
    for s in d["solutions"]:
        lines.append("  (" + ", ".join(s) + ")")
    if d["free_indices"]:
        lines.append(f"  free indices: {d['free_indices']}")
    if d["torus_exponents"]:
        lines.append(f"  torus directions (exponents): {d['torus_exponents']}")
    return "\n".join(lines)


def _emit(args, payload, human):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(human)


def cmd_analyze(args):
    E = load_algebra(args.file)
    rep = analysis_report(E, args.budget, args.seed)
    _emit(args, rep, _human_analysis(rep))
    return EXIT_OK


def cmd_check_morphism(args):
    E = load_algebra(args.algebra)
    G = load_matrix(args.matrix, E)
    v = mor.is_endomorphism(E, G)
    payload = v.to_dict()
    human = "\n".join(
        [
            f"natural basis change: {v.is_natural_basis}",
            f"endomorphism:         {v.is_endomorphism}",
            f"automorphism:         {v.is_automorphism}",
            f"verdict:              {v.describe()}",
        ]
    )
    _emit(args, payload, human)
    return EXIT_OK


def cmd_change_basis(args):
    E = load_algebra(args.algebra)
    G = load_matrix(args.matrix, E)
    if not mor.is_natural_basis_change(E, G):
        v = mor.is_endomorphism(E, G)
        raise InputError(f"{args.matrix}: not a natural-basis change: {v.describe()}")
    ops = mor.operator_in_new_basis(E, G)
    same = mor.same_operator_as_L(E, G)
    lam = opset.scaled_form_decompose(E, ops.old_basis)
    if lam is None:
        raise TheoremViolation("semitriviality", "operator is not of the form A Diag(lam)", {"G": G})
    payload = {
        "new_basis": ops.new_basis.to_strings(),
        "old_basis": ops.old_basis.to_strings(),
        "same_map": same,
        "lambda": [str(x) for x in lam],
    }
    human = "\n".join(
        [
            "operator in the new basis:",
            _fmt_matrix(payload["new_basis"]),
            "operator in the old basis:",
            _fmt_matrix(payload["old_basis"]),
            f"same linear map as L: {same}",
            "old-basis operator = A Diag(" + ", ".join(payload["lambda"]) + ")",
        ]
    )
    _emit(args, payload, human)
    return EXIT_OK


def cmd_orbit(args):
    E = load_algebra(args.algebra)
    G = load_matrix(args.matrix, E)
    v = mor.is_endomorphism(E, G)
    if not v.is_automorphism:
        raise InputError(f"{args.matrix}: not an automorphism: {v.describe()}")
    rep = orb.orbit_explore(E, G, args.max_steps)
    payload = rep.to_dict()
    lines = [f"status: {rep.status}", f"distinct matrices: {rep.distinct_count}"]
    if rep.status == orb.FINITE:
        lines.append(f"pre-period: {rep.pre_period}   period: {rep.period}")
        for k, m in enumerate(rep.members):
            lines += [f"M_{k}:", _fmt_matrix(m.to_strings())]
    elif rep.certificate is not None:
        c = rep.certificate
        lines.append(f"eigenvalue: {c.eigenvalue}  ({c.reason})")
        lines.append("minimal polynomial (constant first): " + ", ".join(str(x) for x in c.minimal_poly))
    else:
        lines.append(f"bound: {rep.bound}  {rep.diagnostic}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_classify(args):
    E = load_algebra(args.algebra)
    cls = opset.classify_operator_set(E, args.budget, args.seed)
    payload = cls.to_dict()
    lines = [f"verdict: {cls.verdict}", f"reason: {cls.reason}"]
    if cls.witness is not None:
        lines += ["witness basis change G:", _fmt_matrix(cls.witness.G.to_strings())]
        lines += ["operator A G^(2) G^-1:", _fmt_matrix(cls.witness.operator.to_strings())]
        lines.append("lambda: (" + ", ".join(str(x) for x in cls.witness.lam) + ")")
    if cls.evidence:
        lines.append(f"evidence: {cls.evidence}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_fuzz(args):
    params = randgen.GenParams(
        seed=args.seed,
        degeneracy_rate=args.degenerate_rate,
        proportional_pair_rate=args.proportional_rate,
    )
    rep = randgen.fuzz_properties(params, args.count)
    payload = rep.to_dict()
    lines = [f"{rep.passed}/{rep.count} instances passed (seed {rep.seed})"]
    for tag in randgen.PROPERTIES:
        lines.append(f"  {tag:24s} checks={rep.checks[tag]:6d}  failures={rep.failures[tag]}")
    if rep.counterexample:
        lines.append("first counterexample: " + json.dumps(rep.counterexample))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_VIOLATION


def build_parser():
    p = argparse.ArgumentParser(prog="evokit", description="Exact analysis of evolution algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    sp = add("analyze", cmd_analyze, "full report for an algebra file")
    sp.add_argument("file")
    sp.add_argument("--budget", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)

    for name, func, help_ in (
        ("check-morphism", cmd_check_morphism, "test a matrix against the homomorphism criteria"),
        ("change-basis", cmd_change_basis, "evolution operator of the natural basis given by a matrix"),
        ("orbit", cmd_orbit, "explore G^n A G^-n for an automorphism G"),
    ):
        sp = add(name, func, help_)
        sp.add_argument("algebra")
        sp.add_argument("matrix")
        if name == "orbit":
            sp.add_argument("--max-steps", type=int, default=orb.DEFAULT_MAX_STEPS)

    sp = add("classify", cmd_classify, "trivial / semitrivial classification of the operator set")
    sp.add_argument("algebra")
    sp.add_argument("--budget", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)

    sp = add("fuzz", cmd_fuzz, "run the property suite on random algebras")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=100)
    sp.add_argument("--degenerate-rate", type=float, default=0.2)
    sp.add_argument("--proportional-rate", type=float, default=0.3)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except TheoremViolation as exc:
        print(f"evokit: property violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (InputError, EvokitError, ValueError) as exc:
        print(f"evokit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
