"""Command-line interface.

Exit codes: 0 success, 1 analysis failure (an identity check failed, or
``validate`` found Jacobi violations), 2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from itertools import combinations

from .catalog import CatalogEntry, CatalogError, parse_spec, realization_mismatches
from .ce_cohomology import (
    MAX_DEGREE,
    betti_numbers,
    coboundary_witness,
    vanishing_criterion,
)
from .exact_linalg import Mat
from .invariant_forms import (
    AltBilinearForm,
    IdentityFailure,
    classify,
    pairs,
)
from .lie_algebra import JacobiError, LieAlgebra, abelianization, check_jacobi
from .primitivity import is_primitive, primitivity_defect

EXIT_OK, EXIT_ANALYSIS, EXIT_INPUT = 0, 1, 2
# keeps exact arithmetic interactive; the library itself is uncapped
PARAM_CAP = 8

SPEC_GRAMMAR = """\
algebra spec grammar:
  spec := NAME [ "(" arg ("," arg)* ")" ]      arg := spec | RATIONAL | "[" args "]"
  names: abelian(d) heisenberg(2n+1) aff(1) su(n) sl(2) so(n) u(n) gl(n)
         strictly_upper_triangular(n) (alias sut) direct_sum(A, B)
         semidirect(A, d, [M_0, ..., M_{dimA-1}])
  shorthand: su2 == su(2), so3 == so(3), ...
  size parameters are capped at n <= 8 (heisenberg(2n+1) at dim 17)
"""


class InputError(ValueError):
    pass


# ---------------------------------------------------------------------------
# input


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(f"{where}: expected a rational string like \"p/q\", got {value!r}")
    try:
        return Fraction(value)
    except (ValueError, TypeError, ZeroDivisionError):
        raise InputError(f"{where}: cannot parse rational {value!r}") from None


def load_algebra_file(path: str) -> CatalogEntry:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    return algebra_from_document(doc, path)


def algebra_from_document(doc, source: str = "<input>") -> CatalogEntry:
    if not isinstance(doc, dict):
        raise InputError(f"{source}: top level must be an object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 0:
        raise InputError(f"{source}: field 'dim' must be a nonnegative integer")
    brackets = doc.get("brackets", [])
    if not isinstance(brackets, list):
        raise InputError(f"{source}: field 'brackets' must be a list")
    table = {}
    for idx, br in enumerate(brackets):
        where = f"{source}: brackets[{idx}]"
        if not isinstance(br, dict):
            raise InputError(f"{where}: must be an object")
        i, j = br.get("i"), br.get("j")
        for key, v in (("i", i), ("j", j)):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < dim:
                raise InputError(f"{where}.{key}: index {v!r} out of range 0..{dim - 1}")
        if i >= j:
            raise InputError(f"{where}: brackets are stored with i < j, got i={i}, j={j}")
        if (i, j) in table:
            raise InputError(f"{where}: duplicate bracket ({i},{j})")
        coeffs = br.get("coeffs", {})
        if not isinstance(coeffs, dict):
            raise InputError(f"{where}.coeffs: must be an object")
        parsed = {}
        for key, val in coeffs.items():
            try:
                k = int(key)
            except ValueError:
                raise InputError(f"{where}.coeffs[{key!r}]: key must be a basis index") from None
            if not 0 <= k < dim:
                raise InputError(f"{where}.coeffs[{key!r}]: index out of range 0..{dim - 1}")
            parsed[k] = _rational(val, f"{where}.coeffs[{key!r}]")
        table[i, j] = parsed
    name = doc.get("name") or "input"
    L = LieAlgebra.from_brackets(dim, table, name=name)
    mats = None
    if doc.get("realization") is not None:
        real = doc["realization"]
        if not isinstance(real, list) or len(real) != dim:
            raise InputError(f"{source}: 'realization' must list {dim} matrices")
        mats = []
        for idx, m in enumerate(real):
            where = f"{source}: realization[{idx}]"
            if not isinstance(m, list) or not m or not all(isinstance(r, list) for r in m):
                raise InputError(f"{where}: must be a nonempty list of rows")
            try:
                mats.append(Mat.from_rows([[_rational(x, where) for x in r] for r in m]))
            except ValueError as exc:
                raise InputError(f"{where}: {exc}") from None
        if len({m.shape for m in mats}) > 1 or (mats and mats[0].rows != mats[0].cols):
            raise InputError(f"{source}: realization matrices must be square of equal size")
    return CatalogEntry(name, (), L, tuple(mats) if mats else None,
                        abelianization(L).quotient_dim, "input file")


def resolve_input(args) -> CatalogEntry:
    if args.input and args.algebra:
        raise InputError("give either --input or --algebra, not both")
    if args.input:
        return load_algebra_file(args.input)
    if args.algebra:
        try:
            return parse_spec(args.algebra, max_param=PARAM_CAP)
        except CatalogError as exc:
            raise InputError(f"--algebra {args.algebra!r}: {exc}") from None
    raise InputError("one of --input FILE or --algebra SPEC is required")


def _require_valid(entry: CatalogEntry):
    bad = check_jacobi(entry.algebra)
    if bad:
        raise InputError(f"{entry.name}: not a Lie algebra, Jacobi fails at {bad[:5]}")
    if entry.realization is not None:
        mism = realization_mismatches(entry.algebra, entry.realization)
        if mism:
            raise InputError(f"{entry.name}: realization disagrees with brackets at {mism[:5]}")


# ---------------------------------------------------------------------------
# report documents (JSON-native: rationals are strings)


def q(x: Fraction) -> str:
    return str(x)


def form_doc(f: AltBilinearForm) -> dict:
    return {
        "dim": f.dim,
        "space": f.basis_tag,
        "terms": [[i, j, q(x)] for (i, j), x in zip(pairs(f.dim), f.to_vector()) if x],
        "pretty": f.pretty(),
    }


def defect_pretty(lam: AltBilinearForm) -> str:
    """The defect on a + a written with ``e{i}[c]`` for basis ``i`` of copy ``c``."""
    D = primitivity_defect(lam).form.coeffs
    a = lam.dim
    terms = []
    for i, j in combinations(range(a), 2):
        for c1, c2 in ((1, 2), (2, 1)):
            x = D[i + (c1 - 1) * a, j + (c2 - 1) * a]
            if x:
                coef = "" if x == 1 else "-" if x == -1 else f"{x}*"
                terms.append(f"{coef}e{i}[{c1}]*^e{j}[{c2}]*")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def algebra_doc(entry: CatalogEntry) -> dict:
    return {"name": entry.name, "dim": entry.dim,
            "has_realization": entry.realization is not None}


def validate_doc(entry: CatalogEntry) -> dict:
    bad = check_jacobi(entry.algebra)
    doc = {"command": "validate", "algebra": algebra_doc(entry),
           "jacobi_valid": not bad, "violations": [list(t) for t in bad]}
    if entry.realization is not None:
        mism = realization_mismatches(entry.algebra, entry.realization)
        doc["realization_valid"] = not mism
        doc["realization_mismatches"] = [list(p) for p in mism]
    return doc


def classification_doc(entry: CatalogEntry) -> tuple[dict, bool]:
    try:
        rep = classify(entry.algebra)
    except IdentityFailure as exc:
        rep = exc.report
    doc = {
        "dim_g": rep.dim_g,
        "dim_derived": rep.dim_derived,
        "dim_a": rep.dim_a,
        "dim_invariant_space": rep.dim_invariant_space,
        "expected_dim": rep.expected_dim,
        "basis_forms": [form_doc(f) for f in rep.basis_forms],
        "descended_forms": [form_doc(f) for f in rep.descended_forms],
        "identities_pass": dict(rep.identities_pass),
        "vanishing_predicate": rep.vanishing_predicate,
        "ok": rep.ok,
    }
    return doc, rep.ok


def cohomology_doc(entry: CatalogEntry, degree: int = MAX_DEGREE) -> tuple[dict, bool]:
    ok = True
    betti = betti_numbers(entry.algebra, degree)
    try:
        holds, why = vanishing_criterion(entry.algebra)
    except IdentityFailure as exc:
        holds, why, ok = True, str(exc), False
    return {"betti": {str(k): b for k, b in enumerate(betti)},
            "vanishing_criterion": {"holds": holds, "explanation": why}}, ok


def primitivity_doc(entry: CatalogEntry) -> tuple[dict, bool]:
    try:
        rep = classify(entry.algebra)
    except IdentityFailure as exc:
        return {"error": str(exc)}, False
    L = entry.algebra
    items = []
    for eta, lam in zip(rep.basis_forms, rep.descended_forms):
        D = primitivity_defect(lam)
        w = coboundary_witness(L, eta)
        items.append({
            "form": form_doc(eta),
            "descended": form_doc(lam),
            "defect": form_doc(D.form),
            "defect_pretty": defect_pretty(lam),
            "defect_nonzero": not D.is_zero(),
            "coboundary_witness": None if w is None else [q(x) for x in w.functional],
        })
    all_nonzero = all(it["defect_nonzero"] for it in items)
    ok = all_nonzero and all(not is_primitive(lam) for lam in rep.descended_forms)
    verdict = ("no nonzero primitive 2-forms" if items else
               "no nonzero primitive 2-forms (no invariant 2-forms at all)")
    return {"forms": items, "all_defects_nonzero": all_nonzero, "verdict": verdict}, ok


def numeric_doc(entry: CatalogEntry, tol: float, seed: int, samples: int) -> dict | None:
    from .numeric_check import ad_exp_invariance, finite_difference_check

    if entry.realization is None or entry.dim == 0:
        return None
    forms = classify(entry.algebra, strict=False).basis_forms
    reps = [ad_exp_invariance(entry, f, tol=tol, seed=seed, samples=samples) for f in forms]
    fd = finite_difference_check(entry, seed=seed, samples=samples)
    return {
        "invariance": [{"samples": r.samples, "max_relative_error": r.max_relative_error,
                        "tolerance": r.tolerance, "pass": r.passed} for r in reps],
        "finite_difference": {"samples": fd.samples, "max_abs_error": fd.max_abs_error,
                              "tolerance": fd.tolerance, "pass": fd.passed},
        "pass": all(r.passed for r in reps) and fd.passed,
    }


def full_report(entry: CatalogEntry, degree: int, tol: float, seed: int,
                samples: int) -> tuple[dict, bool]:
    v = validate_doc(entry)
    c, ok1 = classification_doc(entry)
    h, ok2 = cohomology_doc(entry, degree)
    p, ok3 = primitivity_doc(entry)
    n = numeric_doc(entry, tol, seed, samples)
    ok = ok1 and ok2 and ok3 and (n is None or n["pass"])
    return {"command": "report", "algebra": algebra_doc(entry),
            "validate": {k: v[k] for k in v if k not in ("command", "algebra")},
            "classification": c, "cohomology": h, "primitivity": p, "numeric": n,
            "ok": ok}, ok


# ---------------------------------------------------------------------------
# rendering


def render_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True)


def parse_json(text: str):
    return json.loads(text)


def _table(rows: list[tuple[str, object]]) -> str:
    width = max((len(k) for k, _ in rows), default=0)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows)


def render_table(doc: dict) -> str:
    if "reports" in doc:
        return "\n\n".join(render_table(d) for d in doc["reports"])
    cmd = doc.get("command")
    alg = doc.get("algebra", {})
    rows = [("algebra", f"{alg.get('name')} (dim {alg.get('dim')})")]
    if cmd == "validate" or "validate" in doc:
        v = doc if cmd == "validate" else doc["validate"]
        rows.append(("jacobi", "ok" if v["jacobi_valid"] else f"FAILS at {v['violations']}"))
        if "realization_valid" in v:
            rows.append(("realization", "ok" if v["realization_valid"]
                         else f"mismatch at {v['realization_mismatches']}"))
    c = doc.get("classification")
    if c:
        rows += [
            ("dim g", c["dim_g"]), ("dim [g,g]", c["dim_derived"]), ("dim a", c["dim_a"]),
            ("invariant 2-forms", c["dim_invariant_space"]),
            ("C(dim a, 2)", c["expected_dim"]),
            ("basis", "; ".join(f["pretty"] for f in c["basis_forms"]) or "-"),
            ("vanishes (dim a <= 1)", c["vanishing_predicate"]),
        ]
        rows += [(f"  {k}", "pass" if v else "FAIL") for k, v in c["identities_pass"].items()]
    h = doc.get("cohomology")
    if h:
        rows += [(f"H^{k}", b) for k, b in h["betti"].items()]
        rows.append(("vanishing criterion", f"{h['vanishing_criterion']['holds']}: "
                                            f"{h['vanishing_criterion']['explanation']}"))
    p = doc.get("primitivity")
    if p and "forms" in p:
        for idx, it in enumerate(p["forms"]):
            rows.append((f"defect[{idx}]", f"{it['descended']['pretty']} -> {it['defect_pretty']}"))
        rows.append(("primitivity", p["verdict"]))
    n = doc.get("numeric")
    if n:
        errs = [r["max_relative_error"] for r in n["invariance"]]
        rows.append(("Ad(exp tZ) max rel err", f"{max(errs):.3e}" if errs else "-"))
        rows.append(("finite difference err", f"{n['finite_difference']['max_abs_error']:.3e}"))
        rows.append(("numeric", "pass" if n["pass"] else "FAIL"))
    if "ok" in doc:
        rows.append(("status", "ok" if doc["ok"] else "FAILED"))
    return _table(rows)


# ---------------------------------------------------------------------------
# commands


def cmd_validate(entry: CatalogEntry, args) -> tuple[dict, int]:
    doc = validate_doc(entry)
    ok = doc["jacobi_valid"] and doc.get("realization_valid", True)
    doc["ok"] = ok
    return doc, EXIT_OK if ok else EXIT_ANALYSIS


def cmd_classify(entry: CatalogEntry, args) -> tuple[dict, int]:
    _require_valid(entry)
    c, ok = classification_doc(entry)
    return {"command": "classify", "algebra": algebra_doc(entry), "classification": c,
            "ok": ok}, EXIT_OK if ok else EXIT_ANALYSIS


def cmd_cohomology(entry: CatalogEntry, args) -> tuple[dict, int]:
    _require_valid(entry)
    if not 0 <= args.degree <= MAX_DEGREE:
        raise InputError(f"--degree must be in 0..{MAX_DEGREE}")
    h, ok = cohomology_doc(entry, args.degree)
    return {"command": "cohomology", "algebra": algebra_doc(entry), "cohomology": h,
            "ok": ok}, EXIT_OK if ok else EXIT_ANALYSIS


def cmd_primitivity(entry: CatalogEntry, args) -> tuple[dict, int]:
    _require_valid(entry)
    p, ok = primitivity_doc(entry)
    return {"command": "primitivity", "algebra": algebra_doc(entry), "primitivity": p,
            "ok": ok}, EXIT_OK if ok else EXIT_ANALYSIS


def cmd_report(entry: CatalogEntry, args) -> tuple[dict, int]:
    _require_valid(entry)
    doc, ok = full_report(entry, args.degree, args.tol, args.seed, args.samples)
    return doc, EXIT_OK if ok else EXIT_ANALYSIS


COMMANDS = {
    "validate": cmd_validate,
    "classify": cmd_classify,
    "cohomology": cmd_cohomology,
    "primitivity": cmd_primitivity,
    "report": cmd_report,
}


def build_parser() -> argparse.ArgumentParser:
    from .numeric_check import DEFAULT_SEED, INVARIANCE_TOL

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_argument_group("input")
    src.add_argument("--input", metavar="FILE", help="algebra file (JSON)")
    src.add_argument("--algebra", metavar="SPEC", action="append",
                     help="catalog spec, e.g. 'heisenberg(5)'; repeatable for 'report'")
    common.add_argument("--format", choices=("json", "table"), default="table")
    common.add_argument("--degree", type=int, default=MAX_DEGREE,
                        help=f"highest cohomology degree (0..{MAX_DEGREE})")
    common.add_argument("--tol", type=float, default=INVARIANCE_TOL,
                        help="numeric invariance tolerance")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--samples", type=int, default=5,
                        help="random samples per numeric check")

    parser = argparse.ArgumentParser(
        prog="biinvariant",
        description="Bi-invariant 2-forms of finite-dimensional Lie algebras.",
        epilog=SPEC_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "validate": "check antisymmetry and the Jacobi identity",
        "classify": "invariant 2-forms vs Lambda^2 of the abelianization",
        "cohomology": "Betti numbers up to --degree and the H^2 vanishing criterion",
        "primitivity": "primitivity defect of every invariant 2-form",
        "report": "all of the above plus the numeric Ad(exp tZ) check",
    }
    for name, text in helps.items():
        sub.add_parser(name, parents=[common], help=text, epilog=SPEC_GRAMMAR,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    specs = args.algebra or []
    if len(specs) > 1 and args.command != "report":
        print("error: several --algebra values are only accepted by 'report'", file=sys.stderr)
        return EXIT_INPUT
    docs, code = [], EXIT_OK
    try:
        for spec in (specs or [None]):
            args.algebra = spec
            try:
                entry = resolve_input(args)
            except (JacobiError, ValueError) as exc:
                if isinstance(exc, InputError):
                    raise
                raise InputError(str(exc)) from None
            doc, c = COMMANDS[args.command](entry, args)
            docs.append(doc)
            code = max(code, c)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    out = docs[0] if len(docs) == 1 else {"command": "report", "reports": docs}
    print(render_json(out) if args.format == "json" else render_table(out))
    return code


if __name__ == "__main__":
    sys.exit(main())
