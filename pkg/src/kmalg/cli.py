"""kmalg command line: classification, brackets, Gram verdicts, randomized
identity checks, Cartan decompositions and the OSAKA catalog, all emitting
versioned JSON reports with exact scalar strings.

Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 bad parameters,
3 input file could not be parsed, 4 schema violation.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import cartan, kmext, osaka, rand, serialize
from .involution import PreservationError, fixed_and_eigenspaces
from .loop import killing_gram
from .serialize import render_element  # noqa: F401  (part of the CLI surface)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARAM = 2
EXIT_PARSE = 3
EXIT_SCHEMA = 4


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _read_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}", EXIT_PARSE) from exc


def _default_degree(value, fallback=3):
    # fallback 3 for catalog verification, 4 for definiteness checks
    if value is not None:
        return value
    env = os.environ.get("KMALG_DEFAULT_DEGREE")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise CliError(f"bad KMALG_DEFAULT_DEGREE={env!r}", EXIT_PARAM) from exc
    return fallback


def _emit(report, out_path):
    text = json.dumps(report, indent=2, ensure_ascii=False, sort_keys=False)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _base_report(command, **params):
    return {
        "schema": serialize.SCHEMA,
        "command": command,
        "params": params,
    }


# -- commands -----------------------------------------------------------------

def cmd_classify(args):
    obj = _read_json(args.infile)
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise CliError("input must be an object with a 'matrix' field", EXIT_SCHEMA)
    try:
        a = cartan.validate(obj["matrix"])
    except cartan.CartanMatrixError as exc:
        raise CliError(f"not a generalized Cartan matrix: {exc}", EXIT_SCHEMA) from exc
    cls = cartan.classify(a)
    report = _base_report("classify", infile=args.infile)
    report["kind"] = cls.kind.value
    report["witness"] = [str(x) for x in cls.witness] if cls.witness else None
    report["components"] = [list(c) for c in cls.components]
    report["block_kinds"] = [k.value for k in cls.block_kinds]
    report["synthetic_composite"] = cls.synthetic_composite
    if a.n == 2:
        fam = cartan.identify_2x2(a)
        report["family"] = fam.name
        report["family_dimension"] = fam.dimension
    dims = cartan.realization_dims(a)
    report["dims"] = {"n": dims.n, "l": dims.l, "dim_h": dims.dim_h}
    return report, True


def cmd_bracket(args):
    x = serialize.extended_from_json(_read_json(args.lhs))
    y = serialize.extended_from_json(_read_json(args.rhs))
    try:
        z = kmext.hat_bracket(x, y)
    except Exception as exc:
        raise CliError(str(exc), EXIT_SCHEMA) from exc
    report = _base_report("bracket", lhs=args.lhs, rhs=args.rhs)
    report["result"] = serialize.extended_to_json(z)
    report["rendered"] = serialize.render_element(z)
    return report, True


def cmd_killing_gram(args):
    degree = _default_degree(args.degree, fallback=4)
    rec = osaka.catalog_record(args.form)
    basis = [f for f in rec.real_form.loop_basis(degree) if not f.is_zero()]
    gram, verdict = killing_gram(basis)
    report = _base_report("killing-gram", form=args.form, degree=degree)
    report["size"] = len(basis)
    report["verdict"] = verdict.value
    report["gram_diagonal"] = [str(gram[i][i]) for i in range(len(basis))]
    return report, True


def cmd_jacobi_check(args):
    degree = _default_degree(args.degree)
    algebra, twist = serialize.lookup_algebra(args.algebra, args.twist)
    failures = []
    for t in range(args.trials):
        rng = rand.TrialRng(args.seed, t)
        x = rand.random_extended_element(algebra, twist, rng, max_degree=degree)
        y = rand.random_extended_element(algebra, twist, rng, max_degree=degree)
        z = rand.random_extended_element(algebra, twist, rng, max_degree=degree)
        if not kmext.jacobi_residual(x, y, z).is_zero():
            failures.append(t)
    report = _base_report(
        "jacobi-check", trials=args.trials, degree=degree, seed=args.seed,
        twist=args.twist, algebra=args.algebra,
    )
    report["failures"] = failures
    report["passed"] = not failures
    if args.trials == 0:
        report["warning"] = "0 trials requested; the check passes vacuously"
    return report, not failures


def cmd_decompose(args):
    degree = _default_degree(args.degree)
    rec = osaka.catalog_record(args.form)
    inv = rec.involution
    if args.involution:
        inv = serialize.involution_from_json(_read_json(args.involution), rec.real_form.algebra)
    try:
        dec = fixed_and_eigenspaces(inv, rec.real_form, degree)
    except PreservationError as exc:
        raise CliError(str(exc), EXIT_FAIL) from exc
    k_loops = dec.loop_parts("K")
    p_loops = dec.loop_parts("P")
    _, kv = killing_gram(k_loops)
    _, pv = killing_gram(p_loops)
    report = _base_report("decompose", form=args.form, degree=degree,
                          involution=args.involution)
    report["dims"] = {str(k): list(v) for k, v in sorted(dec.dims().items(), key=str)}
    report["K"] = [serialize.render_element(e) for e in dec.k_basis]
    report["P"] = [serialize.render_element(e) for e in dec.p_basis]
    report["gram"] = {"K_loops": kv.value, "P_loops": pv.value}
    return report, True


def _record_report(rec, degree):
    rep = osaka.osaka_verify(rec, degree)
    return {
        "name": rep.name,
        "checks": {k: v.passed for k, v in rep.checks.items()},
        "details": {k: v.detail for k, v in rep.checks.items() if v.detail},
        "computed_type": rep.computed_type,
        "claimed_type": rec.claimed_type.value,
        "dual": rec.dual_name,
        "all_passed": rep.all_passed,
    }


def cmd_osaka_catalog(args):
    degree = _default_degree(args.degree)
    records = [_record_report(rec, degree) for rec in osaka.build_catalog_a1()]
    pairing = osaka.duality_pairing()
    report = _base_report("osaka-catalog", degree=degree)
    report["records"] = records
    report["duality"] = {
        "matches": pairing.matches,
        "double_dual_identity": pairing.double_dual_ok,
        "table": pairing.table_ok,
    }
    ok = all(r["all_passed"] for r in records) and pairing.all_passed
    report["all_passed"] = ok
    return report, ok


def cmd_osaka_verify(args):
    degree = _default_degree(args.degree)
    name = args.record
    specials = {
        "euclidean": osaka.euclidean_osaka,
        "complex+compact-conjugation": osaka.complex_conjugation_counterexample,
    }
    if os.path.exists(name):
        rec = serialize.record_from_json(_read_json(name))
        name = rec.name
    elif name in specials:
        rec = specials[name]()
    else:
        try:
            rec = osaka.catalog_record(name)
        except KeyError as exc:
            raise CliError(str(exc), EXIT_PARAM) from exc
    entry = _record_report(rec, degree)
    report = _base_report("osaka-verify", record=name, degree=degree)
    report.update(entry)
    return report, entry["all_passed"]


def cmd_counts(args):
    report = _base_report("counts")
    report["second_kind_involutions"] = osaka.involution_counts()
    if args.family:
        try:
            report["lookup"] = {args.family: osaka.second_kind_count(args.family)}
        except osaka.NotTabulatedError:
            report["lookup"] = {args.family: "NotTabulated"}
    return report, True


# -- driver ----------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(
        prog="kmalg",
        description="exact computer algebra for geometric affine Kac-Moody algebras",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify a generalized Cartan matrix")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_classify)

    b = sub.add_parser("bracket", help="bracket of two extended elements")
    b.add_argument("--lhs", required=True)
    b.add_argument("--rhs", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bracket)

    kg = sub.add_parser("killing-gram", help="loop Killing Gram of a catalog form")
    kg.add_argument("--form", required=True)
    kg.add_argument("--degree", type=int)
    kg.add_argument("--out")
    kg.set_defaults(func=cmd_killing_gram)

    j = sub.add_parser("jacobi-check", help="randomized Jacobi identity check")
    j.add_argument("--trials", type=int, required=True)
    j.add_argument("--degree", type=int)
    j.add_argument("--seed", required=True)
    j.add_argument("--twist", type=int, default=1, choices=(1, 2))
    j.add_argument("--algebra", default="su2c")
    j.add_argument("--out")
    j.set_defaults(func=cmd_jacobi_check)

    d = sub.add_parser("decompose", help="Cartan decomposition of a catalog form")
    d.add_argument("--form", required=True)
    d.add_argument("--involution", help="JSON file overriding the record's involution")
    d.add_argument("--degree", type=int)
    d.add_argument("--out")
    d.set_defaults(func=cmd_decompose)

    oc = sub.add_parser("osaka-catalog", help="verify the full rank-one catalog")
    oc.add_argument("--degree", type=int)
    oc.add_argument("--out")
    oc.set_defaults(func=cmd_osaka_catalog)

    ov = sub.add_parser("osaka-verify", help="verify one record")
    ov.add_argument("--record", required=True)
    ov.add_argument("--degree", type=int)
    ov.add_argument("--out")
    ov.set_defaults(func=cmd_osaka_verify)

    cn = sub.add_parser("counts", help="second-kind involution count table")
    cn.add_argument("--family")
    cn.add_argument("--out")
    cn.set_defaults(func=cmd_counts)

    # nested alias: kmalg osaka catalog / kmalg osaka verify
    grp = sub.add_parser("osaka", help="osaka subcommands")
    gsub = grp.add_subparsers(dest="subcommand", required=True)
    gc = gsub.add_parser("catalog")
    gc.add_argument("--degree", type=int)
    gc.add_argument("--out")
    gc.set_defaults(func=cmd_osaka_catalog)
    gv = gsub.add_parser("verify")
    gv.add_argument("--record", required=True)
    gv.add_argument("--degree", type=int)
    gv.add_argument("--out")
    gv.set_defaults(func=cmd_osaka_verify)

    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAM if exc.code not in (0, None) else 0
    start = time.monotonic()
    try:
        report, ok = args.func(args)
    except CliError as exc:
        print(json.dumps({"schema": serialize.SCHEMA, "error": str(exc)}), file=sys.stderr)
        return exc.code
    except serialize.SchemaError as exc:
        print(json.dumps({"schema": serialize.SCHEMA, "error": str(exc)}), file=sys.stderr)
        return EXIT_SCHEMA
    report["timing_ms"] = round(1000 * (time.monotonic() - start), 3)
    _emit(report, getattr(args, "out", None))
    return EXIT_OK if ok else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
