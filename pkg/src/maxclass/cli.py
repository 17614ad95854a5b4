"""Command line entry point: ``maxclass build|check|analyze|classify|compare``.

Exit codes: 0 pass, 1 mathematical failure or difference, 2 input error,
3 construction error, 4 analysis precondition failed, 5 resource bound hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .analysis import (
    AnalysisError,
    constituents,
    deflate,
    derive_type2,
    lift_to_type1,
    two_step_centralizers,
)
from .classifier import BRANCHES, classify
from .constructions import NAMES, ConstructionError, ConstructionSpec, ProportionalityError
from .liecore import Type1Table, Type2Table, jacobi_check, maximal_class_check
from .scalars import make_field
from .tableio import (
    SpecError,
    export_structured,
    export_text,
    first_difference,
    load_spec,
    realize,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUILD, EXIT_ANALYSIS, EXIT_BOUND = range(6)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table_from_args(args: argparse.Namespace):
    """A table from ``--spec`` or from ``--algebra`` with inline parameters."""
    if args.spec:
        return load_spec(args.spec)
    if not args.algebra:
        raise SpecError("give --spec or --algebra")
    if args.max_weight is None:
        raise SpecError("--max-weight is required with --algebra")
    kind = "rationals" if args.p is None else ("rational_functions" if args.rational_functions else "prime")
    try:
        f = make_field(kind, args.p)
    except ValueError as e:
        raise SpecError(str(e)) from None
    lam = None
    if args.algebra == "L_lambda":
        if args.lam is None:
            raise SpecError("L_lambda needs --lambda")
        try:
            lam = f.parse(args.lam)
        except ValueError as e:
            raise SpecError(f"bad --lambda: {e}") from None
    method = "matrix" if args.matrix else "table"
    spec = ConstructionSpec(args.algebra, f, args.max_weight, q=args.q, lam=lam, params={"method": method})
    prov = spec.describe() + (" (matrix)" if args.matrix else "")
    return realize(spec), prov


def _add_table_args(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--spec", help="JSON spec file")
    sp.add_argument("--algebra", choices=NAMES, help="named algebra instead of a spec file")
    sp.add_argument("--p", type=int, help="characteristic (omit for the rationals)")
    sp.add_argument("--rational-functions", action="store_true", help="work over F_p(t)")
    sp.add_argument("--q", type=int)
    sp.add_argument("--lambda", dest="lam")
    sp.add_argument("--max-weight", type=int)
    sp.add_argument("--matrix", action="store_true", help="use the matrix realisation")


def cmd_build(args) -> int:
    table, prov = _table_from_args(args)
    if args.format == "structured":
        text = export_structured(table, prov, args.full_table)
    else:
        text = export_text(table, prov, args.full_table)
    _emit(text, args.out)
    return EXIT_OK


def cmd_check(args) -> int:
    table, prov = _table_from_args(args)
    jac = jacobi_check(table)
    mc = maximal_class_check(table)
    if args.format == "structured":
        f = table.field
        obj = {
            "provenance": prov,
            "jacobi": {"ok": jac.ok, "triple": list(jac.triple) if jac.triple else None,
                       "residual": None if jac.ok else f.format(jac.residual)},
            "maximal_class": {"ok": mc.ok, "weight": mc.weight},
        }
        _emit(json.dumps(obj, indent=1) + "\n", args.out)
    else:
        _emit(f"{prov} over {table.field.describe()} N={table.N}\n{jac.describe()}\n{mc.describe()}\n", args.out)
    return EXIT_OK if jac.ok and mc.ok else EXIT_FAIL


def _parse_z(text: str, f):
    parts = text.split(",")
    if len(parts) != 2:
        raise SpecError("--z must be 'a,b' meaning a*x + b*y")
    return tuple(f.parse(s.strip()) for s in parts)


def cmd_analyze(args) -> int:
    table, prov = _table_from_args(args)
    f = table.field
    which = args.which
    if which == "constituents":
        if not isinstance(table, Type2Table):
            raise AnalysisError("constituents are read off type-2 tables")
        seq = constituents(table)
        if args.format == "structured":
            obj = {
                "provenance": prov,
                "first_index": seq.first_index,
                "first_length": seq.first_length,
                "first_end_pair": None if seq.first_end_pair is None else [f.format(x) for x in seq.first_end_pair],
                "body": [
                    {"start": c.start, "end": c.end, "length": c.length,
                     "type": [f.format(x) for x in c.type_pair]}
                    for c in seq.body
                ],
                "analyzed_bound": seq.analyzed_bound,
            }
            _emit(json.dumps(obj, indent=1) + "\n", args.out)
        else:
            lines = [f"constituents of {prov} N={table.N}"]
            if seq.first_length is None:
                lines.append("first_length: infinite (mu vanishes on the range)")
            else:
                lam, mu = (f.format(x) for x in seq.first_end_pair)
                lines.append(f"first_length: {seq.first_length} (first non-zero mu_{seq.first_index}, closing pair ({lam}, {mu}))")
            for c in seq.body:
                lam, mu = (f.format(x) for x in c.type_pair)
                lines.append(f"constituent {c.start}..{c.end} length {c.length} type ({lam}, {mu})")
            _emit("\n".join(lines) + "\n", args.out)
        return EXIT_OK
    if which == "centralizers":
        if not isinstance(table, Type1Table):
            raise AnalysisError("two-step centralizers belong to type-1 tables")
        _emit(two_step_centralizers(table).describe(f) + "\n", args.out)
        return EXIT_OK
    if which == "lift":
        if not isinstance(table, Type2Table):
            raise AnalysisError("lifting starts from a type-2 table")
        out, prov = lift_to_type1(table), f"lift of {prov}"
    elif which == "deflate":
        if not isinstance(table, Type2Table):
            raise AnalysisError("deflation starts from a type-2 table")
        out, prov = deflate(table, args.p or f.characteristic), f"deflation of {prov}"
    else:  # derive
        if not isinstance(table, Type1Table):
            raise AnalysisError("the type-2 passage starts from a type-1 table")
        if args.z:
            z = _parse_z(args.z, f)
        else:
            rep = two_step_centralizers(table)
            if not rep.uncovered:
                raise AnalysisError("not uncovered on the range: no admissible z")
            z = rep.witness
        out, prov = derive_type2(table, z), f"type-2 restriction of {prov}"
    text = export_structured(out, prov) if args.format == "structured" else export_text(out, prov)
    _emit(text, args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.p is None or args.max_weight is None:
        raise SpecError("classify needs --p and --max-weight")
    try:
        rep = classify(
            args.p, args.max_weight, args.branch, max_nodes=args.max_nodes,
            jobs=args.jobs, certify=args.certify,
        )
    except ValueError as e:
        raise SpecError(str(e)) from None
    _emit(rep.to_json() if args.format == "structured" else rep.to_text(), args.out)
    return EXIT_OK if rep.complete else EXIT_BOUND


def cmd_compare(args) -> int:
    a, pa = load_spec(args.spec_a)
    b, pb = load_spec(args.spec_b)
    if a.field != b.field or a.N != b.N:
        raise SpecError(
            f"field/bound mismatch: {a.field.describe()} N={a.N} vs {b.field.describe()} N={b.N}"
        )
    diff = first_difference(a, b)
    if diff is None:
        _emit(f"identical: {pa} == {pb} over {a.field.describe()} N={a.N}\n", args.out)
        return EXIT_OK
    _emit(f"differ: {pa} vs {pb}, first difference at ({diff[0]}, {diff[1]})\n", args.out)
    return EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="maxclass", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--out", help="write output here instead of stdout")
        sp.add_argument("--format", choices=("text", "structured"), default="text")

    sp = sub.add_parser("build", help="export a table")
    _add_table_args(sp)
    common(sp)
    sp.add_argument("--full-table", action="store_true", help="also list every derived bracket")
    sp.set_defaults(fn=cmd_build)

    sp = sub.add_parser("check", help="Jacobi and maximal-class checks")
    _add_table_args(sp)
    common(sp)
    sp.set_defaults(fn=cmd_check)

    sp = sub.add_parser("analyze", help="constituents, centralizers, lift, deflate, derive")
    _add_table_args(sp)
    common(sp)
    sp.add_argument("--which", required=True,
                    choices=("constituents", "centralizers", "lift", "deflate", "derive"))
    sp.add_argument("--z", help="degree-one element 'a,b' = a*x + b*y for derive")
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("classify", help="exhaustive search over mu-sequences")
    sp.add_argument("--p", type=int)
    sp.add_argument("--max-weight", type=int)
    sp.add_argument("--branch", choices=BRANCHES, default="all")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--max-nodes", type=int, default=2_000_000)
    sp.add_argument("--certify", type=int, default=10,
                    help="probe each surviving sequence this many weights past the bound (0 to skip)")
    common(sp)
    sp.set_defaults(fn=cmd_classify)

    sp = sub.add_parser("compare", help="coefficient-wise comparison of two specs")
    sp.add_argument("spec_a")
    sp.add_argument("spec_b")
    sp.add_argument("--out")
    sp.set_defaults(fn=cmd_compare)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (SpecError, ValueError) as e:
        if isinstance(e, AnalysisError):
            print(f"analysis precondition failed: {e}", file=sys.stderr)
            return EXIT_ANALYSIS
        if isinstance(e, ConstructionError):
            print(f"construction error: {e}", file=sys.stderr)
            return EXIT_BUILD
        print(f"input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ProportionalityError as e:
        print(f"construction error: {e}", file=sys.stderr)
        return EXIT_BUILD


if __name__ == "__main__":
    sys.exit(main())
