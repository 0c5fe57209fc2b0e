"""Command-line interface: ``cyclocolour <command> ...``.

Exit codes: 0 success, 1 usage or runtime error, 2 verification diff.
"""

from __future__ import annotations

import argparse
import csv
import functools
import json
import sys
from collections import defaultdict
from pathlib import Path

from .core import CLASS_NUMBER_ONE, ElementSyntaxError, InvalidFieldError, build_field, parse_element
from .ideals import norm
from .render import DEFAULT_PALETTE, RenderSpec, render_svg
from .series import dirichlet_coefficients, table_row, verify_table_h
from .splitting import GeneratorCache, GeneratorNotFoundError, SearchBudget, split_prime
from .symmetry import (
    BudgetExceededError,
    enumerate_colourings,
    symmetry_report,
    verify_table_K,
)

EXIT_OK, EXIT_ERROR, EXIT_DIFF = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _emit(obj) -> None:
    json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _field(n: int, need_cls1: bool = True):
    fld = build_field(n)
    if need_cls1 and not fld.class_number_one:
        raise InvalidFieldError(f"Z[xi_{n}] does not have class number one")
    return fld


def _cache(args) -> GeneratorCache:
    return GeneratorCache.default(args.cache)


def _budget(args) -> SearchBudget:
    return SearchBudget(
        max_bound=args.max_bound,
        max_support=args.max_support,
        max_candidates=args.max_candidates,
    )


def cmd_fields(args) -> int:
    groups = defaultdict(list)
    for n in CLASS_NUMBER_ONE:
        groups[build_field(n).euler_phi].append(n)
    if args.format == "json":
        _emit({str(phi): ns for phi, ns in sorted(groups.items())})
    else:
        for phi, ns in sorted(groups.items()):
            print(f"{phi}: {' '.join(map(str, ns))}")
    return EXIT_OK


def cmd_split(args) -> int:
    sp = split_prime(_field(args.n, need_cls1=False), args.p)
    _emit({
        "n": args.n, "p": sp.p, "r": sp.r, "t": sp.t, "e": sp.e, "l": sp.l, "m": sp.m,
        "kind": sp.kind, "basic_index": sp.basic_index,
    })
    return EXIT_OK


def cmd_series(args) -> int:
    fld = _field(args.n)
    mode = "perfect" if args.perfect else "full"
    if args.terms is not None:
        if mode != "perfect":
            raise UsageError("--terms needs --perfect")
        terms = table_row(fld, args.terms)
    else:
        terms = dirichlet_coefficients(fld, args.limit, mode).terms()
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["ell", "count"])
        w.writerows(terms)
    else:
        _emit({"n": args.n, "mode": mode, "terms": [[ell, c] for ell, c in terms]})
    return EXIT_OK


def _oracle_check(fld, q) -> dict:
    from .oracle import brute_force_H, brute_force_K, build_coset_table

    table = build_coset_table(fld, q)
    K = brute_force_K(table)
    return {
        "ell": table.index,
        "H": brute_force_H(table).value,
        "K": {"kind": K.kind, "rotation_order": K.rotation_order,
              "reflections": sorted(K.reflection_axes)},
    }


def _agrees(report: dict, oracle: dict) -> bool:
    return (
        report["ell"] == oracle["ell"]
        and report["H"] == oracle["H"]
        and report["K"]["kind"] == oracle["K"]["kind"]
        and report["K"]["rotation_order"] == oracle["K"]["rotation_order"]
        and report["K"]["reflections"] == oracle["K"]["reflections"]
    )


def _report_cmd(args, keys) -> int:
    fld = _field(args.n)
    q = parse_element(fld, args.q)
    if q.is_zero():
        raise UsageError("q must be nonzero")
    full = symmetry_report(fld, q).to_json()
    out = {k: full[k] for k in keys}
    if not args.oracle:
        _emit(out)
        return EXIT_OK
    oracle = _oracle_check(fld, q)
    ok = _agrees(full, oracle)
    _emit({**out, "oracle": oracle, "agree": ok})
    return EXIT_OK if ok else EXIT_DIFF


def cmd_classify(args) -> int:
    return _report_cmd(args, ("n", "q", "ell", "H", "K"))


def cmd_kgroup(args) -> int:
    return _report_cmd(args, ("ell", "H", "K"))


def cmd_enumerate(args) -> int:
    fld = _field(args.n)
    atlas = enumerate_colourings(fld, args.ell, _cache(args), _budget(args))
    out = atlas.to_json()
    out["expected_count"] = dirichlet_coefficients(fld, args.ell, "full")[args.ell]
    status = EXIT_OK if out["expected_count"] == atlas.count else EXIT_DIFF
    if args.oracle:
        agree = True
        for entry, rec in zip(atlas.entries, out["colourings"]):
            rec["oracle"] = _oracle_check(fld, entry.generator)
            rec["agree"] = _agrees(rec, rec["oracle"])
            agree = agree and rec["agree"]
        if not agree:
            status = EXIT_DIFF
    _emit(out)
    return status


def cmd_tables(args) -> int:
    ns = args.n or list(CLASS_NUMBER_ONE)
    entries = []
    for n in ns:
        fld = _field(n)
        if args.which == "H":
            entries += verify_table_h(fld)
        else:
            entries += verify_table_K(fld, _cache(args), _budget(args))
    diffs = [e for e in entries if e["status"] != "match"]
    _emit({"which": args.which, "entries": entries, "diff_count": len(diffs)})
    for e in diffs:
        print(
            f"diff n={e['n']} ell={e['ell']} printed={e['printed']} "
            f"computed={e.get('computed')}",
            file=sys.stderr,
        )
    return EXIT_DIFF if diffs else EXIT_OK


def cmd_render(args) -> int:
    fld = _field(args.n)
    q = parse_element(fld, args.q)
    palette = tuple(args.palette.split(",")) if args.palette else DEFAULT_PALETTE
    spec = RenderSpec(q, args.radius, args.coeff_bound, palette, Path(args.output))
    render_svg(spec)
    print(f"wrote {args.output} (n={args.n}, ell={norm(q)})", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache", help="generator cache file (default $CYCLOCOLOUR_CACHE or ~/.cache)")
    common.add_argument("--max-bound", type=int, default=None, help="largest |coefficient| in the generator search")
    common.add_argument("--max-support", type=int, default=None, help="largest support in the generator search")
    common.add_argument("--max-candidates", type=int, default=SearchBudget().max_candidates)

    parser = _Parser(prog="cyclocolour", description="Ideal colourings of Z[xi_n] with class number one.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    add = functools.partial(sub.add_parser, parents=[common])

    p = add("fields", help="list the admissible n grouped by phi(n)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_fields)

    p = add("split", help="splitting data of a rational prime")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_split)

    p = add("series", help="Dirichlet coefficients a_n(ell)")
    p.add_argument("--n", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--limit", type=int)
    g.add_argument("--terms", type=int)
    p.add_argument("--perfect", action="store_true", help="perfect-colouring indices only")
    p.add_argument("--format", choices=("csv", "json"), default="json")
    p.set_defaults(func=cmd_series)

    for name, func in (("classify", cmd_classify), ("kgroup", cmd_kgroup)):
        p = add(name, help=f"{name} the colouring induced by q")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", required=True, help='element such as "1-x" (x stands for xi_n)')
        p.add_argument("--oracle", action="store_true", help="cross-check against the coset oracle")
        p.set_defaults(func=func)

    p = add("enumerate", help="all ell-colourings with their symmetry")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = add("tables", help="verify the embedded reference tables")
    p.add_argument("--which", choices=("H", "K"), required=True)
    p.add_argument("--n", type=int, action="append", help="restrict to this n (repeatable)")
    p.set_defaults(func=cmd_tables)

    p = add("render", help="SVG picture of a coloured patch")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--radius", type=float, default=10.0)
    p.add_argument("--coeff-bound", type=int, default=2)
    p.add_argument("--palette", help="comma-separated colours")
    p.add_argument("--output", default="colouring.svg")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("limit", "terms", "ell", "p"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            print(f"error: --{name} must be positive", file=sys.stderr)
            return EXIT_ERROR
    try:
        return args.func(args)
    except InvalidFieldError as exc:
        print(f"error: invalid field: {exc}", file=sys.stderr)
    except ElementSyntaxError as exc:
        print(f"error: cannot parse element: {exc}", file=sys.stderr)
    except (BudgetExceededError, GeneratorNotFoundError) as exc:
        print(f"error: search budget exhausted: {exc}", file=sys.stderr)
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
