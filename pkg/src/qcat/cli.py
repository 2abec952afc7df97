"""Command-line front end.

Every subcommand is a thin adapter over one library operation, reading
and writing the JSON schemas of the library.  Output is canonical
(sorted keys, fixed array orders) so runs are byte-identical for
identical inputs and flags.  Exit codes: 0 clean, 1 mathematical
violations or negative findings, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .category import (
    category_from_json,
    category_to_json,
    classify_endohoms,
    preorder_dot,
    underlying_preorder,
    validate_category,
)
from .causal import (
    CycleError,
    causal_space_from_dag,
    dag_from_json,
    dag_from_text,
    minkowski_sample,
    mixed_signature_check,
)
from .collage import adjoin_point, collage, collage_from_json, collage_to_json, restrict
from .modules import (
    canonical_right_adjoint,
    cauchy_completeness_report,
    cauchy_witness,
    check_adjunction,
    compose,
    find_representing,
    is_cauchy,
    module_from_json,
    module_to_json,
    representing_objects,
)
from .quantale import (
    BOT,
    FALSE,
    INF,
    TRUE,
    Kind,
    QuantaleDescriptor,
    check_laws,
    finite,
    parse_quantale_name,
    parse_value,
    split_top_level,
)

OK = "ok"
VIOLATIONS = "violations"
ERROR = "error"


@dataclass(frozen=True)
class CommandResult:
    status: str
    payload: dict
    exit_code: int


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _read_json(path: str) -> object:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"{path}: {exc}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}") from None


def _write(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _parse_grid(text: str):
    return [parse_value(part.strip()) for part in split_top_level(text)]


_DEFAULT_LAW_GRIDS = {
    Kind.RBOT: (BOT, finite(0), finite(1), finite("5/2"), finite(7), INF),
    Kind.LAWVERE: (finite(0), finite(1), finite("5/2"), finite(7), INF),
    Kind.BOOL: (FALSE, TRUE),
}


def _default_law_grid(q: QuantaleDescriptor):
    if q.kind is Kind.PRODUCT:
        from itertools import product as iproduct

        from .quantale import tuple_val

        factor_grids = [_default_law_grid(f) for f in q.factors]
        return tuple(tuple_val(parts) for parts in iproduct(*factor_grids))
    return _DEFAULT_LAW_GRIDS[q.kind]


def _cmd_laws(args) -> CommandResult:
    q = parse_quantale_name(args.quantale)
    grid = _parse_grid(args.grid) if args.grid else _default_law_grid(q)
    report = check_laws(q, grid)
    payload = {"status": OK if report.ok else VIOLATIONS, **report.to_json()}
    return CommandResult(payload["status"], payload, 0 if report.ok else 1)


def _cmd_validate(args) -> CommandResult:
    cat = category_from_json(_read_json(args.category), where=args.category)
    report = validate_category(cat)
    payload = {
        "status": OK if report.ok else VIOLATIONS,
        "objects": list(cat.objects),
        "report": report.to_json(),
    }
    ok = report.ok
    if cat.quantale.kind is Kind.RBOT:
        endo = classify_endohoms(cat)
        payload["endohoms"] = endo.to_json()
        ok = ok and endo.ok
        if not ok:
            payload["status"] = VIOLATIONS
    return CommandResult(payload["status"], payload, 0 if ok else 1)


def _cmd_compose(args) -> CommandResult:
    m = module_from_json(_read_json(args.first), where=args.first)
    n = module_from_json(_read_json(args.second), where=args.second)
    out = compose(m, n)
    _write(args.output, _dump(module_to_json(out)))
    payload = {
        "status": OK,
        "output": args.output,
        "shape": [len(out.target.objects), len(out.source.objects)],
    }
    return CommandResult(OK, payload, 0)


def _cmd_adjoint(args) -> CommandResult:
    m = module_from_json(_read_json(args.module), where=args.module)
    n = canonical_right_adjoint(m)
    report = check_adjunction(m, n)
    payload = {
        "status": OK if report.ok else VIOLATIONS,
        "right_adjoint": module_to_json(n),
        "adjunction": report.to_json(),
    }
    return CommandResult(payload["status"], payload, 0 if report.ok else 1)


def _cmd_cauchy(args) -> CommandResult:
    m = module_from_json(_read_json(args.module), where=args.module)
    cauchy = is_cauchy(m)
    n = canonical_right_adjoint(m)
    payload: dict = {"status": OK if cauchy else VIOLATIONS, "is_cauchy": cauchy}
    if cauchy:
        payload["representing"] = find_representing(m)
        payload["all_representing"] = list(representing_objects(m))
        payload["witness"] = cauchy_witness(m, n)
        if payload["representing"] is None:
            payload["status"] = VIOLATIONS
    else:
        payload["representing"] = None
        payload["all_representing"] = []
        payload["witness"] = None
    return CommandResult(payload["status"], payload, 0 if payload["status"] == OK else 1)


def _cmd_complete(args) -> CommandResult:
    cat = category_from_json(_read_json(args.category), where=args.category)
    grid = _parse_grid(args.grid) if args.grid else None
    report = cauchy_completeness_report(cat, grid)
    payload = {"status": OK if report.complete else VIOLATIONS, **report.to_json()}
    return CommandResult(payload["status"], payload, 0 if report.complete else 1)


def _cmd_collage(args) -> CommandResult:
    m = module_from_json(_read_json(args.module), where=args.module)
    col = collage(m)
    _write(args.output, _dump(collage_to_json(col)))
    payload = {"status": OK, "output": args.output, "objects": list(col.category.objects)}
    return CommandResult(OK, payload, 0)


def _cmd_restrict(args) -> CommandResult:
    col = collage_from_json(_read_json(args.collage), where=args.collage)
    m = restrict(col)
    data = module_to_json(m)
    if args.output:
        _write(args.output, _dump(data))
    payload = {"status": OK, "module": data}
    if args.output:
        payload["output"] = args.output
    return CommandResult(OK, payload, 0)


def _cmd_adjoin(args) -> CommandResult:
    m = module_from_json(_read_json(args.first), where=args.first)
    n = module_from_json(_read_json(args.second), where=args.second)
    cat = adjoin_point(m, n, label=args.label)
    _write(args.output, _dump(category_to_json(cat)))
    payload = {"status": OK, "output": args.output, "objects": list(cat.objects)}
    return CommandResult(OK, payload, 0)


def _cmd_from_dag(args) -> CommandResult:
    try:
        text = Path(args.edges).read_text(encoding="utf-8")
    except OSError as exc:
        raise ValueError(f"{args.edges}: {exc}") from None
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValueError(
                f"{args.edges}: invalid JSON at line {exc.lineno}, column {exc.colno}"
            ) from None
        dag = dag_from_json(data, where=args.edges)
    else:
        try:
            dag = dag_from_text(text)
        except ValueError as exc:
            raise ValueError(f"{args.edges}: {exc}") from None
    try:
        cat = causal_space_from_dag(dag)
    except CycleError as exc:
        raise ValueError(f"{args.edges}: {exc}") from None
    _write(args.output, _dump(category_to_json(cat)))
    payload = {"status": OK, "output": args.output, "objects": list(cat.objects)}
    return CommandResult(OK, payload, 0)


def _cmd_minkowski(args) -> CommandResult:
    parts = [p.strip() for p in args.bounds.split(",")]
    if len(parts) != 4:
        raise ValueError(f"--bounds expects t0,t1,x0,x1, got {args.bounds!r}")
    try:
        bounds = tuple(float(p) for p in parts)
    except ValueError:
        raise ValueError(f"--bounds expects numbers, got {args.bounds!r}") from None
    cat, events = minkowski_sample(args.n, args.seed, bounds)  # type: ignore[arg-type]
    _write(args.output, _dump(category_to_json(cat)))
    payload = {
        "status": OK,
        "output": args.output,
        "events": [[e.t, e.x] for e in events],
        "seed": args.seed,
    }
    return CommandResult(OK, payload, 0)


def _cmd_underlying(args) -> CommandResult:
    cat = category_from_json(_read_json(args.category), where=args.category)
    edges = underlying_preorder(cat)
    if args.dot:
        _write(args.dot, preorder_dot(cat.objects, edges))
    payload = {"status": OK, "edges": sorted([list(e) for e in edges])}
    if args.dot:
        payload["dot"] = args.dot
    return CommandResult(OK, payload, 0)


def _cmd_counterexample_mixed(args) -> CommandResult:
    record = mixed_signature_check()
    status = VIOLATIONS if record.violation else OK
    payload = {"status": status, **record.to_json()}
    return CommandResult(status, payload, 1 if record.violation else 0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcat",
        description="Finite quantale-enriched categories: validation, module algebra, "
        "Cauchy completeness, collages, and causal-space generators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("laws", help="check the quantale laws over a value grid")
    p.add_argument("--quantale", required=True, help="rbot, lawvere, bool, or a comma list for a product")
    p.add_argument("--grid", help="comma-separated values (default: a small instance grid)")
    p.set_defaults(fn=_cmd_laws)

    p = sub.add_parser("validate", help="validate a category file (plus endohom classes over rbot)")
    p.add_argument("category")
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("compose", help="compose two module files (first . second)")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=_cmd_compose)

    p = sub.add_parser("adjoint", help="canonical right adjoint and adjunction report")
    p.add_argument("module")
    p.set_defaults(fn=_cmd_adjoint)

    p = sub.add_parser("cauchy", help="Cauchy test, representing object, unit witness")
    p.add_argument("module")
    p.set_defaults(fn=_cmd_cauchy)

    p = sub.add_parser("complete", help="exhaustive Cauchy-completeness search over a grid")
    p.add_argument("category")
    p.add_argument("--grid", help="comma-separated values (default: residual closure of the homs)")
    p.set_defaults(fn=_cmd_complete)

    p = sub.add_parser("collage", help="glue a module into one category")
    p.add_argument("module")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=_cmd_collage)

    p = sub.add_parser("restrict", help="extract the module of a collage")
    p.add_argument("collage")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_restrict)

    p = sub.add_parser("adjoin", help="adjoin a point described by a module pair")
    p.add_argument("first", help="module I -/-> E (homs into the new point)")
    p.add_argument("second", help="module E -/-> I (homs out of the new point)")
    p.add_argument("--label", default="*")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=_cmd_adjoin)

    p = sub.add_parser("from-dag", help="causal space of a causal set (longest paths)")
    p.add_argument("edges", help="edge-list text file ('a b' per line) or JSON")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=_cmd_from_dag)

    p = sub.add_parser("minkowski", help="uniform sprinkling into a flat 2D rectangle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--bounds", default="0,1,0,1", help="t0,t1,x0,x1 (default 0,1,0,1)")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(fn=_cmd_minkowski)

    p = sub.add_parser("underlying", help="underlying preorder, optionally as DOT")
    p.add_argument("category")
    p.add_argument("--dot", help="write a graphviz file")
    p.set_defaults(fn=_cmd_underlying)

    p = sub.add_parser(
        "counterexample-mixed",
        help="the three-event witness that signed intervals break the triangle inequality",
    )
    p.set_defaults(fn=_cmd_counterexample_mixed)

    return parser


def run(argv: Sequence[str]) -> CommandResult:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
        if code == 0:  # --help
            return CommandResult(OK, {"status": OK}, 0)
        return CommandResult(ERROR, {"status": ERROR, "error": "invalid arguments"}, 2)
    try:
        return args.fn(args)
    except (ValueError, KeyError) as exc:
        return CommandResult(ERROR, {"status": ERROR, "error": str(exc)}, 2)


def main() -> None:
    result = run(sys.argv[1:])
    sys.stdout.write(_dump(result.payload))
    if result.status == ERROR:
        sys.stderr.write(f"error: {result.payload.get('error', '')}\n")
    sys.exit(result.exit_code)


if __name__ == "__main__":
    main()
