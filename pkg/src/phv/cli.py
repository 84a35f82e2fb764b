"""Command-line driver: parse, transform, enumerate, check, export.

Exit codes: 0 for success (or a passing check), 1 for a check that found
violations, 2 for usage or parse errors.  Every command accepts ``--json``
for machine-readable records; the commands that produce reports or tables
also accept ``--figures DIR`` to drop a tab-separated table and a rendered
PNG next to the printed text.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections.abc import Sequence

from .castling import (
    CastlingMove,
    OrbitFragment,
    OrbitLimits,
    castle,
    castling_moves,
    enumerate_orbit,
    reduce_module,
)
from .catalog import catalog_list, export_catalog
from .core import (
    Module,
    canonical_form,
    group_dim,
    is_etale_candidate,
    module_dim,
    summand_dim,
)
from .grammar import ParseError, format_module, parse_module
from .verify import (
    Report,
    chain_invariant_check,
    theorem_A_check,
    theorem_B_scan,
    verify_catalog,
)


def _summand_list(text: str) -> tuple[int, ...]:
    """argparse type for ``--summands a,b``: 1-based, comma-separated."""
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("summand numbers are 1-based and positive")
    if len(set(values)) != len(values):
        raise argparse.ArgumentTypeError("summand numbers must be distinct")
    return values


def _flag_list(text: str) -> frozenset[str]:
    """argparse type for ``--filter etale,reduced``."""
    return frozenset(part.strip() for part in text.split(",") if part.strip())


def _json_default(obj):
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    return str(obj)


def _emit_json(record: dict) -> None:
    print(json.dumps(record, default=_json_default))


def _dim_line(m: Module) -> str:
    flag = "yes" if is_etale_candidate(m) else "no"
    return f"dim G = {group_dim(m)}, dim V = {module_dim(m)}, etale-candidate: {flag}"


def _move_record(mv: CastlingMove) -> dict:
    return {
        "kind": mv.kind,
        "factor": None if mv.factor is None else mv.factor + 1,
        "summands": sorted(j + 1 for j in mv.summands),
        "n": mv.n,
        "m": mv.m,
    }


def _check_summand_range(m: Module, numbers: Sequence[int]) -> frozenset[int]:
    """1-based CLI summand numbers to a validated 0-based index set."""
    if max(numbers) > len(m.summands):
        raise ValueError(
            f"summand {max(numbers)} out of range; the module has {len(m.summands)}"
        )
    return frozenset(j - 1 for j in numbers)


def _limits(args, policy: str | None = None) -> OrbitLimits:
    return OrbitLimits(
        max_steps=args.max_steps,
        max_dim=args.max_dim,
        max_nodes=args.max_nodes,
        subset_policy=policy or "singletons+full",
    )


def _report_exit(rep: Report, args, figure_name: str | None = None) -> int:
    """Print a verification report and map its verdict to an exit code."""
    if args.json:
        _emit_json({"command": args.command, **rep.to_dict()})
    else:
        print(rep.text())
    if figure_name is not None and args.figures:
        _write_report_files(rep, args.figures, figure_name)
    return 0 if rep.verdict == "pass" else 1


def _write_report_files(rep: Report, out_dir: str, name: str) -> None:
    from . import report as rpt

    rpt.ensure_dir(out_dir)
    if name == "scan":
        header, rows = rpt.scan_table(rep)
    else:
        header, rows = rpt.report_table(rep)
    rpt.write_tsv(os.path.join(out_dir, f"{name}.tsv"), header, rows)
    png = os.path.join(out_dir, f"{name}.png")
    if name == "scan":
        rpt.render_scan_figure(rep, png)
    elif name == "verify":
        rpt.render_verify_figure(rep, png)
    else:
        rpt.render_check_figure(rep, png)


# ---------------------------------------------------------------------------
# command handlers


def _cmd_dim(args) -> int:
    m = parse_module(args.module)
    if args.json:
        _emit_json(
            {
                "command": "dim",
                "module": format_module(m),
                "dim_g": group_dim(m),
                "dim_v": module_dim(m),
                "etale_candidate": is_etale_candidate(m),
            }
        )
    else:
        print(_dim_line(m))
    return 0


def _transform_output(args, m: Module, mv: CastlingMove, result: Module) -> int:
    if args.json:
        _emit_json(
            {
                "command": args.command,
                "input": format_module(m),
                "move": _move_record(mv),
                "result": format_module(result),
                "dim_g": group_dim(result),
                "dim_v": module_dim(result),
                "etale_candidate": is_etale_candidate(result),
            }
        )
    else:
        print(format_module(result))
        print(_dim_line(result))
    return 0


def _cmd_castle(args) -> int:
    m = parse_module(args.module)
    if not 1 <= args.factor <= len(m.group.factors):
        raise ValueError(
            f"factor {args.factor} out of range; the group has "
            f"{len(m.group.factors)} simple factors"
        )
    moves = [
        mv
        for mv in castling_moves(m)
        if mv.kind == "castle" and mv.factor == args.factor - 1
    ]
    if not moves:
        raise ValueError(f"no castling transform applies through factor {args.factor}")
    mv = moves[0]
    if args.summands is not None:
        wanted = _check_summand_range(m, args.summands)
        if wanted != mv.summands:
            acted = ",".join(str(j + 1) for j in sorted(mv.summands))
            raise ValueError(
                f"factor {args.factor} castles through summands {acted}, "
                "not the requested set"
            )
    return _transform_output(args, m, mv, castle(m, mv))


def _cmd_promote(args) -> int:
    m = parse_module(args.module)
    if args.summands is None:
        subset = frozenset(range(len(m.summands)))
    else:
        subset = _check_summand_range(m, args.summands)
    total = sum(summand_dim(m, j) for j in subset)
    if total < 3:
        raise ValueError(
            f"promotion needs joint summand dimension >= 3, got {total}"
        )
    mv = CastlingMove("promote", None, subset, 1, total)
    return _transform_output(args, m, mv, castle(m, mv))


def _cmd_orbit(args) -> int:
    from . import report as rpt

    policy = "all-subsets" if args.all_subsets else "singletons+full"
    frag = enumerate_orbit(canonical_form(parse_module(args.module)), _limits(args, policy))
    header, rows = rpt.orbit_table(frag)
    truncated = ",".join(
        label
        for label, hit in (
            ("steps", frag.truncated_steps),
            ("dim", frag.truncated_dim),
            ("nodes", frag.truncated_nodes),
        )
        if hit
    ) or "no"
    if args.json:
        _emit_json(
            {
                "command": "orbit",
                "seed": format_module(frag.seed),
                "members": [dict(zip(header, row)) for row in rows],
                "truncated": truncated,
            }
        )
    else:
        print("\t".join(header))
        for row in rows:
            print("\t".join(str(cell) for cell in row))
        print(f"# members: {len(rows)}\ttruncated: {truncated}")
    if args.figures:
        out = rpt.ensure_dir(args.figures)
        rpt.write_tsv(os.path.join(out, "orbit.tsv"), header, rows)
        rpt.render_orbit_figure(frag, os.path.join(out, "orbit.png"))
    return 0


def _cmd_reduce(args) -> int:
    m = canonical_form(parse_module(args.module))
    red = reduce_module(m)
    if args.json:
        _emit_json(
            {
                "command": "reduce",
                "input": format_module(m),
                "result": format_module(red),
                "dim_v_before": module_dim(m),
                "dim_v_after": module_dim(red),
            }
        )
    else:
        print(format_module(red))
        print(f"dim V: {module_dim(m)} -> {module_dim(red)}")
    return 0


def _cmd_check(args) -> int:
    m = parse_module(args.module)
    if args.chain:
        rep = chain_invariant_check(m, _limits(args))
    else:
        rep = theorem_A_check(m)
    return _report_exit(rep, args, figure_name="check")


def _cmd_scan(args) -> int:
    rep = theorem_B_scan(_limits(args))
    return _report_exit(rep, args, figure_name="scan")


def _cmd_catalog(args) -> int:
    entries = catalog_list(args.filter or frozenset())
    if args.json:
        from . import report as rpt

        header, rows = rpt.catalog_table(entries)
        _emit_json(
            {
                "command": "catalog",
                "entries": [dict(zip(header, row)) for row in rows],
            }
        )
    else:
        for line in export_catalog(entries):
            print(line)
    if args.figures:
        from . import report as rpt

        out = rpt.ensure_dir(args.figures)
        header, rows = rpt.catalog_table(entries)
        rpt.write_tsv(os.path.join(out, "catalog.tsv"), header, rows)
        rpt.render_catalog_figure(entries, os.path.join(out, "catalog.png"))
    return 0


def _cmd_verify(args) -> int:
    rep = verify_catalog()
    return _report_exit(rep, args, figure_name="verify")


# ---------------------------------------------------------------------------
# parser assembly


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phv",
        description="exact calculus for reductive modules: dimensions, "
        "castling transforms, orbit enumeration, and consistency checks",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--json", action="store_true", help="emit machine-readable records"
    )
    figures = argparse.ArgumentParser(add_help=False)
    figures.add_argument(
        "--figures",
        metavar="DIR",
        help="also write a .tsv table and a .png figure into DIR",
    )

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dim", parents=[common], help="dimensions of G and V")
    p.add_argument("module", help="module expression, e.g. 'GL1 x SL2 : 3w1'")
    p.set_defaults(func=_cmd_dim)

    p = sub.add_parser(
        "castle", parents=[common], help="apply the castling transform at a factor"
    )
    p.add_argument("module")
    p.add_argument(
        "--factor", type=int, required=True, metavar="F", help="1-based simple factor"
    )
    p.add_argument(
        "--summands",
        type=_summand_list,
        metavar="a,b",
        help="1-based summand set the transform must act through",
    )
    p.set_defaults(func=_cmd_castle)

    p = sub.add_parser(
        "promote",
        parents=[common],
        help="adjoin a special-linear factor acting on chosen summands",
    )
    p.add_argument("module")
    p.add_argument(
        "--summands",
        type=_summand_list,
        metavar="a,b",
        help="1-based summand set (default: all summands)",
    )
    p.set_defaults(func=_cmd_promote)

    p = sub.add_parser(
        "orbit",
        parents=[common, figures],
        help="enumerate the castling orbit within bounds",
    )
    p.add_argument("module")
    _add_limit_flags(p)
    p.add_argument(
        "--all-subsets",
        action="store_true",
        help="promote through every summand subset, not just singletons+full",
    )
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser(
        "reduce", parents=[common], help="castle down to minimal dimension"
    )
    p.add_argument("module")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser(
        "check",
        parents=[common, figures],
        help="run a coprimality check on one module",
    )
    p.add_argument("property", choices=("theorem-a",))
    p.add_argument("module")
    p.add_argument(
        "--chain",
        action="store_true",
        help="check gcd invariance across the whole castling orbit",
    )
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser(
        "scan",
        parents=[common, figures],
        help="scan castling orbits for repeated equal factors",
    )
    p.add_argument("property", choices=("theorem-b",))
    _add_limit_flags(p)
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser(
        "catalog", parents=[common, figures], help="export the built-in catalog"
    )
    p.add_argument(
        "--filter",
        type=_flag_list,
        metavar="FLAGS",
        help="comma-separated flags all shown entries must carry",
    )
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser(
        "verify", parents=[common, figures], help="verify internal consistency"
    )
    p.add_argument("target", choices=("catalog",))
    p.set_defaults(func=_cmd_verify)

    return parser


def _add_limit_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-steps", type=int, default=5, metavar="N")
    p.add_argument("--max-dim", type=int, default=10**7, metavar="D")
    p.add_argument("--max-nodes", type=int, default=10**5, metavar="K")


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        detail = exc.args[0] if exc.args else exc
        print(f"error: {detail}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
