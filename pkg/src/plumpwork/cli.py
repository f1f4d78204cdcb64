"""Command-line workbench: ``plumpwork <verb> ...``.

Exit codes: 0 success, 1 suite failure, 2 usage or parse error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import suites
from .arith import add, mul, power
from .coding import MapError, decode, encode, finite_map, pairwise_incomparable
from .heyting import PosetError, builtin_names, check_laws, get_algebra
from .logic import ScopeError, UnboundVariable, eval_index
from .names import BudgetExceeded, Context, Name
from .plump import is_ord, is_thin, plord, plord_crit, plump_operator, plump_succ, theta, thin_succ
from .syntax import ParseError, format_name, parse_formula, parse_name

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _options(defaults: bool) -> argparse.ArgumentParser:
    # nested parsers must not reset options already given before the verb
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", "-a", default=d(None),
                        help="built-in algebra name or poset JSON file (default: sierpinski)")
    common.add_argument("--json", action="store_true", default=d(False),
                        help="machine-readable output")
    common.add_argument("--budget", default=d(None),
                        help="budget config file (default: $PLUMPWORK_BUDGET or the packaged one)")
    common.add_argument("--timing", action="store_true", default=d(False),
                        help="include wall time in suite reports")
    return common


def _parser() -> argparse.ArgumentParser:
    top, common = _options(True), _options(False)

    p = argparse.ArgumentParser(prog="plumpwork", parents=[top],
                                description="Workbench for finite Heyting-valued models of plump ordinals.")
    sub = p.add_subparsers(dest="verb", required=True)

    alg = sub.add_parser("algebra", parents=[common], help="built-in algebras").add_subparsers(
        dest="action", required=True)
    alg.add_parser("list", parents=[common])
    for a in ("check", "show"):
        q = alg.add_parser(a, parents=[common])
        q.add_argument("name", nargs="?")

    ev = sub.add_parser("eval", parents=[common], help="evaluate a closed formula")
    ev.add_argument("formula")

    pl = sub.add_parser("plump", parents=[common], help="ordinal predicates and operators").add_subparsers(
        dest="action", required=True)
    pl.add_parser("check", parents=[common]).add_argument("name")
    q = pl.add_parser("succ", parents=[common])
    q.add_argument("name")
    q.add_argument("--thin", action="store_true", help="thin successor instead of plump")
    pl.add_parser("op", parents=[common]).add_argument("name")
    q = pl.add_parser("theta", parents=[common])
    q.add_argument("alpha")
    q.add_argument("beta")

    ar = sub.add_parser("arith", parents=[common], help="plump ordinal arithmetic").add_subparsers(
        dest="action", required=True)
    for a in ("add", "mul", "pow"):
        q = ar.add_parser(a, parents=[common])
        q.add_argument("a")
        q.add_argument("b")

    co = sub.add_parser("code", parents=[common], help="incomparable map coding").add_subparsers(
        dest="action", required=True)
    q = co.add_parser("encode", parents=[common])
    q.add_argument("map_file", help='JSON list of ["key", "value"] name-literal pairs')
    q.add_argument("alpha")
    q.add_argument("beta")
    q = co.add_parser("decode", parents=[common])
    q.add_argument("sigma")
    q.add_argument("alpha")
    q.add_argument("beta")

    su = sub.add_parser("suite", parents=[common], help="theorem suites").add_subparsers(
        dest="action", required=True)
    su.add_parser("list", parents=[common])
    q = su.add_parser("run", parents=[common])
    q.add_argument("ids", nargs="+", help="suite ids, or 'all'")
    return p


# -- helpers -------------------------------------------------------------------

def _emit(args, data, text: str):
    if args.json:
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _context(args) -> Context:
    name = args.algebra or "sierpinski"
    try:
        h = get_algebra(name)
    except (KeyError, OSError, PosetError, ValueError) as e:
        raise UsageError(str(e).strip("'\""))
    config = suites.load_config(args.budget)
    return Context(h, suites.budget_of(config.get("default", {})))


def _name(ctx: Context, text: str) -> Name:
    return ctx.normalize(parse_name(text, ctx))


def _label(ctx: Context, v: int) -> str:
    return ctx.h.labels[v]


# -- verbs -----------------------------------------------------------------------

def cmd_algebra(args) -> int:
    if args.action == "list":
        rows = [{"name": n, "size": get_algebra(n).size, "boolean": get_algebra(n).is_boolean()}
                for n in builtin_names()]
        _emit(args, rows, "\n".join(f"{r['name']:<12} |H|={r['size']}"
                                    f"{'  boolean' if r['boolean'] else ''}" for r in rows))
        return EXIT_OK
    if args.name:
        args.algebra = args.name
    h = _context(args).h
    if args.action == "check":
        viol = check_laws(h)
        data = {"algebra": h.name, "violations": [str(v) for v in viol]}
        _emit(args, data, f"{h.name}: {len(viol)} violations" +
              "".join(f"\n  {v}" for v in viol))
        return EXIT_FAIL if viol else EXIT_OK
    d = h.describe()
    d["meet"] = [[h.labels[h.meet[p][q]] for q in h.carrier] for p in h.carrier]
    d["join"] = [[h.labels[h.join[p][q]] for q in h.carrier] for p in h.carrier]
    d["implies"] = [[h.labels[h.implies[p][q]] for q in h.carrier] for p in h.carrier]
    lines = [f"{h.name}: |H|={h.size}, bottom={d['bottom']}, top={d['top']}, boolean={d['boolean']}",
             "order: " + ", ".join(f"{a}<{b}" for a, b in d["leq"])]
    w = max(len(x) for x in h.labels)
    for op in ("meet", "join", "implies"):
        lines.append(f"{op}:")
        lines.append(" " * (w + 3) + " ".join(x.ljust(w) for x in h.labels).rstrip())
        for p in h.carrier:
            lines.append(f"  {h.labels[p].ljust(w)} " + " ".join(x.ljust(w) for x in d[op][p]).rstrip())
    _emit(args, d, "\n".join(lines))
    return EXIT_OK


def cmd_eval(args) -> int:
    ctx = _context(args)
    f = parse_formula(args.formula, ctx)
    v = _label(ctx, eval_index(f, {}, ctx))
    _emit(args, {"algebra": ctx.h.name, "value": v}, v)
    return EXIT_OK


def cmd_plump(args) -> int:
    ctx = _context(args)
    if args.action == "check":
        x = _name(ctx, args.name)
        data = {"ord": is_ord(ctx, x), "thin": is_thin(ctx, x), "plord": plord(ctx, x),
                "plord_crit": plord_crit(ctx, x), "vartheta": theta(ctx, x)}
        data = {k: _label(ctx, v) for k, v in data.items()}
        _emit(args, data, "\n".join(f"{k:<11}{v}" for k, v in data.items()))
        return EXIT_OK
    if args.action == "theta":
        alpha, beta = _name(ctx, args.alpha), _name(ctx, args.beta)
        if ctx.sub(beta, alpha) != ctx.h.top:
            sys.stderr.write("note: beta is not a top-subset of alpha\n")
        v = _label(ctx, theta(ctx, beta))
        _emit(args, {"vartheta": v}, v)
        return EXIT_OK
    x = _name(ctx, args.name)
    if args.action == "succ":
        r = thin_succ(ctx, x) if args.thin else plump_succ(ctx, x)
    else:
        r = plump_operator(ctx, x)
    return _show_name(args, ctx, r)


def _show_name(args, ctx: Context, r: Name) -> int:
    v = _label(ctx, plord(ctx, r))
    text = format_name(r)
    _emit(args, {"name": text, "rank": r.rank, "entries": len(r.entries), "plord": v},
          f"{text}\nplord: {v}")
    return EXIT_OK


def cmd_arith(args) -> int:
    ctx = _context(args)
    op = {"add": add, "mul": mul, "pow": power}[args.action]
    return _show_name(args, ctx, op(ctx, _name(ctx, args.a), _name(ctx, args.b)))


def _read_map(ctx: Context, path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read map file: {e}")
    except json.JSONDecodeError as e:
        raise UsageError(f"map file is not JSON: {e}")
    domain = None
    if isinstance(data, dict):
        domain = data.get("domain")
        data = data.get("pairs", [])
    if not isinstance(data, list) or not all(isinstance(p, list) and len(p) == 2 for p in data):
        raise UsageError('map file must be a JSON list of ["key", "value"] pairs')
    pairs = [(_name(ctx, k), _name(ctx, v)) for k, v in data]
    return finite_map(pairs, ctx, _name(ctx, domain) if domain else None)


def cmd_code(args) -> int:
    ctx = _context(args)
    alpha, beta = _name(ctx, args.alpha), _name(ctx, args.beta)
    if args.action == "encode":
        f = _read_map(ctx, args.map_file)
        inc = pairwise_incomparable(ctx, f)
        if inc != ctx.h.top:
            sys.stderr.write(f"note: map is pairwise incomparable only to degree {_label(ctx, inc)}\n")
        return _show_name(args, ctx, encode(ctx, f, alpha, beta))
    g = decode(ctx, _name(ctx, args.sigma), alpha, beta)
    pairs = [[format_name(k), format_name(v)] for k, v in g.pairs]
    _emit(args, {"pairs": pairs}, "\n".join(f"{k} -> {v}" for k, v in pairs) or "(empty map)")
    return EXIT_OK


def cmd_suite(args) -> int:
    if args.action == "list":
        rows = [{"id": s.id, "algebras": list(s.algebras), "summary": s.summary}
                for s in (suites.SUITES[i] for i in suites.suite_ids())]
        _emit(args, rows, "\n".join(f"{r['id']:<28} {','.join(r['algebras']):<34} {r['summary']}"
                                    for r in rows))
        return EXIT_OK
    config = suites.load_config(args.budget)
    ids = suites.suite_ids() if args.ids == ["all"] else args.ids
    for sid in ids:
        if sid not in suites.SUITES:
            raise UsageError(f"unknown suite {sid!r}; see `plumpwork suite list`")
    runs = []
    for sid in ids:
        algs = [args.algebra] if args.algebra else list(suites.SUITES[sid].algebras)
        for a in algs:
            try:
                runs.append(suites.run_suite(sid, a, config))
            except suites.NotApplicable as e:
                raise UsageError(str(e))
            except (KeyError, OSError, PosetError) as e:
                raise UsageError(str(e).strip("'\""))
    code = max((r.exit_code for r in runs), default=EXIT_OK)
    if code == EXIT_BUDGET and any(r.exit_code == EXIT_FAIL for r in runs):
        code = EXIT_FAIL
    if args.json:
        out = [r.as_dict(args.timing) for r in runs]
        sys.stdout.write(json.dumps(out if len(out) != 1 else out[0], indent=2, sort_keys=True,
                                    ensure_ascii=False) + "\n")
        return code
    for r in runs:
        t = r.totals
        status = {EXIT_OK: "PASS", EXIT_FAIL: "FAIL", EXIT_BUDGET: "BUDGET"}[r.exit_code]
        line = (f"{status:<6} {r.suite:<28} {r.algebra:<11} {t['passed']}/{t['instances']} passed"
                f"{', %d over budget' % t['budget_exceeded'] if t['budget_exceeded'] else ''}")
        if args.timing:
            line += f"  {r.wall_time:.2f}s"
        print(line)
        for rec in r.failures()[:5]:
            print(f"         {rec.instance}: {rec.relation} {json.dumps(rec.values, ensure_ascii=False)}")
    return code


VERBS = {"algebra": cmd_algebra, "eval": cmd_eval, "plump": cmd_plump, "arith": cmd_arith,
         "code": cmd_code, "suite": cmd_suite}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        return VERBS[args.verb](args)
    except (UsageError, ParseError, ScopeError, UnboundVariable, MapError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except KeyError as e:
        # unknown truth-value labels surface as KeyError from the algebra
        sys.stderr.write(f"error: {str(e).strip(chr(34) + chr(39))}\n")
        return EXIT_USAGE
    except BudgetExceeded as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
