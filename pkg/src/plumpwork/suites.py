"""Theorem suites: each invariant becomes an exhaustive desk-scale sweep.

A suite yields instances; each instance checks one relation between
computed truth values and records the values.  Reports are deterministic:
records are sorted by instance key and wall time is kept out of the JSON
unless asked for.
"""
from __future__ import annotations

import hashlib
import json
import os
import time
from dataclasses import dataclass, field
from importlib import resources
from itertools import combinations, product
from typing import Callable, Iterator

from . import gen
from .arith import add, mul, power
from .coding import (
    decode, decode_pairs, encode, finite_map, is_functional, maps_equal,
    pairwise_incomparable, reconstruct, sigma_of,
)
from .heyting import all_posets, builtin_names, check_laws, downset_algebra, get_algebra
from .logic import (
    FALSE, And, Const, Eq, ExistsIn, ExistsSubset, ForallIn, ForallSubset, Formula,
    Implies, Mem, Not, Or, Sub, Var, eval_index, plord_matrix, relpl, relpl_formula,
    thin_matrix, transitive_formula,
)
from .names import Budget, BudgetExceeded, Context, Name, check_name
from .plump import (
    is_ord, is_thin, plord, plord_crit, plump_operator, plump_succ, theta, thin_succ,
)
from .syntax import format_formula, format_name

ALL = tuple(builtin_names())
BUDGET_ENV = "PLUMPWORK_BUDGET"
BUDGET_KEYS = ("max_rank", "max_entries", "max_subsets")


class UnknownSuite(KeyError):
    pass


class NotApplicable(ValueError):
    pass


# -- configuration -------------------------------------------------------------

def load_config(path: str | None = None) -> dict:
    """Budget configuration: the packaged defaults, or ``path`` / ``$PLUMPWORK_BUDGET``."""
    path = path or os.environ.get(BUDGET_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    return json.loads(resources.files("plumpwork").joinpath("budget.json").read_text("utf-8"))


def settings_for(config: dict, suite: str, algebra: str) -> dict:
    """Defaults, then the suite's ``*`` block, then its per-algebra block."""
    out = dict(config.get("default", {}))
    per = config.get("suites", {}).get(suite, {})
    out.update(per.get("*", {}))
    out.update(per.get(algebra, {}))
    return out


def budget_of(settings: dict) -> Budget:
    return Budget(**{k: settings[k] for k in BUDGET_KEYS if k in settings})


# -- reports -------------------------------------------------------------------

@dataclass
class Record:
    instance: str
    relation: str
    values: dict
    passed: bool
    budget_exceeded: bool = False

    def as_dict(self) -> dict:
        d = {"instance": self.instance, "relation": self.relation,
             "values": self.values, "pass": self.passed}
        if self.budget_exceeded:
            d["budget_exceeded"] = True
        return d


@dataclass
class SuiteReport:
    suite: str
    algebra: str
    settings: dict
    records: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def totals(self) -> dict:
        n = len(self.records)
        ok = sum(r.passed for r in self.records)
        be = sum(r.budget_exceeded for r in self.records)
        return {"instances": n, "passed": ok, "failed": n - ok - be, "budget_exceeded": be}

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def exit_code(self) -> int:
        t = self.totals
        if t["failed"]:
            return 1
        if t["budget_exceeded"]:
            return 3
        return 0

    def as_dict(self, timing: bool = False) -> dict:
        d = {"suite": self.suite, "algebra": self.algebra, "settings": self.settings,
             "totals": self.totals, "records": [r.as_dict() for r in self.records]}
        if timing:
            d["wall_time"] = round(self.wall_time, 3)
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def failures(self) -> list[Record]:
        return [r for r in self.records if not r.passed]


# -- suite registry ------------------------------------------------------------

Check = Callable[[], tuple]


@dataclass(frozen=True)
class Instance:
    key: str
    relation: str
    check: Check  # returns (values: dict, passed: bool)


@dataclass(frozen=True)
class Suite:
    id: str
    summary: str
    algebras: tuple
    build: Callable[[Context, dict], Iterator[Instance]]


SUITES: dict[str, Suite] = {}


def suite(sid: str, summary: str, algebras: tuple = ALL):
    def deco(fn):
        SUITES[sid] = Suite(sid, summary, tuple(algebras), fn)
        return fn
    return deco


def suite_ids() -> list[str]:
    return sorted(SUITES)


def run_suite(sid: str, algebra: str | None = None, config: dict | None = None) -> SuiteReport:
    if sid not in SUITES:
        raise UnknownSuite(f"unknown suite {sid!r}; see `suite list`")
    s = SUITES[sid]
    if algebra is None:
        algebra = s.algebras[0]
    if algebra not in s.algebras and not (s.algebras == ALL and algebra.endswith(".json")):
        raise NotApplicable(f"suite {sid!r} runs over {', '.join(s.algebras)}, not {algebra!r}")
    config = config if config is not None else load_config()
    settings = settings_for(config, sid, algebra)
    # the poset sweep builds its own algebras; its context is only a carrier for the budget
    h = get_algebra("bool2" if algebra == "posets" else algebra)
    ctx = Context(h, budget_of(settings))
    report = SuiteReport(sid, algebra, settings)
    cap = settings.get("instance_cap")
    start = time.perf_counter()
    records = []
    try:
        for inst in s.build(ctx, settings):
            if cap is not None and len(records) >= cap:
                records.append(Record("~instance-cap", "instances <= instance_cap",
                                      {"instance_cap": cap}, False, budget_exceeded=True))
                break
            records.append(_run_instance(h, inst))
    except BudgetExceeded as e:
        records.append(Record("~generator", "generator within budget",
                              {"error": str(e)}, False, budget_exceeded=True))
    report.wall_time = time.perf_counter() - start
    records.sort(key=lambda r: r.instance)
    report.records = records
    return report


def _run_instance(h, inst: Instance) -> Record:
    try:
        values, passed = inst.check()
    except BudgetExceeded as e:
        return Record(inst.key, inst.relation, {"error": str(e)}, False, budget_exceeded=True)
    return Record(inst.key, inst.relation, _labels(h, values), bool(passed))


# integer record values that are counts rather than truth values
COUNT_KEYS = frozenset({"checked", "violations", "carrier", "subsets", "pairs", "keys",
                        "decoded_keys", "top_members", "expected", "instance_cap"})


def _labels(h, values: dict) -> dict:
    out = {}
    for k, v in values.items():
        if isinstance(v, int) and not isinstance(v, bool) and k not in COUNT_KEYS:
            out[k] = h.labels[v]
        else:
            out[k] = v
    return out


# -- helpers -------------------------------------------------------------------

def describe(x: Name, limit: int = 160) -> str:
    text = format_name(x)
    if len(text) <= limit:
        return text
    digest = hashlib.sha1(text.encode()).hexdigest()[:12]
    return f"<rank {x.rank}, {len(x.entries)} entries, sha1 {digest}>"


def _key(*parts) -> str:
    return " ".join(str(p) for p in parts)


def _idx(i: int, width: int = 4) -> str:
    return str(i).zfill(width)


def _first_failure(pairs):
    """``(checked, counterexample or None)`` over an iterable of ``(ok, witness)``."""
    n = 0
    for ok, witness in pairs:
        n += 1
        if not ok:
            return n, witness
    return n, None


def _sweep(pairs) -> tuple:
    n, bad = _first_failure(pairs)
    vals = {"checked": n}
    if bad is not None:
        vals["counterexample"] = bad
    return vals, bad is None


# ==============================================================================
# heyting
# ==============================================================================

@suite("heyting-laws", "lattice, distributivity and adjunction laws of the algebra, exhaustively")
def _heyting_laws(ctx, cfg):
    h = ctx.h
    viol = check_laws(h)
    laws = ["reflexivity", "antisymmetry", "transitivity", "bottom-least", "top-greatest",
            "meet-lower-bound", "meet-greatest", "join-upper-bound", "join-least",
            "distributivity", "adjunction"]
    for law in laws:
        bad = [str(v) for v in viol if v.law == law]
        yield Instance(law, "no violations",
                       lambda bad=bad: ({"violations": len(bad), "first": bad[:1]}, not bad))
    C = h.carrier

    def imp_top():
        return _sweep(((h.implies[p][q] == h.top) == h.leq[p][q], f"{h.labels[p]},{h.labels[q]}")
                      for p in C for q in C)
    yield Instance("implies-top-iff-leq", "p => q = top iff p <= q", imp_top)


@suite("heyting-posets", "every poset on at most 4 points yields a lawful algebra; Boolean iff antichain",
       algebras=("posets",))
def _heyting_posets(ctx, cfg):
    for n in range(cfg.get("max_points", 4) + 1):
        for i, p in enumerate(all_posets(n)):
            def check(p=p):
                h = downset_algebra(p)
                v = check_laws(h)
                anti = p.is_antichain()
                return ({"carrier": h.size, "violations": len(v), "boolean": h.is_boolean(),
                         "antichain": anti}, not v and h.is_boolean() == anti)
            yield Instance(_key(f"n={n}", _idx(i)), "laws hold; boolean iff antichain", check)


# ==============================================================================
# names
# ==============================================================================

def _strict(ctx: Context) -> Context:
    return Context(ctx.h, ctx.budget, strict=True)


@suite("names-equality", "[x=x] = top, symmetry and transitivity of [=] over all names of bounded rank")
def _names_equality(ctx, cfg):
    s = _strict(ctx)
    h = s.h
    X = gen.names_upto(ctx, cfg.get("rank", 2))
    L = h.leq
    for i, x in enumerate(X):
        k = _idx(i)
        yield Instance(_key("refl", k), "[x=x] = top",
                       lambda x=x: ({"eq": s.eq(x, x)}, s.eq(x, x) == h.top))
        yield Instance(_key("symm", k), "[x=y] = [y=x] for all y",
                       lambda x=x: _sweep((s.eq(x, y) == s.eq(y, x), describe(y)) for y in X))
        yield Instance(_key("trans", k), "[x=y] /\\ [y=z] <= [x=z] for all y, z",
                       lambda x=x: _sweep((L[h.meet[s.eq(x, y)][s.eq(y, z)]][s.eq(x, z)],
                                           f"{describe(y)} ; {describe(z)}")
                                          for y in X for z in X))


@suite("names-leibniz", "[x=y] /\\ [x in z] <= [y in z] and [x=y] /\\ [z in x] <= [z in y]")
def _names_leibniz(ctx, cfg):
    s = _strict(ctx)
    h = s.h
    X = gen.names_upto(ctx, cfg.get("rank", 2))
    L, M = h.leq, h.meet
    for i, x in enumerate(X):
        k = _idx(i)
        yield Instance(_key("left", k), "[x=y] /\\ [x in z] <= [y in z]",
                       lambda x=x: _sweep((L[M[s.eq(x, y)][s.mem(x, z)]][s.mem(y, z)],
                                           f"{describe(y)} ; {describe(z)}")
                                          for y in X for z in X))
        yield Instance(_key("right", k), "[x=y] /\\ [z in x] <= [z in y]",
                       lambda x=x: _sweep((L[M[s.eq(x, y)][s.mem(z, x)]][s.mem(z, y)],
                                           f"{describe(y)} ; {describe(z)}")
                                          for y in X for z in X))


def raw_variants(x: Name) -> list[Name]:
    """Non-canonical names top-equal to ``x``: padded, duplicated, reordered, nested."""
    h = x.algebra
    bot = h.bottom
    zero = Name(h, ())
    pad = Name(h, ((zero, bot),))
    ents = list(x.entries)
    out = [
        Name(h, ents + [(pad, bot)]),
        Name(h, list(reversed(ents))),
        Name(h, ents + [(c, w2) for c, w in ents for w2 in h.below[w]]),
        Name(h, [(Name(h, c.entries + ((pad, bot),)), w) for c, w in ents]),
        Name(h, [(Name(h, tuple(reversed(c.entries))), w) for c, w in ents] + [(zero, bot)]),
    ]
    return out


@suite("names-normalize", "normalize is idempotent, canonical and preserves [=] and [in]")
def _names_normalize(ctx, cfg):
    h = ctx.h
    X = gen.names_upto(ctx, cfg.get("rank", 2))
    s = _strict(ctx)
    for i, x in enumerate(X):
        for j, v in enumerate(raw_variants(x)):
            def check(x=x, v=v):
                n = ctx.normalize(v)
                canon = (n is ctx.normalize(n)
                         and all(w != h.bottom for _, w in n.entries)
                         and [c.skey for c, _ in n.entries] == sorted(c.skey for c, _ in n.entries)
                         and all(ctx.eq(a, b) != h.top for (a, _), (b, _) in combinations(n.entries, 2)))
                same, bad = _first_failure(
                    ((s.eq(v, y), s.mem(v, y), s.mem(y, v)) == (s.eq(n, y), s.mem(n, y), s.mem(y, n)),
                     describe(y)) for y in X)
                vals = {"eq_normal_raw": s.eq(n, v), "eq_normal_x": s.eq(n, x), "canonical": canon,
                        "checked": same}
                if bad is not None:
                    vals["counterexample"] = bad
                return vals, canon and bad is None and s.eq(n, v) == h.top and s.eq(n, x) == h.top
            yield Instance(_key(_idx(i), f"v{j}"), "normalize(v) = v at top; canonical; values unchanged",
                           check)


@suite("names-subset-complete", "subset_names(x) is sound and complete up to top-equality")
def _names_subset_complete(ctx, cfg):
    h = ctx.h
    top = h.top
    rank = cfg.get("rank", 2)
    X = gen.names_upto(ctx, rank)
    # completeness is checked against raw, undeduplicated names so that it does
    # not lean on subset enumeration itself
    raw = {k: gen.raw_names_upto(h, k) for k in range(rank + 1)}
    for i, x in enumerate(X):
        def check(x=x):
            subs = ctx.subset_names(x)
            sound = all(ctx.sub(g, x) == top for g in subs)
            distinct = all(ctx.eq(a, b) != top for a, b in combinations(subs, 2))
            vals, ok = _sweep((any(ctx.eq(z, g) == top for g in subs), describe(z))
                              for z in raw[x.rank] if ctx.sub(z, x) == top)
            vals.update({"subsets": len(subs), "sound": sound, "distinct": distinct})
            return vals, ok and sound and distinct
        yield Instance(_idx(i), "every top-subset is top-equal to a listed subset name", check)


@suite("names-memo", "memoized and memo-free evaluation of [=], [in], [sub] agree")
def _names_memo(ctx, cfg):
    fresh = Context(ctx.h, ctx.budget, memo=False)
    X = gen.names_upto(ctx, cfg.get("rank", 2))
    for i, x in enumerate(X):
        yield Instance(_idx(i), "memo = recomputation for all y",
                       lambda x=x: _sweep(((ctx.eq(x, y), ctx.mem(x, y), ctx.sub(x, y))
                                           == (fresh.eq(x, y), fresh.mem(x, y), fresh.sub(x, y)),
                                           describe(y)) for y in X))


# ==============================================================================
# logic
# ==============================================================================

def one_var_formulas(h, t: Name | None = None) -> list[Formula]:
    """Formulas with the single free variable ``x``, used by the logic suites."""
    X, Y = Var("x"), Var("y")
    zero, one = Const(check_name(h, 0)), Const(check_name(h, 1))
    fs = [
        Mem(zero, X),
        Not(Mem(zero, X)),
        Or(Mem(zero, X), Not(Mem(zero, X))),
        Eq(X, zero),
        Sub(X, one),
        Sub(one, X),
        ForallIn("y", X, Eq(Y, zero)),
        ExistsIn("y", X, Not(Eq(Y, zero))),
        transitive_formula("x"),
        thin_matrix("x"),
        ExistsSubset("y", X, And(Mem(zero, Y), Not(Eq(Y, X)))),
    ]
    if t is not None:
        fs.append(relpl_formula(Const(t), "x"))
        fs.append(relpl_formula("x", Const(t)))
    return fs


@suite("logic-subset-soundness",
       "subset quantifiers over subset_names agree with quantifying over all names of bounded rank")
def _logic_subset_soundness(ctx, cfg):
    h = ctx.h
    M, J, I = h.meet, h.join, h.implies
    rank = cfg.get("rank", 2)
    T = gen.names_upto(ctx, rank)
    raw = cfg.get("universe", "classes") == "raw"
    universe = {k: gen.raw_names_upto(h, k) if raw else gen.names_upto(ctx, k) for k in range(rank + 1)}
    for i, t in enumerate(T):
        for j, phi in enumerate(one_var_formulas(h, t)):
            def check(t=t, phi=phi):
                Z = universe[t.rank]
                body = [(ctx.sub(z, t), eval_index(phi, {"x": z}, ctx)) for z in Z]
                brute_all = h.meet_all(I[s][v] for s, v in body)
                brute_ex = h.join_all(M[s][v] for s, v in body)
                fa = eval_index(ForallSubset("x", Const(t), phi), {}, ctx)
                ex = eval_index(ExistsSubset("x", Const(t), phi), {}, ctx)
                return ({"forall": fa, "forall_brute": brute_all, "exists": ex,
                         "exists_brute": brute_ex}, fa == brute_all and ex == brute_ex)
            yield Instance(_key(_idx(i), f"f{j:02d}"), "all/ex x sub t agree with brute force", check)


@suite("logic-extensionality", "[x=y] /\\ phi(x) <= phi(y) for the suite formulas")
def _logic_ext(ctx, cfg):
    h = ctx.h
    L, M = h.leq, h.meet
    X = gen.names_upto(ctx, cfg.get("rank", 2))
    fs = one_var_formulas(h) + [plord_matrix("x")]
    for j, phi in enumerate(fs):
        vals = {}

        def value(x, phi=phi, vals=vals):
            v = vals.get(x)
            if v is None:
                v = vals[x] = eval_index(phi, {"x": x}, ctx)
            return v
        for i, x in enumerate(X):
            yield Instance(_key(f"f{j:02d}", _idx(i)), "[x=y] /\\ phi(x) <= phi(y) for all y",
                           lambda x=x, value=value: _sweep(
                               (L[M[ctx.eq(x, y)][value(x)]][value(y)], describe(y)) for y in X))


def _schemas():
    P, Q = "P", "Q"
    return [
        ("and-elim", lambda p, q: (And(p, q), p)),
        ("or-intro", lambda p, q: (p, Or(p, q))),
        ("double-negation-intro", lambda p, q: (p, Not(Not(p)))),
        ("modus-ponens", lambda p, q: (And(p, Implies(p, q)), q)),
        ("triple-negation", lambda p, q: (Not(Not(Not(p))), Not(p))),
        ("or-comm", lambda p, q: (Or(p, q), Or(q, p))),
        ("de-morgan-or", lambda p, q: (Not(Or(p, q)), And(Not(p), Not(q)))),
        ("de-morgan-weak", lambda p, q: (Or(Not(p), Not(q)), Not(And(p, q)))),
        ("contraposition", lambda p, q: (Implies(p, q), Implies(Not(q), Not(p)))),
        ("ex-falso", lambda p, q: (FALSE, p)),
    ]


@suite("logic-monotone", "intuitionistic propositional entailments hold as inequalities")
def _logic_monotone(ctx, cfg):
    h = ctx.h
    N = gen.names_upto(ctx, cfg.get("atom_rank", 1))
    atoms = [op(Const(a), Const(b)) for a in N for b in N for op in (Eq, Mem, Sub)]
    for name, schema in _schemas():
        def check(schema=schema):
            return _sweep((h.leq[eval_index(f, {}, ctx)][eval_index(g, {}, ctx)],
                           f"{format_formula(f)} |- {format_formula(g)}")
                          for p in atoms for q in atoms for f, g in [schema(p, q)])
        yield Instance(name, "eval(phi) <= eval(psi) on every atom instance", check)


# ==============================================================================
# plump
# ==============================================================================

def _small(xs, cfg) -> list[Name]:
    cap = cfg.get("input_max_entries")
    return [x for x in xs if cap is None or len(x.entries) <= cap]


def _ordinals(ctx, cfg):
    return _small(gen.ordinals_upto(ctx, cfg.get("rank", 3), cfg.get("support", 3)), cfg)


def _plumps(ctx, cfg):
    return _small(gen.plump_upto(ctx, cfg.get("rank", 3), cfg.get("support", 3)), cfg)


@suite("plord-triple-agreement", "PlOrd formula = two-clause criterion = theta recursion, value level")
def _triple(ctx, cfg):
    for i, a in enumerate(_ordinals(ctx, cfg)):
        def check(a=a):
            v = (plord(ctx, a), plord_crit(ctx, a), theta(ctx, a))
            return {"plord": v[0], "plord_crit": v[1], "vartheta": v[2]}, v[0] == v[1] == v[2]
        yield Instance(_key(_idx(i), describe(a, 60)), "plord = plord_crit = vartheta", check)


def _plump_instances(ctx, cfg, relation, fn):
    for i, a in enumerate(_plumps(ctx, cfg)):
        yield Instance(_key(_idx(i), describe(a, 60)), relation, lambda a=a: fn(a))


@suite("plump-elem-relpl", "members of a plump ordinal are plump relative to it")
def _elem_relpl(ctx, cfg):
    h = ctx.h

    def fn(a):
        v = h.meet_all(h.implies[p][relpl(ctx, a, b)] for b, p in a.entries)
        return {"all_members_relpl": v}, v == h.top
    return _plump_instances(ctx, cfg, "[all b in a . relpl_a(b)] = top", fn)


@suite("plump-subset-relpl-plump", "a top-subset of a plump ordinal that is relatively plump is plump")
def _subset_relpl_plump(ctx, cfg):
    top = ctx.h.top

    def fn(a):
        return _sweep((plord(ctx, b) == top, describe(b))
                      for b in ctx.subset_names(a) if relpl(ctx, a, b) == top)
    return _plump_instances(ctx, cfg, "relpl_a(b) = top implies plord(b) = top", fn)


@suite("plump-subset-sat-relpl", "a plump top-subset of a plump ordinal is relatively plump")
def _subset_sat_relpl(ctx, cfg):
    top = ctx.h.top

    def fn(a):
        return _sweep((relpl(ctx, a, b) == top, describe(b))
                      for b in ctx.subset_names(a) if plord(ctx, b) == top)
    return _plump_instances(ctx, cfg, "plord(b) = top implies relpl_a(b) = top", fn)


@suite("plump-relpl-biconditional", "for top-subsets b of plump a: plord(b) = relpl_a(b)")
def _relpl_bicond(ctx, cfg):
    def fn(a):
        return _sweep((plord(ctx, b) == relpl(ctx, a, b), describe(b)) for b in ctx.subset_names(a))
    return _plump_instances(ctx, cfg, "plord(b) = relpl_a(b) for every subset name b", fn)


@suite("plump-successor-plump", "the plump successor of a plump ordinal is plump")
def _succ_plump(ctx, cfg):
    def fn(a):
        v = plord(ctx, plump_succ(ctx, a))
        return {"plord_succ": v}, v == ctx.h.top
    return _plump_instances(ctx, cfg, "plord(a^pls) = top", fn)


@suite("plump-class-transitive", "members of a plump ordinal are plump")
def _class_trans(ctx, cfg):
    h = ctx.h

    def fn(a):
        v = h.meet_all(h.implies[p][plord(ctx, b)] for b, p in a.entries)
        return {"all_members_plump": v}, v == h.top
    return _plump_instances(ctx, cfg, "[all b in a . b in PlOrd] = top", fn)


@suite("plump-closed-plump-subsets", "plump subsets of members of a plump ordinal are members")
def _closed(ctx, cfg):
    h = ctx.h
    I = h.implies

    def fn(a):
        v = h.meet_all(I[p][h.meet_all(I[plord(ctx, g)][ctx.mem(g, a)] for g in ctx.subset_names(b))]
                       for b, p in a.entries)
        return {"closed": v}, v == h.top
    return _plump_instances(ctx, cfg, "[all b in a . all g sub b (g in PlOrd -> g in a)] = top", fn)


@suite("plump-union-plump", "the union of a name whose members are plump at top is plump")
def _union_plump(ctx, cfg):
    h = ctx.h
    pool = gen.plump_upto(ctx, cfg.get("member_rank", 2), cfg.get("support", 3))
    weights = list(h.carrier) if cfg.get("all_weights", True) else [h.top]
    for (i, a), (j, b) in combinations(enumerate(pool), 2):
        for p, q in product(weights, weights):
            def check(a=a, b=b, p=p, q=q):
                s = ctx.make([(a, p), (b, q)], where="plump-union-plump")
                v = plord(ctx, ctx.union(s))
                return {"plord_union": v}, v == h.top
            yield Instance(_key(_idx(i), _idx(j), h.labels[p], h.labels[q]),
                           "plord(U {(a,p),(b,q)}) = top", check)
    for i, a in enumerate(pool):
        def single(a=a):
            v = plord(ctx, ctx.union(ctx.make([(a, h.top)])))
            return {"plord_union": v}, v == h.top
        yield Instance(_key(_idx(i), "single"), "plord(U {a}) = top", single)


@suite("plump-op-successor", "(a+)^pl = (a^pl)^pls for ordinals a")
def _op_succ(ctx, cfg):
    top = ctx.h.top
    pool = gen.ordinals_upto(ctx, cfg.get("rank", 2), cfg.get("support", 3))
    for i, a in enumerate(pool):
        def check(a=a):
            v = ctx.eq(plump_operator(ctx, thin_succ(ctx, a)), plump_succ(ctx, plump_operator(ctx, a)))
            return {"eq": v}, v == top
        yield Instance(_key(_idx(i), describe(a, 60)), "[(a+)^pl = (a^pl)^pls] = top", check)


@suite("plump-op-union", "(U s)^pl = U_{a in s} a^pl for names s of ordinals")
def _op_union(ctx, cfg):
    h = ctx.h
    pool = gen.ordinals_upto(ctx, cfg.get("rank", 2), cfg.get("support", 3))
    weights = list(h.carrier) if cfg.get("all_weights", True) else [h.top]
    for (i, a), (j, b) in combinations(enumerate(pool), 2):
        for p, q in product(weights, weights):
            def check(a=a, b=b, p=p, q=q):
                s = ctx.make([(a, p), (b, q)], where="plump-op-union")
                lhs = plump_operator(ctx, ctx.union(s))
                rhs = ctx.weighted_union((plump_operator(ctx, c), w) for c, w in s.entries)
                v = ctx.eq(lhs, rhs)
                return {"eq": v}, v == h.top
            yield Instance(_key(_idx(i), _idx(j), h.labels[p], h.labels[q]),
                           "[(U s)^pl = U_{a in s} a^pl] = top", check)


@suite("plump-subset-retract", "[g sub b] = [g^pl sub b^pl] for check ordinals")
def _retract(ctx, cfg):
    h = ctx.h
    n = cfg.get("max_ordinal", 4)
    for g, b in product(range(n + 1), range(n + 1)):
        def check(g=g, b=b):
            G, B = check_name(h, g), check_name(h, b)
            lhs = ctx.sub(G, B)
            rhs = ctx.sub(plump_operator(ctx, G), plump_operator(ctx, B))
            return {"sub": lhs, "sub_pl": rhs}, lhs == rhs
        yield Instance(_key(g, b), "[g sub b] = [g^pl sub b^pl]", check)


@suite("thin-check-ordinals", "check names of natural numbers are thin ordinals")
def _thin_check(ctx, cfg):
    h = ctx.h
    for k in range(cfg.get("max_ordinal", 4) + 1):
        def check(k=k):
            x = check_name(h, k)
            return {"ord": is_ord(ctx, x), "thin": is_thin(ctx, x)}, is_thin(ctx, x) == h.top
        yield Instance(str(k), "[k thin] = top", check)


# ==============================================================================
# classical degeneration and intuitionistic separation
# ==============================================================================

def _classical(op: str, a: int, b: int) -> int:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    return a ** b if (a or not b) else 0


@suite("classical-degeneration", "over a Boolean algebra every construction is classical",
       algebras=("bool2",))
def _classical_suite(ctx, cfg):
    h = ctx.h
    top = h.top
    K = cfg.get("max_ordinal", 4)
    for k in range(K + 1):
        x = check_name(h, k)
        yield Instance(_key("plord", k), "[k in PlOrd] = top",
                       lambda x=x: ({"plord": plord(ctx, x)}, plord(ctx, x) == top))
        yield Instance(_key("succ", k), "[k^pls = k+] = top",
                       lambda x=x: ({"eq": ctx.eq(plump_succ(ctx, x), thin_succ(ctx, x))},
                                    ctx.eq(plump_succ(ctx, x), thin_succ(ctx, x)) == top))
        yield Instance(_key("op", k), "[k^pl = k] = top",
                       lambda x=x: ({"eq": ctx.eq(plump_operator(ctx, x), x)},
                                    ctx.eq(plump_operator(ctx, x), x) == top))
    n = cfg.get("max_operand", 3)
    ops = {"add": add, "mul": mul, "pow": power}
    for op, a, b in product(ops, range(n + 1), range(n + 1)):
        def check(op=op, a=a, b=b):
            r = ops[op](ctx, check_name(h, a), check_name(h, b))
            want = _classical(op, a, b)
            v = ctx.eq(r, check_name(h, want))
            return {"expected": want, "eq": v}, v == top
        yield Instance(_key(op, a, b), "[op(a,b) = classical(a,b)] = top", check)


@suite("intuitionistic-separation", "P(1) differs from 2 while 2^pl = P(1)^pl",
       algebras=("sierpinski", "chain4", "diamond"))
def _separation(ctx, cfg):
    h = ctx.h
    two = check_name(h, 2)
    p1 = plump_succ(ctx, check_name(h, 1))

    def sep():
        v = ctx.eq(p1, two)
        return {"eq": v}, v != h.top

    def op():
        v = ctx.eq(plump_operator(ctx, two), plump_operator(ctx, p1))
        return {"eq": v}, v == h.top

    def members():
        top_members = [c for c, w in p1.entries if w == h.top]
        return {"top_members": len(top_members), "plord": plord(ctx, p1)}, len(top_members) >= 3
    yield Instance("P1-ne-2", "[P(1) = 2] < top", sep)
    yield Instance("op-2-eq-op-P1", "[2^pl = P(1)^pl] = top", op)
    yield Instance("P1-members", "P(1) has at least three top-distinct members", members)


# ==============================================================================
# arith
# ==============================================================================

def _operands(ctx, cfg) -> list[Name]:
    cap = cfg.get("operand_max_entries", 3)
    pool = gen.plump_upto(ctx, cfg.get("operand_rank", 2), cfg.get("support", 3))
    return [x for x in pool if len(x.entries) <= cap]


_OPS = {"add": add, "mul": mul, "pow": power}


@suite("arith-closure", "a + b, a * b and a ^ b are plump for plump a, b")
def _arith_closure(ctx, cfg):
    top = ctx.h.top
    X = _operands(ctx, cfg)
    for op in _OPS:
        for (i, a), (j, b) in product(enumerate(X), enumerate(X)):
            def check(op=op, a=a, b=b):
                v = plord(ctx, _OPS[op](ctx, a, b))
                return {"plord": v}, v == top
            yield Instance(_key(op, _idx(i, 2), _idx(j, 2)), "plord(op(a,b)) = top", check)


@suite("arith-add-inj", "[a+b sub a+g] <= [b sub g]")
def _add_inj(ctx, cfg):
    L = ctx.h.leq
    X = _operands(ctx, cfg)
    for (i, a), (j, b) in product(enumerate(X), enumerate(X)):
        def check(a=a, b=b):
            return _sweep((L[ctx.sub(add(ctx, a, b), add(ctx, a, g))][ctx.sub(b, g)], describe(g))
                          for g in X)
        yield Instance(_key(_idx(i, 2), _idx(j, 2)), "[a+b sub a+g] <= [b sub g] for all g", check)


@suite("arith-mul-inj", "for g in a at top: [a*b sub a*b'+g] <= [b sub b']")
def _mul_inj(ctx, cfg):
    h = ctx.h
    X = _operands(ctx, cfg)
    for (i, a), (j, b) in product(enumerate(X), enumerate(X)):
        def check(a=a, b=b):
            return _sweep((h.leq[ctx.sub(mul(ctx, a, b), add(ctx, mul(ctx, a, b2), g))][ctx.sub(b, b2)],
                           f"{describe(b2)} ; {describe(g)}")
                          for b2 in X for g, p in a.entries if p == h.top)
        yield Instance(_key(_idx(i, 2), _idx(j, 2)), "[a*b sub a*b'+g] <= [b sub b'] for all b', g", check)


@suite("arith-pair-code-inj", "<g, d> -> a*d + g is injective up to top-equality")
def _pair_inj(ctx, cfg):
    h = ctx.h
    top = h.top
    X = _operands(ctx, cfg)
    for i, a in enumerate(X):
        keys = [g for g, p in a.entries if p == top]
        if not keys:
            continue

        def check(a=a, keys=keys):
            pairs = [(g, d) for g in keys for d in X]
            codes = [add(ctx, mul(ctx, a, d), g) for g, d in pairs]
            n = 0
            bad = None
            for (p1, c1), (p2, c2) in combinations(zip(pairs, codes), 2):
                n += 1
                same = h.meet[ctx.eq(p1[0], p2[0])][ctx.eq(p1[1], p2[1])]
                e = ctx.eq(c1, c2)
                if not h.leq[e][same] or (e == top) != (same == top):
                    bad = f"{describe(p1[0])},{describe(p1[1])} ; {describe(p2[0])},{describe(p2[1])}"
                    break
            vals = {"pairs": len(pairs), "checked": n}
            if bad:
                vals["counterexample"] = bad
            return vals, bad is None
        yield Instance(_idx(i, 2), "[code = code'] <= [g = g'] /\\ [d = d']", check)


@suite("arith-pl-commute", "(a+b)^pl = a^pl + b^pl and (a*b)^pl = a^pl * b^pl for check ordinals")
def _commute(ctx, cfg):
    h = ctx.h
    n = cfg.get("max_operand", 3)
    rmax = cfg.get("max_result", 9)
    for a, b in product(range(n + 1), range(n + 1)):
        for op, res in (("add", a + b), ("mul", a * b)):
            if res > rmax:
                continue

            def check(op=op, a=a, b=b, res=res):
                A = plump_operator(ctx, check_name(h, a))
                B = plump_operator(ctx, check_name(h, b))
                v = ctx.eq(plump_operator(ctx, check_name(h, res)), _OPS[op](ctx, A, B))
                return {"eq": v}, v == h.top
            yield Instance(_key(op, a, b), f"[({a} {op} {b})^pl = a^pl {op} b^pl] = top", check)


@suite("arith-memo", "memoized and memo-free arithmetic give top-equal results")
def _arith_memo(ctx, cfg):
    top = ctx.h.top
    fresh = Context(ctx.h, ctx.budget, memo=False)
    X = _operands(ctx, cfg)
    for op in _OPS:
        for (i, a), (j, b) in product(enumerate(X), enumerate(X)):
            def check(op=op, a=a, b=b):
                # compare in the memoized context: only the construction runs memo-free
                v = ctx.eq(_OPS[op](ctx, a, b), _OPS[op](fresh, a, b))
                return {"eq": v}, v == top
            yield Instance(_key(op, _idx(i, 2), _idx(j, 2)), "[memo = fresh] = top", check)


# ==============================================================================
# coding
# ==============================================================================

def coding_sweep(ctx: Context, cfg: dict):
    """Triples ``(alpha, beta, f)`` of the coding sweep.

    Keys range over top-members of ``alpha``, values over top-members of
    ``beta``, with ``alpha`` and ``beta`` plump ordinals of bounded rank and
    size.  Only maps that are pairwise incomparable and extensional
    (``[g = g'] <= [f g = f g']``) at top are kept.
    """
    h = ctx.h
    top = h.top
    cap = cfg.get("coding_max_entries", 3)
    pool = [x for x in gen.plump_upto(ctx, cfg.get("coding_rank", 2), cfg.get("support", 3))
            if len(x.entries) <= cap]
    max_keys = cfg.get("max_keys", 2)
    out = []
    for alpha, beta in product(pool, pool):
        keys = [g for g, p in alpha.entries if p == top]
        vals = [d for d, p in beta.entries if p == top]
        for n in range(max_keys + 1):
            for ks in combinations(keys, n):
                for vs in product(vals, repeat=n):
                    f = finite_map(list(zip(ks, vs)), ctx)
                    if pairwise_incomparable(ctx, f) != top:
                        continue
                    if not all(h.leq[ctx.eq(g1, g2)][ctx.eq(d1, d2)]
                               for (g1, d1), (g2, d2) in combinations(f.pairs, 2)):
                        continue
                    out.append((alpha, beta, f))
    return pool, out


def _map_key(pool, alpha, beta, f) -> str:
    body = ", ".join(f"{describe(g, 40)}->{describe(d, 40)}" for g, d in f.pairs)
    return _key(_idx(pool.index(alpha), 2), _idx(pool.index(beta), 2), "{" + body + "}")


@suite("coding-roundtrip", "decode(encode(f)) = f on the coding sweep")
def _coding_roundtrip(ctx, cfg):
    pool, sweep = coding_sweep(ctx, cfg)
    for alpha, beta, f in sweep:
        def check(alpha=alpha, beta=beta, f=f):
            sigma = encode(ctx, f, alpha, beta)
            g = decode(ctx, sigma, alpha, beta)
            ok = maps_equal(ctx, f, g)
            return {"keys": len(f), "decoded_keys": len(g)}, ok
        yield Instance(_map_key(pool, alpha, beta, f), "decode(encode(f)) = f at top", check)


@suite("coding-encode-plump", "encode(f) is a plump ordinal")
def _coding_plump(ctx, cfg):
    pool, sweep = coding_sweep(ctx, cfg)
    for alpha, beta, f in sweep:
        def check(alpha=alpha, beta=beta, f=f):
            v = plord(ctx, encode(ctx, f, alpha, beta))
            return {"plord": v}, v == ctx.h.top
        yield Instance(_map_key(pool, alpha, beta, f), "plord(encode(f)) = top", check)


@suite("coding-functional", "decoding never pairs top-equal keys with distinct values")
def _coding_functional(ctx, cfg):
    pool, sweep = coding_sweep(ctx, cfg)
    for alpha, beta, f in sweep:
        def check(alpha=alpha, beta=beta, f=f):
            pairs = decode_pairs(ctx, encode(ctx, f, alpha, beta), alpha, beta)
            return {"pairs": len(pairs)}, is_functional(ctx, pairs)
        yield Instance(_map_key(pool, alpha, beta, f), "decoded pairs are functional", check)


@suite("coding-reconstruct", "x = s_x for every subset name x of the coded domain")
def _coding_reconstruct(ctx, cfg):
    top = ctx.h.top
    pool, sweep = coding_sweep(ctx, cfg)
    for alpha, beta, f in sweep:
        def check(alpha=alpha, beta=beta, f=f):
            return _sweep((ctx.eq(reconstruct(ctx, sigma_of(ctx, x, f), f, alpha), x) == top, describe(x))
                          for x in ctx.subset_names(f.domain))
        yield Instance(_map_key(pool, alpha, beta, f), "[s_x = x] = top for all x sub dom f", check)
