"""The internal language: bounded and subset-bounded formulas, and their valuation.

Every quantifier is bounded by a term, either by membership (``all x in t``)
or by inclusion (``all x sub t``).  Subset quantifiers range over
:meth:`Context.subset_names`, one representative per top-class of subsets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from .heyting import TruthValue
from .names import Context, Name, context_for


class ScopeError(ValueError):
    pass


class UnboundVariable(KeyError):
    pass


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    value: Name


Term = Union[Var, Const]


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Eq(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Mem(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Sub(Formula):
    left: Term
    right: Term


@dataclass(frozen=True)
class Falsum(Formula):
    pass


FALSE = Falsum()


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class ForallIn(Formula):
    var: str
    bound: Term
    body: Formula


@dataclass(frozen=True)
class ExistsIn(Formula):
    var: str
    bound: Term
    body: Formula


@dataclass(frozen=True)
class ForallSubset(Formula):
    var: str
    bound: Term
    body: Formula


@dataclass(frozen=True)
class ExistsSubset(Formula):
    var: str
    bound: Term
    body: Formula


QUANTIFIERS = (ForallIn, ExistsIn, ForallSubset, ExistsSubset)
ATOMS = (Eq, Mem, Sub)
CONNECTIVES = (And, Or, Implies)


def Not(f: Formula) -> Formula:
    return Implies(f, FALSE)


TRUE = Not(FALSE)


def term(t) -> Term:
    if isinstance(t, (Var, Const)):
        return t
    if isinstance(t, str):
        return Var(t)
    if isinstance(t, Name):
        return Const(t)
    raise TypeError(f"not a term: {t!r}")


def _term_vars(t: Term) -> set[str]:
    return {t.name} if isinstance(t, Var) else set()


def free_vars(f: Formula) -> frozenset[str]:
    if isinstance(f, ATOMS):
        return frozenset(_term_vars(f.left) | _term_vars(f.right))
    if isinstance(f, Falsum):
        return frozenset()
    if isinstance(f, CONNECTIVES):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, QUANTIFIERS):
        return frozenset(_term_vars(f.bound)) | (free_vars(f.body) - {f.var})
    raise TypeError(f"not a formula: {f!r}")


def check_scope(f: Formula, bound: frozenset = frozenset()) -> None:
    """Reject formulas that rebind a variable already bound on the same path."""
    if isinstance(f, CONNECTIVES):
        check_scope(f.left, bound)
        check_scope(f.right, bound)
    elif isinstance(f, QUANTIFIERS):
        if f.var in bound:
            raise ScopeError(f"variable {f.var!r} is bound twice on one path")
        if isinstance(f.bound, Var) and f.bound.name == f.var:
            raise ScopeError(f"variable {f.var!r} occurs in its own bound")
        check_scope(f.body, bound | {f.var})


def fresh(avoid, stem: str) -> str:
    i = 0
    while f"{stem}{i}" in avoid:
        i += 1
    return f"{stem}{i}"


# -- compilation to closures -------------------------------------------------

def _compile_term(t: Term):
    if isinstance(t, Const):
        v = t.value
        return lambda env: v
    name = t.name

    def look(env):
        try:
            return env[name]
        except KeyError:
            raise UnboundVariable(name) from None
    return look


def _compile(f: Formula, ctx: Context):
    h = ctx.h
    M, J, I = h.meet, h.join, h.implies
    bot, top = h.bottom, h.top

    if isinstance(f, ATOMS):
        l, r = _compile_term(f.left), _compile_term(f.right)
        op = {Eq: ctx.eq, Mem: ctx.mem, Sub: ctx.sub}[type(f)]
        return lambda env: op(l(env), r(env))
    if isinstance(f, Falsum):
        return lambda env: bot
    if isinstance(f, And):
        l, r = _compile(f.left, ctx), _compile(f.right, ctx)

        def conj(env):
            a = l(env)
            return bot if a == bot else M[a][r(env)]
        return conj
    if isinstance(f, Or):
        l, r = _compile(f.left, ctx), _compile(f.right, ctx)

        def disj(env):
            a = l(env)
            return top if a == top else J[a][r(env)]
        return disj
    if isinstance(f, Implies):
        l, r = _compile(f.left, ctx), _compile(f.right, ctx)

        def imp(env):
            a = l(env)
            return top if a == bot else I[a][r(env)]
        return imp

    if not isinstance(f, QUANTIFIERS):
        raise TypeError(f"not a formula: {f!r}")
    bound = _compile_term(f.bound)
    body = _compile(f.body, ctx)
    var = f.var
    universal = isinstance(f, (ForallIn, ForallSubset))
    by_subset = isinstance(f, (ForallSubset, ExistsSubset))

    def quant(env):
        t = bound(env)
        if by_subset:
            items = [(g, top) for g in ctx.subset_names(t)]
        else:
            items = t.entries
        saved = env.get(var, _MISSING)
        try:
            if universal:
                r = top
                for a, p in items:
                    env[var] = a
                    r = M[r][I[p][body(env)]]
                    if r == bot:
                        break
            else:
                r = bot
                for a, p in items:
                    env[var] = a
                    r = J[r][M[p][body(env)]]
                    if r == top:
                        break
        finally:
            if saved is _MISSING:
                env.pop(var, None)
            else:
                env[var] = saved
        return r

    if not ctx.memo:
        return quant
    fv = sorted(free_vars(f))
    cache: dict = {}

    def memo_quant(env):
        try:
            key = tuple(env[v] for v in fv)
        except KeyError as e:
            raise UnboundVariable(e.args[0]) from None
        r = cache.get(key)
        if r is None:
            r = cache[key] = quant(env)
        return r
    return memo_quant


_MISSING = object()


def compiled(f: Formula, ctx: Context):
    table = ctx.tables.setdefault("compiled", {})
    hit = table.get(id(f))
    if hit is not None and hit[0] is f:
        return hit[1]
    check_scope(f)
    fn = _compile(f, ctx)
    table[id(f)] = (f, fn)  # holding f keeps id(f) unique
    return fn


def eval_index(f: Formula, env: Mapping[str, Name], ctx: Context) -> int:
    return compiled(f, ctx)(dict(env))


def evaluate(f: Formula, env: Mapping[str, Name] | None = None,
             ctx: Context | None = None) -> TruthValue:
    """The truth value of ``f`` under ``env``."""
    env = dict(env or {})
    names = list(env.values()) + _constants(f)
    if ctx is None:
        if not names:
            raise ValueError("cannot infer the algebra: pass a context")
        ctx = Context(names[0].algebra)
    ctx.check(*names)
    missing = free_vars(f) - set(env)
    if missing:
        raise UnboundVariable(", ".join(sorted(missing)))
    return TruthValue(ctx.h, eval_index(f, env, ctx))


def _constants(f: Formula) -> list[Name]:
    out = []

    def walk(g):
        if isinstance(g, ATOMS):
            for t in (g.left, g.right):
                if isinstance(t, Const):
                    out.append(t.value)
        elif isinstance(g, CONNECTIVES):
            walk(g.left)
            walk(g.right)
        elif isinstance(g, QUANTIFIERS):
            if isinstance(g.bound, Const):
                out.append(g.bound.value)
            walk(g.body)
    walk(f)
    return out


def substitute(f: Formula, var: str, value: Name) -> Formula:
    """Replace free occurrences of ``var`` by the constant ``value``."""
    c = Const(value)

    def st(t):
        return c if isinstance(t, Var) and t.name == var else t

    if isinstance(f, ATOMS):
        return type(f)(st(f.left), st(f.right))
    if isinstance(f, Falsum):
        return f
    if isinstance(f, CONNECTIVES):
        return type(f)(substitute(f.left, var, value), substitute(f.right, var, value))
    if isinstance(f, QUANTIFIERS):
        body = f.body if f.var == var else substitute(f.body, var, value)
        return type(f)(f.var, st(f.bound), body)
    raise TypeError(f"not a formula: {f!r}")


# -- relative plumpness ----------------------------------------------------

def relpl_formula(alpha, gamma) -> Formula:
    """``forall d in gamma, forall e in alpha (e sub d -> e in gamma)``."""
    a, g = term(alpha), term(gamma)
    used = _term_vars(a) | _term_vars(g)
    d = fresh(used, "d")
    e = fresh(used | {d}, "e")
    return ForallIn(d, g, ForallIn(e, a, Implies(Sub(Var(e), Var(d)), Mem(Var(e), g))))


def relpl(ctx: Context, alpha: Name, gamma: Name) -> int:
    t = ctx.table("relpl")
    if t is not None:
        r = t.get((alpha, gamma))
        if r is not None:
            return r
    h = ctx.h
    M, I, bot = h.meet, h.implies, h.bottom
    r = h.top
    for d, q in gamma.entries:
        inner = h.top
        for e, p in alpha.entries:
            inner = M[inner][I[p][I[ctx.sub(e, d)][ctx.mem(e, gamma)]]]
            if inner == bot:
                break
        r = M[r][I[q][inner]]
        if r == bot:
            break
    if t is not None:
        t[(alpha, gamma)] = r
    return r


def relpl_value(alpha: Name, gamma: Name, ctx: Context | None = None) -> TruthValue:
    ctx = context_for(ctx, alpha, gamma)
    return TruthValue(ctx.h, relpl(ctx, alpha, gamma))


def plord_matrix(alpha="alpha") -> Formula:
    """``forall b in alpha, forall g sub b (relpl_alpha(g) -> g in alpha /\\ forall d in alpha (b in d -> g in d))``."""
    a = term(alpha)
    used = _term_vars(a)
    b = fresh(used, "b")
    g = fresh(used | {b}, "g")
    d = fresh(used | {b, g}, "dd")
    B, G, D = Var(b), Var(g), Var(d)
    return ForallIn(b, a, ForallSubset(g, B, Implies(
        relpl_formula(a, G),
        And(Mem(G, a), ForallIn(d, a, Implies(Mem(B, D), Mem(G, D)))))))


def transitive_formula(x="x") -> Formula:
    t = term(x)
    used = _term_vars(t)
    y = fresh(used, "y")
    z = fresh(used | {y}, "z")
    return ForallIn(y, t, ForallIn(z, Var(y), Mem(Var(z), t)))


def thin_matrix(x="x") -> Formula:
    """``forall b in x, forall g in x (g sub b -> g in b \\/ g = b)``."""
    t = term(x)
    used = _term_vars(t)
    b = fresh(used, "b")
    g = fresh(used | {b}, "g")
    B, G = Var(b), Var(g)
    return ForallIn(b, t, ForallIn(g, t, Implies(Sub(G, B), Or(Mem(G, B), Eq(G, B)))))
