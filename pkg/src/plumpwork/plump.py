"""Ordinal predicates and constructors: Ord, thinness, PlOrd, successors, the plump operator.

PlOrd membership is computed three independent ways:

* :func:`plord_value` evaluates the defining bounded formula with the
  formula evaluator;
* :func:`plord_crit_value` uses the two-clause criterion (members plump,
  closed under plump subsets of members);
* :func:`vartheta` runs the truth-value recursion whose fixed point is the
  class of plump ordinals.

For ordinal names the three agree at the level of truth values.
"""
from __future__ import annotations

from .heyting import TruthValue
from .logic import eval_index, plord_matrix, relpl
from .names import Context, Name, context_for

_PLORD = plord_matrix("alpha")


def _memo(ctx: Context, tag: str, key, compute):
    t = ctx.table(tag)
    if t is None:
        return compute()
    r = t.get(key)
    if r is None:
        r = t[key] = compute()
    return r


def transitive(ctx: Context, x: Name) -> int:
    h = ctx.h
    M, I, bot = h.meet, h.implies, h.bottom
    r = h.top
    for y, p in x.entries:
        inner = h.top
        for z, q in y.entries:
            inner = M[inner][I[q][ctx.mem(z, x)]]
        r = M[r][I[p][inner]]
        if r == bot:
            break
    return r


def is_ord(ctx: Context, x: Name) -> int:
    def compute():
        h = ctx.h
        M, I = h.meet, h.implies
        r = transitive(ctx, x)
        for a, p in x.entries:
            if r == h.bottom:
                break
            r = M[r][I[p][is_ord(ctx, a)]]
        return r
    return _memo(ctx, "ord", x, compute)


def is_thin(ctx: Context, x: Name) -> int:
    def compute():
        h = ctx.h
        M, J, I = h.meet, h.join, h.implies
        r = is_ord(ctx, x)
        for b, p in x.entries:
            for g, q in x.entries:
                if r == h.bottom:
                    return r
                body = I[ctx.sub(g, b)][J[ctx.mem(g, b)][ctx.eq(g, b)]]
                r = M[r][I[M[p][q]][body]]
        return r
    return _memo(ctx, "thin", x, compute)


def plord(ctx: Context, x: Name) -> int:
    def compute():
        r = is_ord(ctx, x)
        if r == ctx.h.bottom:
            return r
        return ctx.h.meet[r][eval_index(_PLORD, {"alpha": x}, ctx)]
    return _memo(ctx, "plord", x, compute)


def plord_crit(ctx: Context, x: Name) -> int:
    def compute():
        h = ctx.h
        M, I, bot = h.meet, h.implies, h.bottom
        members = h.top
        closed = h.top
        for b, p in x.entries:
            members = M[members][I[p][plord(ctx, b)]]
            inner = h.top
            for g in ctx.subset_names(b):
                inner = M[inner][I[plord(ctx, g)][ctx.mem(g, x)]]
                if inner == bot:
                    break
            closed = M[closed][I[p][inner]]
        return M[members][closed]
    return _memo(ctx, "plord_crit", x, compute)


def theta(ctx: Context, beta: Name) -> int:
    """The truth value of the plumpness recursion at ``beta``; does not depend on the ambient ordinal."""
    def compute():
        h = ctx.h
        M, I, bot = h.meet, h.implies, h.bottom
        r = h.top
        for g, p in beta.entries:
            inner = theta(ctx, g)
            if inner != bot:
                for d in ctx.subset_names(g):
                    inner = M[inner][I[theta(ctx, d)][ctx.mem(d, beta)]]
                    if inner == bot:
                        break
            r = M[r][I[p][inner]]
            if r == bot:
                break
        return r
    return _memo(ctx, "theta", beta, compute)


def plump_succ(ctx: Context, alpha: Name) -> Name:
    """All subsets of ``alpha`` weighted by relative plumpness.

    Subsets whose weight would be bottom are pruned during enumeration; the
    result equals building ``{(g, relpl_alpha(g)) : g in subset_names(alpha)}``.
    """
    alpha = ctx.normalize(alpha)

    def compute():
        h = ctx.h
        M = h.meet
        kids = alpha.entries
        n = len(kids)
        # soft[i][j]: weight of "a_j in alpha and a_j sub a_i"
        soft = [[M[kids[j][1]][ctx.sub(kids[j][0], kids[i][0])] for j in range(n)]
                for i in range(n)]
        entries = []
        for vec, r in ctx.closed_vectors(alpha, soft=soft, where="plump_successor"):
            entries.append((ctx.subset_from_vector(alpha, vec), r))
        return ctx.make(entries, where="plump_successor")
    return _memo(ctx, "pls", alpha, compute)


def plump_succ_literal(ctx: Context, alpha: Name) -> Name:
    """Unpruned reference: relpl weight on every subset name."""
    alpha = ctx.normalize(alpha)
    return ctx.make(((g, relpl(ctx, alpha, g)) for g in ctx.subset_names(alpha)),
                    where="plump_successor")


def thin_succ(ctx: Context, alpha: Name) -> Name:
    return ctx.make(alpha.entries + ((alpha, ctx.h.top),), where="thin_successor")


def plump_operator(ctx: Context, alpha: Name) -> Name:
    alpha = ctx.normalize(alpha)

    def compute():
        return ctx.weighted_union(
            (plump_succ(ctx, plump_operator(ctx, b)), p) for b, p in alpha.entries)
    return _memo(ctx, "pl", alpha, compute)


# -- public API --------------------------------------------------------------

def _tv(ctx: Context, v: int) -> TruthValue:
    return TruthValue(ctx.h, v)


def is_ord_value(x: Name, ctx: Context | None = None) -> TruthValue:
    ctx = context_for(ctx, x)
    return _tv(ctx, is_ord(ctx, ctx.normalize(x)))


def is_thin_value(x: Name, ctx: Context | None = None) -> TruthValue:
    ctx = context_for(ctx, x)
    return _tv(ctx, is_thin(ctx, ctx.normalize(x)))


def plord_value(x: Name, ctx: Context | None = None) -> TruthValue:
    ctx = context_for(ctx, x)
    return _tv(ctx, plord(ctx, ctx.normalize(x)))


def plord_crit_value(x: Name, ctx: Context | None = None) -> TruthValue:
    ctx = context_for(ctx, x)
    return _tv(ctx, plord_crit(ctx, ctx.normalize(x)))


def vartheta(alpha: Name, beta: Name, ctx: Context | None = None) -> TruthValue:
    """Plumpness recursion at ``beta``; ``alpha`` is only the ambient ordinal bounding ``beta``."""
    ctx = context_for(ctx, alpha, beta)
    return _tv(ctx, theta(ctx, ctx.normalize(beta)))


def plump_successor(alpha: Name, ctx: Context | None = None) -> Name:
    ctx = context_for(ctx, alpha)
    return plump_succ(ctx, alpha)


def thin_successor(alpha: Name, ctx: Context | None = None) -> Name:
    ctx = context_for(ctx, alpha)
    return thin_succ(ctx, ctx.normalize(alpha))


def plump_op(alpha: Name, ctx: Context | None = None) -> Name:
    ctx = context_for(ctx, alpha)
    return plump_operator(ctx, alpha)
