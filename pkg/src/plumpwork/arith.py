"""Plump ordinal arithmetic.

The successor step is the plump successor, so

    a + b = a  u  U_{g in b} (a + g)^pls
    a * b = U_{g in b} (a * g + a)
    a ^ b = {0 : b empty  or  0 in a}  u  U_{g in b} (a^g * a)

with every internal union weighted by the entry weight of ``g`` in ``b``.
The guard on the bottom clause makes ``0 ^ b = 0`` for inhabited ``b``, so
on check names over a Boolean algebra all three operations are ordinary
ordinal arithmetic.  Whenever ``0 in a`` holds at top, or ``b`` is empty,
``power`` agrees with the unguarded display ``1 u U_{g in b} (a^g * a)``,
which is kept as :func:`power_literal`.
"""
from __future__ import annotations

from .names import Context, Name, check_name, context_for
from .plump import plump_succ


def _memo(ctx: Context, key, compute):
    t = ctx.table("arith")
    if t is None:
        return compute()
    r = t.get(key)
    if r is None:
        r = t[key] = compute()
    return r


def add(ctx: Context, a: Name, b: Name) -> Name:
    a, b = ctx.normalize(a), ctx.normalize(b)

    def compute():
        M = ctx.h.meet
        ents = list(a.entries)
        for g, p in b.entries:
            s = plump_succ(ctx, add(ctx, a, g))
            ents.extend((c, M[q][p]) for c, q in s.entries)
        return ctx.make(ents, where="pl_add")
    return _memo(ctx, ("add", a, b), compute)


def mul(ctx: Context, a: Name, b: Name) -> Name:
    a, b = ctx.normalize(a), ctx.normalize(b)

    def compute():
        return ctx.weighted_union((add(ctx, mul(ctx, a, g), a), p) for g, p in b.entries)
    return _memo(ctx, ("mul", a, b), compute)


def power(ctx: Context, a: Name, b: Name) -> Name:
    a, b = ctx.normalize(a), ctx.normalize(b)

    def compute():
        h = ctx.h
        M, J = h.meet, h.join
        zero = check_name(h, 0)
        inhabited = h.join_all(p for _, p in b.entries)
        ents = [(zero, J[h.neg(inhabited)][ctx.mem(zero, a)])]
        for g, p in b.entries:
            ents.extend((c, M[q][p]) for c, q in mul(ctx, power(ctx, a, g), a).entries)
        return ctx.make(ents, where="pl_pow")
    return _memo(ctx, ("pow", a, b), compute)


def power_literal(ctx: Context, a: Name, b: Name) -> Name:
    """The unguarded display ``1 u U_{g in b} (a^g * a)``; gives ``0 ^ b = 1``."""
    a, b = ctx.normalize(a), ctx.normalize(b)

    def compute():
        M = ctx.h.meet
        ents = list(check_name(ctx.h, 1).entries)
        for g, p in b.entries:
            ents.extend((c, M[q][p]) for c, q in mul(ctx, power_literal(ctx, a, g), a).entries)
        return ctx.make(ents, where="pl_pow")
    return _memo(ctx, ("pow-literal", a, b), compute)


def pl_add(alpha: Name, beta: Name, ctx: Context | None = None) -> Name:
    ctx = context_for(ctx, alpha, beta)
    return add(ctx, alpha, beta)


def pl_mul(alpha: Name, beta: Name, ctx: Context | None = None) -> Name:
    ctx = context_for(ctx, alpha, beta)
    return mul(ctx, alpha, beta)


def pl_pow(alpha: Name, beta: Name, ctx: Context | None = None) -> Name:
    ctx = context_for(ctx, alpha, beta)
    return power(ctx, alpha, beta)


def pl_pow_literal(alpha: Name, beta: Name, ctx: Context | None = None) -> Name:
    ctx = context_for(ctx, alpha, beta)
    return power_literal(ctx, alpha, beta)


def pair_code(alpha: Name, gamma: Name, delta: Name, ctx: Context | None = None) -> Name:
    """``alpha * delta + gamma``: injective on pairs with gamma in alpha."""
    ctx = context_for(ctx, alpha, gamma, delta)
    return add(ctx, mul(ctx, alpha, delta), gamma)
