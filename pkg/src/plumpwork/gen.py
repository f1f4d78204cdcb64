"""Exhaustive and bounded generators of names used by the theorem suites.

Every generator returns canonical names in a deterministic order and
deduplicates up to top-equality.
"""
from __future__ import annotations

from itertools import combinations, product

from .names import Context, Name, check_name, empty
from .plump import is_ord, plord, plump_succ, thin_succ, plump_operator
from .arith import add


def _dedup(ctx: Context, xs) -> list[Name]:
    top = ctx.h.top
    out: list[Name] = []
    for x in xs:
        x = ctx.normalize(x)
        if all(ctx.eq(x, y) != top for y in out):
            out.append(x)
    return out


def shrink(ctx: Context, x: Name) -> Name:
    """A top-equal name with entries dropped or weights lowered where possible.

    Subset enumeration yields weight-maximal representatives; smaller ones
    make every later computation cheaper.
    """
    h = ctx.h
    top = h.top
    ents = list(x.entries)
    for i in range(len(ents)):
        c, w = ents[i]
        for w2 in sorted(h.below[w], key=lambda q: len(h.below[q])):
            if w2 == w:
                break
            trial = ents[:i] + [(c, w2)] + ents[i + 1:]
            if ctx.eq(Name(h, trial), x) == top:
                ents[i] = (c, w2)
                break
    return ctx.normalize(Name(h, ents))


def names_upto(ctx: Context, k: int) -> list[Name]:
    """All names of rank at most ``k``, one per top-class.

    The names of rank at most ``k`` are exactly the subsets of
    ``{(c, top) : c of rank at most k-1}``.
    """
    t = ctx.table("gen")
    key = ("names", k)
    if t is not None and key in t:
        return t[key]
    if k == 0:
        out = [empty(ctx.h)]
    else:
        universe = ctx.make(((c, ctx.h.top) for c in names_upto(ctx, k - 1)), where="names_upto")
        out = sorted((shrink(ctx, x) for x in ctx.subset_names(universe)), key=lambda n: n.skey)
    if t is not None:
        t[key] = out
    return out


def raw_names_upto(h, k: int) -> list[Name]:
    """Every name of rank at most ``k`` built from raw lower names, without any deduplication.

    Rank 2 over an algebra of size n gives n**n names; this is the
    independent universe that subset enumeration is checked against.
    """
    if k == 0:
        return [empty(h)]
    lower = raw_names_upto(h, k - 1)
    out = []
    for ws in product(h.carrier, repeat=len(lower)):
        out.append(Name(h, [(c, w) for c, w in zip(lower, ws) if w != h.bottom]))
    return out


def ordinals_upto(ctx: Context, k: int, support: int = 3) -> list[Name]:
    """Names of rank at most ``k`` that are ordinals at top.

    Up to rank 2 this is exhaustive.  Rank 3 and above take subsets of the
    lower ordinals with at most ``support`` children, plus the thin and
    plump successors of every lower ordinal.
    """
    t = ctx.table("gen")
    key = ("ord", k, support)
    if t is not None and key in t:
        return t[key]
    top = ctx.h.top
    if k <= 2:
        out = [x for x in names_upto(ctx, k) if is_ord(ctx, x) == top]
    else:
        lower = ordinals_upto(ctx, k - 1, support)
        basis = names_upto(ctx, k - 1)
        seen: dict[tuple, Name] = {}

        def offer(x: Name):
            if x.rank > k or is_ord(ctx, x) != top:
                return
            # membership profile over all lower names pins down the top-class
            key = tuple(ctx.mem(c, x) for c in basis)
            if key not in seen:
                seen[key] = shrink(ctx, x)

        for x in lower:
            offer(x)
            offer(thin_succ(ctx, x))
            offer(plump_succ(ctx, x))
        for n in range(1, support + 1):
            for kids in combinations(lower, n):
                u = ctx.make(((c, top) for c in kids), where="ordinals_upto")
                for x in ctx.subset_names(u):
                    offer(x)
        out = sorted(seen.values(), key=lambda n: n.skey)
    if t is not None:
        t[key] = out
    return out


def plump_upto(ctx: Context, k: int, support: int = 3) -> list[Name]:
    top = ctx.h.top
    return [x for x in ordinals_upto(ctx, k, support) if plord(ctx, x) == top]


def check_ordinals(ctx: Context, k: int) -> list[Name]:
    return [check_name(ctx.h, i) for i in range(k + 1)]


def plump_generated(ctx: Context, steps: int = 2, max_rank: int = 3) -> list[Name]:
    """Plump ordinals reachable from the empty name by ``steps`` rounds of
    plump successor, pairwise union and plump addition, capped at ``max_rank``."""
    top = ctx.h.top
    pool = [empty(ctx.h)]
    for _ in range(steps):
        new = list(pool)
        for a in pool:
            new.append(plump_succ(ctx, a))
            for b in pool:
                new.append(ctx.union(ctx.pair(a, b)))
                if a.rank + b.rank <= max_rank:
                    new.append(add(ctx, a, b))
        pool = [x for x in _dedup(ctx, new) if x.rank <= max_rank]
    pool = [x for x in pool if plord(ctx, x) == top]
    pool.sort(key=lambda n: n.skey)
    return pool


def plump_images(ctx: Context, k: int) -> list[Name]:
    """``check(i)^pl`` for ``i <= k``."""
    return [plump_operator(ctx, check_name(ctx.h, i)) for i in range(k + 1)]
