"""Strong incomparability and coding a pairwise incomparable map as one plump ordinal.

A map ``f`` from keys in ``alpha`` to plump values in ``beta`` whose values
are pairwise incomparable is stored as

    sigma = U_{g in dom f} (alpha * f(g) + g)^pls

and read back with the bounded formula

    x in alpha /\\ y in beta /\\ ex t in sigma (t = alpha*y + x /\\ all t' in sigma (t sub t' -> t = t'))
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arith import add, mul
from .heyting import TruthValue
from .logic import And, Const, Eq, ExistsIn, ForallIn, Implies, Sub, Var, eval_index
from .names import Context, Name, context_for
from .plump import plump_succ


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteMap:
    """Finitely many ``(key, value)`` pairs; ``domain`` has the keys as its top-members."""

    pairs: tuple
    domain: Name

    @property
    def keys(self) -> list[Name]:
        return [k for k, _ in self.pairs]

    @property
    def values(self) -> list[Name]:
        return [v for _, v in self.pairs]

    def __len__(self):
        return len(self.pairs)


def finite_map(pairs: Sequence[tuple[Name, Name]], ctx: Context | None = None,
               domain: Name | None = None) -> FiniteMap:
    """Build and validate a map; ``domain`` defaults to ``{(k, top) : k a key}``."""
    pairs = list(pairs)
    names = [n for kv in pairs for n in kv] + ([domain] if domain is not None else [])
    if ctx is None:
        if not names:
            raise MapError("an empty map needs a context")
        ctx = Context(names[0].algebra)
    ctx.check(*names)
    pairs = tuple((ctx.normalize(k), ctx.normalize(v)) for k, v in pairs)
    top = ctx.h.top
    keys = [k for k, _ in pairs]
    for i, k in enumerate(keys):
        for k2 in keys[:i]:
            if ctx.eq(k, k2) == top:
                raise MapError(f"keys {k!r} and {k2!r} are top-equal")
    if domain is None:
        domain = ctx.make(((k, top) for k in keys), where="finite_map")
    else:
        domain = ctx.normalize(domain)
        for k in keys:
            if ctx.mem(k, domain) != top:
                raise MapError(f"key {k!r} is not a top-member of the domain")
    return FiniteMap(pairs, domain)


def lookup(ctx: Context, f: FiniteMap, key: Name) -> Name:
    top = ctx.h.top
    for k, v in f.pairs:
        if ctx.eq(k, key) == top:
            return v
    raise KeyError(f"{key!r} is not top-equal to any key")


# -- incomparability ---------------------------------------------------------

def strongly_incomparable(ctx: Context, a: Name, b: Name) -> int:
    h = ctx.h
    return h.meet[h.neg(ctx.sub(a, b))][h.neg(ctx.sub(b, a))]


def pairwise_incomparable(ctx: Context, f: FiniteMap) -> int:
    h = ctx.h
    M, I = h.meet, h.implies
    r = h.top
    for g, d in f.pairs:
        for g2, d2 in f.pairs:
            r = M[r][I[ctx.sub(d2, d)][ctx.eq(g, g2)]]
            if r == h.bottom:
                return r
    return r


# -- encoding ------------------------------------------------------------------

def pair_code(ctx: Context, alpha: Name, gamma: Name, delta: Name) -> Name:
    return add(ctx, mul(ctx, alpha, delta), gamma)


def encode(ctx: Context, f: FiniteMap, alpha: Name, beta: Name) -> Name:
    top = ctx.h.top
    alpha = ctx.normalize(alpha)
    return ctx.weighted_union(
        (plump_succ(ctx, pair_code(ctx, alpha, g, d)), top) for g, d in f.pairs)


_T, _T2 = Var("t"), Var("t2")


def _phi_tail(sigma: Name, code: Name):
    s = Const(sigma)
    return ExistsIn("t", s, And(Eq(_T, Const(code)),
                                ForallIn("t2", s, Implies(Sub(_T, _T2), Eq(_T, _T2)))))


def phi(ctx: Context, x: Name, y: Name, alpha: Name, beta: Name, sigma: Name) -> int:
    """The decoding formula's value at ``(x, y; alpha, beta, sigma)``."""
    h = ctx.h
    M = h.meet
    r = M[ctx.mem(x, alpha)][ctx.mem(y, beta)]
    if r == h.bottom:
        return r
    return M[r][eval_index(_phi_tail(sigma, pair_code(ctx, alpha, x, y)), {}, ctx)]


def decode_pairs(ctx: Context, sigma: Name, alpha: Name, beta: Name) -> list[tuple[Name, Name]]:
    """Every ``(key, value)`` candidate accepted by the decoding formula at top."""
    top = ctx.h.top
    alpha, beta, sigma = ctx.normalize(alpha), ctx.normalize(beta), ctx.normalize(sigma)
    values: list[Name] = []
    for d in [d for d, p in beta.entries if p == top] + ctx.subset_names(beta):
        if all(ctx.eq(d, e) != top for e in values):
            values.append(d)
    # phi is below x in alpha /\ y in beta, so only top-members can reach top
    values = [d for d in values if ctx.mem(d, beta) == top]
    return [(g, d) for g, p in alpha.entries if p == top for d in values
            if phi(ctx, g, d, alpha, beta, sigma) == top]


def decode(ctx: Context, sigma: Name, alpha: Name, beta: Name) -> FiniteMap:
    """Decoded map; if a key decodes to several values only the first is kept."""
    top = ctx.h.top
    out: list[tuple[Name, Name]] = []
    for g, d in decode_pairs(ctx, sigma, alpha, beta):
        if all(ctx.eq(g, g2) != top for g2, _ in out):
            out.append((g, d))
    return FiniteMap(tuple(out), ctx.make(((g, top) for g, _ in out), where="decode"))


def maps_equal(ctx: Context, f: FiniteMap, g: FiniteMap) -> bool:
    """Top-level equality of maps: same keys up to top-equality, top-equal values."""
    top = ctx.h.top

    def covered(a: FiniteMap, b: FiniteMap) -> bool:
        for k, v in a.pairs:
            if not any(ctx.eq(k, k2) == top and ctx.eq(v, v2) == top for k2, v2 in b.pairs):
                return False
        return True
    return covered(f, g) and covered(g, f)


def is_functional(ctx: Context, pairs: Sequence[tuple[Name, Name]]) -> bool:
    top = ctx.h.top
    for i, (k, v) in enumerate(pairs):
        for k2, v2 in pairs[:i]:
            if ctx.eq(k, k2) == top and ctx.eq(v, v2) != top:
                return False
    return True


# -- powerset coding -----------------------------------------------------------

def sigma_of(ctx: Context, x: Name, f: FiniteMap) -> Name:
    return ctx.weighted_union((plump_succ(ctx, lookup(ctx, f, b)), p) for b, p in x.entries)


def reconstruct(ctx: Context, sx: Name, f: FiniteMap, alpha: Name) -> Name:
    M = ctx.h.meet
    return ctx.make(((b, M[M[ctx.mem(b, alpha)][ctx.mem(b, f.domain)]][ctx.mem(v, sx)])
                     for b, v in f.pairs), where="reconstruct_sx")


# -- public API ----------------------------------------------------------------

def _map_names(f: FiniteMap) -> list[Name]:
    return [n for kv in f.pairs for n in kv] + [f.domain]


def strongly_incomparable_value(a: Name, b: Name, ctx: Context | None = None) -> TruthValue:
    ctx = context_for(ctx, a, b)
    return TruthValue(ctx.h, strongly_incomparable(ctx, a, b))


def pairwise_incomparable_value(f: FiniteMap, ctx: Context | None = None) -> TruthValue:
    ctx = context_for(ctx, *_map_names(f))
    return TruthValue(ctx.h, pairwise_incomparable(ctx, f))


def encode_map(f: FiniteMap, alpha: Name, beta: Name, ctx: Context | None = None) -> Name:
    ctx = context_for(ctx, alpha, beta, *_map_names(f))
    return encode(ctx, f, alpha, beta)


def decode_map(sigma: Name, alpha: Name, beta: Name, ctx: Context | None = None) -> FiniteMap:
    ctx = context_for(ctx, sigma, alpha, beta)
    return decode(ctx, sigma, alpha, beta)


def sigma_x(x: Name, f: FiniteMap, ctx: Context | None = None) -> Name:
    ctx = context_for(ctx, x, *_map_names(f))
    return sigma_of(ctx, ctx.normalize(x), f)


def reconstruct_sx(sx: Name, f: FiniteMap, alpha: Name, ctx: Context | None = None) -> Name:
    ctx = context_for(ctx, sx, alpha, *_map_names(f))
    return reconstruct(ctx, ctx.normalize(sx), f, ctx.normalize(alpha))
