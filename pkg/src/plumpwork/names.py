"""Heyting-valued set names and their core semantics.

A name is a finite tree whose edges carry truth values.  Names are
hash-consed: two structurally identical names are the same object, so
identity is structural equality and memo tables can key on names directly.

Semantics (mutual recursion on rank)::

    [x = y]  = /\\_{(a,p) in x} (p => [a in y])  /\\  /\\_{(b,q) in y} (q => [b in x])
    [a in y] = \\/_{(b,q) in y} (q /\\ [a = b])
    [x <= y] = /\\_{(a,p) in x} (p => [a in y])
"""
from __future__ import annotations

import functools
import weakref
from dataclasses import dataclass, asdict
from typing import Iterable, Sequence

from .heyting import AlgebraMismatch, HeytingAlgebra, TruthValue


class BudgetExceeded(RuntimeError):
    """An enumeration or construction went past a configured cap."""

    def __init__(self, cap: str, limit: int, actual: int, where: str = ""):
        self.cap, self.limit, self.actual, self.where = cap, limit, actual, where
        msg = f"budget exceeded: {cap}={limit} (needed at least {actual})"
        if where:
            msg += f" in {where}"
        super().__init__(msg)


@dataclass(frozen=True)
class Budget:
    max_rank: int = 4
    max_entries: int = 64
    max_subsets: int = 4096

    def as_dict(self) -> dict:
        return asdict(self)


_INTERN: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()


class Name:
    """A finite-rank Heyting-valued set: a tuple of ``(child, weight)`` entries.

    Weights are carrier indices of ``algebra``.  Construction interns the
    name; use :meth:`Context.normalize` to reach canonical form.
    """

    __slots__ = ("algebra", "entries", "rank", "_skey", "_canonical", "__weakref__")

    def __new__(cls, algebra: HeytingAlgebra, entries: Iterable = ()):
        entries = tuple((c, int(w)) for c, w in entries)
        key = (algebra, entries)
        obj = _INTERN.get(key)
        if obj is not None:
            return obj
        for c, w in entries:
            if c.algebra is not algebra:
                raise AlgebraMismatch("child name over a different algebra")
            if not 0 <= w < algebra.size:
                raise ValueError(f"weight {w} outside the carrier")
        obj = object.__new__(cls)
        obj.algebra = algebra
        obj.entries = entries
        obj.rank = 1 + max(c.rank for c, _ in entries) if entries else 0
        obj._skey = None
        obj._canonical = False
        _INTERN[key] = obj
        return obj

    def __reduce__(self):
        raise TypeError("names are interned and cannot be pickled")

    @property
    def skey(self) -> tuple:
        """Deterministic structural order: (rank, entry count, entries lexicographically)."""
        k = self._skey
        if k is None:
            k = (self.rank, len(self.entries), tuple((c.skey, w) for c, w in self.entries))
            self._skey = k
        return k

    @property
    def children(self) -> list["Name"]:
        return [c for c, _ in self.entries]

    def __len__(self):
        return len(self.entries)

    def __repr__(self):
        from .syntax import format_name
        return f"Name({format_name(self)})"


def empty(h: HeytingAlgebra) -> Name:
    x = Name(h, ())
    x._canonical = True
    return x


def _mark(x: Name) -> Name:
    x._canonical = True
    return x


class Context:
    """Evaluation context: memo tables for the name semantics plus the budget.

    One context serves one algebra.  With ``memo=False`` every call
    recomputes from scratch (used to cross-check the memo tables).  With
    ``strict=True`` the identity shortcut ``[x = x] = top`` and the symmetric
    fill of the equality memo are disabled, so reflexivity and symmetry
    become genuine checks of the recursion.
    """

    def __init__(self, algebra: HeytingAlgebra, budget: Budget | None = None,
                 memo: bool = True, strict: bool = False):
        self.h = algebra
        self.budget = budget or Budget()
        self.memo = memo
        self.strict = strict
        self.tables: dict[str, dict] = {}
        self._eq: dict = {}
        self._mem: dict = {}
        self._sub: dict = {}
        self._norm: dict = {}
        self._subsets: dict = {}

    def check(self, *names: Name):
        for x in names:
            if x.algebra is not self.h:
                raise AlgebraMismatch(
                    f"name over {x.algebra!r} used in a context for {self.h!r}")

    def table(self, tag: str) -> dict | None:
        if not self.memo:
            return None
        t = self.tables.get(tag)
        if t is None:
            t = self.tables[tag] = {}
        return t

    # -- core semantics -------------------------------------------------

    def eq(self, x: Name, y: Name) -> int:
        h = self.h
        if x is y and not self.strict:
            return h.top
        if self.memo:
            r = self._eq.get((x, y))
            if r is not None:
                return r
        M, I, bot = h.meet, h.implies, h.bottom
        r = h.top
        for a, p in x.entries:
            r = M[r][I[p][self.mem(a, y)]]
            if r == bot:
                break
        else:
            for b, q in y.entries:
                r = M[r][I[q][self.mem(b, x)]]
                if r == bot:
                    break
        if self.memo:
            self._eq[(x, y)] = r
            if not self.strict:
                self._eq[(y, x)] = r
        return r

    def mem(self, a: Name, y: Name) -> int:
        if self.memo:
            r = self._mem.get((a, y))
            if r is not None:
                return r
        h = self.h
        M, J, top = h.meet, h.join, h.top
        r = h.bottom
        for b, q in y.entries:
            r = J[r][M[q][self.eq(a, b)]]
            if r == top:
                break
        if self.memo:
            self._mem[(a, y)] = r
        return r

    def sub(self, x: Name, y: Name) -> int:
        if x is y and not self.strict:
            return self.h.top
        if self.memo:
            r = self._sub.get((x, y))
            if r is not None:
                return r
        h = self.h
        M, I, bot = h.meet, h.implies, h.bottom
        r = h.top
        for a, p in x.entries:
            r = M[r][I[p][self.mem(a, y)]]
            if r == bot:
                break
        if self.memo:
            self._sub[(x, y)] = r
        return r

    # -- canonical form -------------------------------------------------

    def normalize(self, x: Name) -> Name:
        """Drop bottom entries, merge top-equal children (joining weights), sort."""
        if x._canonical:
            return x
        if self.memo:
            r = self._norm.get(x)
            if r is not None:
                return r
        r = self._build(x.entries, where="normalize")
        if self.memo:
            self._norm[x] = r
        return r

    def _build(self, entries: Iterable, where: str = "") -> Name:
        h = self.h
        J, bot, top = h.join, h.bottom, h.top
        merged: dict[Name, int] = {}
        for a, p in entries:
            if p == bot:
                continue
            a = self.normalize(a)
            merged[a] = J[merged.get(a, bot)][p]
        classes: list[list] = []
        for c in sorted(merged, key=lambda n: n.skey):
            w = merged[c]
            for cl in classes:
                if self.eq(cl[0], c) == top:
                    cl[1] = J[cl[1]][w]
                    break
            else:
                classes.append([c, w])
        b = self.budget
        if len(classes) > b.max_entries:
            raise BudgetExceeded("max_entries", b.max_entries, len(classes), where)
        x = Name(h, ((c, w) for c, w in classes))
        if x.rank > b.max_rank:
            raise BudgetExceeded("max_rank", b.max_rank, x.rank, where)
        return _mark(x)

    def make(self, entries: Iterable, where: str = "") -> Name:
        """Build and normalize a name from ``(child, weight)`` pairs."""
        return self._build(entries, where)

    # -- enumeration ----------------------------------------------------

    def closed_vectors(self, x: Name, soft=None, where: str = "subset_names"):
        """Enumerate top-classes of subsets of the canonical name ``x``.

        A subset with children ``a_i`` is determined up to top-equality by
        its saturated vector ``s_i = [a_i in subset]``.  The vectors are
        exactly those with ``s_i <= [a_i in x]`` and
        ``s_i /\\ [a_i = a_j] <= s_j`` for all ``i, j``.

        ``soft`` is an optional matrix ``c``; each yielded vector then carries
        ``r = /\\_{i,j} ((s_i /\\ c[i][j]) => s_j)`` and branches where ``r``
        reaches bottom are pruned.  Yields ``(vector, r)``.
        """
        h = self.h
        L, M, I = h.leq, h.meet, h.implies
        bot, top = h.bottom, h.top
        kids = [a for a, _ in x.entries]
        n = len(kids)
        e = [[self.eq(kids[i], kids[j]) for j in range(n)] for i in range(n)]
        bound = [self.mem(kids[i], x) for i in range(n)]
        vec = [bot] * n
        cap = self.budget.max_subsets
        count = 0

        def rec(i: int, r: int):
            nonlocal count
            if i == n:
                count += 1
                if count > cap:
                    raise BudgetExceeded("max_subsets", cap, count, where)
                yield tuple(vec), r
                return
            ei = e[i]
            for v in h.below[bound[i]]:
                ok = True
                for j in range(i):
                    sj = vec[j]
                    if not (L[M[v][ei[j]]][sj] and L[M[sj][ei[j]]][v]):
                        ok = False
                        break
                if not ok:
                    continue
                r2 = r
                if soft is not None:
                    ci = soft[i]
                    r2 = M[r2][I[M[v][ci[i]]][v]]
                    for j in range(i):
                        sj = vec[j]
                        r2 = M[M[r2][I[M[v][ci[j]]][sj]]][I[M[sj][soft[j][i]]][v]]
                        if r2 == bot:
                            break
                    if r2 == bot:
                        continue
                vec[i] = v
                yield from rec(i + 1, r2)
            vec[i] = bot

        yield from rec(0, top)

    def subset_names(self, x: Name) -> list[Name]:
        """One representative per top-class of names ``{(a_i, q_i)}`` with ``q_i <= p_i``."""
        x = self.normalize(x)
        if self.memo:
            r = self._subsets.get(x)
            if r is not None:
                return r
        out = [self.subset_from_vector(x, vec) for vec, _ in self.closed_vectors(x)]
        if self.memo:
            self._subsets[x] = out
        return out

    def subset_from_vector(self, x: Name, vec: Sequence[int]) -> Name:
        """The subset ``{(a_i, s_i /\\ p_i)}`` of canonical ``x``; already canonical."""
        M, bot = self.h.meet, self.h.bottom
        ents = []
        for (a, p), s in zip(x.entries, vec):
            w = M[s][p]
            if w != bot:
                ents.append((a, w))
        return _mark(Name(self.h, ents))

    # -- constructors ---------------------------------------------------

    def union(self, x: Name) -> Name:
        M = self.h.meet
        return self._build(((b, M[q][p]) for a, p in x.entries for b, q in a.entries),
                           where="union_name")

    def weighted_union(self, family: Iterable[tuple[Name, int]]) -> Name:
        M = self.h.meet
        return self._build(((b, M[q][p]) for a, p in family for b, q in a.entries),
                           where="weighted_union")

    def pair(self, x: Name, y: Name) -> Name:
        top = self.h.top
        return self._build(((x, top), (y, top)), where="pair_name")


# -- public API returning TruthValue -----------------------------------------

def context_for(ctx: Context | None, *names: Name) -> Context:
    if ctx is None:
        ctx = Context(names[0].algebra)
    ctx.check(*names)
    return ctx


def eq_value(x: Name, y: Name, ctx: Context | None = None) -> TruthValue:
    ctx = context_for(ctx, x, y)
    return TruthValue(ctx.h, ctx.eq(x, y))


def mem_value(x: Name, y: Name, ctx: Context | None = None) -> TruthValue:
    ctx = context_for(ctx, x, y)
    return TruthValue(ctx.h, ctx.mem(x, y))


def subset_value(x: Name, y: Name, ctx: Context | None = None) -> TruthValue:
    ctx = context_for(ctx, x, y)
    return TruthValue(ctx.h, ctx.sub(x, y))


def normalize(x: Name, ctx: Context | None = None) -> Name:
    return context_for(ctx, x).normalize(x)


def subset_names(x: Name, ctx: Context | None = None) -> list[Name]:
    return context_for(ctx, x).subset_names(x)


def union_name(x: Name, ctx: Context | None = None) -> Name:
    return context_for(ctx, x).union(x)


def pair_name(x: Name, y: Name, ctx: Context | None = None) -> Name:
    return context_for(ctx, x, y).pair(x, y)


def weighted_union(family: Sequence[tuple[Name, TruthValue | int]],
                   ctx: Context | None = None) -> Name:
    if not family and ctx is None:
        raise ValueError("an empty family needs an explicit context")
    ctx = context_for(ctx, *(n for n, _ in family)) if family else ctx
    fam = []
    for n, w in family:
        if isinstance(w, TruthValue):
            if w.algebra is not ctx.h:
                raise AlgebraMismatch("weight from a different algebra")
            w = w.index
        fam.append((n, w))
    return ctx.weighted_union(fam)


@functools.lru_cache(maxsize=None)
def _check_ordinal(h: HeytingAlgebra, k: int) -> Name:
    return _mark(Name(h, ((_check_ordinal(h, i), h.top) for i in range(k))))


def check_name(h: HeytingAlgebra, s) -> Name:
    """The check name of a hereditarily finite set (all weights top).

    ``s`` is a von Neumann natural number or a nested iterable of such.
    """
    if isinstance(s, bool):
        raise TypeError("booleans are not hereditarily finite sets")
    if isinstance(s, int):
        if s < 0:
            raise ValueError("negative ordinal")
        return _check_ordinal(h, s)
    kids = {}
    for t in s:
        c = check_name(h, t)
        kids[c] = None
    ordered = sorted(kids, key=lambda n: n.skey)
    return _mark(Name(h, ((c, h.top) for c in ordered)))


def check_ordinal_value(x: Name) -> int | None:
    """If ``x`` is structurally the check name of von Neumann ``k``, return ``k``."""
    k = len(x.entries)
    return k if x is _check_ordinal(x.algebra, k) else None
