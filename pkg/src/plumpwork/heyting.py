"""Finite Heyting algebras, realized as downset algebras of finite posets.

Truth values are interned as small integers indexing the carrier; every
lattice operation is a table lookup.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence


class PosetError(ValueError):
    """The supplied relation is not a partial order."""


class AlgebraMismatch(ValueError):
    """Values from two different algebras were combined."""


@dataclass(frozen=True)
class Poset:
    elements: tuple
    order: frozenset  # pairs (a, b) meaning a <= b

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise PosetError("duplicate element labels")
        elems = set(self.elements)
        for a, b in self.order:
            if a not in elems or b not in elems:
                raise PosetError(f"relation mentions unknown element in ({a!r}, {b!r})")
        for a in self.elements:
            if (a, a) not in self.order:
                raise PosetError(f"reflexivity fails at {a!r}")
        for a, b in self.order:
            if a != b and (b, a) in self.order:
                raise PosetError(f"antisymmetry fails for {a!r} and {b!r}")
        for a, b in self.order:
            for c in self.elements:
                if (b, c) in self.order and (a, c) not in self.order:
                    raise PosetError(f"transitivity fails for {a!r} <= {b!r} <= {c!r}")

    @classmethod
    def from_relation(cls, elements: Iterable, leq: Iterable) -> "Poset":
        """Build a poset from generating pairs, taking the reflexive-transitive closure."""
        elements = tuple(elements)
        rel = {(a, a) for a in elements} | {tuple(p) for p in leq}
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c, d in list(rel):
                    if b == c and (a, d) not in rel:
                        rel.add((a, d))
                        changed = True
        return cls(elements, frozenset(rel))

    @classmethod
    def from_json(cls, text: str) -> "Poset":
        data = json.loads(text)
        if not isinstance(data, dict) or "elements" not in data:
            raise PosetError('poset JSON needs an "elements" list')
        return cls.from_relation([str(e) for e in data["elements"]],
                                 [(str(a), str(b)) for a, b in data.get("leq", [])])

    def leq(self, a, b) -> bool:
        return (a, b) in self.order

    def is_antichain(self) -> bool:
        return all(a == b for a, b in self.order)


class HeytingAlgebra:
    """A finite Heyting algebra given by explicit operation tables.

    Carrier members are the integers ``0..n-1``.  Tables are accepted as
    given; use :func:`check_laws` before trusting a hand-built algebra.
    """

    def __init__(self, labels: Sequence[str], leq, meet, join, implies,
                 bottom: int, top: int, name: str = "", poset: Poset | None = None):
        self.labels = tuple(labels)
        self.size = len(self.labels)
        self.leq = tuple(tuple(bool(v) for v in row) for row in leq)
        self.meet = tuple(tuple(row) for row in meet)
        self.join = tuple(tuple(row) for row in join)
        self.implies = tuple(tuple(row) for row in implies)
        self.bottom = bottom
        self.top = top
        self.name = name
        self.poset = poset
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        # values below each carrier member, in carrier order
        self.below = tuple(tuple(q for q in range(self.size) if self.leq[q][p])
                           for p in range(self.size))

    def __repr__(self):
        return f"<HeytingAlgebra {self.name or '?'} |H|={self.size}>"

    @property
    def carrier(self) -> range:
        return range(self.size)

    def neg(self, p: int) -> int:
        return self.implies[p][self.bottom]

    def iff(self, p: int, q: int) -> int:
        return self.meet[self.implies[p][q]][self.implies[q][p]]

    def label(self, p: int) -> str:
        return self.labels[p]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            pass
        aliases = {"bot": self.bottom, "top": self.top, "0": self.bottom, "1": self.top,
                   "⊥": self.bottom, "⊤": self.top}
        if label in aliases:
            return aliases[label]
        raise KeyError(f"unknown truth-value label {label!r} for algebra "
                       f"{self.name or '?'} (known: {', '.join(self.labels)})")

    def value(self, p: int | str) -> "TruthValue":
        if isinstance(p, str):
            p = self.index(p)
        return TruthValue(self, p)

    def meet_all(self, values: Iterable[int]) -> int:
        r = self.top
        m = self.meet
        for v in values:
            r = m[r][v]
        return r

    def join_all(self, values: Iterable[int]) -> int:
        r = self.bottom
        j = self.join
        for v in values:
            r = j[r][v]
        return r

    def is_boolean(self) -> bool:
        return all(self.join[p][self.neg(p)] == self.top for p in self.carrier)

    def describe(self) -> dict:
        return {
            "name": self.name,
            "size": self.size,
            "labels": list(self.labels),
            "bottom": self.labels[self.bottom],
            "top": self.labels[self.top],
            "leq": [[self.labels[p], self.labels[q]] for p in self.carrier
                    for q in self.carrier if self.leq[p][q] and p != q],
            "boolean": self.is_boolean(),
        }


@dataclass(frozen=True)
class TruthValue:
    algebra: HeytingAlgebra = field(repr=False)
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.algebra.size:
            raise ValueError(f"{self.index} is not in the carrier of {self.algebra!r}")

    def _other(self, other: "TruthValue") -> int:
        if not isinstance(other, TruthValue):
            return NotImplemented
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("truth values from different algebras")
        return other.index

    def __and__(self, other):
        return TruthValue(self.algebra, self.algebra.meet[self.index][self._other(other)])

    def __or__(self, other):
        return TruthValue(self.algebra, self.algebra.join[self.index][self._other(other)])

    def __rshift__(self, other):
        """Heyting implication."""
        return TruthValue(self.algebra, self.algebra.implies[self.index][self._other(other)])

    def __invert__(self):
        return TruthValue(self.algebra, self.algebra.neg(self.index))

    def __le__(self, other):
        return self.algebra.leq[self.index][self._other(other)]

    def __lt__(self, other):
        return self <= other and self.index != other.index

    def __ge__(self, other):
        return other <= self

    def __gt__(self, other):
        return other < self

    @property
    def is_top(self) -> bool:
        return self.index == self.algebra.top

    @property
    def is_bottom(self) -> bool:
        return self.index == self.algebra.bottom

    @property
    def label(self) -> str:
        return self.algebra.labels[self.index]

    def __str__(self):
        return self.label


def _check_same(h: HeytingAlgebra, vs: Sequence[TruthValue]):
    for v in vs:
        if v.algebra is not h:
            raise AlgebraMismatch(f"value {v} does not belong to {h!r}")


def big_meet(h: HeytingAlgebra, vs: Sequence[TruthValue]) -> TruthValue:
    _check_same(h, vs)
    return TruthValue(h, h.meet_all(v.index for v in vs))


def big_join(h: HeytingAlgebra, vs: Sequence[TruthValue]) -> TruthValue:
    _check_same(h, vs)
    return TruthValue(h, h.join_all(v.index for v in vs))


def _downset_label(p: Poset, members: frozenset) -> str:
    maximal = [a for a in p.elements if a in members
               and not any(b != a and b in members and p.leq(a, b) for b in p.elements)]
    return "+".join(str(a) for a in maximal)


def downset_algebra(p: Poset, name: str = "") -> HeytingAlgebra:
    """The algebra of downward-closed subsets of ``p``.

    Members are ordered by size, then by element position, so the bottom is
    index 0 and the top is the last index.  Labels name a downset by its
    maximal elements joined with ``+``; the empty and full sets are ``bot``
    and ``top``.
    """
    elems = p.elements
    n = len(elems)
    pos = {a: i for i, a in enumerate(elems)}
    down = [0] * n
    for a, b in p.order:
        down[pos[b]] |= 1 << pos[a]
    masks = []
    for m in range(1 << n):
        if all(not (m >> i) & 1 or (down[i] & ~m) == 0 for i in range(n)):
            masks.append(m)
    masks.sort(key=lambda m: (bin(m).count("1"), [i for i in range(n) if (m >> i) & 1]))
    index = {m: k for k, m in enumerate(masks)}
    full = (1 << n) - 1

    def imp(u: int, v: int) -> int:
        return sum(1 << i for i in range(n) if (down[i] & u & ~v) == 0)

    size = len(masks)
    leq = [[(masks[a] & ~masks[b]) == 0 for b in range(size)] for a in range(size)]
    meet = [[index[masks[a] & masks[b]] for b in range(size)] for a in range(size)]
    join = [[index[masks[a] | masks[b]] for b in range(size)] for a in range(size)]
    implies = [[index[imp(masks[a], masks[b])] for b in range(size)] for a in range(size)]
    labels = []
    for m in masks:
        if m == 0:
            labels.append("bot")
        elif m == full:
            labels.append("top")
        else:
            labels.append(_downset_label(p, frozenset(elems[i] for i in range(n) if (m >> i) & 1)))
    if n == 0:
        labels = ["top"]
    return HeytingAlgebra(labels, leq, meet, join, implies,
                          bottom=index[0], top=index[full], name=name, poset=p)


@dataclass(frozen=True)
class LawViolation:
    law: str
    args: tuple

    def __str__(self):
        return f"{self.law}{self.args}"


def check_laws(h: HeytingAlgebra) -> list[LawViolation]:
    """Exhaustively check the Heyting algebra axioms; return every violated instance."""
    out: list[LawViolation] = []
    C = range(h.size)
    L, M, J, I = h.leq, h.meet, h.join, h.implies
    lab = h.labels

    for p in C:
        if not L[p][p]:
            out.append(LawViolation("reflexivity", (lab[p],)))
        if not L[h.bottom][p]:
            out.append(LawViolation("bottom-least", (lab[p],)))
        if not L[p][h.top]:
            out.append(LawViolation("top-greatest", (lab[p],)))
    for p, q in product(C, C):
        if p != q and L[p][q] and L[q][p]:
            out.append(LawViolation("antisymmetry", (lab[p], lab[q])))
        m, j = M[p][q], J[p][q]
        if not (L[m][p] and L[m][q]):
            out.append(LawViolation("meet-lower-bound", (lab[p], lab[q])))
        if not (L[p][j] and L[q][j]):
            out.append(LawViolation("join-upper-bound", (lab[p], lab[q])))
    for p, q, r in product(C, C, C):
        if L[p][q] and L[q][r] and not L[p][r]:
            out.append(LawViolation("transitivity", (lab[p], lab[q], lab[r])))
        if L[r][p] and L[r][q] and not L[r][M[p][q]]:
            out.append(LawViolation("meet-greatest", (lab[p], lab[q], lab[r])))
        if L[p][r] and L[q][r] and not L[J[p][q]][r]:
            out.append(LawViolation("join-least", (lab[p], lab[q], lab[r])))
        if M[p][J[q][r]] != J[M[p][q]][M[p][r]]:
            out.append(LawViolation("distributivity", (lab[p], lab[q], lab[r])))
        if L[M[r][p]][q] != L[r][I[p][q]]:
            out.append(LawViolation("adjunction", (lab[p], lab[q], lab[r])))
    return out


def _chain_poset(k: int) -> Poset:
    names = ["u", "v", "w", "x", "y", "z"][:k]
    return Poset.from_relation(names, list(zip(names, names[1:])))


_BUILTIN_POSETS = {
    # one point: the two-element Boolean algebra
    "bool2": lambda: Poset.from_relation(["t"], []),
    # u < t: bot < u < top
    "sierpinski": lambda: Poset.from_relation(["u", "t"], [("u", "t")]),
    # u < v < t: bot < u < v < top
    "chain4": lambda: Poset.from_relation(["u", "v", "t"], [("u", "v"), ("v", "t")]),
    # root t above two leaves a, b: {a}, {b} form a diamond under a+b, then top
    "diamond": lambda: Poset.from_relation(["a", "b", "t"], [("a", "t"), ("b", "t")]),
}

_builtin_cache: dict[str, HeytingAlgebra] = {}


def builtin_names() -> list[str]:
    return list(_BUILTIN_POSETS)


def get_algebra(name: str) -> HeytingAlgebra:
    """Return a built-in algebra (shared instance) or load a poset JSON file."""
    if name in _BUILTIN_POSETS:
        if name not in _builtin_cache:
            _builtin_cache[name] = downset_algebra(_BUILTIN_POSETS[name](), name=name)
        return _builtin_cache[name]
    if name.endswith(".json"):
        with open(name, encoding="utf-8") as fh:
            return downset_algebra(Poset.from_json(fh.read()), name=name)
    raise KeyError(f"unknown algebra {name!r}; built-ins are {', '.join(_BUILTIN_POSETS)}")


def all_posets(n: int) -> list[Poset]:
    """Every labeled partial order on the elements ``0..n-1``."""
    elems = tuple(range(n))
    pairs = [(a, b) for a in elems for b in elems if a != b]
    out = []
    for bits in range(1 << len(pairs)):
        rel = {pairs[i] for i in range(len(pairs)) if (bits >> i) & 1}
        if any((b, a) in rel for a, b in rel):
            continue
        if any((b, c) in rel and a != c and (a, c) not in rel
               for a, b in rel for c in elems):
            continue
        out.append(Poset(elems, frozenset(rel | {(a, a) for a in elems})))
    return out
