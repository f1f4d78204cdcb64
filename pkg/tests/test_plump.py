from functools import lru_cache

import pytest

from plumpwork import gen
from plumpwork.heyting import get_algebra
from plumpwork.logic import Const, evaluate, plord_matrix, transitive_formula
from plumpwork.names import Budget, BudgetExceeded, Context, check_name, empty, eq_value
from plumpwork.plump import (
    is_ord_value, is_thin_value, plord_crit_value, plord_value, plump_op, plump_succ,
    plump_succ_literal, plump_successor, thin_successor, vartheta,
)
from plumpwork.syntax import parse_name

from oracle import naive_eq, naive_eval, naive_mem, naive_sub, raw_names

S = get_algebra("sierpinski")
B = get_algebra("bool2")
BUILTINS = ["bool2", "sierpinski", "chain4", "diamond"]


# -- worked examples -------------------------------------------------------------

@pytest.mark.parametrize("alg", BUILTINS)
def test_check_ordinals_are_thin_ordinals(alg):
    h = get_algebra(alg)
    for k in range(5):
        assert is_ord_value(check_name(h, k)).is_top
        assert is_thin_value(check_name(h, k)).is_top
    assert vartheta(empty(h), empty(h)).is_top
    assert vartheta(check_name(h, 1), check_name(h, 1)).is_top
    assert plord_crit_value(empty(h)).is_top
    assert plump_successor(empty(h)) is check_name(h, 1)
    assert thin_successor(empty(h)) is check_name(h, 1)
    assert thin_successor(check_name(h, 1)) is check_name(h, 2)
    assert plump_op(empty(h)) is empty(h)


def test_ord_examples():
    assert is_ord_value(parse_name("{(ord:1, top)}", B)).is_bottom
    assert is_ord_value(parse_name("{(ord:0, u)}", S)).is_top


def test_classical_values():
    ctx = Context(B)
    for k in range(5):
        assert plord_value(check_name(B, k), ctx).is_top
        assert eq_value(plump_op(check_name(B, k), ctx), check_name(B, k)).is_top
    for k in range(4):
        assert eq_value(plump_successor(check_name(B, k), ctx), check_name(B, k + 1)).is_top
    x = parse_name("{(ord:1, top)}", B)
    assert plord_crit_value(x, ctx).is_bottom and plord_value(x, ctx).is_bottom


def test_subsets_of_one_are_plump():
    for q in S.labels:
        x = parse_name(f"{{(ord:0, {q})}}", S)
        assert plord_value(x).is_top


def test_powerset_of_one():
    ctx = Context(S)
    one, two = check_name(S, 1), check_name(S, 2)
    p1 = plump_successor(one, ctx)
    assert len(p1.entries) == 3 and all(w == S.top for _, w in p1.entries)
    assert is_thin_value(p1, ctx).label == "u"
    assert eq_value(thin_successor(one, ctx), p1, ctx).label == "u"
    assert eq_value(p1, two, ctx).label == "u"
    assert eq_value(plump_op(two, ctx), plump_op(p1, ctx), ctx).is_top


def test_missing_context_inferred():
    assert plord_value(check_name(S, 2)).label == "u"


# -- brute-force oracles -------------------------------------------------------------

def _oracle(h, universe):
    ranked = {}
    for z in universe:
        ranked.setdefault(z.rank, []).append(z)

    def upto(r):
        return [z for k in sorted(ranked) if k <= r for z in ranked[k]]

    @lru_cache(maxsize=None)
    def is_ord(x):
        r = naive_eval(transitive_formula(Const(x)), {}, h, [])
        for a, p in x.entries:
            r = h.meet[r][h.implies[p][is_ord(a)]]
        return r

    @lru_cache(maxsize=None)
    def theta(beta):
        r = h.top
        for g, p in beta.entries:
            inner = theta(g)
            for d in upto(g.rank):
                s = naive_sub(d, g)
                inner = h.meet[inner][h.implies[s][h.implies[theta(d)][naive_mem(d, beta)]]]
            r = h.meet[r][h.implies[p][inner]]
        return r

    def plord(x):
        return h.meet[is_ord(x)][naive_eval(plord_matrix(Const(x)), {}, h, universe)]

    return is_ord, theta, plord


@pytest.mark.parametrize("alg", ["bool2", "sierpinski", "chain4"])
def test_three_routes_match_brute_force(alg):
    h = get_algebra(alg)
    ctx = Context(h)
    universe = raw_names(h, 2)
    is_ord, theta, plord = _oracle(h, universe)
    xs = gen.names_upto(ctx, 2)
    for x in xs:
        v = plord(x)
        assert is_ord_value(x, ctx).index == is_ord(x)
        assert plord_value(x, ctx).index == v
        if is_ord(x) == h.top:
            assert vartheta(x, x, ctx).index == theta(x) == v
            assert plord_crit_value(x, ctx).index == v


@pytest.mark.parametrize("alg", ["sierpinski", "diamond"])
def test_three_routes_agree_on_rank_three_ordinals(alg):
    h = get_algebra(alg)
    ctx = Context(h, Budget(max_entries=256))
    for x in gen.ordinals_upto(ctx, 3)[:40]:
        v = plord_value(x, ctx)
        assert plord_crit_value(x, ctx) == v == vartheta(x, x, ctx)


@pytest.mark.parametrize("alg", ["bool2", "sierpinski", "diamond"])
def test_pruned_successor_matches_literal(alg):
    h = get_algebra(alg)
    ctx = Context(h)
    for x in gen.names_upto(ctx, 2)[:60]:
        a = plump_succ(ctx, x)
        b = plump_succ_literal(ctx, x)
        assert a is b or ctx.eq(a, b) == h.top


def test_successor_weights_are_relpl():
    ctx = Context(S)
    universe = raw_names(S, 2)
    for a in gen.names_upto(ctx, 2):
        s = plump_successor(a, ctx)
        for z in universe:
            if z.rank > 2:
                continue
            expected = evaluate(_relpl_sub(a, z), ctx=ctx).index
            assert naive_mem(z, s) == expected


def _relpl_sub(a, z):
    from plumpwork.logic import And, Sub, relpl_formula
    return And(Sub(Const(z), Const(a)), relpl_formula(a, z))


def test_plump_op_on_sierpinski_sizes():
    ctx = Context(S)
    sizes = [len(plump_op(check_name(S, k), ctx).entries) for k in range(4)]
    assert sizes == [0, 1, 3, 11]
    for k in range(4):
        assert plord_value(plump_op(check_name(S, k), ctx), ctx).is_top


def test_memo_free_agrees():
    h = get_algebra("chain4")
    a, b = Context(h), Context(h, memo=False)
    for x in gen.names_upto(a, 2)[:30]:
        assert plord_value(x, a) == plord_value(x, b)
        assert vartheta(x, x, a) == vartheta(x, x, b)
        assert plump_successor(x, a) is plump_successor(x, b)


def test_successor_budget():
    ctx = Context(get_algebra("diamond"), Budget(max_entries=8))
    with pytest.raises(BudgetExceeded, match="plump_successor"):
        plump_successor(check_name(ctx.h, 2), ctx)


def test_naive_equality_matches_for_successors():
    ctx = Context(S)
    p1 = plump_successor(check_name(S, 1), ctx)
    assert naive_eq(p1, check_name(S, 2)) == S.index("u")
