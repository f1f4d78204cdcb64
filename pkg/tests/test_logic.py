import random

import pytest

from plumpwork.heyting import get_algebra
from plumpwork.logic import (
    FALSE, TRUE, And, Const, Eq, ExistsIn, ExistsSubset, ForallIn, ForallSubset, Implies, Mem,
    Not, Or, ScopeError, Sub, UnboundVariable, Var, check_scope, evaluate, free_vars,
    plord_matrix, relpl_formula, relpl_value, substitute,
)
from plumpwork.names import Context, check_name, empty
from plumpwork.syntax import ParseError, format_formula, format_name, parse_formula, parse_name

from oracle import naive_eval, raw_names

S = get_algebra("sierpinski")
B = get_algebra("bool2")


def test_eval_examples():
    e = Const(empty(S))
    assert evaluate(Eq(e, e)).is_top
    assert evaluate(ForallIn("x", e, FALSE)).is_top
    t = Const(parse_name("{(ord:0, u)}", S))
    lem = Or(Mem(e, t), Implies(Mem(e, t), FALSE))
    assert evaluate(lem).label == "u"


def test_relpl_examples():
    for alg in ("bool2", "sierpinski", "diamond"):
        h = get_algebra(alg)
        for k in range(4):
            assert relpl_value(check_name(h, k), empty(h)).is_top
    assert relpl_value(check_name(B, 2), check_name(B, 1)).is_top
    assert relpl_value(check_name(S, 1), parse_name("{(ord:0, u)}", S)).is_top


def test_relpl_formula_matches_direct_computation():
    ctx = Context(S)
    from plumpwork import gen
    xs = gen.names_upto(ctx, 2)
    for a in xs:
        for g in xs:
            f = relpl_formula(a, g)
            assert evaluate(f, ctx=ctx) == relpl_value(a, g, ctx)


def test_unbound_variable():
    with pytest.raises(UnboundVariable):
        evaluate(Mem(Var("x"), Const(empty(S))))
    with pytest.raises(ValueError, match="context"):
        evaluate(Eq(Var("x"), Var("x")), {})


def test_scope_rules():
    assert free_vars(ForallIn("x", Var("y"), Mem(Var("x"), Var("z")))) == {"y", "z"}
    with pytest.raises(ScopeError):
        check_scope(ForallIn("x", Var("y"), ExistsIn("x", Var("y"), FALSE)))
    with pytest.raises(ScopeError):
        check_scope(ForallIn("x", Var("x"), FALSE))


def test_substitute_respects_binding():
    one = check_name(S, 1)
    f = And(Mem(Var("x"), Var("y")), ForallIn("x", Var("y"), Eq(Var("x"), Var("x"))))
    g = substitute(f, "x", one)
    assert free_vars(g) == {"y"}
    assert g.right.body == Eq(Var("x"), Var("x"))


def test_parse_examples():
    assert parse_name("ord:2", S) is check_name(S, 2)
    assert parse_name("{(ord:0, u)}", S).entries == ((empty(S), S.index("u")),)
    with pytest.raises(ParseError, match="unknown truth-value label 'w'") as e:
        parse_name("{(ord:0, w)}", S)
    assert e.value.line == 1 and e.value.col == 10


def test_parse_error_positions():
    with pytest.raises(ParseError) as e:
        parse_formula("all x in ord:2 .\n  mem(x, )", S)
    assert (e.value.line, e.value.col) == (2, 10)
    with pytest.raises(ParseError, match="expected 'in' or 'sub'"):
        parse_formula("all x of ord:1 . false", S)
    with pytest.raises(ParseError):
        parse_formula("eq(ord:0, ord:0) trailing", S)
    with pytest.raises(ParseError, match="unexpected character"):
        parse_formula("eq(ord:0; ord:0)", S)


def test_parse_format_round_trip():
    texts = [
        "eq(ord:0, ord:1)",
        "all x in ord:3 . ex y sub x . or(mem(y, x), not(sub(x, y)))",
        "imp(and(true, false), mem({(ord:0, u), (ord:1, top)}, z))",
    ]
    for t in texts:
        f = parse_formula(t, S)
        assert parse_formula(format_formula(f), S) == f
    assert format_name(parse_name("{(ord:0, u), ord:1}", S)) == "{(ord:0, u), (ord:1, top)}"


# -- oracle agreement --------------------------------------------------------------

def _random_formula(rng, consts, scope, depth):
    """A well-scoped formula whose atoms mention the variables in ``scope``."""
    terms = [Var(v) for v in scope] + [Const(c) for c in consts]
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.1:
            return FALSE
        k = rng.choice([Eq, Mem, Sub])
        return k(rng.choice(terms), rng.choice(terms))
    r = rng.random()
    if r < 0.4:
        k = rng.choice([And, Or, Implies])
        return k(_random_formula(rng, consts, scope, depth - 1),
                 _random_formula(rng, consts, scope, depth - 1))
    v = f"v{len(scope)}"
    k = rng.choice([ForallIn, ExistsIn, ForallSubset, ExistsSubset])
    return k(v, rng.choice(terms), _random_formula(rng, consts, scope + [v], depth - 1))


@pytest.mark.parametrize("alg", ["bool2", "sierpinski"])
def test_random_formulas_match_brute_force(alg):
    h = get_algebra(alg)
    ctx = Context(h)
    universe = raw_names(h, 2)
    consts = [check_name(h, 0), check_name(h, 1)]
    if alg == "sierpinski":
        consts.append(parse_name("{(ord:0, u)}", h))
    rng = random.Random(7)
    # closed formulas over rank <= 1 bounds, so subset witnesses live in the rank <= 2 universe
    seen = set()
    for _ in range(300):
        f = _random_formula(rng, consts, [], 4)
        check_scope(f)
        got = evaluate(f, {}, ctx)
        assert got.index == naive_eval(f, {}, h, universe), format_formula(f)
        seen.add(got.index)
    assert len(seen) > 1


def test_propositional_tautologies_hold():
    h = get_algebra("diamond")
    ctx = Context(h)
    from plumpwork import gen
    xs = gen.names_upto(ctx, 1)
    atoms = [Mem(Const(a), Const(b)) for a in xs for b in xs][:6]
    for p in atoms:
        for q in atoms:
            assert evaluate(Implies(And(p, q), p), ctx=ctx).is_top
            assert evaluate(Implies(p, Or(p, q)), ctx=ctx).is_top
            assert evaluate(Implies(p, Not(Not(p))), ctx=ctx).is_top
            assert evaluate(Implies(And(p, Not(p)), FALSE), ctx=ctx).is_top
            assert evaluate(TRUE, ctx=ctx).is_top


def test_plord_matrix_has_no_free_variables_besides_alpha():
    assert free_vars(plord_matrix()) == {"alpha"}
    check_scope(plord_matrix())
