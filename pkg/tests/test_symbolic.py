"""Term language, valuation completeness, and the symbolic identities."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from anodyne.lattice import make_boolean, make_chain
from anodyne.symbolic import (
    BOT,
    Join,
    Meet,
    OrderContext,
    TOP,
    TermSyntaxError,
    UndeclaredVariableError,
    Var,
    decide_equal,
    eval_term,
    monotone_valuations,
    parse_term,
    print_term,
    subst,
    term_vars,
    verify_retract_identity_symbolic,
)


def test_parse_precedence_and_parens():
    assert parse_term(r"x /\ y \/ z") == Join(Meet(Var("x"), Var("y")), Var("z"))
    assert parse_term(r"x /\ (y \/ z)") == Meet(Var("x"), Join(Var("y"), Var("z")))
    assert parse_term("1") == TOP
    assert parse_term("0") == BOT
    assert parse_term("  x_1 ") == Var("x_1")


def test_print_is_minimal_and_reparses():
    for src in (r"x /\ y \/ z", r"x /\ (y \/ z)", r"(x \/ y) /\ 1", "0"):
        t = parse_term(src)
        assert parse_term(print_term(t)) == t
    assert print_term(Join(Meet(Var("x"), Var("y")), Var("z"))) == r"x /\ y \/ z"


def test_parse_errors():
    for bad in (r"x /\ ", "", "x y", "(x", r"x \/ \/ y", "x?"):
        with pytest.raises(TermSyntaxError):
            parse_term(bad)


_terms = st.deferred(
    lambda: st.one_of(
        st.sampled_from([Var("x"), Var("y"), Var("z"), TOP, BOT]),
        st.builds(Meet, _terms, _terms),
        st.builds(Join, _terms, _terms),
    )
)


@given(_terms)
def test_print_parse_roundtrip(t):
    assert parse_term(print_term(t)) == t


@given(_terms)
def test_subst_identity_and_vars(t):
    names = term_vars(t)
    assert set(names) <= {"x", "y", "z"}
    assert subst(t, {v: Var(v) for v in names}) == t


@given(_terms, st.data())
def test_eval_matches_chain_arithmetic(t, data):
    lat = make_chain(3)
    assignment = {
        v: data.draw(st.integers(0, 2), label=v) for v in term_vars(t)
    }
    got = eval_term(
        t,
        assignment,
        meet=lat.meet_of,
        join=lat.join_of,
        bottom=lat.bottom,
        top=lat.top,
    )
    # over a chain, meet and join are min and max

    def ref(term):
        if isinstance(term, Var):
            return assignment[term.name]
        if term == TOP:
            return 2
        if term == BOT:
            return 0
        sub = (ref(term.left), ref(term.right))
        return min(sub) if isinstance(term, Meet) else max(sub)

    assert got == ref(t)


def test_monotone_valuation_counts_for_chains():
    # a chain of m constrained variables admits exactly m+1 cuts
    for m in range(1, 7):
        variables = [f"x{i}" for i in range(m)]
        constraints = [(variables[i], variables[i + 1]) for i in range(m - 1)]
        vals = monotone_valuations(variables, constraints)
        assert len(vals) == m + 1
        for val in vals:
            assert all(val[h] >= val[l] for h, l in constraints)


def test_monotone_valuations_never_empty():
    # the all-zero valuation satisfies any set of order constraints
    vals = monotone_valuations(["a", "b"], [("a", "b"), ("b", "a")])
    assert {tuple(v.items()) for v in vals} == {
        (("a", 0), ("b", 0)),
        (("a", 1), ("b", 1)),
    }


def test_decide_equal_frozen_counterexample():
    d = decide_equal(Var("x"), Var("y"), OrderContext(("x", "y")))
    assert not d
    assert d.counterexample == (0, {"x": 0, "y": 1})
    assert d.vacuous_cases == ()


def test_decide_equal_uses_constraints():
    ctx = OrderContext(("x", "y"), constraints=(("x", "y"),))
    assert decide_equal(parse_term(r"x \/ y"), Var("x"), ctx)
    assert decide_equal(parse_term(r"x /\ y"), Var("y"), ctx)
    assert not decide_equal(parse_term(r"x /\ y"), Var("x"), ctx)


def test_decide_equal_case_split():
    ctx = OrderContext(
        ("x", "y"),
        cases=((("x", "y"),), (("y", "x"),)),
    )
    # holds in each case separately, not unconditionally
    assert decide_equal(parse_term(r"x \/ y"), parse_term(r"(x \/ y) /\ 1"), ctx)
    d = decide_equal(parse_term(r"x \/ y"), Var("x"), ctx)
    assert not d and d.counterexample[0] == 1


def test_decide_equal_rejects_undeclared_variables():
    with pytest.raises(UndeclaredVariableError):
        decide_equal(Var("w"), Var("w"), OrderContext(("x",)))


@given(_terms, _terms)
def test_valuation_completeness_against_concrete_lattices(t1, t2):
    """0/1 verdicts transfer to every concrete test lattice, both ways."""
    names = tuple(sorted(set(term_vars(t1)) | set(term_vars(t2))))
    verdict = decide_equal(t1, t2, OrderContext(names))
    lattices = [make_chain(2), make_chain(3), make_chain(4), make_boolean(2)]
    concrete_equal = True
    for lat in lattices:
        for values in itertools.product(range(lat.size), repeat=len(names)):
            assignment = dict(zip(names, values))
            kw = dict(
                meet=lat.meet_of, join=lat.join_of, bottom=lat.bottom, top=lat.top
            )
            if eval_term(t1, assignment, **kw) != eval_term(t2, assignment, **kw):
                concrete_equal = False
                break
        if not concrete_equal:
            break
    assert bool(verdict) == concrete_equal
    if not verdict:
        # the reported 0/1 valuation falsifies over the two-chain
        _, val = verdict.counterexample
        lat = make_chain(2)
        kw = dict(meet=lat.meet_of, join=lat.join_of, bottom=lat.bottom, top=lat.top)
        assert eval_term(t1, val, **kw) != eval_term(t2, val, **kw)


@pytest.mark.parametrize("n,k", [(2, 1), (3, 1), (3, 2), (5, 3), (12, 6)])
def test_inner_identities_hold(n, k):
    obs = verify_retract_identity_symbolic(n, k)
    assert obs and all(r.ok for r in obs)


@pytest.mark.parametrize(
    "n,k,expected",
    [
        (2, 0, "r_dom-horn-case-y1"),
        (3, 0, "r_dom-horn-case-y1"),
        (2, 2, "r_dom-horn-case-y2"),
        (3, 3, "r_dom-horn-case-y2"),
    ],
)
def test_outer_indices_fail_exactly_as_predicted(n, k, expected):
    obs = verify_retract_identity_symbolic(n, k)
    assert [r.name for r in obs if not r.ok] == [expected]
    failing = next(r for r in obs if not r.ok)
    assert failing.detail


def test_symbolic_bound_enforced_and_adjustable():
    with pytest.raises(ValueError):
        verify_retract_identity_symbolic(13, 6)
    obs = verify_retract_identity_symbolic(13, 6, bound=13)
    assert all(r.ok for r in obs)


def test_symbolic_rejects_bad_indices():
    with pytest.raises(ValueError):
        verify_retract_identity_symbolic(2, 5)
    with pytest.raises(ValueError):
        verify_retract_identity_symbolic(0, 0)
