import pytest
from hypothesis import given, settings, strategies as st

from pqmr.core import builtin, q2
from pqmr.logic import (
    And, Eq, EvaluationError, Exists, Forall, Implies, InS, InSum, Mul, Neg, Not, One, Or,
    ParseError, THEORIES, Var, Zero, axiom_catalog, counterexample, evaluate, free_vars,
    is_horn_geometric, is_pp, is_sentence, named_axioms, parse, parse_term, to_text,
)
from pqmr.pqtheory import PqPair

x0, x1, x2 = Var(0), Var(1), Var(2)


def test_parse_basic_shapes():
    assert parse("x0 = x1") == Eq(x0, x1)
    assert parse("x2 in x0 + x1") == InSum(x0, x1, x2)
    assert parse("x0 != 0") == Not(Eq(x0, Zero()))
    assert parse("S(x0 * 1)") == InS(Mul(x0, One()))
    assert parse("forall (x0, x1) x0 * x1 = x1 * x0") == Forall((0, 1), Eq(Mul(x0, x1), Mul(x1, x0)))
    assert parse_term("-x0 * x1") == Mul(Neg(x0), x1)
    assert parse_term("x0 * x1 * x2") == Mul(Mul(x0, x1), x2)


def test_connective_precedence():
    phi = parse("x0 = 0 & x1 = 0 | x2 = 0 -> x0 = x1 -> x1 = x2")
    assert isinstance(phi, Implies)
    assert isinstance(phi.premise, Or)
    assert isinstance(phi.premise.parts[0], And)
    assert isinstance(phi.conclusion, Implies)


def test_quantifier_body_extends_right():
    phi = parse("exists (x1) x1 = x0 & x0 = 1")
    assert isinstance(phi, Exists) and isinstance(phi.body, And)
    assert free_vars(phi) == {0}


def test_parenthesised_formula_versus_term():
    assert parse("(x0 * x1) = x0") == Eq(Mul(x0, x1), x0)
    assert parse("(x0 = x1)") == Eq(x0, x1)
    assert parse("~(x0 = x1 & true)") == Not(And((Eq(x0, x1), And(()))))


@pytest.mark.parametrize("text,col", [("x0 = ", 6), ("forall x0 x0 = x0", 8), ("x0 == x1", 5), ("x0 = x1)", 8)])
def test_parse_errors_have_columns(text, col):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert f"col {col}" in str(e.value)
    assert "^" in str(e.value)


terms = st.recursive(
    st.one_of(st.integers(0, 3).map(Var), st.just(Zero()), st.just(One())),
    lambda t: st.one_of(t.map(Neg), st.tuples(t, t).map(lambda p: Mul(*p))),
    max_leaves=4,
)
atoms = st.one_of(
    st.tuples(terms, terms).map(lambda p: Eq(*p)),
    st.tuples(terms, terms, terms).map(lambda p: InSum(*p)),
    terms.map(InS),
)
var_lists = st.lists(st.integers(0, 3), min_size=1, max_size=2, unique=True).map(tuple)
formulas = st.recursive(
    atoms,
    lambda f: st.one_of(
        f.map(Not),
        st.lists(f, min_size=2, max_size=3).map(lambda ps: And(tuple(ps))),
        st.lists(f, min_size=2, max_size=3).map(lambda ps: Or(tuple(ps))),
        st.tuples(f, f).map(lambda p: Implies(*p)),
        st.tuples(var_lists, f).map(lambda p: Exists(*p)),
        st.tuples(var_lists, f).map(lambda p: Forall(*p)),
    ),
    max_leaves=6,
)


@settings(max_examples=400, deadline=None)
@given(formulas)
def test_print_parse_roundtrip(phi):
    assert parse(to_text(phi)) == phi


@settings(max_examples=200, deadline=None)
@given(formulas)
def test_roundtrip_preserves_truth(phi):
    Q = q2()
    env = {i: (i + 1) % 3 for i in free_vars(phi)}
    pair = PqPair(Q, frozenset({1}))
    assert evaluate(pair, parse(to_text(phi)), env) == evaluate(pair, phi, env)


def test_catalog_texts_roundtrip():
    for theory in THEORIES:
        for ax in named_axioms(theory):
            assert parse(to_text(ax.formula)) == ax.formula
            assert is_sentence(ax.formula)


def test_evaluation_basics():
    Q = q2()
    assert evaluate(Q, parse("forall (x0) x0 * x0 * x0 = x0"))
    assert not evaluate(Q, parse("forall (x0) x0 * x0 = x0"))
    assert evaluate(Q, parse("x0 in x0 + x1"), {0: 1, 1: 2})
    assert evaluate(Q, parse("exists (x0) ~(x0 = 0) & x0 * x0 = 1"))


def test_evaluation_errors():
    with pytest.raises(EvaluationError):
        evaluate(q2(), parse("x0 = 0"))
    with pytest.raises(EvaluationError):
        evaluate(q2(), parse("S(1)"))
    with pytest.raises(EvaluationError):
        counterexample(q2(), parse("x0 = 0"))


def test_counterexample_is_lexicographically_first():
    ce = counterexample(builtin("zmod:4"), parse("forall (x0) x0 * x0 * x0 = x0"))
    assert ce == {0: 2}
    ce = counterexample(builtin("zmod:5"), parse("forall (x0, x1) x0 * x1 = x0"))
    assert ce == {0: 1, 1: 0}
    assert counterexample(q2(), parse("forall (x0) x0 * 1 = x0")) is None


def test_pair_predicate():
    P = PqPair(builtin("fp:7"), frozenset({1, 2, 4}))
    assert evaluate(P, parse("forall (x0, x1) S(x0) & S(x1) -> S(x0 * x1)"))
    assert not evaluate(P, parse("S(-1)"))


def test_pp_and_horn_shapes():
    assert is_pp(parse("exists (x1) x1 in x0 + x0 & S(x1)"))
    assert not is_pp(parse("x0 = 0 | x0 = 1"))
    assert not is_pp(parse("~(x0 = 0)"))
    assert is_horn_geometric(parse("forall (x0) S(x0) -> exists (x1) x0 * x1 = 1"))
    assert is_horn_geometric(parse("~(1 = 0)"))
    assert is_horn_geometric(parse("forall (x0) x0 in x0 + 0"))
    assert not is_horn_geometric(parse("forall (x0) ~(x0 = 0) -> exists (x1) x0 * x1 = 1"))
    assert not is_horn_geometric(parse("forall (x0) x0 = 0 | x0 = 1"))
    assert not is_horn_geometric(parse("x0 = 0"))  # not closed


def test_horn_audit_matches_expectations():
    for theory in ("pq", "rr-multifield", "rr-multiring", "pq-pair", "rr-pq-pair", "multiring"):
        assert all(is_horn_geometric(f) for f in axiom_catalog(theory)), theory
    unit_ax = [a for a in named_axioms("multifield") if a.tag == "MF-unit"]
    assert len(unit_ax) == 1 and not is_horn_geometric(unit_ax[0].formula)


def test_unknown_theory():
    with pytest.raises(ValueError):
        named_axioms("groups")
