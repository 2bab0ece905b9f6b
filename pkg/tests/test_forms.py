import pytest
from hypothesis import given, settings, strategies as st

import oracles
from pqmr.core import UsageError, builtin, q2
from pqmr.forms import IsometryContext, classes_manifest
from pqmr.pqtheory import PqPair


def q2_ctx(**kw):
    return IsometryContext(PqPair(q2(), frozenset({1})), **kw)


def f7_ctx(**kw):
    return IsometryContext(PqPair(builtin("fp:7"), frozenset({1, 2, 4})), **kw)


CONTEXTS = {
    "q2": (q2_ctx, 4),
    "fp7-squares": (f7_ctx, 4),
    "zmod4": (lambda **kw: IsometryContext(PqPair(builtin("zmod:4"), frozenset({1})), **kw), 3),
    "zmod6": (lambda **kw: IsometryContext(PqPair(builtin("zmod:6"), frozenset({1})), **kw), 2),
}


def engine_relation(ctx, n):
    ts = ctx.tuples(n)
    return {(s, t) for s in ts for t in ts if ctx.isometric_classes(s, t)}


def test_worked_examples_over_q2():
    ctx = q2_ctx()
    f = ctx.form
    assert ctx.isometry_n(f(["1", "-1", "1"]), f(["1", "1", "-1"]))
    assert not ctx.isometry_n(f(["1", "1", "1"]), f(["1", "1", "-1"]))
    assert not ctx.isometry2(f(["1", "1"]), f(["1", "-1"]))
    assert ctx.isometry2(f(["1", "-1"]), f(["-1", "1"]))


def test_worked_example_over_fp7():
    ctx = f7_ctx()
    assert ctx.isometry2(ctx.form(["1", "1"]), ctx.form(["2", "4"]))
    assert not ctx.isometry2(ctx.form(["1", "1"]), ctx.form(["1", "3"]))


@pytest.mark.parametrize("name", CONTEXTS)
def test_engine_matches_closure_oracle(name):
    make, top = CONTEXTS[name]
    ctx = make()
    T = oracles.Table.of(ctx.Q)
    for n in range(top + 1):
        assert engine_relation(ctx, n) == oracles.closure_isometry(T, n), n


@pytest.mark.parametrize("name", CONTEXTS)
def test_standard_matches_oracle(name):
    make, top = CONTEXTS[name]
    ctx = make()
    T = oracles.Table.of(ctx.Q)
    for n in range(1, top + 1):
        rel = ctx.standard_related(n)
        ours = {(s, t) for s, ts in rel.items() for t in ts}
        assert ours == oracles.standard_isometry(T, n), n


def test_class_counts():
    ctx = q2_ctx()
    assert [len(ctx.witt_classes(n)) for n in range(5)] == [1, 3, 6, 10, 15]
    ctx = f7_ctx()
    assert [len(ctx.witt_classes(n)) for n in range(1, 5)] == [3, 5, 7, 9]


def test_standard_agrees_on_q2():
    ctx = q2_ctx()
    for n in range(1, 5):
        assert ctx.standard_is_transitive(n)
        assert ctx.standard_coincides(n)


@pytest.mark.parametrize("name", CONTEXTS)
def test_equivalence_properties(name):
    make, top = CONTEXTS[name]
    ctx = make()
    for n in range(top + 1):
        ts = ctx.tuples(n)
        rel = {s: {t for t in ts if ctx.isometric_classes(s, t)} for s in ts}
        assert all(s in rel[s] for s in ts)
        assert all(s in rel[t] for s in ts for t in rel[s])
        assert all(rel[t] <= rel[s] for s in ts for t in rel[s])


def test_chain_steps_are_valid():
    ctx = q2_ctx()
    T = oracles.Table.of(ctx.Q)
    lower = oracles.closure_isometry(T, 2)
    for s in ctx.tuples(4):
        for t in ctx.tuples(4):
            steps = ctx.chain(s, t)
            if not ctx.isometric_classes(s, t):
                assert steps is None
                continue
            assert (steps[0].source if steps else s) == s
            assert (steps[-1].target if steps else s) == t
            for step in steps:
                (i, j), (k, l) = [(a - 1, b - 1) for a, b in step.positions]
                u, w = step.source, step.target
                assert oracles.iso2(T, (u[i], u[j]), (w[k], w[l]))
                rest_u = tuple(x for m, x in enumerate(u) if m not in (i, j))
                rest_w = tuple(x for m, x in enumerate(w) if m not in (k, l))
                assert (rest_u, rest_w) in lower


def test_chain_for_worked_example():
    ctx = q2_ctx()
    s = ctx.classes_of(ctx.form(["1", "-1", "1"]))
    t = ctx.classes_of(ctx.form(["1", "1", "-1"]))
    steps = ctx.chain(s, t)
    assert len(steps) == 1 and steps[0].positions is not None


@pytest.mark.parametrize("order", ["reverse", "sorted"])
def test_residual_order_is_immaterial(order):
    for make, top in CONTEXTS.values():
        a, b = make(), make(residual_order=order)
        for n in range(top + 1):
            assert a.witt_classes(n) == b.witt_classes(n)


def test_bad_residual_order():
    with pytest.raises(UsageError):
        q2_ctx(residual_order="random")


def test_limit_is_enforced():
    ctx = q2_ctx(limit=80)
    assert len(ctx.tuples(3)) == 27
    with pytest.raises(UsageError, match="exceeds the limit"):
        ctx.witt_classes(4)


def test_length_mismatch_and_range():
    ctx = q2_ctx()
    with pytest.raises(UsageError):
        ctx.isometric_classes((1, 1), (1, 1, 1))
    with pytest.raises(UsageError):
        ctx.classes_of([5])
    with pytest.raises(UsageError):
        ctx.isometry2([1], [1])


def test_invalidate_rebuilds():
    ctx = f7_ctx()
    before = ctx.witt_classes(3)
    ctx.invalidate()
    assert not ctx._leader
    assert ctx.witt_classes(3) == before


def test_manifest():
    doc = classes_manifest(q2_ctx(), 2, members=True)
    assert doc["class_count"] == 6 and doc["quotient_size"] == 3
    assert sum(c["members_count"] for c in doc["classes"]) == 9
    assert doc["classes"][0]["representative"] == ["0", "0"]


forms_f7 = st.lists(st.integers(0, 6), min_size=2, max_size=4)


@settings(max_examples=200, deadline=None)
@given(phi=forms_f7, data=st.data())
def test_permutation_invariance(phi, data):
    ctx = _F7
    perm = data.draw(st.permutations(phi))
    assert ctx.isometry_n(phi, perm)


@settings(max_examples=200, deadline=None)
@given(phi=forms_f7, data=st.data())
def test_classwise_substitution(phi, data):
    ctx = _F7
    # scaling any coefficient by a square keeps the class
    k = data.draw(st.integers(0, len(phi) - 1))
    s = data.draw(st.sampled_from([1, 2, 4]))
    psi = list(phi)
    psi[k] = psi[k] * s % 7
    assert ctx.isometry_n(phi, psi)
    # isometric pieces glue
    chi = data.draw(st.lists(st.integers(0, 6), min_size=0, max_size=4 - len(phi)))
    other = data.draw(st.sampled_from([t for t in ctx.tuples(len(phi))
                                       if ctx.isometric_classes(ctx.classes_of(phi), t)]))
    lift = [ctx.quotient.classes[c][0] for c in other]
    assert ctx.isometry_n(list(phi) + chi, lift + chi)


_F7 = f7_ctx()
