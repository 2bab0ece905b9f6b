"""Acceptance criteria, one test each, at the stated tolerances.

Every test records a line "criterion N: PASS|FAIL ..." that is printed as
it runs and repeated in the terminal summary.
"""

import json
import os
import random
import subprocess
import sys
import time

import oracles
from pqmr.constructions import (
    find_isomorphism, marshall_quotient, nonzero_squares, product, reduced_product,
    similarity_classes,
)
from pqmr.core import builtin, check_multiring, q2, to_json
from pqmr.forms import IsometryContext
from pqmr.logic import axiom_catalog, is_horn_geometric, named_axioms
from pqmr.pqtheory import (
    ComputablePair, CorpusSpec, PqPair, check_integer_pair, check_pq,
    check_pqt_rr_implies_pqh, check_pre_special, check_qj_identity, check_rr_multifield,
    check_rr_multiring, cross_check, enumerate_corpus, functor_q_on_morphism,
    is_pq_pair, product_pair, window_quotient,
)
from pqmr.pqtheory.integers import compare_with
from pqmr.pqtheory.search import catalog_ring, multiplicative_subsets, ring_catalog
from pqmr.report import Verdict


def record(log, n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    log.append(line)
    print(line)
    assert ok, line


# ---------------------------------------------------------------- 1

def test_criterion_1_q2(acceptance_log):
    start = time.perf_counter()
    Q = q2()
    kinds = check_multiring(Q)
    checks = {
        "multifield": kinds.is_multifield,
        "pq": check_pq(Q).ok,
        "rr-multifield": check_rr_multifield(Q).ok,
        "pre-special": check_pre_special(Q).ok,
    }
    agree = {t: cross_check(Q, t).agree for t in ("multiring", "multifield", "pq", "rr-multifield",
                                                  "rr-multiring", "pre-special")}
    elapsed = time.perf_counter() - start
    ok = all(checks.values()) and all(agree.values()) and elapsed < 1.0
    record(acceptance_log, 1, ok, f"checks={checks} cross-check={agree} time={elapsed:.3f}s (< 1 s)")


# ---------------------------------------------------------------- 2

BUILTINS = ["q2"] + [f"fp:{p}" for p in (2, 3, 5, 7, 11, 13)] + [f"zmod:{n}" for n in range(2, 13)]


def _distributive_exceptions(M):
    bad = 0
    for a in M.elements:
        for b in M.elements:
            for d in M.elements:
                lhs = {M.mul[c][d] for c in M.add[a][b]}
                if lhs != set(M.add[M.mul[a][d]][M.mul[b][d]]):
                    bad += 1
    return bad


def test_criterion_2_multifield_distributivity(acceptance_log, corpus):
    fields = [M for M in [builtin(n) for n in BUILTINS] + list(corpus) if check_multiring(M).is_multifield]
    exceptions = {M.name: _distributive_exceptions(M) for M in fields}
    total = sum(exceptions.values())
    record(acceptance_log, 2, total == 0,
           f"{len(fields)} multifields, {total} exceptions to (a+b)d = ad+bd")


# ---------------------------------------------------------------- 3

PRIMES = (3, 5, 7, 11, 13)


def test_criterion_3_quotient_sanity(acceptance_log, corpus):
    start = time.perf_counter()
    identity = all(find_isomorphism(marshall_quotient(M, {M.one}).structure, M) is not None
                   for M in corpus)
    problems = []
    witnesses = {}
    for p in PRIMES:
        F = builtin(f"fp:{p}")
        Q = marshall_quotient(F, nonzero_squares(F)).structure
        pq = check_pq(Q)
        rr = check_rr_multifield(Q)
        for tag in ("PQt", "PQh"):
            if not pq[tag].holds:
                problems.append(f"p={p} {tag} fails at {pq[tag].witness}")
        if rr.ok:
            problems.append(f"p={p} rr-multifield unexpectedly holds")
        else:
            witnesses[p] = rr.failures[0].witness
    elapsed = time.perf_counter() - start
    ok = identity and not problems and all(w is not None for w in witnesses.values()) and elapsed < 10
    detail = (f"quotient by one is identity on {len(corpus)} structures: {identity}; "
              f"rr-multifield witnesses {witnesses}; problems {problems}; time={elapsed:.2f}s")
    record(acceptance_log, 3, ok, detail)


# ---------------------------------------------------------------- 4

def test_criterion_4_integer_pair(acceptance_log):
    P = ComputablePair("sums-of-squares", 100)
    wq = window_quotient(P, [-1, 0, 1])
    mapping = {k: q2().index(wq.label(k)) for k in range(len(wq.reps))}
    cmp = compare_with(wq, q2(), mapping)
    rep = check_integer_pair(P, list(range(-10, 11)), units_mode="nonzero")
    verdicts = {law.tag: law.verdict.value for law in rep.laws}
    ok = (not cmp["contradictions"] and not cmp["missing"] and cmp["confirmed"] > 0
          and all(v == Verdict.YES.value for v in verdicts.values()))
    record(acceptance_log, 4, ok,
           f"cells confirmed={cmp['confirmed']} consistent-no={cmp['consistent_no']} "
           f"undecided={cmp['undecided']} contradictions={len(cmp['contradictions'])}; laws {verdicts}")


# ---------------------------------------------------------------- 5

def test_criterion_5_proposition(acceptance_log):
    start = time.perf_counter()
    structures = enumerate_corpus(CorpusSpec(max_size=3))
    generation = time.perf_counter() - start
    rep = check_pqt_rr_implies_pqh(structures)
    ok = rep.ok and rep.examined == len(structures) and generation < 600
    record(acceptance_log, 5, ok,
           f"{rep.examined} multirings, {len(rep.hypothesis_holds)} satisfy the hypothesis, "
           f"{len(rep.counterexamples)} counterexamples; generation {generation:.2f}s (< 600 s)")


# ---------------------------------------------------------------- 6

def test_criterion_6_closure(acceptance_log, corpus):
    rng = random.Random(2024)
    pq = [M for M in corpus if check_pq(M).ok]
    rr = [M for M in corpus if check_rr_multiring(M).ok]
    failures = []
    for k in range(20):
        A, B = rng.choice(pq), rng.choice(pq)
        J = rng.choice([[0], [1], [0, 1]])
        if not check_pq(product([A, B])).ok:
            failures.append(("pq product", A.name, B.name))
        if not check_pq(reduced_product([A, B], J)).ok:
            failures.append(("pq reduced", A.name, B.name, J))
        C, D = rng.choice(rr), rng.choice(rr)
        if not check_rr_multiring(product([C, D])).ok:
            failures.append(("rr product", C.name, D.name))
        if not check_rr_multiring(reduced_product([C, D], J)).ok:
            failures.append(("rr reduced", C.name, D.name, J))
    record(acceptance_log, 6, not failures,
           f"20 random pairs ({len(pq)} pq, {len(rr)} rr candidates), failures {failures}")


# ---------------------------------------------------------------- 7

def _pair(name, S):
    return PqPair(catalog_ring(name), frozenset(S))


def _morphism_instances():
    q2p = PqPair(q2(), frozenset({1}))
    q2sq = product_pair([q2p, q2p])
    f7, f7all = _pair("zmod:7", {1, 2, 4}), _pair("zmod:7", range(1, 7))
    z6a, z6b = _pair("zmod:6", {1, 2, 4}), _pair("zmod:6", {1, 2, 4, 5})
    z3 = _pair("zmod:3", {1, 2})
    z11 = _pair("zmod:11", {1, 3, 4, 5, 9})
    z10, z5 = _pair("zmod:10", {1, 2, 4, 6, 8}), _pair("zmod:5", {1, 2, 3, 4})
    z12, z4 = _pair("zmod:12", {1, 4, 8}), _pair("zmod:4", {0, 1})
    z33 = _pair("zmod:3xzmod:3", {1, 2, 4})
    return [
        ("id zmod:7", list(range(7)), f7, f7),
        ("id zmod:11", list(range(11)), z11, z11),
        ("zmod:6 -> zmod:3", [x % 3 for x in range(6)], z6a, z3),
        ("zmod:6 -> zmod:3 (wider S)", [x % 3 for x in range(6)], z6b, z3),
        ("zmod:6 S inclusion", list(range(6)), z6a, z6b),
        ("zmod:10 -> zmod:5", [x % 5 for x in range(10)], z10, z5),
        ("zmod:12 -> zmod:3", [x % 3 for x in range(12)], z12, z3),
        ("zmod:12 -> zmod:4", [x % 4 for x in range(12)], z12, z4),
        ("zmod:3xzmod:3 -> zmod:3", [x % 3 for x in range(9)], z33, z3),
        ("q2 x q2 -> q2", [x // 3 for x in range(9)], q2sq, q2p),
        ("zmod:7 S inclusion", list(range(7)), f7, f7all),
    ]


def test_criterion_7_functors(acceptance_log, corpus):
    pq = [M for M in corpus if check_pq(M).ok]
    qj = {M.name: check_qj_identity(M) for M in pq}
    results = {}
    for name, f, P, Q in _morphism_instances():
        if not (is_pq_pair(P) and is_pq_pair(Q)):
            results[name] = "not a pq-pair"
            continue
        results[name] = functor_q_on_morphism(f, P, Q).is_morphism
    ok = all(qj.values()) and len(results) >= 10 and all(v is True for v in results.values())
    record(acceptance_log, 7, ok,
           f"q.j ~ id on {sum(qj.values())}/{len(qj)} pq corpus structures; "
           f"induced morphisms verified {sum(v is True for v in results.values())}/{len(results)}")


# ---------------------------------------------------------------- 8

def _contexts(corpus):
    out = [PqPair(M, frozenset({M.one})) for M in corpus]
    for name in ring_catalog(12):
        A = catalog_ring(name)
        for S in multiplicative_subsets(A):
            if len(similarity_classes(A, S)) <= 3:
                out.append(PqPair(A, S))
    return out


def _table_key(Q):
    return (tuple(tuple(sorted(c)) for row in Q.add for c in row), tuple(map(tuple, Q.mul)),
            tuple(Q.neg), Q.zero, Q.one)


def test_criterion_8_isometry_engine(acceptance_log, corpus):
    start = time.perf_counter()
    contexts = [IsometryContext(P) for P in _contexts(corpus)]
    assert all(ctx.Q.n <= 3 for ctx in contexts)
    bad_equivalence = []
    standard_checked = standard_mismatch = 0
    for ctx in contexts:
        for n in range(5):
            ts = ctx.tuples(n)
            rel = {s: frozenset(t for t in ts if ctx.isometric_classes(s, t)) for s in ts}
            if not (all(s in rel[s] for s in ts)
                    and all(s in rel[t] for s in ts for t in rel[s])
                    and all(rel[t] <= rel[s] for s in ts for t in rel[s])):
                bad_equivalence.append((ctx.pair.name, n))
            if n >= 1 and ctx.standard_is_transitive(n):
                standard_checked += 1
                if not ctx.standard_coincides(n):
                    standard_mismatch += 1

    # independent oracle on each distinct quotient table
    oracle_mismatch = []
    seen = {}
    for ctx in contexts:
        seen.setdefault(_table_key(ctx.Q), ctx)
    for ctx in seen.values():
        T = oracles.Table.of(ctx.Q)
        for n in range(5):
            ts = ctx.tuples(n)
            ours = {(s, t) for s in ts for t in ts if ctx.isometric_classes(s, t)}
            if ours != oracles.closure_isometry(T, n):
                oracle_mismatch.append((ctx.pair.name, n))

    # classwise substitution on randomized trials
    rng = random.Random(8)
    substitution_failures = 0
    for _ in range(1000):
        ctx = rng.choice(contexts)
        A, q = ctx.pair.base, ctx.quotient
        n = rng.randint(1, 4)
        phi = [rng.randrange(A.n) for _ in range(n)]
        # entrywise: any member of the same class
        same = [rng.choice(q.classes[q.class_of[a]]) for a in phi]
        ok = ctx.isometry_n(phi, same)
        # blockwise: an isometric prefix glued to a common tail
        k = rng.randint(1, n)
        head = ctx.classes_of(phi[:k])
        block = [t for t in ctx.tuples(k) if ctx.isometric_classes(head, t)]
        other = [rng.choice(q.classes[c]) for c in rng.choice(block)]
        ok = ok and ctx.isometry_n(phi, other + phi[k:])
        substitution_failures += not ok

    elapsed = time.perf_counter() - start
    ok = (not bad_equivalence and not oracle_mismatch and not standard_mismatch
          and not substitution_failures and elapsed < 300)
    record(acceptance_log, 8, ok,
           f"{len(contexts)} contexts, n <= 4: equivalence failures {len(bad_equivalence)}; "
           f"oracle mismatches {len(oracle_mismatch)} over {len(seen)} distinct quotients; "
           f"standard coincides on {standard_checked - standard_mismatch}/{standard_checked} "
           f"transitive cases; substitution failures {substitution_failures}/1000; "
           f"time={elapsed:.1f}s (< 300 s)")


# ---------------------------------------------------------------- 9

def test_criterion_9_horn_audit(acceptance_log):
    theories = ("pq", "rr-multifield", "rr-multiring", "pq-pair", "rr-pq-pair")
    non_horn = {t: [a.tag for a in named_axioms(t) if not is_horn_geometric(a.formula)] for t in theories}
    counts = {t: len(axiom_catalog(t)) for t in theories}
    unit = [a for a in named_axioms("multifield") if a.tag == "MF-unit"]
    unit_non_horn = len(unit) == 1 and not is_horn_geometric(unit[0].formula)
    ok = not any(non_horn.values()) and unit_non_horn
    record(acceptance_log, 9, ok,
           f"sentences audited {counts}; non-Horn {non_horn}; multifield unit axiom non-Horn: {unit_non_horn}")


# ---------------------------------------------------------------- 10

def _cli_suite(tmp):
    files = {
        "q2": q2(), "zmod4": builtin("zmod:4"), "fp7": builtin("fp:7"),
        "qf7": marshall_quotient(builtin("fp:7"), {1, 2, 4}).structure,
    }
    for name, M in files.items():
        (tmp / f"{name}.json").write_text(to_json(M))
    (tmp / "pairZ.json").write_text(json.dumps({"ring": "Z", "S": "sums-of-squares"}))
    pair = json.loads(to_json(q2()))
    pair["S"] = [1]
    (tmp / "pairq2.json").write_text(json.dumps(pair))
    p = lambda name: str(tmp / f"{name}.json")  # noqa: E731
    return [
        ["check", p("q2"), "--theory", "rr-multifield"],
        ["check", p("zmod4"), "--theory", "pq"],
        ["check", "q2", "--theory", "pre-special"],
        ["check", p("pairZ"), "--theory", "pq-pair", "--units-mode", "nonzero"],
        ["check", p("pairq2"), "--theory", "preorder"],
        ["check", p("pairq2"), "--theory", "rr-pq-pair"],
        ["quotient", p("fp7"), "--s", "1,2,4"],
        ["quotient", p("pairZ"), "--window", "-2..2"],
        ["isometry", "q2", "--lhs", "1,-1,1", "--rhs", "1,1,-1"],
        ["isometry", "q2", "--lhs", "1,1,1", "--rhs", "1,1,-1", "--standard"],
        ["witt-classes", "q2", "--n", "3", "--members"],
        ["product", "q2", "zmod:3"],
        ["reduced-product", "q2", "zmod:3", "fp:5", "--j", "0,2"],
        ["iso", p("q2"), "q2"],
        ["morphism", "zmod:6", "zmod:3", "--map", "0,1,2,0,1,2"],
        ["search", "--target", p("qf7"), "--max-ring-size", "7"],
        ["search", "--target", "q2", "--max-ring-size", "8", "--threads", "2"],
        ["corpus", "--max-size", "3", "--proposition"],
        ["corpus", "--min-size", "4", "--max-size", "4", "--sampled", "--samples", "200"],
        ["eval", "q2", "forall (x0) x0 * x0 * x0 = x0"],
    ]


def _run_suite(commands, hashseed):
    env = dict(os.environ, PYTHONHASHSEED=str(hashseed))
    out = []
    for argv in commands:
        proc = subprocess.run([sys.executable, "-m", "pqmr.cli", "--json", *argv],
                              capture_output=True, env=env, timeout=300)
        out.append((proc.returncode, proc.stdout))
    return out


def test_criterion_10_determinism(acceptance_log, tmp_path):
    commands = _cli_suite(tmp_path)
    first = _run_suite(commands, 1)
    second = _run_suite(commands, 2)
    differing = [" ".join(c[:2]) for c, a, b in zip(commands, first, second) if a != b]
    usage_errors = [" ".join(c[:2]) for c, (code, _) in zip(commands, first) if code == 2]
    ok = not differing and not usage_errors and all(out for _, out in first)
    record(acceptance_log, 10, ok,
           f"{len(commands)} commands run twice under different hash seeds; "
           f"differing outputs {differing}; usage errors {usage_errors}")
