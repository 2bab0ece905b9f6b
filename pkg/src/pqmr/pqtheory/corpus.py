"""Exhaustive enumeration of small multirings up to isomorphism.

For carrier size n >= 2 we may take zero = 0 and one = 1 (they differ, as
a = a*1 = a*0 = 0 otherwise). Multiplication tables are commutative monoids
with 0 absorbing. The addition relation {(a, b, c) : c in a + b} is closed
under the three involutions given by commutativity and the two halves of
reversibility, so it is a union of orbits of the group they generate; the
orbits touching 0 are fixed by the identity axiom and only the remaining
orbits are chosen freely.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product as cartesian
from typing import Iterator

from ..constructions import find_isomorphism
from ..core import FiniteMultiring, UsageError, check_multiring

EXHAUSTIVE_LIMIT = 3


@dataclass(frozen=True)
class CorpusSpec:
    max_size: int = 3
    min_size: int = 1
    propagate: bool = True
    sampled: bool = False
    samples: int = 5000
    seed: int = 0


def _labels(n: int) -> list[str]:
    return ["0", "1", "a", "b", "c", "d", "e", "f"][:n] if n > 1 else ["0"]


def zero_ring() -> FiniteMultiring:
    return FiniteMultiring.from_tables("zero-ring", ["0"], [[{0}]], [0], [[0]], 0, 0)


@lru_cache(maxsize=None)
def monoid_tables(n: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Commutative associative tables with identity 1 and absorbing 0."""
    free = [(x, y) for x in range(2, n) for y in range(x, n)]
    out = []
    for values in cartesian(range(n), repeat=len(free)):
        t = [[0] * n for _ in range(n)]
        for x in range(n):
            t[1][x] = t[x][1] = x
        for (x, y), val in zip(free, values):
            t[x][y] = t[y][x] = val
        if all(t[t[x][y]][z] == t[x][t[y][z]] for x, y, z in cartesian(range(n), repeat=3)):
            out.append(tuple(tuple(r) for r in t))
    return tuple(out)


def involutions(n: int) -> Iterator[tuple[int, ...]]:
    """Involutions of 0..n-1 fixing 0."""
    for rest in permutations(range(1, n)):
        f = (0, *rest)
        if all(f[f[x]] == x for x in range(n)):
            yield f


def triple_orbits(n: int, neg: tuple[int, ...]):
    """(forced_in, free_orbits) for the addition relation, or None if the
    identity axiom is unsatisfiable with this negation."""
    seen: set = set()
    forced: set = set()
    free: list[list[tuple[int, int, int]]] = []
    for start in cartesian(range(n), repeat=3):
        if start in seen:
            continue
        orbit, stack = [], [start]
        seen.add(start)
        while stack:
            x, y, z = stack.pop()
            orbit.append((x, y, z))
            for g in ((y, x, z), (z, neg[y], x), (neg[x], z, y)):
                if g not in seen:
                    seen.add(g)
                    stack.append(g)
        fixed = {(z == y) if x == 0 else (z == x) for x, y, z in orbit if x == 0 or y == 0}
        if len(fixed) > 1:
            return None
        if fixed:
            if fixed.pop():
                forced.update(orbit)
        else:
            free.append(sorted(orbit))
    return forced, free


def _add_table(n: int, triples) -> list[list[set[int]]] | None:
    add = [[set() for _ in range(n)] for _ in range(n)]
    for x, y, z in triples:
        add[x][y].add(z)
    if any(not c for row in add for c in row):
        return None
    return add


def _quick_ok(n: int, add, mul) -> bool:
    """Associativity and weak distributivity (the laws not built in)."""
    R = range(n)
    for x, y, z in cartesian(R, repeat=3):
        left: set[int] = set()
        for w in add[y][z]:
            left |= add[x][w]
        right: set[int] = set()
        for t in add[x][y]:
            right |= add[t][z]
        if left != right:
            return False
    for a, b in cartesian(R, repeat=2):
        for c in add[a][b]:
            for d in R:
                if mul[c][d] not in add[mul[a][d]][mul[b][d]]:
                    return False
    return True


def _canonical_key(n: int, neg, mul, add) -> tuple:
    best = None
    for rest in permutations(range(2, n)):
        p = (0, 1, *rest)
        inv = [0] * n
        for old, new in enumerate(p):
            inv[new] = old
        key = (
            tuple(p[neg[inv[a]]] for a in range(n)),
            tuple(tuple(p[mul[inv[a]][inv[b]]] for b in range(n)) for a in range(n)),
            tuple(tuple(tuple(sorted(p[c] for c in add[inv[a]][inv[b]])) for b in range(n))
                  for a in range(n)),
        )
        if best is None or key < best:
            best = key
    return best


def _candidates_propagated(n: int) -> Iterator[tuple]:
    for neg in involutions(n):
        orbits = triple_orbits(n, neg)
        if orbits is None:
            continue
        forced, free = orbits
        for choice in cartesian((False, True), repeat=len(free)):
            triples = set(forced)
            for pick, orbit in zip(choice, free):
                if pick:
                    triples.update(orbit)
            add = _add_table(n, triples)
            if add is None:
                continue
            for mul in monoid_tables(n):
                yield neg, mul, add


def _candidates_naive(n: int) -> Iterator[tuple]:
    """Only the identity row and commutativity are fixed; any negation with
    neg(0) = 0. Used as an independent oracle for small n."""
    subsets = [frozenset(s) for k in range(1, 1 << n) for s in [{i for i in range(n) if k >> i & 1}]]
    cells = [(x, y) for x in range(1, n) for y in range(x, n)]
    for rest in cartesian(range(n), repeat=n - 1):
        neg = (0, *rest)
        for choice in cartesian(subsets, repeat=len(cells)):
            add = [[set() for _ in range(n)] for _ in range(n)]
            for x in range(n):
                add[0][x] = add[x][0] = {x}
            for (x, y), s in zip(cells, choice):
                add[x][y] = add[y][x] = set(s)
            for mul in monoid_tables(n):
                yield neg, mul, add


def _sampled_candidates(n: int, samples: int, seed: int) -> Iterator[tuple]:
    rng = random.Random(seed)
    options = []
    for neg in involutions(n):
        orbits = triple_orbits(n, neg)
        if orbits is not None:
            options.append((neg, orbits))
    muls = monoid_tables(n)
    for _ in range(samples):
        neg, (forced, free) = rng.choice(options)
        triples = set(forced)
        for orbit in free:
            if rng.random() < 0.5:
                triples.update(orbit)
        add = _add_table(n, triples)
        if add is not None:
            yield neg, rng.choice(muls), add


def enumerate_size(n: int, propagate: bool = True, sampled: bool = False,
                   samples: int = 5000, seed: int = 0) -> list[FiniteMultiring]:
    """All multirings on n elements up to isomorphism, in canonical-key order."""
    if n < 1:
        raise UsageError("carrier size must be positive")
    if n == 1:
        return [zero_ring()]
    if sampled:
        source = _sampled_candidates(n, samples, seed)
    else:
        source = _candidates_propagated(n) if propagate else _candidates_naive(n)
    found: dict[tuple, tuple] = {}
    for neg, mul, add in source:
        if not _quick_ok(n, add, mul):
            continue
        key = _canonical_key(n, neg, mul, add)
        found.setdefault(key, key)
    out = []
    for i, (neg, mul, add) in enumerate(sorted(found)):
        M = FiniteMultiring.from_tables(f"c{n}-{i:03d}", _labels(n), add, neg, mul, 0, 1)
        # every emitted structure is certified by the full checker
        if check_multiring(M).is_multiring:
            out.append(M)
    return [M.renamed(f"c{n}-{i:03d}") for i, M in enumerate(out)]


def enumerate_corpus(spec: CorpusSpec = CorpusSpec()) -> list[FiniteMultiring]:
    if spec.max_size > EXHAUSTIVE_LIMIT and not spec.sampled:
        raise UsageError(
            f"exhaustive enumeration is limited to size {EXHAUSTIVE_LIMIT}; set the sampled flag for larger sizes")
    out: list[FiniteMultiring] = []
    for n in range(spec.min_size, spec.max_size + 1):
        sampled = spec.sampled and n > EXHAUSTIVE_LIMIT
        out.extend(enumerate_size(n, spec.propagate, sampled, spec.samples, spec.seed))
    return out


def pairwise_non_isomorphic(structures: list[FiniteMultiring]) -> bool:
    for i, A in enumerate(structures):
        for B in structures[i + 1:]:
            if A.n == B.n and find_isomorphism(A, B) is not None:
                return False
    return True


def corpus_manifest(spec: CorpusSpec, structures: list[FiniteMultiring]) -> dict:
    counts: dict[str, int] = {}
    for M in structures:
        counts[str(M.n)] = counts.get(str(M.n), 0) + 1
    return {
        "kind": "corpus",
        "max_size": spec.max_size,
        "min_size": spec.min_size,
        "exhaustive": not (spec.sampled and spec.max_size > EXHAUSTIVE_LIMIT),
        "sampled": {"samples": spec.samples, "seed": spec.seed} if spec.sampled else None,
        "counts": counts,
        "total": len(structures),
        "structures": [M.name for M in structures],
    }
