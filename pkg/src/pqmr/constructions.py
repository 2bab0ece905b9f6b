"""Marshall quotients, products, reduced products, morphisms and
isomorphism search for finite multirings."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from typing import Iterable, Sequence

from .core import FiniteMultiring, UsageError
from .report import Report, first, law
from .unionfind import UnionFind


# ------------------------------------------------------------ multiplicative sets

def multiplicative_subset(M: FiniteMultiring, S: Iterable[int]) -> frozenset[int]:
    """Validate S as a multiplicative subset containing one."""
    S = frozenset(S)
    if any(not 0 <= s < M.n for s in S):
        raise UsageError(f"{M.name}: S contains an out-of-range index")
    if M.one not in S:
        raise UsageError(f"{M.name}: S must contain one")
    bad = first((s, t) for s in sorted(S) for t in sorted(S) if M.mul[s][t] not in S)
    if bad:
        raise UsageError(
            f"{M.name}: S is not multiplicative ({M.labels[bad[0]]}*{M.labels[bad[1]]} not in S)"
        )
    return S


def nonzero_squares(M: FiniteMultiring) -> frozenset[int]:
    """{x*x : x != 0} with zero removed."""
    return frozenset(M.mul[x][x] for x in M.elements if x != M.zero) - {M.zero}


def sums_of_squares(M: FiniteMultiring) -> frozenset[int]:
    """Additive closure of the squares of units, with zero removed."""
    acc = {M.mul[u][u] for u in M.units()}
    while True:
        grown = acc | M.set_sum(acc, acc)
        if grown == acc:
            break
        acc = grown
    return frozenset(acc) - {M.zero}


def generated_subset(M: FiniteMultiring, gens: Iterable[int]) -> frozenset[int]:
    """Smallest multiplicative set containing one and ``gens``."""
    acc = {M.one} | set(gens)
    frontier = list(acc)
    while frontier:
        s = frontier.pop()
        for t in list(acc):
            p = M.mul[s][t]
            if p not in acc:
                acc.add(p)
                frontier.append(p)
    return frozenset(acc)


# ------------------------------------------------------------ morphisms

@dataclass(frozen=True)
class MorphismWitness:
    source: FiniteMultiring
    target: FiniteMultiring
    mapping: tuple[int, ...]
    report: Report
    injective: bool
    surjective: bool
    strong: bool
    submultiring: bool

    @property
    def is_morphism(self) -> bool:
        return self.report.ok

    @property
    def is_embedding(self) -> bool:
        return self.is_morphism and self.injective

    @property
    def is_strong_embedding(self) -> bool:
        return self.is_embedding and self.strong

    @property
    def is_submultiring(self) -> bool:
        return self.is_strong_embedding and self.submultiring

    @property
    def classification(self) -> str:
        if not self.is_morphism:
            return "not a morphism"
        if self.is_submultiring:
            return "submultiring"
        if self.is_strong_embedding:
            return "strong embedding"
        if self.is_embedding:
            return "embedding"
        return "morphism"

    def to_dict(self) -> dict:
        return {
            "source": self.source.name,
            "target": self.target.name,
            "mapping": {self.source.labels[a]: self.target.labels[b] for a, b in enumerate(self.mapping)},
            "classification": self.classification,
            "injective": self.injective,
            "surjective": self.surjective,
            "laws": [l.to_dict(self.source.labels) for l in self.report.laws],
        }


def check_morphism(f: Sequence[int], A: FiniteMultiring, B: FiniteMultiring) -> MorphismWitness:
    """Morphism laws i-v plus the embedding taxonomy."""
    f = tuple(f)
    if len(f) != A.n or any(not 0 <= y < B.n for y in f):
        raise UsageError(f"map must send each of the {A.n} elements of {A.name} into {B.name}")
    els = A.elements
    rep = Report(f"{A.name} -> {B.name}: morphism")
    rep.add(law("sums preserved", "M-i", first(
        {"a": a, "b": b, "c": c} for a, b in cartesian(els, repeat=2)
        for c in sorted(A.add[a][b]) if f[c] not in B.add[f[a]][f[b]])))
    rep.add(law("negation preserved", "M-ii", first({"a": a} for a in els if f[A.neg[a]] != B.neg[f[a]])))
    rep.add(law("zero preserved", "M-iii", None if f[A.zero] == B.zero else {}))
    rep.add(law("products preserved", "M-iv", first(
        {"a": a, "b": b} for a, b in cartesian(els, repeat=2) if f[A.mul[a][b]] != B.mul[f[a]][f[b]])))
    rep.add(law("one preserved", "M-v", None if f[A.one] == B.one else {}))

    image = set(f)
    strong = all(
        c in A.add[a][b]
        for a, b in cartesian(els, repeat=2)
        for c in els
        if f[c] in B.add[f[a]][f[b]]
    )
    closed = all(B.add[f[a]][f[b]] <= image for a, b in cartesian(els, repeat=2))
    return MorphismWitness(A, B, f, rep, len(image) == A.n, len(image) == B.n, strong, closed)


# ------------------------------------------------------------ Marshall quotient

@dataclass(frozen=True)
class Quotient:
    structure: FiniteMultiring
    class_of: tuple[int, ...]        # element of the base -> quotient index
    classes: tuple[tuple[int, ...], ...]
    S: frozenset[int]
    projection: MorphismWitness | None = None


def similarity_classes(M: FiniteMultiring, S: frozenset[int]) -> list[list[int]]:
    """Blocks of a ~ b iff a*s == b*t for some s, t in S."""
    orbit = [frozenset(M.mul[a][s] for s in S) for a in M.elements]
    uf = UnionFind(M.elements)
    by_value: dict[int, int] = {}
    for a in M.elements:
        for x in orbit[a]:
            if x in by_value:
                uf.union(by_value[x], a)
            else:
                by_value[x] = a
    return uf.classes()


def marshall_quotient(M: FiniteMultiring, S: Iterable[int], *, verify: bool = True,
                      name: str | None = None) -> Quotient:
    """M/_m S with least-index representatives.

    The sum of classes [a], [b] is {[c] : c*v in a*s + b*t, s, t, v in S},
    read off at the representatives.
    """
    S = multiplicative_subset(M, S)
    blocks = similarity_classes(M, S)
    class_of = [0] * M.n
    for k, block in enumerate(blocks):
        for a in block:
            class_of[a] = k
    reps = [b[0] for b in blocks]
    mul = M.mul
    Ssorted = sorted(S)

    # divisors[x] = {c : c*v == x for some v in S}
    divisors: list[set[int]] = [set() for _ in M.elements]
    for c in M.elements:
        for v in Ssorted:
            divisors[mul[c][v]].add(c)

    add = []
    for a in reps:
        row = []
        aS = {mul[a][s] for s in Ssorted}
        for b in reps:
            bS = {mul[b][t] for t in Ssorted}
            sums = M.set_sum(aS, bS)
            row.append(frozenset(class_of[c] for x in sums for c in divisors[x]))
        add.append(row)

    Q = FiniteMultiring.from_tables(
        name or f"{M.name}/m{{{','.join(M.labels[s] for s in Ssorted)}}}",
        [M.labels[r] for r in reps],
        add,
        [class_of[M.neg[r]] for r in reps],
        [[class_of[mul[a][b]] for b in reps] for a in reps],
        class_of[M.zero],
        class_of[M.one],
    )
    proj = check_morphism(class_of, M, Q) if verify else None
    return Quotient(Q, tuple(class_of), tuple(tuple(b) for b in blocks), S, proj)


def quotient_sum_at(M: FiniteMultiring, S: frozenset[int], a: int, b: int) -> frozenset[int]:
    """Quotient sum evaluated at arbitrary representatives a, b (as base elements
    c whose class is in the sum); used to test representative independence."""
    mul = M.mul
    sums = M.set_sum({mul[a][s] for s in S}, {mul[b][t] for t in S})
    return frozenset(c for c in M.elements if any(mul[c][v] in sums for v in S))


# ------------------------------------------------------------ products

def _tuple_label(parts: Sequence[str]) -> str:
    return "(" + ",".join(parts) + ")"


def product(Ms: Sequence[FiniteMultiring], *, allow_empty: bool = False,
            name: str | None = None) -> FiniteMultiring:
    """Componentwise product; sums are cartesian products of component cells."""
    Ms = list(Ms)
    if not Ms and not allow_empty:
        raise UsageError("empty product requested; pass allow_empty for the one-point structure")
    tuples = list(cartesian(*(M.elements for M in Ms)))
    index = {t: i for i, t in enumerate(tuples)}

    def cell(s, t):
        parts = [M.add[a][b] for M, a, b in zip(Ms, s, t)]
        return frozenset(index[c] for c in cartesian(*parts))

    return FiniteMultiring.from_tables(
        name or "product(" + ",".join(M.name for M in Ms) + ")",
        [_tuple_label([M.labels[a] for M, a in zip(Ms, t)]) for t in tuples],
        [[cell(s, t) for t in tuples] for s in tuples],
        [index[tuple(M.neg[a] for M, a in zip(Ms, t))] for t in tuples],
        [[index[tuple(M.mul[a][b] for M, a, b in zip(Ms, s, t))] for t in tuples] for s in tuples],
        index[tuple(M.zero for M in Ms)],
        index[tuple(M.one for M in Ms)],
    )


def product_tuples(Ms: Sequence[FiniteMultiring]) -> list[tuple[int, ...]]:
    """Index -> component tuple for :func:`product`."""
    return list(cartesian(*(M.elements for M in Ms)))


def reduced_product(Ms: Sequence[FiniteMultiring], J: Iterable[int], *,
                    allow_trivial: bool = False, name: str | None = None) -> FiniteMultiring:
    """Reduced product modulo the principal filter generated by J.

    Classes: a ~ b iff a_i == b_i on J. Sums: [c] in [a]+[b] iff
    c_i in a_i + b_i for every i in J.
    """
    Ms = list(Ms)
    J = sorted(set(J))
    if not Ms:
        raise UsageError("reduced product of an empty family")
    if any(not 0 <= j < len(Ms) for j in J):
        raise UsageError("filter generator J must be a subset of the index set")
    if not J and not allow_trivial:
        raise UsageError("empty J gives the improper filter; pass allow_trivial for it")
    full = product(Ms)
    tuples = product_tuples(Ms)
    key = [tuple(t[j] for j in J) for t in tuples]
    first_with: dict[tuple, int] = {}
    for i, k in enumerate(key):
        first_with.setdefault(k, i)
    reps = sorted(first_with.values())
    cls = {key[r]: n for n, r in enumerate(reps)}

    def cell(r, s):
        a, b = tuples[r], tuples[s]
        out = set()
        for c in reps:
            if all(tuples[c][j] in Ms[j].add[a[j]][b[j]] for j in J):
                out.add(cls[key[c]])
        return frozenset(out)

    R = FiniteMultiring.from_tables(
        name or f"reduced_product({','.join(M.name for M in Ms)};J={J})",
        [_tuple_label([Ms[j].labels[t] for j, t in zip(J, key[r])]) for r in reps],
        [[cell(r, s) for s in reps] for r in reps],
        [cls[key[full.neg[r]]] for r in reps],
        [[cls[key[full.mul[r][s]]] for s in reps] for r in reps],
        cls[key[full.zero]],
        cls[key[full.one]],
    )
    # principal filter: the class -> J-tuple map must be an isomorphism onto the J-product
    if J:
        sub = product([Ms[j] for j in J])
        sub_index = {t: i for i, t in enumerate(product_tuples([Ms[j] for j in J]))}
        f = [sub_index[key[r]] for r in reps]
        if not is_isomorphism(f, R, sub):
            raise AssertionError("reduced product disagrees with the product over J")
    return R


# ------------------------------------------------------------ isomorphism

def element_invariant(M: FiniteMultiring, x: int) -> tuple:
    add, mul = M.add, M.mul
    return (
        x == M.zero,
        x == M.one,
        M.neg[x] == x,
        len(add[x][x]),
        tuple(sorted(len(c) for c in add[x])),
        sum(mul[x][y] == x for y in M.elements),
        sum(mul[x][y] == M.zero for y in M.elements),
        mul[x][x] == x,
        mul[x][x] == M.one,
        M.one in mul[x],
        len(add[x][M.neg[x]]),
        x in add[x][x],
    )


def structure_invariant(M: FiniteMultiring) -> tuple:
    return (M.n, tuple(sorted(element_invariant(M, x) for x in M.elements)))


def is_isomorphism(f: Sequence[int], A: FiniteMultiring, B: FiniteMultiring) -> bool:
    if A.n != B.n or sorted(f) != list(B.elements):
        return False
    if f[A.zero] != B.zero or f[A.one] != B.one:
        return False
    for a in A.elements:
        if f[A.neg[a]] != B.neg[f[a]]:
            return False
        for b in A.elements:
            if f[A.mul[a][b]] != B.mul[f[a]][f[b]]:
                return False
            if frozenset(f[c] for c in A.add[a][b]) != B.add[f[a]][f[b]]:
                return False
    return True


def find_isomorphism(A: FiniteMultiring, B: FiniteMultiring) -> tuple[int, ...] | None:
    """Lexicographically least isomorphism A -> B, or None."""
    if structure_invariant(A) != structure_invariant(B):
        return None
    inv_b = [element_invariant(B, y) for y in B.elements]
    cands = [[y for y in B.elements if inv_b[y] == element_invariant(A, x)] for x in A.elements]
    n = A.n
    f = [-1] * n
    used = [False] * n

    def consistent(x: int) -> bool:
        fx = f[x]
        if f[A.neg[x]] >= 0 and f[A.neg[x]] != B.neg[fx]:
            return False
        for u in range(x + 1):
            fu = f[u]
            p = A.mul[x][u]
            if f[p] >= 0 and f[p] != B.mul[fx][fu]:
                return False
            cell_a, cell_b = A.add[x][u], B.add[fx][fu]
            if len(cell_a) != len(cell_b):
                return False
            for c in cell_a:
                if f[c] >= 0 and f[c] not in cell_b:
                    return False
        # a newly assigned x may be inside earlier cells
        for u in range(x):
            for v in range(u, x):
                if (x in A.add[u][v]) != (fx in B.add[f[u]][f[v]]):
                    return False
        return True

    def search(x: int) -> bool:
        if x == n:
            return is_isomorphism(f, A, B)
        for y in cands[x]:
            if used[y]:
                continue
            f[x], used[y] = y, True
            if consistent(x) and search(x + 1):
                return True
            f[x], used[y] = -1, False
        return False

    return tuple(f) if search(0) else None


def isomorphic(A: FiniteMultiring, B: FiniteMultiring) -> bool:
    return find_isomorphism(A, B) is not None
