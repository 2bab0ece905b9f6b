"""Bounded search for a single-valued ring A and multiplicative S with
q(A, S) isomorphic to a target multiring.

Search space: Z/n for 2 <= n <= bound, then binary products Z/a x Z/b
(2 <= a <= b, a*b <= bound), ordered by size, residue rings first; within a
ring, multiplicative subsets containing 1 by size and then lexicographically.
This is a declared finite slice of "all rings", so exhaustion is not a
negative answer to the general question.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from ..constructions import (
    find_isomorphism, marshall_quotient, product, similarity_classes, structure_invariant,
)
from ..core import FiniteMultiring, builtin
from .checks import check_pq
from .pairs import PqPair, is_pq_pair


def ring_catalog(bound: int) -> list[str]:
    names = []
    for m in range(2, bound + 1):
        names.append(f"zmod:{m}")
        for a in range(2, m + 1):
            b, r = divmod(m, a)
            if r == 0 and a <= b:
                names.append(f"zmod:{a}xzmod:{b}")
    return names


def catalog_ring(name: str) -> FiniteMultiring:
    if "x" in name:
        left, right = name.split("x")
        return product([builtin(left), builtin(right)], name=name)
    return builtin(name)


def multiplicative_subsets(A: FiniteMultiring) -> Iterator[frozenset[int]]:
    others = [x for x in A.elements if x != A.one]
    for k in range(len(others) + 1):
        for extra in combinations(others, k):
            S = frozenset((A.one, *extra))
            if all(A.mul[s][t] in S for s in S for t in S):
                yield S


@dataclass
class SearchResult:
    target: str
    bound: int
    found: bool
    ring: str | None = None
    S: tuple[str, ...] | None = None
    isomorphism: tuple[int, ...] | None = None
    pair_is_pq_pair: bool | None = None
    target_is_pq: bool = False
    rings_tried: list[str] = field(default_factory=list)
    subsets_tried: int = 0
    require_pq_pair: bool = False

    def to_dict(self) -> dict:
        return {
            "kind": "strictification-search",
            "target": self.target,
            "max_ring_size": self.bound,
            "target_is_pq": self.target_is_pq,
            "require_pq_pair": self.require_pq_pair,
            "verdict": "found" if self.found else "exhausted",
            "ring": self.ring,
            "S": list(self.S) if self.S is not None else None,
            "isomorphism": list(self.isomorphism) if self.isomorphism is not None else None,
            "pair_is_pq_pair": self.pair_is_pq_pair,
            "search_space": {
                "rings": self.rings_tried,
                "ring_count": len(self.rings_tried),
                "subsets_tried": self.subsets_tried,
                "catalog": "Z/n and binary products Z/a x Z/b up to the size bound",
            },
        }


def _scan_ring(args) -> tuple[int, tuple | None]:
    """(subsets tried, first hit as (S, isomorphism, is_pq_pair))."""
    name, target, require_pq_pair = args
    A = catalog_ring(name)
    want = structure_invariant(target)
    tried = 0
    for S in multiplicative_subsets(A):
        tried += 1
        if len(similarity_classes(A, S)) != target.n:
            continue
        Q = marshall_quotient(A, S, verify=False).structure
        if structure_invariant(Q) != want:
            continue
        iso = find_isomorphism(Q, target)
        if iso is None:
            continue
        pq = is_pq_pair(PqPair(A, S))
        if require_pq_pair and not pq:
            continue
        return tried, (tuple(A.labels[s] for s in sorted(S)), iso, pq)
    return tried, None


def strictification_search(target: FiniteMultiring, bound: int, *, require_pq_pair: bool = False,
                           threads: int = 1) -> SearchResult:
    result = SearchResult(target.name, bound, False, target_is_pq=check_pq(target).ok,
                          require_pq_pair=require_pq_pair)
    rings = ring_catalog(bound)
    jobs = [(name, target, require_pq_pair) for name in rings]
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(_scan_ring, jobs))
    else:
        outcomes = map(_scan_ring, jobs)
    # merge in catalog order so the answer does not depend on scheduling
    for name, (tried, hit) in zip(rings, outcomes):
        result.rings_tried.append(name)
        result.subsets_tried += tried
        if hit is not None:
            result.found = True
            result.ring = name
            result.S, result.isomorphism, result.pair_is_pq_pair = hit
            break
    return result
