"""The quotient functor q: pairs -> multirings, the inclusion j: M -> (M, {1}),
and instance-level checks of their preservation properties."""

from __future__ import annotations

from typing import Sequence

from ..constructions import (
    MorphismWitness, Quotient, check_morphism, find_isomorphism, is_isomorphism, marshall_quotient,
    product,
)
from ..core import FiniteMultiring, UsageError, check_multiring
from ..report import Report, law
from .checks import check_pq
from .pairs import PqPair, product_pair


def functor_q(P: PqPair) -> FiniteMultiring:
    return marshall_quotient(P.base, P.S).structure


def functor_q_quotient(P: PqPair) -> Quotient:
    return marshall_quotient(P.base, P.S)


def is_pair_morphism(f: Sequence[int], P: PqPair, Q: PqPair) -> bool:
    return check_morphism(f, P.base, Q.base).is_morphism and all(f[s] in Q.S for s in P.S)


def functor_q_on_morphism(f: Sequence[int], P: PqPair, Q: PqPair) -> MorphismWitness:
    """The induced map [a]_S -> [f(a)]_T, verified to be a multiring morphism."""
    if not is_pair_morphism(f, P, Q):
        raise UsageError(f"map is not a pair morphism {P.name} -> {Q.name}")
    qp, qq = functor_q_quotient(P), functor_q_quotient(Q)
    induced = [-1] * qp.structure.n
    for a in P.base.elements:
        k, image = qp.class_of[a], qq.class_of[f[a]]
        if induced[k] not in (-1, image):
            raise AssertionError("induced map is not well defined on classes")
        induced[k] = image
    return check_morphism(induced, qp.structure, qq.structure)


def functor_j(M: FiniteMultiring) -> PqPair:
    if not check_multiring(M).is_multiring:
        raise UsageError(f"{M.name} is not a multiring")
    if not check_pq(M).ok:
        raise UsageError(f"{M.name} is not a pq-multiring")
    return PqPair(M, frozenset({M.one}))


def check_qj_identity(M: FiniteMultiring) -> bool:
    return find_isomorphism(functor_q(functor_j(M)), M) is not None


def functor_preservation_check(functor: str, construction: str, items: Sequence, maps=None) -> Report:
    """Preservation of finite products or eventually-constant chains.

    ``items`` are pairs (for q) or multirings (for j). For chains, ``maps[i]``
    is the carrier map items[i] -> items[i+1]; every map must be a strong
    embedding (pair morphism for q) and the last one a bijection, so the
    colimit is the last item.
    """
    if functor not in ("q", "j") or construction not in ("product", "chain"):
        raise UsageError("functor must be q|j and construction product|chain")
    rep = Report(f"{functor} preserves {construction}")
    if construction == "product":
        if functor == "q":
            lhs = functor_q(product_pair(items))
            rhs = product([functor_q(p) for p in items])
            rep.add(law("q(prod) ~ prod(q)", "functor-q-product",
                        None if find_isomorphism(lhs, rhs) is not None else {}))
        else:
            lhs = functor_j(product(items))
            rhs = product_pair([functor_j(M) for M in items])
            rep.add(law("j(prod) = prod(j)", "functor-j-product",
                        None if (lhs.base == rhs.base and lhs.S == rhs.S) else {}))
        return rep

    maps = list(maps or [])
    if len(maps) != len(items) - 1 or not maps:
        raise UsageError("a chain of k objects needs k-1 maps, k >= 2")
    bases = [p.base if functor == "q" else p for p in items]
    for i, f in enumerate(maps):
        w = check_morphism(f, bases[i], bases[i + 1])
        ok = w.is_strong_embedding
        if functor == "q":
            ok = ok and all(f[s] in items[i + 1].S for s in items[i].S)
        rep.add(law(f"link {i} is a strong embedding", "chain-link", None if ok else {"link": i}))
    tail_ok = is_isomorphism(maps[-1], bases[-2], bases[-1])
    rep.add(law("chain is eventually constant", "chain-constant", None if tail_ok else {}))
    if functor == "q":
        images = [functor_q_on_morphism(f, items[i], items[i + 1]) for i, f in enumerate(maps)]
        last = images[-1]
        rep.add(law("q(chain) is eventually constant", "functor-q-chain",
                    None if is_isomorphism(last.mapping, last.source, last.target) else {}))
    else:
        pairs = [functor_j(M) for M in items]
        ok = all(is_pair_morphism(f, pairs[i], pairs[i + 1]) for i, f in enumerate(maps))
        rep.add(law("j(chain) is a chain of pair morphisms with constant tail", "functor-j-chain",
                    None if ok and tail_ok else {}))
    return rep
