"""Finite pq-pairs (A, S): axioms, the preorder criterion, products and the
pair file format."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as cartesian
from typing import Any, Iterable, Mapping, Sequence

from ..constructions import multiplicative_subset, product, product_tuples
from ..core import FiniteMultiring, FormatError, UsageError, from_dict, loads_document, to_dict
from ..report import Report, first, law

PAIR_LAWS = ("pPQu", "pPQm", "pPQt", "pPQh")
RR_LAWS = ("pPQrr-i", "pPQrr-ii")


@dataclass(frozen=True)
class PqPair:
    """A finite multiring with a distinguished subset S.

    Unity and multiplicativity of S are enforced unless ``validate`` is
    false (used when a file is checked rather than trusted).
    """

    base: FiniteMultiring
    S: frozenset[int]
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        S = frozenset(self.S)
        if self.validate:
            S = multiplicative_subset(self.base, S)
        elif any(not 0 <= s < self.base.n for s in S):
            raise UsageError("S contains an out-of-range index")
        object.__setattr__(self, "S", S)

    @property
    def name(self) -> str:
        return f"({self.base.name}, {{{','.join(self.base.labels[s] for s in sorted(self.S))}}})"

    def sum_of(self, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
        return self.base.set_sum(xs, ys)


def unit_candidates(M: FiniteMultiring, units_mode: str) -> list[int]:
    if units_mode == "units":
        return M.units()
    if units_mode == "nonzero":
        return [x for x in M.elements if x != M.zero]
    raise UsageError(f"units_mode must be 'units' or 'nonzero', got {units_mode!r}")


def check_pq_pair(P, units_mode: str = "units") -> Report:
    """pPQu, pPQm, pPQt, pPQh and the two real reduced clauses.

    Computable (integer) pairs are delegated to their window checker.
    """
    from .integers import ComputablePair, check_integer_pair

    if isinstance(P, ComputablePair):
        return check_integer_pair(P, units_mode=units_mode)
    A, S = P.base, sorted(P.S)
    mul, add, neg = A.mul, A.add, A.neg
    Sset = P.S
    rep = Report(f"{P.name}: pq-pair")
    rep.add(law("1 in S", "pPQu", None if A.one in Sset else {}))
    rep.add(law("S*S in S", "pPQm", first(
        {"s": s, "t": t} for s, t in cartesian(S, repeat=2) if mul[s][t] not in Sset)))

    def ternary(a: int) -> bool:
        a3 = mul[mul[a][a]][a]
        return any(mul[a3][r] == mul[a][s] for r, s in cartesian(S, repeat=2))

    rep.add(law("a^3 r = a s for some r, s in S", "pPQt", first(
        {"a": a} for a in A.elements if not ternary(a))))

    def hyperbolic(a: int, b: int) -> bool:
        for r, s, t in cartesian(S, repeat=3):
            if mul[b][r] in add[mul[a][s]][neg[mul[a][t]]]:
                return True
        return False

    cands = unit_candidates(A, units_mode)
    rep.add(law("b r in a s - a t for some r, s, t in S", "pPQh", first(
        {"a": a, "b": b} for a, b in cartesian(cands, repeat=2) if not hyperbolic(a, b))))
    rep.add(law("0 not in S", "pPQrr-i", None if A.zero not in Sset else {}))
    rep.add(law("S + S in S", "pPQrr-ii", first(
        {"s": s, "t": t, "z": z} for s, t in cartesian(S, repeat=2)
        for z in sorted(add[s][t]) if z not in Sset)))
    return rep


def is_pq_pair(P, units_mode: str = "units") -> bool:
    return check_pq_pair(P, units_mode).all(PAIR_LAWS)


def check_preorder_pair(P) -> Report:
    """Preorder hypothesis on T = S with zero adjoined, then the real reduced
    pq-pair conclusion on (A, S).

    The laws tagged ``PO-*`` are the hypothesis; ``proposition_holds`` in
    the returned report's last law records whether hypothesis implies
    conclusion on this instance.
    """
    from .integers import ComputablePair, check_integer_preorder

    if isinstance(P, ComputablePair):
        return check_integer_preorder(P)
    A = P.base
    T = P.S | {A.zero}
    Ts = sorted(T)
    rep = Report(f"{P.name}: preorder pair")
    rep.add(law("T + T in T", "PO-sum", first(
        {"s": s, "t": t, "z": z} for s, t in cartesian(Ts, repeat=2)
        for z in sorted(A.add[s][t]) if z not in T)))
    rep.add(law("T * T in T", "PO-mul", first(
        {"s": s, "t": t} for s, t in cartesian(Ts, repeat=2) if A.mul[s][t] not in T)))
    rep.add(law("squares in T", "PO-squares", first(
        {"a": a} for a in A.elements if A.mul[a][a] not in T)))
    rep.add(law("-1 not in T", "PO-proper", None if A.neg[A.one] not in T else {}))
    return _close_preorder_report(rep, check_pq_pair(P))


def _close_preorder_report(rep: Report, pair_report: Report) -> Report:
    hypothesis = rep.ok
    rep.extend(pair_report.laws)
    conclusion = pair_report.ok
    rep.add(law("preorder => real reduced pq-pair", "prop-preorder",
                None if (not hypothesis or conclusion) else {},
                note=f"hypothesis={'yes' if hypothesis else 'no'} conclusion={'yes' if conclusion else 'no'}"))
    return rep


def preorder_hypothesis(rep: Report) -> bool:
    return all(l.holds for l in rep.laws if l.tag.startswith("PO-"))


def product_pair(pairs: Sequence[PqPair], name: str | None = None) -> PqPair:
    """Product of the bases with S the cartesian product of the S's."""
    bases = [p.base for p in pairs]
    base = product(bases, name=name)
    tuples = product_tuples(bases)
    S = {i for i, t in enumerate(tuples) if all(x in p.S for x, p in zip(t, pairs))}
    return PqPair(base, frozenset(S))


# ---------------------------------------------------------------- file format

def pair_to_dict(P: PqPair) -> dict[str, Any]:
    doc = to_dict(P.base)
    doc["S"] = sorted(P.S)
    return doc


def pair_from_dict(doc: Mapping[str, Any], validate: bool = True) -> PqPair:
    if "S" not in doc:
        raise FormatError("pair document needs an 'S' field of element indices")
    S = doc["S"]
    if not isinstance(S, list) or not all(isinstance(s, int) and not isinstance(s, bool) for s in S):
        raise FormatError("'S' must be an array of element indices")
    return PqPair(from_dict(doc), frozenset(S), validate=validate)


def pair_from_json(text: str, validate: bool = True) -> PqPair:
    return pair_from_dict(loads_document(text), validate)
