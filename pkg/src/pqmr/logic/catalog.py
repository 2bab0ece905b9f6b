"""The axioms of each theory as sentences of the (pair) multiring language."""

from __future__ import annotations

from dataclasses import dataclass

from ..core import UsageError
from .syntax import (
    Eq, Formula, Implies, InS, InSum, Not, One, Zero, conj, exists, forall, ne, unit, v,
)


@dataclass(frozen=True)
class Axiom:
    tag: str
    name: str
    formula: Formula


def _multiring() -> list[Axiom]:
    x, y, z, w, t, u = v(0, 1, 2, 3, 4, 5)
    a, b, c, d = v(0, 1, 2, 3)
    left_assoc = exists((t,), conj(InSum(y, z, t), InSum(x, t, w)))    # w in x + (y + z)
    right_assoc = exists((u,), conj(InSum(x, y, u), InSum(u, z, w)))   # w in (x + y) + z
    return [
        Axiom("MR-nonempty", "sums are non-empty", forall((x, y), exists((z,), InSum(x, y, z)))),
        Axiom("MG-i", "reversibility", forall((x, y, z), Implies(
            InSum(x, y, z), conj(InSum(z, -y, x), InSum(-x, z, y))))),
        Axiom("MG-ii", "zero sums are singletons", forall((x, y), Implies(InSum(Zero(), x, y), Eq(y, x)))),
        Axiom("MG-ii", "zero is neutral", forall((x,), InSum(Zero(), x, x))),
        Axiom("MG-iii", "associativity (left in right)", forall((x, y, z, w), Implies(left_assoc, right_assoc))),
        Axiom("MG-iii", "associativity (right in left)", forall((x, y, z, w), Implies(right_assoc, left_assoc))),
        Axiom("MG-iv", "commutativity", forall((x, y, z), Implies(InSum(x, y, z), InSum(y, x, z)))),
        Axiom("MR-ii.assoc", "mul associativity", forall((x, y, z), Eq((x * y) * z, x * (y * z)))),
        Axiom("MR-ii.comm", "mul commutativity", forall((x, y), Eq(x * y, y * x))),
        Axiom("MR-ii.unit", "mul identity", forall((x,), Eq(x * One(), x))),
        Axiom("MR-iii", "zero absorbs", forall((a,), Eq(a * Zero(), Zero()))),
        Axiom("MR-iv", "weak distributivity", forall((a, b, c, d), Implies(
            InSum(a, b, c), InSum(a * d, b * d, c * d)))),
    ]


def _unit_axiom() -> Axiom:
    x, y = v(0, 1)
    return Axiom("MF-unit", "nonzero elements invertible",
                 forall((x,), Implies(ne(x, Zero()), exists((y,), Eq(x * y, One())))))


def _pq() -> list[Axiom]:
    x, y, u, w = v(0, 1, 2, 3)
    return [
        Axiom("PQt", "ternary", forall((x,), Eq(x * x * x, x))),
        Axiom("PQh", "hyperbolic", forall((x, y), Implies(
            conj(unit(x, u), unit(y, w)), InSum(x, -x, y)))),
    ]


def _rr_multifield() -> list[Axiom]:
    a, = v(0)
    return [
        Axiom("RRF-i", "cube identity", forall((a,), Eq(a * a * a, a))),
        Axiom("RRF-ii", "1 + 1 = {1}", forall((a,), Implies(InSum(One(), One(), a), Eq(a, One())))),
    ]


def _rr_multiring() -> list[Axiom]:
    a, b, c, d = v(0, 1, 2, 3)
    return [
        Axiom("RR-i", "1 != 0", Not(Eq(One(), Zero()))),
        Axiom("RR-ii", "cube identity", forall((a,), Eq(a * a * a, a))),
        Axiom("RR-iii", "absorption", forall((a, b, c), Implies(InSum(a, a * b * b, c), Eq(c, a)))),
        Axiom("RR-iv", "sums of squares are single-valued", forall((a, b, c, d), Implies(
            conj(InSum(a * a, b * b, c), InSum(a * a, b * b, d)), Eq(c, d)))),
    ]


def _pre_special() -> list[Axiom]:
    a, b, c, d, e, f = v(0, 1, 2, 3, 4, 5)
    w = v(6, 7, 8, 9, 10, 11)
    units4 = [unit(x, wx) for x, wx in zip((a, b, c, d), w)]
    units6 = [unit(x, wx) for x, wx in zip((a, b, c, d, e, f), w)]
    return [
        _unit_axiom(),
        Axiom("PQfps-i", "exchange", forall((a, b, c, d), Implies(
            conj(Eq(a * b, c * d), InSum(c, d, a), *units4), InSum(a, b, c)))),
        Axiom("PQfps-ii", "transitivity", forall((a, b, c, d, e, f), Implies(
            conj(Eq(a * b, c * d), Eq(c * d, e * f), InSum(c, d, a), InSum(e, f, c), *units6),
            InSum(e, f, a)))),
    ]


def _pq_pair() -> list[Axiom]:
    x, y, a, b, r, s, t, u, w = v(0, 1, 2, 3, 4, 5, 6, 7, 8)
    return [
        Axiom("pPQu", "unity", InS(One())),
        Axiom("pPQm", "multiplicative", forall((x, y), Implies(conj(InS(x), InS(y)), InS(x * y)))),
        Axiom("pPQt", "ternary", forall((a,), exists((r, s), conj(
            InS(r), InS(s), Eq(a * a * a * r, a * s))))),
        Axiom("pPQh", "hyperbolic", forall((a, b), Implies(
            conj(unit(a, u), unit(b, w)),
            exists((r, s, t), conj(InS(r), InS(s), InS(t), InSum(a * s, -(a * t), b * r)))))),
    ]


def _rr_pq_pair() -> list[Axiom]:
    x, y, z = v(0, 1, 2)
    return _pq_pair() + [
        Axiom("pPQrr-i", "0 not in S", Not(InS(Zero()))),
        Axiom("pPQrr-ii", "S + S in S", forall((x, y, z), Implies(
            conj(InS(x), InS(y), InSum(x, y, z)), InS(z)))),
    ]


_THEORIES = {
    "multiring": _multiring,
    "multifield": lambda: _multiring() + [_unit_axiom()],
    "pq": _pq,
    "rr-multifield": _rr_multifield,
    "rr-multiring": _rr_multiring,
    "pre-special": _pre_special,
    "pq-pair": _pq_pair,
    "rr-pq-pair": _rr_pq_pair,
}

THEORIES = tuple(_THEORIES)
PAIR_THEORIES = ("pq-pair", "rr-pq-pair")


def named_axioms(theory: str) -> list[Axiom]:
    try:
        return _THEORIES[theory]()
    except KeyError:
        raise UsageError(f"unknown theory {theory!r}; choose from {', '.join(THEORIES)}") from None


def axiom_catalog(theory: str) -> list[Formula]:
    return [ax.formula for ax in named_axioms(theory)]
