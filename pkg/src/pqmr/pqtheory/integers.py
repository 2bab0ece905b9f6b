"""The ring of integers with a distinguished multiplicative set S.

Existential witnesses over Z are searched among the elements of S with
absolute value at most ``bound``; when one factor of an equation is forced
it is solved for exactly instead of searched. Answers are tri-state:
YES (witness found), NO_WITHIN_BOUND (search exhausted) or UNKNOWN (the
S-membership predicate itself could not decide).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from math import isqrt
from typing import Callable, Iterable, Mapping, Sequence

from ..core import FiniteMultiring, UsageError
from ..report import Law, Report, Verdict
from ..unionfind import UnionFind


def sums_of_squares(n: int) -> Verdict:
    # Lagrange: every positive integer is a sum of four squares.
    return Verdict.of(n > 0)


def nonzero_squares(n: int) -> Verdict:
    return Verdict.of(n > 0 and isqrt(n) ** 2 == n)


PREDICATES: dict[str, Callable[[int], Verdict]] = {
    "sums-of-squares": sums_of_squares,
    "nonzero-squares": nonzero_squares,
}

DEFAULT_BOUND = 100


@dataclass(frozen=True)
class ComputablePair:
    """(Z, S) with S given by name or by a tri-state predicate."""

    S: str = "sums-of-squares"
    bound: int = DEFAULT_BOUND
    predicate: Callable[[int], Verdict] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.predicate is None and self.S not in PREDICATES:
            raise UsageError(f"unknown S {self.S!r}; choose from {', '.join(PREDICATES)}")
        if self.bound < 1:
            raise UsageError("witness bound must be at least 1")

    @property
    def name(self) -> str:
        return f"(Z, {self.S})"

    def member(self, n: int) -> Verdict:
        return (self.predicate or PREDICATES[self.S])(n)

    def candidates(self) -> list[int]:
        """Elements of S with |s| <= bound, by absolute value then sign."""
        key = (self.S, self.bound, self.predicate)
        cached = _CANDIDATES.get(key)
        if cached is None:
            span = sorted(range(-self.bound, self.bound + 1), key=lambda s: (abs(s), s < 0))
            cached = [s for s in span if self.member(s) is Verdict.YES]
            _CANDIDATES[key] = cached
        return cached

    def _solve(self, num: int, den: int):
        """Verdict that num/den is an integer in S, with the quotient."""
        if den == 0 or num % den:
            return Verdict.NO, None
        q = num // den
        return self.member(q), q

    def similar(self, a: int, b: int) -> tuple[Verdict, tuple[int, int] | None]:
        """a ~ b iff a*s == b*t for some s, t in S."""
        unknown = False
        for s in self.candidates():
            x = a * s
            if b == 0:
                if x == 0:
                    return Verdict.YES, (s, self.candidates()[0])
                continue
            verdict, t = self._solve(x, b)
            if verdict is Verdict.YES:
                return Verdict.YES, (s, t)
            unknown |= verdict is Verdict.UNKNOWN
        return (Verdict.UNKNOWN if unknown else Verdict.NO_WITHIN_BOUND), None

    def in_sum(self, a: int, b: int, c: int) -> tuple[Verdict, tuple[int, int, int] | None]:
        """[c] in [a] + [b] iff c*v == a*s + b*t for some s, t, v in S."""
        cands = self.candidates()
        unknown = False
        for s, t in cartesian(cands, repeat=2):
            x = a * s + b * t
            if c == 0:
                if x == 0:
                    return Verdict.YES, (s, t, cands[0])
                continue
            verdict, v = self._solve(x, c)
            if verdict is Verdict.YES:
                return Verdict.YES, (s, t, v)
            unknown |= verdict is Verdict.UNKNOWN
        return (Verdict.UNKNOWN if unknown else Verdict.NO_WITHIN_BOUND), None

    def ternary_witness(self, a: int) -> tuple[Verdict, tuple[int, int] | None]:
        """r, s in S with a^3 r == a s."""
        unknown = False
        for r in self.candidates():
            if a == 0:
                return Verdict.YES, (r, r)
            verdict, s = self._solve(a ** 3 * r, a)
            if verdict is Verdict.YES:
                return Verdict.YES, (r, s)
            unknown |= verdict is Verdict.UNKNOWN
        return (Verdict.UNKNOWN if unknown else Verdict.NO_WITHIN_BOUND), None

    def hyperbolic_witness(self, a: int, b: int) -> tuple[Verdict, tuple[int, int, int] | None]:
        """r, s, t in S with b r == a s - a t."""
        cands = self.candidates()
        unknown = False
        for r, t in cartesian(cands, repeat=2):
            verdict, s = self._solve(b * r + a * t, a)
            if verdict is Verdict.YES:
                return Verdict.YES, (r, s, t)
            unknown |= verdict is Verdict.UNKNOWN
        return (Verdict.UNKNOWN if unknown else Verdict.NO_WITHIN_BOUND), None


_CANDIDATES: dict[tuple, list[int]] = {}


def integer_window(lo: int, hi: int) -> tuple[int, ...]:
    if lo > hi:
        raise UsageError(f"empty window {lo}..{hi}")
    return tuple(range(lo, hi + 1))


def parse_window(text: str) -> tuple[int, ...]:
    """'-10..10' or a comma list '-1,0,1'."""
    text = text.replace("−", "-").strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return integer_window(int(lo), int(hi))
        return tuple(sorted({int(x) for x in text.split(",") if x.strip()}))
    except ValueError:
        raise UsageError(f"bad window {text!r}; use LO..HI or a comma list") from None


# ---------------------------------------------------------------- window quotient

def _rep_key(a: int) -> tuple[int, bool]:
    return (abs(a), a < 0)


@dataclass
class WindowQuotient:
    """Z/_m S restricted to the classes met by a finite window of integers."""

    pair: ComputablePair
    window: tuple[int, ...]
    classes: list[list[int]]
    reps: list[int]
    class_of: dict[int, int]
    sums: dict[tuple[int, int, int], Verdict]
    witnesses: dict[tuple[int, int, int], tuple[int, int, int]]
    neg: list[int | None]
    mul: list[list[int | None]]

    def label(self, k: int) -> str:
        return str(self.reps[k])

    def cell(self, i: int, j: int) -> dict[int, Verdict]:
        return {k: self.sums[i, j, k] for k in range(len(self.reps))}

    @property
    def closed(self) -> bool:
        """Every product and negation of classes lands in a known class."""
        return all(x is not None for x in self.neg) and all(
            x is not None for row in self.mul for x in row)

    @property
    def fully_decided(self) -> bool:
        return all(v is not Verdict.UNKNOWN for v in self.sums.values())

    def to_multiring(self, name: str | None = None) -> FiniteMultiring:
        """Finite table reading NO_WITHIN_BOUND as absent."""
        if not self.closed:
            raise UsageError("window is not closed under the quotient operations")
        if not self.fully_decided:
            raise UsageError("some sum cells are undecided")
        k = len(self.reps)
        add = [[{c for c in range(k) if self.sums[i, j, c] is Verdict.YES} for j in range(k)]
               for i in range(k)]
        return FiniteMultiring.from_tables(
            name or f"{self.pair.name} on window",
            [self.label(i) for i in range(k)],
            add,
            self.neg,
            self.mul,
            self.class_of[0],
            self.class_of[1],
        )

    def to_dict(self) -> dict:
        k = len(self.reps)
        return {
            "pair": self.pair.name,
            "bound": self.pair.bound,
            "window": [min(self.window), max(self.window)] if self.window else [],
            "classes": [
                {"rep": self.reps[i], "members": self.classes[i]} for i in range(k)
            ],
            "sum": [
                {
                    "a": self.reps[i],
                    "b": self.reps[j],
                    "cells": {self.label(c): self.sums[i, j, c].value for c in range(k)},
                }
                for i in range(k) for j in range(k)
            ],
            "neg": [None if x is None else self.reps[x] for x in self.neg],
            "mul": [[None if x is None else self.reps[x] for x in row] for row in self.mul],
        }


def window_quotient(P: ComputablePair, window: Iterable[int]) -> WindowQuotient:
    window = tuple(sorted(set(window), key=_rep_key))
    if 0 not in window or 1 not in window:
        raise UsageError("window must contain 0 and 1")
    uf = UnionFind(window)
    for a, b in cartesian(window, repeat=2):
        if _rep_key(a) < _rep_key(b) and uf.find(a) != uf.find(b):
            if P.similar(a, b)[0] is Verdict.YES:
                uf.union(a, b)
    blocks: dict[int, list[int]] = {}
    for a in window:
        blocks.setdefault(uf.find(a), []).append(a)
    classes = sorted((sorted(b, key=_rep_key) for b in blocks.values()), key=lambda b: _rep_key(b[0]))
    reps = [b[0] for b in classes]
    class_of = {a: k for k, b in enumerate(classes) for a in b}

    def locate(x: int) -> int | None:
        if x in class_of:
            return class_of[x]
        for k, r in enumerate(reps):
            if P.similar(x, r)[0] is Verdict.YES:
                return k
        return None

    k = len(reps)
    sums: dict[tuple[int, int, int], Verdict] = {}
    witnesses: dict[tuple[int, int, int], tuple[int, int, int]] = {}
    for i, j, c in cartesian(range(k), repeat=3):
        if j < i:
            sums[i, j, c] = sums[j, i, c]
            if (j, i, c) in witnesses:
                s, t, v = witnesses[j, i, c]
                witnesses[i, j, c] = (t, s, v)
            continue
        verdict, w = P.in_sum(reps[i], reps[j], reps[c])
        sums[i, j, c] = verdict
        if w is not None:
            witnesses[i, j, c] = w
    neg = [locate(-r) for r in reps]
    mul = [[locate(a * b) for b in reps] for a in reps]
    return WindowQuotient(P, window, classes, reps, class_of, sums, witnesses, neg, mul)


def compare_with(wq: WindowQuotient, M: FiniteMultiring, mapping: Mapping[int, int]) -> dict:
    """Cell-by-cell comparison of a window quotient with a finite multiring
    under a class -> element map. Returns counts of confirmed positives,
    consistent negatives, contradictions and undecided cells."""
    out = {"confirmed": 0, "consistent_no": 0, "contradictions": [], "missing": [], "undecided": 0}
    for (i, j, c), verdict in sorted(wq.sums.items()):
        expected = mapping[c] in M.add[mapping[i]][mapping[j]]
        if verdict is Verdict.YES:
            if expected:
                out["confirmed"] += 1
            else:
                out["contradictions"].append((i, j, c))
        elif verdict is Verdict.UNKNOWN:
            out["undecided"] += 1
        elif expected:
            out["missing"].append((i, j, c))
        else:
            out["consistent_no"] += 1
    return out


# ---------------------------------------------------------------- pair checks

def _forall(name: str, tag: str, results: Iterable[tuple[Mapping, Verdict]], note: str) -> Law:
    worst: dict[Verdict, Mapping] = {}
    for witness, verdict in results:
        if verdict is not Verdict.YES and verdict not in worst:
            worst[verdict] = witness
            if verdict is Verdict.NO:
                break
    for verdict in (Verdict.NO, Verdict.NO_WITHIN_BOUND, Verdict.UNKNOWN):
        if verdict in worst:
            return Law(name, tag, verdict, dict(worst[verdict]), note)
    return Law(name, tag, Verdict.YES, None, note)


def _member_in(P: ComputablePair, x: int) -> Verdict:
    v = P.member(x)
    return v if v in (Verdict.YES, Verdict.UNKNOWN) else Verdict.NO


def check_integer_pair(P: ComputablePair, window: Sequence[int] | None = None,
                       units_mode: str = "units") -> Report:
    """Pair axioms with universal quantifiers restricted to a window
    (default |a| <= 10) and existentials searched up to the bound."""
    window = tuple(window) if window is not None else integer_window(-10, 10)
    in_S = [s for s in window if P.member(s) is Verdict.YES]
    note = f"window {min(window)}..{max(window)}, bound {P.bound}"
    rep = Report(f"{P.name}: pq-pair")
    rep.add(_forall("1 in S", "pPQu", [({}, _member_in(P, 1))], "exact"))
    rep.add(_forall("S*S in S", "pPQm", (
        ({"s": s, "t": t}, _member_in(P, s * t)) for s, t in cartesian(in_S, repeat=2)), note))
    rep.add(_forall("a^3 r = a s for some r, s in S", "pPQt", (
        ({"a": a}, P.ternary_witness(a)[0]) for a in window), note))
    if units_mode == "units":
        cands = [1, -1]
    elif units_mode == "nonzero":
        cands = [a for a in window if a != 0]
    else:
        raise UsageError(f"units_mode must be 'units' or 'nonzero', got {units_mode!r}")
    rep.add(_forall("b r = a s - a t for some r, s, t in S", "pPQh", (
        ({"a": a, "b": b}, P.hyperbolic_witness(a, b)[0]) for a, b in cartesian(cands, repeat=2)),
        f"{note}, {units_mode}"))
    zero = P.member(0)
    rep.add(Law("0 not in S", "pPQrr-i",
                {Verdict.NO: Verdict.YES, Verdict.YES: Verdict.NO}.get(zero, Verdict.UNKNOWN),
                None if zero is Verdict.NO else {}, "exact"))
    rep.add(_forall("S + S in S", "pPQrr-ii", (
        ({"s": s, "t": t}, _member_in(P, s + t)) for s, t in cartesian(in_S, repeat=2)), note))
    return rep


def check_integer_preorder(P: ComputablePair, window: Sequence[int] | None = None) -> Report:
    from .pairs import _close_preorder_report

    window = tuple(window) if window is not None else integer_window(-10, 10)

    def in_T(x: int) -> Verdict:
        return Verdict.YES if x == 0 else _member_in(P, x)

    T = [s for s in window if in_T(s) is Verdict.YES]
    note = f"window {min(window)}..{max(window)}"
    rep = Report(f"{P.name}: preorder pair")
    rep.add(_forall("T + T in T", "PO-sum", (
        ({"s": s, "t": t}, in_T(s + t)) for s, t in cartesian(T, repeat=2)), note))
    rep.add(_forall("T * T in T", "PO-mul", (
        ({"s": s, "t": t}, in_T(s * t)) for s, t in cartesian(T, repeat=2)), note))
    rep.add(_forall("squares in T", "PO-squares", (({"a": a}, in_T(a * a)) for a in window), note))
    minus_one = in_T(-1)
    rep.add(Law("-1 not in T", "PO-proper",
                {Verdict.NO: Verdict.YES, Verdict.YES: Verdict.NO}.get(minus_one, Verdict.UNKNOWN),
                None if minus_one is Verdict.NO else {}, "exact"))
    return _close_preorder_report(rep, check_integer_pair(P, window))


def rational_certificate(a: int, b: int, c: int, witness: tuple[int, int, int]) -> tuple[Fraction, Fraction]:
    """From c*v = a*s + b*t with s, t, v nonzero squares, the rationals
    p = sqrt(s/v), q = sqrt(t/v) with c = a p^2 + b q^2."""
    s, t, v = witness
    if c * v != a * s + b * t:
        raise ValueError("witness does not satisfy c*v = a*s + b*t")
    roots = []
    for x in (s, t, v):
        r = isqrt(x) if x > 0 else -1
        if r * r != x:
            raise ValueError(f"{x} is not a nonzero square")
        roots.append(r)
    p, q = Fraction(roots[0], roots[2]), Fraction(roots[1], roots[2])
    assert c == a * p * p + b * q * q
    return p, q
