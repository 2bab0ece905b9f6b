"""Finite multirings as total tables, the multiring axiom checkers, the
builtin catalog, the triangle-sum oracle and the canonical file format."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as cartesian
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .report import Report, first, law


class UsageError(ValueError):
    """Bad input: out-of-range index, unknown name, malformed structure."""


class FormatError(UsageError):
    """A structure document could not be parsed."""

    def __init__(self, message: str, pos: int | None = None):
        self.pos = pos
        super().__init__(message if pos is None else f"at char {pos}: {message}")


@dataclass(frozen=True)
class FiniteMultiring:
    """A finite multiring candidate given by total tables over 0..n-1.

    Nothing beyond table shape is assumed; the axioms are verified by
    :func:`check_multiring`.
    """

    name: str
    labels: tuple[str, ...]
    add: tuple[tuple[frozenset[int], ...], ...]
    neg: tuple[int, ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int
    one: int

    def __post_init__(self) -> None:
        n = len(self.labels)
        if n == 0:
            raise FormatError("carrier must be non-empty")
        if len(set(self.labels)) != n:
            raise FormatError("labels must be distinct")
        ok = range(n)
        if self.zero not in ok or self.one not in ok:
            raise FormatError("zero/one out of range")
        if len(self.neg) != n or any(x not in ok for x in self.neg):
            raise FormatError("neg must map the carrier into itself")
        if len(self.mul) != n or any(len(r) != n or any(x not in ok for x in r) for r in self.mul):
            raise FormatError("mul must be an n x n table of carrier elements")
        if len(self.add) != n or any(len(r) != n for r in self.add):
            raise FormatError("add must be an n x n table")
        for a, row in enumerate(self.add):
            for b, cell in enumerate(row):
                if not cell:
                    raise FormatError(f"add cell ({a},{b}) is empty")
                if any(x not in ok for x in cell):
                    raise FormatError(f"add cell ({a},{b}) leaves the carrier")

    @classmethod
    def from_tables(
        cls,
        name: str,
        labels: Sequence[str],
        add: Sequence[Sequence[Iterable[int]]],
        neg: Sequence[int],
        mul: Sequence[Sequence[int]],
        zero: int = 0,
        one: int = 1,
    ) -> "FiniteMultiring":
        return cls(
            name=name,
            labels=tuple(str(x) for x in labels),
            add=tuple(tuple(frozenset(c) for c in row) for row in add),
            neg=tuple(int(x) for x in neg),
            mul=tuple(tuple(int(x) for x in row) for row in mul),
            zero=int(zero),
            one=int(one),
        )

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> range:
        return range(len(self.labels))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UsageError(f"{self.name}: unknown element label {label!r}") from None

    def renamed(self, name: str) -> "FiniteMultiring":
        return FiniteMultiring(name, self.labels, self.add, self.neg, self.mul, self.zero, self.one)

    def power(self, x: int, k: int) -> int:
        r = self.one
        for _ in range(k):
            r = self.mul[r][x]
        return r

    def units(self) -> list[int]:
        """Elements with a multiplicative inverse."""
        return [x for x in self.elements if self.one in self.mul[x]]

    def set_sum(self, xs: Iterable[int], ys: Iterable[int]) -> frozenset[int]:
        """Union convention: X + Y is the union of x + y over the pairs."""
        ys = tuple(ys)
        out: set[int] = set()
        for x in xs:
            row = self.add[x]
            for y in ys:
                out |= row[y]
        return frozenset(out)

    def __repr__(self) -> str:
        return f"FiniteMultiring({self.name!r}, n={self.n})"


def add_set(M: FiniteMultiring, a: int, b: int) -> frozenset[int]:
    if not (0 <= a < M.n and 0 <= b < M.n):
        raise UsageError(f"{M.name}: element index out of range ({a}, {b})")
    return M.add[a][b]


def neg_is_involution(M: FiniteMultiring) -> bool:
    return all(M.neg[M.neg[x]] == x for x in M.elements)


# ---------------------------------------------------------------- checkers

MULTIGROUP_LAWS = ("MG-i", "MG-ii", "MG-iii", "MG-iv")
MULTIRING_LAWS = MULTIGROUP_LAWS + ("MR-ii.assoc", "MR-ii.comm", "MR-ii.unit", "MR-iii", "MR-iv")


def _reversibility(M: FiniteMultiring) -> dict | None:
    add, neg = M.add, M.neg
    for x, y in cartesian(M.elements, repeat=2):
        for z in sorted(add[x][y]):
            if x not in add[z][neg[y]] or y not in add[neg[x]][z]:
                return {"x": x, "y": y, "z": z}
    return None


def _identity(M: FiniteMultiring) -> dict | None:
    row = M.add[M.zero]
    for x, y in cartesian(M.elements, repeat=2):
        if (y in row[x]) != (x == y):
            return {"x": x, "y": y}
    return None


def _associativity(M: FiniteMultiring) -> dict | None:
    add = M.add
    for x, y, z in cartesian(M.elements, repeat=3):
        left = M.set_sum((x,), add[y][z])
        right = M.set_sum(add[x][y], (z,))
        if left != right:
            return {"x": x, "y": y, "z": z}
    return None


def _commutativity(M: FiniteMultiring) -> dict | None:
    for x, y in cartesian(M.elements, repeat=2):
        if M.add[x][y] != M.add[y][x]:
            return {"x": x, "y": y}
    return None


def check_multigroup(M: FiniteMultiring) -> Report:
    """Multigroup axioms for (M, +, -, 0)."""
    rep = Report(f"{M.name}: additive multigroup")
    rep.add(law("reversibility", "MG-i", _reversibility(M)))
    rep.add(law("identity", "MG-ii", _identity(M)))
    rep.add(law("associativity", "MG-iii", _associativity(M)))
    rep.add(law("commutativity", "MG-iv", _commutativity(M)))
    return rep


def _weak_distributivity(M: FiniteMultiring) -> dict | None:
    add, mul = M.add, M.mul
    for a, b in cartesian(M.elements, repeat=2):
        for c in sorted(add[a][b]):
            for d in M.elements:
                if mul[c][d] not in add[mul[a][d]][mul[b][d]]:
                    return {"a": a, "b": b, "c": c, "d": d}
    return None


def _full_distributivity(M: FiniteMultiring) -> dict | None:
    add, mul = M.add, M.mul
    for a, b, d in cartesian(M.elements, repeat=3):
        if frozenset(mul[c][d] for c in add[a][b]) != add[mul[a][d]][mul[b][d]]:
            return {"a": a, "b": b, "d": d}
    return None


def check_multiring(M: FiniteMultiring) -> "StructureKindReport":
    """Every multiring law plus the domain / field / hyperring classifiers."""
    mul, els = M.mul, M.elements
    rep = StructureKindReport(f"{M.name}: multiring")
    rep.extend(check_multigroup(M).laws)
    rep.add(law("mul associativity", "MR-ii.assoc", first(
        {"x": x, "y": y, "z": z} for x, y, z in cartesian(els, repeat=3)
        if mul[mul[x][y]][z] != mul[x][mul[y][z]])))
    rep.add(law("mul commutativity", "MR-ii.comm", first(
        {"x": x, "y": y} for x, y in cartesian(els, repeat=2) if mul[x][y] != mul[y][x])))
    rep.add(law("mul identity", "MR-ii.unit", first(
        {"x": x} for x in els if mul[x][M.one] != x or mul[M.one][x] != x)))
    rep.add(law("zero absorbs", "MR-iii", first(
        {"a": a} for a in els if mul[a][M.zero] != M.zero)))
    rep.add(law("weak distributivity", "MR-iv", _weak_distributivity(M)))
    rep.add(law("no zero divisors", "multidomain", first(
        {"a": a, "b": b} for a, b in cartesian(els, repeat=2)
        if a != M.zero and b != M.zero and mul[a][b] == M.zero)))
    rep.add(law("nonzero elements invertible", "multifield", first(
        {"a": a} for a in els if a != M.zero and M.one not in mul[a])))
    rep.add(law("full distributivity", "hyperring", _full_distributivity(M)))
    return rep


class StructureKindReport(Report):
    @property
    def is_multigroup(self) -> bool:
        return all(l.holds for l in self.laws if l.tag in MULTIGROUP_LAWS)

    @property
    def is_multiring(self) -> bool:
        return all(l.holds for l in self.laws if l.tag in MULTIRING_LAWS)

    def _kind(self, tag: str) -> bool:
        return self.is_multiring and next(l for l in self.laws if l.tag == tag).holds

    @property
    def is_multidomain(self) -> bool:
        return self._kind("multidomain")

    @property
    def is_multifield(self) -> bool:
        return self._kind("multifield")

    @property
    def is_hyperring(self) -> bool:
        return self._kind("hyperring")


def is_multiring(M: FiniteMultiring) -> bool:
    return check_multiring(M).is_multiring


# ---------------------------------------------------------------- builtins

BUILTIN_CATALOG = ("q2", "zmod:<n> (n >= 2)", "fp:<p> (p prime)")


def q2() -> FiniteMultiring:
    """The three-element sign multifield {0, 1, -1}."""
    # indices: 0 -> "0", 1 -> "1", 2 -> "-1"
    full = {0, 1, 2}
    add = [
        [{0}, {1}, {2}],
        [{1}, {1}, full],
        [{2}, full, {2}],
    ]
    mul = [[0, 0, 0], [0, 1, 2], [0, 2, 1]]
    return FiniteMultiring.from_tables("q2", ["0", "1", "-1"], add, [0, 2, 1], mul)


def ring_adapter(name: str, n: int) -> FiniteMultiring:
    """Z/nZ as a multiring with singleton sums."""
    add = [[{(a + b) % n} for b in range(n)] for a in range(n)]
    mul = [[(a * b) % n for b in range(n)] for a in range(n)]
    return FiniteMultiring.from_tables(
        name, [str(a) for a in range(n)], add, [(-a) % n for a in range(n)], mul, 0, 1 % n
    )


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def builtin(name: str) -> FiniteMultiring:
    kind, _, arg = name.partition(":")
    if kind == "q2" and not arg:
        return q2()
    if kind in ("zmod", "fp") and arg:
        try:
            n = int(arg)
        except ValueError:
            raise UsageError(f"invalid modulus in {name!r}") from None
        if kind == "zmod" and n < 2:
            raise UsageError(f"zmod needs n >= 2, got {n}")
        if kind == "fp" and not _is_prime(n):
            raise UsageError(f"fp needs a prime, got {n}")
        return ring_adapter(name, n)
    raise UsageError(f"unknown builtin {name!r}; catalog: {', '.join(BUILTIN_CATALOG)}")


# ---------------------------------------------------------------- triangle

def triangle_membership(a: Fraction | int, b: Fraction | int, c: Fraction | int) -> bool:
    """c in a (triangle-sum) b over the non-negative rationals."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a < 0 or b < 0 or c < 0:
        raise UsageError("triangle sum is defined on non-negative rationals only")
    return abs(a - b) <= c <= a + b


# ---------------------------------------------------------------- file format

def to_dict(M: FiniteMultiring) -> dict[str, Any]:
    return {
        "name": M.name,
        "labels": list(M.labels),
        "zero": M.zero,
        "one": M.one,
        "neg": list(M.neg),
        "mul": [list(r) for r in M.mul],
        "add": [[sorted(c) for c in r] for r in M.add],
    }


def dumps(obj: Mapping[str, Any], pretty: bool = False) -> str:
    """Canonical JSON: sorted keys, compact separators (or 2-space indent)."""
    if pretty:
        return json.dumps(obj, sort_keys=True, indent=2) + "\n"
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def to_json(M: FiniteMultiring, pretty: bool = False) -> str:
    return dumps(to_dict(M), pretty)


def _need(doc: Mapping[str, Any], key: str, kind: type) -> Any:
    if key not in doc:
        raise FormatError(f"missing field {key!r}")
    v = doc[key]
    if not isinstance(v, kind) or isinstance(v, bool):
        raise FormatError(f"field {key!r} must be {kind.__name__}")
    return v


def from_dict(doc: Mapping[str, Any]) -> FiniteMultiring:
    if not isinstance(doc, Mapping):
        raise FormatError("structure document must be a JSON object")
    labels = _need(doc, "labels", list)
    add = _need(doc, "add", list)
    for row in add:
        if not isinstance(row, list) or not all(isinstance(c, list) for c in row):
            raise FormatError("add must be an array of arrays of int arrays")
        for c in row:
            if len(set(c)) != len(c) or not all(isinstance(x, int) for x in c):
                raise FormatError("add cells must be duplicate-free int arrays")
    try:
        return FiniteMultiring.from_tables(
            name=str(doc.get("name", "unnamed")),
            labels=labels,
            add=add,
            neg=_need(doc, "neg", list),
            mul=_need(doc, "mul", list),
            zero=_need(doc, "zero", int),
            one=_need(doc, "one", int),
        )
    except (TypeError, ValueError) as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(str(e)) from None


def loads_document(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno} col {e.colno}: {e.msg}", e.pos) from None
    if not isinstance(doc, dict):
        raise FormatError("top-level JSON value must be an object")
    return doc


def from_json(text: str) -> FiniteMultiring:
    return from_dict(loads_document(text))


def iter_triples(M: FiniteMultiring) -> Iterator[tuple[int, int, int]]:
    """All (a, b, c) with c in a + b, lexicographically."""
    for a, b in cartesian(M.elements, repeat=2):
        for c in sorted(M.add[a][b]):
            yield a, b, c
