"""Quadratic forms over a finite pair and their isometry relations.

Every relation here only depends on the quotient classes of the entries,
so all computation runs on tuples of quotient classes.

* n = 0: the empty form is isometric to itself.
* n = 1: equality of classes.
* n = 2: <a, b> ~ <c, d> iff ab = cd and a + b = c + d in the quotient.
* n >= 3: transitive closure of the one-step relation: equal class tuples,
  or a pair of positions in each form whose entries are 2-isometric while
  the forms left after erasing them are (n-2)-isometric.

The standard (special-group style) extension is, for n >= 3,
<a1..an> ~ <b1..bn> iff there are x, y, z3..zn with <a1, x> ~ <b1, y>,
<a2..an> ~ <x, z3..zn> and <b2..bn> ~ <y, z3..zn>, the (n-1)-ary relation
being again the standard one. Witnesses range over all quotient classes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, product as cartesian
from typing import Iterable, Sequence

from .constructions import Quotient, marshall_quotient
from .core import UsageError
from .unionfind import UnionFind

DEFAULT_LIMIT = 10**6
RESIDUAL_ORDERS = ("preserve", "reverse", "sorted")


@dataclass(frozen=True)
class ChainStep:
    source: tuple[int, ...]
    target: tuple[int, ...]
    positions: tuple[tuple[int, int], tuple[int, int]] | None  # 1-based; None = equal tuples


class IsometryContext:
    """A finite pair with its quotient and memoized isometry partitions."""

    def __init__(self, pair, *, limit: int = DEFAULT_LIMIT, residual_order: str = "preserve"):
        if residual_order not in RESIDUAL_ORDERS:
            raise UsageError(f"residual_order must be one of {RESIDUAL_ORDERS}")
        self.pair = pair
        self.quotient: Quotient = marshall_quotient(pair.base, pair.S)
        self.Q = self.quotient.structure
        self.limit = limit
        self.residual_order = residual_order
        self._leader: dict[int, dict[tuple[int, ...], tuple[int, ...]]] = {}
        self._standard: dict[int, dict[tuple[int, ...], frozenset[tuple[int, ...]]]] = {}

    def invalidate(self) -> None:
        """Drop every memo table (they are rebuilt lazily)."""
        self._leader.clear()
        self._standard.clear()

    # -- forms
    def classes_of(self, form: Sequence[int]) -> tuple[int, ...]:
        base = self.pair.base
        if any(not 0 <= a < base.n for a in form):
            raise UsageError("form entry outside the carrier")
        return tuple(self.quotient.class_of[a] for a in form)

    def form(self, labels: Iterable[str]) -> tuple[int, ...]:
        return tuple(self.pair.base.index(l.strip()) for l in labels)

    def class_labels(self, t: Sequence[int]) -> list[str]:
        return [self.Q.labels[c] for c in t]

    def tuples(self, n: int) -> list[tuple[int, ...]]:
        if self.Q.n ** n > self.limit:
            raise UsageError(f"|Q|^n = {self.Q.n}^{n} exceeds the limit {self.limit}")
        return list(cartesian(range(self.Q.n), repeat=n))

    def key2(self, a: int, b: int) -> tuple[int, frozenset[int]]:
        return self.Q.mul[a][b], self.Q.add[a][b]

    def _residual(self, t: tuple[int, ...], i: int, j: int) -> tuple[int, ...]:
        rest = tuple(x for k, x in enumerate(t) if k not in (i, j))
        if self.residual_order == "reverse":
            return rest[::-1]
        if self.residual_order == "sorted":
            return tuple(sorted(rest))
        return rest

    # -- closure relation
    def leaders(self, n: int) -> dict[tuple[int, ...], tuple[int, ...]]:
        """Tuple -> lexicographically least member of its isometry class."""
        if n in self._leader:
            return self._leader[n]
        tuples = self.tuples(n)
        if n <= 1:
            out = {t: t for t in tuples}
        elif n == 2:
            first: dict = {}
            out = {}
            for t in tuples:
                out[t] = first.setdefault(self.key2(*t), t)
        else:
            uf = UnionFind(tuples)
            for members in self._step_groups(n).values():
                for t in members[1:]:
                    uf.union(members[0], t)
            out = {t: uf.find(t) for t in tuples}
        self._leader[n] = out
        return out

    def _step_keys(self, t: tuple[int, ...]):
        lower = self.leaders(len(t) - 2)
        for i, j in combinations(range(len(t)), 2):
            yield (i, j), (self.key2(t[i], t[j]), lower[self._residual(t, i, j)])

    def _step_groups(self, n: int) -> dict:
        groups: dict = {}
        for t in self.tuples(n):
            for _, key in self._step_keys(t):
                groups.setdefault(key, []).append(t)
        return groups

    def one_step(self, s: tuple[int, ...], t: tuple[int, ...]) -> bool:
        """The generating relation on class tuples (n >= 3)."""
        if s == t:
            return True
        keys = {k for _, k in self._step_keys(s)}
        return any(k in keys for _, k in self._step_keys(t))

    def isometric_classes(self, s: Sequence[int], t: Sequence[int]) -> bool:
        s, t = tuple(s), tuple(t)
        if len(s) != len(t):
            raise UsageError(f"forms have different lengths ({len(s)} and {len(t)})")
        n = len(s)
        if n == 0:
            return True
        if n == 1:
            return s == t
        if n == 2:
            return self.key2(*s) == self.key2(*t)
        lead = self.leaders(n)
        return lead[s] == lead[t]

    def chain(self, s: Sequence[int], t: Sequence[int]) -> list[ChainStep] | None:
        """Shortest sequence of one-step moves between class tuples."""
        s, t = tuple(s), tuple(t)
        if not self.isometric_classes(s, t):
            return None
        if s == t:
            return []
        n = len(s)
        if n <= 2:
            return [ChainStep(s, t, ((1, 2), (1, 2)) if n == 2 else None)]
        groups = self._step_groups(n)
        prev: dict = {s: None}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if u == t:
                break
            for _, key in self._step_keys(u):
                for w in groups[key]:
                    if w not in prev:
                        prev[w] = u
                        queue.append(w)
        path = [t]
        while prev[path[-1]] is not None:
            path.append(prev[path[-1]])
        path.reverse()
        steps = []
        for u, w in zip(path, path[1:]):
            ku = dict((k, pos) for pos, k in self._step_keys(u))
            pos = next(((ku[k], p) for p, k in self._step_keys(w) if k in ku))
            steps.append(ChainStep(u, w, tuple((i + 1, j + 1) for i, j in pos)))
        return steps

    def isometry_n(self, phi: Sequence[int], psi: Sequence[int]) -> bool:
        return self.isometric_classes(self.classes_of(phi), self.classes_of(psi))

    def isometry2(self, phi: Sequence[int], psi: Sequence[int]) -> bool:
        if len(phi) != 2 or len(psi) != 2:
            raise UsageError("2-isometry compares forms of length 2")
        return self.isometry_n(phi, psi)

    def witt_classes(self, n: int) -> list[list[tuple[int, ...]]]:
        """Partition of all class tuples of length n, blocks ordered by leader."""
        blocks: dict = {}
        for t, lead in self.leaders(n).items():
            blocks.setdefault(lead, []).append(t)
        return [sorted(blocks[k]) for k in sorted(blocks)]

    # -- standard extension
    def standard_related(self, n: int) -> dict[tuple[int, ...], frozenset[tuple[int, ...]]]:
        """Each class tuple -> the tuples standard-isometric to it."""
        if n in self._standard:
            return self._standard[n]
        tuples = self.tuples(n)
        if n <= 2:
            groups: dict = {}
            for t in tuples:
                groups.setdefault(self.key2(*t) if n == 2 else t, []).append(t)
            rel = {t: frozenset(groups[self.key2(*t) if n == 2 else t]) for t in tuples}
        else:
            lower = self.standard_related(n - 1)
            labels: dict[tuple[int, ...], set] = {}
            holders: dict = {}
            for t in tuples:
                tags = set()
                for v in lower[t[1:]]:
                    tags.add((v[1:], self.key2(t[0], v[0])))
                labels[t] = tags
                for tag in tags:
                    holders.setdefault(tag, set()).add(t)
            rel = {t: frozenset().union(*(holders[g] for g in labels[t])) for t in tuples}
        self._standard[n] = rel
        return rel

    def sg_standard_isometry(self, phi: Sequence[int], psi: Sequence[int]) -> bool:
        s, t = self.classes_of(phi), self.classes_of(psi)
        if len(s) != len(t):
            raise UsageError("forms have different lengths")
        if not s:
            return True
        return t in self.standard_related(len(s))[s]

    def standard_is_transitive(self, n: int) -> bool:
        rel = self.standard_related(n)
        return all(rel[u] <= rel[t] for t in rel for u in rel[t])

    def standard_coincides(self, n: int) -> bool:
        """Standard relation equals the closure relation on all class tuples."""
        rel = self.standard_related(n)
        return all(
            (u in rel[t]) == self.isometric_classes(t, u)
            for t in rel for u in rel
        )


def classes_manifest(ctx: IsometryContext, n: int, members: bool = False) -> dict:
    blocks = ctx.witt_classes(n)
    out = {
        "kind": "isometry-classes",
        "pair": ctx.pair.name,
        "n": n,
        "quotient_size": ctx.Q.n,
        "class_count": len(blocks),
        "classes": [],
    }
    for b in blocks:
        entry = {"representative": ctx.class_labels(b[0]), "members_count": len(b)}
        if members:
            entry["members"] = [ctx.class_labels(t) for t in b]
        out["classes"].append(entry)
    return out
