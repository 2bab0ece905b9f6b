"""Verdict containers shared by every checker."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    # Witness search over an infinite carrier ran out of budget.
    NO_WITHIN_BOUND = "no-within-bound"
    UNKNOWN = "unknown"

    @property
    def decided(self) -> bool:
        return self in (Verdict.YES, Verdict.NO)

    @classmethod
    def of(cls, holds: bool) -> "Verdict":
        return cls.YES if holds else cls.NO


@dataclass(frozen=True)
class Law:
    """Outcome of one quantified law.

    ``witness`` maps the law's quantified variables to carrier indices (or
    plain integers for computable pairs) and is present whenever the
    verdict is not YES and a concrete assignment exists.
    """

    name: str
    tag: str
    verdict: Verdict
    witness: Mapping[str, Any] | None = None
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.verdict is Verdict.YES

    def to_dict(self, labels: Sequence[str] | None = None) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "tag": self.tag, "verdict": self.verdict.value}
        if self.witness is not None:
            out["witness"] = {
                k: (labels[v] if labels is not None and isinstance(v, int) else _plain(v))
                for k, v in self.witness.items()
            }
        if self.note:
            out["note"] = self.note
        return out


def _plain(v: Any) -> Any:
    if isinstance(v, (tuple, list, frozenset, set)):
        return [_plain(x) for x in (sorted(v) if isinstance(v, (set, frozenset)) else v)]
    return v


@dataclass
class Report:
    subject: str
    laws: list[Law] = field(default_factory=list)

    def add(self, law: Law) -> Law:
        self.laws.append(law)
        return law

    def extend(self, laws: Iterable[Law]) -> None:
        self.laws.extend(laws)

    def __getitem__(self, key: str) -> Law:
        """First law whose tag or name is ``key``."""
        for law in self.laws:
            if key in (law.tag, law.name):
                return law
        raise KeyError(key)

    def __contains__(self, key: str) -> bool:
        return any(key in (law.tag, law.name) for law in self.laws)

    def all(self, tags: Iterable[str] | None = None) -> bool:
        if tags is None:
            return all(law.holds for law in self.laws)
        tags = set(tags)
        return all(law.holds for law in self.laws if law.tag in tags)

    @property
    def ok(self) -> bool:
        return self.all()

    @property
    def failures(self) -> list[Law]:
        return [law for law in self.laws if not law.holds]

    def to_dict(self, labels: Sequence[str] | None = None) -> dict[str, Any]:
        return {
            "subject": self.subject,
            "ok": self.ok,
            "laws": [law.to_dict(labels) for law in self.laws],
        }

    def summary(self) -> str:
        lines = [f"{self.subject}: {'pass' if self.ok else 'FAIL'}"]
        for law in self.laws:
            mark = {"yes": "ok", "no": "FAIL"}.get(law.verdict.value, law.verdict.value)
            extra = f"  witness={dict(law.witness)}" if law.witness else ""
            lines.append(f"  [{mark}] {law.tag} {law.name}{extra}")
        return "\n".join(lines)


def first(it: Iterable[Any]) -> Any:
    """First element of an iterable, or None."""
    for x in it:
        return x
    return None


def law(name: str, tag: str, witness: Mapping[str, Any] | None, note: str = "") -> Law:
    """Law from a lexicographically-first counterexample (None means it holds)."""
    return Law(name, tag, Verdict.of(witness is None), None if witness is None else dict(witness), note)
