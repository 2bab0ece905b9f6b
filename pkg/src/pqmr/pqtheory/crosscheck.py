"""Two independent verdict paths per theory: the hand-written checkers and
the logic evaluator run on the axiom catalog. They must agree law by law."""

from __future__ import annotations

from dataclasses import dataclass

from ..core import FiniteMultiring, UsageError, check_multiring
from ..logic import PAIR_THEORIES, Axiom, counterexample, named_axioms
from ..logic.parser import to_text
from ..report import Law, Report
from .checks import check_pq, check_rr_multifield, check_rr_multiring, pre_special_laws
from .pairs import check_pq_pair

# catalog tag -> hand-written law tag, where they differ
_TAG_ALIASES = {"MF-unit": "multifield"}


def hand_report(model, theory: str) -> Report:
    if theory in PAIR_THEORIES:
        rep = check_pq_pair(model)
        if theory == "pq-pair":
            rep.laws = [l for l in rep.laws if not l.tag.startswith("pPQrr")]
        return rep
    M = model if isinstance(model, FiniteMultiring) else model.base
    if theory in ("multiring", "multifield"):
        rep = check_multiring(M)
        drop = {"multidomain", "hyperring"} | ({"multifield"} if theory == "multiring" else set())
        rep.laws = [l for l in rep.laws if l.tag not in drop]
        return rep
    if theory == "pq":
        return check_pq(M)
    if theory == "rr-multifield":
        return check_rr_multifield(M)
    if theory == "rr-multiring":
        return check_rr_multiring(M)
    if theory == "pre-special":
        units = check_multiring(M)["nonzero elements invertible"]
        rep = pre_special_laws(M)
        rep.laws.insert(0, units)
        return rep
    raise UsageError(f"unknown theory {theory!r}")


@dataclass
class SentenceResult:
    axiom: Axiom
    counterexample: dict[int, int] | None

    @property
    def holds(self) -> bool:
        return self.counterexample is None


@dataclass
class CrossCheck:
    theory: str
    hand: Report
    logic: list[SentenceResult]

    @property
    def hand_ok(self) -> bool:
        return self.hand.ok

    @property
    def logic_ok(self) -> bool:
        return all(r.holds for r in self.logic)

    def disagreements(self) -> list[str]:
        """Tags on which the two paths differ."""
        by_tag: dict[str, bool] = {}
        for r in self.logic:
            tag = _TAG_ALIASES.get(r.axiom.tag, r.axiom.tag)
            by_tag[tag] = by_tag.get(tag, True) and r.holds
        out = []
        for tag, ok in by_tag.items():
            laws = [l for l in self.hand.laws if l.tag == tag]
            hand_ok = all(l.holds for l in laws)  # table-level laws (non-empty sums) have no hand law
            if hand_ok != ok:
                out.append(tag)
        for law in self.hand.laws:
            if law.tag not in by_tag:
                out.append(law.tag)
        if self.hand_ok != self.logic_ok and not out:
            out.append("<overall>")
        return out

    @property
    def agree(self) -> bool:
        return not self.disagreements()

    def to_dict(self, labels) -> dict:
        return {
            "theory": self.theory,
            "hand": self.hand.to_dict(labels),
            "logic": {
                "ok": self.logic_ok,
                "sentences": [
                    {
                        "tag": r.axiom.tag,
                        "name": r.axiom.name,
                        "text": to_text(r.axiom.formula),
                        "verdict": "yes" if r.holds else "no",
                        **({"counterexample": {f"x{k}": labels[v] for k, v in r.counterexample.items()}}
                           if r.counterexample is not None else {}),
                    }
                    for r in self.logic
                ],
            },
            "agree": self.agree,
        }


def logic_results(model, theory: str) -> list[SentenceResult]:
    return [SentenceResult(ax, counterexample(model, ax.formula)) for ax in named_axioms(theory)]


def cross_check(model, theory: str) -> CrossCheck:
    if theory in PAIR_THEORIES and isinstance(model, FiniteMultiring):
        raise UsageError(f"theory {theory!r} needs a pair (a structure with an S field)")
    return CrossCheck(theory, hand_report(model, theory), logic_results(model, theory))


def law_by_tag(rep: Report, tag: str) -> Law:
    return next(l for l in rep.laws if l.tag == tag)
