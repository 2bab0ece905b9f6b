"""Instance check: every multiring with x^3 = x that is real reduced is also
hyperbolic, tested over an enumerated corpus."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..core import FiniteMultiring, check_multiring
from .checks import check_pq, check_rr_multiring
from .corpus import CorpusSpec, enumerate_corpus


@dataclass
class PropositionReport:
    examined: int = 0
    hypothesis_holds: list[str] = field(default_factory=list)
    counterexamples: list[tuple[str, dict]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "proposition": "PQt and real reduced imply PQh",
            "examined": self.examined,
            "satisfying_hypothesis": self.hypothesis_holds,
            "counterexamples": [{"structure": n, "witness": w} for n, w in self.counterexamples],
            "verdict": "no counterexample" if self.ok else "counterexample found",
        }


def check_pqt_rr_implies_pqh(corpus: CorpusSpec | Sequence[FiniteMultiring] = CorpusSpec()) -> PropositionReport:
    structures = enumerate_corpus(corpus) if isinstance(corpus, CorpusSpec) else list(corpus)
    rep = PropositionReport()
    for M in structures:
        if not check_multiring(M).is_multiring:
            continue
        rep.examined += 1
        pq = check_pq(M)
        if not (pq["x^3 = x"].holds and check_rr_multiring(M).ok):
            continue
        rep.hypothesis_holds.append(M.name)
        pqh = pq["y in x - x for units x, y"]
        if not pqh.holds:
            rep.counterexamples.append((M.name, dict(pqh.witness or {})))
    return rep
