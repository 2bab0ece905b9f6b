"""Checkers for pq-multirings, pre-special multifields and real reduced
multirings / multifields."""

from __future__ import annotations

from itertools import product as cartesian

from ..core import FiniteMultiring, UsageError, check_multiring
from ..report import Report, first, law


def _cube(M: FiniteMultiring, x: int) -> int:
    return M.mul[M.mul[x][x]][x]


def check_pq(M: FiniteMultiring) -> Report:
    units = M.units()
    rep = Report(f"{M.name}: pq-multiring")
    rep.add(law("x^3 = x", "PQt", first({"x": x} for x in M.elements if _cube(M, x) != x)))
    rep.add(law("y in x - x for units x, y", "PQh", first(
        {"x": x, "y": y} for x, y in cartesian(units, repeat=2) if y not in M.add[x][M.neg[x]])))
    return rep


def is_pq_multiring(M: FiniteMultiring) -> bool:
    return check_multiring(M).is_multiring and check_pq(M).ok


def _fps_ii(M: FiniteMultiring, units: list[int]) -> dict | None:
    add, mul = M.add, M.mul
    for a, b in cartesian(units, repeat=2):
        p = mul[a][b]
        for c, d in cartesian(units, repeat=2):
            if mul[c][d] != p or a not in add[c][d]:
                continue
            for e, f in cartesian(units, repeat=2):
                if mul[e][f] == p and c in add[e][f] and a not in add[e][f]:
                    return {"a": a, "b": b, "c": c, "d": d, "e": e, "f": f}
    return None


def pre_special_laws(M: FiniteMultiring) -> Report:
    """Both pre-special clauses over unit tuples, without the multifield gate."""
    units = M.units()
    add, mul = M.add, M.mul
    rep = Report(f"{M.name}: pre-special")
    rep.add(law("ab = cd, a in c + d => c in a + b", "PQfps-i", first(
        {"a": a, "b": b, "c": c, "d": d} for a, b, c, d in cartesian(units, repeat=4)
        if mul[a][b] == mul[c][d] and a in add[c][d] and c not in add[a][b])))
    rep.add(law("ab = cd = ef, a in c + d, c in e + f => a in e + f", "PQfps-ii", _fps_ii(M, units)))
    return rep


def check_pre_special(M: FiniteMultiring) -> Report:
    if not check_multiring(M).is_multifield:
        raise UsageError(f"{M.name} is not a multifield; pre-special is defined for multifields only")
    return pre_special_laws(M)


def check_rr_multifield(M: FiniteMultiring) -> Report:
    rep = Report(f"{M.name}: real reduced multifield")
    rep.add(law("a^3 = a", "RRF-i", first({"a": a} for a in M.elements if _cube(M, a) != a)))
    rep.add(law("a in 1 + 1 => a = 1", "RRF-ii", first(
        {"a": a} for a in sorted(M.add[M.one][M.one]) if a != M.one)))
    return rep


def check_rr_multiring(M: FiniteMultiring) -> Report:
    add, mul = M.add, M.mul
    els = M.elements
    rep = Report(f"{M.name}: real reduced multiring")
    rep.add(law("1 != 0", "RR-i", None if M.one != M.zero else {}))
    rep.add(law("a^3 = a", "RR-ii", first({"a": a} for a in els if _cube(M, a) != a)))
    rep.add(law("c in a + ab^2 => c = a", "RR-iii", first(
        {"a": a, "b": b, "c": c} for a, b in cartesian(els, repeat=2)
        for c in sorted(add[a][mul[mul[a][b]][b]]) if c != a)))

    def single_valued():
        for a, b in cartesian(els, repeat=2):
            cell = sorted(add[mul[a][a]][mul[b][b]])
            if len(cell) > 1:
                return {"a": a, "b": b, "c": cell[0], "d": cell[1]}
        return None

    rep.add(law("c, d in a^2 + b^2 => c = d", "RR-iv", single_valued()))
    return rep
