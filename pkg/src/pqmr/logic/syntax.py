"""Terms and formulas of the multiring language.

Addition appears only as the ternary relation ``InSum(l, r, e)`` (e is in
l + r); negation and product are function symbols. ``InS`` is the extra
unary predicate of the pair language.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


class _TermOps:
    def __mul__(self, other: "Term") -> "Mul":
        return Mul(self, other)  # type: ignore[arg-type]

    def __neg__(self) -> "Neg":
        return Neg(self)  # type: ignore[arg-type]


@dataclass(frozen=True)
class Var(_TermOps):
    index: int

    @property
    def name(self) -> str:
        return f"x{self.index}"


@dataclass(frozen=True)
class Zero(_TermOps):
    pass


@dataclass(frozen=True)
class One(_TermOps):
    pass


@dataclass(frozen=True)
class Neg(_TermOps):
    arg: "Term"


@dataclass(frozen=True)
class Mul(_TermOps):
    left: "Term"
    right: "Term"


Term = Union[Var, Zero, One, Neg, Mul]


@dataclass(frozen=True)
class Eq:
    left: Term
    right: Term


@dataclass(frozen=True)
class InSum:
    left: Term
    right: Term
    elem: Term


@dataclass(frozen=True)
class InS:
    arg: Term


Atomic = Union[Eq, InSum, InS]


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Implies:
    premise: "Formula"
    conclusion: "Formula"


@dataclass(frozen=True)
class Exists:
    vars: tuple[int, ...]
    body: "Formula"


@dataclass(frozen=True)
class Forall:
    vars: tuple[int, ...]
    body: "Formula"


Formula = Union[Eq, InSum, InS, Not, And, Or, Implies, Exists, Forall]

TRUE = And(())
FALSE = Or(())
ATOMS = (Eq, InSum, InS)


# -- builders used by the axiom catalog

def v(*indices: int) -> tuple[Var, ...]:
    return tuple(Var(i) for i in indices)


def conj(*parts: Formula) -> Formula:
    return parts[0] if len(parts) == 1 else And(tuple(parts))


def forall(vs: tuple[Var, ...], body: Formula) -> Forall:
    return Forall(tuple(x.index for x in vs), body)


def exists(vs: tuple[Var, ...], body: Formula) -> Exists:
    return Exists(tuple(x.index for x in vs), body)


def ne(a: Term, b: Term) -> Not:
    return Not(Eq(a, b))


def unit(x: Var, witness: Var) -> Exists:
    """x is invertible: exists w (x*w = 1)."""
    return Exists((witness.index,), Eq(Mul(x, witness), One()))


# -- traversal

def term_vars(t: Term) -> Iterator[int]:
    if isinstance(t, Var):
        yield t.index
    elif isinstance(t, Neg):
        yield from term_vars(t.arg)
    elif isinstance(t, Mul):
        yield from term_vars(t.left)
        yield from term_vars(t.right)


def free_vars(phi: Formula) -> frozenset[int]:
    if isinstance(phi, Eq):
        return frozenset(term_vars(phi.left)) | frozenset(term_vars(phi.right))
    if isinstance(phi, InSum):
        return frozenset(term_vars(phi.left)) | frozenset(term_vars(phi.right)) | frozenset(term_vars(phi.elem))
    if isinstance(phi, InS):
        return frozenset(term_vars(phi.arg))
    if isinstance(phi, Not):
        return free_vars(phi.body)
    if isinstance(phi, (And, Or)):
        return frozenset().union(*(free_vars(p) for p in phi.parts))
    if isinstance(phi, Implies):
        return free_vars(phi.premise) | free_vars(phi.conclusion)
    if isinstance(phi, (Exists, Forall)):
        return free_vars(phi.body) - set(phi.vars)
    raise TypeError(f"not a formula: {phi!r}")


def uses_S(phi: Formula) -> bool:
    if isinstance(phi, InS):
        return True
    if isinstance(phi, (Eq, InSum)):
        return False
    if isinstance(phi, Not):
        return uses_S(phi.body)
    if isinstance(phi, (And, Or)):
        return any(uses_S(p) for p in phi.parts)
    if isinstance(phi, Implies):
        return uses_S(phi.premise) or uses_S(phi.conclusion)
    return uses_S(phi.body)


def is_sentence(phi: Formula) -> bool:
    return not free_vars(phi)


def depth(phi: Formula) -> int:
    """Quantifier nesting depth."""
    if isinstance(phi, ATOMS):
        return 0
    if isinstance(phi, Not):
        return depth(phi.body)
    if isinstance(phi, (And, Or)):
        return max((depth(p) for p in phi.parts), default=0)
    if isinstance(phi, Implies):
        return max(depth(phi.premise), depth(phi.conclusion))
    return 1 + depth(phi.body)


# -- shape classifiers

def is_atomic(phi: Formula) -> bool:
    return isinstance(phi, ATOMS)


def is_pp(phi: Formula) -> bool:
    """Positive primitive: built from atomics by conjunction and exists."""
    if is_atomic(phi):
        return True
    if isinstance(phi, And):
        return all(is_pp(p) for p in phi.parts)
    if isinstance(phi, Exists):
        return is_pp(phi.body)
    return False


def strip_universals(phi: Formula) -> Formula:
    while isinstance(phi, Forall):
        phi = phi.body
    return phi


def is_horn_geometric(phi: Formula) -> bool:
    """A closed sentence forall x (pp -> pp), forall x pp, or forall x ~atomic."""
    if not is_sentence(phi):
        return False
    body = strip_universals(phi)
    if isinstance(body, Implies):
        return is_pp(body.premise) and is_pp(body.conclusion)
    if isinstance(body, Not):
        return is_atomic(body.body)
    return is_pp(body)
