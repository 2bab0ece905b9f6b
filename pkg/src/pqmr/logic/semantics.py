"""Brute-force Tarskian evaluation over finite multirings and finite pairs.

Practical bound: carriers up to about 8 elements with quantifier depth 4;
the catalog axioms use at most six universally quantified variables.
"""

from __future__ import annotations

from itertools import product as cartesian
from typing import Callable, Mapping

from ..core import FiniteMultiring, UsageError
from .syntax import (
    And, Eq, Exists, Forall, Formula, Implies, InS, InSum, Mul, Neg, Not, One, Or, Term, Var,
    Zero, free_vars,
)

Env = list  # slot per variable index; -1 means unbound


class EvaluationError(UsageError):
    pass


def _unpack(model) -> tuple[FiniteMultiring, frozenset[int] | None]:
    if isinstance(model, FiniteMultiring):
        return model, None
    base, S = getattr(model, "base", None), getattr(model, "S", None)
    if isinstance(base, FiniteMultiring) and S is not None:
        return base, frozenset(S)
    raise EvaluationError(f"cannot evaluate over {type(model).__name__}")


def _compile_term(M: FiniteMultiring, t: Term) -> Callable[[Env], int]:
    if isinstance(t, Var):
        i = t.index

        def get(env: Env) -> int:
            x = env[i]
            if x < 0:
                raise EvaluationError(f"unbound variable x{i}")
            return x
        return get
    if isinstance(t, Zero):
        z = M.zero
        return lambda env: z
    if isinstance(t, One):
        o = M.one
        return lambda env: o
    if isinstance(t, Neg):
        f, neg = _compile_term(M, t.arg), M.neg
        return lambda env: neg[f(env)]
    if isinstance(t, Mul):
        f, g, mul = _compile_term(M, t.left), _compile_term(M, t.right), M.mul
        return lambda env: mul[f(env)][g(env)]
    raise TypeError(f"not a term: {t!r}")


def _quantify(M: FiniteMultiring, vars_: tuple[int, ...], body, want_all: bool):
    els = tuple(M.elements)

    def run(env: Env) -> bool:
        saved = [env[i] for i in vars_]
        try:
            for values in cartesian(els, repeat=len(vars_)):
                for i, x in zip(vars_, values):
                    env[i] = x
                if body(env) != want_all:
                    return not want_all
            return want_all
        finally:
            for i, x in zip(vars_, saved):
                env[i] = x
    return run


def _compile(M: FiniteMultiring, S: frozenset[int] | None, phi: Formula) -> Callable[[Env], bool]:
    if isinstance(phi, Eq):
        f, g = _compile_term(M, phi.left), _compile_term(M, phi.right)
        return lambda env: f(env) == g(env)
    if isinstance(phi, InSum):
        f, g, h, add = (_compile_term(M, phi.left), _compile_term(M, phi.right),
                        _compile_term(M, phi.elem), M.add)
        return lambda env: h(env) in add[f(env)][g(env)]
    if isinstance(phi, InS):
        if S is None:
            raise EvaluationError("S(...) atom evaluated over a bare multiring")
        f = _compile_term(M, phi.arg)
        return lambda env: f(env) in S
    if isinstance(phi, Not):
        f = _compile(M, S, phi.body)
        return lambda env: not f(env)
    if isinstance(phi, And):
        fs = [_compile(M, S, p) for p in phi.parts]
        return lambda env: all(f(env) for f in fs)
    if isinstance(phi, Or):
        fs = [_compile(M, S, p) for p in phi.parts]
        return lambda env: any(f(env) for f in fs)
    if isinstance(phi, Implies):
        f, g = _compile(M, S, phi.premise), _compile(M, S, phi.conclusion)
        return lambda env: (not f(env)) or g(env)
    if isinstance(phi, Exists):
        return _quantify(M, phi.vars, _compile(M, S, phi.body), want_all=False)
    if isinstance(phi, Forall):
        return _quantify(M, phi.vars, _compile(M, S, phi.body), want_all=True)
    raise TypeError(f"not a formula: {phi!r}")


def _slots(phi: Formula, env: Mapping[int, int]) -> Env:
    size = 1 + max([-1, *_all_vars(phi), *env])
    slots = [-1] * size
    for i, x in env.items():
        slots[i] = x
    return slots


def _all_vars(phi: Formula) -> set[int]:
    out: set[int] = set(free_vars(phi))
    stack = [phi]
    while stack:
        p = stack.pop()
        if isinstance(p, (Exists, Forall)):
            out.update(p.vars)
            stack.append(p.body)
        elif isinstance(p, Not):
            stack.append(p.body)
        elif isinstance(p, (And, Or)):
            stack.extend(p.parts)
        elif isinstance(p, Implies):
            stack.extend((p.premise, p.conclusion))
    return out


def evaluate(model, phi: Formula, env: Mapping[int, int] | None = None) -> bool:
    """Truth of phi in a FiniteMultiring or finite pair under env (var index -> element)."""
    M, S = _unpack(model)
    env = dict(env or {})
    missing = free_vars(phi) - set(env)
    if missing:
        raise EvaluationError("unbound variable(s): " + ", ".join(f"x{i}" for i in sorted(missing)))
    for i, x in env.items():
        if not 0 <= x < M.n:
            raise EvaluationError(f"x{i} bound outside the carrier")
    return _compile(M, S, phi)(_slots(phi, env))


def counterexample(model, sentence: Formula) -> dict[int, int] | None:
    """None if the sentence holds; otherwise the lexicographically first
    assignment to its leading universal variables that falsifies it
    (an empty dict when there are none)."""
    M, S = _unpack(model)
    if free_vars(sentence):
        raise EvaluationError("counterexample() needs a closed sentence")
    vars_: list[int] = []
    body = sentence
    while isinstance(body, Forall):
        vars_.extend(body.vars)
        body = body.body
    f = _compile(M, S, body)
    env = _slots(sentence, {})
    for values in cartesian(tuple(M.elements), repeat=len(vars_)):
        for i, x in zip(vars_, values):
            env[i] = x
        if not f(env):
            return dict(zip(vars_, values))
    return None
