r"""Text syntax for formulas.

Grammar (EBNF)::

    formula     = implication ;
    implication = disjunction [ "->" implication ] ;
    disjunction = conjunction { "|" conjunction } ;
    conjunction = unary { "&" unary } ;
    unary       = "~" unary
                | ( "forall" | "exists" ) "(" var { "," var } ")" formula
                | "true" | "false"
                | "(" formula ")"
                | atom ;
    atom        = term "=" term
                | term "!=" term
                | term "in" term "+" term
                | "S" "(" term ")" ;
    term        = factor { "*" factor } ;
    factor      = "-" factor | "0" | "1" | var | "(" term ")" ;
    var         = "x" digit { digit } ;

A quantifier's body extends as far to the right as possible. ``t != u``
is sugar for ``~(t = u)``. ``*`` associates to the left.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..core import UsageError
from .syntax import (
    FALSE, TRUE, And, Eq, Exists, Forall, Formula, Implies, InS, InSum, Mul, Neg, Not, One, Or,
    Term, Var, Zero,
)


class ParseError(UsageError):
    def __init__(self, message: str, pos: int, text: str):
        self.pos = pos
        self.text = text
        caret = text + "\n" + " " * pos + "^"
        super().__init__(f"col {pos + 1}: {message}\n{caret}")


_TOKEN = re.compile(r"\s*(->|!=|[()*,=+&|~-]|x\d+|[A-Za-z_]+|\d+)")
_KEYWORDS = {"forall", "exists", "in", "S", "true", "false"}


@dataclass
class _Tok:
    text: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    out, i = [], 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(text, i)
        if not m:
            raise ParseError(f"unexpected character {text[i]!r}", i, text)
        tok = m.group(1)
        start = m.start(1)
        if tok[0].isalpha() and not re.fullmatch(r"x\d+", tok) and tok not in _KEYWORDS:
            raise ParseError(f"unknown word {tok!r}", start, text)
        if tok.isdigit() and tok not in ("0", "1"):
            raise ParseError(f"only the constants 0 and 1 are allowed, got {tok!r}", start, text)
        out.append(_Tok(tok, start))
        i = m.end()
    out.append(_Tok("<end>", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.furthest: ParseError | None = None

    # -- helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message: str) -> ParseError:
        err = ParseError(message, self.tok.pos, self.text)
        if self.furthest is None or err.pos >= self.furthest.pos:
            self.furthest = err
        return err

    def expect(self, s: str) -> None:
        if self.tok.text != s:
            raise self.error(f"expected {s!r}, found {self.tok.text!r}")
        self.i += 1

    def accept(self, s: str) -> bool:
        if self.tok.text == s:
            self.i += 1
            return True
        return False

    # -- formulas
    def formula(self) -> Formula:
        left = self.disjunction()
        if self.accept("->"):
            return Implies(left, self.formula())
        return left

    def disjunction(self) -> Formula:
        parts = [self.conjunction()]
        while self.accept("|"):
            parts.append(self.conjunction())
        return parts[0] if len(parts) == 1 else Or(tuple(parts))

    def conjunction(self) -> Formula:
        parts = [self.unary()]
        while self.accept("&"):
            parts.append(self.unary())
        return parts[0] if len(parts) == 1 else And(tuple(parts))

    def unary(self) -> Formula:
        t = self.tok.text
        if self.accept("~"):
            return Not(self.unary())
        if t in ("forall", "exists"):
            self.i += 1
            self.expect("(")
            vs = [self.var().index]
            while self.accept(","):
                vs.append(self.var().index)
            self.expect(")")
            body = self.formula()
            return (Forall if t == "forall" else Exists)(tuple(vs), body)
        if self.accept("true"):
            return TRUE
        if self.accept("false"):
            return FALSE
        if t == "(":
            save = self.i
            try:
                self.i += 1
                inner = self.formula()
                self.expect(")")
                if self.tok.text not in ("=", "!=", "in", "*"):
                    return inner
            except ParseError:
                pass
            self.i = save
        return self.atom()

    def atom(self) -> Formula:
        if self.accept("S"):
            self.expect("(")
            arg = self.term()
            self.expect(")")
            return InS(arg)
        left = self.term()
        if self.accept("="):
            return Eq(left, self.term())
        if self.accept("!="):
            return Not(Eq(left, self.term()))
        if self.accept("in"):
            a = self.term()
            self.expect("+")
            return InSum(a, self.term(), left)
        raise self.error(f"expected '=', '!=' or 'in', found {self.tok.text!r}")

    # -- terms
    def term(self) -> Term:
        t = self.factor()
        while self.accept("*"):
            t = Mul(t, self.factor())
        return t

    def factor(self) -> Term:
        if self.accept("-"):
            return Neg(self.factor())
        if self.accept("0"):
            return Zero()
        if self.accept("1"):
            return One()
        if self.tok.text.startswith("x") and self.tok.text[1:].isdigit():
            return self.var()
        if self.accept("("):
            t = self.term()
            self.expect(")")
            return t
        raise self.error(f"expected a term, found {self.tok.text!r}")

    def var(self) -> Var:
        t = self.tok.text
        if not re.fullmatch(r"x\d+", t):
            raise self.error(f"expected a variable, found {t!r}")
        self.i += 1
        return Var(int(t[1:]))


def parse(text: str) -> Formula:
    p = _Parser(text)
    try:
        phi = p.formula()
        if p.tok.text != "<end>":
            raise p.error(f"unexpected {p.tok.text!r} after formula")
    except ParseError as e:
        raise (p.furthest if p.furthest is not None and p.furthest.pos > e.pos else e) from None
    return phi


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    if p.tok.text != "<end>":
        raise p.error(f"unexpected {p.tok.text!r} after term")
    return t


# -- printing (inverse of parse up to And/Or flattening)

def term_text(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Neg):
        inner = term_text(t.arg)
        return f"-({inner})" if isinstance(t.arg, Mul) else f"-{inner}"
    if isinstance(t, Mul):
        right = term_text(t.right)
        if isinstance(t.right, Mul):
            right = f"({right})"
        return f"{term_text(t.left)}*{right}"
    raise TypeError(f"not a term: {t!r}")


def to_text(phi: Formula) -> str:
    if isinstance(phi, Eq):
        return f"{term_text(phi.left)} = {term_text(phi.right)}"
    if isinstance(phi, InSum):
        return f"{term_text(phi.elem)} in {term_text(phi.left)} + {term_text(phi.right)}"
    if isinstance(phi, InS):
        return f"S({term_text(phi.arg)})"
    if isinstance(phi, Not):
        return f"~({to_text(phi.body)})"
    if isinstance(phi, And):
        if not phi.parts:
            return "true"
        if len(phi.parts) == 1:
            return to_text(phi.parts[0])
        return "(" + " & ".join(to_text(p) for p in phi.parts) + ")"
    if isinstance(phi, Or):
        if not phi.parts:
            return "false"
        if len(phi.parts) == 1:
            return to_text(phi.parts[0])
        return "(" + " | ".join(to_text(p) for p in phi.parts) + ")"
    if isinstance(phi, Implies):
        return f"({to_text(phi.premise)} -> {to_text(phi.conclusion)})"
    if isinstance(phi, (Exists, Forall)):
        q = "forall" if isinstance(phi, Forall) else "exists"
        vs = ", ".join(f"x{i}" for i in phi.vars)
        return f"({q} ({vs}) {to_text(phi.body)})"
    raise TypeError(f"not a formula: {phi!r}")
