"""Formulas of the trimodal language of knowledge (K), knowability (box), belief (B).

The AST is a small family of frozen dataclasses.  The surface syntax is
ASCII only; `hatK`, `dia` and `hatB` are parser sugar for the dual
modalities and are stored desugared as not-op-not.  The printer resugars
those patterns, so parse/to_text round-trip on the desugared form.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Mapping


class FormulaError(Exception):
    """Bad formula-level input (unknown scheme, missing metavariable...)."""


class ParseError(FormulaError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


@dataclass(frozen=True)
class Formula:
    """Base class; every node is one of the variants below."""

    def __and__(self, other: "Formula") -> "Formula":
        return And(self, other)

    def __or__(self, other: "Formula") -> "Formula":
        return Or(self, other)

    def __invert__(self) -> "Formula":
        return Not(self)

    def __rshift__(self, other: "Formula") -> "Formula":
        return Implies(self, other)

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class K(Formula):
    sub: Formula


@dataclass(frozen=True)
class Box(Formula):
    sub: Formula


@dataclass(frozen=True)
class Bel(Formula):
    sub: Formula


@dataclass(frozen=True)
class Meta(Formula):
    """Metavariable; only legal inside scheme templates."""

    name: str


def hat_k(f: Formula) -> Formula:
    """hatK f, stored as !K!f."""
    return Not(K(Not(f)))


def dia(f: Formula) -> Formula:
    """dia f, stored as !box!f."""
    return Not(Box(Not(f)))


def hat_b(f: Formula) -> Formula:
    """hatB f, stored as !B!f."""
    return Not(Bel(Not(f)))


TOP = Top()
BOT = Bot()

ATOM_RE = re.compile(r"[a-z][a-z0-9_]*\Z")

_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_KEYWORDS = {"K", "B", "box", "dia", "hatK", "hatB", "true", "false"}
_SYMBOLS = ("<->", "->", "|", "&", "!", "~", "(", ")")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Yield (kind, value, offset) triples; kinds: word, sym, end."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _WORD_RE.match(text, i)
        if m:
            tokens.append(("word", m.group(), i))
            i = m.end()
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(("sym", sym, i))
                i += len(sym)
                break
        else:
            raise ParseError(f"unknown operator token {text[i]!r}", i)
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_sym(self, sym: str) -> None:
        kind, value, offset = self.peek()
        if kind != "sym" or value != sym:
            raise ParseError(f"expected {sym!r}", offset)
        self.advance()

    def at_sym(self, sym: str) -> bool:
        kind, value, _ = self.peek()
        return kind == "sym" and value == sym

    # precedence low -> high: <->, ->, |, &, unary; -> and <-> right-associative
    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        parts = [self.imp()]
        while self.at_sym("<->"):
            self.advance()
            parts.append(self.imp())
        out = parts[-1]
        for part in reversed(parts[:-1]):
            out = Iff(part, out)
        return out

    def imp(self) -> Formula:
        left = self.disj()
        if self.at_sym("->"):
            self.advance()
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        out = self.conj()
        while self.at_sym("|"):
            self.advance()
            out = Or(out, self.conj())
        return out

    def conj(self) -> Formula:
        out = self.unary()
        while self.at_sym("&"):
            self.advance()
            out = And(out, self.unary())
        return out

    _UNARY: dict[str, Callable[[Formula], Formula]] = {
        "K": K,
        "B": Bel,
        "box": Box,
        "dia": dia,
        "hatK": hat_k,
        "hatB": hat_b,
    }

    def unary(self) -> Formula:
        kind, value, offset = self.peek()
        if kind == "sym" and value in ("!", "~"):
            self.advance()
            return Not(self.unary())
        if kind == "word" and value in self._UNARY:
            self.advance()
            return self._UNARY[value](self.unary())
        return self.atom()

    def atom(self) -> Formula:
        kind, value, offset = self.advance()
        if kind == "word":
            if value == "true":
                return TOP
            if value == "false":
                return BOT
            if ATOM_RE.match(value):
                return Atom(value)
            raise ParseError(f"unknown operator token {value!r}", offset)
        if kind == "sym" and value == "(":
            inner = self.formula()
            self.expect_sym(")")
            return inner
        raise ParseError("expected a formula", offset)


def parse(text: str) -> Formula:
    """Parse the ASCII surface syntax into a (desugared) Formula."""
    p = _Parser(text)
    out = p.formula()
    kind, value, offset = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {value!r}", offset)
    return out


_PREC_IFF, _PREC_IMP, _PREC_OR, _PREC_AND, _PREC_UNARY = 1, 2, 3, 4, 5


def _resugar(f: Formula) -> tuple[str, Formula] | None:
    if isinstance(f, Not):
        inner = f.sub
        if isinstance(inner, K) and isinstance(inner.sub, Not):
            return "hatK", inner.sub.sub
        if isinstance(inner, Box) and isinstance(inner.sub, Not):
            return "dia", inner.sub.sub
        if isinstance(inner, Bel) and isinstance(inner.sub, Not):
            return "hatB", inner.sub.sub
    return None


def _render(f: Formula, context: int) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Meta):
        return f.name
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bot):
        return "false"
    sugar = _resugar(f)
    if sugar is not None:
        text = f"{sugar[0]} {_render(sugar[1], _PREC_UNARY)}"
        prec = _PREC_UNARY
    elif isinstance(f, Not):
        text = f"! {_render(f.sub, _PREC_UNARY)}"
        prec = _PREC_UNARY
    elif isinstance(f, K):
        text = f"K {_render(f.sub, _PREC_UNARY)}"
        prec = _PREC_UNARY
    elif isinstance(f, Box):
        text = f"box {_render(f.sub, _PREC_UNARY)}"
        prec = _PREC_UNARY
    elif isinstance(f, Bel):
        text = f"B {_render(f.sub, _PREC_UNARY)}"
        prec = _PREC_UNARY
    elif isinstance(f, And):
        text = f"{_render(f.left, _PREC_AND)} & {_render(f.right, _PREC_AND + 1)}"
        prec = _PREC_AND
    elif isinstance(f, Or):
        text = f"{_render(f.left, _PREC_OR)} | {_render(f.right, _PREC_OR + 1)}"
        prec = _PREC_OR
    elif isinstance(f, Implies):
        text = f"{_render(f.left, _PREC_IMP + 1)} -> {_render(f.right, _PREC_IMP)}"
        prec = _PREC_IMP
    elif isinstance(f, Iff):
        text = f"{_render(f.left, _PREC_IFF + 1)} <-> {_render(f.right, _PREC_IFF)}"
        prec = _PREC_IFF
    else:
        raise FormulaError(f"not a formula node: {f!r}")
    if prec < context:
        return f"({text})"
    return text


def to_text(f: Formula) -> str:
    """Canonical rendering; round-trips through parse."""
    return _render(f, _PREC_IFF)


def subformulas(f: Formula) -> frozenset[Formula]:
    """The formula and all of its descendants, deduplicated structurally."""
    out: set[Formula] = set()
    stack = [f]
    while stack:
        g = stack.pop()
        if g in out:
            continue
        out.add(g)
        stack.extend(_children(g))
    return frozenset(out)


def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, (Not, K, Box, Bel)):
        return (f.sub,)
    if isinstance(f, (And, Or, Implies, Iff)):
        return (f.left, f.right)
    return ()


def _map_nodes(f: Formula, fn: Callable[[Formula], Formula | None]) -> Formula:
    """Rebuild bottom-up; fn may replace a node (given its rebuilt children)."""
    if isinstance(f, (Not, K, Box, Bel)):
        g = type(f)(_map_nodes(f.sub, fn))
    elif isinstance(f, (And, Or, Implies, Iff)):
        g = type(f)(_map_nodes(f.left, fn), _map_nodes(f.right, fn))
    else:
        g = f
    replaced = fn(g)
    return g if replaced is None else replaced


T_MAP = "T"
E_MAP = "E"
ALPHA_MAP = "ALPHA"


def translate(f: Formula, mapping: str) -> Formula:
    """Apply one of the named operator-replacement maps.

    T      every box phi becomes K phi (the result reads in the K/B fragment)
    E      every B phi becomes K dia box phi (eliminates B)
    ALPHA  every B phi becomes B dia box phi (keeps B, innermost first)
    """
    if mapping == T_MAP:
        return _map_nodes(f, lambda g: K(g.sub) if isinstance(g, Box) else None)
    if mapping == E_MAP:
        return _map_nodes(f, lambda g: K(dia(Box(g.sub))) if isinstance(g, Bel) else None)
    if mapping == ALPHA_MAP:
        return _map_nodes(f, lambda g: Bel(dia(Box(g.sub))) if isinstance(g, Bel) else None)
    raise FormulaError(f"unknown translation map {mapping!r}")


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in subformulas(f) if isinstance(g, Atom))


def modalities(f: Formula) -> frozenset[str]:
    out = set()
    for g in subformulas(f):
        if isinstance(g, K):
            out.add("K")
        elif isinstance(g, Box):
            out.add("box")
        elif isinstance(g, Bel):
            out.add("B")
    return frozenset(out)


def modal_depth(f: Formula) -> int:
    if isinstance(f, (K, Box, Bel)):
        return 1 + modal_depth(f.sub)
    kids = _children(f)
    return max((modal_depth(g) for g in kids), default=0)


@dataclass(frozen=True)
class Scheme:
    """An axiom scheme: a template over metavariables phi, psi."""

    name: str
    template: Formula

    def metavariables(self) -> frozenset[str]:
        return frozenset(g.name for g in subformulas(self.template) if isinstance(g, Meta))


def instantiate(scheme: Scheme, subst: Mapping[str, Formula]) -> Formula:
    """Homomorphic substitution of every metavariable in the template."""
    missing = scheme.metavariables() - set(subst)
    if missing:
        raise FormulaError(f"scheme {scheme.name}: no binding for {sorted(missing)}")

    def swap(g: Formula) -> Formula | None:
        if isinstance(g, Meta):
            return subst[g.name]
        return None

    return _map_nodes(scheme.template, swap)


PHI = Meta("phi")
PSI = Meta("psi")

_STAR_OPS: dict[str, Callable[[Formula], Formula]] = {"K": K, "box": Box, "B": Bel}


def _star_schemes() -> dict[str, Scheme]:
    out = {}
    for star, op in _STAR_OPS.items():
        out[f"K_{star}"] = Scheme(
            f"K_{star}", Implies(op(Implies(PHI, PSI)), Implies(op(PHI), op(PSI)))
        )
        out[f"D_{star}"] = Scheme(f"D_{star}", Implies(op(PHI), Not(op(Not(PHI)))))
        out[f"T_{star}"] = Scheme(f"T_{star}", Implies(op(PHI), PHI))
        out[f"4_{star}"] = Scheme(f"4_{star}", Implies(op(PHI), op(op(PHI))))
        out[f".2_{star}"] = Scheme(
            f".2_{star}", Implies(Not(op(Not(op(PHI)))), op(Not(op(Not(PHI)))))
        )
        out[f"5_{star}"] = Scheme(f"5_{star}", Implies(Not(op(PHI)), op(Not(op(PHI)))))
    return out


SCHEMES: dict[str, Scheme] = {
    **_star_schemes(),
    # knowledge/belief bridges
    "sPI": Scheme("sPI", Implies(Bel(PHI), K(Bel(PHI)))),
    "sNI": Scheme("sNI", Implies(Not(Bel(PHI)), K(Not(Bel(PHI))))),
    "KB": Scheme("KB", Implies(K(PHI), Bel(PHI))),
    "FB": Scheme("FB", Implies(Bel(PHI), Bel(K(PHI)))),
    "RB": Scheme("RB", Implies(Bel(PHI), Bel(Box(PHI)))),
    "wF": Scheme("wF", Implies(Bel(PHI), dia(PHI))),
    "CB": Scheme("CB", Bel(Or(Box(PHI), Box(Not(Box(PHI)))))),
    "KI": Scheme("KI", Implies(K(PHI), Box(PHI))),
    "EQ": Scheme("EQ", Iff(Bel(PHI), K(dia(Box(PHI))))),
}


def get_scheme(name: str) -> Scheme:
    try:
        return SCHEMES[name]
    except KeyError:
        raise FormulaError(f"unknown scheme {name!r}") from None


def formula_corpus(
    connectives: tuple[str, ...] = ("K", "box", "B"),
    extra_depth3: bool = True,
) -> tuple[Formula, ...]:
    """A fixed, deterministic formula corpus over atoms p, q.

    Complete enumeration of formulas with at most three AST nodes over the
    given modalities, plus a curated batch of deeper (modal depth 3)
    formulas.  Tests and soundness sweeps key their exhaustive claims to
    this list, so its content is versioned: do not reorder casually.
    """
    p, q = Atom("p"), Atom("q")
    ops = [_STAR_OPS[c] for c in connectives]
    size1: list[Formula] = [p, q]
    size2: list[Formula] = [Not(f) for f in size1]
    size2 += [op(f) for op in ops for f in size1]
    size3: list[Formula] = [Not(f) for f in size2]
    size3 += [op(f) for op in ops for f in size2]
    size3 += [cls(a, b) for cls in (And, Or, Implies) for a in size1 for b in size1]
    corpus = size1 + size2 + size3
    if extra_depth3:
        deep: list[Formula] = []
        for op1 in ops:
            for op2 in ops:
                for op3 in ops:
                    deep.append(op1(op2(op3(p))))
        deep.append(Not(ops[0](Not(ops[-1](And(p, q))))))
        deep.append(Implies(ops[-1](p), ops[0](Not(ops[-1](Not(q))))))
        corpus += deep
    seen: dict[Formula, None] = dict.fromkeys(corpus)
    return tuple(seen)
