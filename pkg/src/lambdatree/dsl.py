"""Parser for the textual word/expression language.

Grammar (whitespace separates items)::

    expr  := item*
    item  := atom ('^' INT)?
    atom  := IDENT | '(' expr ')' | 'tail' '(' key '=' value (',' key '=' value)* ')'
           | '1' | 'ε'

An identifier that is not itself a known symbol is split greedily into
known symbols, so ``ab`` reads as ``a b`` over the alphabet ``{a, b}``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Collection, Union


class ParseError(ValueError):
    pass


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Group:
    items: tuple[Item, ...]


@dataclass(frozen=True)
class TailSpec:
    front: str
    back: str
    delta: int = 0


Atom = Union[Sym, Group, TailSpec]


@dataclass(frozen=True)
class Item:
    atom: Atom
    power: int = 1


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<string>"[^"]*")
      | (?P<int>[+-]?\d+)
      | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<eps>ε)
      | (?P<op>[()^,=])
    )""",
    re.VERBOSE,
)


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind)))
        pos = m.end()
    return tokens


def split_identifier(ident: str, symbols: Collection[str]) -> list[str]:
    if ident in symbols:
        return [ident]
    by_len = sorted(symbols, key=len, reverse=True)

    def go(rest: str) -> list[str] | None:
        if not rest:
            return []
        for sym in by_len:
            if rest.startswith(sym):
                tail = go(rest[len(sym):])
                if tail is not None:
                    return [sym] + tail
        return None

    parts = go(ident)
    if parts is None:
        raise ParseError(f"unknown symbol {ident!r}")
    return parts


class _Parser:
    def __init__(self, text: str, symbols: Collection[str] | None):
        self.tokens = tokenize(text)
        self.i = 0
        self.symbols = symbols

    def peek(self) -> tuple[str, str] | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind: str, value: str | None = None) -> str:
        tok = self.peek()
        if tok is None or tok[0] != kind or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or kind}, got {tok[1] if tok else 'end of input'}")
        self.i += 1
        return tok[1]

    def expr(self, closing: bool = False) -> tuple[Item, ...]:
        items: list[Item] = []
        while True:
            tok = self.peek()
            if tok is None:
                if closing:
                    raise ParseError("unbalanced parentheses")
                break
            if tok == ("op", ")"):
                if not closing:
                    raise ParseError("unbalanced parentheses")
                break
            items.extend(self.item())
        return tuple(items)

    def item(self) -> list[Item]:
        kind, value = self.peek()
        atoms: list[Atom]
        if kind == "ident" and value == "tail" and self._next_is_paren():
            atoms = [self.tail()]
        elif kind == "ident":
            self.i += 1
            names = [value] if self.symbols is None else split_identifier(value, self.symbols)
            atoms = [Sym(n) for n in names]
        elif (kind, value) == ("op", "("):
            self.i += 1
            inner = self.expr(closing=True)
            self.take("op", ")")
            atoms = [Group(inner)]
        elif kind == "eps" or (kind == "int" and value == "1"):
            self.i += 1
            atoms = [Group(())]
        else:
            raise ParseError(f"unexpected token {value!r}")
        power = 1
        if self.peek() == ("op", "^"):
            self.i += 1
            power = int(self.take("int"))
        items = [Item(a) for a in atoms[:-1]]
        items.append(Item(atoms[-1], power))
        return items

    def _next_is_paren(self) -> bool:
        return self.i + 1 < len(self.tokens) and self.tokens[self.i + 1] == ("op", "(")

    def tail(self) -> TailSpec:
        self.take("ident", "tail")
        self.take("op", "(")
        fields: dict[str, str] = {}
        while True:
            key = self.take("ident")
            self.take("op", "=")
            kind, value = self.peek()
            if kind not in ("string", "int"):
                raise ParseError(f"bad value for {key}")
            self.i += 1
            fields[key] = value.strip('"')
            if self.peek() == ("op", ","):
                self.i += 1
                continue
            self.take("op", ")")
            break
        unknown = set(fields) - {"front", "back", "delta"}
        if unknown or "front" not in fields or "back" not in fields:
            raise ParseError("tail needs front= and back= (and optional delta=)")
        return TailSpec(fields["front"], fields["back"], int(fields.get("delta", 0)))


def parse(text: str, symbols: Collection[str] | None = None) -> tuple[Item, ...]:
    p = _Parser(text, symbols)
    items = p.expr()
    if p.peek() is not None:
        raise ParseError(f"trailing input near {p.peek()[1]!r}")
    return items


def flatten(items: tuple[Item, ...]) -> list[tuple[Atom, int]]:
    """Expand groups and powers into a flat list of (Sym | TailSpec, +1/-1)."""
    out: list[tuple[Atom, int]] = []
    for it in items:
        if isinstance(it.atom, Group):
            inner = flatten(it.atom.items)
            if it.power >= 0:
                out.extend(inner * it.power)
            else:
                inv = [(a, -e) for a, e in reversed(inner)]
                out.extend(inv * (-it.power))
        elif it.power >= 0:
            out.extend([(it.atom, 1)] * it.power)
        else:
            out.extend([(it.atom, -1)] * (-it.power))
    return out
