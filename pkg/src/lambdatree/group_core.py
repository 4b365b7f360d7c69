"""Finitely generated subgroups of CDR(Λ,X) and their Lyndon length function."""

from __future__ import annotations

import hashlib
import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Iterable, Sequence

from . import dsl
from .ordered_group import LambdaElem
from .words import Word, com_length, cyclic_decomposition, doubles_length, product

HEADER = "%lambda-group v1"

Token = tuple[str, int]


class GroupDefError(ValueError):
    pass


class CValueMismatch(AssertionError):
    """|com(f,g)| disagrees with (|f| + |g| - |f^-1 g|) / 2."""


@lru_cache(maxsize=1 << 16)
def cached_com_length(u: Word, v: Word) -> LambdaElem:
    return com_length(u, v)


@lru_cache(maxsize=1 << 16)
def cached_product(u: Word, v: Word) -> Word:
    return product(u, v)


def reduce_tokens(tokens: Iterable[Token]) -> tuple[Token, ...]:
    out: list[Token] = []
    for name, e in tokens:
        if out and out[-1] == (name, -e):
            out.pop()
        else:
            out.append((name, e))
    return tuple(out)


def format_tokens(tokens: Sequence[Token]) -> str:
    if not tokens:
        return "1"
    return " ".join(n if e > 0 else f"{n}^-1" for n, e in tokens)


@dataclass(frozen=True)
class GroupElem:
    word: Word
    expr: tuple[Token, ...] = ()

    @property
    def length(self) -> LambdaElem:
        return self.word.length

    @property
    def expression(self) -> str:
        return format_tokens(self.expr)

    def is_identity(self) -> bool:
        return self.word.is_empty

    def inverse(self) -> GroupElem:
        return GroupElem(self.word.inverse(), tuple((n, -e) for n, e in reversed(self.expr)))

    def __mul__(self, other: GroupElem) -> GroupElem:
        return GroupElem(cached_product(self.word, other.word), reduce_tokens(self.expr + other.expr))

    def __str__(self) -> str:
        return self.expression


@dataclass
class GroupDef:
    alphabet: tuple[str, ...]
    generators: dict[str, Word]
    rank: int
    aliases: dict[str, str] = field(default_factory=dict)
    construction: str | None = None

    def __post_init__(self) -> None:
        self.alphabet = tuple(self.alphabet)
        for name, w in self.generators.items():
            if w.rank != self.rank:
                raise GroupDefError(f"generator {name} has rank {w.rank}, group has rank {self.rank}")

    @property
    def names(self) -> list[str]:
        return list(self.generators)

    def identity(self) -> GroupElem:
        return GroupElem(Word.empty(self.rank))

    def generator(self, name: str, exponent: int = 1) -> GroupElem:
        if name not in self.generators:
            raise GroupDefError(f"unknown generator {name!r}")
        w = self.generators[name]
        return GroupElem(w if exponent > 0 else w.inverse(), ((name, exponent),))

    def tokens(self, expr: str) -> tuple[Token, ...]:
        symbols = set(self.generators) | set(self.aliases)
        try:
            atoms = dsl.flatten(dsl.parse(expr, symbols))
        except dsl.ParseError as exc:
            raise GroupDefError(str(exc)) from None
        out: list[Token] = []
        for atom, e in atoms:
            if not isinstance(atom, dsl.Sym):
                raise GroupDefError("tails are not allowed in generator expressions")
            if atom.name in self.generators:
                out.append((atom.name, e))
            elif atom.name in self.aliases:
                inner = self.tokens(self.aliases[atom.name])
                out.extend(inner if e > 0 else [(n, -x) for n, x in reversed(inner)])
            else:
                raise GroupDefError(f"unknown generator {atom.name!r}")
        return tuple(out)

    def element(self, tokens: Sequence[Token]) -> GroupElem:
        """Left-associated ∗-product of the generator words."""
        result = self.identity()
        for name, e in tokens:
            result = result * self.generator(name, e)
        return result

    def evaluate(self, expr: str) -> GroupElem:
        return self.element(self.tokens(expr))

    def validate(self) -> list[str]:
        """Generators that are not reduced or admit no cyclic decomposition."""
        problems = []
        for name, w in self.generators.items():
            if not w.is_reduced:
                problems.append(f"generator {name} is not reduced")
            elif cyclic_decomposition(w) is None:
                problems.append(f"generator {name} has no cyclic decomposition")
        return problems

    def to_text(self) -> str:
        lines = [HEADER, f"rank {self.rank}", "alphabet " + ",".join(self.alphabet)]
        for name, w in self.generators.items():
            lines.append(f"gen {name} = {w}")
        for name, text in self.aliases.items():
            lines.append(f"alias {name} = {text}")
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.to_text().encode()).hexdigest()[:16]


def evaluate(G: GroupDef, expr: str) -> GroupElem:
    return G.evaluate(expr)


def c_value(f: GroupElem, g: GroupElem) -> LambdaElem:
    """|com(f, g)|, cross-checked against the half-sum formula on every call."""
    c = cached_com_length(f.word, g.word)
    total = f.length + g.length - cached_product(f.word.inverse(), g.word).length
    if total != c * 2:
        raise CValueMismatch(f"c({f}, {g}): com gives {c}, half-sum of {total}")
    return c


def is_identity(g: GroupElem) -> bool:
    return g.is_identity()


def minimality_witness(G: GroupDef, bound: int) -> GroupElem | None:
    """First h != 1 among generator strings of length <= bound with |h ∗ h| = 2|h|.

    None means inconclusive, not "not minimal".
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    for tokens in generator_strings(G.names, bound):
        h = G.element(tokens)
        if not h.is_identity() and doubles_length(h.word):
            return h
    return None


def generator_strings(names: Sequence[str], max_len: int) -> Iterable[tuple[Token, ...]]:
    letters = [(n, e) for n in names for e in (1, -1)]
    for n in range(1, max_len + 1):
        for combo in itertools.product(letters, repeat=n):
            if reduce_tokens(combo) == combo:
                yield combo


def check_length_axioms(G: GroupDef, samples: int, seed: int):
    from .checks import length_suite

    return length_suite(G, samples, seed)


# definition files -------------------------------------------------------


def parse_group(text: str) -> GroupDef:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != HEADER:
        raise GroupDefError(f"missing header {HEADER!r}")
    body = lines[1:]
    if len(body) == 1 and body[0].split()[0] in ("free", "hnn_stable", "hnn_conj"):
        from .constructions import from_construction_line

        return from_construction_line(body[0])
    rank = 1
    alphabet: list[str] | None = None
    gens: dict[str, str] = {}
    aliases: dict[str, str] = {}
    for ln in body:
        key, _, rest = ln.partition(" ")
        rest = rest.strip()
        if key == "rank":
            rank = int(rest)
        elif key == "alphabet":
            alphabet = [s.strip() for s in rest.replace(",", " ").split()]
        elif key in ("gen", "alias"):
            name, eq, value = rest.partition("=")
            if not eq:
                raise GroupDefError(f"expected '{key} <name> = ...': {ln!r}")
            (gens if key == "gen" else aliases)[name.strip()] = value.strip()
        else:
            raise GroupDefError(f"unrecognised line {ln!r}")
    if alphabet is None:
        raise GroupDefError("missing alphabet line")
    try:
        words = {name: Word.parse(src, alphabet, rank) for name, src in gens.items()}
    except (dsl.ParseError, ValueError) as exc:
        raise GroupDefError(str(exc)) from None
    return GroupDef(tuple(alphabet), words, rank, aliases)


def load_group(path: str | Path) -> GroupDef:
    return parse_group(Path(path).read_text(encoding="utf-8"))
