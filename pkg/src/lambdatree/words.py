"""Reduced Λ-words over Λ = Z^n in block normal form.

A word of length ``(x, h)`` is stored as ``h + 1`` *levels*.  Level ``j``
holds the letters at positions ``(q, j)``; it is a stream over an interval of
Z that is eventually periodic on each unbounded side::

    ... back back back | mid | front front front ...
                       ^ start

Level 0 starts at position 1 (no ``back``), the top level ends at ``hi``
(no ``front``), every level in between is bi-infinite.  Consecutive levels
are joined by tail blocks of infinite length, so positions on different
levels are never adjacent and reducedness is a per-level property.

Only the two lowest coordinates of Z^n are used; tails always add one unit
to coordinate 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, NamedTuple, Protocol, Sequence, runtime_checkable

from . import dsl
from .ordered_group import IncompatibleRanks, LambdaElem


class Letter(NamedTuple):
    symbol: str
    inverted: bool = False

    def inv(self) -> Letter:
        return Letter(self.symbol, not self.inverted)

    def __str__(self) -> str:
        return self.symbol + "^-1" if self.inverted else self.symbol


class ComUndefined(ArithmeticError):
    """The two words have no longest common initial segment in Λ."""


class PositionError(ValueError):
    pass


class NotRepresentable(ValueError):
    pass


Pattern = tuple[Letter, ...]


def invert_pattern(p: Sequence[Letter]) -> Pattern:
    return tuple(x.inv() for x in reversed(p))


def primitive_root(p: Pattern) -> Pattern:
    n = len(p)
    for d in range(1, n + 1):
        if n % d == 0 and p == p[:d] * (n // d):
            return p[:d]
    return p


def is_primitive(p: Sequence[Letter]) -> bool:
    p = tuple(p)
    return bool(p) and primitive_root(p) == p


def is_cyclically_reduced_pattern(p: Sequence[Letter]) -> bool:
    """Letter test on a finite word read cyclically."""
    n = len(p)
    return n > 0 and all(p[(i + 1) % n] != p[i].inv() for i in range(n))


@dataclass(frozen=True)
class Level:
    back: Pattern | None
    start: int
    mid: Pattern
    front: Pattern | None

    @property
    def front_start(self) -> int:
        return self.start + len(self.mid)

    @property
    def hi(self) -> int | None:
        """Last position of a top level, None when the level runs to +infinity."""
        return None if self.front is not None else self.start + len(self.mid) - 1

    def letter(self, q: int) -> Letter:
        off = q - self.start
        if off < 0:
            if self.back is None:
                raise PositionError("position outside [1,|w|]")
            return self.back[off % len(self.back)]
        if off < len(self.mid):
            return self.mid[off]
        if self.front is None:
            raise PositionError("position outside [1,|w|]")
        return self.front[(off - len(self.mid)) % len(self.front)]

    def letters(self, a: int, b: int) -> Pattern:
        return tuple(self.letter(q) for q in range(a, b + 1))

    def region(self, q: int) -> tuple[Pattern | None, int | None]:
        """Period governing position q (None inside mid) and where that region ends."""
        if self.back is not None and q < self.start:
            return self.back, self.start
        fs = self.start + len(self.mid)
        if q < fs:
            return None, fs
        return self.front, None

    def shifted(self, dx: int) -> Level:
        return Level(self.back, self.start + dx, self.mid, self.front)

    def is_reduced(self) -> bool:
        seq: list[Letter] = []
        if self.back is not None:
            seq.extend(self.back * 2)
        seq.extend(self.mid)
        if self.front is not None:
            seq.extend(self.front * 2)
        return all(seq[i + 1] != seq[i].inv() for i in range(len(seq) - 1))


def _rotl(p: Pattern, k: int) -> Pattern:
    k %= len(p)
    return p[k:] + p[:k]


def normalize_level(back: Pattern | None, start: int, mid: Sequence[Letter], front: Pattern | None) -> Level:
    """Canonical form: primitive periods, periodic regions grown maximally.

    The back region is grown first, then the front region inside what is
    left.  A level that is one bi-infinite periodic stream gets ``mid = ()``,
    ``start = 1`` and the period rotated to match.
    """
    if back is not None:
        if not back:
            raise NotRepresentable("empty period")
        back = primitive_root(tuple(back))
    if front is not None:
        if not front:
            raise NotRepresentable("empty period")
        front = primitive_root(tuple(front))
    mid = tuple(mid)
    if back is not None:
        if front is not None:
            mid = mid + front * ((len(back) + len(front)) // len(front) + 1)
        p = len(back)
        i = 0
        while i < len(mid) and mid[i] == back[i % p]:
            i += 1
        if i:
            back = _rotl(back, i)
            start += i
            mid = mid[i:]
        if front is not None and not mid:
            back = _rotl(back, 1 - start)
            return Level(back, 1, (), back)
    if front is not None:
        p = len(front)
        n = len(mid)
        i = 0
        while i < n and mid[n - 1 - i] == front[(-1 - i) % p]:
            i += 1
        if i:
            front = _rotl(front, -i)
            mid = mid[: n - i]
    return Level(back, start, mid, front)


@dataclass(frozen=True)
class Finite:
    letters: Pattern


@dataclass(frozen=True)
class Tail:
    """Infinite block of length (delta, 1): front-periodic from its start, back-periodic to its end."""

    front: Pattern
    back: Pattern
    delta: int = 0


class Word:
    """An element of W(Λ,X) in normal form; reducedness is a computed property."""

    __slots__ = ("levels", "rank", "_hash")

    def __init__(self, levels: Sequence[Level], rank: int):
        levels = tuple(normalize_level(lv.back, lv.start, lv.mid, lv.front) for lv in levels)
        if len(levels) > 1 and rank < 2:
            raise NotRepresentable("generator not representable: infinite words need rank >= 2")
        self.levels = levels
        self.rank = rank
        self._hash = None

    # construction -------------------------------------------------------

    @classmethod
    def empty(cls, rank: int = 1) -> Word:
        return cls((Level(None, 1, (), None),), rank)

    @classmethod
    def from_letters(cls, letters: Iterable[Letter], rank: int = 1) -> Word:
        return cls((Level(None, 1, tuple(letters), None),), rank)

    @classmethod
    def tail(cls, front: Sequence[Letter], back: Sequence[Letter], delta: int = 0, rank: int = 2) -> Word:
        if not front or not back:
            raise NotRepresentable("tail periods must be non-empty")
        return cls((Level(None, 1, (), tuple(front)), Level(tuple(back), delta + 1, (), None)), rank)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Finite | Tail], rank: int) -> Word:
        w = cls.empty(rank)
        for b in blocks:
            if isinstance(b, Finite):
                w = w.concat(cls.from_letters(b.letters, rank))
            else:
                w = w.concat(cls.tail(b.front, b.back, b.delta, rank))
        return w

    @classmethod
    def parse(cls, text: str, alphabet: Sequence[str] | None = None, rank: int = 1) -> Word:
        """Read the word DSL, e.g. ``"a b^-1 (ab)^2 tail(front=\\"ab\\", back=\\"ab\\")"``."""
        symbols = _symbols_for(text, alphabet)
        atoms = dsl.flatten(dsl.parse(text, symbols))
        w = cls.empty(rank)
        run: list[Letter] = []
        for atom, e in atoms:
            if isinstance(atom, dsl.Sym):
                if alphabet is not None and atom.name not in alphabet:
                    raise dsl.ParseError(f"unknown symbol {atom.name!r}")
                run.append(Letter(atom.name, e < 0))
                continue
            if run:
                w = w.concat(cls.from_letters(run, rank))
                run = []
            front = cls.parse(atom.front, alphabet, 1).levels[0].mid
            back = cls.parse(atom.back, alphabet, 1).levels[0].mid
            t = cls.tail(front, back, atom.delta, rank)
            w = w.concat(t if e > 0 else t.inverse())
        if run:
            w = w.concat(cls.from_letters(run, rank))
        return w

    # basic properties ---------------------------------------------------

    @property
    def height(self) -> int:
        return len(self.levels) - 1

    @property
    def top(self) -> Level:
        return self.levels[-1]

    @property
    def length(self) -> LambdaElem:
        return _pos(self.rank, self.top.hi, self.height)

    def __len__(self) -> int:
        if self.height:
            raise OverflowError("infinite word has no integer length")
        return len(self.levels[0].mid)

    @property
    def is_empty(self) -> bool:
        return self.height == 0 and not self.levels[0].mid

    @property
    def is_reduced(self) -> bool:
        return all(lv.is_reduced() for lv in self.levels)

    def first_letter(self) -> Letter:
        if self.is_empty:
            raise PositionError("empty word")
        return self.levels[0].letter(1)

    def last_letter(self) -> Letter:
        if self.is_empty:
            raise PositionError("empty word")
        return self.top.letter(self.top.hi)

    def finite_letters(self) -> Pattern:
        if self.height:
            raise NotRepresentable("word is infinite")
        return self.levels[0].mid

    def eval(self, beta: LambdaElem) -> Letter:
        x, j = _coords(beta, self.rank)
        if not (LambdaElem.one(self.rank) <= beta <= self.length):
            raise PositionError("position outside [1,|w|]")
        return self.levels[j].letter(x)

    __call__ = eval

    def blocks(self) -> list[Finite | Tail]:
        out: list[Finite | Tail] = []
        for j, lv in enumerate(self.levels):
            if j:
                prev = self.levels[j - 1]
                delta = lv.start - prev.front_start
                out.append(Tail(prev.front, lv.back, delta))
            if lv.mid:
                out.append(Finite(lv.mid))
        return out

    def shape(self) -> str:
        parts = []
        for b in self.blocks():
            parts.append(f"F{len(b.letters)}" if isinstance(b, Finite) else f"T[{len(b.front)}|{len(b.back)}]")
        return " ".join(parts) if parts else "empty"

    # algebra ------------------------------------------------------------

    def _check_rank(self, other: Word) -> None:
        if self.rank != other.rank:
            raise IncompatibleRanks()

    def inverse(self) -> Word:
        a = self.top.hi
        new = []
        for lv in reversed(self.levels):
            new.append(
                Level(
                    invert_pattern(lv.front) if lv.front is not None else None,
                    a + 2 - lv.start - len(lv.mid),
                    invert_pattern(lv.mid),
                    invert_pattern(lv.back) if lv.back is not None else None,
                )
            )
        return Word(new, self.rank)

    def concat(self, other: Word) -> Word:
        """Plain concatenation; the result may be unreduced at the seam."""
        self._check_rank(other)
        a = self.top.hi
        u_top = self.top
        v0 = other.levels[0]
        merged = Level(u_top.back, u_top.start, u_top.mid + v0.mid, v0.front)
        rest = [lv.shifted(a) for lv in other.levels[1:]]
        return Word(self.levels[:-1] + (merged,) + tuple(rest), self.rank)

    def prefix(self, beta: LambdaElem) -> Word:
        """The restriction to [1, beta]."""
        x, j = _coords(beta, self.rank)
        if not (LambdaElem.zero(self.rank) <= beta <= self.length):
            raise PositionError("position outside [0,|w|]")
        lv = self.levels[j]
        if j == 0:
            top = Level(None, 1, lv.letters(1, x), None)
        elif x >= lv.start:
            top = Level(lv.back, lv.start, lv.letters(lv.start, x), None)
        else:
            p = len(lv.back)
            top = Level(lv.letters(x - p + 1, x), x + 1, (), None)
        return Word(self.levels[:j] + (top,), self.rank)

    def suffix_after(self, beta: LambdaElem) -> Word:
        """The word ``ũ`` with ``w = w_beta ∘ ũ`` (positions renumbered from 1)."""
        x, j = _coords(beta, self.rank)
        if not (LambdaElem.zero(self.rank) <= beta <= self.length):
            raise PositionError("position outside [0,|w|]")
        lv = self.levels[j]
        if lv.front is not None:
            fs = lv.front_start
            mid = lv.letters(x + 1, fs - 1) if x + 1 < fs else ()
            r = max(x + 1, fs)
            front = lv.letters(r, r + len(lv.front) - 1)
            first = Level(None, 1, mid, front)
        else:
            first = Level(None, 1, lv.letters(x + 1, lv.hi), None)
        rest = tuple(v.shifted(-x) for v in self.levels[j + 1:])
        return Word((first,) + rest, self.rank)

    # identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.rank == other.rank and self.levels == other.levels

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.rank, self.levels))
        return self._hash

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r}, rank={self.rank})"

    # oracle interface -----------------------------------------------------

    def common_prefix(self, other: GeneratorOracle, self_from: LambdaElem | None = None,
                      other_from: LambdaElem | None = None) -> LambdaElem:
        """c(h_i, h_j) for the suffixes starting at the given positions (default: whole words)."""
        if not isinstance(other, Word):
            raise TypeError("common_prefix needs a block-form word on both sides")
        h_i = self if self_from is None else self.suffix_after(self_from - LambdaElem.one(self.rank))
        h_j = other if other_from is None else other.suffix_after(other_from - LambdaElem.one(other.rank))
        return com_length(h_i, h_j)


@runtime_checkable
class GeneratorOracle(Protocol):
    """What the com/product drivers need from a generator: letters and common prefixes."""

    @property
    def length(self) -> LambdaElem: ...

    def eval(self, beta: LambdaElem) -> Letter: ...

    def common_prefix(self, other: GeneratorOracle, self_from: LambdaElem | None = None,
                      other_from: LambdaElem | None = None) -> LambdaElem: ...


def _pos(rank: int, x: int, j: int) -> LambdaElem:
    if rank == 1:
        if j:
            raise IncompatibleRanks()
        return LambdaElem((x,))
    return LambdaElem((x, j) + (0,) * (rank - 2))


def _coords(beta: LambdaElem, rank: int) -> tuple[int, int]:
    if beta.rank != rank:
        raise IncompatibleRanks()
    c = beta.coords
    if any(c[2:]):
        raise PositionError("position not covered by representation")
    return c[0], (c[1] if rank > 1 else 0)


def _symbols_for(text: str, alphabet: Sequence[str] | None) -> set[str]:
    if alphabet is not None:
        return set(alphabet)
    return {ch for ch in text if ch.isalnum() or ch == "_"}


def _min_opt(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _com_coords(u: Word, v: Word) -> tuple[int, int]:
    j = 0
    while True:
        a, b = u.levels[j], v.levels[j]
        hi = _min_opt(a.hi, b.hi)
        if j == 0:
            q = 1
        else:
            # far to the left both levels are back-periodic; they must agree there
            p0 = min(a.start, b.start) - 1
            n = len(a.back) + len(b.back)
            for r in range(p0 - n + 1, p0 + 1):
                if a.letter(r) != b.letter(r):
                    raise ComUndefined("common initial segment undefined")
            q = p0 + 1
        while True:
            if hi is not None and q > hi:
                return hi, j
            pa, ea = a.region(q)
            pb, eb = b.region(q)
            if pa is not None and pb is not None:
                end = _min_opt(ea, eb)
                if hi is not None:
                    end = _min_opt(end, hi + 1)
                n = len(pa) + len(pb) - gcd(len(pa), len(pb))
                if end is None or q + n < end:
                    # two periodic streams agreeing on n positions agree on their whole extent
                    for r in range(q, q + n):
                        if a.letter(r) != b.letter(r):
                            return r - 1, j
                    if end is None:
                        break
                    q = end
                    continue
            if a.letter(q) != b.letter(q):
                return q - 1, j
            q += 1
        j += 1


def com_length(u: Word, v: Word) -> LambdaElem:
    u._check_rank(v)
    x, j = _com_coords(u, v)
    return _pos(u.rank, x, j)


def com(u: Word, v: Word) -> tuple[Word, LambdaElem]:
    c = com_length(u, v)
    return u.prefix(c), c


def eval_at(w: Word, beta: LambdaElem) -> Letter:
    return w.eval(beta)


def inverse(w: Word) -> Word:
    return w.inverse()


def concat(u: Word, v: Word) -> Word:
    return u.concat(v)


def initial_subword(w: Word, beta: LambdaElem) -> Word:
    return w.prefix(beta)


def product(u: Word, v: Word) -> Word:
    """u ∗ v: cancel the common initial segment of u^-1 and v, then concatenate."""
    c = com_length(u.inverse(), v)
    return u.prefix(u.length - c).concat(v.suffix_after(c))


def is_cyclically_reduced(w: Word) -> bool:
    if w.is_empty:
        raise PositionError("empty word")
    return w.first_letter().inv() != w.last_letter()


def doubles_length(w: Word) -> bool:
    """The group-theoretic form of the test: |w ∗ w| = 2|w|."""
    return product(w, w).length == w.length * 2


def cyclic_decomposition(w: Word) -> tuple[Word, Word] | None:
    """(c, core) with w = c^-1 ∘ core ∘ c and core cyclically reduced, or None."""
    if w.is_empty:
        return w, w
    try:
        c = com_length(w, w.inverse())
    except ComUndefined:
        return None
    if c * 2 >= w.length:
        return None
    c_inv = w.prefix(c)
    core = w.prefix(w.length - c).suffix_after(c)
    return c_inv.inverse(), core


def format_pattern(p: Sequence[Letter]) -> str:
    return " ".join(str(x) for x in p)


def format_word(w: Word) -> str:
    parts = []
    for b in w.blocks():
        if isinstance(b, Finite):
            parts.append(format_pattern(b.letters))
        else:
            s = f'tail(front="{format_pattern(b.front)}", back="{format_pattern(b.back)}"'
            if b.delta:
                s += f", delta={b.delta}"
            parts.append(s + ")")
    return " ".join(parts) if parts else "ε"
