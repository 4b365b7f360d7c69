"""Exact arithmetic in Z^n under the right-lexicographic order.

Coordinate 0 is the least significant one, so for rank 2 the element
``(a, b)`` reads as ``b t + a`` with ``t`` infinitely larger than 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable


class IncompatibleRanks(ValueError):
    def __init__(self) -> None:
        super().__init__("incompatible ordered groups")


class Ordering(Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True, slots=True)
class LambdaElem:
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.coords:
            raise ValueError("rank must be at least 1")

    @classmethod
    def of(cls, *coords: int) -> LambdaElem:
        return cls(tuple(int(c) for c in coords))

    @classmethod
    def zero(cls, rank: int) -> LambdaElem:
        return cls((0,) * rank)

    @classmethod
    def one(cls, rank: int) -> LambdaElem:
        """The minimal positive element (1, 0, ..., 0)."""
        return cls((1,) + (0,) * (rank - 1))

    @classmethod
    def unit(cls, rank: int, index: int) -> LambdaElem:
        coords = [0] * rank
        coords[index] = 1
        return cls(tuple(coords))

    @property
    def rank(self) -> int:
        return len(self.coords)

    @property
    def height(self) -> int:
        """Index of the highest non-zero coordinate (0 for the zero element)."""
        for i in range(len(self.coords) - 1, -1, -1):
            if self.coords[i]:
                return i
        return 0

    def _check(self, other: LambdaElem) -> None:
        if len(self.coords) != len(other.coords):
            raise IncompatibleRanks()

    def _key(self) -> tuple[int, ...]:
        return self.coords[::-1]

    def __lt__(self, other: LambdaElem) -> bool:
        self._check(other)
        return self._key() < other._key()

    def __le__(self, other: LambdaElem) -> bool:
        self._check(other)
        return self._key() <= other._key()

    def __gt__(self, other: LambdaElem) -> bool:
        self._check(other)
        return self._key() > other._key()

    def __ge__(self, other: LambdaElem) -> bool:
        self._check(other)
        return self._key() >= other._key()

    def __add__(self, other: LambdaElem) -> LambdaElem:
        self._check(other)
        return LambdaElem(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: LambdaElem) -> LambdaElem:
        self._check(other)
        return LambdaElem(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> LambdaElem:
        return LambdaElem(tuple(-a for a in self.coords))

    def __mul__(self, k: int) -> LambdaElem:
        return LambdaElem(tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return any(self.coords)

    def is_positive(self) -> bool:
        return self > LambdaElem.zero(self.rank)

    def is_negative(self) -> bool:
        return self < LambdaElem.zero(self.rank)

    def halve(self) -> LambdaElem:
        """Exact division by two; raises if some coordinate is odd."""
        if any(a % 2 for a in self.coords):
            raise ArithmeticError(f"{self} is not divisible by 2")
        return LambdaElem(tuple(a // 2 for a in self.coords))

    def is_even(self) -> bool:
        return not any(a % 2 for a in self.coords)

    def lift(self, rank: int) -> LambdaElem:
        """Embed into a higher rank by padding the dominant coordinates with zeros."""
        if rank < self.rank:
            raise IncompatibleRanks()
        return LambdaElem(self.coords + (0,) * (rank - self.rank))

    def __str__(self) -> str:
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(a) for a in self.coords) + ")"

    def __repr__(self) -> str:
        return f"LambdaElem({self.coords!r})"

    @classmethod
    def parse(cls, text: str, rank: int | None = None) -> LambdaElem:
        return parse_lambda(text, rank)


def compare(a: LambdaElem, b: LambdaElem) -> Ordering:
    if a < b:
        return Ordering.LESS
    if a == b:
        return Ordering.EQUAL
    return Ordering.GREATER


def add(a: LambdaElem, b: LambdaElem) -> LambdaElem:
    return a + b


def neg(a: LambdaElem) -> LambdaElem:
    return -a


def min_of(a: LambdaElem, b: LambdaElem) -> LambdaElem:
    return a if a <= b else b


def lmin(values: Iterable[LambdaElem]) -> LambdaElem:
    return min(values, key=LambdaElem._key)


def in_segment(c: LambdaElem, a: LambdaElem, b: LambdaElem) -> bool:
    """True iff a <= c <= b."""
    return a <= c <= b


_TUPLE = re.compile(r"^\(\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\)$")


def parse_lambda(text: str, rank: int | None = None) -> LambdaElem:
    """Parse ``"5"``, ``"(3,-1)"`` or a rank-2 polynomial such as ``"2t - 3"``.

    A bare integer is lifted to ``rank`` when one is given.
    """
    s = text.strip()
    m = _TUPLE.match(s)
    if m:
        elem = LambdaElem(tuple(int(x) for x in m.group(1).split(",")))
    elif re.fullmatch(r"[+-]?\d+", s):
        elem = LambdaElem((int(s),))
    elif "t" in s:
        elem = _parse_poly(s)
    else:
        raise ValueError(f"cannot parse ordered group element {text!r}")
    if rank is not None:
        if elem.rank > rank:
            raise IncompatibleRanks()
        elem = elem.lift(rank)
    return elem


def _parse_poly(s: str) -> LambdaElem:
    compact = s.replace(" ", "")
    if not re.fullmatch(r"([+-]?(\d+\*?t|t|\d+))+", compact):
        raise ValueError(f"cannot parse ordered group element {s!r}")
    units = 0
    ts = 0
    for sign, digits, var in re.findall(r"([+-]?)(\d*)\*?(t?)", compact):
        if not digits and not var:
            continue
        k = int(digits) if digits else 1
        if sign == "-":
            k = -k
        if var:
            ts += k
        else:
            units += k
    return LambdaElem((units, ts))
