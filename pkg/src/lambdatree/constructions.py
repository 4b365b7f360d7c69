"""Ready-made groups: free groups and two HNN extensions embedded in CDR(Z^2, X)."""

from __future__ import annotations

import re
import shlex
from typing import Sequence

from .group_core import GroupDef, GroupDefError
from .ordered_group import LambdaElem
from .words import (
    Letter,
    Word,
    format_pattern,
    is_cyclically_reduced_pattern,
    is_primitive,
    product,
)


class ConstructionError(GroupDefError):
    pass


def free_group(alphabet: Sequence[str]) -> GroupDef:
    alphabet = tuple(alphabet)
    if not alphabet:
        raise ConstructionError("empty alphabet")
    if len(set(alphabet)) != len(alphabet):
        raise ConstructionError("repeated symbol in alphabet")
    gens = {x: Word.from_letters([Letter(x)], rank=1) for x in alphabet}
    return GroupDef(alphabet, gens, 1, construction="free alphabet=" + ",".join(alphabet))


def _finite(w: str | Sequence[Letter], alphabet: Sequence[str]) -> tuple[Letter, ...]:
    if isinstance(w, str):
        return Word.parse(w, alphabet, rank=1).finite_letters()
    return tuple(w)


def _check_base(name: str, w: tuple[Letter, ...]) -> None:
    if not w:
        raise ConstructionError(f"{name} is empty")
    if not Word.from_letters(w).is_reduced:
        raise ConstructionError(f"{name} is not reduced")
    if not is_cyclically_reduced_pattern(w):
        raise ConstructionError(f"{name} is not cyclically reduced")
    if not is_primitive(w):
        raise ConstructionError(f"{name} is a proper power")


def _alphabet_for(alphabet: Sequence[str] | None, *sources: str | Sequence[Letter]) -> tuple[str, ...]:
    if alphabet is not None:
        return tuple(alphabet)
    seen: list[str] = []
    for src in sources:
        if isinstance(src, str):
            symbols = [ch for ch in re.sub(r"\^-?\d+", "", src) if ch.isalpha()]
        else:
            symbols = [x.symbol for x in src]
        for s in symbols:
            if s not in seen:
                seen.append(s)
    return tuple(sorted(seen))


def _hnn(alphabet: tuple[str, ...], u: tuple[Letter, ...], v: tuple[Letter, ...], stable: str) -> GroupDef:
    if stable in alphabet:
        raise ConstructionError(f"stable letter {stable!r} clashes with the alphabet")
    gens = {x: Word.from_letters([Letter(x)], rank=2) for x in alphabet}
    gens[stable] = Word.tail(u, v, rank=2)
    aliases = {}
    for name, w in (("u", u), ("v", v)):
        if name not in gens:
            aliases[name] = format_pattern(w)
    return GroupDef(alphabet, gens, 2, aliases)


def hnn_stable(u: str | Sequence[Letter], alphabet: Sequence[str] | None = None, stable: str = "s") -> GroupDef:
    """G = <F, s | u^s = u> with s mapped to the length-t word reading u forwards and backwards."""
    alphabet = _alphabet_for(alphabet, u)
    u = _finite(u, alphabet)
    _check_base("u", u)
    G = _hnn(alphabet, u, u, stable)
    G.aliases.pop("v", None)
    s = G.generators[stable]
    uw = Word.from_letters(u, rank=2)
    if s.length != LambdaElem.of(0, 1):
        raise ConstructionError("stable letter does not have length t")
    if product(uw, s) != product(s, uw):
        raise ConstructionError("stable letter does not commute with u")
    G.construction = f'hnn_stable alphabet={",".join(alphabet)} u="{format_pattern(u)}"'
    return G


def hnn_conj(u: str | Sequence[Letter], v: str | Sequence[Letter], alphabet: Sequence[str] | None = None,
             stable: str = "s") -> GroupDef:
    """H = <F, s | u^s = v>, s reading u from its start and v towards its end, so u s = s v."""
    alphabet = _alphabet_for(alphabet, u, v)
    u = _finite(u, alphabet)
    v = _finite(v, alphabet)
    _check_base("u", u)
    _check_base("v", v)
    if len(u) != len(v):
        raise ConstructionError("length mismatch: |u| != |v|")
    G = _hnn(alphabet, u, v, stable)
    s = G.generators[stable]
    uw = Word.from_letters(u, rank=2)
    vw = Word.from_letters(v, rank=2)
    if s.length != LambdaElem.of(0, 1):
        raise ConstructionError("stable letter does not have length t")
    left, right = uw.concat(s), s.concat(vw)
    if not (left.is_reduced and right.is_reduced and left == right):
        raise ConstructionError("u s != s v")
    G.construction = f'hnn_conj alphabet={",".join(alphabet)} u="{format_pattern(u)}" v="{format_pattern(v)}"'
    return G


def from_construction_line(line: str) -> GroupDef:
    """``free alphabet=a,b`` | ``hnn_stable u="ab"`` | ``hnn_conj u="ab" v="ba"``."""
    parts = shlex.split(line)
    kind, args = parts[0], {}
    for p in parts[1:]:
        key, eq, value = p.partition("=")
        if not eq:
            raise ConstructionError(f"expected key=value, got {p!r}")
        args[key] = value
    alphabet = args.pop("alphabet", None)
    alphabet = [s for s in alphabet.split(",") if s] if alphabet is not None else None
    try:
        if kind == "free":
            if alphabet is None:
                raise ConstructionError("free needs alphabet=")
            G = free_group(alphabet)
        elif kind == "hnn_stable":
            G = hnn_stable(args.pop("u"), alphabet, args.pop("stable", "s"))
        elif kind == "hnn_conj":
            G = hnn_conj(args.pop("u"), args.pop("v"), alphabet, args.pop("stable", "s"))
        else:
            raise ConstructionError(f"unknown construction {kind!r}")
    except KeyError as exc:
        raise ConstructionError(f"{kind} needs {exc.args[0]}=") from None
    if args:
        raise ConstructionError(f"unexpected arguments: {', '.join(args)}")
    return G
