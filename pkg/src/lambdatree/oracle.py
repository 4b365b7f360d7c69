"""Brute-force reference implementations on finite words, for differential tests.

Letters are ``(symbol, exponent)`` pairs with exponent +1 or -1.  Nothing
here imports the main engine.
"""

from __future__ import annotations

from collections import deque
from itertools import product as cartesian
from typing import Hashable, Iterable, Sequence

OLetter = tuple[str, int]


def naive_reduce(letters: Iterable[OLetter]) -> tuple[OLetter, ...]:
    stack: list[OLetter] = []
    for sym, e in letters:
        if stack and stack[-1] == (sym, -e):
            stack.pop()
        else:
            stack.append((sym, e))
    return tuple(stack)


def naive_inverse(w: Sequence[OLetter]) -> tuple[OLetter, ...]:
    return tuple((s, -e) for s, e in reversed(w))


def naive_multiply(*words: Sequence[OLetter]) -> tuple[OLetter, ...]:
    out: list[OLetter] = []
    for w in words:
        out.extend(w)
    return naive_reduce(out)


def naive_lcp(u: Sequence[OLetter], v: Sequence[OLetter]) -> int:
    n = 0
    while n < len(u) and n < len(v) and u[n] == v[n]:
        n += 1
    return n


def naive_cyclically_reduced(w: Sequence[OLetter]) -> bool:
    return len(w) > 0 and w[0] != (w[-1][0], -w[-1][1])


def naive_strip_conjugator(w: Sequence[OLetter]) -> tuple[tuple[OLetter, ...], tuple[OLetter, ...]]:
    """Return (c, core) with w = c^-1 core c by peeling matching end letters."""
    k = 0
    while 2 * k + 1 < len(w) and w[k] == (w[-1 - k][0], -w[-1 - k][1]):
        k += 1
    return tuple(w[len(w) - k:]), tuple(w[k:len(w) - k])


def prefix_tree(words: Iterable[Sequence[OLetter]]) -> dict[tuple, set[tuple]]:
    """All prefixes of the given words as nodes, joined by single-letter edges."""
    graph: dict[tuple, set[tuple]] = {(): set()}
    for w in words:
        w = tuple(w)
        for i in range(1, len(w) + 1):
            node, parent = w[:i], w[:i - 1]
            graph.setdefault(node, set()).add(parent)
            graph[parent].add(node)
    return graph


def brute_distance(graph: dict[Hashable, set], p: Hashable, q: Hashable) -> int:
    seen = {p: 0}
    queue = deque([p])
    while queue:
        x = queue.popleft()
        if x == q:
            return seen[x]
        for y in graph[x]:
            if y not in seen:
                seen[y] = seen[x] + 1
                queue.append(y)
    raise ValueError("points are not connected")


def freely_reduced_strings(gens: Sequence[str], max_len: int) -> list[tuple[OLetter, ...]]:
    """Every freely reduced string of length 1..max_len over gens and their inverses."""
    letters = [(g, e) for g in gens for e in (1, -1)]
    out = []
    for n in range(1, max_len + 1):
        for combo in cartesian(letters, repeat=n):
            if naive_reduce(combo) == combo:
                out.append(combo)
    return out


def cayley_ball(gens: Sequence[str], radius: int) -> dict[tuple, set[tuple]]:
    """The radius-r ball of the Cayley tree of the free group on gens."""
    elems = [()] + freely_reduced_strings(gens, radius)
    return prefix_tree(elems)
