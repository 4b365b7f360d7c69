"""The universal Λ-tree of a group of infinite words.

Points are classes ⟨α, g⟩ of pairs with 0 <= α <= |g|, where ⟨α, f⟩ and
⟨β, g⟩ coincide iff α = β <= c(f, g).  Equivalently a point is determined
by the initial subword of length α of any representative, which is what
``TreePoint.key`` returns and what hashing uses.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Mapping, Sequence

from .group_core import GroupDef, GroupElem, c_value, cached_product
from .ordered_group import LambdaElem, lmin
from .words import Letter, Word, cyclic_decomposition

SPINE_HEADER = "%lambda-spine v1"


class TreeError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class TreePoint:
    alpha: LambdaElem
    elem: GroupElem

    def __post_init__(self) -> None:
        if not (LambdaElem.zero(self.alpha.rank) <= self.alpha <= self.elem.length):
            raise TreeError(f"alpha={self.alpha} outside [0, |{self.elem}|]")

    @cached_property
    def key(self) -> Word:
        """Ξ(ε, p]: the initial subword of the representative of length alpha."""
        return self.elem.word.prefix(self.alpha)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TreePoint):
            return NotImplemented
        return point_eq(self, other)

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        if not self.alpha:
            return "e"
        return f"{self.alpha}@{self.elem.expression}"

    __repr__ = __str__


def base_point(G: GroupDef) -> TreePoint:
    return TreePoint(LambdaElem.zero(G.rank), G.identity())


def orbit_point(g: GroupElem) -> TreePoint:
    """g · ε = ⟨|g|, g⟩."""
    return TreePoint(g.length, g)


def point_eq(p: TreePoint, q: TreePoint) -> bool:
    return p.alpha == q.alpha and p.alpha <= c_value(p.elem, q.elem)


def _meet(p: TreePoint, q: TreePoint) -> LambdaElem:
    return lmin((p.alpha, q.alpha, c_value(p.elem, q.elem)))


def distance(p: TreePoint, q: TreePoint) -> LambdaElem:
    return p.alpha + q.alpha - _meet(p, q) * 2


def act(f: GroupElem, p: TreePoint) -> TreePoint:
    c = c_value(f.inverse(), p.elem)
    if p.alpha <= c:
        return TreePoint(f.length - p.alpha, f)
    return TreePoint(f.length + p.alpha - c * 2, f * p.elem)


def based_length(g: GroupElem) -> LambdaElem:
    eps = TreePoint(LambdaElem.zero(g.length.rank), GroupElem(Word.empty(g.word.rank)))
    d = distance(eps, act(g, eps))
    if d != g.length:
        raise AssertionError(f"based length {d} differs from |g| = {g.length}")
    return d


def point_on_segment(p: TreePoint, q: TreePoint, delta: LambdaElem) -> TreePoint:
    """The point of [p, q] at distance delta from p."""
    m = _meet(p, q)
    down = p.alpha - m
    if delta <= down:
        return TreePoint(p.alpha - delta, p.elem)
    return TreePoint(m + delta - down, q.elem)


def median(p: TreePoint, q: TreePoint, r: TreePoint) -> TreePoint:
    gromov = distance(p, q) + distance(p, r) - distance(q, r)
    return point_on_segment(p, q, gromov.halve())


def _require_nontrivial(g: GroupElem) -> None:
    if g.is_identity():
        raise TreeError("axis undefined for identity")


def on_axis(g: GroupElem, p: TreePoint) -> bool:
    _require_nontrivial(g)
    a, b = act(g.inverse(), p), act(g, p)
    return distance(a, b) == distance(a, p) + distance(p, b)


def translation_length(g: GroupElem) -> LambdaElem:
    _require_nontrivial(g)
    tl = cached_product(g.word, g.word).length - g.length
    dec = cyclic_decomposition(g.word)
    if dec is not None and dec[1].length != tl:
        raise AssertionError(f"|g^2| - |g| = {tl} but the cyclic core has length {dec[1].length}")
    return tl


def xi(p: TreePoint) -> Letter:
    """The letter labelling the point p != ε."""
    if not p.alpha:
        raise TreeError("ξ is undefined at the base point")
    return p.elem.word.eval(p.alpha)


# spines -----------------------------------------------------------------


@dataclass
class Spine:
    nodes: list[TreePoint]
    edges: list[tuple[int, int, LambdaElem]]
    labels: dict[int, Letter] = field(default_factory=dict)

    def adjacency(self) -> dict[int, list[tuple[int, LambdaElem]]]:
        adj: dict[int, list[tuple[int, LambdaElem]]] = {i: [] for i in range(len(self.nodes))}
        for a, b, w in self.edges:
            adj[a].append((b, w))
            adj[b].append((a, w))
        return adj

    def path_length(self, i: int, j: int) -> LambdaElem:
        adj = self.adjacency()
        zero = LambdaElem.zero(self.nodes[0].alpha.rank)
        stack = [(i, -1, zero)]
        while stack:
            node, parent, d = stack.pop()
            if node == j:
                return d
            for nxt, w in adj[node]:
                if nxt != parent:
                    stack.append((nxt, node, d + w))
        raise TreeError("spine is disconnected")


def _rep_rank(p: TreePoint) -> tuple:
    return (len(p.elem.expr), p.elem.expression)


def spine(G: GroupDef, elems: Sequence[GroupElem]) -> Spine:
    """The finite subtree spanned by ε and the orbit points ⟨|g|, g⟩."""
    if not elems:
        raise TreeError("spine needs at least one element")
    eps = base_point(G)
    candidates = [eps] + [orbit_point(g) for g in elems]
    for f, g in combinations(elems, 2):
        c = c_value(f, g)
        candidates += [TreePoint(c, f), TreePoint(c, g)]
    best: dict[Word, TreePoint] = {}
    for p in candidates:
        cur = best.get(p.key)
        if cur is None or _rep_rank(p) < _rep_rank(cur):
            best[p.key] = p
    nodes = sorted(best.values(), key=lambda p: (p.alpha.coords[::-1], str(p.key)))
    edges = []
    labels = {}
    for i, n in enumerate(nodes):
        if not n.alpha:
            continue
        parent, parent_alpha = None, None
        for j, m in enumerate(nodes):
            if m.alpha < n.alpha and m.alpha <= c_value(m.elem, n.elem):
                if parent_alpha is None or m.alpha > parent_alpha:
                    parent, parent_alpha = j, m.alpha
        edges.append((parent, i, n.alpha - parent_alpha))
        labels[i] = xi(n)
    return Spine(nodes, edges, labels)


def _node_label(p: TreePoint) -> str:
    return f"⟨{p.alpha}, {p.elem.expression}⟩"


def spine_to_dot(sp: Spine) -> str:
    lines = ["graph spine {"]
    for i, p in enumerate(sp.nodes):
        lines.append(f'  n{i} [label="{_node_label(p)}"];')
    for a, b, w in sp.edges:
        lines.append(f'  n{a} -- n{b} [label="{w}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def spine_to_text(sp: Spine, G: GroupDef) -> str:
    lines = [SPINE_HEADER, f"group {G.digest()} rank {G.rank}", f"nodes {len(sp.nodes)} edges {len(sp.edges)}"]
    for i, p in enumerate(sp.nodes):
        lines.append(f"node {i} alpha={p.alpha} expr={p.elem.expression.replace(' ', '.')}")
    for a, b, w in sp.edges:
        label = sp.labels.get(b)
        lines.append(f"edge {a} {b} length={w} letter={label if label is not None else '-'}")
    return "\n".join(lines) + "\n"


# universal embedding ------------------------------------------------------


class Embedding:
    """μ: Γ_sub → Γ_sup induced by a generator map that preserves lengths."""

    def __init__(self, G_sub: GroupDef, G_sup: GroupDef, inclusion: Mapping[str, str]):
        if G_sup.rank < G_sub.rank:
            raise TreeError("target rank is smaller than source rank")
        missing = set(G_sub.names) - set(inclusion)
        if missing:
            raise TreeError(f"inclusion misses generators: {sorted(missing)}")
        self.G_sub, self.G_sup = G_sub, G_sup
        self.images = {name: G_sup.tokens(inclusion[name]) for name in G_sub.names}
        for name in G_sub.names:
            lhs = G_sub.generators[name].length.lift(G_sup.rank)
            rhs = G_sup.element(self.images[name]).length
            if lhs != rhs:
                raise TreeError(f"length function not preserved on {name}: {lhs} vs {rhs}")

    def lift(self, a: LambdaElem) -> LambdaElem:
        return a.lift(self.G_sup.rank)

    def image(self, f: GroupElem) -> GroupElem:
        tokens = []
        for name, e in f.expr:
            img = self.images[name]
            tokens.extend(img if e > 0 else [(n, -x) for n, x in reversed(img)])
        g = self.G_sup.element(tokens)
        if self.lift(f.length) != g.length:
            raise TreeError(f"length function not preserved on {f}")
        return g

    def __call__(self, p: TreePoint) -> TreePoint:
        return TreePoint(self.lift(p.alpha), self.image(p.elem))


def canonical_embedding(p: TreePoint, G_sub: GroupDef, G_sup: GroupDef, inclusion: Mapping[str, str]) -> TreePoint:
    return Embedding(G_sub, G_sup, inclusion)(p)
