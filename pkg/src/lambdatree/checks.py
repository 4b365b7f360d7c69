"""Seeded randomized property suites and their line-oriented reports.

Report lines look like ``PASS axiom=M4 samples=500`` or
``FAIL axiom=L3 sample=17 detail=...``; the first counterexample per axiom
is kept.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable

from .group_core import CValueMismatch, GroupDef, GroupElem, Token, c_value, reduce_tokens
from .ordered_group import LambdaElem, lmin
from .tree import TreePoint, act, based_length, distance, point_eq
from .words import ComUndefined


@dataclass
class AxiomResult:
    axiom: str
    checked: int = 0
    failure: tuple[int, str] | None = None


@dataclass
class Report:
    suite: str
    results: dict[str, AxiomResult] = field(default_factory=dict)

    def record(self, axiom: str, sample: int, ok: bool, detail: Callable[[], str] | str = "") -> None:
        res = self.results.setdefault(axiom, AxiomResult(axiom))
        res.checked += 1
        if not ok and res.failure is None:
            res.failure = (sample, detail() if callable(detail) else detail)

    def merge(self, other: Report) -> None:
        for key, res in other.results.items():
            self.results[key] = res

    @property
    def passed(self) -> bool:
        return all(r.failure is None for r in self.results.values())

    def failed_axioms(self) -> list[str]:
        return [r.axiom for r in self.results.values() if r.failure is not None]

    def lines(self) -> list[str]:
        out = []
        for res in self.results.values():
            if res.failure is None:
                out.append(f"PASS axiom={res.axiom} samples={res.checked}")
            else:
                sample, detail = res.failure
                out.append(f"FAIL axiom={res.axiom} sample={sample} detail={detail}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def isosceles(a: LambdaElem, b: LambdaElem, c: LambdaElem) -> bool:
    """The two smallest of the three values are equal."""
    s = sorted((a, b, c), key=lambda x: x.coords[::-1])
    return s[0] == s[1]


class Sampler:
    """Random group elements and tree points; deterministic for a given seed."""

    def __init__(self, G: GroupDef, seed: int, max_len: int = 6, spread: int = 5):
        self.G = G
        self.rng = random.Random(seed)
        self.max_len = max_len
        self.spread = spread
        self.letters = [(n, e) for n in G.names for e in (1, -1)]

    def tokens(self, max_len: int | None = None) -> tuple[Token, ...]:
        n = self.rng.randint(0, self.max_len if max_len is None else max_len)
        out: list[Token] = []
        while len(out) < n and self.letters:
            tok = self.rng.choice(self.letters)
            if out and out[-1] == (tok[0], -tok[1]):
                continue
            out.append(tok)
        return tuple(out)

    def element(self, max_len: int | None = None) -> GroupElem:
        return self.G.element(self.tokens(max_len))

    def nontrivial(self) -> GroupElem:
        while True:
            toks = reduce_tokens(self.tokens())
            if toks:
                g = self.G.element(toks)
                if not g.is_identity():
                    return g

    def alpha_in(self, length: LambdaElem) -> LambdaElem:
        rng = self.rng
        coords = length.coords
        if length.rank == 1 or coords[1] == 0:
            x = rng.randint(0, coords[0]) if rng.random() > 0.15 else rng.choice((0, coords[0]))
            return LambdaElem((x,) + (0,) * (length.rank - 1))
        a, h = coords[0], coords[1]
        j = rng.randint(0, h)
        if j == 0:
            x = rng.randint(0, self.spread)
        elif j < h:
            x = rng.randint(-self.spread, self.spread)
        else:
            x = rng.randint(a - self.spread, a)
        return LambdaElem((x, j) + (0,) * (length.rank - 2))

    def point(self) -> TreePoint:
        g = self.element()
        return TreePoint(self.alpha_in(g.length), g)

    def alternative(self, p: TreePoint, tries: int = 12) -> TreePoint:
        """Another representative (α, h) of the same point, with h != p.elem when one is found."""
        for _ in range(tries):
            h = p.elem * self.element(3)
            if h.word != p.elem.word and h.length >= p.alpha and p.alpha <= c_value(p.elem, h):
                return TreePoint(p.alpha, h)
        return p


def _guarded(report: Report, k: int, body: Callable[[], None]) -> None:
    try:
        body()
    except CValueMismatch as exc:
        report.record("C", k, False, str(exc))
    except ComUndefined as exc:
        report.record("COM", k, False, str(exc))


def length_suite(G: GroupDef, samples: int, seed: int) -> Report:
    rep = Report("length")
    problems = G.validate()
    rep.record("CDR", 0, not problems, "; ".join(problems))
    sm = Sampler(G, seed)
    zero = LambdaElem.zero(G.rank)

    def sample(k: int) -> None:
        tx, ty, tz = sm.tokens(), sm.tokens(), sm.tokens()
        x, y, z = G.element(tx), G.element(ty), G.element(tz)
        x_inv = G.element(tuple((n, -e) for n, e in reversed(tx)))
        one = G.element(tx + tuple((n, -e) for n, e in reversed(tx)))
        rep.record("L1", k, x.length >= zero and one.length == zero,
                   lambda: f"x={x} |x|={x.length} |x x^-1|={one.length}")
        rep.record("L2", k, x.length == x_inv.length, lambda: f"x={x} |x|={x.length} |x^-1|={x_inv.length}")
        cxy, cxz, cyz = c_value(x, y), c_value(x, z), c_value(y, z)
        rep.record("L3", k, not (cxy > cxz) or cxz == cyz, lambda: f"x={x} y={y} z={z}")
        half = x.length + y.length - (x.inverse() * y).length
        rep.record("L4", k, half.is_even(), lambda: f"x={x} y={y} 2c={half}")
        xy = G.element(tx + ty)
        rep.record("SUB", k, xy.length <= x.length + y.length, lambda: f"x={x} y={y}")
        rep.record("CBOUND", k, zero <= cxy <= lmin((x.length, y.length)), lambda: f"x={x} y={y} c={cxy}")
        rep.record("C", k, True)

    for k in range(samples):
        _guarded(rep, k, lambda: sample(k))
    return rep


def metric_suite(G: GroupDef, samples: int, seed: int) -> Report:
    rep = Report("metric")
    sm = Sampler(G, seed)
    zero = LambdaElem.zero(G.rank)

    def sample(k: int) -> None:
        p, q, r = sm.point(), sm.point(), sm.point()
        dpq, dqp, dpr, dqr = distance(p, q), distance(q, p), distance(p, r), distance(q, r)
        rep.record("M1", k, dpq >= zero, lambda: f"p={p} q={q} d={dpq}")
        rep.record("M2", k, (dpq == zero) == point_eq(p, q) and distance(p, p) == zero,
                   lambda: f"p={p} q={q} d={dpq}")
        rep.record("M3", k, dpq == dqp, lambda: f"p={p} q={q}")
        rep.record("M4", k, dpq <= dpr + dqr, lambda: f"p={p} q={q} r={r}")
        p2, q2 = sm.alternative(p), sm.alternative(q)
        rep.record("WD", k, point_eq(p, p2) and point_eq(q, q2) and distance(p2, q2) == dpq,
                   lambda: f"p={p} p'={p2} q={q} q'={q2}")
        mins = (lmin((p.alpha, q.alpha, c_value(p.elem, q.elem))),
                lmin((p.alpha, r.alpha, c_value(p.elem, r.elem))),
                lmin((q.alpha, r.alpha, c_value(q.elem, r.elem))))
        rep.record("HYP", k, isosceles(*mins), lambda: f"p={p} q={q} r={r} mins={[str(m) for m in mins]}")

    for k in range(samples):
        _guarded(rep, k, lambda: sample(k))
    return rep


def action_suite(G: GroupDef, samples: int, seed: int) -> Report:
    rep = Report("action")
    sm = Sampler(G, seed)

    def sample(k: int) -> None:
        f, g = sm.element(), sm.element()
        p, q = sm.point(), sm.point()
        fp, fq = act(f, p), act(f, q)
        rep.record("ISO", k, distance(fp, fq) == distance(p, q), lambda: f"f={f} p={p} q={q}")
        fg = G.element(f.expr + g.expr)
        lhs, rhs = act(f, act(g, p)), act(fg, p)
        rep.record("COMP", k, point_eq(lhs, rhs), lambda: f"f={f} g={g} p={p}: {lhs} vs {rhs}")
        if not f.is_identity():
            rep.record("FREE", k, not point_eq(fp, p), lambda: f"f={f} fixes p={p}")
        try:
            ok = based_length(g) == g.length
        except AssertionError:
            ok = False
        rep.record("BASED", k, ok, lambda: f"g={g}")
        p2 = sm.alternative(p)
        rep.record("WDA", k, point_eq(act(f, p2), fp), lambda: f"f={f} p={p} p'={p2}")

    for k in range(samples):
        _guarded(rep, k, lambda: sample(k))
    return rep


SUITES = {"metric": metric_suite, "length": length_suite, "action": action_suite}


def run_suites(G: GroupDef, suite: str, samples: int, seed: int) -> Report:
    names = list(SUITES) if suite == "all" else [suite]
    combined = Report(suite)
    for name in names:
        combined.merge(SUITES[name](G, samples, seed))
    return combined
