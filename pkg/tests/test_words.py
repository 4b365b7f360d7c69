import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambdatree import oracle
from lambdatree.ordered_group import LambdaElem
from lambdatree.words import (
    ComUndefined,
    Letter,
    NotRepresentable,
    PositionError,
    Word,
    com,
    com_length,
    concat,
    cyclic_decomposition,
    doubles_length,
    eval_at,
    initial_subword,
    inverse,
    is_cyclically_reduced,
    is_primitive,
    primitive_root,
    product,
)

from conftest import L, from_oracle, raw_strings, to_oracle

a, b, c = Letter("a"), Letter("b"), Letter("c")
reduced_strings = raw_strings.map(oracle.naive_reduce)


def W(text, rank=1):
    return Word.parse(text, rank=rank)


@pytest.fixture
def phi():
    return Word.tail((a, b), (a, b))


@pytest.fixture
def psi():
    return Word.tail((a, b), (b, a))


# evaluation ---------------------------------------------------------------


def test_eval_finite():
    assert W("a b a").eval(L(2)) == b


def test_eval_phi_front_and_back(phi):
    # β = m|u| + α reads u(α); β = t - m|u| + α reads u(α)
    assert phi.eval(L(3, 0)) == a
    assert phi.eval(L(0, 1)) == b
    assert phi.eval(L(-1, 1)) == a
    assert eval_at(phi, L(1, 0)) == a


def test_eval_phi_displayed_formula(phi):
    rng = random.Random(3)
    for _ in range(50):
        m, alpha = rng.randint(0, 40), rng.randint(1, 2)
        assert phi(L(2 * m + alpha, 0)) == (a, b)[alpha - 1]
        m = rng.randint(1, 40)
        assert phi(L(-2 * m + alpha, 1)) == (a, b)[alpha - 1]


def test_eval_out_of_domain(phi):
    with pytest.raises(PositionError, match=r"outside \[1,\|w\|\]"):
        W("ab").eval(L(3))
    with pytest.raises(PositionError):
        phi.eval(L(1, 1))
    with pytest.raises(PositionError):
        phi.eval(L(0, 0))


def test_psi_values(psi):
    assert psi(L(1, 0)) == a
    assert psi(L(0, 1)) == a
    assert psi(L(-1, 1)) == b


# inverse and concat ---------------------------------------------------------


def test_inverse_examples():
    assert inverse(W("a b")) == W("b^-1 a^-1")
    assert inverse(Word.empty()) == Word.empty()


def test_inverse_phi_pointwise(phi):
    inv = inverse(phi)
    assert inv.length == phi.length
    rng = random.Random(5)
    one = LambdaElem.one(2)
    for _ in range(20):
        beta = L(rng.randint(1, 30), 0) if rng.random() < 0.5 else L(rng.randint(-30, 0), 1)
        assert inv(beta) == phi(phi.length + one - beta).inv()
    assert inverse(inv) == phi


def test_concat_examples():
    w = concat(W("a b"), W("a"))
    assert w == W("a b a") and w.is_reduced
    w = concat(W("a b"), W("b^-1"))
    assert not w.is_reduced
    assert w.length == L(3)


def test_concat_with_phi(phi):
    u = Word.from_letters((a, b), rank=2)
    left, right = concat(u, phi), concat(phi, u)
    assert left == right
    assert left.length == L(2, 1)
    for k in range(1, 9):
        assert left(L(k, 0)) == phi(L(k, 0))
        assert left(L(2 - k, 1)) == phi(L(-k, 1))


# com ---------------------------------------------------------------------------


def test_com_examples(phi):
    assert com(W("a b a"), W("a b b")) == (W("a b"), L(2))
    w = W("a b^-1 c")
    assert com(w, w) == (w, w.length)
    u = Word.from_letters((a, b), rank=2)
    prefix, n = com(phi, concat(phi, u))
    assert n == L(0, 1) and prefix == phi


def test_com_of_shifted_tails():
    x = Word.tail((a, b), (a, b))
    assert com_length(x, Word.tail((a, b), (a, b), delta=2)) == L(0, 1)
    assert com_length(x, Word.tail((a, b), (a, b), delta=-2)) == L(-2, 1)
    with pytest.raises(ComUndefined):
        com_length(x, Word.tail((a, b), (a, b), delta=1))
    assert com_length(Word.tail((a, b), (a, b)), Word.tail((a, c), (a, b))) == L(1, 0)


def test_com_undefined_when_only_finite_positions_agree(phi, psi):
    # the agreement set is [1, n] for every integer n, which is no closed segment of Z^2
    with pytest.raises(ComUndefined):
        com_length(phi, psi)


# product ---------------------------------------------------------------------


def test_product_examples(phi):
    assert product(W("a b"), W("b^-1 c")) == W("a c")
    w = W("a b^-1 c a")
    assert product(w, inverse(w)).is_empty
    assert product(inverse(phi), phi).is_empty
    ss = product(phi, phi)
    assert ss.length == L(0, 2) and ss.is_reduced
    rng = random.Random(9)
    for _ in range(20):
        k = rng.randint(1, 25)
        assert ss(L(k, 0)) == phi(L(k, 0))
        assert ss(L(-k + 1, 2)) == phi(L(-k + 1, 1))


def test_product_cancels_into_tail(phi):
    w = product(W("b^-1 a^-1", rank=2), phi)
    assert w.length == L(-2, 1)
    assert w(L(1, 0)) == a
    w = product(phi, W("b^-1 a^-1 b^-1", rank=2))
    assert w.length == L(-3, 1)
    assert w.last_letter() == a


# restriction and cyclic decomposition --------------------------------------------


def test_initial_subword_examples(phi):
    assert initial_subword(W("a b a"), L(2)) == W("a b")
    assert initial_subword(W("a b a"), L(0)).is_empty
    assert initial_subword(phi, L(4, 0)) == W("a b a b", rank=2)
    with pytest.raises(PositionError):
        initial_subword(W("a"), L(2))


def test_cyclic_decomposition_examples(phi):
    cc, core = cyclic_decomposition(W("b^-1 a b"))
    assert cc == W("b") and core == W("a")
    cc, core = cyclic_decomposition(W("a b"))
    assert cc.is_empty and core == W("a b")
    cc, core = cyclic_decomposition(phi)
    assert cc.is_empty and core == phi


def test_cyclically_reduced_examples(phi):
    assert is_cyclically_reduced(W("a b"))
    assert not is_cyclically_reduced(W("a b a^-1"))
    assert is_cyclically_reduced(phi)
    with pytest.raises(PositionError, match="empty word"):
        is_cyclically_reduced(Word.empty())


def test_primitive_patterns():
    assert is_primitive((a, b))
    assert not is_primitive((a, a))
    assert primitive_root((a, b, a, b)) == (a, b)


def test_tail_needs_rank_two():
    with pytest.raises(NotRepresentable, match="generator not representable"):
        Word.tail((a,), (a,), rank=1)


def test_parse_and_format_round_trip(phi, psi):
    for w in (phi, psi, product(phi, W("a a", rank=2)), product(inverse(psi), psi.prefix(L(5, 0))), Word.empty(2)):
        assert Word.parse(str(w), rank=2) == w
    assert W("(ab)^3") == W("a b a b a b")
    assert str(Word.empty()) == "ε"


def test_normal_form_is_canonical(phi):
    # the same word reached along different paths has one representation
    u = W("a b", rank=2)
    assert product(product(u, phi), inverse(u)) == phi
    assert product(phi, phi) == product(product(phi, u), product(inverse(u), phi))


def test_blocks_and_shape(phi):
    assert phi.shape() == "T[2|2]"
    assert W("a b").shape() == "F2"
    assert Word.empty().shape() == "empty"


# oracle differential and algebraic properties ------------------------------------


@given(reduced_strings, reduced_strings)
def test_product_matches_oracle(x, y):
    u, v = from_oracle(x), from_oracle(y)
    w = product(u, v)
    assert to_oracle(w) == oracle.naive_multiply(x, y)
    assert w.is_reduced
    assert w.length == u.length + v.length - com_length(inverse(u), v) * 2


@given(reduced_strings, reduced_strings)
def test_com_matches_oracle(x, y):
    assert com_length(from_oracle(x), from_oracle(y)) == L(oracle.naive_lcp(x, y))


@given(raw_strings)
def test_inverse_matches_oracle(x):
    w = from_oracle(x)
    assert to_oracle(inverse(w)) == oracle.naive_inverse(x)
    assert inverse(inverse(w)) == w
    assert w.is_reduced == (oracle.naive_reduce(x) == x)


@given(reduced_strings, reduced_strings, reduced_strings)
def test_associativity(x, y, z):
    u, v, w = from_oracle(x), from_oracle(y), from_oracle(z)
    assert product(product(u, v), w) == product(u, product(v, w))


@given(reduced_strings)
def test_cyclic_tests_agree(x):
    if not x:
        return
    w = from_oracle(x)
    assert is_cyclically_reduced(w) == oracle.naive_cyclically_reduced(x) == doubles_length(w)
    cc, core = cyclic_decomposition(w)
    o_c, o_core = oracle.naive_strip_conjugator(x)
    assert to_oracle(cc) == o_c and to_oracle(core) == o_core


def _is_prefix(x: Word, y: Word) -> bool:
    return com_length(x, y) == x.length


@given(reduced_strings, reduced_strings, st.integers(0, 12))
def test_subword_product_lemma_finite(x, y, k):
    u, v = from_oracle(x), from_oracle(y)
    a_part = v.prefix(L(min(k, len(y))))
    ua = product(u, a_part)
    assert _is_prefix(ua, u) or _is_prefix(ua, product(u, v))


def test_subword_product_lemma_rank_two(G1, H2):
    from lambdatree.checks import Sampler

    for G in (G1, H2):
        sm = Sampler(G, seed=11)
        for _ in range(150):
            u, v = sm.element().word, sm.element().word
            beta = sm.alpha_in(v.length)
            ua = product(u, v.prefix(beta))
            assert _is_prefix(ua, u) or _is_prefix(ua, product(u, v)), (u, v, beta)


@settings(max_examples=50)
@given(st.lists(st.sampled_from(["s", "s^-1", "a", "b", "a^-1", "b^-1"]), max_size=8))
def test_rank_two_words_round_trip_and_invert(tokens):
    from lambdatree.constructions import hnn_conj

    H = hnn_conj("ab", "ba")
    w = H.evaluate(" ".join(tokens) or "1").word
    assert w.is_reduced
    assert Word.parse(str(w), rank=2) == w
    assert product(w, inverse(w)).is_empty
    if not w.is_empty:
        one = LambdaElem.one(2)
        assert inverse(w)(one) == w(w.length).inv()
