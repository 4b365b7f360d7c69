import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lambdatree import group_core, oracle
from lambdatree.checks import Sampler, isosceles
from lambdatree.group_core import (
    CValueMismatch,
    GroupDef,
    GroupDefError,
    c_value,
    check_length_axioms,
    evaluate,
    is_identity,
    minimality_witness,
    parse_group,
)
from lambdatree.words import Word, product

from conftest import L, to_oracle

gen_tokens = st.lists(st.sampled_from(["a", "b", "s", "a^-1", "b^-1", "s^-1"]), max_size=8)


def test_evaluate_examples(F2, G1):
    assert evaluate(F2, "a a^-1").is_identity()
    assert evaluate(G1, "s").length == L(0, 1)
    assert to_oracle(evaluate(F2, "a b b^-1 a").word) == oracle.naive_reduce([("a", 1), ("a", 1)])
    assert evaluate(F2, "(a b)^2 b^-1").expression == "a b a"


def test_unknown_generator(F2):
    with pytest.raises(GroupDefError, match="unknown"):
        evaluate(F2, "a z")


def test_aliases(G1, H2):
    assert G1.evaluate("u").word == G1.evaluate("a b").word
    assert H2.evaluate("v^-1").word == H2.evaluate("a^-1 b^-1").word


def test_c_value_examples(F3, G1):
    assert c_value(evaluate(F3, "a b"), evaluate(F3, "a c")) == L(1)
    f = evaluate(F3, "a b^-1 c")
    assert c_value(f, f) == f.length
    s = evaluate(G1, "s")
    assert c_value(s, evaluate(G1, "u s")) == L(0, 1)
    assert c_value(s, evaluate(G1, "a s")) == L(1, 0)


def test_c_value_cross_check_detects_disagreement(F2, monkeypatch):
    monkeypatch.setattr(group_core, "cached_com_length", lambda u, v: L(0))
    with pytest.raises(CValueMismatch):
        c_value(evaluate(F2, "a b"), evaluate(F2, "a"))


def test_is_identity_examples(F2, G1, H2):
    assert is_identity(evaluate(G1, "s u s^-1 u^-1"))
    assert not is_identity(evaluate(F2, "a b"))
    # u s = s v, so conjugating u by s gives v
    assert is_identity(evaluate(H2, "s^-1 u s v^-1"))
    assert not is_identity(evaluate(H2, "s u s^-1 v^-1"))


def test_minimality_witness(F2, G1):
    assert minimality_witness(F2, 1).expression == "a"
    assert minimality_witness(G1, 1).expression in ("a", "s")
    with pytest.raises(ValueError):
        minimality_witness(F2, 0)


def test_minimality_inconclusive_for_conjugate_cyclic_subgroup():
    G = GroupDef(("a", "b"), {"x": Word.parse("b^-1 a b", "ab")}, 1)
    assert minimality_witness(G, 3) is None
    # every nontrivial string of length <= 3 in x is b^-1 a^k b
    for toks in oracle.freely_reduced_strings(["x"], 3):
        letters = [l for name, e in toks for l in ([("b", -1), ("a", e), ("b", 1)])]
        assert not oracle.naive_cyclically_reduced(oracle.naive_reduce(letters))


def test_length_axioms_pass(F2, G1, H2):
    assert check_length_axioms(F2, 500, seed=1).passed
    for G in (G1, H2):
        rep = check_length_axioms(G, 200, seed=2)
        assert rep.passed, rep.lines()


def test_length_axioms_negative_control():
    bad = parse_group("%lambda-group v1\nalphabet a,b\ngen x = a a^-1 b\ngen y = b\n")
    rep = check_length_axioms(bad, 20, seed=0)
    assert not rep.passed
    assert "CDR" in rep.failed_axioms()
    assert any(line.startswith("FAIL axiom=CDR sample=0") for line in rep.lines())


@settings(max_examples=60, deadline=None)
@given(gen_tokens, gen_tokens)
def test_evaluate_is_homomorphism(x, y):
    from lambdatree.constructions import hnn_stable

    G = hnn_stable("ab")
    e1, e2 = " ".join(x) or "1", " ".join(y) or "1"
    joint = G.evaluate(f"{e1} {e2}")
    assert joint.word == product(G.evaluate(e1).word, G.evaluate(e2).word)


def test_c_values_isosceles(G1, H2):
    for G in (G1, H2):
        sm = Sampler(G, seed=4)
        for _ in range(200):
            f, g, h = sm.element(), sm.element(), sm.element()
            cfg, cfh, cgh = c_value(f, g), c_value(f, h), c_value(g, h)
            assert isosceles(cfg, cfh, cgh)
            if cfg > cfh:
                assert cfh == cgh


def test_definition_file_round_trip(G1, tmp_path):
    text = G1.to_text()
    assert text.startswith(group_core.HEADER)
    back = parse_group(text)
    assert back.generators == G1.generators and back.aliases == G1.aliases
    assert back.digest() == G1.digest()
    path = tmp_path / "g.grp"
    path.write_text("# comment\n" + text)
    assert group_core.load_group(path).generators == G1.generators


def test_definition_file_errors():
    with pytest.raises(GroupDefError, match="header"):
        parse_group("alphabet a\ngen x = a\n")
    with pytest.raises(GroupDefError, match="alphabet"):
        parse_group("%lambda-group v1\ngen x = a\n")
    with pytest.raises(GroupDefError):
        parse_group("%lambda-group v1\nalphabet a\nfrobnicate\n")
    with pytest.raises(GroupDefError):
        parse_group("%lambda-group v1\nalphabet a\ngen x = q\n")


def test_construction_lines():
    G = parse_group('%lambda-group v1\nhnn_conj u="ab" v="ba"\n')
    assert G.rank == 2 and G.generators["s"].length == L(0, 1)
    assert parse_group("%lambda-group v1\nfree alphabet=a,b,c\n").names == ["a", "b", "c"]


def test_trivial_group():
    G = GroupDef(("a",), {}, 1)
    assert G.identity().is_identity()
    assert G.evaluate("1").is_identity()
    assert minimality_witness(G, 2) is None
