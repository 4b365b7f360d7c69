import pytest
from hypothesis import strategies as st

from lambdatree.constructions import free_group, hnn_conj, hnn_stable
from lambdatree.ordered_group import LambdaElem
from lambdatree.words import Letter, Word


def to_oracle(w: Word) -> tuple:
    return tuple((x.symbol, -1 if x.inverted else 1) for x in w.finite_letters())


def from_oracle(letters, rank: int = 1) -> Word:
    return Word.from_letters([Letter(s, e < 0) for s, e in letters], rank)


def L(*coords: int) -> LambdaElem:
    return LambdaElem.of(*coords)


oracle_letters = st.tuples(st.sampled_from("abc"), st.sampled_from((1, -1)))
raw_strings = st.lists(oracle_letters, max_size=12).map(tuple)


@pytest.fixture(scope="session")
def F2():
    return free_group("ab")


@pytest.fixture(scope="session")
def F3():
    return free_group("abc")


@pytest.fixture(scope="session")
def G1():
    return hnn_stable("ab")


@pytest.fixture(scope="session")
def H2():
    return hnn_conj("ab", "ba")


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
