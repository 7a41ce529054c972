import random

import pytest

from combings import (
    AbelianOracle,
    Alphabet,
    FiniteOracle,
    FreeOracle,
    Nfa,
    Transducer,
)


@pytest.fixture
def ab1():
    return Alphabet.from_pairs([("a", "A")])


@pytest.fixture
def ab2():
    return Alphabet.from_pairs([("a", "A"), ("b", "B")])


@pytest.fixture
def ab3():
    return Alphabet.from_pairs([("a", "A"), ("b", "B"), ("c", "C")])


@pytest.fixture
def rng():
    return random.Random(0x5EED)


@pytest.fixture
def z_oracle(ab1):
    return AbelianOracle(ab1, 1, {"a": [1]})


@pytest.fixture
def z2_oracle(ab2):
    return AbelianOracle(ab2, 2, {"a": [1, 0], "b": [0, 1]})


@pytest.fixture
def z3_oracle(ab1):
    table = [[(i + j) % 3 for j in range(3)] for i in range(3)]
    return FiniteOracle(ab1, table, letter_images={"a": 1})


@pytest.fixture
def free2_oracle(ab2):
    return FreeOracle(ab2)


@pytest.fixture
def slex_z2(ab2):
    """Shortlex normal forms a^m b^n (signs folded in) for Z^2 over a < A < b < B."""
    edges = [
        (0, 0, 1), (1, 0, 1),
        (0, 1, 2), (2, 1, 2),
        (0, 2, 3), (1, 2, 3), (2, 2, 3), (3, 2, 3),
        (0, 3, 4), (1, 3, 4), (2, 3, 4), (4, 3, 4),
    ]
    return Nfa(ab2, 5, edges, 0, [0, 1, 2, 3, 4])


@pytest.fixture
def z_generators():
    """Pairs (a^n b, a^n) and (A^n b, A^n) over the rank-2 alphabet with b
    mapping to the generator of Z: every member a^n b A^n or A^n b a^n is a
    conjugate of b."""
    ab = Alphabet.from_pairs([("a", "A"), ("b", "B")])
    edges = [
        (0, (None, None), 1),
        (1, (0, 0), 1),
        (1, (2, None), 3),
        (0, (None, None), 2),
        (2, (1, 1), 2),
        (2, (2, None), 3),
    ]
    return Transducer(ab, 4, edges, 0, [3])


@pytest.fixture
def z_conj_oracle():
    """Quotient F(a,b) -> Z killing b; the kernel is generated by the
    conjugates of b."""
    ab = Alphabet.from_pairs([("a", "A"), ("b", "B")])
    return AbelianOracle(ab, 1, {"a": [1], "b": [0]})
