from collections import Counter

import pytest

from combings import Nfa, Transducer, Word
from combings import nfa as nfa_mod
from combings import transducer as td
from bruteforce import (
    lang_of_nfa,
    pairs_of_transducer,
    random_nfa,
    random_transducer,
    random_word,
)


def test_accepts_pair_basics(ab2):
    t = Transducer(ab2, 2, [(0, (0, None), 0), (0, (2, 2), 1)], 0, [1])
    assert td.accepts_pair(t, ab2.word("aab"), ab2.word("b"))
    assert td.accepts_pair(t, ab2.word("b"), ab2.word("b"))
    assert not td.accepts_pair(t, ab2.word("aab"), ab2.word("ab"))
    assert not td.accepts_pair(t, ab2.word("aa"), ab2.word(""))


def test_accepts_pair_vs_bruteforce(rng, ab2):
    for _ in range(25):
        t = random_transducer(rng, ab2, max_states=4)
        want = pairs_of_transducer(t, 6)
        for u, v in want:
            assert td.accepts_pair(t, u, v)
        for _ in range(30):
            u = random_word(rng, ab2, 3)
            v = random_word(rng, ab2, 3)
            assert td.accepts_pair(t, u, v) == ((u, v) in want)


def test_trim_preserves_pairs(rng, ab2):
    for _ in range(25):
        t = random_transducer(rng, ab2)
        assert pairs_of_transducer(td.trim(t), 5) == pairs_of_transducer(t, 5)


def test_union_concat(rng, ab2):
    for _ in range(15):
        a = random_transducer(rng, ab2, max_states=3)
        b = random_transducer(rng, ab2, max_states=3)
        pa, pb = pairs_of_transducer(a, 4), pairs_of_transducer(b, 4)
        assert pairs_of_transducer(td.union(a, b), 4) == pa | pb
        got = pairs_of_transducer(td.concat(a, b), 4)
        want = set()
        for u1, v1 in pa:
            for u2, v2 in pb:
                if len(u1) + len(v1) + len(u2) + len(v2) <= 4:
                    want.add((u1 + u2, v1 + v2))
        assert got == want


def test_from_pairs(ab2):
    pairs = [
        (ab2.word("ab"), ab2.word("")),
        (ab2.word("a"), ab2.word("BB")),
        (ab2.word(""), ab2.word("")),
    ]
    t = td.from_pairs(ab2, pairs)
    assert pairs_of_transducer(t, 6) == set(pairs)


def test_project(rng, ab2):
    for _ in range(20):
        t = random_transducer(rng, ab2)
        pairs = pairs_of_transducer(t, 5)
        for side, pick in (("first", 0), ("second", 1)):
            ref = Nfa(
                ab2,
                t.n,
                [(s, lab[pick], d) for s, lab, d in t.edges],
                t.initial,
                t.terminals,
            )
            got = lang_of_nfa(td.project(t, side), 5)
            assert got == lang_of_nfa(ref, 5)
            assert {uv[pick] for uv in pairs if len(uv[pick]) <= 5} <= got
    with pytest.raises(ValueError):
        td.project(t, "third")


def test_identity_of(rng, ab2):
    for _ in range(15):
        r = random_nfa(rng, ab2, max_states=4)
        t = td.identity_of(r)
        lang = lang_of_nfa(r, 3)
        assert pairs_of_transducer(t, 6) == {(w, w) for w in lang}


def test_intersect_rect(rng, ab2):
    for _ in range(12):
        t = random_transducer(rng, ab2, max_states=3)
        r = random_nfa(rng, ab2, max_states=3)
        s = random_nfa(rng, ab2, max_states=3)
        got = pairs_of_transducer(td.intersect_rect(t, r, s), 5)
        lr = lang_of_nfa(r, 5)
        ls = lang_of_nfa(s, 5)
        want = {(u, v) for u, v in pairs_of_transducer(t, 5) if u in lr and v in ls}
        assert got == want


def test_strip_epsilon_cycles(rng, ab2):
    loop = Transducer(
        ab2, 2, [(0, (None, None), 0), (0, (0, 1), 1), (1, (None, None), 0)], 0, [1]
    )
    s = td.strip_epsilon_cycles(loop)
    assert pairs_of_transducer(s, 4) == pairs_of_transducer(loop, 4)
    for _ in range(20):
        t = random_transducer(rng, ab2, eps_frac=0.45)
        s = td.strip_epsilon_cycles(t)
        assert pairs_of_transducer(s, 4) == pairs_of_transducer(t, 4)
        eps_adj = [[] for _ in range(s.n)]
        for p, (x, y), q in s.edges:
            if x is None and y is None:
                eps_adj[p].append(q)
        comp = td._scc(s.n, eps_adj)
        sizes = Counter(comp)
        assert all(sizes[comp[p]] == 1 for p in range(s.n))
        assert all(q not in eps_adj[q] for q in range(s.n))


def test_synchronized_bound_unbounded(ab2):
    t = Transducer(ab2, 1, [(0, (0, None), 0)], 0, [0])
    assert td.synchronized_bound(t) is None
    assert not td.check_balanced_cycles(t)


def test_synchronized_bound_finite(ab2):
    pairs = [
        (ab2.word("ab"), ab2.word("")),
        (ab2.word("a"), ab2.word("B")),
    ]
    t = td.from_pairs(ab2, pairs)
    k = td.synchronized_bound(t)
    assert k == 2
    assert td.check_balanced_cycles(t)
    balanced = Transducer(ab2, 1, [(0, (0, 1), 0)], 0, [0])
    assert td.synchronized_bound(balanced) == 0


def test_synchronized_bound_is_a_bound(rng, ab2):
    for _ in range(30):
        t = random_transducer(rng, ab2)
        k = td.synchronized_bound(td.trim(t))
        pairs = pairs_of_transducer(t, 8)
        if k is None:
            assert not td.check_balanced_cycles(td.trim(t))
        else:
            for u, v in pairs:
                assert abs(len(u) - len(v)) <= k


def test_enumerate_pairs(rng, ab2):
    for _ in range(25):
        t = random_transducer(rng, ab2)
        got = td.enumerate_pairs(t, 5)
        assert len(set(got)) == len(got)
        assert set(got) == pairs_of_transducer(t, 5)


def test_relabel(ab2):
    def inv(x):
        return ab2.inverse_index(x) if x is not None else None

    t = Transducer(ab2, 2, [(0, (0, 1), 1)], 0, [1])
    swapped = td.relabel(t, lambda lab: (inv(lab[0]), inv(lab[1])))
    assert td.accepts_pair(swapped, ab2.word("A"), ab2.word("a"))
    assert not td.accepts_pair(swapped, ab2.word("a"), ab2.word("A"))
