"""Linear languages presented by transducers.

A transducer accepting pairs (u,v) presents one of two word languages:
mode "reversal" gives {u·vʳ} and mode "inverse" gives {u·v⁻¹}.  Members
are the concatenated words as written, with no free reduction applied.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from . import nfa as nfa_mod
from . import transducer as td
from .nfa import Nfa
from .transducer import Transducer
from .words import Word

MODES = ("inverse", "reversal")


class LinearLanguage:
    __slots__ = ("t", "mode")

    def __init__(self, t: Transducer, mode: str):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
        self.t = t
        self.mode = mode

    def __repr__(self) -> str:
        return f"LinearLanguage({self.mode}, {self.t!r})"


def member(l: LinearLanguage, w: Word) -> bool:
    """Membership by a two-ended scan: states (i, j, q) mean the first tape
    has consumed w[:i] and the second tape accounts for w[j:], read from the
    right (inverted letters in inverse mode, plain letters in reversal mode).
    Any split i == j at a terminal state accepts."""
    t = l.t
    if w.alphabet != t.alphabet:
        raise ValueError("word over a different alphabet")
    inv = t.alphabet.inv
    inverse_mode = l.mode == "inverse"
    n = len(w)
    adj = t.adjacency()
    start = (0, n, t.initial)
    seen = {start}
    queue = deque([start])
    while queue:
        i, j, p = queue.popleft()
        if i == j and p in t.terminals:
            return True
        for (x, y), q in adj[p]:
            i2 = i
            if x is not None:
                if i >= j or w.indices[i] != x:
                    continue
                i2 = i + 1
            j2 = j
            if y is not None:
                want = inv[y] if inverse_mode else y
                if j2 <= i2 or w.indices[j2 - 1] != want:
                    continue
                j2 = j2 - 1
            nxt = (i2, j2, q)
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def combine_linear(op: str, a: LinearLanguage, b: LinearLanguage) -> LinearLanguage:
    if a.mode != b.mode:
        raise ValueError("cannot combine linear languages of different modes")
    if op == "union":
        return LinearLanguage(td.union(a.t, b.t), a.mode)
    raise ValueError(f"unsupported linear combination {op!r}")


def intersect_regular(l: LinearLanguage, r: Nfa) -> LinearLanguage:
    """Intersect with a regular language, staying linear.

    The regular side is split per vertex into pairs (X_i, Y_i) with
    R = ∪ X_i·Y_i; the transduction is intersected with each rectangle
    X_i × Y_i' where Y_i' holds the second-tape counterpart of Y_i
    (inverses of members in inverse mode, reversals in reversal mode).
    """
    if l.t.alphabet != r.alphabet:
        raise ValueError("different alphabets")
    r = nfa_mod.trim(r)
    parts: list[Transducer] = []
    for x_i, y_i in nfa_mod.split_decomposition(r):
        if l.mode == "inverse":
            y_side = nfa_mod.inverse_lang(y_i)
        else:
            y_side = nfa_mod.reverse(y_i)
        piece = td.trim(td.intersect_rect(l.t, x_i, y_side))
        if piece.terminals:
            parts.append(piece)
    if not parts:
        return LinearLanguage(
            Transducer(l.t.alphabet, 1, [], 0, []), l.mode
        )
    out = parts[0]
    for p in parts[1:]:
        out = td.union(out, p)
    return LinearLanguage(out, l.mode)


def invert_linear(l: LinearLanguage) -> LinearLanguage:
    """The language {w : w⁻¹ in L}, for inverse-mode presentations.

    Swapping the tapes does it: a pair (u,v) becomes (v,u), whose member
    v·u⁻¹ is exactly (u·v⁻¹)⁻¹.
    """
    if l.mode != "inverse":
        raise ValueError("inversion is defined for the u·v⁻¹ convention only")
    swapped = td.relabel(l.t, lambda lab: (lab[1], lab[0]))
    return LinearLanguage(swapped, "inverse")


def convert_mode(l: LinearLanguage, mode: str) -> LinearLanguage:
    """Reversal and inverse presentations interconvert by inverting the
    second tape letterwise: u·vʳ = u·(v̄)⁻¹ where v̄ inverts each letter."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
    if mode == l.mode:
        return l
    inv = l.t.alphabet.inverse_index
    flipped = td.relabel(
        l.t, lambda lab: (lab[0], None if lab[1] is None else inv(lab[1]))
    )
    return LinearLanguage(flipped, mode)


def enumerate_members(l: LinearLanguage, maxlen: int) -> list[Word]:
    """All members of length <= maxlen, shortlex sorted, duplicates removed.
    A member's length is |u| + |v|, so bounded pair enumeration is exact."""
    from .words import invert_word, shortlex_key

    seen: set[Word] = set()
    for u, v in td.enumerate_pairs(l.t, maxlen):
        if l.mode == "inverse":
            w = u + invert_word(v)
        else:
            w = u + Word(v.alphabet, tuple(reversed(v.indices)))
        seen.add(w)
    return sorted(seen, key=shortlex_key)
