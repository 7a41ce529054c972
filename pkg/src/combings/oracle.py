"""Group oracles: free, free abelian, and finite groups given by a table.

An oracle maps letters of an inverse-closed alphabet to group elements and
answers identity, distance and ball queries about the Cayley graph over
those images.  Elements are small hashable values (reduced tuples, integer
vectors, table indices), so they can key dictionaries in the searches.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Optional, Sequence

from .transducer import Transducer
from .words import Alphabet, Word, invert_word

DEFAULT_BALL_CAP = 200_000


class CapExceeded(RuntimeError):
    """A ball or distance search grew past its element cap."""


class GroupOracle:
    """Common interface; concrete behavior lives in the subclasses."""

    alphabet: Alphabet
    kind: str

    def identity_element(self) -> Hashable:
        raise NotImplementedError

    def letter_element(self, letter: int) -> Hashable:
        raise NotImplementedError

    def mul_right(self, e: Hashable, letter: int) -> Hashable:
        raise NotImplementedError

    def mul_left(self, letter: int, e: Hashable) -> Hashable:
        raise NotImplementedError

    def inv_element(self, e: Hashable) -> Hashable:
        raise NotImplementedError

    def distance_from_identity(self, e: Hashable, cap: Optional[int] = None) -> Optional[int]:
        raise NotImplementedError

    def element(self, w: Word) -> Hashable:
        if w.alphabet != self.alphabet:
            raise ValueError("word over a different alphabet")
        e = self.identity_element()
        for i in w.indices:
            e = self.mul_right(e, i)
        return e

    def is_identity(self, w: Word) -> bool:
        return self.element(w) == self.identity_element()


class FreeOracle(GroupOracle):
    """The free group on the positive letters; elements are reduced tuples."""

    kind = "free"

    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet

    def identity_element(self):
        return ()

    def letter_element(self, letter: int):
        return (letter,)

    def mul_right(self, e, letter: int):
        if e and e[-1] == self.alphabet.inv[letter]:
            return e[:-1]
        return e + (letter,)

    def mul_left(self, letter: int, e):
        if e and e[0] == self.alphabet.inv[letter]:
            return e[1:]
        return (letter,) + e

    def inv_element(self, e):
        inv = self.alphabet.inv
        return tuple(inv[i] for i in reversed(e))

    def distance_from_identity(self, e, cap: Optional[int] = None) -> Optional[int]:
        d = len(e)
        if cap is not None and d > cap:
            return None
        return d


class AbelianOracle(GroupOracle):
    """Free abelian group of a given rank; letters carry integer weight
    vectors, with weight(x^-1) = -weight(x)."""

    kind = "abelian"

    def __init__(self, alphabet: Alphabet, rank: int, weights: dict[str, Sequence[int]]):
        self.alphabet = alphabet
        self.rank = rank
        vecs: list[Optional[tuple[int, ...]]] = [None] * len(alphabet)
        for sym, vec in weights.items():
            v = tuple(int(c) for c in vec)
            if len(v) != rank:
                raise ValueError(f"weight for {sym} has length {len(v)}, want {rank}")
            vecs[alphabet.index(sym)] = v
        for i in range(len(alphabet)):
            j = alphabet.inv[i]
            if vecs[i] is None and vecs[j] is not None:
                vecs[i] = tuple(-c for c in vecs[j])
        for i in range(len(alphabet)):
            if vecs[i] is None:
                raise ValueError(f"no weight given for letter {alphabet.symbols[i]}")
            j = alphabet.inv[i]
            if vecs[i] != tuple(-c for c in vecs[j]):
                raise ValueError(
                    f"weights of {alphabet.symbols[i]} and {alphabet.symbols[j]} "
                    "are not negatives of each other"
                )
        self.weights: tuple[tuple[int, ...], ...] = tuple(vecs)  # type: ignore[arg-type]
        self._dist: dict[tuple[int, ...], int] = {}
        self._dist_radius = -1

    def identity_element(self):
        return (0,) * self.rank

    def letter_element(self, letter: int):
        return self.weights[letter]

    def mul_right(self, e, letter: int):
        w = self.weights[letter]
        return tuple(a + b for a, b in zip(e, w))

    mul_left = lambda self, letter, e: self.mul_right(e, letter)  # abelian

    def inv_element(self, e):
        return tuple(-c for c in e)

    def distance_from_identity(self, e, cap: Optional[int] = None) -> Optional[int]:
        cap = DEFAULT_BALL_CAP if cap is None else cap
        # grow a cached BFS ball until e shows up or the radius passes cap
        while e not in self._dist and self._dist_radius < cap:
            self._grow_dist_ball()
        d = self._dist.get(e)
        if d is None or d > cap:
            return None
        return d

    def _grow_dist_ball(self):
        r = self._dist_radius
        if r < 0:
            self._dist = {self.identity_element(): 0}
            self._dist_radius = 0
            return
        frontier = [e for e, d in self._dist.items() if d == r]
        for e in frontier:
            for letter in range(len(self.alphabet)):
                f = self.mul_right(e, letter)
                if f not in self._dist:
                    self._dist[f] = r + 1
        if len(self._dist) > DEFAULT_BALL_CAP:
            raise CapExceeded(
                f"distance ball exceeded {DEFAULT_BALL_CAP} elements at radius {r + 1}"
            )
        self._dist_radius = r + 1


class FiniteOracle(GroupOracle):
    """A finite group by its full multiplication table; element 0 is the
    identity.  table[g][h] = g*h."""

    kind = "finite"

    def __init__(self, alphabet: Alphabet, table: Sequence[Sequence[int]], letter_images: dict[str, int]):
        self.alphabet = alphabet
        n = len(table)
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        for g, row in enumerate(self.table):
            if len(row) != n:
                raise ValueError(f"table row {g} has length {len(row)}, want {n}")
            for h in row:
                if not 0 <= h < n:
                    raise ValueError(f"table entry {h} out of range")
        for g in range(n):
            if self.table[0][g] != g or self.table[g][0] != g:
                raise ValueError("element 0 is not an identity for the table")
        inverse = [None] * n
        for g in range(n):
            for h in range(n):
                if self.table[g][h] == 0:
                    inverse[g] = h
        if any(v is None for v in inverse):
            raise ValueError("some element has no inverse in the table")
        self.inverse = tuple(inverse)
        imgs: list[Optional[int]] = [None] * len(alphabet)
        for sym, g in letter_images.items():
            if not 0 <= g < n:
                raise ValueError(f"letter {sym} maps to {g}, out of range")
            imgs[alphabet.index(sym)] = g
        for i in range(len(alphabet)):
            j = alphabet.inv[i]
            if imgs[i] is None and imgs[j] is not None:
                imgs[i] = self.inverse[imgs[j]]
        for i in range(len(alphabet)):
            if imgs[i] is None:
                raise ValueError(f"no image given for letter {alphabet.symbols[i]}")
            j = alphabet.inv[i]
            if imgs[i] != self.inverse[imgs[j]]:
                raise ValueError(
                    f"images of {alphabet.symbols[i]} and {alphabet.symbols[j]} "
                    "are not mutually inverse"
                )
        self.letter_images: tuple[int, ...] = tuple(imgs)  # type: ignore[arg-type]
        self._dist: Optional[dict[int, int]] = None

    def identity_element(self):
        return 0

    def letter_element(self, letter: int):
        return self.letter_images[letter]

    def mul_right(self, e, letter: int):
        return self.table[e][self.letter_images[letter]]

    def mul_left(self, letter: int, e):
        return self.table[self.letter_images[letter]][e]

    def inv_element(self, e):
        return self.inverse[e]

    def distance_from_identity(self, e, cap: Optional[int] = None) -> Optional[int]:
        if self._dist is None:
            dist = {0: 0}
            queue = deque([0])
            while queue:
                g = queue.popleft()
                for letter in range(len(self.alphabet)):
                    h = self.mul_right(g, letter)
                    if h not in dist:
                        dist[h] = dist[g] + 1
                        queue.append(h)
            self._dist = dist
        d = self._dist.get(e)
        if d is None or (cap is not None and d > cap):
            return None
        return d


@dataclass
class CayleyBall:
    """The radius-k ball around the identity: distances, shortlex-least
    representative words, and elements in discovery (shortlex) order."""

    oracle: GroupOracle
    radius: int
    dist: dict = field(repr=False)
    rep: dict = field(repr=False)
    order: list = field(repr=False)

    def __contains__(self, e) -> bool:
        return e in self.dist

    def __len__(self) -> int:
        return len(self.dist)

    def neighbor(self, e, letter: int):
        """Right multiplication by a letter, or None if it leaves the ball."""
        f = self.oracle.mul_right(e, letter)
        return f if f in self.dist else None


def ball(o: GroupOracle, k: int, cap: int = DEFAULT_BALL_CAP) -> CayleyBall:
    """Breadth-first ball of radius k.  Processing the queue in shortlex
    order of the discovery words makes each representative shortlex-least."""
    if k < 0:
        raise ValueError("radius must be nonnegative")
    e0 = o.identity_element()
    empty = o.alphabet.empty_word()
    dist = {e0: 0}
    rep = {e0: empty}
    order = [e0]
    frontier = [(e0, empty)]
    nletters = len(o.alphabet)
    for r in range(1, k + 1):
        nxt = []
        for e, w in frontier:
            for letter in range(nletters):
                f = o.mul_right(e, letter)
                if f not in dist:
                    dist[f] = r
                    w2 = Word(o.alphabet, w.indices + (letter,))
                    rep[f] = w2
                    order.append(f)
                    nxt.append((f, w2))
                    if len(dist) > cap:
                        raise CapExceeded(
                            f"ball of radius {k} exceeded the cap of {cap} elements; "
                            "use a smaller radius"
                        )
        frontier = nxt
    return CayleyBall(o, k, dist, rep, order)


def distance(o: GroupOracle, u: Word, v: Word, cap: int = 64) -> Optional[int]:
    """Word-metric distance d(ū, v̄) in the Cayley graph over the letter
    images, or None if it exceeds cap."""
    return o.distance_from_identity(o.element(invert_word(u) + v), cap)


def _dist_or_none(o: GroupOracle, e, cap: int) -> Optional[int]:
    return o.distance_from_identity(e, cap)


def ft_distance(o: GroupOracle, mode: str, u: Word, v: Word, cap: int = 64) -> Optional[int]:
    """Fellow-traveler distance between the paths spelled by u and v.

    sync: the words advance in lockstep and the shorter one stalls at its
    end; the value is the max over positions i of d(u(i), v(i)).
    async: the least k admitting a monotone staircase through the prefix
    grid from (0,0) to (|u|,|v|), with steps right, down or diagonal, that
    keeps every visited prefix pair within distance k.  Diagonal steps are
    what makes every synchronous schedule a valid asynchronous one.

    Returns None when the value would exceed cap.
    """
    if u.alphabet != o.alphabet or v.alphabet != o.alphabet:
        raise ValueError("words over a different alphabet")
    if mode == "sync":
        delta = o.identity_element()
        worst = 0
        inv = o.alphabet.inv
        for i in range(max(len(u), len(v))):
            if i < len(u):
                delta = o.mul_left(inv[u.indices[i]], delta)
            if i < len(v):
                delta = o.mul_right(delta, v.indices[i])
            d = _dist_or_none(o, delta, cap)
            if d is None:
                return None
            worst = max(worst, d)
        return worst
    if mode != "async":
        raise ValueError(f"mode must be 'sync' or 'async', not {mode!r}")
    nu, nv = len(u), len(v)
    inv = o.alphabet.inv
    # prefix-difference elements over the grid
    delta = [[None] * (nv + 1) for _ in range(nu + 1)]
    delta[0][0] = o.identity_element()
    for i in range(1, nu + 1):
        delta[i][0] = o.mul_left(inv[u.indices[i - 1]], delta[i - 1][0])
    for i in range(nu + 1):
        for j in range(1, nv + 1):
            delta[i][j] = o.mul_right(delta[i][j - 1], v.indices[j - 1])
    cost = [[None] * (nv + 1) for _ in range(nu + 1)]

    def node_cost(i, j):
        if cost[i][j] is None:
            cost[i][j] = _dist_or_none(o, delta[i][j], cap)
        return cost[i][j]

    best = [[None] * (nv + 1) for _ in range(nu + 1)]
    c0 = node_cost(0, 0)
    if c0 is None:
        return None
    heap = [(c0, 0, 0)]
    best[0][0] = c0
    while heap:
        b, i, j = heapq.heappop(heap)
        if (i, j) == (nu, nv):
            return b
        if best[i][j] is not None and b > best[i][j]:
            continue
        for di, dj in ((1, 0), (0, 1), (1, 1)):
            i2, j2 = i + di, j + dj
            if i2 > nu or j2 > nv:
                continue
            c = node_cost(i2, j2)
            if c is None:
                continue  # beyond cap, unusable
            nb = max(b, c)
            if best[i2][j2] is None or nb < best[i2][j2]:
                best[i2][j2] = nb
                heapq.heappush(heap, (nb, i2, j2))
    return None


def cayley_transducer(o: GroupOracle, target: Word, radius: int, cap: int = DEFAULT_BALL_CAP) -> Transducer:
    """The Cayley automaton on the radius ball: vertices are elements, and
    g --(a,b)--> h whenever g·b̄ = ā·h, i.e. h = ā⁻¹·g·b̄.  Paths from the
    identity labelled (u,v) end at ū⁻¹·v̄, so with the class of the target
    as the lone terminal the accepted pairs are those with ū⁻¹v̄ = target,
    complete for pairs that asynchronously fellow-travel within the radius.
    """
    b = ball(o, radius, cap)
    tgt = o.element(target)
    if tgt not in b:
        raise ValueError(
            f"target class lies outside the ball of radius {radius}"
        )
    ids = {e: i for i, e in enumerate(b.order)}
    inv = o.alphabet.inv
    nletters = len(o.alphabet)
    edges = []
    letters = [None] + list(range(nletters))
    for e in b.order:
        src = ids[e]
        for a in letters:
            ea = e if a is None else o.mul_left(inv[a], e)
            for bb in letters:
                if a is None and bb is None:
                    continue
                h = ea if bb is None else o.mul_right(ea, bb)
                if h in ids:
                    edges.append((src, (a, bb), ids[h]))
    return Transducer(o.alphabet, len(ids), edges, ids[o.identity_element()], [ids[tgt]])
