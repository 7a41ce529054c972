"""Combing checks, generator extraction, and combing construction.

The two directions of the correspondence live here: extract_generators
produces, from a combing C of a group G = F/N, a linear language of
freely reduced normal generators of N; build_combing goes the other way,
producing from such a language (with significant letters) a regular
prefix-closed combing with uniqueness.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import nfa as nfa_mod
from . import transducer as td
from .linear import LinearLanguage, combine_linear, intersect_regular, invert_linear
from .nfa import Nfa
from .oracle import CayleyBall, GroupOracle, ball, ft_distance
from .transducer import Transducer
from .words import Alphabet, Word, free_reduce, invert_word, shortlex_key


# ---------------------------------------------------------------- significant


@dataclass(frozen=True)
class SigWord:
    """A freely reduced nonempty word with a marked letter (1-based)."""

    word: Word
    sig: int

    def __post_init__(self):
        if len(self.word) == 0:
            raise ValueError("empty word cannot carry a significant letter")
        if not self.word.is_freely_reduced():
            raise ValueError(f"word {self.word} is not freely reduced")
        if not 1 <= self.sig <= len(self.word):
            raise ValueError(f"position {self.sig} outside word of length {len(self.word)}")

    def inverse(self) -> "SigWord":
        return SigWord(invert_word(self.word), len(self.word) + 1 - self.sig)


@dataclass
class SigViolation:
    left: SigWord
    right: SigWord
    reduced: Word
    cancelled: str  # "left", "right" or "both"

    def __str__(self) -> str:
        where = "both sides" if self.cancelled == "both" else f"{self.cancelled} side"
        return (
            f"product {self.left.word}·{self.right.word} reduces to "
            f"{str(self.reduced) or 'ε'} and cancels the marked letter "
            f"({where})"
        )


def _junction_cancellation(a: Word, b: Word) -> int:
    """Length of the block cancelled when the freely reduced words a and b
    are concatenated."""
    inv = a.alphabet.inv
    m, n = len(a), len(b)
    t = 0
    while t < m and t < n and a.indices[m - 1 - t] == inv[b.indices[t]]:
        t += 1
    return t


def check_significant(
    sample: list[SigWord], close_under_inversion: bool = True
) -> Optional[SigViolation]:
    """Check the marked letters over every ordered product of sample words.

    A marked letter must survive free reduction of w1·w2 unless the product
    reduces to the empty word.  With close_under_inversion the sample is
    first completed with the mirrored marks on the inverses, which covers
    all sign combinations of the products.  Returns None on success or the
    first violation found.
    """
    items = list(sample)
    if close_under_inversion:
        present = {sw.word for sw in items}
        for sw in sample:
            iw = sw.inverse()
            if iw.word not in present:
                items.append(iw)
                present.add(iw.word)
    for s1 in items:
        for s2 in items:
            a, b = s1.word, s2.word
            m, n = len(a), len(b)
            t = _junction_cancellation(a, b)
            if t == m and t == n:
                continue  # the product collapses entirely; allowed
            hit_left = s1.sig > m - t
            hit_right = s2.sig <= t
            if hit_left or hit_right:
                reduced = a[: m - t] + b[t:]
                which = "both" if (hit_left and hit_right) else ("left" if hit_left else "right")
                return SigViolation(s1, s2, reduced, which)
    return None


def search_significant(words: list[Word]) -> Optional[list[SigWord]]:
    """Exhaustively search a significant-letter assignment for the words.

    Inverse words are constrained together (the mark mirrors), so the
    search runs over one representative per {w, w^-1} orbit, backtracking
    on the pairwise product checks.  Returns marks for the input words in
    order, or None when no assignment exists.
    """
    uniq: list[Word] = []
    seen = set()
    for w in words:
        if len(w) == 0 or not w.is_freely_reduced():
            raise ValueError(f"word {str(w) or 'ε'} is not freely reduced and nonempty")
        if w not in seen:
            seen.add(w)
            uniq.append(w)
    orbits: list[Word] = []
    orbit_of: dict[Word, tuple[int, bool]] = {}
    for w in uniq:
        if w in orbit_of:
            continue
        iw = invert_word(w)
        orbit_of[w] = (len(orbits), False)
        if iw != w:
            orbit_of[iw] = (len(orbits), True)
        orbits.append(w)

    assigned: list[SigWord] = []

    def ok_with(new: SigWord) -> bool:
        group = [new, new.inverse()]
        others = assigned + [g for a in assigned for g in [a.inverse()]]
        for x in group:
            for y in others + group:
                for s1, s2 in ((x, y), (y, x)):
                    a, b = s1.word, s2.word
                    t = _junction_cancellation(a, b)
                    if t == len(a) and t == len(b):
                        continue
                    if s1.sig > len(a) - t or s2.sig <= t:
                        return False
        return True

    choice: list[int] = []

    def backtrack(i: int) -> bool:
        if i == len(orbits):
            return True
        w = orbits[i]
        # central positions first: they are the likeliest to survive products
        positions = sorted(range(1, len(w) + 1), key=lambda p: (abs(2 * p - (len(w) + 1)), p))
        for pos in positions:
            cand = SigWord(w, pos)
            if ok_with(cand):
                assigned.append(cand)
                choice.append(pos)
                if backtrack(i + 1):
                    return True
                assigned.pop()
                choice.pop()
        return False

    if not backtrack(0):
        return None
    out = []
    for w in uniq:
        idx, inverted = orbit_of[w]
        sw = assigned[idx]
        out.append(sw.inverse() if inverted else sw)
    return out


# ------------------------------------------------------------------- central


@dataclass
class CentralReport:
    max_distance: Fraction
    max_ratio: Fraction
    witness: Optional[SigWord]
    k: Optional[int] = None
    passed: Optional[bool] = None

    def __str__(self) -> str:
        head = f"max center distance {self.max_distance}, max ratio {self.max_ratio}"
        if self.passed is None:
            return head + " (informational)"
        verdict = "pass" if self.passed else "FAIL"
        return f"{head}; k={self.k}: {verdict}"


def check_central(sample: list[SigWord], k: Optional[int] = None) -> CentralReport:
    """How far the marked letters sit from the word centers.

    With k, decides max distance <= k on the sample.  Without k the report
    is informational only; a bounded sample can never certify asymptotic
    centrality.
    """
    from .words import center_distance

    worst = Fraction(0)
    worst_ratio = Fraction(0)
    witness = None
    for sw in sample:
        d = center_distance(sw.word, sw.sig)
        if d > worst:
            worst, witness = d, sw
        r = Fraction(d, len(sw.word))
        worst_ratio = max(worst_ratio, r)
    rep = CentralReport(worst, worst_ratio, witness)
    if k is not None:
        rep.k = k
        rep.passed = worst <= k
    return rep


# ----------------------------------------------------------- combing checking


@dataclass
class CombingReport:
    ball_radius: int
    maxlen: int
    members: int
    ball_size: int
    prefix_closed: bool
    unique: bool
    surjective: bool
    no_identity_subwords: bool
    violations: list[str] = field(default_factory=list)
    ft_mode: Optional[str] = None
    ft_bound: Optional[int] = None

    @property
    def passed(self) -> bool:
        return self.prefix_closed and self.unique and self.surjective and self.no_identity_subwords

    def __str__(self) -> str:
        flags = []
        for name in ("prefix_closed", "unique", "surjective", "no_identity_subwords"):
            flags.append(f"{name}={'ok' if getattr(self, name) else 'FAIL'}")
        s = (
            f"combing check (radius {self.ball_radius}, maxlen {self.maxlen}, "
            f"{self.members} members): " + ", ".join(flags)
        )
        if self.ft_bound is not None:
            s += f", ft_{self.ft_mode}={self.ft_bound}"
        for v in self.violations:
            s += f"\n  witness: {v}"
        return s


def check_combing(c: Nfa, o: GroupOracle, ball_radius: int, maxlen: int) -> CombingReport:
    """Bounded verification that L(c) is a prefix-closed combing with
    uniqueness: every prefix of an enumerated member is accepted, every
    ball element is hit exactly once by enumerated members, and no
    nonempty subword of a member is oracle-trivial.  Each failed flag
    comes with a concrete witness."""
    members = nfa_mod.enumerate_words(c, maxlen)
    mset = set(members)
    violations: list[str] = []

    prefix_closed = True
    for w in members:
        for i in range(len(w)):
            if w[:i] not in mset:
                prefix_closed = False
                violations.append(f"prefix {str(w[:i]) or 'ε'} of member {w} is not accepted")
                break
        if not prefix_closed:
            break

    bl = ball(o, ball_radius)
    hit: dict = {}
    unique = True
    for w in members:
        e = o.element(w)
        if e not in bl:
            continue
        if e in hit and unique:
            unique = False
            violations.append(
                f"members {str(hit[e]) or 'ε'} and {str(w) or 'ε'} define the same element"
            )
        hit.setdefault(e, w)
    surjective = True
    for e in bl.order:
        if e not in hit:
            surjective = False
            violations.append(
                f"ball element with representative {str(bl.rep[e]) or 'ε'} "
                f"is hit by no member of length <= {maxlen}"
            )
            break

    no_identity_subwords = True
    for w in members:
        if not no_identity_subwords:
            break
        prefix_elems = [o.identity_element()]
        for i in w.indices:
            prefix_elems.append(o.mul_right(prefix_elems[-1], i))
        index_of: dict = {}
        for j, e in enumerate(prefix_elems):
            if e in index_of:
                i = index_of[e]
                no_identity_subwords = False
                violations.append(f"subword {w[i:j]} of member {w} defines the identity")
                break
            index_of[e] = j

    return CombingReport(
        ball_radius=ball_radius,
        maxlen=maxlen,
        members=len(members),
        ball_size=len(bl),
        prefix_closed=prefix_closed,
        unique=unique,
        surjective=surjective,
        no_identity_subwords=no_identity_subwords,
        violations=violations,
    )


def ft_bound_of_combing(
    c: Nfa,
    o: GroupOracle,
    mode: str,
    maxlen: int,
    cap: int = 64,
    max_members: int = 2000,
) -> Optional[int]:
    """Empirical fellow-traveler bound: the max ft_distance over enumerated
    member pairs whose images lie at distance <= 1 in the group.  None when
    some pair exceeds the cap (no bound established)."""
    members = nfa_mod.enumerate_words(c, maxlen)
    if len(members) > max_members:
        members = members[:max_members]
    elems = [(w, o.element(w)) for w in members]
    worst = 0
    for i, (u, _eu) in enumerate(elems):
        for v, _ev in elems[i + 1 :]:
            d = o.distance_from_identity(o.element(invert_word(u) + v), 1)
            if d is None or d > 1:
                continue
            f = ft_distance(o, mode, u, v, cap)
            if f is None:
                return None
            worst = max(worst, f)
    return worst


# --------------------------------------------------------------- core + tails


def core_subgraph(t: Transducer) -> tuple[frozenset[int], frozenset]:
    """Vertices and edges of t from which some cycle is reachable.

    The complement contains no cycles and receives no edges back into the
    core, so every successful path is a core prefix followed by a short
    acyclic tail.
    """
    adj: list[list[int]] = [[] for _ in range(t.n)]
    for s, _lab, d in t.edges:
        adj[s].append(d)
    comp = td._scc(t.n, adj)
    sizes: dict[int, int] = {}
    for v in range(t.n):
        sizes[comp[v]] = sizes.get(comp[v], 0) + 1
    cyclic = {comp[s] for s, _lab, d in t.edges if s == d}
    for c, size in sizes.items():
        if size >= 2:
            cyclic.add(c)
    # vertices that reach a cyclic component, by reverse search
    radj: list[list[int]] = [[] for _ in range(t.n)]
    for s, _lab, d in t.edges:
        radj[d].append(s)
    core = {v for v in range(t.n) if comp[v] in cyclic}
    queue = deque(core)
    while queue:
        v = queue.popleft()
        for p in radj[v]:
            if p not in core:
                core.add(p)
                queue.append(p)
    edges = frozenset(e for e in t.edges if e[2] in core)
    return frozenset(core), edges


def _first_tape_core(t: Transducer, core_v: frozenset[int], core_e) -> Nfa:
    """C0: the first-tape projection of the core, every state terminal.
    An empty core yields the one-word language {ε}."""
    if not core_v:
        return Nfa(t.alphabet, 1, [], 0, [0])
    order = sorted(core_v)
    remap = {old: new for new, old in enumerate(order)}
    edges = [(remap[s], lab[0], remap[d]) for s, lab, d in core_e]
    return Nfa(t.alphabet, len(order), edges, remap[t.initial], range(len(order)))


def _tail_data(
    t: Transducer,
    core_v: frozenset[int],
    core_e,
    o: GroupOracle,
    guard: int = 200_000,
):
    """Group classes of the word tails that successful paths append beyond
    the core, with a length bound good enough to locate each class by a
    ball search.

    A tail is a prefix of x1·y1^-1 where (x1, y1) labels an off-core path
    suffix.  The first-tape prefixes are collected exactly.  The mixed
    prefixes combine each accepting tail state with the second-tape head
    classes seen among its ancestors; that still over-approximates (heads
    of merging paths mix), which only enlarges the candidate set.
    """
    e0 = o.identity_element()
    starts = []
    if core_v:
        for s, lab, d in t.edges:
            if s in core_v and (s, lab, d) not in core_e:
                starts.append((d, lab))
    else:
        starts.append((t.initial, None))

    def apply(lab, ex, ey):
        x, y = lab
        ex2 = ex if x is None else o.mul_right(ex, x)
        ey2 = ey if y is None else o.mul_right(ey, y)
        lx = 0 if x is None else 1
        ly = 0 if y is None else 1
        return ex2, ey2, lx, ly

    # BFS over (vertex, x-class, y-class); lengths recorded at first visit
    best: dict[tuple, tuple[int, int]] = {}
    pred: dict[tuple, list[tuple]] = {}
    queue = deque()

    def visit(key, lx, ly):
        if key not in best:
            best[key] = (lx, ly)
            pred[key] = []
            queue.append(key)
            if len(best) > guard:
                raise RuntimeError(
                    f"tail search exceeded {guard} states; the off-core part is too wide"
                )

    for d, lab in starts:
        if lab is None:
            visit((d, e0, e0), 0, 0)
        else:
            ex, ey, lx, ly = apply(lab, e0, e0)
            visit((d, ex, ey), lx, ly)
    adj = t.adjacency()
    while queue:
        key = queue.popleft()
        v, ex, ey = key
        lx, ly = best[key]
        for lab, q in adj[v]:
            ex2, ey2, dx, dy = apply(lab, ex, ey)
            key2 = (q, ex2, ey2)
            visit(key2, lx + dx, ly + dy)
            pred[key2].append(key)

    classes: dict = {e0: 0}  # class -> representative word-length bound

    def note(cls, bound):
        if cls not in classes or bound < classes[cls]:
            classes[cls] = bound

    for (_v, ex, _ey), (lx, _ly) in best.items():
        note(ex, lx)
    for fkey in best:
        if fkey[0] not in t.terminals:
            continue
        _fv, fex, fey = fkey
        flx, fly = best[fkey]
        base = _mul_elems(o, fex, o.inv_element(fey))
        # head classes among the ancestors of this accepting state
        cone = {fkey}
        stack = [fkey]
        while stack:
            for p in pred[stack.pop()]:
                if p not in cone:
                    cone.add(p)
                    stack.append(p)
        heads: dict = {e0: 0}
        for (_v2, _ex2, ey2) in cone:
            ly2 = best[(_v2, _ex2, ey2)][1]
            if ey2 not in heads or ly2 < heads[ey2]:
                heads[ey2] = ly2
        for hy, lh in heads.items():
            note(_mul_elems(o, base, hy), flx + fly + lh)
    return classes


def _mul_elems(o: GroupOracle, a, b):
    """Multiply two oracle elements.  Oracles expose letter products only,
    so this goes through the kind-specific representations."""
    if o.kind == "free":
        out = list(a)
        for i in b:
            if out and out[-1] == o.alphabet.inv[i]:
                out.pop()
            else:
                out.append(i)
        return tuple(out)
    if o.kind == "abelian":
        return tuple(x + y for x, y in zip(a, b))
    if o.kind == "finite":
        return o.table[a][b]
    raise ValueError(f"unknown oracle kind {o.kind}")


# ----------------------------------------------------------------- extraction


def _pair_product(c1: Nfa, c2: Nfa, o: GroupOracle, bl: CayleyBall):
    """Reachable product of two word automata with a Cayley-ball tracker:
    states (p, q, h) with h the class of u^-1·v for the prefixes read so
    far.  Returns the transducer (no terminals set) plus the state list."""
    if c1.alphabet != c2.alphabet:
        raise ValueError("different alphabets")
    inv = c1.alphabet.inv
    a1 = c1.adjacency()
    a2 = c2.adjacency()
    e0 = o.identity_element()
    ids: dict[tuple, int] = {}
    statelist: list[tuple] = []
    edges = []
    queue = deque()

    def sid(p, q, h):
        key = (p, q, h)
        if key not in ids:
            ids[key] = len(statelist)
            statelist.append(key)
            queue.append(key)
        return ids[key]

    start = sid(c1.initial, c2.initial, e0)
    while queue:
        p, q, h = queue.popleft()
        me = ids[(p, q, h)]
        moves1 = [(x, p2) for x, p2 in a1[p]] + [(None, p)]
        moves2 = [(y, q2) for y, q2 in a2[q]] + [(None, q)]
        for i1, (x, p2) in enumerate(moves1):
            stay1 = i1 == len(moves1) - 1
            h1 = h if x is None else o.mul_left(inv[x], h)
            for i2, (y, q2) in enumerate(moves2):
                stay2 = i2 == len(moves2) - 1
                if stay1 and stay2:
                    continue
                h2 = h1 if y is None else o.mul_right(h1, y)
                if h2 in bl.dist:
                    edges.append((me, (x, y), sid(p2, q2, h2)))
    t = Transducer(c1.alphabet, len(statelist), edges, start, [])
    return t, statelist


def extract_generators(
    c: Nfa, o: GroupOracle, ft_bound: int, cap: int = 200_000
) -> LinearLanguage:
    """From a combing C, the linear language {u·a·v^-1 : u,v in C, ū·ā = v̄,
    freely reduced}, whose members normally generate the kernel.

    Built per letter a as the C × C pair product over the radius-ft_bound
    Cayley ball, accepting at terminal × terminal × (class of a), with the
    pair (a, ε) appended; the union over letters is intersected with the
    nonempty freely reduced words.  Complete for pairs that asynchronously
    fellow-travel within ft_bound; garbage in, garbage out when c is not
    actually a combing.
    """
    c = nfa_mod.remove_epsilon(nfa_mod.trim(c))
    bl = ball(o, ft_bound, cap)
    prod, statelist = _pair_product(c, c, o, bl)
    alphabet = c.alphabet
    pieces = []
    for a in range(len(alphabet)):
        ea = o.letter_element(a)
        if ea not in bl.dist:
            continue
        terms = [
            i
            for i, (p, q, h) in enumerate(statelist)
            if h == ea and p in c.terminals and q in c.terminals
        ]
        if not terms:
            continue
        rho = td.trim(Transducer(alphabet, prod.n, prod.edges, prod.initial, terms))
        if not rho.terminals:
            continue
        tail = td.from_pairs(alphabet, [(Word(alphabet, (a,)), alphabet.empty_word())])
        pieces.append(td.concat(rho, tail))
    if not pieces:
        return LinearLanguage(Transducer(alphabet, 1, [], 0, []), "inverse")
    t = pieces[0]
    for p in pieces[1:]:
        t = td.union(t, p)
    lang = LinearLanguage(td.trim(t), "inverse")
    reduced = nfa_mod.freely_reduced_lang(alphabet, include_empty=False)
    return intersect_regular(lang, reduced)


# --------------------------------------------------------------- construction


@dataclass
class BuildReport:
    K: int
    vertices: int
    edges: int
    core_vertices: int
    core_edges: int
    c0_states: int
    ft_empirical: Optional[int]
    ft_used: int
    ft_structural: int
    suffix_bound: str
    x_candidates: int
    x_kept: list[str]
    ball_radius: int
    product_states: int
    upto_ok: bool
    balanced_cycles: Optional[bool]
    c0_contained: bool
    cprime_states: int
    cprime_ft_sync: Optional[int] = None
    warnings: list[str] = field(default_factory=list)

    def __str__(self) -> str:
        lines = [
            f"K={self.K} (vertices {self.vertices}, edges {self.edges})",
            f"core: {self.core_vertices} vertices, {self.core_edges} edges; "
            f"C0 has {self.c0_states} states",
            f"fellow-traveler bound: empirical {self.ft_empirical}, "
            f"used {self.ft_used}, structural {self.ft_structural}",
            f"suffix bound {self.suffix_bound!r}; {self.x_candidates} candidates, "
            f"kept {len(self.x_kept)}: {self.x_kept}",
            f"cayley ball radius {self.ball_radius}; product {self.product_states} states",
            f"upto check: {'ok' if self.upto_ok else 'VIOLATED'}; "
            f"balanced cycles: {self.balanced_cycles}; "
            f"C0 contained in C': {self.c0_contained}",
            f"C' has {self.cprime_states} states",
        ]
        if self.cprime_ft_sync is not None:
            lines.append(f"C' synchronous ft bound (sampled): {self.cprime_ft_sync}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        return "\n".join(lines)


def _find_accepting_path(t: Transducer, u: Word, v: Word):
    """One accepting path for the pair (u, v) as a list of edges, or None."""
    adj = t.adjacency()
    start = (t.initial, 0, 0)
    parent: dict = {start: None}
    queue = deque([start])
    goal = None
    while queue:
        p, i, j = queue.popleft()
        if p in t.terminals and i == len(u) and j == len(v):
            goal = (p, i, j)
            break
        for (x, y), q in adj[p]:
            i2 = i
            if x is not None:
                if i == len(u) or u.indices[i] != x:
                    continue
                i2 = i + 1
            j2 = j
            if y is not None:
                if j == len(v) or v.indices[j] != y:
                    continue
                j2 = j + 1
            nxt = (q, i2, j2)
            if nxt not in parent:
                parent[nxt] = ((p, i, j), (p, (x, y), q))
                queue.append(nxt)
    if goal is None:
        return None
    path = []
    cur = goal
    while parent[cur] is not None:
        prev, edge = parent[cur]
        path.append(edge)
        cur = prev
    path.reverse()
    return path


def _check_upto(t: Transducer, core_e, pairs, marks: dict, limit: int = 60) -> tuple[bool, str]:
    """Sampled check that the edge carrying each significant letter lies
    off-core.  Only the first `limit` pairs are walked; path recovery on a
    large transducer is the expensive part."""
    for u, v in pairs[:limit]:
        w = u + invert_word(v)
        sw = marks.get(w)
        if sw is None:
            continue
        path = _find_accepting_path(t, u, v)
        if path is None:
            continue
        sig = sw.sig
        if sig <= len(u):
            want_tape, want_count = 0, sig
        else:
            want_tape, want_count = 1, len(v) - (sig - len(u)) + 1
        count = 0
        hit = None
        for edge in path:
            lab = edge[1][want_tape]
            if lab is not None:
                count += 1
                if count == want_count:
                    hit = edge
                    break
        if hit is not None and hit in core_e:
            return False, (
                f"significant letter of {w} (position {sig}) is carried by a core edge"
            )
    return True, ""


def build_combing(
    l: LinearLanguage,
    o: GroupOracle,
    central: bool = False,
    ft_hint: int = 0,
    margin: int = 2,
    sample_len: int = 8,
    ft_sample_len: int = 6,
    ft_cap: int = 64,
    ball_cap: int = 200_000,
) -> tuple[Nfa, BuildReport]:
    """Construct a regular prefix-closed combing with uniqueness from a
    linear language of freely reduced normal generators with significant
    letters.

    Stages: close the language under inversion, strip (ε,ε) cycles and trim;
    sample members to confirm significant letters exist; split off the core
    (the cycle-supported part) and project its first tape into the
    prefix-closed C0; measure an empirical fellow-traveler bound for C0 and
    add the margin; collect the off-core tail classes to bound the suffix
    candidates X (shortlex-least class representatives); then for each x in
    X remove from C0 the starts r for which some shortlex-smaller y and
    some s in C0 satisfy r̄·x̄ = s̄·ȳ, witnessed inside the Cayley-ball
    product of C0 with itself, and append x to what survives.  The union of
    the surviving pieces, trimmed, is C'.
    """
    if l.mode != "inverse":
        raise ValueError("build_combing expects the u·v^-1 convention")
    alphabet = l.t.alphabet
    warnings: list[str] = []

    closed = combine_linear("union", l, invert_linear(l))
    t = td.trim(closed.t)
    t = td.strip_epsilon_cycles(t)
    t = td.trim(t)
    if not t.terminals:
        raise ValueError(
            "the generator language is empty: the group is free on the images "
            "of the alphabet and there is nothing to construct"
        )

    pairs = td.enumerate_pairs(t, sample_len)
    members = []
    seen_members = set()
    for u, v in pairs:
        w = u + invert_word(v)
        if w in seen_members:
            continue
        seen_members.add(w)
        if len(w) == 0:
            raise ValueError("the generator language contains the empty word")
        if not w.is_freely_reduced():
            raise ValueError(f"generator {w} is not freely reduced")
        members.append(w)
    assignment = search_significant(members) if members else []
    if assignment is None:
        centered = [SigWord(w, (len(w) + 1) // 2) for w in members]
        viol = check_significant(centered)
        raise ValueError(
            "no significant-letter assignment exists for the sampled members; "
            f"for the centered marks: {viol}"
        )
    marks = {sw.word: sw for sw in assignment}

    balanced: Optional[bool] = td.check_balanced_cycles(t)
    if central and not balanced:
        raise ValueError(
            "central construction requires every cycle to read tapes of "
            "equal length, and some cycle is unbalanced"
        )

    K = t.n + len(t.edges) + 1
    core_v, core_e = core_subgraph(t)
    upto_ok, upto_note = _check_upto(t, core_e, pairs, marks)
    if not upto_ok:
        warnings.append(upto_note)

    c0 = nfa_mod.minimize(_first_tape_core(t, core_v, core_e))
    mode = "sync" if central else "async"
    ft_emp = ft_bound_of_combing(c0, o, mode, ft_sample_len, ft_cap)
    if ft_emp is None:
        raise ValueError(
            f"no empirical fellow-traveler bound within cap {ft_cap}; "
            "the core prefixes do not fellow-travel"
        )
    k_used = max(ft_emp, ft_hint) + margin

    tail_classes = _tail_data(t, core_v, core_e, o, guard=ball_cap)
    need = set(tail_classes)
    radius = 0
    bl_tail = ball(o, 0, ball_cap)
    max_bound = max(tail_classes.values(), default=0)
    while not need <= set(bl_tail.dist):
        radius += 1
        if radius > max_bound:
            raise RuntimeError("tail class escaped its own length bound")
        bl_tail = ball(o, radius, ball_cap)
    m_word = max((bl_tail.rep[cls] for cls in need), key=shortlex_key)

    bl_x = ball(o, len(m_word), ball_cap)
    key_m = shortlex_key(m_word)
    xs = sorted(
        (w for w in bl_x.rep.values() if shortlex_key(w) <= key_m),
        key=shortlex_key,
    )

    radius_r = k_used + 2 * len(m_word)
    bl_r = ball(o, radius_r, ball_cap)
    c0e = nfa_mod.remove_epsilon(c0)
    prod, statelist = _pair_product(c0e, c0e, o, bl_r)
    reach_h = {h for (_p, _q, h) in statelist}
    proj_edges = [(s, lab[0], d) for s, lab, d in prod.edges]

    x_elems = [(x, o.element(x)) for x in xs]
    pieces = []
    kept: list[str] = []
    for i, (x, ex) in enumerate(x_elems):
        dset = set()
        for y, ey in x_elems[:i]:
            diff = _mul_elems(o, ex, o.inv_element(ey))
            if diff in reach_h:
                dset.add(diff)
        if dset:
            terms = [
                j
                for j, (p, q, h) in enumerate(statelist)
                if h in dset and p in c0e.terminals and q in c0e.terminals
            ]
            n_x = Nfa(alphabet, prod.n, proj_edges, prod.initial, terms)
            cx = nfa_mod.difference(c0, n_x)
        else:
            cx = c0
        cx = nfa_mod.trim(cx)
        if cx.terminals:
            pieces.append(nfa_mod.concat(cx, nfa_mod.from_word(alphabet, x)))
            kept.append(str(x) or "ε")
    if not pieces:
        raise RuntimeError("no suffix candidate survived; input is not as expected")
    cp = pieces[0]
    for p in pieces[1:]:
        cp = nfa_mod.union(cp, p)
    cprime = nfa_mod.trim(cp)

    c0_contained = nfa_mod.is_empty_language(nfa_mod.difference(c0, cprime))
    if not c0_contained:
        warnings.append("C0 is not contained in C'")

    report = BuildReport(
        K=K,
        vertices=t.n,
        edges=len(t.edges),
        core_vertices=len(core_v),
        core_edges=len(core_e),
        c0_states=c0.n,
        ft_empirical=ft_emp,
        ft_used=k_used,
        ft_structural=6 * K,
        suffix_bound=str(m_word) or "ε",
        x_candidates=len(xs),
        x_kept=kept,
        ball_radius=radius_r,
        product_states=prod.n,
        upto_ok=upto_ok,
        balanced_cycles=balanced,
        c0_contained=c0_contained,
        cprime_states=cprime.n,
        warnings=warnings,
    )
    if central:
        report.cprime_ft_sync = ft_bound_of_combing(cprime, o, "sync", ft_sample_len, ft_cap)
    return cprime, report
