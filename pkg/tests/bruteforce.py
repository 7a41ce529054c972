"""Brute-force reference semantics for the bounded-language tests.

Everything here works directly from the definitions: set simulation over
the complete word tree, worklist saturation over prefix pairs, and plain
set algebra.  None of the library's composite algorithms are in the loop,
so agreement on bounded languages is meaningful evidence.
"""

from itertools import product

from combings import Nfa, Transducer, Word


def words_upto(alphabet, maxlen):
    out = [Word(alphabet, ())]
    k = len(alphabet)
    for n in range(1, maxlen + 1):
        for tup in product(range(k), repeat=n):
            out.append(Word(alphabet, tup))
    return out


def random_word(rng, alphabet, maxlen, minlen=0):
    n = rng.randint(minlen, maxlen)
    return Word(alphabet, [rng.randrange(len(alphabet)) for _ in range(n)])


def random_nfa(rng, alphabet, max_states=5, eps_frac=0.15):
    n = rng.randint(1, max_states)
    m = rng.randint(1, 2 * n + 3)
    edges = []
    for _ in range(m):
        lab = None if rng.random() < eps_frac else rng.randrange(len(alphabet))
        edges.append((rng.randrange(n), lab, rng.randrange(n)))
    terms = [q for q in range(n) if rng.random() < 0.5]
    return Nfa(alphabet, n, edges, 0, terms)


def random_transducer(rng, alphabet, max_states=5, eps_frac=0.2):
    n = rng.randint(1, max_states)
    m = rng.randint(1, 2 * n + 4)
    k = len(alphabet)
    edges = []
    for _ in range(m):
        x = None if rng.random() < eps_frac else rng.randrange(k)
        y = None if rng.random() < eps_frac else rng.randrange(k)
        edges.append((rng.randrange(n), (x, y), rng.randrange(n)))
    terms = [q for q in range(n) if rng.random() < 0.5]
    return Transducer(alphabet, n, edges, 0, terms)


def _closure(eps, states):
    seen = set(states)
    stack = list(states)
    while stack:
        p = stack.pop()
        for q in eps.get(p, ()):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return frozenset(seen)


def _nfa_tables(a):
    eps = {}
    step = {}
    for s, x, d in a.edges:
        if x is None:
            eps.setdefault(s, []).append(d)
        else:
            step.setdefault((s, x), []).append(d)
    return eps, step


def accepts_bf(a: Nfa, w: Word) -> bool:
    eps, step = _nfa_tables(a)
    cur = _closure(eps, {a.initial})
    for x in w.indices:
        nxt = set()
        for p in cur:
            nxt.update(step.get((p, x), ()))
        cur = _closure(eps, nxt)
        if not cur:
            return False
    return bool(cur & a.terminals)


def lang_of_nfa(a: Nfa, maxlen: int) -> set:
    """All accepted words of length <= maxlen, by levelwise set simulation
    over the complete word tree."""
    eps, step = _nfa_tables(a)
    terms = set(a.terminals)
    k = len(a.alphabet)
    frontier = {(): _closure(eps, {a.initial})}
    out = set()
    for n in range(maxlen + 1):
        nxt = {}
        for tup, states in frontier.items():
            if states & terms:
                out.add(Word(a.alphabet, tup))
            if n == maxlen:
                continue
            for x in range(k):
                ns = set()
                for p in states:
                    ns.update(step.get((p, x), ()))
                if ns:
                    nxt[tup + (x,)] = _closure(eps, ns)
        frontier = nxt
    return out


def pairs_of_transducer(t: Transducer, max_total: int) -> set:
    """All accepted pairs with |u| + |v| <= max_total, by worklist
    saturation over (state, read-so-far) triples."""
    adj = {}
    for s, lab, d in t.edges:
        adj.setdefault(s, []).append((lab, d))
    terms = set(t.terminals)
    start = (t.initial, (), ())
    seen = {start}
    stack = [start]
    out = set()
    while stack:
        p, u, v = stack.pop()
        if p in terms:
            out.add((u, v))
        for (x, y), q in adj.get(p, ()):
            u2 = u + (x,) if x is not None else u
            v2 = v + (y,) if y is not None else v
            if len(u2) + len(v2) > max_total:
                continue
            key = (q, u2, v2)
            if key not in seen:
                seen.add(key)
                stack.append(key)
    ab = t.alphabet
    return {(Word(ab, u), Word(ab, v)) for u, v in out}


def concat_sets(xs, ys, maxlen):
    out = set()
    for u in xs:
        if len(u) > maxlen:
            continue
        for v in ys:
            if len(u) + len(v) <= maxlen:
                out.add(u + v)
    return out


def reverse_set(xs):
    return {Word(w.alphabet, tuple(reversed(w.indices))) for w in xs}
