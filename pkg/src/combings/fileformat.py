"""Text format for automata, transducers, linear languages, and oracles.

One object per file.  Every file opens with an `alphabet` line and the
`inverse` pairing lines, then a kind line (`nfa`, `transducer`,
`linear inverse`, `linear reversal`, or `oracle free|abelian|finite`),
then the body.  `#` starts a comment; tokens are whitespace-separated;
`-` stands for epsilon in edge labels.  Writers renumber vertices
breadth-first and sort edges, so output is byte-stable.
"""

from __future__ import annotations

from typing import Union

from .linear import LinearLanguage
from .nfa import Nfa, renumber_bfs
from .oracle import AbelianOracle, FiniteOracle, FreeOracle, GroupOracle
from .transducer import Transducer
from .words import Alphabet

Parsed = Union[Nfa, Transducer, LinearLanguage, GroupOracle]


class FormatError(ValueError):
    def __init__(self, lineno: int, msg: str):
        super().__init__(f"line {lineno}: {msg}")
        self.lineno = lineno


def _rows(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append((i, line.split()))
    return out


class _Cursor:
    def __init__(self, rows):
        self.rows = rows
        self.pos = 0

    def peek(self):
        return self.rows[self.pos] if self.pos < len(self.rows) else (0, [])

    def take(self):
        row = self.peek()
        self.pos += 1
        return row

    def done(self) -> bool:
        return self.pos >= len(self.rows)


def _int(lineno: int, tok: str, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise FormatError(lineno, f"{what} must be an integer, got {tok!r}") from None


def _parse_alphabet(cur: _Cursor) -> Alphabet:
    lineno, toks = cur.take()
    if not toks or toks[0] != "alphabet":
        raise FormatError(lineno or 1, "expected an alphabet line first")
    symbols = toks[1:]
    if not symbols:
        raise FormatError(lineno, "alphabet line lists no letters")
    pairs = []
    while not cur.done() and cur.peek()[1][0] == "inverse":
        lineno, toks = cur.take()
        if len(toks) != 3:
            raise FormatError(lineno, "inverse line takes exactly two letters")
        pairs.append((toks[1], toks[2]))
    try:
        return Alphabet(symbols, pairs)
    except ValueError as e:
        raise FormatError(lineno, str(e)) from None


def _label(lineno: int, alphabet: Alphabet, tok: str):
    if tok == "-":
        return None
    try:
        return alphabet.index(tok)
    except ValueError:
        raise FormatError(lineno, f"unknown letter {tok!r}") from None


def _parse_machine(cur: _Cursor, alphabet: Alphabet, nlabels: int):
    """Shared body for nfa (1 label per edge) and transducer (2 labels)."""
    lineno, toks = cur.take()
    if len(toks) != 2 or toks[0] != "states":
        raise FormatError(lineno or 1, "expected a states line")
    n = _int(lineno, toks[1], "state count")
    if n <= 0:
        raise FormatError(lineno, "state count must be positive")

    lineno, toks = cur.take()
    if len(toks) != 2 or toks[0] != "initial":
        raise FormatError(lineno or 1, "expected an initial line")
    initial = _int(lineno, toks[1], "initial state")

    lineno, toks = cur.take()
    if not toks or toks[0] != "final":
        raise FormatError(lineno or 1, "expected a final line")
    finals = [_int(lineno, tok, "final state") for tok in toks[1:]]

    edges = []
    while not cur.done():
        lineno, toks = cur.take()
        if toks[0] != "edge":
            raise FormatError(lineno, f"unexpected line {toks[0]!r} in edge section")
        if len(toks) != 3 + nlabels:
            raise FormatError(
                lineno, f"edge line takes source, {nlabels} label(s), and target"
            )
        src = _int(lineno, toks[1], "edge source")
        dst = _int(lineno, toks[-1], "edge target")
        labels = [_label(lineno, alphabet, tok) for tok in toks[2:-1]]
        lab = labels[0] if nlabels == 1 else tuple(labels)
        edges.append((src, lab, dst))
    try:
        if nlabels == 1:
            return Nfa(alphabet, n, edges, initial, finals)
        return Transducer(alphabet, n, edges, initial, finals)
    except ValueError as e:
        raise FormatError(lineno, str(e)) from None


def _parse_oracle(cur: _Cursor, alphabet: Alphabet, kind_lineno: int, toks: list[str]):
    if len(toks) != 2:
        raise FormatError(kind_lineno, "oracle line takes one kind")
    kind = toks[1]
    if kind == "free":
        if not cur.done():
            raise FormatError(cur.peek()[0], "oracle free takes no body")
        return FreeOracle(alphabet)
    if kind == "abelian":
        lineno, toks = cur.take()
        if len(toks) != 2 or toks[0] != "rank":
            raise FormatError(lineno or 1, "expected a rank line")
        rank = _int(lineno, toks[1], "rank")
        weights = {}
        while not cur.done():
            lineno, toks = cur.take()
            if toks[0] != "weight":
                raise FormatError(lineno, f"unexpected line {toks[0]!r} in oracle body")
            if len(toks) != 2 + rank:
                raise FormatError(lineno, f"weight line takes a letter and {rank} integers")
            weights[toks[1]] = [_int(lineno, t, "weight entry") for t in toks[2:]]
        try:
            return AbelianOracle(alphabet, rank, weights)
        except ValueError as e:
            raise FormatError(lineno, str(e)) from None
    if kind == "finite":
        lineno, toks = cur.take()
        if len(toks) != 2 or toks[0] != "elements":
            raise FormatError(lineno or 1, "expected an elements line")
        count = _int(lineno, toks[1], "element count")
        letters = {}
        while not cur.done() and cur.peek()[1][0] == "letter":
            lineno, toks = cur.take()
            if len(toks) != 3:
                raise FormatError(lineno, "letter line takes a letter and an element")
            letters[toks[1]] = _int(lineno, toks[2], "letter image")
        table = []
        while not cur.done():
            lineno, toks = cur.take()
            if toks[0] != "table":
                raise FormatError(lineno, f"unexpected line {toks[0]!r} in oracle body")
            table.append([_int(lineno, t, "table entry") for t in toks[1:]])
        if len(table) != count:
            raise FormatError(lineno, f"expected {count} table rows, got {len(table)}")
        try:
            return FiniteOracle(alphabet, table, letters)
        except ValueError as e:
            raise FormatError(lineno, str(e)) from None
    raise FormatError(kind_lineno, f"unknown oracle kind {kind!r}")


def parse(text: str) -> Parsed:
    cur = _Cursor(_rows(text))
    if cur.done():
        raise FormatError(1, "empty file")
    alphabet = _parse_alphabet(cur)
    lineno, toks = cur.take()
    if not toks:
        raise FormatError(lineno or 1, "missing kind line after the alphabet")
    kind = toks[0]
    if kind == "nfa":
        return _parse_machine(cur, alphabet, 1)
    if kind == "transducer":
        return _parse_machine(cur, alphabet, 2)
    if kind == "linear":
        if len(toks) != 2 or toks[1] not in ("inverse", "reversal"):
            raise FormatError(lineno, "linear takes a mode: inverse or reversal")
        t = _parse_machine(cur, alphabet, 2)
        return LinearLanguage(t, toks[1])
    if kind == "oracle":
        return _parse_oracle(cur, alphabet, lineno, toks)
    raise FormatError(lineno, f"unknown kind {kind!r}")


def parse_file(path) -> Parsed:
    with open(path, encoding="utf-8") as f:
        return parse(f.read())


def _alphabet_lines(alphabet: Alphabet) -> list[str]:
    lines = ["alphabet " + " ".join(alphabet.symbols)]
    for i, j in enumerate(alphabet.inv):
        if i < j:
            lines.append(f"inverse {alphabet.symbols[i]} {alphabet.symbols[j]}")
    return lines


def _sym(alphabet: Alphabet, lab) -> str:
    return "-" if lab is None else alphabet.symbols[lab]


def write_nfa(a: Nfa) -> str:
    a = renumber_bfs(a)
    lines = _alphabet_lines(a.alphabet)
    lines.append("nfa")
    lines.append(f"states {a.n}")
    lines.append(f"initial {a.initial}")
    lines.append("final " + " ".join(str(t) for t in sorted(a.terminals)))
    for s, x, d in sorted(a.edges, key=lambda e: (e[0], -1 if e[1] is None else e[1], e[2])):
        lines.append(f"edge {s} {_sym(a.alphabet, x)} {d}")
    return "\n".join(lines).rstrip() + "\n"


def _transducer_body(t: Transducer, kind_line: str) -> str:
    lines = _alphabet_lines(t.alphabet)
    lines.append(kind_line)
    lines.append(f"states {t.n}")
    lines.append(f"initial {t.initial}")
    lines.append("final " + " ".join(str(x) for x in sorted(t.terminals)))
    def key(e):
        s, (x, y), d = e
        return (s, -1 if x is None else x, -1 if y is None else y, d)
    for s, (x, y), d in sorted(t.edges, key=key):
        lines.append(f"edge {s} {_sym(t.alphabet, x)} {_sym(t.alphabet, y)} {d}")
    return "\n".join(lines).rstrip() + "\n"


def write_transducer(t: Transducer) -> str:
    return _transducer_body(_renumber_transducer(t), "transducer")


def write_linear(l: LinearLanguage) -> str:
    return _transducer_body(_renumber_transducer(l.t), f"linear {l.mode}")


def _renumber_transducer(t: Transducer) -> Transducer:
    """Breadth-first canonical order, like nfa.renumber_bfs."""
    adj: list[list[tuple]] = [[] for _ in range(t.n)]
    for s, (x, y), d in t.edges:
        adj[s].append((-1 if x is None else x, -1 if y is None else y, d))
    order: list[int] = []
    seen = {t.initial}
    queue = [t.initial]
    while queue:
        p = queue.pop(0)
        order.append(p)
        for _x, _y, q in sorted(adj[p]):
            if q not in seen:
                seen.add(q)
                queue.append(q)
    order.extend(p for p in range(t.n) if p not in seen)
    remap = {old: new for new, old in enumerate(order)}
    edges = [(remap[s], lab, remap[d]) for s, lab, d in t.edges]
    return Transducer(t.alphabet, t.n, edges, remap[t.initial], [remap[x] for x in t.terminals])


def write_oracle(o: GroupOracle) -> str:
    lines = _alphabet_lines(o.alphabet)
    if isinstance(o, FreeOracle):
        lines.append("oracle free")
    elif isinstance(o, AbelianOracle):
        lines.append("oracle abelian")
        lines.append(f"rank {o.rank}")
        for i, j in enumerate(o.alphabet.inv):
            if i < j:
                vec = " ".join(str(c) for c in o.weights[i])
                lines.append(f"weight {o.alphabet.symbols[i]} {vec}")
    elif isinstance(o, FiniteOracle):
        lines.append("oracle finite")
        lines.append(f"elements {len(o.table)}")
        for i, j in enumerate(o.alphabet.inv):
            if i < j:
                lines.append(f"letter {o.alphabet.symbols[i]} {o.letter_images[i]}")
        for row in o.table:
            lines.append("table " + " ".join(str(x) for x in row))
    else:
        raise ValueError(f"cannot serialize oracle {o!r}")
    return "\n".join(lines) + "\n"


def write(obj: Parsed) -> str:
    if isinstance(obj, Nfa):
        return write_nfa(obj)
    if isinstance(obj, LinearLanguage):
        return write_linear(obj)
    if isinstance(obj, Transducer):
        return write_transducer(obj)
    if isinstance(obj, GroupOracle):
        return write_oracle(obj)
    raise ValueError(f"cannot serialize {obj!r}")


def write_file(path, obj: Parsed) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(write(obj))
