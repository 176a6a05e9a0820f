"""Words, finite presentations, coset enumeration, and finite realizations.

Words are tuples of (generator index, sign) letters, always kept freely
reduced.  Presentations parse from and print to the text grammar

    < a, b | a^2, b^2, (a b)^3 >

with `u = v` accepted as sugar for the relator u v^-1.

Enumeration runs either the HLT strategy (relator scanning with filling,
plus a lookahead pass when space runs short) or the Felsch strategy
(minimal definitions driven by a deduction stack); both are classical
Todd-Coxeter and must agree.  Completed tables are standardized by a
breadth-first renumbering, so for a fixed presentation and subgroup the
two strategies return byte-identical tables, which the test suite uses
as a cross-engine oracle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import _engine
from .abelian import FinGenAbelian, IntegerMatrix, abelian_from_relations
from .errors import BudgetExceeded, EnumerationCancelled, InternalInvariantError, ParseError

__all__ = [
    "Word",
    "free_reduce",
    "invert_word",
    "word_power",
    "cyclic_reduce",
    "format_word",
    "parse_word",
    "FpPresentation",
    "parse_presentation",
    "CosetTable",
    "coset_enumerate",
    "FiniteGroupRealization",
    "realize",
    "DEFAULT_BUDGET",
    "DEFAULT_MAX_BYTES",
]

# A word is a tuple of (generator index, sign) letters with sign +1 or -1.
Word = tuple

DEFAULT_BUDGET = 2_000_000
DEFAULT_MAX_BYTES = 1 << 30


def free_reduce(letters) -> Word:
    """Freely reduce a letter sequence.

    >>> free_reduce([(0, 1), (1, 1), (1, -1), (0, 1)])
    ((0, 1), (0, 1))
    """
    out = []
    for g, s in letters:
        if s not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {s!r}")
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def invert_word(w: Word) -> Word:
    return tuple((g, -s) for g, s in reversed(w))


def word_power(w: Word, n: int) -> Word:
    if n < 0:
        w, n = invert_word(w), -n
    return free_reduce(w * n)


def cyclic_reduce(w: Word) -> Word:
    """Strip cancelling first/last letters; the relator it names is unchanged.

    >>> cyclic_reduce(((0, -1), (1, 1), (0, 1)))
    ((1, 1),)
    """
    w = free_reduce(w)
    lo, hi = 0, len(w)
    while hi - lo >= 2 and w[lo][0] == w[hi - 1][0] and w[lo][1] == -w[hi - 1][1]:
        lo += 1
        hi -= 1
    return w[lo:hi]


def format_word(w: Word, names) -> str:
    """Render a word with collapsed exponent runs; the empty word is "1".

    >>> format_word(((0, 1), (0, 1), (1, -1)), ["a", "b"])
    'a^2 b^-1'
    """
    if not w:
        return "1"
    parts = []
    i = 0
    while i < len(w):
        g, s = w[i]
        j = i
        while j < len(w) and w[j] == (g, s):
            j += 1
        e = (j - i) * s
        parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        i = j
    return " ".join(parts)


_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TOKEN_RE = re.compile(r"\s*(?:(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<int>\d+)|(?P<sym>[<>|,()^=*-]))")


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items = []  # (kind, value, position)
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                stripped = text[pos:].lstrip()
                if not stripped:
                    break
                at = len(text) - len(stripped)
                raise ParseError(f"unexpected character {stripped[0]!r}", at)
            if m.group("name"):
                self.items.append(("name", m.group("name"), m.start("name")))
            elif m.group("int"):
                self.items.append(("int", m.group("int"), m.start("int")))
            else:
                self.items.append(("sym", m.group("sym"), m.start("sym")))
            pos = m.end()
        self.k = 0

    def peek(self):
        if self.k < len(self.items):
            return self.items[self.k]
        return ("end", "", len(self.text))

    def next(self):
        t = self.peek()
        self.k += 1
        return t

    def expect_sym(self, sym: str):
        kind, val, pos = self.next()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r}, found {val or 'end of input'!r}", pos)


def _parse_int(tok: _Tokens) -> int:
    kind, val, pos = tok.next()
    sign = 1
    if kind == "sym" and val == "-":
        sign = -1
        kind, val, pos = tok.next()
    if kind != "int":
        raise ParseError("expected an integer exponent", pos)
    return sign * int(val)


def _parse_word(tok: _Tokens, index: dict) -> Word:
    """factor+ where factor = atom ['^' int]; atom = name | '(' word ')' | '1'."""
    letters = []
    parsed_any = False
    while True:
        kind, val, pos = tok.peek()
        if kind == "name":
            tok.next()
            if val not in index:
                raise ParseError(f"unknown generator {val!r}", pos)
            atom = ((index[val], 1),)
        elif kind == "int" and val == "1":
            tok.next()
            atom = ()
        elif kind == "sym" and val == "(":
            tok.next()
            atom = _parse_word(tok, index)
            tok.expect_sym(")")
        elif kind == "sym" and val == "*" and parsed_any:
            tok.next()
            continue
        else:
            break
        kind, val, _ = tok.peek()
        if kind == "sym" and val == "^":
            tok.next()
            atom = word_power(atom, _parse_int(tok))
        letters.extend(atom)
        parsed_any = True
    if not parsed_any:
        kind, val, pos = tok.peek()
        raise ParseError(f"expected a word, found {val or 'end of input'!r}", pos)
    return free_reduce(letters)


def _parse_relation(tok: _Tokens, index: dict) -> list:
    """word ('=' word)* -> one relator per adjacent pair (u v^-1)."""
    words = [_parse_word(tok, index)]
    while True:
        kind, val, _ = tok.peek()
        if kind == "sym" and val == "=":
            tok.next()
            words.append(_parse_word(tok, index))
        else:
            break
    if len(words) == 1:
        return [words[0]]
    return [free_reduce(u + invert_word(v)) for u, v in zip(words, words[1:])]


def parse_word(text: str, generator_names) -> Word:
    """Parse one word over the given generator names.

    >>> parse_word("s2 s1^2 s2^-1", ["s1", "s2"])
    ((1, 1), (0, 1), (0, 1), (1, -1))
    """
    index = {n: i for i, n in enumerate(generator_names)}
    tok = _Tokens(text)
    w = _parse_word(tok, index)
    kind, val, pos = tok.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", pos)
    return w


def parse_presentation(text: str) -> "FpPresentation":
    """Parse `< gens | relators >`.

    >>> p = parse_presentation("< a, b | a^2, b^2, (a b)^3 >")
    >>> p.generator_names, len(p.relators)
    (('a', 'b'), 3)
    >>> parse_presentation("<s1,s2| s1 s2 s1 = s2 s1 s2 >").relators[0]
    ((0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1))
    """
    tok = _Tokens(text)
    tok.expect_sym("<")
    names = []
    while True:
        kind, val, pos = tok.peek()
        if kind == "sym" and val in ("|", ">"):
            break
        if kind == "end":
            raise ParseError("unterminated presentation", pos)
        kind, val, pos = tok.next()
        if kind != "name":
            raise ParseError(f"expected a generator name, found {val!r}", pos)
        if val in names:
            raise ParseError(f"duplicate generator name {val!r}", pos)
        names.append(val)
        kind, val, _ = tok.peek()
        if kind == "sym" and val == ",":
            tok.next()
    relators = []
    kind, val, pos = tok.peek()
    if kind == "sym" and val == "|":
        tok.next()
        index = {n: i for i, n in enumerate(names)}
        kind, val, pos = tok.peek()
        if not (kind == "sym" and val == ">"):
            relators.extend(_parse_relation(tok, index))
            while True:
                kind, val, pos = tok.peek()
                if kind == "sym" and val == ",":
                    tok.next()
                    relators.extend(_parse_relation(tok, index))
                else:
                    break
    tok.expect_sym(">")
    kind, val, pos = tok.peek()
    if kind != "end":
        raise ParseError(f"trailing input {val!r}", pos)
    return FpPresentation(tuple(names), tuple(relators))


@dataclass(frozen=True)
class FpPresentation:
    """A finite presentation; relators are stored freely reduced.

    >>> FpPresentation(("a",), (((0, 1), (0, 1)),)).format()
    '< a | a^2 >'
    """

    generator_names: tuple
    relators: tuple

    def __post_init__(self):
        seen = set()
        for n in self.generator_names:
            if not isinstance(n, str) or not _NAME_RE.fullmatch(n):
                raise ValueError(f"invalid generator name {n!r}")
            if n in seen:
                raise ValueError(f"duplicate generator name {n!r}")
            seen.add(n)
        reduced = []
        for w in self.relators:
            rw = free_reduce(w)
            for g, s in rw:
                if not (0 <= g < len(self.generator_names)):
                    raise ValueError(f"letter references generator {g}, out of range")
            reduced.append(rw)
        object.__setattr__(self, "relators", tuple(reduced))

    @classmethod
    def parse(cls, text: str) -> "FpPresentation":
        return parse_presentation(text)

    @classmethod
    def free(cls, names) -> "FpPresentation":
        return cls(tuple(names), ())

    @property
    def num_generators(self) -> int:
        return len(self.generator_names)

    def with_extra_relators(self, extra) -> "FpPresentation":
        return FpPresentation(self.generator_names, self.relators + tuple(extra))

    def abelianization(self) -> FinGenAbelian:
        """Quotient by all commutators, via the relator exponent matrix.

        >>> parse_presentation("< a | a^2 >").abelianization()
        FinGenAbelian(free_rank=0, invariant_factors=(2,))
        >>> parse_presentation("<s1,s2| s1 s2 s1 = s2 s1 s2 >").abelianization()
        FinGenAbelian(free_rank=1, invariant_factors=())
        """
        n = self.num_generators
        rows = []
        for w in self.relators:
            row = [0] * n
            for g, s in w:
                row[g] += s
            rows.append(row)
        m = IntegerMatrix.from_rows(rows) if rows else IntegerMatrix.zeros(0, n)
        return abelian_from_relations(n, m)

    def format(self) -> str:
        gens = ", ".join(self.generator_names)
        rels = ", ".join(format_word(w, self.generator_names) for w in self.relators)
        return f"< {gens} | {rels} >" if rels else f"< {gens} | >"

    def __str__(self) -> str:
        return self.format()


# ------------------------------------------------------------ enumeration


def _encode_word(w: Word) -> np.ndarray:
    return np.array([2 * g + (0 if s > 0 else 1) for g, s in w], dtype=np.int32)


def _pack_words(words) -> tuple:
    data = np.concatenate([_encode_word(w) for w in words]) if words else np.zeros(0, np.int32)
    off = np.zeros(len(words) + 1, np.int64)
    for i, w in enumerate(words):
        off[i + 1] = off[i] + len(w)
    return data, off


def _cyclic_relator_classes(relators) -> list:
    """Deduplicate relators up to rotation and inversion, keeping order."""
    seen = set()
    out = []
    for w in relators:
        w = cyclic_reduce(w)
        if not w:
            continue
        cols = tuple(2 * g + (0 if s > 0 else 1) for g, s in w)
        icols = tuple(c ^ 1 for c in reversed(cols))
        key = min(
            min(cols[i:] + cols[:i] for i in range(len(cols))),
            min(icols[i:] + icols[:i] for i in range(len(icols))),
        )
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


def _build_edp(rel_words, ncols) -> tuple:
    """Column-indexed cyclic conjugates of relators and their inverses."""
    buckets = [[] for _ in range(ncols)]
    for w in rel_words:
        cols = tuple(2 * g + (0 if s > 0 else 1) for g, s in w)
        icols = tuple(c ^ 1 for c in reversed(cols))
        variants = set()
        for base in (cols, icols):
            for i in range(len(base)):
                variants.add(base[i:] + base[:i])
        for v in sorted(variants):
            buckets[v[0]].append(v)
    coff = np.zeros(ncols + 1, np.int64)
    woff = [0]
    flat = []
    for x in range(ncols):
        coff[x + 1] = coff[x] + len(buckets[x])
        for v in buckets[x]:
            flat.extend(v)
            woff.append(len(flat))
    return (
        np.array(flat, dtype=np.int32),
        np.array(woff, dtype=np.int64),
        coff,
    )


class CosetTable:
    """A complete, standardized coset table.

    Rows are cosets (row 0 is the subgroup itself), columns alternate
    generator and inverse.  The table is read-only.
    """

    def __init__(self, table: np.ndarray, presentation: FpPresentation, subgroup_words):
        self.table = table
        self.table.flags.writeable = False
        self.presentation = presentation
        self.subgroup_words = tuple(subgroup_words)
        self.complete = True

    @property
    def num_cosets(self) -> int:
        return int(self.table.shape[0])

    def trace(self, coset: int, w: Word) -> int:
        c = int(coset)
        for g, s in w:
            c = int(self.table[c, 2 * g + (0 if s > 0 else 1)])
        return c

    def permutation(self, gen: int) -> np.ndarray:
        """The permutation a generator induces on cosets."""
        return self.table[:, 2 * gen].copy()

    def __eq__(self, other):
        return isinstance(other, CosetTable) and np.array_equal(self.table, other.table)

    def __repr__(self):
        return f"CosetTable(num_cosets={self.num_cosets}, gens={self.presentation.num_generators})"


def _as_word(w, presentation: FpPresentation) -> Word:
    if isinstance(w, str):
        return parse_word(w, presentation.generator_names)
    return free_reduce(w)


def _compact(table, p, dstack, S, strategy):
    n = int(S[_engine.S_NROWS])
    ncols = table.shape[1]
    pa = p[:n].astype(np.int64)
    while True:
        pb = pa[pa]
        if np.array_equal(pb, pa):
            break
        pa = pb
    live = np.flatnonzero(pa == np.arange(n))
    newidx = np.full(n, -1, np.int64)
    newidx[live] = np.arange(live.size)
    tt = table[:n][live]
    mask = tt >= 0
    out = np.full_like(tt, -1)
    out[mask] = newidx[pa[tt[mask]]]
    if (out[mask] < 0).any():
        raise InternalInvariantError("live coset references a dead coset during compaction")
    table[: live.size] = out
    table[live.size : n] = -1
    p[:n] = np.arange(n, dtype=np.int32)
    if strategy == "felsch" and S[_engine.S_DLEN] > 0:
        m = int(S[_engine.S_DLEN])
        codes = dstack[:m]
        a = codes // ncols
        x = codes % ncols
        a2 = newidx[pa[a]]
        keep = a2 >= 0
        remapped = a2[keep] * ncols + x[keep]
        dstack[: remapped.size] = remapped
        S[_engine.S_DLEN] = remapped.size
    alpha = int(S[_engine.S_ALPHA])
    if alpha < n:
        S[_engine.S_ALPHA] = int(newidx[pa[alpha]])
    S[_engine.S_NROWS] = live.size
    S[_engine.S_DEAD] = 0


def coset_enumerate(
    presentation: FpPresentation,
    subgroup=(),
    *,
    strategy: str = "hlt",
    budget: int = DEFAULT_BUDGET,
    max_bytes: int = DEFAULT_MAX_BYTES,
    cancel: np.ndarray | None = None,
    _dstack_size: int = 1 << 15,
) -> CosetTable:
    """Todd-Coxeter enumeration of the cosets of a subgroup.

    `subgroup` is an iterable of words (or strings in the presentation's
    generators) generating the subgroup.  `budget` caps the total number
    of cosets ever defined; exceeding it raises BudgetExceeded, which
    signals "did not close within budget", never "the index is infinite".
    `cancel` may be an int64 array of length 1; setting its entry
    nonzero from another thread aborts the run (polled at least every
    10^4 definitions) with EnumerationCancelled.

    The returned table is standardized (cosets renumbered breadth-first
    from the subgroup coset), so both strategies ("hlt" and "felsch")
    return identical tables.

    >>> coset_enumerate(parse_presentation("< a | a^6 >")).num_cosets
    6
    """
    if strategy not in ("hlt", "felsch"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    ngens = presentation.num_generators
    sub_words = tuple(_as_word(w, presentation) for w in subgroup)
    if ngens == 0:
        table = np.zeros((1, 0), dtype=np.int32)
        return CosetTable(table, presentation, sub_words)

    ncols = 2 * ngens
    rel_words = _cyclic_relator_classes(presentation.relators)
    rel_data, rel_off = _pack_words(rel_words)
    sg_scan = [w for w in sub_words if w]
    sg_data, sg_off = _pack_words(sg_scan)
    if strategy == "felsch":
        edp_data, edp_woff, edp_coff = _build_edp(rel_words, ncols)
        dstack = np.zeros(max(int(_dstack_size), 4), dtype=np.int64)
    else:
        edp_data = edp_woff = edp_coff = None
        dstack = np.zeros(1, dtype=np.int64)

    bytes_per_row = 4 * ncols + 8
    max_rows = max(int(max_bytes // bytes_per_row), 1)
    cap = min(1024, budget, max_rows)
    table = np.full((cap, ncols), -1, dtype=np.int32)
    p = np.arange(cap, dtype=np.int32)
    queue = np.zeros(cap, dtype=np.int32)
    S = np.zeros(_engine.S_SIZE, dtype=np.int64)
    S[_engine.S_NROWS] = 1
    S[_engine.S_TOTAL] = 1
    if cancel is None:
        cancel = np.zeros(1, dtype=np.int64)

    looked = False
    while True:
        if strategy == "hlt":
            _engine._run_hlt(table, p, queue, dstack, S, rel_data, rel_off, sg_data, sg_off, ncols, budget, cancel)
        else:
            _engine._run_felsch(
                table, p, queue, dstack, S, edp_data, edp_woff, edp_coff, rel_data, rel_off, sg_data, sg_off, ncols,
                budget, cancel,
            )
        st = int(S[_engine.S_STATUS])
        if st == _engine.STATUS_OK:
            break
        if st == _engine.STATUS_BUDGET:
            raise BudgetExceeded(
                f"enumeration defined {int(S[_engine.S_TOTAL])} cosets without closing"
                f" (budget {budget})",
                defined=int(S[_engine.S_TOTAL]),
                budget=budget,
            )
        if st == _engine.STATUS_CANCELLED:
            raise EnumerationCancelled()
        # STATUS_GROW: try lookahead (HLT), then compaction, then growth
        if strategy == "hlt" and not looked and int(S[_engine.S_DEAD]) * 4 < int(S[_engine.S_NROWS]):
            looked = True
            _engine._lookahead(table, p, queue, dstack, S, rel_data, rel_off, ncols, cancel)
            if int(S[_engine.S_STATUS]) == _engine.STATUS_CANCELLED:
                raise EnumerationCancelled()
        if int(S[_engine.S_DEAD]) * 4 >= int(S[_engine.S_NROWS]):
            _compact(table, p, dstack, S, strategy)
            looked = False
            continue
        newcap = min(cap * 2, max_rows, budget)
        if newcap > cap:
            new_table = np.full((newcap, ncols), -1, dtype=np.int32)
            new_table[:cap] = table
            new_p = np.arange(newcap, dtype=np.int32)
            new_p[:cap] = p
            table, p = new_table, new_p
            queue = np.zeros(newcap, dtype=np.int32)
            cap = newcap
            looked = False
            continue
        if int(S[_engine.S_DEAD]) > 0:
            _compact(table, p, dstack, S, strategy)
            continue
        raise BudgetExceeded(
            f"coset table would exceed the memory cap ({max_bytes} bytes)",
            defined=int(S[_engine.S_TOTAL]),
            budget=budget,
        )

    nrows = int(S[_engine.S_NROWS])
    live = int(nrows - S[_engine.S_DEAD])
    std = _engine._standardize(table, nrows, ncols)
    if std.shape[0] != live:
        raise InternalInvariantError(
            f"standardization reached {std.shape[0]} cosets, {live} live"
        )
    if int(_engine._verify(std, rel_data, rel_off)) != 0:
        raise InternalInvariantError("completed table fails relator verification")
    result = CosetTable(std, presentation, sub_words)
    for w in sub_words:
        if result.trace(0, w) != 0:
            raise InternalInvariantError("subgroup generator does not fix coset 0")
    return result


# ------------------------------------------------------------ realization


class FiniteGroupRealization:
    """A finite group as an explicit multiplication table.

    Element 0 is the identity.  `mul[i, j]` is the product i * j; `inv`
    is the inverse table.  Construction checks the identity and inverse
    laws everywhere and associativity exhaustively up to order 128
    (100000 seeded random triples above that).
    """

    def __init__(self, mul: np.ndarray, generator_map=(), element_words=None, presentation=None):
        mul = np.ascontiguousarray(np.asarray(mul, dtype=np.int32))
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1]:
            raise ValueError("multiplication table must be square")
        n = mul.shape[0]
        if n == 0:
            raise ValueError("a group has at least the identity element")
        if mul.min() < 0 or mul.max() >= n:
            raise ValueError("multiplication table entries out of range")
        idx = np.arange(n)
        if not np.array_equal(mul[0], idx) or not np.array_equal(mul[:, 0], idx):
            raise ValueError("element 0 must act as the identity")
        eq_zero = mul == 0
        if not np.array_equal(eq_zero.sum(axis=1), np.ones(n, dtype=np.int64)):
            raise ValueError("some element has no unique inverse")
        inv = np.argmax(eq_zero, axis=1).astype(np.int32)
        if n <= 128:
            left = mul[mul, :]
            right = mul[idx[:, None, None], mul[None, :, :]]
            if not np.array_equal(left, right):
                raise ValueError("multiplication table is not associative")
        else:
            rng = np.random.default_rng(12345)
            a, b, c = rng.integers(0, n, size=(3, 100_000))
            if not np.array_equal(mul[mul[a, b], c], mul[a, mul[b, c]]):
                raise ValueError("multiplication table is not associative (sampled)")
        self.mul = mul
        self.mul.flags.writeable = False
        self.inv = inv
        self.inv.flags.writeable = False
        self.order = n
        self.identity = 0
        self.generator_map = tuple(int(g) for g in generator_map)
        self.element_words = tuple(element_words) if element_words is not None else None
        self.presentation = presentation

    def __len__(self) -> int:
        return self.order

    def __repr__(self):
        return f"FiniteGroupRealization(order={self.order})"

    def mul_elements(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def conjugate(self, x: int, y: int) -> int:
        """x^y = y^-1 x y."""
        return int(self.mul[self.mul[self.inv[y], x], y])

    def commutator(self, x: int, y: int) -> int:
        """[x, y] = x^-1 y^-1 x y."""
        return int(self.mul[self.mul[self.mul[self.inv[x], self.inv[y]], x], y])

    def power(self, x: int, n: int) -> int:
        if n < 0:
            x, n = int(self.inv[x]), -n
        acc = 0
        for _ in range(n):
            acc = int(self.mul[acc, x])
        return acc

    def element_order(self, x: int) -> int:
        k = 1
        acc = int(x)
        while acc != 0:
            acc = int(self.mul[acc, x])
            k += 1
        return k

    def evaluate_word(self, w: Word) -> int:
        """Evaluate a word in the presentation generators."""
        acc = 0
        for g, s in w:
            e = self.generator_map[g]
            acc = int(self.mul[acc, e if s > 0 else self.inv[e]])
        return acc

    def subgroup_closure(self, gens) -> tuple:
        """The subgroup generated by the given elements, sorted."""
        seen = {0}
        frontier = [0]
        gens = sorted({int(g) for g in gens})
        for g in gens:
            if g not in seen:
                seen.add(g)
                frontier.append(g)
        while frontier:
            a = frontier.pop()
            for g in gens:
                b = int(self.mul[a, g])
                if b not in seen:
                    seen.add(b)
                    frontier.append(b)
        return tuple(sorted(seen))

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def center(self) -> tuple:
        mask = (self.mul == self.mul.T).all(axis=1)
        return tuple(int(z) for z in np.flatnonzero(mask))

    def commutator_subgroup(self) -> tuple:
        n = self.order
        a = self.mul[self.inv[:, None], self.inv[None, :]]
        comms = self.mul[a, self.mul]
        return self.subgroup_closure(np.unique(comms))

    def is_normal(self, subgroup) -> bool:
        sub = set(subgroup)
        for g in range(self.order):
            for x in subgroup:
                if self.conjugate(int(x), g) not in sub:
                    return False
        return True

    def quotient_by(self, subgroup) -> tuple:
        """Quotient by a normal subgroup; returns (group, projection).

        `projection[e]` is the quotient index of the coset of e.
        """
        sub = tuple(sorted(int(x) for x in subgroup))
        if not sub or sub[0] != 0:
            raise ValueError("subgroup must contain the identity")
        if not self.is_normal(sub):
            raise ValueError("subgroup is not normal")
        rep = self.mul[:, sub].min(axis=1)
        ids = np.unique(rep)
        proj = np.searchsorted(ids, rep).astype(np.int32)
        mul_q = proj[rep[self.mul[np.ix_(ids, ids)]]]
        gmap = tuple(int(proj[g]) for g in self.generator_map)
        return FiniteGroupRealization(mul_q, generator_map=gmap), proj

    def abelian_invariants(self) -> FinGenAbelian:
        """Invariant factors of the abelianization.

        Works by repeatedly splitting off a cyclic factor generated by
        an element of maximal order, which in a finite abelian group is
        always a direct summand; no factorization and no relation matrix
        is involved, making this an independent check on the Smith form
        route.
        """
        q, _ = self.quotient_by(self.commutator_subgroup())
        divisors = []
        while q.order > 1:
            orders = [q.element_order(x) for x in range(q.order)]
            m = max(orders)
            x = orders.index(m)
            divisors.append(m)
            q, _ = q.quotient_by(q.subgroup_closure([x]))
        return FinGenAbelian.from_divisors(divisors)

    def regular_presentation(self) -> FpPresentation:
        """One generator per element, one relator per product."""
        n = self.order
        names = tuple(f"x{i}" for i in range(n))
        relators = []
        for i in range(n):
            for j in range(n):
                k = int(self.mul[i, j])
                relators.append(((i, 1), (j, 1), (k, -1)))
        return FpPresentation(names, tuple(relators))


def realize(
    presentation: FpPresentation,
    *,
    strategy: str = "hlt",
    budget: int = DEFAULT_BUDGET,
    max_bytes: int = DEFAULT_MAX_BYTES,
    cancel: np.ndarray | None = None,
) -> FiniteGroupRealization:
    """Concrete finite group from a presentation, via the regular action.

    Enumerates cosets of the trivial subgroup; coset 0 becomes the
    identity, and each element carries a representative word read off
    the breadth-first spanning tree of the table.

    >>> realize(parse_presentation("< a, b | a^2, b^2, (a b)^3 >")).order
    6
    """
    ct = coset_enumerate(
        presentation, (), strategy=strategy, budget=budget, max_bytes=max_bytes, cancel=cancel
    )
    n = ct.num_cosets
    ngens = presentation.num_generators
    table = ct.table
    word_cols: list = [None] * n
    word_cols[0] = ()
    for i in range(n):
        for x in range(2 * ngens):
            j = int(table[i, x])
            if word_cols[j] is None:
                word_cols[j] = word_cols[i] + (x,)
    mul = np.empty((n, n), dtype=np.int32)
    state0 = np.arange(n, dtype=np.int32)
    for j in range(n):
        state = state0
        for c in word_cols[j]:
            state = table[state, c]
        mul[:, j] = state
    element_words = tuple(
        tuple((c // 2, 1 if c % 2 == 0 else -1) for c in cols) for cols in word_cols
    )
    gmap = [int(table[0, 2 * g]) for g in range(ngens)]
    return FiniteGroupRealization(
        mul, generator_map=gmap, element_words=element_words, presentation=presentation
    )
