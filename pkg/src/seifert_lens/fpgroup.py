"""Finitely presented groups: words, presentations, coset enumeration,
abelian invariants and the metacyclic structure certificate."""

import json
from dataclasses import dataclass
from math import gcd
from typing import NamedTuple, Optional

from ._text import ParseError, Tokens

DEFAULT_COSET_LIMIT = 100_000


class CosetLimitExceeded(RuntimeError):
    pass


class CertificateError(AssertionError):
    """A certificate check failed. This means a bug, not a mathematical verdict."""


@dataclass(frozen=True)
class Word:
    """Freely reduced word; letters are ``(generator_index, +1 | -1)``."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def power(cls, gen, exponent):
        sign = 1 if exponent >= 0 else -1
        return cls(((gen, sign),) * abs(exponent))

    @classmethod
    def from_syllables(cls, syllables):
        """Build from ``[(gen, exponent), ...]`` pairs, e.g. ``[(0, -1), (1, 1)]``."""
        letters = []
        for gen, e in syllables:
            letters.extend(Word.power(gen, e).letters)
        return cls(tuple(letters))

    def inverse(self):
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __mul__(self, other):
        return Word(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def exponent_sums(self, ngens):
        sums = [0] * ngens
        for g, e in self.letters:
            sums[g] += e
        return sums

    def syllables(self):
        out = []
        for g, e in self.letters:
            if out and out[-1][0] == g:
                out[-1][1] += e
            else:
                out.append([g, e])
        return [(g, e) for g, e in out]

    def format(self, names):
        if not self.letters:
            return "1"
        parts = []
        for g, e in self.syllables():
            parts.append(names[g] if e == 1 else f"{names[g]}^{e}")
        return " ".join(parts)


def _free_reduce(letters):
    out = []
    for g, e in letters:
        if e not in (1, -1):
            raise ValueError(f"letter exponent must be +1 or -1, got {e}")
        if out and out[-1] == (g, -e):
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class GroupPresentation:
    generator_names: tuple
    relators: tuple

    def __post_init__(self):
        names = tuple(self.generator_names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        object.__setattr__(self, "generator_names", names)
        rels = tuple(r if isinstance(r, Word) else Word(tuple(r)) for r in self.relators)
        for r in rels:
            for g, _ in r:
                if not 0 <= g < len(names):
                    raise ValueError(f"relator uses undeclared generator index {g}")
        object.__setattr__(self, "relators", rels)

    @property
    def ngens(self):
        return len(self.generator_names)

    def word(self, text):
        """Parse a word over this presentation's generators."""
        toks = Tokens(text)
        w = _parse_word(toks, self.generator_names, stop=())
        toks.finish()
        return w

    def with_relators(self, relators):
        return GroupPresentation(self.generator_names, tuple(relators))

    def format(self):
        rels = ", ".join(r.format(self.generator_names) for r in self.relators)
        return f"< {', '.join(self.generator_names)} | {rels} >"

    def __str__(self):
        return self.format()


def _parse_factor(toks, names):
    kind, v, offset = toks.peek()
    if kind == "int" and v == 1:
        toks.next()
        return Word()
    if kind == "punct" and v == "(":
        toks.next()
        inner = _parse_word(toks, names, stop=(")",))
        toks.expect(")")
        base = inner
    else:
        name = toks.name()
        if name not in names:
            raise ParseError(f"undeclared generator {name!r}", toks.text, offset,
                             [repr(n) for n in names])
        base = Word(((names.index(name), 1),))
    if toks.accept("^"):
        e = toks.integer()
        w = Word()
        piece = base if e >= 0 else base.inverse()
        for _ in range(abs(e)):
            w = w * piece
        return w
    return base


def _parse_word(toks, names, stop):
    w = Word()
    while True:
        kind, v, _ = toks.peek()
        if kind == "eof" or (kind == "punct" and v in stop + (",", "=", "|", ">")):
            return w
        toks.accept("*")
        w = w * _parse_factor(toks, names)


def parse_presentation(text: str) -> GroupPresentation:
    """Parse ``< a, h | a^-1 h a h, a^4 h^-3 >``.

    Relators are whitespace-separated letters with optional integer
    exponents; parenthesised subwords may carry an exponent too. An equation
    ``u = v`` is stored as the relator ``u v^-1``.
    """
    toks = Tokens(text)
    toks.expect("<")
    names = []
    if not toks.at("|"):
        names.append(toks.name())
        while toks.accept(","):
            names.append(toks.name())
    if len(set(names)) != len(names):
        toks.fail("duplicate generator name")
    names = tuple(names)
    relators = []
    if toks.accept("|"):
        if not toks.at(">"):
            relators.append(_parse_relation(toks, names))
            while toks.accept(","):
                relators.append(_parse_relation(toks, names))
    toks.expect(">")
    toks.finish()
    return GroupPresentation(names, tuple(relators))


def _parse_relation(toks, names):
    left = _parse_word(toks, names, stop=())
    if toks.accept("="):
        right = _parse_word(toks, names, stop=())
        return left * right.inverse()
    return left


class CosetTable:
    """Result of a coset enumeration.

    ``rows[c][2*g]`` is the coset ``c . g`` and ``rows[c][2*g + 1]`` is
    ``c . g^-1``. Coset 0 is the subgroup itself. When ``complete`` is false
    the enumeration stopped at ``coset_limit`` live cosets and ``rows`` is
    empty.
    """

    def __init__(self, presentation, subgroup_gens, rows, complete, coset_limit, defined):
        self.presentation = presentation
        self.subgroup_gens = tuple(subgroup_gens)
        self.rows = rows
        self.complete = complete
        self.coset_limit = coset_limit
        self.defined = defined  # total cosets ever defined, a cost measure

    @property
    def status(self):
        return "complete" if self.complete else "exceeded limit"

    @property
    def index(self):
        return len(self.rows) if self.complete else None

    def __len__(self):
        return len(self.rows)

    def act(self, coset, word):
        for g, e in word:
            coset = self.rows[coset][2 * g + (e < 0)]
        return coset

    def permutation(self, gen):
        return [row[2 * gen] for row in self.rows]

    def verify(self):
        """Replay every relator at every coset and check the table is a
        permutation action that fixes the subgroup coset under its generators."""
        if not self.complete:
            return False
        n = len(self.rows)
        ncols = 2 * self.presentation.ngens
        for c, row in enumerate(self.rows):
            if len(row) != ncols:
                return False
            for x in range(ncols):
                d = row[x]
                if d is None or not 0 <= d < n or self.rows[d][x ^ 1] != c:
                    return False
        for c in range(n):
            for r in self.presentation.relators:
                if self.act(c, r) != c:
                    return False
        return all(self.act(0, w) == 0 for w in self.subgroup_gens)

    def to_json(self):
        names = self.presentation.generator_names
        columns = []
        for name in names:
            columns += [name, f"{name}^-1"]
        return json.dumps({
            "presentation": self.presentation.format(),
            "subgroup": [w.format(names) for w in self.subgroup_gens],
            "status": self.status,
            "coset_limit": self.coset_limit,
            "columns": columns,
            "table": self.rows,
        })


def todd_coxeter(p: GroupPresentation, subgroup_gens=(), limit=DEFAULT_COSET_LIMIT) -> CosetTable:
    """Enumerate the cosets of ``<subgroup_gens>`` in ``p``.

    HLT strategy: each live coset in turn is scanned against every relator,
    filling gaps with new cosets; a scan that closes with one gap records the
    deduction in both directions and a scan that closes inconsistently
    triggers coincidence processing through a union-find. Returns a table
    with ``complete=False`` once more than ``limit`` cosets would be live.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    subgroup_gens = tuple(g if isinstance(g, Word) else p.word(g) for g in subgroup_gens)
    for w in subgroup_gens:
        for g, _ in w:
            if not 0 <= g < p.ngens:
                raise ValueError(f"subgroup word uses undeclared generator index {g}")
    return _Enumerator(p, limit).run(subgroup_gens)


class _Overflow(Exception):
    pass


class _Enumerator:
    def __init__(self, p, limit):
        self.p = p
        self.limit = limit
        self.ncols = 2 * p.ngens
        self.table = []
        self.parent = []
        self.live = 0
        # relators as column sequences; cyclic conjugates add nothing for HLT
        self.rels = [tuple(2 * g + (e < 0) for g, e in r) for r in p.relators if len(r)]

    def new_coset(self):
        if self.live >= self.limit:
            raise _Overflow
        self.table.append([None] * self.ncols)
        self.parent.append(len(self.parent))
        self.live += 1
        return len(self.table) - 1

    def find(self, c):
        root = c
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(self, c, x):
        d = self.new_coset()
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def merge(self, a, b, queue):
        a, b = self.find(a), self.find(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            self.parent[b] = a
            self.live -= 1
            queue.append(b)

    def coincidence(self, a, b):
        table = self.table
        queue = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = table[e][x]
                if f is None:
                    continue
                table[f][x ^ 1] = None
                e1, f1 = self.find(e), self.find(f)
                if table[e1][x] is not None:
                    self.merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] is not None:
                    self.merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def scan_and_fill(self, c, rel):
        table = self.table
        f = b = c
        i, j = 0, len(rel) - 1
        while True:
            while i <= j and table[f][rel[i]] is not None:
                f = table[f][rel[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and table[b][rel[j] ^ 1] is not None:
                b = table[b][rel[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                table[f][rel[i]] = b
                table[b][rel[i] ^ 1] = f
                return
            self.define(f, rel[i])

    def alive(self, c):
        return self.parent[c] == c

    def run(self, subgroup_gens):
        try:
            self.new_coset()
            for w in subgroup_gens:
                cols = tuple(2 * g + (e < 0) for g, e in w)
                if cols:
                    self.scan_and_fill(0, cols)
            c = 0
            while c < len(self.table):
                for rel in self.rels:
                    if not self.alive(c):
                        break
                    self.scan_and_fill(c, rel)
                if self.alive(c):
                    for x in range(self.ncols):
                        if self.table[c][x] is None:
                            self.define(c, x)
                c += 1
        except _Overflow:
            return CosetTable(self.p, subgroup_gens, [], False, self.limit, len(self.table))
        return CosetTable(self.p, subgroup_gens, self.compact(), True, self.limit,
                          len(self.table))

    def compact(self):
        # renumber in breadth-first order from the subgroup coset
        order = [0]
        index = {0: 0}
        k = 0
        while k < len(order):
            c = order[k]
            k += 1
            for x in range(self.ncols):
                d = self.find(self.table[c][x])
                if d not in index:
                    index[d] = len(order)
                    order.append(d)
        return [[index[self.find(self.table[c][x])] for x in range(self.ncols)] for c in order]


def group_order(p: GroupPresentation, limit=DEFAULT_COSET_LIMIT) -> Optional[int]:
    """Order of the group, or ``None`` if enumeration exceeded ``limit``."""
    return todd_coxeter(p, (), limit).index


def element_order(p: GroupPresentation, word, limit=DEFAULT_COSET_LIMIT) -> int:
    """Order of an element, read off as the cycle length of its action on the
    regular representation (cosets of the trivial subgroup)."""
    table = todd_coxeter(p, (), limit)
    if not table.complete:
        raise CosetLimitExceeded(f"more than {limit} cosets for {p}")
    w = word if isinstance(word, Word) else p.word(word)
    c, k = table.act(0, w), 1
    while c != 0:
        c, k = table.act(c, w), k + 1
    return k


class AbelianInvariants(NamedTuple):
    rank: int
    torsion: tuple

    @property
    def order(self):
        """Order of the abelianization, ``None`` if infinite."""
        if self.rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def __str__(self):
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def relation_matrix(p: GroupPresentation):
    return [r.exponent_sums(p.ngens) for r in p.relators]


def smith_invariants(matrix, ncols):
    """Nonzero diagonal entries of the Smith normal form, as a divisibility chain."""
    a = [list(map(int, row)) for row in matrix if any(row)]
    diag = []
    while a:
        nrows = len(a)
        # pivot: smallest nonzero absolute entry
        best = None
        for i in range(nrows):
            for j in range(ncols):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[0], a[i] = a[i], a[0]
        for row in a:
            row[0], row[j] = row[j], row[0]
        piv = a[0][0]
        dirty = False
        for i in range(1, nrows):
            q = a[i][0] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[0])]
            dirty |= a[i][0] != 0
        for j in range(1, ncols):
            q = a[0][j] // piv
            if q:
                for row in a:
                    row[j] -= q * row[0]
            dirty |= a[0][j] != 0
        if dirty:
            continue
        # pivot must divide the rest of the matrix
        bad = next(((i, j) for i in range(1, nrows) for j in range(1, ncols)
                    if a[i][j] % piv), None)
        if bad is not None:
            a[0] = [x + y for x, y in zip(a[0], a[bad[0]])]
            continue
        diag.append(abs(piv))
        a = [row[1:] for row in a[1:] if any(row[1:])]
        ncols -= 1
    return diag


def abelianization(p: GroupPresentation) -> AbelianInvariants:
    diag = smith_invariants(relation_matrix(p), p.ngens)
    return AbelianInvariants(p.ngens - len(diag), tuple(d for d in diag if d != 1))


def is_cyclic(p: GroupPresentation, limit=DEFAULT_COSET_LIMIT) -> bool:
    """A finite group is cyclic iff it has the order of its abelianization
    and that abelianization is cyclic."""
    order = group_order(p, limit)
    if order is None:
        raise CosetLimitExceeded(f"more than {limit} cosets for {p}")
    ab = abelianization(p)
    return ab.rank == 0 and len(ab.torsion) <= 1 and ab.order == order


def metacyclic_presentation(n, beta) -> GroupPresentation:
    """``< a, h | a^-1 h a h, a^(2n) h^-beta >`` for beta > 0."""
    return GroupPresentation(("a", "h"), (
        Word.from_syllables([(0, -1), (1, 1), (0, 1), (1, 1)]),
        Word.from_syllables([(0, 2 * n), (1, -beta)]),
    ))


@dataclass(frozen=True)
class MetacyclicCertificate:
    """Hoelder data ``x=a, y=h`` with ``m = 2 beta``, ``k = 2n``,
    ``n_H = 2 beta - 1`` and ``l = beta``, plus the enumerated orders."""

    normal_generator: Word
    m: int
    k: int
    n_H: int
    l: int
    group_order: int
    index_of_normal: int
    normal_order: int

    def divisibility_holds(self):
        return (pow(self.n_H, self.k, self.m) == 1 % self.m
                and (self.l * (self.n_H - 1)) % self.m == 0)


def verify_metacyclic(n: int, beta: int, limit=DEFAULT_COSET_LIMIT) -> MetacyclicCertificate:
    if n < 1 or beta < 1:
        raise ValueError("n and beta must be positive")
    if gcd(n, beta) != 1:
        raise ValueError(f"gcd(n, beta) must be 1, got ({n}, {beta})")
    p = metacyclic_presentation(n, beta)
    h = Word(((1, 1),))
    full = todd_coxeter(p, (), limit)
    over_h = todd_coxeter(p, (h,), limit)
    if not (full.complete and over_h.complete):
        raise CosetLimitExceeded(f"more than {limit} cosets for {p}")
    order_h = element_order(p, h, limit)
    cert = MetacyclicCertificate(h, 2 * beta, 2 * n, 2 * beta - 1, beta,
                                 full.index, over_h.index, order_h)
    checks = {
        "divisibility": cert.divisibility_holds(),
        "table soundness": full.verify() and over_h.verify(),
        "index of <h> is 2n": over_h.index == 2 * n,
        "|G| = 4 n beta": full.index == 4 * n * beta,
        "h has order 2 beta": order_h == 2 * beta,
        "normal forms a^k h^l unique": full.index == cert.k * cert.m,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise CertificateError(f"metacyclic certificate failed for (n, beta) = ({n}, {beta}): {failed}")
    return cert
