"""Cartan matrices and finite Weyl groups.

Group elements are represented by their permutation action on the full
root set, generated from the Cartan matrix alone; this is faithful for
every finite type.  Each element caches its length and its
lexicographically smallest reduced word, which doubles as the canonical
serialized form.  Simple roots are one-indexed throughout the public
API and node numbering follows the Bourbaki tables.

The convention for the matrix is ``entry(i, j) = <alpha_i, coroot(alpha_j)>``,
so a simple reflection acts on simple roots by
``s_i(alpha_j) = alpha_j - entry(j, i) * alpha_i``.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import (
    GroupOrderCapError,
    InvalidCartanMatrixError,
    NotInSubgroupError,
    UnsupportedTypeError,
)

DEFAULT_MAX_ORDER = 51840
MAX_ORDER_ENV = "TODATOPO_MAX_WEYL_ORDER"

_ROOT_CAP = 4096

_RANK_RANGES = {
    "A": (1, 16),
    "B": (2, 16),
    "C": (2, 16),
    "D": (3, 16),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


def _validate_cartan(entries):
    l = len(entries)
    if l == 0:
        raise InvalidCartanMatrixError("empty matrix")
    for row in entries:
        if len(row) != l:
            raise InvalidCartanMatrixError("matrix is not square")
        for x in row:
            if not isinstance(x, int):
                raise InvalidCartanMatrixError("entries must be integers")
    for i in range(l):
        if entries[i][i] != 2:
            raise InvalidCartanMatrixError("diagonal entries must equal 2")
        for j in range(l):
            if i != j and entries[i][j] > 0:
                raise InvalidCartanMatrixError("off-diagonal entries must be <= 0")
            if (entries[i][j] == 0) != (entries[j][i] == 0):
                raise InvalidCartanMatrixError("zero pattern must be symmetric")
    # Symmetrize: positive d with d_i C_ij = d_j C_ji, then positive definiteness.
    d = [None] * l
    for start in range(l):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(l):
                if j == i or entries[i][j] == 0:
                    continue
                want = d[i] * Fraction(entries[i][j], entries[j][i])
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    raise InvalidCartanMatrixError("matrix is not symmetrizable")
    sym = [[d[i] * entries[i][j] for j in range(l)] for i in range(l)]
    for i in range(l):
        for j in range(l):
            if sym[i][j] != sym[j][i]:
                raise InvalidCartanMatrixError("matrix is not symmetrizable")
    # Exact Gaussian elimination; all pivots positive iff positive definite.
    work = [row[:] for row in sym]
    for k in range(l):
        if work[k][k] <= 0:
            raise InvalidCartanMatrixError("matrix is not of finite type")
        for i in range(k + 1, l):
            if work[i][k]:
                f = work[i][k] / work[k][k]
                for j in range(k, l):
                    work[i][j] -= f * work[k][j]


@dataclass(frozen=True)
class CartanMatrix:
    """Integer Cartan matrix with type metadata.

    ``entry(i, j)`` uses one-based indices.
    """

    type_label: str
    rank: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rank != len(self.entries):
            raise InvalidCartanMatrixError("declared rank does not match matrix size")
        _validate_cartan(self.entries)

    @classmethod
    def from_entries(cls, entries, type_label="custom"):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        return cls(type_label, len(rows), rows)

    def entry(self, i: int, j: int) -> int:
        return self.entries[i - 1][j - 1]

    @property
    def simple_indices(self) -> range:
        return range(1, self.rank + 1)

    def __str__(self):
        return f"{self.type_label}{self.rank}"


def cartan_matrix(type_label: str, rank: int) -> CartanMatrix:
    """Canonical Cartan matrix of a simple finite type, Bourbaki ordering."""
    t = str(type_label).upper()
    if t not in _RANK_RANGES:
        raise UnsupportedTypeError(f"unknown type {type_label!r}; expected one of A B C D E F G")
    lo, hi = _RANK_RANGES[t]
    if not isinstance(rank, int) or rank < lo or rank > hi:
        raise UnsupportedTypeError(f"type {t} supports ranks {lo}..{hi}, got {rank!r}")
    l = rank
    m = [[2 if i == j else 0 for j in range(l)] for i in range(l)]

    def bond(i, j, cij=-1, cji=-1):
        m[i - 1][j - 1] = cij
        m[j - 1][i - 1] = cji

    if t in ("A", "B", "C", "F"):
        for i in range(1, l):
            bond(i, i + 1)
    if t == "B" and l >= 2:
        bond(l - 1, l, -2, -1)
    if t == "C" and l >= 2:
        bond(l - 1, l, -1, -2)
    if t == "F":
        bond(2, 3, -2, -1)
    if t == "D":
        for i in range(1, l - 1):
            bond(i, i + 1)
        m[l - 2][l - 1] = 0
        m[l - 1][l - 2] = 0
        bond(l - 2, l)
    if t == "E":
        chain = [1, 3, 4, 5, 6, 7, 8][: l - 1]
        for a, b in zip(chain, chain[1:]):
            bond(a, b)
        bond(2, 4)
    if t == "G":
        bond(1, 2, -1, -3)
    return CartanMatrix(t, l, tuple(tuple(row) for row in m))


def _reflect_root(entries, beta, i):
    """Image of the root ``beta`` (simple-root coordinates) under s_{i+1}."""
    pairing = sum(beta[j] * entries[j][i] for j in range(len(beta)) if beta[j])
    new = list(beta)
    new[i] -= pairing
    return tuple(new)


@dataclass(frozen=True, eq=False)
class WeylElement:
    """Group element: root permutation plus cached length and reduced word.

    ``word`` is the lexicographically smallest reduced word, as one-based
    simple-reflection indices; it is the canonical serialization.
    """

    group: "WeylGroup" = field(repr=False)
    perm: tuple[int, ...] = ()
    word: tuple[int, ...] = ()
    length: int = 0

    def __eq__(self, other):
        return (
            isinstance(other, WeylElement)
            and self.group is other.group
            and self.perm == other.perm
        )

    def __hash__(self):
        return hash(self.perm)

    def __mul__(self, other):
        return self.group.multiply(self, other)

    def inverse(self) -> "WeylElement":
        return self.group.inverse(self)

    def word_str(self) -> str:
        return "-".join(str(i) for i in self.word) if self.word else "e"

    def __repr__(self):
        return f"WeylElement({self.word_str()})"


class WeylGroup(Sequence):
    """Fully enumerated finite Weyl group of a Cartan matrix.

    Behaves as an immutable sequence of :class:`WeylElement`, sorted by
    (length, word).  All products, inverses and coset representatives are
    resolved against the enumeration table.
    """

    def __init__(self, cartan: CartanMatrix, max_order: int | None = None):
        if max_order is None:
            max_order = DEFAULT_MAX_ORDER
        self.cartan = cartan
        l = cartan.rank
        entries = cartan.entries

        roots = []
        index = {}
        for i in range(l):
            v = tuple(1 if j == i else 0 for j in range(l))
            index[v] = len(roots)
            roots.append(v)
        queue = deque(roots)
        while queue:
            beta = queue.popleft()
            for i in range(l):
                img = _reflect_root(entries, beta, i)
                if img not in index:
                    if len(roots) >= _ROOT_CAP:
                        raise InvalidCartanMatrixError("root closure did not stay finite")
                    index[img] = len(roots)
                    roots.append(img)
                    queue.append(img)
        self.roots = tuple(roots)
        self._root_positive = tuple(all(c >= 0 for c in beta) for beta in roots)
        self.positive_count = sum(self._root_positive)
        nroots = len(roots)

        gens = tuple(
            tuple(index[_reflect_root(entries, beta, i)] for beta in roots) for i in range(l)
        )
        self._gen_perms = gens

        identity = tuple(range(nroots))
        lengths = {identity: 0}
        frontier = [identity]
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for p in frontier:
                for g in gens:
                    q = tuple(p[x] for x in g)
                    if q not in lengths:
                        if len(lengths) >= max_order:
                            raise GroupOrderCapError(
                                f"group order exceeds the cap {max_order}; "
                                f"raise it via {MAX_ORDER_ENV} or max_order"
                            )
                        lengths[q] = depth
                        nxt.append(q)
            frontier = nxt

        # Lexicographically smallest reduced words, by increasing length:
        # the first letter is the smallest left descent.
        words = {identity: ()}
        for p in sorted(lengths, key=lambda q: lengths[q]):
            if p == identity:
                continue
            inv = [0] * nroots
            for r, pr in enumerate(p):
                inv[pr] = r
            first = None
            for i in range(l):
                if not self._root_positive[inv[i]]:
                    first = i
                    break
            shorter = tuple(gens[first][x] for x in p)
            words[p] = (first + 1,) + words[shorter]

        elems = [
            WeylElement(self, p, words[p], lengths[p])
            for p in sorted(lengths, key=lambda q: (lengths[q], words[q]))
        ]
        self.elements = tuple(elems)
        self._by_perm = {w.perm: w for w in elems}
        self._pos = {w.perm: i for i, w in enumerate(elems)}
        self.identity = self._by_perm[identity]
        self._simple = tuple(self._by_perm[g] for g in gens)
        self.longest_element = self.elements[-1]
        self._parabolic_cache: dict[tuple, tuple] = {}
        self._coset_rep_cache: dict[tuple, WeylElement] = {}

    # -- sequence protocol -------------------------------------------------

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __iter__(self) -> Iterator[WeylElement]:
        return iter(self.elements)

    # -- basic operations --------------------------------------------------

    @property
    def rank(self) -> int:
        return self.cartan.rank

    def simple_reflection(self, i: int) -> WeylElement:
        return self._simple[i - 1]

    def position(self, w: WeylElement) -> int:
        return self._pos[w.perm]

    def multiply(self, u: WeylElement, v: WeylElement) -> WeylElement:
        return self._by_perm[tuple(u.perm[x] for x in v.perm)]

    def inverse(self, u: WeylElement) -> WeylElement:
        inv = [0] * len(u.perm)
        for r, pr in enumerate(u.perm):
            inv[pr] = r
        return self._by_perm[tuple(inv)]

    def from_word(self, letters) -> WeylElement:
        w = self.identity
        for i in letters:
            w = self.multiply(w, self.simple_reflection(i))
        return w

    def root_index(self, i: int) -> int:
        """Index of the simple root alpha_i in ``roots``."""
        return i - 1

    def sends_simple_root_negative(self, w: WeylElement, i: int) -> bool:
        return not self._root_positive[w.perm[i - 1]]

    def inversion_count(self, w: WeylElement) -> int:
        return sum(
            1
            for r in range(len(self.roots))
            if self._root_positive[r] and not self._root_positive[w.perm[r]]
        )

    # -- parabolic machinery -------------------------------------------------

    def parabolic_elements(self, S) -> tuple[WeylElement, ...]:
        """Elements of the standard parabolic subgroup W_S, canonical order."""
        key = tuple(sorted(set(S)))
        cached = self._parabolic_cache.get(key)
        if cached is not None:
            return cached
        for i in key:
            if not 1 <= i <= self.rank:
                raise NotInSubgroupError(f"simple-root index {i} out of range")
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for i in key:
                    u = self.multiply(w, self.simple_reflection(i))
                    if u not in seen:
                        seen.add(u)
                        nxt.append(u)
            frontier = nxt
        out = tuple(sorted(seen, key=self.position))
        self._parabolic_cache[key] = out
        return out

    def parabolic_order(self, S) -> int:
        return len(self.parabolic_elements(S))

    def min_coset_rep(self, w: WeylElement, S) -> WeylElement:
        """Minimal-length representative of the left coset w * W_S."""
        key = tuple(sorted(set(S)))
        cache_key = (w.perm, key)
        cached = self._coset_rep_cache.get(cache_key)
        if cached is not None:
            return cached
        cur = w
        moved = True
        while moved:
            moved = False
            for i in key:
                if self.sends_simple_root_negative(cur, i):
                    cur = self.multiply(cur, self.simple_reflection(i))
                    moved = True
        self._coset_rep_cache[cache_key] = cur
        return cur

    def coset_min_reps(self, S) -> tuple[WeylElement, ...]:
        """All minimal-length representatives of W / W_S, canonical order."""
        reps = {self.min_coset_rep(w, S) for w in self.elements}
        return tuple(sorted(reps, key=self.position))


def generate_weyl_group(cartan: CartanMatrix, max_order: int | None = None) -> WeylGroup:
    """Enumerate the full Weyl group of ``cartan``.

    The enumeration cap defaults to 51840 and may be overridden by the
    ``TODATOPO_MAX_WEYL_ORDER`` environment variable or the argument.
    """
    if max_order is None:
        env = os.environ.get(MAX_ORDER_ENV)
        max_order = int(env) if env else DEFAULT_MAX_ORDER
    return WeylGroup(cartan, max_order=max_order)


def length(w: WeylElement) -> int:
    return w.length


def min_coset_rep(w: WeylElement, S) -> WeylElement:
    return w.group.min_coset_rep(w, S)
