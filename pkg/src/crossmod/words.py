"""Free-group words, coset tables over a finite abelian quotient, Schreier bases.

A word is a tuple of nonzero ints: ``k`` stands for generator ``x_k`` and
``-k`` for its inverse. Words returned by this module are freely reduced.

Because the quotient is given as an explicit finite group, the cosets of
``N = ker(F_r -> M)`` are just the elements of ``M``; no Todd-Coxeter
enumeration is needed.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ArgumentError, MembershipError, NotSurjectiveError, WordLengthError
from .groups import FiniteGroup, subgroup_closure

MAX_WORD_LENGTH = 10**6

Word = tuple


def free_reduce(letters: Iterable[int]) -> Word:
    out: list = []
    for a in letters:
        a = int(a)
        if a == 0:
            raise ArgumentError("letter 0 is not a generator")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    if len(out) > MAX_WORD_LENGTH:
        raise WordLengthError(f"word length {len(out)} exceeds {MAX_WORD_LENGTH}")
    return tuple(out)


def inverse(w: Sequence[int]) -> Word:
    return tuple(-a for a in reversed(w))


def concat(*words: Sequence[int]) -> Word:
    total = sum(len(w) for w in words)
    if total > 2 * MAX_WORD_LENGTH:
        raise WordLengthError(f"word length {total} exceeds limit")
    return free_reduce(a for w in words for a in w)


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        w, k = inverse(w), -k
    if len(w) * k > 2 * MAX_WORD_LENGTH:
        raise WordLengthError("power too long")
    return free_reduce(tuple(w) * k)


def parse_word(text: str) -> Word:
    """``a``..``z`` are generators 1..26, upper case their inverses; ``1`` or ``e`` is empty."""
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    letters = []
    for ch in text:
        if "a" <= ch <= "z":
            letters.append(ord(ch) - ord("a") + 1)
        elif "A" <= ch <= "Z":
            letters.append(-(ord(ch) - ord("A") + 1))
        elif ch.isspace():
            continue
        else:
            raise ArgumentError(f"bad letter {ch!r} in word")
    return free_reduce(letters)


def format_word(w: Sequence[int]) -> str:
    if not w:
        return "1"
    out = []
    for a in w:
        if abs(a) > 26:
            raise ArgumentError("only 26 generators have letter names")
        c = chr(ord("a") + abs(a) - 1)
        out.append(c if a > 0 else c.upper())
    return "".join(out)


def exponent_vector(w: Sequence[int], rank: int) -> tuple:
    v = [0] * rank
    for a in w:
        if abs(a) > rank:
            raise ArgumentError(f"letter {a} exceeds rank {rank}")
        v[abs(a) - 1] += 1 if a > 0 else -1
    return tuple(v)


def evaluate(w: Sequence[int], M: FiniteGroup, images: Sequence[int]) -> int:
    """Image of ``w`` under ``x_k -> images[k-1]``."""
    acc = 0
    for a in w:
        x = images[abs(a) - 1]
        acc = M.mul(acc, x if a > 0 else M.inv(x))
    return acc


@dataclass(frozen=True, eq=False)
class CosetTable:
    """Cosets of ``ker(F_rank -> M)``.

    ``action[c][2*(k-1)]`` is ``c·x_k`` and ``action[c][2*(k-1)+1]`` is
    ``c·x_k^-1``. Coset 0 is the subgroup itself; ``element[c]`` is the
    element of ``M`` the coset maps to.
    """

    rank: int
    group: FiniteGroup
    images: tuple
    action: tuple
    transversal: tuple
    element: tuple

    @property
    def index(self) -> int:
        return len(self.transversal)

    def step(self, c: int, letter: int) -> int:
        col = 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)
        return self.action[c][col]


def coset_table(rank: int, M: FiniteGroup, images: Sequence[int]) -> CosetTable:
    """Cosets and a Schreier transversal for the map ``x_k -> images[k-1]``.

    The transversal is grown breadth first, generators in ascending order.
    Only positive letters are needed: ``M`` is finite, so they already
    reach every coset, and representatives come out as positive words.
    """
    images = tuple(int(v) for v in images)
    if len(images) != rank:
        raise ArgumentError("need one image per generator")
    if any(not 0 <= v < M.order for v in images):
        raise ArgumentError("image out of range")
    if not M.is_abelian():
        raise ArgumentError("quotient group must be abelian")
    if len(subgroup_closure(M, images)) != M.order:
        raise NotSurjectiveError("generator images do not generate M")
    coset_of = {0: 0}
    element = [0]
    transversal = [()]
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for k in range(1, rank + 1):
            m = M.mul(element[c], images[k - 1])
            if m not in coset_of:
                coset_of[m] = len(element)
                element.append(m)
                transversal.append(transversal[c] + (k,))
                queue.append(coset_of[m])
    action = []
    for c, m in enumerate(element):
        row = []
        for k in range(rank):
            row.append(coset_of[M.mul(m, images[k])])
            row.append(coset_of[M.mul(m, M.inv(images[k]))])
        action.append(tuple(row))
    return CosetTable(rank, M, images, tuple(action), tuple(transversal), tuple(element))


@dataclass(frozen=True, eq=False)
class SchreierBasis:
    """Free basis of the kernel. ``generators[i] = (coset, k)`` and ``words[i]`` its element."""

    table: CosetTable
    generators: tuple
    words: tuple

    def __len__(self):
        return len(self.words)

    def lookup(self, coset: int, k: int):
        return self._index.get((coset, k))

    def __post_init__(self):
        object.__setattr__(self, "_index", {g: i for i, g in enumerate(self.generators)})


def schreier_generators(table: CosetTable) -> SchreierBasis:
    gens, words = [], []
    tr = table.transversal
    for c in range(table.index):
        for k in range(1, table.rank + 1):
            d = table.step(c, k)
            if tr[c] + (k,) == tr[d]:
                continue
            w = concat(tr[c], (k,), inverse(tr[d]))
            if not w:
                continue
            gens.append((c, k))
            words.append(w)
    expected = table.index * (table.rank - 1) + 1
    if len(words) != expected:
        raise AssertionError(f"Schreier count {len(words)} != {expected}")
    return SchreierBasis(table, tuple(gens), tuple(words))


def reidemeister_rewrite(w: Sequence[int], basis: SchreierBasis) -> Word:
    """Express ``w`` (an element of the kernel) over the Schreier basis.

    The result is a word in the basis alphabet: letter ``i+1`` means
    ``basis.words[i]`` and ``-(i+1)`` its inverse.
    """
    table = basis.table
    c = 0
    out = []
    for a in w:
        if a > 0:
            i = basis.lookup(c, a)
            if i is not None:
                out.append(i + 1)
            c = table.step(c, a)
        else:
            d = table.step(c, a)
            i = basis.lookup(d, -a)
            if i is not None:
                out.append(-(i + 1))
            c = d
    if c != 0:
        raise MembershipError("word does not lie in the kernel")
    return free_reduce(out)


def expand(rewritten: Sequence[int], basis: SchreierBasis) -> Word:
    """Inverse of :func:`reidemeister_rewrite`: substitute basis words and reduce."""
    return free_reduce(a for b in rewritten
                       for a in (basis.words[b - 1] if b > 0 else inverse(basis.words[-b - 1])))


def abelianized_rewrite(w: Sequence[int], basis: SchreierBasis) -> tuple:
    """Exponent vector of the rewrite of ``w`` over the basis."""
    return exponent_vector(reidemeister_rewrite(w, basis), len(basis))


def random_word(rng: np.random.Generator, rank: int, length: int) -> Word:
    letters = rng.integers(1, rank + 1, size=length) * rng.choice([-1, 1], size=length)
    return free_reduce(letters.tolist())
