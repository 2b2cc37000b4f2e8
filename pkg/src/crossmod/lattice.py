"""Exact integer matrices, Smith normal form and finitely generated abelian groups.

All arithmetic uses Python ints, so nothing overflows.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import ArgumentError, ContainmentError


class IntMatrix:
    """Dense ``rows x cols`` integer matrix (immutable by convention)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Sequence[Sequence[int]]):
        entries = tuple(tuple(int(v) for v in row) for row in entries)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ArgumentError("matrix dimensions do not match entries")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls(rows, len(columns), [[c[i] for c in columns] for i in range(rows)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diag(cls, values: Sequence[int], rows=None, cols=None) -> "IntMatrix":
        rows = len(values) if rows is None else rows
        cols = len(values) if cols is None else cols
        m = [[0] * cols for _ in range(rows)]
        for i, v in enumerate(values):
            m[i][i] = v
        return cls(rows, cols, m)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, [self.column(j) for j in range(self.cols)])

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ArgumentError("dimension mismatch in product")
        out = []
        orows = other.entries
        for r in self.entries:
            acc = [0] * other.cols
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(orows[k]):
                        if b:
                            acc[j] += a * b
            out.append(acc)
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, v: Sequence[int]) -> tuple:
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.entries)

    def is_zero(self) -> bool:
        return all(v == 0 for r in self.entries for v in r)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ArgumentError("row count mismatch")
        return IntMatrix(self.rows, self.cols + other.cols,
                         [a + b for a, b in zip(self.entries, other.entries)])

    def tolist(self) -> list:
        return [list(r) for r in self.entries]

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.rows}, {self.cols}, {self.tolist()})"

    def format(self) -> str:
        lines = [f"{self.rows} {self.cols}"]
        lines += [" ".join(map(str, r)) for r in self.entries]
        return "\n".join(lines)


def parse_matrix(text: str) -> IntMatrix:
    """Parse ``rows cols`` followed by row-major integers."""
    toks = text.split()
    if len(toks) < 2:
        raise ArgumentError("matrix text needs a 'rows cols' header")
    r, c = int(toks[0]), int(toks[1])
    vals = [int(t) for t in toks[2:]]
    if len(vals) != r * c:
        raise ArgumentError(f"expected {r * c} entries, got {len(vals)}")
    return IntMatrix(r, c, [vals[i * c:(i + 1) * c] for i in range(r)])


def determinant(A: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = A.rows
    if n != A.cols:
        raise ArgumentError("determinant of a non-square matrix")
    if n == 0:
        return 1
    M = [list(r) for r in A.entries]
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if swap is None:
                return 0
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


def smith_normal_form(A: IntMatrix):
    """Return ``(U, D, V)`` with ``U @ A @ V == D``.

    See :func:`smith_normal_form_full` for the pivot rule.
    """
    U, D, V, _ = smith_normal_form_full(A)
    return U, D, V


def smith_normal_form_full(A: IntMatrix):
    """Return ``(U, D, V, U^-1)`` with ``U @ A @ V == D``.

    ``U`` and ``V`` are unimodular and ``D`` is diagonal with non-negative
    entries ``d1 | d2 | ...``. The pivot is the nonzero entry of least
    absolute value in the active block, ties broken in row-major order.
    """
    m, n = A.rows, A.cols
    D = [list(r) for r in A.entries]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_addmul(dst, src, q):          # row_dst -= q * row_src
        if q:
            for row in Ui:                # inverse: col_src += q * col_dst
                if row[dst]:
                    row[src] += q * row[dst]
            rd, rs = D[dst], D[src]
            for j in range(n):
                if rs[j]:
                    rd[j] -= q * rs[j]
            ud, us = U[dst], U[src]
            for j in range(m):
                if us[j]:
                    ud[j] -= q * us[j]

    def col_addmul(dst, src, q):          # col_dst -= q * col_src
        if q:
            for row in D:
                if row[src]:
                    row[dst] -= q * row[src]
            for row in V:
                if row[src]:
                    row[dst] -= q * row[src]

    def swap_rows(a, b):
        if a != b:
            D[a], D[b] = D[b], D[a]
            U[a], U[b] = U[b], U[a]
            for row in Ui:
                row[a], row[b] = row[b], row[a]

    def swap_cols(a, b):
        if a != b:
            for row in D:
                row[a], row[b] = row[b], row[a]
            for row in V:
                row[a], row[b] = row[b], row[a]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                row = D[i]
                for j in range(t, n):
                    v = row[j]
                    if v and (best is None or abs(v) < best[0]):
                        best = (abs(v), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                break
            _, pi, pj = best
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_addmul(i, t, D[i][t] // p)
                    dirty = dirty or D[i][t] != 0
            for j in range(t + 1, n):
                if D[t][j]:
                    col_addmul(j, t, D[t][j] // p)
                    dirty = dirty or D[t][j] != 0
            if dirty:
                continue
            if abs(p) == 1:
                break
            bad = next((i for i in range(t + 1, m)
                        if any(D[i][j] % p for j in range(t + 1, n))), None)
            if bad is None:
                break
            # fold a row with a non-divisible entry into the pivot row
            row_addmul(t, bad, -1)
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
            for row in Ui:
                row[t] = -row[t]
    return IntMatrix(m, m, U), IntMatrix(m, n, D), IntMatrix(n, n, V), IntMatrix(m, m, Ui)


def diagonal(D: IntMatrix) -> list:
    return [D[i, i] for i in range(min(D.rows, D.cols))]


def is_smith_form(D: IntMatrix) -> bool:
    for i in range(D.rows):
        for j in range(D.cols):
            if i != j and D[i, j]:
                return False
    d = diagonal(D)
    if any(v < 0 for v in d):
        return False
    for a, b in zip(d, d[1:]):
        if a == 0 and b != 0:
            return False
        if a and b % a:
            return False
    return True


# ---------------------------------------------------------------------------
# Finitely generated abelian groups
# ---------------------------------------------------------------------------


def _normalize_torsion(values: Iterable[int]) -> tuple:
    vals = [abs(int(v)) for v in values]
    if any(v == 0 for v in vals):
        raise ArgumentError("zero is not a torsion coefficient")
    vals = [v for v in vals if v > 1]
    changed = True
    while changed:
        changed = False
        vals.sort()
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                a, b = vals[i], vals[j]
                if b % a:
                    g = gcd(a, b)
                    vals[i], vals[j] = g, a * b // g
                    changed = True
        vals = [v for v in vals if v > 1]
    return tuple(sorted(vals))


@dataclass(frozen=True)
class FGAbelianGroup:
    """``Z^rank + Z/d1 + ... + Z/dk`` with ``d1 | d2 | ... | dk``; equality is isomorphism."""

    rank: int
    torsion: tuple = ()

    def __post_init__(self):
        if self.rank < 0:
            raise ArgumentError("rank must be non-negative")
        t = tuple(self.torsion)
        if any(v < 2 for v in t) or any(b % a for a, b in zip(t, t[1:])):
            raise ArgumentError(f"torsion {t} is not an invariant-factor chain")
        object.__setattr__(self, "torsion", t)

    @classmethod
    def from_torsion(cls, values: Iterable[int], rank: int = 0) -> "FGAbelianGroup":
        """Canonical form of ``Z^rank + sum Z/v`` for arbitrary positive ``v``."""
        return cls(rank, _normalize_torsion(values))

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self):
        if self.rank:
            return None
        out = 1
        for v in self.torsion:
            out *= v
        return out

    def __str__(self):
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"rank": self.rank, "torsion": list(self.torsion), "text": str(self)}


def cokernel_invariants(A: IntMatrix) -> FGAbelianGroup:
    """``Z^rows / A Z^cols`` in canonical form."""
    _, D, _ = smith_normal_form(A)
    d = [v for v in diagonal(D) if v]
    return FGAbelianGroup(A.rows - len(d), _normalize_torsion(d))


def matrix_rank(A: IntMatrix) -> int:
    _, D, _ = smith_normal_form(A)
    return sum(1 for v in diagonal(D) if v)


def kernel_lattice(A: IntMatrix) -> IntMatrix:
    """Columns form a primitive Z-basis of ``{x : A x = 0}``.

    Each column's first nonzero entry is made positive.
    """
    _, D, V = smith_normal_form(A)
    r = sum(1 for v in diagonal(D) if v)
    cols = []
    for j in range(r, A.cols):
        c = list(V.column(j))
        lead = next((v for v in c if v), 0)
        if lead < 0:
            c = [-v for v in c]
        cols.append(c)
    return IntMatrix.from_columns(cols, A.cols)


def solve_integer(A: IntMatrix, B: IntMatrix):
    """Integer ``X`` with ``A X = B``, or ``None`` if some column has no solution."""
    if A.rows != B.rows:
        raise ArgumentError("row count mismatch")
    U, D, V = smith_normal_form(A)
    UB = U @ B
    d = diagonal(D)
    Y = [[0] * B.cols for _ in range(A.cols)]
    for j in range(B.cols):
        for i in range(A.rows):
            v = UB[i, j]
            di = d[i] if i < len(d) else 0
            if di == 0:
                if v:
                    return None
            elif v % di:
                return None
            else:
                Y[i][j] = v // di
    return V @ IntMatrix(A.cols, B.cols, Y)


def in_column_lattice(A: IntMatrix, v: Sequence[int]) -> bool:
    return solve_integer(A, IntMatrix.from_columns([list(v)], A.rows)) is not None


def lattice_membership(A: IntMatrix):
    """Predicate ``v -> v in span_Z(columns of A)`` sharing one Smith form."""
    U, D, _ = smith_normal_form(A)
    d = diagonal(D)

    def member(v: Sequence[int]) -> bool:
        if len(v) != A.rows:
            raise ArgumentError("vector has the wrong length")
        for i, x in enumerate(U.apply(v)):
            di = d[i] if i < len(d) else 0
            if (di == 0 and x) or (di and x % di):
                return False
        return True

    return member


def distinct_nonzero_columns(A: IntMatrix) -> IntMatrix:
    """Same column lattice with zero and repeated columns dropped."""
    seen, cols = set(), []
    for c in A.columns():
        if any(c) and c not in seen:
            seen.add(c)
            cols.append(c)
    return IntMatrix.from_columns(cols, A.rows)


def subquotient_invariants(relations: IntMatrix, sub_basis: IntMatrix) -> FGAbelianGroup:
    """``span(sub_basis) / span(relations)`` in canonical form.

    Every relation column must lie in the integer span of ``sub_basis``.
    """
    coords = subquotient_coordinates(relations, sub_basis)
    return cokernel_invariants(coords)


def subquotient_coordinates(relations: IntMatrix, sub_basis: IntMatrix) -> IntMatrix:
    if relations.rows != sub_basis.rows:
        raise ArgumentError("relations and sub_basis live in different lattices")
    if relations.cols == 0:
        return IntMatrix.zeros(sub_basis.cols, 0)
    X = solve_integer(sub_basis, relations)
    if X is None:
        raise ContainmentError("a relation column is not in the span of sub_basis")
    return X


def inverse_unimodular(U: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (Gauss-Jordan over Q, then checked integral)."""
    n = U.rows
    M = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(U.entries)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise ArgumentError("matrix is singular")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [v / piv for v in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    out = [[M[i][n + j] for j in range(n)] for i in range(n)]
    if any(v.denominator != 1 for row in out for v in row):
        raise ArgumentError("matrix is not unimodular")
    return IntMatrix(n, n, [[int(v) for v in row] for row in out])
