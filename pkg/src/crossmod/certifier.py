"""Hopf-sequence certificate over a free group.

For a surjection ``F_r ->> M`` onto a finite abelian group with kernel ``N``,

    0 -> H2(M) -> N/[F,N] --j--> F_ab ->> M -> 0

is exact (``H2`` of a free group vanishes). ``N/[F,N]`` is computed from a
Schreier basis of ``N``: it is ``Z^basis`` modulo the relations
``x y x^-1 = y`` for every basis element ``y`` and generator ``x``. The map
``j`` sends a basis element to its exponent vector. A nonzero ``ker j``
shows that ``j`` is not a monomorphism, which cannot happen in a balanced
category.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .errors import ArgumentError, InvariantViolation
from .groups import abelian_element, abelian_group
from .lattice import (
    FGAbelianGroup,
    IntMatrix,
    cokernel_invariants,
    diagonal,
    distinct_nonzero_columns,
    kernel_lattice,
    lattice_membership,
    smith_normal_form_full,
    solve_integer,
    subquotient_coordinates,
)
from .words import (
    SchreierBasis,
    abelianized_rewrite,
    coset_table,
    evaluate,
    exponent_vector,
    format_word,
    free_reduce,
    power,
    schreier_generators,
)

J_INJECTIVE = "J_INJECTIVE"
J_NOT_INJECTIVE = "J_NOT_INJECTIVE"


def schur_multiplier_abelian(m_invariants: Sequence[int]) -> FGAbelianGroup:
    """``H2`` of ``Z/n1 + ... + Z/nk``: the sum over ``i < j`` of ``Z/gcd(ni, nj)``."""
    ns = _check_invariants(m_invariants)
    parts = [gcd(a, b) for i, a in enumerate(ns) for b in ns[i + 1:]]
    return FGAbelianGroup.from_torsion(parts)


def _check_invariants(m_invariants) -> list:
    ns = [int(n) for n in m_invariants]
    if any(n < 2 for n in ns):
        raise ArgumentError("invariant factors must be >= 2")
    return ns


def relation_matrix_for_N_mod_TN(basis: SchreierBasis) -> IntMatrix:
    """Columns ``rewrite(x y x^-1) - e_y`` for each basis element ``y`` and generator ``x``."""
    s = len(basis)
    rank = basis.table.rank
    cols = []
    for yi, y in enumerate(basis.words):
        for x in range(1, rank + 1):
            v = list(abelianized_rewrite(free_reduce((x,) + tuple(y) + (-x,)), basis))
            v[yi] -= 1
            cols.append(v)
    return IntMatrix.from_columns(cols, s)


def j_matrix(basis: SchreierBasis) -> IntMatrix:
    """``rank x |basis|``: exponent vectors of the basis words."""
    rank = basis.table.rank
    return IntMatrix.from_columns([exponent_vector(w, rank) for w in basis.words], rank)


@dataclass(frozen=True)
class Witness:
    exponents: tuple        # over the Schreier basis
    word: tuple             # in the ambient free group
    order: int


@dataclass(frozen=True, eq=False)
class HopfReport:
    m_invariants: tuple
    rank_T: int
    index: int
    schreier_count: int
    relation_matrix: IntMatrix
    n_mod_TN: FGAbelianGroup
    j_matrix: IntMatrix
    ker_j: FGAbelianGroup
    h2_oracle: FGAbelianGroup
    verdict: str
    basis: SchreierBasis
    witness: Optional[Witness] = None


def _exp_map_kernel(ns: Sequence[int], rank: int) -> IntMatrix:
    cols = []
    for i in range(rank):
        c = [0] * rank
        c[i] = ns[i] if i < len(ns) else 1
        cols.append(c)
    return IntMatrix.from_columns(cols, rank)


def _same_lattice(A: IntMatrix, B: IntMatrix) -> bool:
    return (solve_integer(A, B) is not None) and (solve_integer(B, A) is not None)


def hopf_pipeline(m_invariants: Sequence[int], rank: int) -> HopfReport:
    ns = _check_invariants(m_invariants)
    rank = int(rank)
    if rank < 1 or rank < len(ns):
        raise ArgumentError(f"rank {rank} cannot surject onto {len(ns)} cyclic factors")
    M = abelian_group(ns)
    images = [abelian_element(M, [int(i == k) for i in range(len(ns))]) if k < len(ns) else 0
              for k in range(rank)]
    table = coset_table(rank, M, images)
    basis = schreier_generators(table)
    R = relation_matrix_for_N_mod_TN(basis)
    Jm = j_matrix(basis)
    if not (Jm @ R).is_zero():
        raise InvariantViolation("j is not well defined on N/[T,N]")
    Rr = distinct_nonzero_columns(R)
    n_mod = cokernel_invariants(Rr)
    K = kernel_lattice(Jm)
    C = subquotient_coordinates(Rr, K)
    ker_j = cokernel_invariants(C)
    h2 = schur_multiplier_abelian(ns)
    if ker_j != h2:
        raise InvariantViolation(f"ker j = {ker_j} differs from H2 oracle {h2}")
    if n_mod.rank != rank or n_mod.torsion != ker_j.torsion:
        raise InvariantViolation(f"N/[T,N] = {n_mod} has the wrong shape")
    # exactness at T_ab: im j = ker(Z^r -> M), hence coker j = M
    if not _same_lattice(Jm, _exp_map_kernel(ns, rank)):
        raise InvariantViolation("image of j differs from the kernel of Z^r -> M")
    if cokernel_invariants(Jm) != FGAbelianGroup.from_torsion(ns):
        raise InvariantViolation("coker j is not M")
    verdict = J_NOT_INJECTIVE if not ker_j.is_trivial else J_INJECTIVE
    report = HopfReport(tuple(ns), rank, table.index, len(basis), R, n_mod, Jm, ker_j, h2,
                        verdict, basis)
    if verdict == J_NOT_INJECTIVE:
        w = _find_witness(report, K, C)
        report = HopfReport(**{**report.__dict__, "witness": w})
        verify_witness(report)
    return report


def _find_witness(report: HopfReport, K: IntMatrix, C: IntMatrix) -> Witness:
    """Generator of the first nontrivial torsion factor of ``ker j``, as Schreier exponents.

    ``C`` expresses the relations in the basis ``K`` of ``ker j``.
    """
    _, D, _, Uinv = smith_normal_form_full(C)
    d = diagonal(D) + [0] * (C.rows - min(C.rows, C.cols))
    i = next(k for k, v in enumerate(d) if v > 1)
    y = Uinv.column(i)
    v = K.apply(y)
    word = ()
    for k, e in enumerate(v):
        if e:
            word = free_reduce(word + power(report.basis.words[k], e))
    return Witness(tuple(v), word, int(d[i]))


def _prime_factors(n: int) -> list:
    out, p = [], 2
    while n > 1:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    return out


def verify_witness(report: HopfReport) -> None:
    """Recheck the witness without reusing the SNF that produced it."""
    w = report.witness
    if w is None:
        return
    ns, rank = report.m_invariants, report.rank_T
    M = abelian_group(list(ns))
    images = [abelian_element(M, [int(i == k) for i in range(len(ns))]) if k < len(ns) else 0
              for k in range(rank)]
    if evaluate(w.word, M, images) != 0:
        raise InvariantViolation("witness does not lie in N")
    if any(exponent_vector(w.word, rank)):
        raise InvariantViolation("witness has nonzero image under j")
    rewritten = abelianized_rewrite(w.word, report.basis)
    if tuple(rewritten) != tuple(w.exponents):
        raise InvariantViolation("witness word and exponents disagree")
    member = lattice_membership(report.relation_matrix)
    if member(w.exponents):
        raise InvariantViolation("witness is zero in N/[T,N]")
    if not member([w.order * e for e in w.exponents]):
        raise InvariantViolation("witness order is not a multiple of the claimed order")
    for p in _prime_factors(w.order):
        if member([(w.order // p) * e for e in w.exponents]):
            raise InvariantViolation("witness has smaller order than claimed")


@dataclass(frozen=True, eq=False)
class Certificate:
    report: HopfReport

    @property
    def has_witness(self) -> bool:
        return self.report.witness is not None

    def to_json(self) -> dict:
        r = self.report
        w = r.witness
        wj = None
        if w is not None:
            wj = {"exponents": list(w.exponents), "order": w.order,
                  "word": format_word(w.word) if r.rank_T <= 26 else list(w.word)}
        return {
            "m": list(r.m_invariants),
            "rank": r.rank_T,
            "schreier_count": r.schreier_count,
            "n_mod_tn": r.n_mod_TN.to_json(),
            "ker_j": r.ker_j.to_json(),
            "h2": r.h2_oracle.to_json(),
            "verdict": r.verdict,
            "witness": wj,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)

    def text(self) -> str:
        r = self.report
        m = " + ".join(f"Z/{n}" for n in r.m_invariants) or "0"
        lines = [
            f"M = {m}, free group of rank {r.rank_T}, index {r.index}",
            f"Schreier generators: {r.schreier_count}",
            f"N/[T,N] = {r.n_mod_TN}",
            f"ker j = {r.ker_j}   (H2(M) by gcd formula: {r.h2_oracle})",
            f"verdict: {r.verdict}",
        ]
        if r.witness is not None:
            w = r.witness
            word = format_word(w.word) if r.rank_T <= 26 else str(w.word)
            if len(word) > 200:
                word = word[:200] + "..."
            lines += [
                f"witness of order {w.order}: {word}",
                "j is not a monomorphism. In a balanced category of interest it would be,",
                "so the category of crossed modules is not balanced.",
            ]
        else:
            lines.append("no witness from this M: j is injective")
        return "\n".join(lines)


def certify_nonbalanced(m_invariants: Sequence[int], rank: int) -> Certificate:
    return Certificate(hopf_pipeline(m_invariants, rank))
