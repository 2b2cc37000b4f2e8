"""Independent reference computations used by the tests."""
from itertools import combinations
from math import gcd


def det_laplace(rows):
    """Exact determinant by cofactor expansion (small matrices only)."""
    n = len(rows)
    if n == 0:
        return 1
    if n == 1:
        return rows[0][0]
    total = 0
    for j, a in enumerate(rows[0]):
        if a:
            minor = [r[:j] + r[j + 1:] for r in rows[1:]]
            total += (-1) ** j * a * det_laplace(minor)
    return total


def determinantal_divisors(rows):
    """``g_k`` = gcd of all ``k x k`` minors, for ``k = 1 .. min(m, n)``."""
    m = len(rows)
    n = len(rows[0]) if m else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for ri in combinations(range(m), k):
            for ci in combinations(range(n), k):
                g = gcd(g, det_laplace([[rows[i][j] for j in ci] for i in ri]))
        out.append(g)
    return out


def invariant_factors_by_minors(rows):
    """Smith diagonal from determinantal divisors: ``d_k = g_k / g_{k-1}``."""
    out, prev = [], 1
    for g in determinantal_divisors(rows):
        if g == 0:
            out.append(0)
            prev = 0
            continue
        out.append(g // prev)
        prev = g
    return out


def h2_abelian_oracle(ns):
    """Torsion list of ``H2(Z/n1 + ... + Z/nk)`` before normalisation."""
    return [gcd(a, b) for i, a in enumerate(ns) for b in ns[i + 1:]]


def abelian_group_types(max_order, max_factors):
    """Invariant-factor chains ``d1 | d2 | ...`` with ``di >= 2`` and product ``<= max_order``."""
    out = []

    def rec(chain, prod):
        if chain:
            out.append(tuple(chain))
        if len(chain) == max_factors:
            return
        last = chain[-1] if chain else 1
        d = 2 if not chain else last
        while prod * d <= max_order:
            if d % last == 0:
                rec(chain + [d], prod * d)
            d += 1

    rec([], 1)
    return out
