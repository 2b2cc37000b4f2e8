"""Named small groups, crossed modules and extensions used by tests and the CLI."""
from __future__ import annotations


import numpy as np

from .derived import make_extension
from .groups import (
    FiniteGroup,
    abelian_group,
    abelianization,
    direct_product,
    group_from_elements,
    group_from_permutations,
    identity_hom,
    make_action,
    make_hom,
    quotient,
    subgroup_closure,
    trivial_group,
    zero_hom,
)
from .xmod import (
    identity_xmod,
    make_crossed_module,
    normal_inclusion_xmod,
    point_xmod,
    base_xmod,
    trivial_action_xmod,
)


# -- groups --------------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    return trivial_group() if n == 1 else abelian_group([n], name=f"Z/{n}")


def metacyclic(m: int, k: int, n: int, name=None) -> FiniteGroup:
    """``Z/m ⋊ Z/n`` where the generator of ``Z/n`` acts by ``x -> k x``."""
    if pow(k, n, m) != 1 % m:
        raise ValueError("k must have order dividing n modulo m")
    elems = [(a, b) for b in range(n) for a in range(m)]

    def mul(x, y):
        return ((x[0] + pow(k, x[1], m) * y[0]) % m, (x[1] + y[1]) % n)

    G = group_from_elements(elems, mul, name=name or f"Z/{m}:{k}Z/{n}")
    G._generators = (1, m)
    return G


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular ``n``-gon, order ``2n``."""
    return metacyclic(n, n - 1, 2, name=f"D{n}")


def dicyclic(n: int) -> FiniteGroup:
    """``<a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>``, order ``4n`` (``Q8`` for ``n = 2``)."""
    m = 2 * n
    elems = [(a, b) for b in range(2) for a in range(m)]

    def mul(x, y):
        a1, b1 = x
        a2, b2 = y
        a = a1 + (a2 if b1 == 0 else -a2)
        if b1 and b2:
            a += n
        return (a % m, (b1 + b2) % 2)

    G = group_from_elements(elems, mul, name="Q8" if n == 2 else f"Dic{n}")
    G._generators = (1, m)
    return G


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return trivial_group()
    cyc = list(range(2, n + 1)) + [1]
    swap = [2, 1] + list(range(3, n + 1))
    return group_from_permutations(n, [swap, cyc] if n > 2 else [swap], name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return trivial_group()
    gens = []
    for i in range(3, n + 1):
        p = list(range(1, n + 1))
        p[0], p[1], p[i - 1] = 2, i, 1           # 3-cycle (1 2 i)
        gens.append(p)
    return group_from_permutations(n, gens, name=f"A{n}")


def _direct(A, B, name):
    G = direct_product(A, B).group
    G.name = name
    return G


def _pauli() -> FiniteGroup:
    P = direct_product(cyclic(4), dihedral(4))
    z = P.pair(2, int(dihedral(4).power(1, 2)))
    Q, _ = quotient(P.group, subgroup_closure(P.group, [z]))
    Q.name = "Pauli"
    return Q


def _g16_3() -> FiniteGroup:
    """``(Z/4 x Z/2) ⋊ Z/2`` with ``(x, y) -> (x, x + y)``."""
    elems = [(x, y, c) for c in range(2) for x in range(4) for y in range(2)]

    def act(c, x, y):
        return (x, (y + x * c) % 2)

    def mul(p, q):
        x2, y2 = act(p[2], q[0], q[1])
        return ((p[0] + x2) % 4, (p[1] + y2) % 2, (p[2] + q[2]) % 2)

    return group_from_elements(elems, mul, name="G16_3")


def small_groups(max_order: int = 16) -> list:
    """One representative of each isomorphism type of order ``<= max_order`` (``<= 16``)."""
    if max_order > 16:
        raise ValueError("only orders up to 16 are listed")
    Z = cyclic
    ab = abelian_group
    table = [
        (1, lambda: trivial_group()),
        (2, lambda: Z(2)), (3, lambda: Z(3)),
        (4, lambda: Z(4)), (4, lambda: ab([2, 2])),
        (5, lambda: Z(5)),
        (6, lambda: Z(6)), (6, lambda: symmetric(3)),
        (7, lambda: Z(7)),
        (8, lambda: Z(8)), (8, lambda: ab([2, 4])), (8, lambda: ab([2, 2, 2])),
        (8, lambda: dihedral(4)), (8, lambda: dicyclic(2)),
        (9, lambda: Z(9)), (9, lambda: ab([3, 3])),
        (10, lambda: Z(10)), (10, lambda: dihedral(5)),
        (11, lambda: Z(11)),
        (12, lambda: Z(12)), (12, lambda: ab([2, 6])), (12, lambda: dihedral(6)),
        (12, lambda: alternating(4)), (12, lambda: dicyclic(3)),
        (13, lambda: Z(13)),
        (14, lambda: Z(14)), (14, lambda: dihedral(7)),
        (15, lambda: Z(15)),
        (16, lambda: Z(16)), (16, lambda: ab([2, 8])), (16, lambda: ab([4, 4])),
        (16, lambda: ab([2, 2, 4])), (16, lambda: ab([2, 2, 2, 2])),
        (16, lambda: dihedral(8)), (16, lambda: dicyclic(4)),
        (16, lambda: metacyclic(8, 3, 2, name="SD16")),
        (16, lambda: metacyclic(8, 5, 2, name="M16")),
        (16, lambda: metacyclic(4, 3, 4, name="Z4:Z4")),
        (16, lambda: _direct(Z(2), dihedral(4), "Z2xD4")),
        (16, lambda: _direct(Z(2), dicyclic(2), "Z2xQ8")),
        (16, _pauli),
        (16, _g16_3),
    ]
    return [make() for n, make in table if n <= max_order]


# -- crossed modules -------------------------------------------------------------


def inversion_xmod(n: int):
    """``(Z/n, Z/2, 0)`` with ``Z/2`` acting by inversion."""
    T, G = cyclic(n), cyclic(2)
    act = np.array([np.arange(n), (-np.arange(n)) % n])
    return make_crossed_module(T, G, zero_hom(T, G), make_action(G, T, act),
                               name=f"(Z/{n},Z/2,0,inv)")


def aut_xmod(G: FiniteGroup):
    """``(G, Aut(G), inner)`` with the natural action."""
    from .groups import automorphisms

    auts = automorphisms(G)
    key = {a.images.tobytes(): i for i, a in enumerate(auts)}
    n = len(auts)
    table = np.array([[key[auts[i].images[auts[j].images].tobytes()] for j in range(n)]
                      for i in range(n)], dtype=np.int64)
    A = FiniteGroup(table, labels=[f"a{i}" for i in range(n)], name=f"Aut({G.name})")
    inner = np.array([key[np.array([G.conj(g, x) for x in range(G.order)],
                                   dtype=np.int64).tobytes()] for g in range(G.order)])
    act = np.array([a.images for a in auts], dtype=np.int64)
    from .groups import GroupHom
    return make_crossed_module(G, A, GroupHom(G, A, inner), make_action(A, G, act),
                               name=f"({G.name},Aut,inn)")


def xmod_catalog() -> list:
    """Ten fixed crossed modules of varied shape."""
    S3, Q8, D4 = symmetric(3), dicyclic(2), dihedral(4)
    Z2, Z4 = cyclic(2), cyclic(4)
    A3 = subgroup_closure(S3, [S3.generators[1]])
    return [
        identity_xmod(Z2),
        identity_xmod(Z4),
        identity_xmod(S3),
        base_xmod(S3),
        point_xmod(Z2),
        point_xmod(abelian_group([2, 2])),
        normal_inclusion_xmod(S3, A3),
        identity_xmod(Q8),
        inversion_xmod(4),
        aut_xmod(D4),
    ]


# -- extensions over a point -----------------------------------------------------


def extension_catalog() -> dict:
    """Finite extensions ``(N,G,nu) >-> (T,G,mu) ->> (M,1,0)`` keyed by a short name."""
    Z2, Z3, Z4, Z6 = cyclic(2), cyclic(3), cyclic(4), cyclic(6)
    S3, Q8, D4 = symmetric(3), dicyclic(2), dihedral(4)
    V = abelian_group([2, 2])
    out = {}
    out["Z4->Z2"] = make_extension(point_xmod(Z4), make_hom(Z4, Z2, {1: 1}))
    X = identity_xmod(S3)
    out["S3 sign"] = make_extension(X, abelianization(S3)[1])
    out["Q8 ab"] = make_extension(identity_xmod(Q8), abelianization(Q8)[1])
    out["D4 ab"] = make_extension(identity_xmod(D4), abelianization(D4)[1])
    out["N=1"] = make_extension(point_xmod(V), identity_hom(V))
    out["M=1"] = make_extension(X, zero_hom(S3, trivial_group()))
    out["(Z4,Z4,id)->Z2"] = make_extension(identity_xmod(Z4), make_hom(Z4, Z2, {1: 1}))
    out["V->Z2"] = make_extension(point_xmod(V), make_hom(V, Z2, {2: 1, 1: 0}))
    out["(Z6,Z6,id)->Z3"] = make_extension(identity_xmod(Z6), make_hom(Z6, Z3, {1: 1}))
    return out


def point_coefficients() -> list:
    """Small abelian crossed modules used as coefficients over ``(M, 1, 0)``."""
    Z2, Z3, Z4 = cyclic(2), cyclic(3), cyclic(4)
    return [
        trivial_action_xmod(Z2, Z2, identity_hom(Z2)),
        trivial_action_xmod(Z2, Z2, zero_hom(Z2, Z2)),
        point_xmod(Z2),
        base_xmod(Z2),
        point_xmod(Z3),
        trivial_action_xmod(Z2, Z4, make_hom(Z2, Z4, {1: 2})),
    ]
