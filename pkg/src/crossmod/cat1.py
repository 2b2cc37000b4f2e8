"""Cat¹-groups ``(G, d0, d1)`` and the equivalence with crossed modules."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import AxiomError, CrossmodError, InvariantViolation
from .groups import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    all_subgroups,
    as_group,
    commutator_subgroup,
    derived_subgroup,
    homomorphisms,
    image,
    is_normal,
    isomorphisms,
    kernel,
    semidirect_product,
)
from .xmod import CrossedModule, XModMorphism, make_crossed_module, make_xmod_morphism


@dataclass(frozen=True, eq=False)
class Cat1Group:
    G: FiniteGroup
    d0: GroupHom
    d1: GroupHom

    def __repr__(self):
        return f"<Cat1Group |G|={self.G.order} |ker d0|={len(kernel(self.d0))} |im|={len(image(self.d1))}>"


def kernel_commutator_elementwise(G, d0, d1):
    """First ``(x, y)`` where ``d0(x)x^-1`` and ``d1(y)y^-1`` fail to commute, or ``None``."""
    ar = np.arange(G.order)
    k0 = G.table[d0.images, G.inverse]
    k1 = G.table[d1.images, G.inverse]
    lhs = G.table[k0[:, None], k1[None, :]]
    rhs = G.table[k1[None, :], k0[:, None]]
    bad = lhs != rhs
    if bad.any():
        x, y = np.argwhere(bad)[0]
        return int(ar[x]), int(ar[y])
    return None


def make_cat1(G: FiniteGroup, d0: GroupHom, d1: GroupHom) -> Cat1Group:
    """Check ``d0 d1 = d1``, ``d1 d0 = d0`` and ``[ker d0, ker d1] = 1``.

    The kernel condition is evaluated both as a subgroup commutator and in
    the elementwise form; once the first two identities hold the two must
    agree.
    """
    for d in (d0, d1):
        if d.source != G or d.target != G:
            raise CrossmodError("d0 and d1 must be endomorphisms of G")
    bad = np.flatnonzero(d0.images[d1.images] != d1.images)
    if len(bad):
        raise AxiomError("d0d1=d1", "d0(d1(x)) != d1(x)", witness=(int(bad[0]),))
    bad = np.flatnonzero(d1.images[d0.images] != d0.images)
    if len(bad):
        raise AxiomError("d1d0=d0", "d1(d0(x)) != d0(x)", witness=(int(bad[0]),))
    sub_ok = commutator_subgroup(G, kernel(d0), kernel(d1)) == (0,)
    elem = kernel_commutator_elementwise(G, d0, d1)
    if sub_ok != (elem is None):
        raise InvariantViolation("subgroup and elementwise kernel-commutator forms disagree")
    if elem is not None:
        raise AxiomError("[ker d0,ker d1]=1", "kernels do not commute", witness=elem)
    return Cat1Group(G, d0, d1)


def cm_to_cat1(X: CrossedModule):
    """``(T ⋊ G, d0, d1)`` with ``d0(t,g) = (1,g)`` and ``d1(t,g) = (1, mu(t) g)``.

    Returns the cat¹-group and the semidirect-product structure.
    """
    S = semidirect_product(X.action)
    nT, nG = X.T.order, X.G.order
    t = np.repeat(np.arange(nT), nG)
    g = np.tile(np.arange(nG), nT)
    d0 = GroupHom(S.group, S.group, g)
    d1 = GroupHom(S.group, S.group, X.G.table[X.mu.images[t], g])
    try:
        C = make_cat1(S.group, d0, d1)
    except AxiomError as exc:
        raise InvariantViolation(f"cat1 of a crossed module failed: {exc}") from exc
    return C, S


def cat1_to_cm(C: Cat1Group):
    """``(ker d0, im d1, d1|)`` with conjugation; returns the crossed module and both inclusions."""
    K = kernel(C.d0)
    B = image(C.d1)
    if B != image(C.d0):
        raise InvariantViolation("im d0 != im d1 in a validated cat1-group")
    T, iT = as_group(C.G, K)
    G, iG = as_group(C.G, B)
    lG = np.full(C.G.order, -1, dtype=np.int64)
    lG[iG.images] = np.arange(G.order)
    lT = np.full(C.G.order, -1, dtype=np.int64)
    lT[iT.images] = np.arange(T.order)
    mu = GroupHom(T, G, lG[C.d1.images[iT.images]])
    gi, ti = iG.images, iT.images
    conj = C.G.table[C.G.table[gi[:, None], ti[None, :]], C.G.inverse[gi][:, None]]
    act = lT[conj]
    if (act < 0).any():
        raise InvariantViolation("ker d0 not normal in G")
    try:
        X = make_crossed_module(T, G, mu, GroupAction(G, T, act))
    except AxiomError as exc:
        raise InvariantViolation(f"crossed module of a cat1-group failed: {exc}") from exc
    return X, iT, iG


def is_cat1_morphism(C1: Cat1Group, C2: Cat1Group, phi: GroupHom) -> bool:
    return (np.array_equal(phi.images[C1.d0.images], C2.d0.images[phi.images])
            and np.array_equal(phi.images[C1.d1.images], C2.d1.images[phi.images]))


def _signature(C: Cat1Group) -> tuple:
    orders = C.G.element_orders()
    k0, k1, im = kernel(C.d0), kernel(C.d1), image(C.d1)
    return (C.G.order, sorted(orders.tolist()), len(k0), len(k1), len(im),
            sorted(orders[list(k0)].tolist()), sorted(orders[list(im)].tolist()))


def cat1_iso(C1: Cat1Group, C2: Cat1Group) -> Optional[GroupHom]:
    """First isomorphism (in generator-image order) commuting with both ``d``'s, or ``None``."""
    if C1.G.order != C2.G.order or _signature(C1) != _signature(C2):
        return None
    for phi in isomorphisms(C1.G, C2.G):
        if is_cat1_morphism(C1, C2, phi):
            return phi
    return None


def cat1_commutator_subobject(C: Cat1Group) -> tuple:
    D = derived_subgroup(C.G)
    Ds = set(D)
    for d in (C.d0, C.d1):
        if any(d(x) not in Ds for x in D):
            raise InvariantViolation("derived subgroup is not d-stable")
    return D


def idempotent_endomorphisms(G: FiniteGroup) -> list:
    return [e for e in homomorphisms(G, G) if np.array_equal(e.images[e.images], e.images)]


def split_idempotents(G: FiniteGroup) -> dict:
    """Idempotent endomorphisms grouped by image.

    An idempotent is the projection ``hk -> h`` for a subgroup ``H`` and a
    normal complement ``K``; enumerating such pairs avoids a search over
    all endomorphisms.
    """
    subs = all_subgroups(G)
    normals = [K for K in subs if is_normal(G, K)]
    out = {}
    for H in subs:
        for K in normals:
            if len(H) * len(K) != G.order or set(H) & set(K) != {0}:
                continue
            e = np.empty(G.order, dtype=np.int64)
            h = np.array(H, dtype=np.int64)
            for k in K:
                e[G.table[h, k]] = h
            out.setdefault(H, []).append(GroupHom(G, G, e))
    return out


def cat1_structures(G: FiniteGroup) -> list:
    """Every cat¹-structure on ``G`` (pairs of idempotents with equal image passing :func:`make_cat1`)."""
    out = []
    for group in split_idempotents(G).values():
        for e0 in group:
            for e1 in group:
                try:
                    out.append(make_cat1(G, e0, e1))
                except AxiomError:
                    pass
    return out


def xmod_round_trip(X: CrossedModule) -> XModMorphism:
    """Canonical isomorphism ``X -> cat1_to_cm(cm_to_cat1(X))``: ``t -> (t,1)``, ``g -> (1,g)``."""
    C, S = cm_to_cat1(X)
    Y, iT, iG = cat1_to_cm(C)
    lT = np.full(C.G.order, -1, dtype=np.int64)
    lT[iT.images] = np.arange(Y.T.order)
    lG = np.full(C.G.order, -1, dtype=np.int64)
    lG[iG.images] = np.arange(Y.G.order)
    f = lT[np.arange(X.T.order) * X.G.order]             # (t, 1)
    h = lG[np.arange(X.G.order)]                          # (1, g)
    m = make_xmod_morphism(X, Y, GroupHom(X.T, Y.T, f), GroupHom(X.G, Y.G, h))
    if not m.is_iso():
        raise InvariantViolation("canonical round-trip map is not an isomorphism")
    return m


def cat1_round_trip(C: Cat1Group) -> GroupHom:
    """Canonical isomorphism ``cm_to_cat1(cat1_to_cm(C)) -> C``: ``(k, b) -> k b``."""
    X, iT, iG = cat1_to_cm(C)
    C2, S = cm_to_cat1(X)
    k = np.repeat(iT.images, X.G.order)
    b = np.tile(iG.images, X.T.order)
    psi = GroupHom(C2.G, C.G, C.G.table[k, b])
    if not (psi.is_injective() and psi.is_surjective() and is_cat1_morphism(C2, C, psi)):
        raise InvariantViolation("canonical round-trip map is not a cat1 isomorphism")
    return psi
