"""Crossed modules of finite groups and their morphisms.

A crossed module ``(T, G, mu)`` is a homomorphism ``mu: T -> G`` with a
left action of ``G`` on ``T`` such that

* ``mu(g·t) = g mu(t) g^-1``          (equivariance)
* ``mu(t)·t' = t t' t^-1``            (Peiffer identity)

Every :class:`CrossedModule` produced by :func:`make_crossed_module` has
been checked on all pairs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import ArgumentError, AxiomError, NormalityError
from .groups import (
    FiniteGroup,
    GroupAction,
    GroupHom,
    as_group,
    conjugation_action,
    identity_hom,
    image,
    is_normal,
    is_subgroup,
    isomorphisms,
    kernel,
    make_action,
    quotient,
    trivial_action,
    trivial_group,
    zero_hom,
)


@dataclass(frozen=True, eq=False)
class CrossedModule:
    T: FiniteGroup
    G: FiniteGroup
    mu: GroupHom
    action: GroupAction
    name: Optional[str] = None

    def act(self, g: int, t: int) -> int:
        return int(self.action.act[g, t])

    @property
    def orders(self) -> tuple:
        return (self.T.order, self.G.order)

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<CrossedModule{name} |T|={self.T.order} |G|={self.G.order}>"


def _first(mask_bad: np.ndarray):
    return tuple(int(v) for v in np.argwhere(mask_bad)[0])


def check_xmod_axioms(T, G, mu, act) -> None:
    """Raise :class:`AxiomError` with the first failing pair in canonical order."""
    # mu(g·t) == g mu(t) g^-1
    lhs = mu.images[act]
    rhs = G.table[G.table[np.arange(G.order)[:, None], mu.images[None, :]], G.inverse[:, None]]
    if not np.array_equal(lhs, rhs):
        raise AxiomError("equivariance", "mu(g·t) != g mu(t) g^-1", witness=_first(lhs != rhs))
    # mu(t)·t' == t t' t^-1
    lhs = act[mu.images]
    rhs = T.table[T.table, T.inverse[:, None]]
    if not np.array_equal(lhs, rhs):
        raise AxiomError("peiffer", "mu(t)·t' != t t' t^-1", witness=_first(lhs != rhs))


def make_crossed_module(T: FiniteGroup, G: FiniteGroup, mu: GroupHom,
                        action: GroupAction, name=None) -> CrossedModule:
    if mu.source != T or mu.target != G:
        raise ArgumentError("mu must map T to G")
    if action.actor != G or action.space != T:
        raise ArgumentError("action must be an action of G on T")
    check_xmod_axioms(T, G, mu, action.act)
    return CrossedModule(T, G, mu, action, name)


def xmod_from_arrays(T, G, mu_images, act, name=None) -> CrossedModule:
    """Validate raw arrays (hom, action and both axioms) into a crossed module."""
    mu = GroupHom(T, G, mu_images)
    action = make_action(G, T, act)
    return make_crossed_module(T, G, mu, action, name)


# -- standard constructions -------------------------------------------------


def identity_xmod(G: FiniteGroup) -> CrossedModule:
    """``(G, G, id)`` with conjugation."""
    return make_crossed_module(G, G, identity_hom(G), conjugation_action(G),
                               name=f"({G.name or 'G'},{G.name or 'G'},id)")


def point_xmod(M: FiniteGroup) -> CrossedModule:
    """``(M, 1, 0)`` for abelian ``M``."""
    one = trivial_group()
    return make_crossed_module(M, one, zero_hom(M, one), trivial_action(one, M),
                               name=f"({M.name or 'M'},1,0)")


def base_xmod(G: FiniteGroup) -> CrossedModule:
    """``(1, G, 0)``."""
    one = trivial_group()
    return make_crossed_module(one, G, zero_hom(one, G), trivial_action(G, one),
                               name=f"(1,{G.name or 'G'},0)")


def normal_inclusion_xmod(G: FiniteGroup, N: Iterable[int]) -> CrossedModule:
    """``(N, G, incl)`` with conjugation, for ``N`` normal in ``G``."""
    N = tuple(sorted(N))
    if not is_normal(G, N):
        raise NormalityError("N is not normal in G")
    H, incl = as_group(G, N)
    lookup = {int(x): i for i, x in enumerate(incl.images)}
    act = np.array([[lookup[G.conj(g, int(incl.images[n]))] for n in range(H.order)]
                    for g in range(G.order)], dtype=np.int64)
    return make_crossed_module(H, G, incl, GroupAction(G, H, act))


def trivial_action_xmod(T: FiniteGroup, G: FiniteGroup, mu: GroupHom) -> CrossedModule:
    return make_crossed_module(T, G, mu, trivial_action(G, T))


# -- morphisms ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class XModMorphism:
    source: CrossedModule
    target: CrossedModule
    f: GroupHom
    h: GroupHom

    def is_iso(self) -> bool:
        return (self.f.is_injective() and self.f.is_surjective()
                and self.h.is_injective() and self.h.is_surjective())

    def compose(self, inner: "XModMorphism") -> "XModMorphism":
        return XModMorphism(inner.source, self.target, self.f.compose(inner.f), self.h.compose(inner.h))


def make_xmod_morphism(source: CrossedModule, target: CrossedModule,
                       f: GroupHom, h: GroupHom) -> XModMorphism:
    if f.source != source.T or f.target != target.T:
        raise ArgumentError("f must map source.T to target.T")
    if h.source != source.G or h.target != target.G:
        raise ArgumentError("h must map source.G to target.G")
    lhs = target.mu.images[f.images]
    rhs = h.images[source.mu.images]
    if not np.array_equal(lhs, rhs):
        t = int(np.flatnonzero(lhs != rhs)[0])
        raise AxiomError("square", "mu' f != h mu", witness=(t,))
    lhs = f.images[source.action.act]
    rhs = target.action.act[h.images[:, None], f.images[None, :]]
    if not np.array_equal(lhs, rhs):
        raise AxiomError("action", "f(g·t) != h(g)·f(t)", witness=_first(lhs != rhs))
    return XModMorphism(source, target, f, h)


def identity_morphism(X: CrossedModule) -> XModMorphism:
    return XModMorphism(X, X, identity_hom(X.T), identity_hom(X.G))


# -- sub-objects and quotients ------------------------------------------------


def sub_xmod(X: CrossedModule, subT: Iterable[int], subG: Iterable[int]):
    """Sub-crossed module on subgroups ``subT``, ``subG``; returns ``(Y, inclusion)``."""
    subT, subG = tuple(sorted(set(subT))), tuple(sorted(set(subG)))
    if not is_subgroup(X.T, subT) or not is_subgroup(X.G, subG):
        raise ArgumentError("subT and subG must be subgroups")
    sT, sG = set(subT), set(subG)
    if any(X.mu(t) not in sG for t in subT):
        raise ArgumentError("mu(subT) is not contained in subG")
    if any(X.act(g, t) not in sT for g in subG for t in subT):
        raise ArgumentError("subT is not stable under subG")
    T2, iT = as_group(X.T, subT)
    G2, iG = as_group(X.G, subG)
    lT = np.full(X.T.order, -1, dtype=np.int64)
    lT[iT.images] = np.arange(T2.order)
    lG = np.full(X.G.order, -1, dtype=np.int64)
    lG[iG.images] = np.arange(G2.order)
    mu = GroupHom(T2, G2, lG[X.mu.images[iT.images]], check=False)
    act = lT[X.action.act[np.ix_(iG.images, iT.images)]]
    Y = make_crossed_module(T2, G2, mu, GroupAction(G2, T2, act))
    return Y, make_xmod_morphism(Y, X, iT, iG)


def is_normal_subxmod(X: CrossedModule, subT: Iterable[int], subG: Iterable[int]) -> bool:
    """Normality of ``(subT, subG)`` in ``X``.

    Requires ``subG`` normal in ``G``, ``subT`` normal in ``T``,
    ``mu(subT) ⊆ subG``, ``g·a ∈ subT`` for ``g ∈ G, a ∈ subT`` and
    ``(b·t) t^-1 ∈ subT`` for ``b ∈ subG, t ∈ T``.
    """
    subT, subG = set(subT), set(subG)
    if not is_subgroup(X.T, subT) or not is_subgroup(X.G, subG):
        raise ArgumentError("subT and subG must be subgroups")
    if not is_normal(X.G, subG) or not is_normal(X.T, subT):
        return False
    if any(X.mu(t) not in subG for t in subT):
        return False
    if any(X.act(g, a) not in subT for g in range(X.G.order) for a in subT):
        return False
    T = X.T
    return all(T.mul(X.act(b, t), T.inv(t)) in subT for b in subG for t in range(T.order))


def kernel_xmod(m: XModMorphism):
    """``(ker f, ker h)`` as a crossed module with its inclusion."""
    return sub_xmod(m.source, kernel(m.f), kernel(m.h))


def image_xmod(m: XModMorphism):
    return sub_xmod(m.target, image(m.f), image(m.h))


def quotient_xmod(X: CrossedModule, subT: Iterable[int], subG: Iterable[int]):
    """``X / (subT, subG)`` with induced ``mu`` and action; returns ``(Q, projection)``."""
    subT, subG = tuple(sorted(set(subT))), tuple(sorted(set(subG)))
    if not is_normal_subxmod(X, subT, subG):
        raise NormalityError("not a normal sub-crossed module")
    QT, pT = quotient(X.T, subT)
    QG, pG = quotient(X.G, subG)
    rT = np.array(QT.representatives, dtype=np.int64)
    rG = np.array(QG.representatives, dtype=np.int64)
    mu = GroupHom(QT, QG, pG.images[X.mu.images[rT]])
    act = pT.images[X.action.act[np.ix_(rG, rT)]]
    full = pT.images[X.action.act]                    # every representative pair
    if not np.array_equal(full, act[pG.images[:, None], pT.images[None, :]]):
        raise NormalityError("induced action is not well defined")
    Q = make_crossed_module(QT, QG, mu, make_action(QG, QT, act))
    return Q, make_xmod_morphism(X, Q, pT, pG)


def is_abelian_xmod(X: CrossedModule) -> bool:
    if not (X.T.is_abelian() and X.G.is_abelian()):
        return False
    return bool((X.action.act == np.arange(X.T.order)[None, :]).all())


def xmod_isomorphism(X: CrossedModule, Y: CrossedModule) -> Optional[XModMorphism]:
    """First isomorphism ``X -> Y`` found by search over ``Iso(G) x Iso(T)``."""
    if X.orders != Y.orders:
        return None
    T_isos = list(isomorphisms(X.T, Y.T))
    if not T_isos:
        return None
    for phi in isomorphisms(X.G, Y.G):
        for alpha in T_isos:
            if not np.array_equal(Y.mu.images[alpha.images], phi.images[X.mu.images]):
                continue
            lhs = alpha.images[X.action.act]
            rhs = Y.action.act[phi.images[:, None], alpha.images[None, :]]
            if np.array_equal(lhs, rhs):
                return XModMorphism(X, Y, alpha, phi)
    return None
