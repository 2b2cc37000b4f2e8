"""Abelianization over a point ``(M, 1, 0)`` and the three-term exact sequence.

An extension here is ``(N, G, nu) >-> (T, G, mu) ->> (M, 1, 0)`` given by a
surjection ``f: T -> M`` onto an abelian group with ``f(g·t) = f(t)``.
With ``J = [G, N][T, T]`` (``[G, N]`` generated by ``g·n n^-1``):

* mid   = ``(T/J, G_ab, mu_bar)`` with ``eps'(m)[g] = [t] - [g·t]``;
* left  = ``(N/[G,N], G_ab, nu_bar)`` with ``eps''(m)[g] = [t (g·t)^-1]``;
* maps  ``u[n] = [n]`` and ``f_bar[t] = f(t)``.

The mid object is an ``(M, 1, 0)``-module only when ``G_ab`` acts trivially
on ``T/J``. When it does not, :func:`abelianize_over_point` raises
:class:`HypothesisError`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .act import (
    XModAction,
    XModModule,
    actor,
    make_xmod_action,
    module_check,
    module_hom_check,
    resolve_enum_bound,
)
from .cat1 import Cat1Group, cm_to_cat1, is_cat1_morphism, make_cat1
from .errors import (
    ArgumentError,
    AxiomError,
    CrossmodError,
    HypothesisError,
    InvariantViolation,
    NotSurjectiveError,
    SizeLimitError,
)
from .groups import (
    GroupHom,
    abelianization,
    derived_subgroup,
    homomorphisms,
    image,
    is_normal,
    kernel,
    subgroup_closure,
    zero_hom,
)
from .xmod import (
    CrossedModule,
    XModMorphism,
    is_abelian_xmod,
    make_xmod_morphism,
    point_xmod,
    quotient_xmod,
    sub_xmod,
)


@dataclass(frozen=True, eq=False)
class XModExtension:
    kernel: CrossedModule
    total: CrossedModule
    quotient: CrossedModule
    incl: XModMorphism
    proj: XModMorphism

    @property
    def f(self) -> GroupHom:
        return self.proj.f


def make_extension(total: CrossedModule, f: GroupHom,
                   quotient_: Optional[CrossedModule] = None) -> XModExtension:
    """Extension of ``(M, 1, 0)`` determined by a surjection ``f: T -> M``."""
    X = total
    if f.source != X.T:
        raise ArgumentError("f must be defined on T")
    M = f.target
    if not M.is_abelian():
        raise ArgumentError("M must be abelian")
    if not f.is_surjective():
        raise NotSurjectiveError("f is not surjective")
    Q = quotient_ if quotient_ is not None else point_xmod(M)
    if Q.T != M or Q.G.order != 1:
        raise ArgumentError("quotient must be (M, 1, 0)")
    proj = make_xmod_morphism(X, Q, f, zero_hom(X.G, Q.G))
    K, incl = sub_xmod(X, kernel(f), range(X.G.order))
    return XModExtension(K, X, Q, incl, proj)


def action_commutator(X: CrossedModule, N) -> tuple:
    """``[G, N]``: the subgroup generated by ``g·n n^-1``; asserted normal in ``T``."""
    T = X.T
    gens = {T.mul(X.act(g, n), T.inv(n)) for g in range(X.G.order) for n in N}
    S = subgroup_closure(T, gens)
    if not is_normal(T, S):
        raise InvariantViolation("[G,N] is not normal in T")
    return S


def j_subgroup(E: XModExtension) -> tuple:
    X = E.total
    N = image(E.incl.f)
    GN = action_commutator(X, N)
    return subgroup_closure(X.T, set(GN) | set(derived_subgroup(X.T)))


def _preimages(f: GroupHom) -> list:
    out = [[] for _ in range(f.target.order)]
    for t, m in enumerate(f.images):
        out[int(m)].append(t)
    return out


@dataclass(frozen=True, eq=False)
class PointModule:
    """A module over ``(M, 1, 0)`` with the projection it came from."""

    module: XModModule
    proj: Optional[XModMorphism] = None

    @property
    def coeff(self) -> CrossedModule:
        return self.module.coeff

    @property
    def eps(self) -> np.ndarray:
        return self.module.action.eps


def _eps_table(E: XModExtension, Q: CrossedModule, pT: GroupHom, pG: GroupHom, rule) -> np.ndarray:
    """``eps[m, [g]] = rule(t, g)`` checked constant over all ``t in f^-1(m)`` and ``g`` in the class."""
    X = E.total
    pre = _preimages(E.f)
    eps = np.full((E.quotient.T.order, Q.G.order), -1, dtype=np.int64)
    for m, ts in enumerate(pre):
        for t in ts:
            for g in range(X.G.order):
                v = int(pT(rule(t, g)))
                cell = eps[m, pG(g)]
                if cell == -1:
                    eps[m, pG(g)] = v
                elif cell != v:
                    raise InvariantViolation(f"action on classes ill-defined at m={m}, t={t}, g={g}")
    return eps


def abelianize_over_point(E: XModExtension, act_mid=None):
    """``(T/J, G_ab, mu_bar)`` with its ``eps'`` module structure and the projection.

    Returns ``(mid_module, proj)``; ``mid_module`` is a validated module over
    ``E.quotient``.
    """
    X = E.total
    T = X.T
    J = j_subgroup(E)
    DG = derived_subgroup(X.G)
    mid, proj = quotient_xmod(X, J, DG)
    if not is_abelian_xmod(mid):
        raise HypothesisError("G_ab acts nontrivially on T/J: the abelianization is not a module",
                              witness=_nontrivial_action_witness(mid))
    eps = _eps_table(E, mid, proj.f, proj.h,
                     lambda t, g: T.mul(t, T.inv(X.act(g, t))))
    action = make_xmod_action(E.quotient, mid, eps)
    module = module_check(E.quotient, mid, action, act_mid)
    _check_theta_sigma_identity(action, module)
    return PointModule(module, proj), proj


def _nontrivial_action_witness(Y):
    bad = np.argwhere(Y.action.act != np.arange(Y.T.order)[None, :])
    return tuple(int(v) for v in bad[0]) if len(bad) else None


def _check_theta_sigma_identity(action: XModAction, module: XModModule):
    """``(theta, sigma) eps = id``: each ``eps(m)`` acts as the identity pair."""
    Y = action.acted
    idT, idG = np.arange(Y.T.order), np.arange(Y.G.order)
    for m in range(action.acting.T.order):
        d = action.eps[m]
        th = Y.T.table[d[Y.mu.images], idT]
        sg = Y.G.table[Y.mu.images[d], idG]
        if not (np.array_equal(th, idT) and np.array_equal(sg, idG)):
            raise InvariantViolation(f"(theta, sigma) eps(m) != id at m={m}")


def theta_sigma_identity_holds(pm: PointModule) -> bool:
    try:
        _check_theta_sigma_identity(pm.module.action, pm.module)
    except InvariantViolation:
        return False
    return True


def left_module(E: XModExtension):
    """``(N/[G,N], G_ab, nu_bar)`` with ``eps''(m)[g] = [t (g·t)^-1]``."""
    X, K = E.total, E.kernel
    T = X.T
    inc = E.incl.f.images
    back = np.full(T.order, -1, dtype=np.int64)
    back[inc] = np.arange(K.T.order)
    GN_T = action_commutator(X, inc.tolist())
    GN = [int(back[x]) for x in GN_T]
    left, proj = quotient_xmod(K, GN, derived_subgroup(K.G))
    if not is_abelian_xmod(left):
        raise InvariantViolation("N/[G,N] with G_ab is not an abelian crossed module")

    def rule(t, g):
        n = T.mul(t, T.inv(X.act(g, t)))
        if back[n] < 0:
            raise InvariantViolation("t (g·t)^-1 is not in N")
        return int(back[n])

    eps = _eps_table(E, left, proj.f, proj.h, rule)
    action = make_xmod_action(E.quotient, left, eps)
    return PointModule(module_check(E.quotient, left, action), proj), proj


@dataclass(frozen=True)
class CommutatorAction:
    abelianized: Cat1Group          # ((N ⋊ G)_ab, s0_bar, s1_bar)
    left: Cat1Group                 # (N/[G,N] ⋊ G_ab, u0, u1)
    phi: GroupHom                   # left -> abelianized
    action: np.ndarray              # [m, x] on the abelianized group


def commutator_action_on_quotient(E: XModExtension, left: Optional[PointModule] = None
                                  ) -> CommutatorAction:
    """Action of ``M`` on ``(N ⋊ G)_ab`` by ``m·[(n,g)] = [(t n (g·t)^-1, g)]``.

    Also checks that ``phi([n],[g]) = [(n,g)]`` is an isomorphism of
    cat¹-groups and that, transported along ``phi``, the action agrees with
    the ``eps''`` module structure.
    """
    X, K = E.total, E.kernel
    if left is None:
        left, _ = left_module(E)
    lproj = left.proj
    CK, SK = cm_to_cat1(K)
    Q, pq, _ = abelianization(CK.G)
    reps = np.array(Q.representatives, dtype=np.int64)
    s0 = GroupHom(Q, Q, pq.images[CK.d0.images[reps]])
    s1 = GroupHom(Q, Q, pq.images[CK.d1.images[reps]])
    for s, d in ((s0, CK.d0), (s1, CK.d1)):
        if not np.array_equal(s.images[pq.images], pq.images[d.images]):
            raise InvariantViolation("d_i does not descend to the abelianization")
    C_ab = make_cat1(Q, s0, s1)
    L = left.coeff
    C_left, SL = cm_to_cat1(L)
    nL, nGab = L.T.order, L.G.order
    repT = np.array(L.T.representatives, dtype=np.int64)
    repG = np.array(L.G.representatives, dtype=np.int64)
    img = np.empty(C_left.G.order, dtype=np.int64)
    for a in range(nL):
        for b in range(nGab):
            img[SL.pair(a, b)] = pq(SK.pair(int(repT[a]), int(repG[b])))
    # well defined: every representative pair lands in the same class
    for n in range(K.T.order):
        for g in range(K.G.order):
            if pq(SK.pair(n, g)) != img[SL.pair(lproj.f(n), lproj.h(g))]:
                raise InvariantViolation("phi is not well defined on classes")
    try:
        phi = GroupHom(C_left.G, Q, img)
    except CrossmodError as exc:
        raise InvariantViolation(f"phi is not a homomorphism: {exc}") from exc
    if not (phi.is_injective() and phi.is_surjective() and is_cat1_morphism(C_left, C_ab, phi)):
        raise InvariantViolation("phi is not an isomorphism of cat1-groups")
    T = X.T
    inc = E.incl.f.images
    back = np.full(T.order, -1, dtype=np.int64)
    back[inc] = np.arange(K.T.order)
    pre = _preimages(E.f)
    M = E.quotient.T
    act = np.full((M.order, Q.order), -1, dtype=np.int64)
    for m in range(M.order):
        for t in pre[m]:
            for n in range(K.T.order):
                for g in range(K.G.order):
                    x = pq(SK.pair(n, g))
                    nn = int(back[T.mul(T.mul(t, int(inc[n])), T.inv(X.act(g, t)))])
                    v = pq(SK.pair(nn, g))
                    if act[m, x] == -1:
                        act[m, x] = v
                    elif act[m, x] != v:
                        raise InvariantViolation("m·[(n,g)] is not well defined")
    eps = left.eps
    for m in range(M.order):
        for a in range(nL):
            for b in range(nGab):
                want = SL.pair(L.T.mul(a, int(eps[m, b])), b)
                if act[m, img[SL.pair(a, b)]] != img[want]:
                    raise InvariantViolation("transported action differs from the eps'' structure")
    return CommutatorAction(C_ab, C_left, phi, act)


# ---------------------------------------------------------------------------
# Derivations into a point module and the bijection
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DerivationPair:
    D1: np.ndarray      # T -> A
    D2: np.ndarray      # G -> B

    def key(self) -> tuple:
        return tuple(self.D1.tolist()), tuple(self.D2.tolist())


def _check_point_module(module: XModModule, f: GroupHom):
    if module.base.G.order != 1 or module.base.T != f.target:
        raise ArgumentError("module must be over (M, 1, 0) with M the target of f")


def _homs(G, H, enum_bound):
    enum_bound = resolve_enum_bound(enum_bound)
    if H.order ** len(G.generators) > enum_bound:
        raise SizeLimitError(f"{H.order}^{len(G.generators)} candidate maps exceed bound {enum_bound}")
    return list(homomorphisms(G, H))


def derivation_pairs(base: CrossedModule, module: XModModule, f: GroupHom,
                     enum_bound: Optional[int] = None) -> list:
    """All ``(D1, D2)`` with ``D2 mu = delta D1`` and ``D1(g·t) = D1(t) - eps(f(t))(D2(g))``.

    ``T`` acts on ``A`` and ``G`` on ``B`` trivially, so ``D1`` and ``D2``
    range over homomorphisms.
    """
    _check_point_module(module, f)
    X, Y, eps = base, module.coeff, module.action.eps
    A, B = Y.T, Y.G
    out = []
    H2 = _homs(X.G, B, enum_bound)
    for D1 in _homs(X.T, A, enum_bound):
        d1 = D1.images
        for D2 in H2:
            d2 = D2.images
            if not np.array_equal(d2[X.mu.images], Y.mu.images[d1]):
                continue
            lhs = d1[X.action.act]                                   # [g, t]
            e = eps[f.images[None, :], d2[:, None]]                  # eps(f(t))(D2(g))
            rhs = A.table[d1[None, :], A.inverse[e]]
            if np.array_equal(lhs, rhs):
                out.append(DerivationPair(d1, d2))
    return out


@dataclass(frozen=True)
class DerivationBijection:
    pairs: list
    module_homs: list
    phi: dict
    psi: dict


def module_homs(source: XModModule, target: XModModule,
                enum_bound: Optional[int] = None) -> list:
    """All module morphisms ``(r, s)``, as validated :class:`ModuleMorphism` objects."""
    Y1, Y2 = source.coeff, target.coeff
    out = []
    Hs = _homs(Y1.G, Y2.G, enum_bound)
    for r in _homs(Y1.T, Y2.T, enum_bound):
        for s in Hs:
            try:
                out.append(module_hom_check(source, target, r, s))
            except AxiomError:
                pass
    return out


def derivation_bijection(E: XModExtension, module: XModModule,
                         enum_bound: Optional[int] = None) -> DerivationBijection:
    """Match derivation pairs of ``E.total`` with module maps out of the abelianization."""
    mid, proj = abelianize_over_point(E)
    pairs = derivation_pairs(E.total, module, E.f, enum_bound)
    homs = module_homs(mid.module, module, enum_bound)
    repT = np.array(mid.coeff.T.representatives, dtype=np.int64)
    repG = np.array(mid.coeff.G.representatives, dtype=np.int64)
    phi, psi = {}, {}
    hom_keys = {(tuple(h.r.images.tolist()), tuple(h.s.images.tolist())) for h in homs}
    for p in pairs:
        nu1, nu2 = p.D1[repT], p.D2[repG]
        if not (np.array_equal(nu1[proj.f.images], p.D1) and np.array_equal(nu2[proj.h.images], p.D2)):
            raise InvariantViolation("derivation pair does not factor through (T/J, G_ab)")
        k = (tuple(nu1.tolist()), tuple(nu2.tolist()))
        if k not in hom_keys:
            raise InvariantViolation("image of a derivation pair is not a module morphism")
        phi[p.key()] = k
    pair_keys = {p.key() for p in pairs}
    for h in homs:
        D1, D2 = h.r.images[proj.f.images], h.s.images[proj.h.images]
        k = (tuple(D1.tolist()), tuple(D2.tolist()))
        if k not in pair_keys:
            raise InvariantViolation("pullback of a module morphism is not a derivation pair")
        psi[(tuple(h.r.images.tolist()), tuple(h.s.images.tolist()))] = k
    if any(psi[phi[k]] != k for k in phi) or any(phi[psi[k]] != k for k in psi):
        raise InvariantViolation("phi and psi are not mutually inverse")
    return DerivationBijection(pairs, homs, phi, psi)


def point_modules(M_xmod: CrossedModule, Y: CrossedModule) -> list:
    """Every module structure of the abelian crossed module ``Y`` over ``(M, 1, 0)``."""
    if not is_abelian_xmod(Y):
        return []
    Ac = actor(Y)
    W = Ac.whitehead
    ok = [i for i in range(len(W.units)) if Ac.delta.images[i] == 0]
    sub = set(ok)
    out = []
    for h in homomorphisms(M_xmod.T, W.group):
        if not set(h.images.tolist()) <= sub:
            continue
        eps = np.array([W.units[int(i)].images for i in h.images], dtype=np.int64)
        eps = eps.reshape(M_xmod.T.order, Y.G.order)
        action = make_xmod_action(M_xmod, Y, eps)
        out.append(module_check(M_xmod, Y, action, Ac))
    return out


# ---------------------------------------------------------------------------
# The three-term sequence
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ThreeTermSequence:
    extension: XModExtension
    left: PointModule
    mid: PointModule
    right: XModModule
    u_map: XModMorphism
    f_map: XModMorphism


def three_term(E: XModExtension) -> ThreeTermSequence:
    K = E.kernel
    left, lproj = left_module(E)
    mid, mproj = abelianize_over_point(E)
    L, Md = left.coeff, mid.coeff
    repN = np.array(L.T.representatives, dtype=np.int64)
    u_img = mproj.f.images[E.incl.f.images[repN]]
    for n in range(K.T.order):
        if u_img[lproj.f(n)] != mproj.f(int(E.incl.f(n))):
            raise InvariantViolation("u is not well defined")
    repGab = np.array(L.G.representatives, dtype=np.int64)
    id_img = mproj.h.images[repGab]
    try:
        u = GroupHom(L.T, Md.T, u_img)
        idm = GroupHom(L.G, Md.G, id_img)
        u_map = make_xmod_morphism(L, Md, u, idm)
        module_hom_check(left.module, mid.module, u, idm)
    except CrossmodError as exc:
        raise InvariantViolation(f"(u, id) is not a module morphism: {exc}") from exc
    Q = E.quotient
    repT = np.array(Md.T.representatives, dtype=np.int64)
    fbar = E.f.images[repT]
    right_action = make_xmod_action(Q, Q, np.zeros((Q.T.order, 1), dtype=np.int64))
    right = module_check(Q, Q, right_action)
    try:
        fb = GroupHom(Md.T, Q.T, fbar)
        zero = zero_hom(Md.G, Q.G)
        f_map = make_xmod_morphism(Md, Q, fb, zero)
        module_hom_check(mid.module, right, fb, zero)
    except CrossmodError as exc:
        raise InvariantViolation(f"(f_bar, 0) is not a module morphism: {exc}") from exc
    return ThreeTermSequence(E, left, mid, right, u_map, f_map)


@dataclass(frozen=True)
class ExactnessReport:
    right_surjective: bool
    middle_exact: bool
    u_injective: bool

    def to_json(self) -> dict:
        return {"right_surjective": self.right_surjective,
                "middle_exact": self.middle_exact,
                "u_injective": self.u_injective}


def exactness_report(S: ThreeTermSequence) -> ExactnessReport:
    u, f = S.u_map, S.f_map
    right = f.f.is_surjective() and f.h.is_surjective()
    middle = image(u.f) == kernel(f.f) and image(u.h) == kernel(f.h)
    inj = u.f.is_injective() and u.h.is_injective()
    return ExactnessReport(bool(right), bool(middle), bool(inj))
