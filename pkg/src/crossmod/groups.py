"""Finite groups stored as full multiplication tables.

Elements are the integers ``0..order-1`` and the identity is always ``0``.
Subgroups are plain sorted tuples of element indices; use :func:`as_group`
to promote one to a :class:`FiniteGroup` with its induced table.
"""
from __future__ import annotations

import itertools
import os
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import (
    ArgumentError,
    NormalityError,
    NotAHomomorphism,
    SizeLimitError,
)

DEFAULT_ORDER_BOUND = 512

Subset = tuple  # sorted tuple of element indices


def order_bound(bound: Optional[int] = None) -> int:
    if bound is not None:
        return bound
    env = os.environ.get("XMOD_ORDER_BOUND")
    return int(env) if env else DEFAULT_ORDER_BOUND


def _frozen(a) -> np.ndarray:
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``table[x, y]`` is the index of ``x*y``. ``generators`` is an optional
    tuple of element indices used by BFS-style constructions; when absent a
    greedy generating set is computed on demand.
    """

    def __init__(self, table, labels=None, generators=None, name=None, check=True):
        table = _frozen(table)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise ArgumentError("group table must be a non-empty square array")
        n = table.shape[0]
        if check:
            _check_group_table(table)
        inverse = np.empty(n, dtype=np.int64)
        rows, cols = np.nonzero(table == 0)
        inverse[rows] = cols
        inverse.setflags(write=False)
        self.table = table
        self.inverse = inverse
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        self._generators = tuple(int(g) for g in generators) if generators is not None else None
        self._orders = None

    # -- basic structure ------------------------------------------------
    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self):
        return self.order

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def mul(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``"""
        return int(self.table[self.table[g, x], self.inverse[g]])

    def commutator(self, a: int, b: int) -> int:
        """``a b a^-1 b^-1``"""
        t = self.table
        return int(t[t[t[a, b], self.inverse[a]], self.inverse[b]])

    def product(self, xs: Iterable[int]) -> int:
        acc = 0
        for x in xs:
            acc = int(self.table[acc, x])
        return acc

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        acc = 0
        base = x
        while k:
            if k & 1:
                acc = int(self.table[acc, base])
            base = int(self.table[base, base])
            k >>= 1
        return acc

    def element_orders(self) -> np.ndarray:
        if self._orders is None:
            n = self.order
            orders = np.zeros(n, dtype=np.int64)
            cur = np.arange(n)
            for k in range(1, n + 1):
                done = (cur == 0) & (orders == 0)
                orders[done] = k
                if orders.all():
                    break
                cur = self.table[cur, np.arange(n)]
            orders.setflags(write=False)
            self._orders = orders
        return self._orders

    def element_order(self, x: int) -> int:
        return int(self.element_orders()[x])

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return str(x)

    @property
    def generators(self) -> tuple:
        if self._generators is None:
            self._generators = small_generating_set(self)
        return self._generators

    # -- comparison -----------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self is other or np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.order, self.table.tobytes()))

    def __repr__(self):
        name = f" {self.name}" if self.name else ""
        return f"<FiniteGroup{name} of order {self.order}>"


def _check_group_table(table: np.ndarray) -> None:
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise ArgumentError("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
        raise ArgumentError("element 0 is not a two-sided identity")
    srt = np.sort(table, axis=1)
    if not (srt == ar).all() or not (np.sort(table, axis=0) == ar[:, None]).all():
        raise ArgumentError("table is not a Latin square")
    for a in range(n):
        # (a*b)*c == a*(b*c) for all b, c
        if not np.array_equal(table[table[a]], table[a][table]):
            bad = np.argwhere(table[table[a]] != table[a][table])[0]
            raise ArgumentError(f"associativity fails at {(a, int(bad[0]), int(bad[1]))}")


def small_generating_set(G: FiniteGroup) -> tuple:
    """Greedy generating set, preferring elements of large order, then low index."""
    orders = G.element_orders()
    cand = sorted(range(1, G.order), key=lambda x: (-int(orders[x]), x))
    gens: list = []
    H = {0}
    for x in cand:
        if x not in H:
            gens.append(x)
            H = set(subgroup_closure(G, gens))
            if len(H) == G.order:
                break
    return tuple(gens)


# ---------------------------------------------------------------------------
# Homomorphisms and actions
# ---------------------------------------------------------------------------


class GroupHom:
    """A validated homomorphism ``source -> target``; ``images[x]`` is the image of ``x``."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, images, check=True):
        images = _frozen(images)
        if images.shape != (source.order,):
            raise ArgumentError("image array has wrong length")
        if images.min(initial=0) < 0 or images.max(initial=0) >= target.order:
            raise ArgumentError("image out of range")
        self.source = source
        self.target = target
        self.images = images
        if check:
            _check_hom(source, target, images)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self ∘ inner``"""
        if inner.target != self.source:
            raise ArgumentError("composition of incompatible homomorphisms")
        return GroupHom(inner.source, self.target, self.images[inner.images], check=False)

    def is_injective(self) -> bool:
        return len(np.unique(self.images)) == self.source.order

    def is_surjective(self) -> bool:
        return len(np.unique(self.images)) == self.target.order

    def __eq__(self, other):
        if not isinstance(other, GroupHom):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and np.array_equal(self.images, other.images))

    def __hash__(self):
        return hash(self.images.tobytes())

    def __repr__(self):
        return f"<GroupHom {self.source.order} -> {self.target.order}>"


def _check_hom(source, target, images):
    lhs = images[source.table]
    rhs = target.table[images[:, None], images[None, :]]
    if not np.array_equal(lhs, rhs):
        x, y = np.argwhere(lhs != rhs)[0]
        raise NotAHomomorphism(
            f"h({x}*{y}) != h({x})*h({y})", witness=(int(x), int(y)))


def identity_hom(G: FiniteGroup) -> GroupHom:
    return GroupHom(G, G, np.arange(G.order), check=False)


def zero_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, np.zeros(source.order, dtype=np.int64), check=False)


def hom_from_images(source, target, images) -> GroupHom:
    """Validate a full image array as a homomorphism."""
    return GroupHom(source, target, images)


def _extend_on_generators(source, target, gens, gen_images):
    """BFS-extend a generator assignment; returns (images with -1 for unreached, conflict)."""
    images = np.full(source.order, -1, dtype=np.int64)
    images[0] = 0
    queue = deque([0])
    st, tt = source.table, target.table
    while queue:
        x = queue.popleft()
        ix = images[x]
        for g, ig in zip(gens, gen_images):
            y = st[x, g]
            v = tt[ix, ig]
            if images[y] == -1:
                images[y] = v
                queue.append(y)
            elif images[y] != v:
                return images, (int(x), int(g))
    return images, None


def make_hom(source: FiniteGroup, target: FiniteGroup, generator_images: dict) -> GroupHom:
    """Extend ``{source element: target element}`` to a homomorphism.

    The keys must generate ``source``. Raises :class:`NotAHomomorphism`
    when some relation among the generators is not respected.
    """
    gens = list(generator_images)
    imgs = [generator_images[g] for g in gens]
    for g, v in zip(gens, imgs):
        if not (0 <= g < source.order and 0 <= v < target.order):
            raise ArgumentError("generator image out of range")
    images, conflict = _extend_on_generators(source, target, gens, imgs)
    if conflict is not None:
        raise NotAHomomorphism("generator images violate a relation", witness=conflict)
    if (images < 0).any():
        raise ArgumentError("generator_images keys do not generate the source group")
    return GroupHom(source, target, images)


def kernel(h: GroupHom) -> Subset:
    return tuple(int(x) for x in np.flatnonzero(h.images == 0))


def image(h: GroupHom) -> Subset:
    return tuple(int(x) for x in np.unique(h.images))


@dataclass(frozen=True, eq=False)
class GroupAction:
    """Left action of ``actor`` on ``space`` by automorphisms; ``act[g, t]`` is ``g·t``."""

    actor: FiniteGroup
    space: FiniteGroup
    act: np.ndarray

    def __call__(self, g: int, t: int) -> int:
        return int(self.act[g, t])


def make_action(actor: FiniteGroup, space: FiniteGroup, act) -> GroupAction:
    act = _frozen(act)
    if act.shape != (actor.order, space.order):
        raise ArgumentError("action array has wrong shape")
    if act.min() < 0 or act.max() >= space.order:
        raise ArgumentError("action value out of range")
    ar = np.arange(space.order)
    if not np.array_equal(act[0], ar):
        raise ArgumentError("identity does not act trivially", witness=(0,))
    tt = space.table
    for g in range(actor.order):
        row = act[g]
        if not np.array_equal(np.sort(row), ar):
            raise ArgumentError(f"element {g} does not act bijectively", witness=(g,))
        if not np.array_equal(row[tt], tt[row[:, None], row[None, :]]):
            raise ArgumentError(f"element {g} does not act by a homomorphism", witness=(g,))
    # act(gh, t) == act(g, act(h, t))
    lhs = act[actor.table]                       # [g, h, t]
    rhs = act[np.arange(actor.order)[:, None, None], act[None, :, :]]
    if not np.array_equal(lhs, rhs):
        g, h, t = np.argwhere(lhs != rhs)[0]
        raise ArgumentError("action is not compatible with multiplication",
                            witness=(int(g), int(h), int(t)))
    return GroupAction(actor, space, act)


def trivial_action(actor: FiniteGroup, space: FiniteGroup) -> GroupAction:
    act = np.tile(np.arange(space.order), (actor.order, 1))
    return GroupAction(actor, space, _frozen(act))


def conjugation_action(G: FiniteGroup) -> GroupAction:
    t = G.table
    act = t[t, G.inverse[:, None]]   # act[g, x] = (g x) g^-1
    return GroupAction(G, G, _frozen(act))


def action_via(action: GroupAction, h: GroupHom) -> GroupAction:
    """Pull back an action of ``h.target`` to one of ``h.source``."""
    return GroupAction(h.source, action.space, _frozen(action.act[h.images]))


def action_from_generators(actor: FiniteGroup, space: FiniteGroup, auts: dict) -> GroupAction:
    """Complete an action from automorphisms of ``space`` given per generator of ``actor``.

    ``auts`` maps an actor element to a full image array of ``space``.
    """
    perm = {g: GroupHom(space, space, a) for g, a in auts.items()}
    for g, p in perm.items():
        if not p.is_injective():
            raise ArgumentError(f"generator {g} does not act bijectively")
    act = np.full((actor.order, space.order), -1, dtype=np.int64)
    act[0] = np.arange(space.order)
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for g, p in perm.items():
            y = actor.table[x, g]
            row = act[x][p.images]
            if act[y, 0] == -1:
                act[y] = row
                queue.append(y)
            elif not np.array_equal(act[y], row):
                raise NotAHomomorphism("generator automorphisms violate a relation", witness=(int(x), g))
    if (act < 0).any():
        raise ArgumentError("action generators do not generate the acting group")
    return make_action(actor, space, act)


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def _cycle_label(perm: Sequence[int]) -> str:
    seen = set()
    parts = []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc = []
        j = i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = perm[j]
        parts.append("(" + " ".join(cyc) + ")")
    return "".join(parts) or "()"


def group_from_permutations(degree: int, generators: Sequence[Sequence[int]],
                            order_bound_: Optional[int] = None, name=None) -> FiniteGroup:
    """Close 1-based permutation image arrays under composition.

    Elements are numbered in BFS order from the identity, applying the
    generators in input order. Products compose right-to-left:
    ``(p*q)(i) = p(q(i))``.
    """
    bound = order_bound(order_bound_)
    if degree < 1:
        raise ArgumentError("degree must be positive")
    gens = []
    for g in generators:
        g = tuple(int(v) - 1 for v in g)
        if len(g) != degree or sorted(g) != list(range(degree)):
            raise ArgumentError(f"not a permutation of 1..{degree}: {[v + 1 for v in g]}")
        gens.append(g)
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = tuple(x[g[i]] for i in range(degree))
            if y not in index:
                if len(elems) >= bound:
                    raise SizeLimitError(f"closure exceeds order bound {bound}")
                index[y] = len(elems)
                elems.append(y)
                queue.append(y)
    P = np.array(elems, dtype=np.int64).reshape(len(elems), degree)
    n = len(elems)
    table = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        comp = P[i][P]            # row j: P[i] ∘ P[j]
        table[i] = [index[tuple(r)] for r in comp.tolist()]
    gen_idx = tuple(dict.fromkeys(index[g] for g in gens if index[g] != 0))
    G = FiniteGroup(table, labels=[_cycle_label(p) for p in elems],
                    generators=gen_idx, name=name, check=False)
    G.permutations = elems
    return G


def abelian_group(invariant_factors: Sequence[int], name=None) -> FiniteGroup:
    """Direct sum of cyclic groups; elements are residue tuples in lexicographic order."""
    factors = [int(n) for n in invariant_factors]
    if any(n < 2 for n in factors):
        raise ArgumentError("invariant factors must be >= 2")
    bound = order_bound()
    total = int(np.prod(factors, dtype=object)) if factors else 1
    if total > bound:
        raise SizeLimitError(f"group order {total} exceeds order bound {bound}")
    k = len(factors)
    if k == 0:
        return FiniteGroup([[0]], labels=["0"], generators=(), name=name or "1", check=False)
    coords = np.array(list(itertools.product(*(range(n) for n in factors))), dtype=np.int64)
    f = np.array(factors, dtype=np.int64)
    strides = np.array([int(np.prod(factors[i + 1:])) for i in range(k)], dtype=np.int64)
    table = ((coords[:, None, :] + coords[None, :, :]) % f) @ strides
    gens = tuple(int(strides[i]) for i in range(k))
    labels = ["(" + ",".join(map(str, c)) + ")" if k > 1 else str(c[0]) for c in coords.tolist()]
    G = FiniteGroup(table, labels=labels, generators=gens,
                    name=name or "+".join(f"Z/{n}" for n in factors), check=False)
    G.factors = tuple(factors)
    return G


def abelian_element(G: FiniteGroup, coords: Sequence[int]) -> int:
    """Index of a residue tuple in a group built by :func:`abelian_group`."""
    factors = G.factors
    idx = 0
    for c, n in zip(coords, factors):
        idx = idx * n + (int(c) % n)
    return idx


def trivial_group() -> FiniteGroup:
    return abelian_group([])


# ---------------------------------------------------------------------------
# Subgroups
# ---------------------------------------------------------------------------


def subgroup_closure(G: FiniteGroup, seed: Iterable[int]) -> Subset:
    seed = [int(s) for s in dict.fromkeys(seed) if s != 0]
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    frontier = [0]
    while frontier:
        nxt = np.unique(G.table[np.ix_(frontier, seed)]) if seed else np.array([], dtype=np.int64)
        new = nxt[~mask[nxt]]
        mask[new] = True
        frontier = list(new)
    return tuple(int(x) for x in np.flatnonzero(mask))


def _conjugate_closure(G: FiniteGroup, by: Sequence[int], seed: Iterable[int]) -> Subset:
    """Smallest subgroup containing ``seed`` and closed under conjugation by ``by``."""
    by = list(by)
    S = set(subgroup_closure(G, seed))
    while True:
        conj = {G.conj(g, s) for g in by for s in S}
        if conj <= S:
            return tuple(sorted(S))
        S = set(subgroup_closure(G, S | conj))


def normal_closure(G: FiniteGroup, seed: Iterable[int]) -> Subset:
    return _conjugate_closure(G, G.generators, seed)


def commutator_subgroup(G: FiniteGroup, A: Iterable[int], B: Iterable[int]) -> Subset:
    """``[A, B]``: normal closure of all ``a b a^-1 b^-1`` inside ``<A ∪ B>``."""
    A, B = list(A), list(B)
    ambient = subgroup_closure(G, A + B)
    comms = {G.commutator(a, b) for a in A for b in B}
    return _conjugate_closure(G, ambient, comms)


def derived_subgroup(G: FiniteGroup) -> Subset:
    return commutator_subgroup(G, G.elements(), G.elements())


def is_subgroup(G: FiniteGroup, S: Iterable[int]) -> bool:
    S = set(S)
    if 0 not in S:
        return False
    idx = np.array(sorted(S))
    prod = G.table[np.ix_(idx, idx)]
    return all(int(x) in S for x in np.unique(prod))


def is_normal(G: FiniteGroup, N: Iterable[int]) -> bool:
    N = set(N)
    if not is_subgroup(G, N):
        return False
    return all(G.conj(g, n) in N for g in G.generators for n in N)


def as_group(G: FiniteGroup, S: Iterable[int], name=None):
    """Promote a subgroup to a :class:`FiniteGroup`; returns ``(H, inclusion)``."""
    elems = sorted(set(int(s) for s in S))
    if not is_subgroup(G, elems):
        raise ArgumentError("subset is not a subgroup")
    lookup = np.full(G.order, -1, dtype=np.int64)
    lookup[elems] = np.arange(len(elems))
    idx = np.array(elems, dtype=np.int64)
    table = lookup[G.table[np.ix_(idx, idx)]]
    labels = [G.label(x) for x in elems]
    H = FiniteGroup(table, labels=labels, name=name, check=False)
    return H, GroupHom(H, G, idx, check=False)


def quotient(G: FiniteGroup, N: Iterable[int], name=None):
    """Quotient ``G/N`` with its projection. Cosets are ordered by minimal representative."""
    N = sorted(set(int(n) for n in N))
    if not is_normal(G, N):
        raise NormalityError("subgroup is not normal" if is_subgroup(G, N) else "not a subgroup")
    coset = np.full(G.order, -1, dtype=np.int64)
    reps = []
    nidx = np.array(N, dtype=np.int64)
    for x in range(G.order):
        if coset[x] == -1:
            coset[G.table[x, nidx]] = len(reps)
            reps.append(x)
    r = np.array(reps, dtype=np.int64)
    table = coset[G.table[np.ix_(r, r)]]
    labels = ["[" + G.label(x) + "]" for x in reps]
    Q = FiniteGroup(table, labels=labels, name=name, check=False)
    Q.representatives = tuple(reps)
    return Q, GroupHom(G, Q, coset, check=False)


def abelianization(G: FiniteGroup):
    """``(G_ab, projection, invariants)``."""
    Q, p = quotient(G, derived_subgroup(G))
    return Q, p, abelian_invariants(Q)


def abelian_invariants(G: FiniteGroup):
    """Invariant factors of a finite abelian group, read off from p-power torsion counts."""
    from .lattice import FGAbelianGroup

    if not G.is_abelian():
        raise ArgumentError("group is not abelian")
    n = G.order
    primes = []
    m, p = n, 2
    while m > 1:
        if m % p == 0:
            primes.append(p)
            while m % p == 0:
                m //= p
        p += 1
    elementary = []
    ar = np.arange(n)
    for p in primes:
        # sizes[i] = log_p |{x : p^i x = 0}|
        sizes = [0]
        cur = ar.copy()
        while True:
            nxt = np.zeros(n, dtype=np.int64)
            for _ in range(p):
                nxt = G.table[nxt, cur]
            cur = nxt
            cnt = int((cur == 0).sum())
            e = round(np.log(cnt) / np.log(p))
            sizes.append(e)
            if sizes[-1] == sizes[-2]:
                break
        at_least = [sizes[i] - sizes[i - 1] for i in range(1, len(sizes))] + [0]
        for i in range(len(at_least) - 1):
            exact = at_least[i] - at_least[i + 1]
            elementary += [p ** (i + 1)] * exact
    return FGAbelianGroup.from_torsion(elementary)


# ---------------------------------------------------------------------------
# Semidirect products
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Semidirect:
    """``space ⋊ actor`` on pairs ``(t, g)`` with index ``t*|actor| + g``."""

    group: FiniteGroup
    action: GroupAction
    space_in: GroupHom
    actor_in: GroupHom
    proj: GroupHom

    def pair(self, t: int, g: int) -> int:
        return t * self.action.actor.order + g

    def split(self, x: int) -> tuple:
        return divmod(int(x), self.action.actor.order)


def semidirect_product(action: GroupAction, order_bound_: Optional[int] = None, name=None) -> Semidirect:
    """Group on pairs with ``(t', g')(t, g) = (t'·(g'·t), g'g)``."""
    T, G = action.space, action.actor
    nT, nG = T.order, G.order
    n = nT * nG
    bound = order_bound(order_bound_)
    if n > bound:
        raise SizeLimitError(f"semidirect product of order {n} exceeds bound {bound}")
    t1 = np.arange(nT)[:, None, None, None]
    g1 = np.arange(nG)[None, :, None, None]
    t2 = np.arange(nT)[None, None, :, None]
    g2 = np.arange(nG)[None, None, None, :]
    tt = T.table[t1, action.act[g1, t2]]
    gg = G.table[g1, g2]
    table = (tt * nG + gg).reshape(n, n)
    labels = None
    if T.labels is not None or G.labels is not None:
        labels = [f"({T.label(t)},{G.label(g)})" for t in range(nT) for g in range(nG)]
    P = FiniteGroup(table, labels=labels, name=name, check=False)
    space_in = GroupHom(T, P, np.arange(nT) * nG, check=False)
    actor_in = GroupHom(G, P, np.arange(nG), check=False)
    proj = GroupHom(P, G, np.tile(np.arange(nG), nT), check=False)
    return Semidirect(P, action, space_in, actor_in, proj)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> Semidirect:
    return semidirect_product(trivial_action(B, A))


# ---------------------------------------------------------------------------
# Homomorphism search
# ---------------------------------------------------------------------------


def homomorphisms(G: FiniteGroup, H: FiniteGroup, injective=False,
                  bijective=False, gens=None) -> Iterator[GroupHom]:
    """All homomorphisms ``G -> H`` in lexicographic order of generator images.

    Backtracks over images of a generating set; each partial assignment is
    BFS-extended over the subgroup it generates and pruned on conflict.
    """
    if bijective:
        injective = True
        if G.order != H.order:
            return
    if injective and H.order % G.order:
        return
    gens = list(gens if gens is not None else G.generators)
    if not gens:
        yield GroupHom(G, H, np.zeros(G.order, dtype=np.int64), check=False)
        return
    og = G.element_orders()
    oh = H.element_orders()
    cands = []
    for g in gens:
        if injective:
            c = np.flatnonzero(oh == og[g])
        else:
            c = np.flatnonzero(og[g] % oh == 0)
        cands.append([int(v) for v in c])

    def rec(level, chosen):
        if level == len(gens):
            images, conflict = _extend_on_generators(G, H, gens, chosen)
            if conflict is None and not (images < 0).any():
                if injective and len(np.unique(images)) != G.order:
                    return
                yield GroupHom(G, H, images)
            return
        for v in cands[level]:
            trial = chosen + [v]
            images, conflict = _extend_on_generators(G, H, gens[:level + 1], trial)
            if conflict is not None:
                continue
            if injective:
                reached = images[images >= 0]
                if len(np.unique(reached)) != len(reached):
                    continue
            yield from rec(level + 1, trial)

    yield from rec(0, [])


def isomorphisms(G: FiniteGroup, H: FiniteGroup) -> Iterator[GroupHom]:
    if G.order != H.order:
        return
    if sorted(G.element_orders().tolist()) != sorted(H.element_orders().tolist()):
        return
    yield from homomorphisms(G, H, bijective=True)


def automorphisms(G: FiniteGroup) -> list:
    """Automorphisms of ``G`` with the identity first, the rest in search order."""
    auts = list(isomorphisms(G, G))
    ident = np.arange(G.order)
    auts.sort(key=lambda a: not np.array_equal(a.images, ident))
    return auts


def find_isomorphism(G: FiniteGroup, H: FiniteGroup,
                     accept: Optional[Callable[[GroupHom], bool]] = None) -> Optional[GroupHom]:
    for phi in isomorphisms(G, H):
        if accept is None or accept(phi):
            return phi
    return None


def induced_map(source_proj: GroupHom, target_proj: GroupHom, h: GroupHom) -> GroupHom:
    """Map ``Q1 -> Q2`` induced by ``h`` on quotients; raises if not well defined."""
    Q1, Q2 = source_proj.target, target_proj.target
    images = np.full(Q1.order, -1, dtype=np.int64)
    for x in range(source_proj.source.order):
        q = source_proj.images[x]
        v = target_proj.images[h.images[x]]
        if images[q] == -1:
            images[q] = v
        elif images[q] != v:
            raise ArgumentError("map is not well defined on cosets", witness=(x,))
    return GroupHom(Q1, Q2, images)


def group_from_elements(elements: Sequence, mul: Callable, name=None) -> FiniteGroup:
    """Cayley table of a closed, hashable element list; ``elements[0]`` must be the identity."""
    elements = list(elements)
    bound = order_bound()
    if len(elements) > bound:
        raise SizeLimitError(f"group order {len(elements)} exceeds order bound {bound}")
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise ArgumentError("repeated elements")
    try:
        table = [[index[mul(a, b)] for b in elements] for a in elements]
    except KeyError as exc:
        raise ArgumentError("element list is not closed under multiplication") from exc
    return FiniteGroup(table, labels=[str(e) for e in elements], name=name)


def all_subgroups(G: FiniteGroup) -> list:
    """Every subgroup as a sorted tuple, grown by adjoining one element at a time."""
    seen = {(0,)}
    frontier = [(0,)]
    while frontier:
        nxt = []
        for S in frontier:
            inside = set(S)
            for g in range(G.order):
                if g in inside:
                    continue
                H = subgroup_closure(G, list(S) + [g])
                if H not in seen:
                    seen.add(H)
                    nxt.append(H)
        frontier = nxt
    return sorted(seen, key=lambda S: (len(S), S))
