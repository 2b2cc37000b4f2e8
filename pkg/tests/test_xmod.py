import itertools

import pytest
from hypothesis import given, settings, strategies as st

from crossmod.catalog import aut_xmod, cyclic, dicyclic, dihedral, inversion_xmod, symmetric, xmod_catalog
from crossmod.errors import AxiomError
from crossmod.groups import (
    abelian_group,
    action_via,
    homomorphisms,
    identity_hom,
    make_hom,
    trivial_action,
    zero_hom,
)
from crossmod.xmod import (
    base_xmod,
    identity_morphism,
    identity_xmod,
    image_xmod,
    is_abelian_xmod,
    is_normal_subxmod,
    kernel_xmod,
    make_crossed_module,
    make_xmod_morphism,
    normal_inclusion_xmod,
    point_xmod,
    quotient_xmod,
    trivial_action_xmod,
    xmod_isomorphism,
)


def brute_force_axioms(T, G, mu, act):
    """Pure-Python check of both axioms, independent of the vectorised one."""
    for g in range(G.order):
        for t in range(T.order):
            lhs = mu(act[g][t])
            rhs = G.mul(G.mul(g, mu(t)), G.inv(g))
            if lhs != rhs:
                return False
    for t in range(T.order):
        for s in range(T.order):
            if act[mu(t)][s] != T.mul(T.mul(t, s), T.inv(t)):
                return False
    return True


def test_standard_constructions():
    S3 = symmetric(3)
    assert identity_xmod(S3).orders == (6, 6)
    assert point_xmod(cyclic(4)).orders == (4, 1)
    assert base_xmod(S3).orders == (1, 6)
    assert inversion_xmod(4).orders == (4, 2)
    A = aut_xmod(cyclic(3))
    assert A.G.order == 2


def test_axiom_failures_name_the_axiom():
    Z4, Z2 = cyclic(4), cyclic(2)
    inv = inversion_xmod(4).action
    with pytest.raises(AxiomError) as exc:
        make_crossed_module(Z4, Z2, make_hom(Z4, Z2, {1: 1}), inv)
    assert exc.value.axiom == "peiffer"
    # the nonabelian T with trivial action breaks Peiffer too
    S3 = symmetric(3)
    with pytest.raises(AxiomError) as exc:
        make_crossed_module(S3, S3, zero_hom(S3, S3), trivial_action(S3, S3))
    assert exc.value.axiom == "peiffer"
    # equivariance: mu = id with trivial action on a nonabelian group
    with pytest.raises(AxiomError) as exc:
        make_crossed_module(S3, S3, identity_hom(S3), trivial_action(S3, S3))
    assert exc.value.axiom == "equivariance"
    assert exc.value.witness is not None


def _candidates():
    groups = [cyclic(2), cyclic(3), cyclic(4), abelian_group([2, 2]), symmetric(3)]
    for T, G in itertools.product(groups, repeat=2):
        A = aut_xmod(T)
        for phi in list(homomorphisms(G, A.G))[:4]:
            action = action_via(A.action, phi)
            for mu in list(homomorphisms(T, G))[:4]:
                yield T, G, mu, action


def test_validator_matches_brute_force():
    seen = {True: 0, False: 0}
    for T, G, mu, action in _candidates():
        expected = brute_force_axioms(T, G, mu, action.act.tolist())
        try:
            make_crossed_module(T, G, mu, action)
            got = True
        except AxiomError:
            got = False
        assert got == expected
        seen[got] += 1
    assert seen[True] > 10 and seen[False] > 10


@pytest.mark.parametrize("X", xmod_catalog(), ids=lambda X: X.name or repr(X))
def test_catalog_consequences(X):
    # ker mu is central in T and G-invariant; im mu is normal in G
    T, G = X.T, X.G
    ker = [t for t in range(T.order) if X.mu(t) == 0]
    for k in ker:
        assert all(T.mul(k, t) == T.mul(t, k) for t in range(T.order))
        assert all(X.mu(X.act(g, k)) == 0 for g in range(G.order))
    im = {X.mu(t) for t in range(T.order)}
    assert all(G.mul(G.mul(g, x), G.inv(g)) in im for g in range(G.order) for x in im)
    assert brute_force_axioms(T, G, X.mu, X.action.act.tolist())


def test_kernel_image_quotient():
    X = identity_xmod(dihedral(4))
    m = identity_morphism(X)
    K, _ = kernel_xmod(m)
    assert K.orders == (1, 1)
    I, _ = image_xmod(m)
    assert I.orders == (8, 8)
    D4 = dihedral(4)
    centre = [x for x in range(8) if all(D4.mul(x, y) == D4.mul(y, x) for y in range(8))]
    assert is_normal_subxmod(X, centre, centre)
    Q, p = quotient_xmod(X, centre, centre)
    assert Q.orders == (4, 4)
    assert p.f.is_surjective() and p.h.is_surjective()


def test_abelian_xmod():
    assert is_abelian_xmod(point_xmod(cyclic(3)))
    assert is_abelian_xmod(trivial_action_xmod(cyclic(2), cyclic(2), identity_hom(cyclic(2))))
    assert not is_abelian_xmod(inversion_xmod(3))
    assert not is_abelian_xmod(identity_xmod(symmetric(3)))


def test_isomorphism_search():
    X = normal_inclusion_xmod(dicyclic(2), [0, 2])
    assert xmod_isomorphism(X, X) is not None
    assert xmod_isomorphism(identity_xmod(dicyclic(2)), identity_xmod(dihedral(4))) is None


def test_morphism_validation():
    X, Y = identity_xmod(cyclic(4)), identity_xmod(cyclic(2))
    h = make_hom(cyclic(4), cyclic(2), {1: 1})
    m = make_xmod_morphism(X, Y, h, h)
    assert m.compose(identity_morphism(X)).f == h
    with pytest.raises(AxiomError) as exc:
        make_xmod_morphism(X, Y, h, zero_hom(cyclic(4), cyclic(2)))
    assert exc.value.axiom == "square"


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 9))
def test_inversion_xmod_valid(n):
    X = inversion_xmod(n)
    assert brute_force_axioms(X.T, X.G, X.mu, X.action.act.tolist())
