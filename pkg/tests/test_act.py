import itertools

import numpy as np
import pytest

from crossmod.act import (
    action_morphism,
    actor,
    derivation_set,
    is_derivation,
    make_xmod_action,
    module_check,
    module_hom_check,
    module_routes,
    semidirect_xmod,
    sigma,
    split_extension_to_action,
    theta,
    whitehead_group,
    whitehead_product,
    xmod_aut_group,
    zero_derivation,
    zero_xmod_action,
)
from crossmod.catalog import aut_xmod, cyclic, dihedral, inversion_xmod, symmetric, xmod_catalog
from crossmod.errors import AxiomError, CrossmodError, SizeLimitError
from crossmod.groups import automorphisms, homomorphisms, identity_hom, zero_hom
from crossmod.xmod import identity_xmod, point_xmod, trivial_action_xmod
from helpers import random_action_candidates

SMALL = [identity_xmod(symmetric(3)), inversion_xmod(3), inversion_xmod(4), identity_xmod(cyclic(4)),
         aut_xmod(cyclic(3)), trivial_action_xmod(cyclic(2), cyclic(2), identity_hom(cyclic(2)))]


def brute_derivations(X):
    """Every map ``G -> T`` with ``d(1) = 1`` checked against the law directly."""
    G, T = X.G, X.T
    out = []
    for rest in itertools.product(range(T.order), repeat=G.order - 1):
        d = (0,) + rest
        if all(d[G.mul(g, h)] == T.mul(d[g], X.act(g, d[h]))
               for g in range(G.order) for h in range(G.order)):
            out.append(d)
    return out


@pytest.mark.parametrize("X", SMALL, ids=lambda X: X.name or repr(X))
def test_derivations_match_brute_force(X):
    got = sorted(tuple(int(v) for v in d.images) for d in derivation_set(X))
    assert got == sorted(brute_derivations(X))


@pytest.mark.parametrize("G", [symmetric(3), dihedral(4), cyclic(6)], ids=lambda G: G.name)
def test_identity_xmod_units_are_automorphisms(G):
    # for (G, G, id), sigma(d) = d(g) g is an endomorphism and units are automorphisms
    X = identity_xmod(G)
    assert len(derivation_set(X)) == len(list(homomorphisms(G, G)))
    assert whitehead_group(X).group.order == len(automorphisms(G))


@pytest.mark.parametrize("X", SMALL, ids=lambda X: X.name or repr(X))
def test_whitehead_group_laws(X):
    W = whitehead_group(X)
    units = W.units
    keys = {d.key() for d in units}
    z = zero_derivation(X)
    assert units[0] == z
    for a in units:
        assert whitehead_product(a, z) == a == whitehead_product(z, a)
        inv = [b for b in units if whitehead_product(a, b) == z]
        assert len(inv) == 1 and whitehead_product(inv[0], a) == z
        for b in units:
            assert whitehead_product(a, b).key() in keys
    for d in W.derivations:
        # a derivation is a unit exactly when sigma(d) is bijective
        assert (d.key() in keys) == (len(set(sigma(d).tolist())) == X.G.order)


@pytest.mark.parametrize("X", SMALL, ids=lambda X: X.name or repr(X))
def test_theta_sigma_is_morphism(X):
    W = whitehead_group(X)
    for d in W.derivations:
        s, t = sigma(d), theta(d)
        G, T = X.G, X.T
        assert all(s[G.mul(a, b)] == G.mul(s[a], s[b]) for a in range(G.order) for b in range(G.order))
        assert all(t[T.mul(a, b)] == T.mul(t[a], t[b]) for a in range(T.order) for b in range(T.order))
        # mu theta = sigma mu
        assert all(X.mu(t[a]) == s[X.mu(a)] for a in range(T.order))
    for a, b in itertools.product(W.units, repeat=2):
        # sigma and theta turn the Whitehead product into composition
        ab = whitehead_product(a, b)
        assert np.array_equal(sigma(ab), sigma(a)[sigma(b)])
        assert np.array_equal(theta(ab), theta(a)[theta(b)])


@pytest.mark.parametrize("X", xmod_catalog(), ids=lambda X: X.name or repr(X))
def test_actor_validates(X):
    Ac = actor(X)
    assert Ac.xmod.T.order == len(Ac.whitehead.units)
    assert Ac.xmod.G.order == len(Ac.aut.pairs)


def test_aut_group_of_identity_xmod():
    A = xmod_aut_group(identity_xmod(symmetric(3)))
    assert A.group.order == 6


def test_enum_bound():
    with pytest.raises(SizeLimitError):
        derivation_set(identity_xmod(symmetric(3)), enum_bound=5)


def test_tri_consistency_random():
    counts = {}
    for action, Ac in random_action_candidates(120, seed=3):
        r = module_routes(action, Ac)
        assert len(set(r)) == 1, r
        counts[r[0]] = counts.get(r[0], 0) + 1
    assert counts.get(True, 0) >= 10 and counts.get(False, 0) >= 10


def test_nonabelian_coefficients_are_not_modules():
    X = identity_xmod(symmetric(3))
    act = zero_xmod_action(point_xmod(cyclic(2)), X)
    assert module_routes(act) == (False, False, False)
    # still an action: the split extension exists
    assert semidirect_xmod(act).total.T.order == 6 * 2


def test_split_extension_recovers_action():
    for action, Ac in random_action_candidates(60, seed=5):
        try:
            action_morphism(action, Ac)
        except CrossmodError:
            continue
        ext = semidirect_xmod(action)
        rec = split_extension_to_action(ext.incl, ext.proj, ext.section)
        assert np.array_equal(rec.action.eps, action.eps)
        assert np.array_equal(rec.action.rho_A, action.rho_A)
        assert np.array_equal(rec.action.rho_B, action.rho_B)


def test_action_morphism_failures():
    Y = trivial_action_xmod(cyclic(2), cyclic(2), identity_hom(cyclic(2)))
    X = point_xmod(cyclic(2))
    # eps(1) = id is not a derivation unit here: sigma(id)(1) = 0
    bad = make_xmod_action(X, Y, [[0, 0], [0, 1]])
    with pytest.raises(AxiomError) as exc:
        action_morphism(bad)
    assert exc.value.axiom == "epsilon"


def test_module_hom_check():
    base = point_xmod(cyclic(2))
    Y = trivial_action_xmod(cyclic(2), cyclic(2), identity_hom(cyclic(2)))
    m = module_check(base, Y, zero_xmod_action(base, Y))
    idh = identity_hom(cyclic(2))
    assert module_hom_check(m, m, idh, idh).r == idh
    with pytest.raises(AxiomError) as exc:
        module_hom_check(m, m, idh, zero_hom(cyclic(2), cyclic(2)))
    assert exc.value.axiom == "delta'r=s delta"


def test_is_derivation_shape():
    X = inversion_xmod(3)
    assert is_derivation(X, [0, 1])
    assert not is_derivation(X, [1, 0])
    assert not is_derivation(X, [0, 1, 2])
