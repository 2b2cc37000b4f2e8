"""Shared generators of test instances."""
import numpy as np

from crossmod.act import actor, make_xmod_action
from crossmod.catalog import cyclic, symmetric
from crossmod.groups import abelian_group, identity_hom, zero_hom
from crossmod.xmod import base_xmod, identity_xmod, point_xmod, trivial_action_xmod


def action_bases():
    Z2, Z4, V = cyclic(2), cyclic(4), abelian_group([2, 2])
    return [point_xmod(Z2), point_xmod(Z4), identity_xmod(symmetric(3)), base_xmod(Z2),
            trivial_action_xmod(Z2, Z2, identity_hom(Z2)), point_xmod(V), identity_xmod(Z4)]


def action_coefficients():
    Z2, Z3, V = cyclic(2), cyclic(3), abelian_group([2, 2])
    return [trivial_action_xmod(Z2, Z2, identity_hom(Z2)), point_xmod(Z2), point_xmod(V),
            trivial_action_xmod(V, Z2, zero_hom(V, Z2)), point_xmod(Z3),
            trivial_action_xmod(Z2, V, zero_hom(Z2, V)), identity_xmod(symmetric(3))]


def random_action_candidates(count, seed=0):
    """``(action, actor_of_acted)`` with tables drawn from unit derivations and automorphism pairs.

    Each table entry is individually plausible; whether the whole is an
    action (and a module) is left for the checks under test to decide.
    """
    rng = np.random.default_rng(seed)
    bases, coeffs = action_bases(), action_coefficients()
    actors = {}
    out = []
    for _ in range(count):
        X = bases[rng.integers(len(bases))]
        j = int(rng.integers(len(coeffs)))
        Y = coeffs[j]
        if j not in actors:
            actors[j] = actor(Y)
        Ac = actors[j]
        units, pairs = Ac.whitehead.units, Ac.aut.pairs
        eps = np.array([units[rng.integers(len(units))].images for _ in range(X.T.order)])
        eps = eps.reshape(X.T.order, Y.G.order)
        eps[0] = 0
        ps = [pairs[rng.integers(len(pairs))] for _ in range(X.G.order)]
        ps[0] = pairs[0]
        act = make_xmod_action(X, Y, eps, [p[0] for p in ps], [p[1] for p in ps])
        out.append((act, Ac))
    return out
