import json
from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from crossmod.certifier import (
    J_INJECTIVE,
    J_NOT_INJECTIVE,
    certify_nonbalanced,
    hopf_pipeline,
    schur_multiplier_abelian,
    verify_witness,
)
from crossmod.errors import ArgumentError, InvariantViolation
from crossmod.groups import abelian_element, abelian_group
from crossmod.lattice import FGAbelianGroup
from crossmod.words import evaluate, exponent_vector, parse_word
from oracles import h2_abelian_oracle


def test_klein_four_certificate():
    r = hopf_pipeline([2, 2], 2)
    assert r.schreier_count == 5
    assert r.n_mod_TN == FGAbelianGroup(2, (2,))
    assert r.ker_j == FGAbelianGroup(0, (2,))
    assert r.verdict == J_NOT_INJECTIVE
    assert r.witness is not None and r.witness.order == 2
    M = abelian_group([2, 2])
    images = [abelian_element(M, [1, 0]), abelian_element(M, [0, 1])]
    assert evaluate(r.witness.word, M, images) == 0
    assert exponent_vector(r.witness.word, 2) == (0, 0)


def test_commutator_is_the_witness_class():
    r = hopf_pipeline([2, 2], 2)
    # [a, b] spans ker j in N/[F, N]; the found witness is a commutator word
    assert r.witness.word in (parse_word("AbaB"), parse_word("abAB"), parse_word("aBAb"),
                              parse_word("BabA"), parse_word("ABab"), parse_word("bAba"),
                              parse_word("baBA"), parse_word("BAba"))


@pytest.mark.parametrize("n", range(2, 8))
def test_cyclic_injective(n):
    r = hopf_pipeline([n], 1)
    assert r.verdict == J_INJECTIVE and r.ker_j.is_trivial and r.witness is None
    assert r.n_mod_TN == FGAbelianGroup(1)


@pytest.mark.parametrize("ns,rank", [([2, 2], 3), ([2, 4], 2), ([3, 3], 2), ([2, 2, 2], 3), ([6], 2)])
def test_ker_j_matches_gcd_formula(ns, rank):
    r = hopf_pipeline(ns, rank)
    assert r.ker_j == FGAbelianGroup.from_torsion(h2_abelian_oracle(ns))
    assert r.n_mod_TN.rank == rank
    assert r.schreier_count == r.index * (rank - 1) + 1


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(2, 6), min_size=1, max_size=3))
def test_h2_formula_properties(ns):
    h = schur_multiplier_abelian(ns)
    assert h == FGAbelianGroup.from_torsion(h2_abelian_oracle(ns))
    # H2 only depends on the isomorphism type of M
    assert h == schur_multiplier_abelian(sorted(ns, reverse=True))


def test_bad_arguments():
    with pytest.raises(ArgumentError):
        hopf_pipeline([2, 2], 1)
    with pytest.raises(ArgumentError):
        hopf_pipeline([1], 1)
    with pytest.raises(ArgumentError):
        hopf_pipeline([2], 0)


def test_tampered_witness_detected():
    r = hopf_pipeline([2, 2], 2)
    bad = replace(r.witness, order=4)
    with pytest.raises(InvariantViolation):
        verify_witness(type(r)(**{**r.__dict__, "witness": bad}))
    bad = replace(r.witness, word=parse_word("aa"))
    with pytest.raises(InvariantViolation):
        verify_witness(type(r)(**{**r.__dict__, "witness": bad}))


def test_certificate_json_stable():
    c = certify_nonbalanced([2, 2], 2)
    d = json.loads(c.dumps())
    assert list(d) == ["m", "rank", "schreier_count", "n_mod_tn", "ker_j", "h2", "verdict", "witness"]
    assert d["verdict"] == J_NOT_INJECTIVE and d["witness"]["order"] == 2
    assert c.dumps() == certify_nonbalanced([2, 2], 2).dumps()
    assert "not balanced" in c.text()
