import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from crossmod.errors import ArgumentError, MembershipError, NotSurjectiveError
from crossmod.groups import abelian_element, abelian_group
from crossmod.words import (
    abelianized_rewrite,
    concat,
    coset_table,
    evaluate,
    expand,
    exponent_vector,
    format_word,
    free_reduce,
    inverse,
    parse_word,
    power,
    random_word,
    reidemeister_rewrite,
    schreier_generators,
)

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=30)


def _presentation(ns, rank):
    M = abelian_group(list(ns))
    images = [abelian_element(M, [int(i == k) for i in range(len(ns))]) if k < len(ns) else 0
              for k in range(rank)]
    return M, images


def test_parse_format():
    assert parse_word("aBba") == (1, 1)
    assert format_word(parse_word("abAB")) == "abAB"
    assert parse_word("1") == ()
    with pytest.raises(ArgumentError):
        parse_word("a1")


@given(letters)
def test_free_reduce_idempotent(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert all(a != -b for a, b in zip(r, r[1:]))
    assert concat(r, inverse(r)) == ()


@given(letters, st.integers(-4, 4))
def test_power_exponents(w, k):
    assert exponent_vector(power(w, k), 3) == tuple(k * e for e in exponent_vector(w, 3))


def test_schreier_count_and_transversal():
    M, images = _presentation([2, 2], 2)
    table = coset_table(2, M, images)
    assert table.index == 4
    B = schreier_generators(table)
    assert len(B) == 5
    # the transversal is prefix closed
    reps = set(table.transversal)
    assert all(t[:-1] in reps for t in table.transversal if t)


def test_cyclic_transversal_is_powers():
    M, images = _presentation([5], 1)
    table = coset_table(1, M, images)
    assert table.transversal == ((), (1,), (1, 1), (1, 1, 1), (1, 1, 1, 1))


def test_not_surjective():
    M = abelian_group([2, 2])
    with pytest.raises(NotSurjectiveError):
        coset_table(1, M, [1])


def test_rewrite_outside_kernel():
    M, images = _presentation([3], 1)
    B = schreier_generators(coset_table(1, M, images))
    with pytest.raises(MembershipError):
        reidemeister_rewrite((1,), B)


@pytest.mark.parametrize("ns,rank", [([2], 1), ([2, 2], 2), ([3], 2), ([2, 4], 3), ([6], 1)])
def test_schreier_words_in_kernel(ns, rank):
    M, images = _presentation(ns, rank)
    table = coset_table(rank, M, images)
    B = schreier_generators(table)
    assert len(B) == table.index * (rank - 1) + 1
    for i, w in enumerate(B.words):
        assert evaluate(w, M, images) == 0
        assert reidemeister_rewrite(w, B) == (i + 1,)


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 20))
def test_rewrite_expand_roundtrip(seed, length):
    rng = np.random.default_rng(seed)
    M, images = _presentation([2, 4], 2)
    B = schreier_generators(coset_table(2, M, images))
    w = random_word(rng, 2, length)
    # push w into the kernel by appending a transversal inverse
    c = 0
    for a in w:
        c = B.table.step(c, a)
    w = concat(w, inverse(B.table.transversal[c]))
    assert evaluate(w, M, images) == 0
    assert expand(reidemeister_rewrite(w, B), B) == w
    assert len(abelianized_rewrite(w, B)) == len(B)
