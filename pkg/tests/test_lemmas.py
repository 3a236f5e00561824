import pytest

from hypercount.constructions import build_H
from hypercount.corpus import random_bounded_family, random_corpus
from hypercount.lemmas import (
    exhaustive_shadow_violations,
    identity_violations,
    restricted_lemma_violations,
    shadow_lemma_violations,
    verify_graph_bound,
    verify_sequence_inequality,
)
from hypercount.matching import matching_number

import numpy as np


def _case(cases, m):
    return next(c for c in cases if c.m == m)


@pytest.mark.parametrize(
    "args,m,maximum,bound,argmax",
    [
        ((5, 2, 1, 3, 2), 8, 30, 31, (5, 2, 1)),
        ((3, 2, 1, 4, 2), 7, 17, 17, (3, 2, 2, 0)),
        ((4, 2, 0, 3, 2), 5, 9, 10, (2, 2, 1)),
    ],
)
def test_sequence_examples(args, m, maximum, bound, argmax):
    cases = verify_sequence_inequality(*args)
    case = _case(cases, m)
    assert (case.maximum, case.bound, case.argmax) == (maximum, bound, argmax)
    assert all(c.maximum <= c.bound for c in cases)


@pytest.mark.parametrize("args", [(2, 2, 1, 3, 2), (3, 0, 1, 3, 2), (3, 2, 3, 3, 2), (3, 2, 1, 3, 1)])
def test_sequence_preconditions(args):
    with pytest.raises(ValueError):
        verify_sequence_inequality(*args)


def test_graph_bound_triangle():
    r = verify_graph_bound(3, 1)
    assert r.attained and r.maximum == 3 and r.extremal_classes == 1
    assert r.extremal[0].edges == ((1, 2), (1, 3), (2, 3))


def test_graph_bound_guards():
    with pytest.raises(ValueError):
        verify_graph_bound(9, 1)
    with pytest.raises(ValueError):
        verify_graph_bound(4, 2)


def test_lemma_checkers_clean_on_H():
    for n, s in [(9, 2), (10, 3), (7, 1)]:
        H = build_H(n, 3, s)
        assert identity_violations(H) == []
        assert shadow_lemma_violations(H, s) == []
        assert restricted_lemma_violations(H, s) == []


def test_exhaustive_shadow_small():
    count, bad = exhaustive_shadow_violations(5, 3, 1)
    assert count > 0 and bad == []


def test_corpus_is_seeded_and_bounded():
    a, b = random_corpus(50, seed=4), random_corpus(50, seed=4)
    assert [x.family for x in a] == [x.family for x in b]
    for item in a:
        assert matching_number(item.family) <= item.s
        assert item.family.k in (2, 3) and item.family.n <= 12
        assert item.q in (0.1, 0.3, 0.5)


def test_random_family_dense():
    H = random_bounded_family(np.random.default_rng(0), 10, 3, 1, 1.0)
    assert matching_number(H) == 1


def _apex_family():
    # {1,2,5} plus every triple through 6 that meets {1,2,5}.
    import itertools

    from hypercount.core import Family

    edges = [(1, 2, 5)] + [e for e in itertools.combinations(range(1, 7), 3) if 6 in e and set(e) & {1, 2, 5}]
    return Family(6, 3, edges)


def test_degree_lemma_counterexample_at_2s_plus_1():
    import oracles
    from hypercount.core import high_codegree_family, restrict_avoid

    H = _apex_family()
    assert oracles.nu(H.edges) == 1
    K = high_codegree_family(H, 4)
    assert sum(1 for E in K.edges if 6 in E) == 3
    assert oracles.nu(restrict_avoid(H, {6}).edges) == 1
    assert restricted_lemma_violations(H, 1) == ["deg_K(6) = 3 >= 3 but nu(H minus 6) = 1"]
    assert restricted_lemma_violations(H, 1, degree_threshold=4) == []


def test_degree_lemma_holds_at_3s_plus_1_on_corpus():
    bad = []
    for it in random_corpus(3000, seed=11, k_values=(3,)):
        if matching_number(it.family) == it.s:
            bad += restricted_lemma_violations(it.family, it.s, degree_threshold=3 * it.s + 1)
    assert bad == []
