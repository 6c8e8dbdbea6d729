from __future__ import annotations

import pytest

from versorlab.clifford import Multivector, inner, reverse
from versorlab.e8fold import (
    FOLDING_PAIRS, H4_COXETER_MATRIX, FoldingError, build_folding, coxeter_versor,
    verify_h4_relations, versor_orders,
)
from versorlab.field import ONE, ZERO


@pytest.fixture(scope="module")
def cfg():
    return build_folding()


@pytest.fixture(scope="module")
def coxeter(cfg):
    return coxeter_versor(cfg)


def test_pairs_are_orthogonal(cfg):
    assert cfg.pairs == FOLDING_PAIRS
    assert cfg.orthogonal
    for i, j in cfg.pairs:
        assert inner(cfg.roots[i - 1], cfg.roots[j - 1]) == ZERO


def test_roots_are_unit_vectors(cfg):
    for r in cfg.roots:
        assert inner(r, r) == ONE


def test_generators_are_unit_and_square_to_minus_one(cfg):
    minus_one = Multivector.scalar(8, -1)
    for a in cfg.generators:
        assert a * reverse(a) == Multivector.scalar(8, 1)
        assert a * a == minus_one


def test_non_orthogonal_pairs_are_rejected():
    with pytest.raises(FoldingError):
        build_folding(((1, 2), (3, 4), (5, 6), (7, 8)))


def test_h4_relations(cfg):
    rel = verify_h4_relations(cfg)
    assert all(rel.involutions)
    assert all(rel.square_minus_one)
    assert rel.sandwich_orders == [list(r) for r in H4_COXETER_MATRIX]
    assert rel.map_orders == rel.sandwich_orders
    assert rel.matches_h4
    assert rel.five_fold_pairs == [(3, 4)]


def test_versor_orders_double_the_odd_relations(cfg):
    rel = verify_h4_relations(cfg)
    # (a_i a_j)^3 = -1 for the 3-fold relations, (a3 a4)^5 = +1
    assert rel.versor_orders[0][1] == 6
    assert rel.versor_orders[2][3] == 5
    assert rel.versor_orders[0][0] == 2


def test_coxeter_number(coxeter):
    assert coxeter.h == 30
    assert coxeter.w_unit
    assert coxeter.w_permutes_roots


def test_folded_coxeter_versor(coxeter):
    assert coxeter.h4_h == 30
    # a1 a2 a3 a4 is the product of the E8 roots in the paired order 1 7 2 6 3 5 4 8
    assert coxeter.h4_equals_pm_paired_product


def test_folded_versor_is_not_plus_minus_w(coxeter):
    # reordering alpha1 alpha2 ... alpha8 into the paired order moves alpha7 past alpha6,
    # which is not orthogonal to it, so the two products differ
    assert not coxeter.h4_equals_pm_w


def test_versor_orders_helper():
    e12 = Multivector.from_terms(2, {0b11: 1})
    assert versor_orders(e12) == (2, 4)
    with pytest.raises(FoldingError):
        versor_orders(Multivector.scalar(2, 2), limit=10)
