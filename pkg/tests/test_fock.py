from math import sqrt

import numpy as np
import pytest

from ncdomains.fock import (BasisMismatchError, TruncatedFockBasis,
                            TruncatedOperator, cp_map_apply, creation_tuple,
                            defect_operator, identity_operator,
                            verify_model_identities, weighted_left_creation,
                            weighted_space_conjugation, word_operator)
from ncdomains.corpus import builtin_corpus
from ncdomains.weights import hyperball_spec, weights_by_factorization
from ncdomains.words import EMPTY


def test_creation_matrix_entries(ball2_table):
    W1 = weighted_left_creation(ball2_table, 1, 3)
    basis = W1.basis
    # W_1 e_() = sqrt(b_()/b_(1)) e_(1) = (1/sqrt(2)) e_(1) for m = 2
    col = W1.matrix[:, basis.index[EMPTY]]
    assert abs(col[basis.index[(1,)]] - 1 / sqrt(2)) < 1e-15
    assert np.count_nonzero(col) == 1
    # boundary words map to zero
    assert np.all(W1.matrix[:, basis.index[(1, 1, 1)]] == 0)


def test_unweighted_shift_for_m1(ball1_table):
    # m = 1 hyperball weights are all 1: W_i is the plain left shift
    W1 = weighted_left_creation(ball1_table, 1, 3)
    basis = W1.basis
    for gamma in basis.words:
        if len(gamma) < 3:
            assert W1.matrix[basis.index[(1,) + gamma], basis.index[gamma]] == 1.0


def test_word_operator_orders_letters(ball2_table):
    W = creation_tuple(ball2_table, 3, left=True)
    basis = W[0].basis
    v = word_operator(W, (1, 2)).matrix[:, basis.index[EMPTY]]
    # W_1 W_2 e_() lands on e_(1,2), not e_(2,1)
    assert v[basis.index[(1, 2)]] != 0
    assert v[basis.index[(2, 1)]] == 0


def test_defect_identity_on_corpus():
    for name, spec in builtin_corpus().items():
        table = weights_by_factorization(spec, 3)
        W = [op.matrix for op in creation_tuple(table, 3, left=True)]
        defect = defect_operator(spec, W, spec.m)
        basis = TruncatedFockBasis.build(spec.n, 3)
        P = np.zeros_like(defect)
        P[basis.index[EMPTY], basis.index[EMPTY]] = 1.0
        assert np.max(np.abs(defect - P)) < 1e-10, name


def test_model_identities_report(ball2_table):
    report = verify_model_identities(ball2_table.spec, ball2_table, 4)
    assert report.passed
    assert report.commutation_residual < 1e-12


def test_conjugation_to_unweighted_shift(ball2_table, mixed_table):
    for table in (ball2_table, mixed_table):
        report = weighted_space_conjugation(table, 4)
        assert report.passed


def test_cp_map_positive(ball2_table):
    spec = ball2_table.spec
    W = [op.matrix for op in creation_tuple(ball2_table, 3, left=True)]
    phi = cp_map_apply(spec, W, np.eye(W[0].shape[0], dtype=complex))
    vals = np.linalg.eigvalsh((phi + phi.conj().T) / 2)
    assert vals.min() >= -1e-12
    assert vals.max() <= 1 + 1e-12


def test_operator_algebra_and_mismatch(ball2_table, ball1_table):
    A = identity_operator(TruncatedFockBasis.build(2, 2))
    B = weighted_left_creation(ball2_table, 1, 2)
    C = weighted_left_creation(ball1_table, 1, 3)
    assert (A + B).matrix.shape == A.matrix.shape
    assert np.allclose((2.0 * A).matrix, 2 * np.eye(A.basis.dimension))
    with pytest.raises(BasisMismatchError):
        _ = B @ C


def test_block_extraction(ball2_table):
    W1 = weighted_left_creation(ball2_table, 1, 2)
    blk = W1.block((1,), EMPTY)
    assert blk.shape == (1, 1)
    assert abs(blk[0, 0] - 1 / sqrt(2)) < 1e-15


def test_creation_rejects_bad_letter(ball2_table):
    with pytest.raises(ValueError):
        weighted_left_creation(ball2_table, 3, 3)
    with pytest.raises(ValueError):
        weighted_left_creation(ball2_table, 1, 9)
