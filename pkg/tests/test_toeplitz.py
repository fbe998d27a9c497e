import numpy as np
import pytest

from ncdomains.corpus import random_symbol
from ncdomains.toeplitz import (MultiToeplitzSymbol, NotToeplitzError,
                                fourier_coefficients, hermitian_part_split,
                                is_multi_toeplitz, max_block_difference,
                                norm_profile, symbol_to_operator)
from ncdomains.fock import creation_tuple, identity_operator
from ncdomains.words import EMPTY


def test_identity_is_toeplitz(ball2_table):
    I = identity_operator(creation_tuple(ball2_table, 3)[0].basis)
    report = is_multi_toeplitz(I, ball2_table)
    assert report.is_toeplitz
    sym = fourier_coefficients(I, ball2_table, 3)
    assert set(sym.A) == {EMPTY}
    assert not sym.B
    assert np.allclose(sym.A[EMPTY], 1.0)


def test_creation_operator_is_toeplitz(ball2_table):
    W1 = creation_tuple(ball2_table, 4)[0]
    report = is_multi_toeplitz(W1, ball2_table)
    assert report.is_toeplitz, (report.worst_structure_residual,
                                report.worst_incomparable_entry)


def test_roundtrip_scalar(ball2_table):
    sym = MultiToeplitzSymbol.scalar(A={EMPTY: 0.5, (1,): 1.0, (1, 2): -2.0},
                                     B={(2,): 3.0j})
    op = symbol_to_operator(sym, ball2_table, 1.0, 4)
    rec = fourier_coefficients(op, ball2_table, 4)
    assert max_block_difference(sym, rec) < 1e-12
    assert is_multi_toeplitz(op, ball2_table, tol=1e-12).is_toeplitz


def test_roundtrip_matrix_blocks(ball2_table, mixed_table):
    rng = np.random.default_rng(7)
    for table in (ball2_table, mixed_table):
        sym = random_symbol(rng, 2, max_len=2, aux_dim=2)
        op = symbol_to_operator(sym, table, 1.0, 4)
        rec = fourier_coefficients(op, table, 4)
        assert max_block_difference(sym, rec) < 1e-10


def test_perturbation_detected(ball2_table):
    sym = MultiToeplitzSymbol.scalar(A={(1,): 1.0})
    op = symbol_to_operator(sym, ball2_table, 1.0, 3)
    i = op.basis.index[(1,)]
    j = op.basis.index[(2,)]
    op.matrix[i, j] += 0.1
    report = is_multi_toeplitz(op, ball2_table, tol=1e-10)
    assert not report.is_toeplitz
    assert report.worst_incomparable_entry >= 0.05
    assert report.incomparable_witness == ((1,), (2,))


def test_structure_perturbation_detected(ball2_table):
    # bump a comparable entry instead: the extension relation must flag it
    sym = MultiToeplitzSymbol.scalar(A={(1,): 1.0})
    op = symbol_to_operator(sym, ball2_table, 1.0, 3)
    i = op.basis.index[(1, 2)]
    j = op.basis.index[(2,)]
    op.matrix[i, j] += 0.1
    report = is_multi_toeplitz(op, ball2_table, tol=1e-10)
    assert not report.is_toeplitz
    assert report.worst_structure_residual >= 0.05


def test_adjoint_swaps_parts():
    sym = MultiToeplitzSymbol.scalar(A={EMPTY: 1j, (1,): 2.0}, B={(2,): 3.0})
    adj = sym.adjoint()
    assert adj.constant[0, 0] == -1j
    assert adj.A[(2,)][0, 0] == 3.0
    assert adj.B[(1,)][0, 0] == 2.0


def test_hermitian_part_split(ball2_table):
    sym = MultiToeplitzSymbol.scalar(A={EMPTY: 1.0, (1,): 2.0}, B={(2,): 1j})
    op = symbol_to_operator(sym, ball2_table, 1.0, 3)
    analytic, antianalytic = hermitian_part_split(op, ball2_table)
    assert not analytic.B and not antianalytic.A
    recombined = analytic + antianalytic
    assert max_block_difference(recombined, sym) < 1e-10

    op.matrix[op.basis.index[(1,)], op.basis.index[(2,)]] += 0.5
    with pytest.raises(NotToeplitzError):
        hermitian_part_split(op, ball2_table)


def test_norm_profile_monotone(ball2_table):
    rng = np.random.default_rng(3)
    radii = [k / 10 for k in range(1, 11)]
    for _ in range(5):
        sym = random_symbol(rng, 2, max_len=2)
        norms, violations = norm_profile(sym, ball2_table, radii, 4)
        assert violations == []
        assert norms == sorted(norms)


def test_symbol_support_exceeds_truncation(ball2_table):
    from ncdomains.weights import TruncationExceededError
    sym = MultiToeplitzSymbol.scalar(A={(1,) * 5: 1.0})
    with pytest.raises(TruncationExceededError):
        symbol_to_operator(sym, ball2_table, 1.0, 3)
