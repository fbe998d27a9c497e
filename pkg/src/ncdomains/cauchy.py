"""Reconstruction operator, joint spectral radius, Cauchy transform, and the
free analytic functional calculus.

The gate for everything here is r_q(X) < 1.  Its authoritative value comes
from the linearization of Phi_{q,X} on vectorized operators (Gelfand's
formula applied to a finite matrix); the sequence ||Phi^k(I)||^(1/2k) is
reported alongside as a slowly convergent cross-check.  The truncated
reconstruction operator is nilpotent, so its own spectral radius carries no
information and is never used as a gate.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Sequence

import numpy as np

from .berezin import OperatorTuple
from .fock import TruncatedFockBasis, TruncatedOperator, creation_tuple, word_operator
from .toeplitz import MultiToeplitzSymbol
from .weights import DomainSpec, WeightTable
from .words import EMPTY, Word, enumerate_words, reverse

GATE_MARGIN = 1e-6


class SpectralGateError(ValueError):
    pass


class GateMarginError(ValueError):
    def __init__(self, r_q: float):
        super().__init__(f"joint spectral radius {r_q:.6f} leaves no admissible t > 1")
        self.r_q = r_q


@dataclass
class SpectralRadiusReport:
    r_exact: float                 # sqrt of spectral radius of the linearized map
    r_sequence: list[float]        # ||Phi^k(I)||^(1/2k)
    gate: bool

    @property
    def last_sequence_value(self) -> float:
        return self.r_sequence[-1]


def linearized_cp_map(spec: DomainSpec, X: OperatorTuple) -> np.ndarray:
    """k^2 x k^2 matrix of Y -> sum a_alpha X_alpha Y X_alpha^* on row-major
    vectorized operators."""
    k = X.dim
    L = np.zeros((k * k, k * k), dtype=complex)
    for alpha, a in spec.coefficients.items():
        Xa = X.word(alpha)
        L += float(a) * np.kron(Xa, Xa.conj())
    return L


def joint_spectral_radius(spec: DomainSpec, X: OperatorTuple,
                          k_max: int = 40) -> SpectralRadiusReport:
    """r_q(X) = lim ||Phi^k(I)||^(1/2k); exact value via the linearization."""
    L = linearized_cp_map(spec, X)
    rho = float(np.max(np.abs(np.linalg.eigvals(L))))
    r_exact = sqrt(rho)
    seq = []
    Y = np.eye(X.dim, dtype=complex)
    from .berezin import _cp_apply
    for k in range(1, k_max + 1):
        Y = _cp_apply(spec, X.matrices, Y)
        nrm = float(np.linalg.norm(Y, 2))
        seq.append(nrm ** (1.0 / (2 * k)) if nrm > 0 else 0.0)
        if nrm == 0.0:
            break
    return SpectralRadiusReport(r_exact, seq, r_exact < 1 - GATE_MARGIN)


def reconstruction_operator(spec: DomainSpec, X: OperatorTuple, N: int,
                            table: WeightTable) -> TruncatedOperator:
    """R = sum over supp(q) of a_beta Lambda_{reverse(beta)} (x) X_beta^*,
    strictly degree-raising on the truncation."""
    Lam = creation_tuple(table, N, left=False)
    basis = Lam[0].basis
    k = X.dim
    M = np.zeros((basis.dimension * k, basis.dimension * k), dtype=complex)
    for beta, a in spec.coefficients.items():
        La = word_operator(Lam, reverse(beta)).matrix
        M += float(a) * np.kron(La, X.word(beta).conj().T)
    return TruncatedOperator(basis, M, aux_dim=k)


def cauchy_kernel(spec: DomainSpec, X: OperatorTuple, N: int,
                  table: WeightTable, check_gate: bool = True) -> TruncatedOperator:
    """(sum_{j<=N} R^j)^m -- exact on the truncation since R is nilpotent."""
    if check_gate:
        report = joint_spectral_radius(spec, X)
        if not report.gate:
            raise SpectralGateError(
                f"joint spectral radius {report.r_exact:.6f} >= 1 - {GATE_MARGIN}")
    R = reconstruction_operator(spec, X, N, table)
    dim = R.matrix.shape[0]
    S = np.eye(dim, dtype=complex)
    P = np.eye(dim, dtype=complex)
    for _ in range(N):
        P = P @ R.matrix
        S += P
    C = np.linalg.matrix_power(S, spec.m)
    return TruncatedOperator(R.basis, C, aux_dim=R.aux_dim)


def cauchy_kernel_fourier_residual(C: TruncatedOperator, X: OperatorTuple,
                                   table: WeightTable) -> float:
    """Check the expansion C = sum Lambda_beta (x) b_{rev(beta)} X_{rev(beta)}^*
    through the vacuum column: block (omega, ()) must be sqrt(b_omega) X_omega^*."""
    worst = 0.0
    for omega in C.basis.words:
        blk = C.block(omega, EMPTY)
        expected = sqrt(float(table.b[omega])) * X.word(omega).conj().T
        worst = max(worst, float(np.max(np.abs(blk - expected))))
    return worst


def cauchy_transform(spec: DomainSpec, X: OperatorTuple, A: TruncatedOperator,
                     N: int, table: WeightTable,
                     C: TruncatedOperator | None = None) -> np.ndarray:
    """k x k matrix with entries <(A (x) I)(1 (x) x), C (1 (x) y)>."""
    if C is None:
        C = cauchy_kernel(spec, X, N, table)
    if A.aux_dim != 1:
        raise ValueError("cauchy transform expects a scalar-coefficient operator")
    k = X.dim
    basis = C.basis
    vac = basis.index[EMPTY]
    E = np.zeros((basis.dimension * k, k), dtype=complex)
    E[vac * k:(vac + 1) * k, :] = np.eye(k)
    CE = C.matrix @ E
    AE = np.kron(A.matrix, np.eye(k, dtype=complex)) @ E
    return CE.conj().T @ AE


@dataclass
class CalculusResult:
    value: np.ndarray
    cross_residual: float
    t: float


def analytic_functional_calculus(spec: DomainSpec, X: OperatorTuple,
                                 coeffs: dict[Word, complex], N: int,
                                 table: WeightTable, tol: float = 1e-8
                                 ) -> CalculusResult:
    """Direct series sum c_alpha X_alpha, cross-checked against the Cauchy
    route C_{q,tX}[F((1/t)W_N)] for a t > 1 inside the gate."""
    report = joint_spectral_radius(spec, X)
    if not report.gate:
        raise SpectralGateError(
            f"joint spectral radius {report.r_exact:.6f} >= 1 - {GATE_MARGIN}")
    r_q = report.r_exact
    t = 2.0 if r_q == 0 else min(1.05, sqrt(1.0 / r_q))
    if t <= 1.0 or (t * r_q) ** 2 >= 1.0:
        raise GateMarginError(r_q)

    direct = np.zeros((X.dim, X.dim), dtype=complex)
    for alpha, c in coeffs.items():
        direct += c * X.word(alpha)

    W = creation_tuple(table, N, left=True)
    basis = W[0].basis
    F_op = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    for alpha, c in coeffs.items():
        F_op += c * (t ** (-len(alpha))) * word_operator(W, alpha).matrix
    F_trunc = TruncatedOperator(basis, F_op)
    C = cauchy_kernel(spec, X.scaled(t), N, table, check_gate=False)
    via_cauchy = cauchy_transform(spec, X.scaled(t), F_trunc, N, table, C=C)
    residual = float(np.linalg.norm(direct - via_cauchy, 2))
    return CalculusResult(direct, residual, t)


def multiply_symbols(c1: dict[Word, complex], c2: dict[Word, complex]
                     ) -> dict[Word, complex]:
    """Noncommutative product by concatenation convolution."""
    out: dict[Word, complex] = {}
    for w1, a in c1.items():
        for w2, b in c2.items():
            w = w1 + w2
            out[w] = out.get(w, 0j) + a * b
    return {w: v for w, v in out.items() if v != 0}


def pluriharmonic_calculus(spec: DomainSpec, X: OperatorTuple,
                           G, N: int, table: WeightTable) -> np.ndarray:
    """Evaluate a pluriharmonic symbol at a gated tuple: the B part with
    adjoints plus the A part directly."""
    from .pluriharmonic import PluriharmonicFunction, evaluate_symbol

    report = joint_spectral_radius(spec, X)
    if not report.gate:
        raise SpectralGateError(
            f"joint spectral radius {report.r_exact:.6f} >= 1 - {GATE_MARGIN}")
    sym = G.symbol if isinstance(G, PluriharmonicFunction) else G
    return evaluate_symbol(sym, X.matrices)


@dataclass
class RadiusInequalityReport:
    margins: list[float]    # ||Phi^k(I)||^(1/2) - ||R_N^k|| per k
    violations: int

    @property
    def passed(self) -> bool:
        return self.violations == 0


def radius_inequality_check(spec: DomainSpec, X: OperatorTuple, N: int,
                            table: WeightTable, tol: float = 1e-10
                            ) -> RadiusInequalityReport:
    """||R_N^k|| <= ||Phi^k_{q,X}(I)||^(1/2) for k = 1..N; valid because the
    compression norm lower-bounds the full norm and ||Phi^k_{rev q,Lambda}(I)|| <= 1."""
    from .berezin import _cp_apply

    R = reconstruction_operator(spec, X, N, table)
    margins = []
    violations = 0
    P = np.eye(R.matrix.shape[0], dtype=complex)
    Y = np.eye(X.dim, dtype=complex)
    for _ in range(N):
        P = P @ R.matrix
        Y = _cp_apply(spec, X.matrices, Y)
        lhs = float(np.linalg.norm(P, 2))
        rhs = sqrt(float(np.linalg.norm(Y, 2)))
        margins.append(rhs - lhs)
        if lhs > rhs + tol:
            violations += 1
    return RadiusInequalityReport(margins, violations)
