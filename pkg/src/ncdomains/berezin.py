"""Domain membership, purity, and the noncommutative Berezin machinery.

An operator tuple is n complex k x k matrices.  The Berezin kernel at a
domain element X maps C^k into (truncated Fock) (x) C^k with word-major
flat index word_index * k + p; the extended transform acts blockwise on
aux_dim-tensored operators, with output on (aux space) (x) C^k,
aux-major (flat index i * k + p).

Nilpotent tuples are the workhorse: every kernel identity then involves
finitely many terms and holds up to roundoff on a large enough truncation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt
from typing import Sequence

import numpy as np

from .fock import TruncatedFockBasis, TruncatedOperator, word_operator
from .weights import DomainSpec, WeightTable
from .words import Word, enumerate_words


class DomainMembershipError(ValueError):
    pass


@dataclass
class OperatorTuple:
    spec: DomainSpec
    matrices: list[np.ndarray] = field(repr=False)

    def __post_init__(self):
        if len(self.matrices) != self.spec.n:
            raise ValueError(f"expected {self.spec.n} matrices, got {len(self.matrices)}")
        mats = [np.asarray(M, dtype=complex) for M in self.matrices]
        k = mats[0].shape[0]
        for M in mats:
            if M.shape != (k, k):
                raise ValueError("matrices must share a common square dimension")
        self.matrices = mats

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def scaled(self, t: float) -> "OperatorTuple":
        return OperatorTuple(self.spec, [t * M for M in self.matrices])

    def word(self, alpha: Word) -> np.ndarray:
        return word_operator(self.matrices, alpha)


def _cp_apply(spec: DomainSpec, X: Sequence[np.ndarray], Y: np.ndarray) -> np.ndarray:
    out = np.zeros_like(Y, dtype=complex)
    for alpha, a in spec.coefficients.items():
        Xa = word_operator(X, alpha)
        out += float(a) * (Xa @ Y @ Xa.conj().T)
    return out


@dataclass
class MembershipReport:
    in_domain: bool
    min_eigenvalues: list[float]       # smallest eigenvalue of (id-Phi)^j(I), j=1..m
    two_condition_agrees: bool         # Phi(I) <= I and order-m defect >= 0
    pure: bool
    purity_decay: list[float]
    tol: float


def domain_membership(spec: DomainSpec, X: OperatorTuple, tol: float = 1e-10,
                      p_max: int = 50) -> MembershipReport:
    """Smallest eigenvalues of the defects (id-Phi)^j(I), j = 1..m, plus the
    equivalent two-condition form as a cross-check."""
    mats = X.matrices
    k = X.dim
    Y = np.eye(k, dtype=complex)
    mins = []
    for _ in range(spec.m):
        Y = Y - _cp_apply(spec, mats, Y)
        Y = (Y + Y.conj().T) / 2
        mins.append(float(np.min(np.linalg.eigvalsh(Y))))
    in_domain = all(v >= -tol for v in mins)

    phi_I = _cp_apply(spec, mats, np.eye(k, dtype=complex))
    first_ok = float(np.max(np.linalg.eigvalsh((phi_I + phi_I.conj().T) / 2))) <= 1 + tol
    two_cond = first_ok and mins[-1] >= -tol
    agrees = two_cond == in_domain

    pure, decay = purity_check(spec, X, p_max=p_max, tol=1e-12, require_membership=False)
    return MembershipReport(in_domain, mins, agrees, pure, decay, tol)


def purity_check(spec: DomainSpec, X: OperatorTuple, p_max: int = 50,
                 tol: float = 1e-12, require_membership: bool = True
                 ) -> tuple[bool, list[float]]:
    """Decay profile ||Phi^p(I)||.  Certified pure when the profile hits an
    exact structural zero (joint nilpotence) or falls below tol at p_max."""
    if require_membership:
        report = domain_membership(spec, X, p_max=1)
        if not report.in_domain:
            raise DomainMembershipError(
                f"tuple outside domain: min defect eigenvalues {report.min_eigenvalues}")
    mats = X.matrices
    Y = np.eye(X.dim, dtype=complex)
    decay = []
    for _ in range(p_max):
        Y = _cp_apply(spec, mats, Y)
        nrm = float(np.linalg.norm(Y, 2))
        decay.append(nrm)
        if nrm == 0.0:
            break
    return decay[-1] <= tol, decay


def nilpotency_order(X: OperatorTuple, max_order: int = 20) -> int | None:
    """Smallest d with X_alpha = 0 for all |alpha| = d, or None."""
    for d in range(1, max_order + 1):
        if all(np.all(X.word(alpha) == 0)
               for alpha in enumerate_words(X.spec.n, d) if len(alpha) == d):
            return d
    return None


def defect_sqrt(spec: DomainSpec, X: OperatorTuple, tol: float = 1e-10) -> np.ndarray:
    """Principal square root of (id-Phi)^m(I); eigenvalues in [-tol, 0) clip to 0."""
    Y = np.eye(X.dim, dtype=complex)
    for _ in range(spec.m):
        Y = Y - _cp_apply(spec, X.matrices, Y)
    Y = (Y + Y.conj().T) / 2
    vals, vecs = np.linalg.eigh(Y)
    if np.min(vals) < -tol:
        raise DomainMembershipError(
            f"defect operator has eigenvalue {np.min(vals):.3e} < -tol")
    vals = np.clip(vals, 0.0, None)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def berezin_kernel(spec: DomainSpec, X: OperatorTuple, table: WeightTable,
                   N: int, tol: float = 1e-10) -> np.ndarray:
    """K h = sum_{|alpha| <= N} sqrt(b_alpha) e_alpha (x) Delta X_alpha^* h,
    as a (D*k) x k matrix with word-major rows."""
    delta = defect_sqrt(spec, X, tol)
    k = X.dim
    words = enumerate_words(spec.n, N)
    K = np.zeros((len(words) * k, k), dtype=complex)
    for idx, alpha in enumerate(words):
        K[idx * k:(idx + 1) * k, :] = sqrt(float(table.b[alpha])) * (
            delta @ X.word(alpha).conj().T)
    return K


def berezin_transform(spec: DomainSpec, X: OperatorTuple, g: TruncatedOperator,
                      table: WeightTable, tol: float = 1e-10) -> np.ndarray:
    """Extended transform K^*(g (x) I)K, blockwise over g's aux space.

    Output is (aux_dim*k) x (aux_dim*k), aux-major; for aux_dim = 1 this is
    the plain transform on C^k.
    """
    if g.basis.n != spec.n:
        raise ValueError("operator alphabet mismatch")
    K = berezin_kernel(spec, X, table, g.basis.N, tol)
    k = X.dim
    d = g.aux_dim
    D = g.basis.dimension
    out = np.zeros((d * k, d * k), dtype=complex)
    Ik = np.eye(k, dtype=complex)
    for i in range(d):
        for j in range(d):
            gij = _aux_block(g.matrix, D, d, i, j)
            out[i * k:(i + 1) * k, j * k:(j + 1) * k] = K.conj().T @ np.kron(gij, Ik) @ K
    return out


def _aux_block(M: np.ndarray, D: int, d: int, i: int, j: int) -> np.ndarray:
    # scalar Fock operator g_ij from the word-major layout (word*d + aux)
    return M[i::d, j::d] if d > 1 else M


def intertwining_residual(spec: DomainSpec, X: OperatorTuple, table: WeightTable,
                          N: int, W: list[TruncatedOperator]) -> float:
    """max_i || K X_i^* - (W_i^* (x) I) K ||."""
    K = berezin_kernel(spec, X, table, N)
    k = X.dim
    worst = 0.0
    for i, Wi in enumerate(W):
        lhs = K @ X.matrices[i].conj().T
        rhs = np.kron(Wi.matrix.conj().T, np.eye(k, dtype=complex)) @ K
        worst = max(worst, float(np.linalg.norm(lhs - rhs, 2)))
    return worst


HereditaryPolynomial = dict[tuple[Word, Word], complex]
"""q(Z, Z*) = sum c_{alpha,beta} Z_alpha Z_beta^*, keyed by (alpha, beta)."""


def hereditary_eval(X: OperatorTuple, poly: HereditaryPolynomial) -> np.ndarray:
    """Direct substitution W_alpha -> X_alpha, W_beta^* -> X_beta^*."""
    out = np.zeros((X.dim, X.dim), dtype=complex)
    for (alpha, beta), c in poly.items():
        out += c * (X.word(alpha) @ X.word(beta).conj().T)
    return out


def hereditary_model_operator(poly: HereditaryPolynomial,
                              W: list[TruncatedOperator]) -> TruncatedOperator:
    basis = W[0].basis
    M = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    for (alpha, beta), c in poly.items():
        Wa = word_operator(W, alpha).matrix
        Wb = word_operator(W, beta).matrix
        M += c * (Wa @ Wb.conj().T)
    return TruncatedOperator(basis, M)


def mean_value_check(sym, spec: DomainSpec, X: OperatorTuple, r: float,
                     table: WeightTable, N: int, tol: float = 1e-8) -> float:
    """Residual of F(X) = extended-Berezin_{(1/r)X}[F(r W_N)] for a symbol F.

    (1/r)X must lie in the domain and be pure.
    """
    from .pluriharmonic import PluriharmonicFunction
    from .toeplitz import symbol_to_operator

    inner = X.scaled(1.0 / r)
    report = domain_membership(spec, inner, tol=1e-10)
    if not report.in_domain:
        raise DomainMembershipError("(1/r)X is outside the domain")
    if not report.pure:
        raise DomainMembershipError("(1/r)X is not certified pure")
    F = sym if isinstance(sym, PluriharmonicFunction) else PluriharmonicFunction(sym)
    direct = F.evaluate(X.matrices)
    op = symbol_to_operator(F.symbol, table, r, N)
    transported = berezin_transform(spec, inner, op, table)
    return float(np.linalg.norm(direct - transported, 2))
