"""Truncated universal model on the full Fock space.

All operators here are compressions P_N (.) P_N to span{e_alpha : |alpha| <= N}
in the graded-lexicographic basis, optionally tensored with an aux_dim
coefficient space.  With aux_dim = d the index layout is word-major:
flat index = word_index * d + aux_index, so the (omega, gamma) block of a
matrix is the d x d coefficient C_{omega,gamma} with
<T(x (x) e_gamma), y (x) e_omega> = <C_{omega,gamma} x, y>.

Reported operator norms of compressions are monotone-nondecreasing lower
bounds of the infinite-dimensional norms.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import sqrt
from typing import Sequence

import numpy as np

from .weights import DomainSpec, WeightTable
from .words import EMPTY, Word, concat, enumerate_words, reverse


@dataclass(frozen=True)
class TruncatedFockBasis:
    n: int
    N: int
    words: tuple[Word, ...] = field(repr=False)
    index: dict[Word, int] = field(repr=False)

    @staticmethod
    def build(n: int, N: int) -> "TruncatedFockBasis":
        ws = tuple(enumerate_words(n, N))
        return TruncatedFockBasis(n, N, ws, {w: i for i, w in enumerate(ws)})

    @property
    def dimension(self) -> int:
        return len(self.words)


@dataclass
class TruncatedOperator:
    """Dense operator on (truncated Fock) tensor (aux_dim-dimensional space)."""

    basis: TruncatedFockBasis
    matrix: np.ndarray
    aux_dim: int = 1

    def __post_init__(self):
        d = self.basis.dimension * self.aux_dim
        if self.matrix.shape != (d, d):
            raise ValueError(
                f"matrix shape {self.matrix.shape} inconsistent with "
                f"dimension {self.basis.dimension} x aux_dim {self.aux_dim}")

    def block(self, omega: Word, gamma: Word) -> np.ndarray:
        d = self.aux_dim
        i = self.basis.index[omega] * d
        j = self.basis.index[gamma] * d
        return self.matrix[i:i + d, j:j + d]

    def adjoint(self) -> "TruncatedOperator":
        return TruncatedOperator(self.basis, self.matrix.conj().T, self.aux_dim)

    def norm(self) -> float:
        """Largest singular value; a lower bound of the untruncated norm."""
        return float(np.linalg.norm(self.matrix, 2))

    def __matmul__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        _require_same_space(self, other)
        return TruncatedOperator(self.basis, self.matrix @ other.matrix, self.aux_dim)

    def __add__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        _require_same_space(self, other)
        return TruncatedOperator(self.basis, self.matrix + other.matrix, self.aux_dim)

    def __sub__(self, other: "TruncatedOperator") -> "TruncatedOperator":
        _require_same_space(self, other)
        return TruncatedOperator(self.basis, self.matrix - other.matrix, self.aux_dim)

    def __mul__(self, scalar: complex) -> "TruncatedOperator":
        return TruncatedOperator(self.basis, self.matrix * scalar, self.aux_dim)

    __rmul__ = __mul__


class BasisMismatchError(ValueError):
    pass


def _require_same_space(a: TruncatedOperator, b: TruncatedOperator) -> None:
    if a.basis is not b.basis and (a.basis.n, a.basis.N) != (b.basis.n, b.basis.N):
        raise BasisMismatchError("operators live on different truncated bases")
    if a.aux_dim != b.aux_dim:
        raise BasisMismatchError(f"aux_dim mismatch: {a.aux_dim} vs {b.aux_dim}")


def identity_operator(basis: TruncatedFockBasis, aux_dim: int = 1) -> TruncatedOperator:
    d = basis.dimension * aux_dim
    return TruncatedOperator(basis, np.eye(d, dtype=complex), aux_dim)


def weighted_left_creation(table: WeightTable, i: int, N: int,
                           basis: TruncatedFockBasis | None = None) -> TruncatedOperator:
    """W_i e_gamma = sqrt(b_gamma / b_{g_i gamma}) e_{g_i gamma}, zero at depth N."""
    return _creation(table, i, N, basis, left=True)


def weighted_right_creation(table: WeightTable, i: int, N: int,
                            basis: TruncatedFockBasis | None = None) -> TruncatedOperator:
    """Lambda_i e_gamma = sqrt(b_gamma / b_{gamma g_i}) e_{gamma g_i}."""
    return _creation(table, i, N, basis, left=False)


def _creation(table: WeightTable, i: int, N: int,
              basis: TruncatedFockBasis | None, left: bool) -> TruncatedOperator:
    n = table.spec.n
    if not 1 <= i <= n:
        raise ValueError(f"letter {i} outside 1..{n}")
    if N > table.N:
        raise ValueError(f"truncation {N} exceeds table depth {table.N}")
    if basis is None:
        basis = TruncatedFockBasis.build(n, N)
    D = basis.dimension
    M = np.zeros((D, D), dtype=complex)
    for gamma in basis.words:
        if len(gamma) >= N:
            continue
        target = (i,) + gamma if left else gamma + (i,)
        w = sqrt(float(table.b[gamma] / table.b[target]))
        M[basis.index[target], basis.index[gamma]] = w
    return TruncatedOperator(basis, M)


def creation_tuple(table: WeightTable, N: int, left: bool = True) -> list[TruncatedOperator]:
    basis = TruncatedFockBasis.build(table.spec.n, N)
    make = weighted_left_creation if left else weighted_right_creation
    return [make(table, i, N, basis) for i in range(1, table.spec.n + 1)]


def word_operator(ops: Sequence, alpha: Word):
    """Ordered product X_{i_1} ... X_{i_k}; identity for the empty word.

    Works on TruncatedOperators and on plain numpy matrices alike.
    """
    if isinstance(ops[0], TruncatedOperator):
        out = identity_operator(ops[0].basis, ops[0].aux_dim)
        for letter in alpha:
            out = out @ ops[letter - 1]
        return out
    k = ops[0].shape[0]
    out_m = np.eye(k, dtype=complex)
    for letter in alpha:
        out_m = out_m @ ops[letter - 1]
    return out_m


def cp_map_apply(spec: DomainSpec, X: Sequence[np.ndarray], Y: np.ndarray) -> np.ndarray:
    """Phi_{q,X}(Y) = sum_{alpha in supp q} a_alpha X_alpha Y X_alpha^*."""
    if len(X) != spec.n:
        raise ValueError(f"expected {spec.n} operators, got {len(X)}")
    k = Y.shape[0]
    for Xi in X:
        if Xi.shape != (k, k):
            raise ValueError("operator tuple dimensions inconsistent with Y")
    out = np.zeros_like(Y, dtype=complex)
    for alpha, a in spec.coefficients.items():
        Xa = word_operator(X, alpha)
        out += float(a) * (Xa @ Y @ Xa.conj().T)
    return out


def defect_operator(spec: DomainSpec, X: Sequence[np.ndarray], k: int) -> np.ndarray:
    """(id - Phi_{q,X})^k (I), hermitized against roundoff."""
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    Y = np.eye(X[0].shape[0], dtype=complex)
    for _ in range(k):
        Y = Y - cp_map_apply(spec, X, Y)
    return (Y + Y.conj().T) / 2


def _vacuum_projection(basis: TruncatedFockBasis) -> np.ndarray:
    P = np.zeros((basis.dimension, basis.dimension), dtype=complex)
    P[basis.index[EMPTY], basis.index[EMPTY]] = 1.0
    return P


@dataclass
class ModelIdentityReport:
    defect_residual_left: float        # ||(id-Phi_{q,W})^m(I) - P_C||_max
    phi_norm_left: float               # max eigenvalue of Phi_{q,W}(I)
    defect_residual_right: float       # same, Lambda with reversed coefficients
    phi_norm_right: float
    commutation_residual: float        # max ||(W_i Lambda_j - Lambda_j W_i) e_gamma||
    tol: float

    @property
    def passed(self) -> bool:
        return (self.defect_residual_left <= self.tol
                and self.defect_residual_right <= self.tol
                and self.phi_norm_left <= 1 + self.tol
                and self.phi_norm_right <= 1 + self.tol
                and self.commutation_residual <= self.tol)


def verify_model_identities(spec: DomainSpec, table: WeightTable, N: int,
                            tol: float = 1e-10) -> ModelIdentityReport:
    W = creation_tuple(table, N, left=True)
    L = creation_tuple(table, N, left=False)
    basis = W[0].basis
    P = _vacuum_projection(basis)

    Wm = [op.matrix for op in W]
    Lm = [op.matrix for op in L]

    defect_left = defect_operator(spec, Wm, spec.m)
    res_left = float(np.max(np.abs(defect_left - P)))
    phi_left = cp_map_apply(spec, Wm, np.eye(basis.dimension, dtype=complex))
    norm_left = float(np.max(np.linalg.eigvalsh((phi_left + phi_left.conj().T) / 2)))

    rspec = spec.reversed()
    defect_right = defect_operator(rspec, Lm, spec.m)
    res_right = float(np.max(np.abs(defect_right - P)))
    phi_right = cp_map_apply(rspec, Lm, np.eye(basis.dimension, dtype=complex))
    norm_right = float(np.max(np.linalg.eigvalsh((phi_right + phi_right.conj().T) / 2)))

    # both products raise word length by 2; deeper words are truncation artifacts
    comm = 0.0
    for i in range(spec.n):
        for j in range(spec.n):
            Dm = Wm[i] @ Lm[j] - Lm[j] @ Wm[i]
            for gamma in basis.words:
                if len(gamma) > N - 2:
                    continue
                comm = max(comm, float(np.linalg.norm(Dm[:, basis.index[gamma]])))

    return ModelIdentityReport(res_left, norm_left, res_right, norm_right, comm, tol)


@dataclass
class ConjugationReport:
    U: TruncatedOperator
    shift_residual: float  # max over i, |gamma| < N of ||(U W_i U^{-1} - L_i) e_gamma||

    @property
    def passed(self) -> bool:
        return self.shift_residual <= 1e-10


def weighted_space_conjugation(table: WeightTable, N: int) -> ConjugationReport:
    """Diagonal U e_alpha = sqrt(b_alpha) e_alpha conjugating each W_i to the
    unweighted multiplication shift of the weighted Fock space picture."""
    basis = TruncatedFockBasis.build(table.spec.n, N)
    D = basis.dimension
    diag = np.array([sqrt(float(table.b[w])) for w in basis.words])
    U = TruncatedOperator(basis, np.diag(diag).astype(complex))
    Uinv = np.diag(1.0 / diag).astype(complex)

    worst = 0.0
    for i in range(1, table.spec.n + 1):
        W = weighted_left_creation(table, i, N, basis).matrix
        conj = U.matrix @ W @ Uinv
        shift = np.zeros((D, D), dtype=complex)
        for gamma in basis.words:
            if len(gamma) < N:
                shift[basis.index[(i,) + gamma], basis.index[gamma]] = 1.0
        for gamma in basis.words:
            if len(gamma) < N:
                col = basis.index[gamma]
                worst = max(worst, float(np.linalg.norm(conj[:, col] - shift[:, col])))
    return ConjugationReport(U, worst)
