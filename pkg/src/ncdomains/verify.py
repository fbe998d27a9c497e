"""Verification suites: each numerically certifies a family of identities on
one domain spec and appends pass/fail records to a report.

The CLI subcommands and the acceptance test module are thin wrappers around
these functions, so a green `verify-all` and a green test suite certify the
same computations.
"""
from __future__ import annotations

from math import comb, sqrt

import numpy as np

from .berezin import (OperatorTuple, berezin_kernel, berezin_transform,
                      hereditary_eval, hereditary_model_operator,
                      intertwining_residual, mean_value_check)
from .cauchy import (analytic_functional_calculus, cauchy_kernel,
                     cauchy_kernel_fourier_residual, cauchy_transform,
                     joint_spectral_radius, multiply_symbols,
                     radius_inequality_check)
from .corpus import (random_gated_tuple, random_hereditary,
                     random_nilpotent_tuple, random_symbol)
from .fock import creation_tuple, verify_model_identities, weighted_space_conjugation, word_operator
from .pluriharmonic import (PluriharmonicFunction, distance,
                            scalar_holomorphic, schur_positivity_test,
                            weierstrass_limit)
from .report import CheckTimer, VerificationReport
from .toeplitz import (MultiToeplitzSymbol, fourier_coefficients,
                       is_multi_toeplitz, max_block_difference, norm_profile,
                       symbol_to_operator)
from .weights import (DomainSpec, WeightTable, hyperball_spec, omega_beta,
                      ratio_bound_check, weights_by_convolution,
                      weights_by_factorization)
from .words import EMPTY, Word, enumerate_words


def build_table(spec: DomainSpec, N: int) -> WeightTable:
    return weights_by_factorization(spec, N)


def weights_suite(spec: DomainSpec, N: int, report: VerificationReport,
                  label: str = "") -> WeightTable:
    t = CheckTimer(report)
    table = weights_by_factorization(spec, N)
    conv = weights_by_convolution(spec, N)
    equal = table.b == conv.b
    t.flag(f"weights.oracle_equality{label}",
           "factorization-sum weights equal convolution-inverse weights, exact rationals",
           equal)

    is_hyperball = (spec.coefficients ==
                    hyperball_spec(spec.n, spec.m).coefficients)
    if is_hyperball:
        closed = all(table.b[w] == comb(len(w) + spec.m - 1, spec.m - 1)
                     for w in enumerate_words(spec.n, N))
        t.flag(f"weights.hyperball_closed_form{label}",
               "hyperball weights match the binomial closed form exactly", closed)

    bound = ratio_bound_check(table)
    t.flag(f"weights.ratio_bound{label}",
           "b_alpha b_beta <= C(|beta|+m-1, m-1) b_{alpha beta}, exact check",
           bound.passed, {"pairs": bound.pairs_checked})

    est, depth = omega_beta(table, EMPTY)
    t.flag(f"weights.omega_empty{label}",
           "depth-limited ratio supremum equals 1 at the empty word",
           est == 1, {"depth": depth})
    return table


def model_suite(spec: DomainSpec, table: WeightTable, N: int,
                report: VerificationReport, tol: float = 1e-10,
                label: str = "") -> None:
    t = CheckTimer(report)
    ident = verify_model_identities(spec, table, N, tol)
    t.check(f"model.defect_left{label}",
            "(id - Phi at W)^m (I) equals the vacuum projection",
            ident.defect_residual_left, tol)
    t.check(f"model.defect_right{label}",
            "(id - Phi at Lambda, reversed coefficients)^m (I) equals the vacuum projection",
            ident.defect_residual_right, tol)
    t.check(f"model.contraction_left{label}",
            "Phi at W maps I below the identity",
            max(ident.phi_norm_left - 1.0, 0.0), tol)
    t.check(f"model.commutation{label}",
            "left and right weighted creation operators commute on interior words",
            ident.commutation_residual, 1e-12)
    conj = weighted_space_conjugation(table, N)
    t.check(f"model.conjugation{label}",
            "diagonal sqrt-weight conjugation turns W_i into the unweighted shift",
            conj.shift_residual, tol)


def toeplitz_suite(spec: DomainSpec, table: WeightTable, N: int,
                   report: VerificationReport, seed: int = 0,
                   n_symbols: int = 20, label: str = "") -> None:
    t = CheckTimer(report)
    rng = np.random.default_rng(seed)

    worst_roundtrip = 0.0
    worst_structure = 0.0
    for _ in range(n_symbols):
        sym = random_symbol(rng, spec.n, max_len=min(2, N - 1))
        op = symbol_to_operator(sym, table, 1.0, N)
        rec = fourier_coefficients(op, table, N)
        worst_roundtrip = max(worst_roundtrip, max_block_difference(sym, rec))
        rep = is_multi_toeplitz(op, table, tol=1e-12)
        worst_structure = max(worst_structure,
                              rep.worst_structure_residual,
                              rep.worst_incomparable_entry)
    t.check(f"toeplitz.roundtrip{label}",
            "symbol -> operator -> Fourier coefficients recovers every block",
            worst_roundtrip, 1e-10, {"seed": seed, "symbols": n_symbols})
    t.check(f"toeplitz.structure{label}",
            "assembled symbols satisfy the weighted shift-invariance relations",
            worst_structure, 1e-12)

    # a designed failure: one incomparable entry bumped by 0.1 must be caught
    if spec.n >= 2:
        sym = random_symbol(rng, spec.n, max_len=1)
        op = symbol_to_operator(sym, table, 1.0, N)
        i = op.basis.index[(1,)]
        j = op.basis.index[(2,)]
        op.matrix[i, j] += 0.1
        rep = is_multi_toeplitz(op, table, tol=1e-10)
        t.flag(f"toeplitz.perturbation_rejected{label}",
               "a 0.1 bump at an incomparable entry is rejected with residual >= 0.05",
               (not rep.is_toeplitz) and rep.worst_incomparable_entry >= 0.05,
               {"residual": rep.worst_incomparable_entry})

    radii = [k / 10.0 for k in range(1, 11)]
    worst_violation = 0.0
    for _ in range(n_symbols):
        sym = random_symbol(rng, spec.n, max_len=min(2, N - 1))
        norms, violations = norm_profile(sym, table, radii, N, tol=1e-10)
        for a, b in violations:
            ia, ib = radii.index(a), radii.index(b)
            worst_violation = max(worst_violation, norms[ia] - norms[ib])
    t.check(f"toeplitz.norm_monotone{label}",
            "||phi(r W_N)|| is nondecreasing in r",
            worst_violation, 1e-10)


def berezin_suite(spec: DomainSpec, table: WeightTable, N: int,
                  report: VerificationReport, seed: int = 0,
                  n_tuples: int = 5, label: str = "") -> None:
    t = CheckTimer(report)
    rng = np.random.default_rng(seed)
    W = creation_tuple(table, N, left=True)

    worst_repro = 0.0
    worst_iso = 0.0
    worst_inter = 0.0
    worst_vn = -np.inf
    worst_mean = 0.0
    for _ in range(n_tuples):
        X = random_nilpotent_tuple(rng, spec, dim=3)
        K = berezin_kernel(spec, X, table, N)
        worst_iso = max(worst_iso, float(np.linalg.norm(
            K.conj().T @ K - np.eye(X.dim), 2)))
        worst_inter = max(worst_inter,
                          intertwining_residual(spec, X, table, N, W))
        for alpha in enumerate_words(spec.n, 2):
            for beta in enumerate_words(spec.n, 2):
                g = word_operator(W, alpha) @ word_operator(W, beta).adjoint()
                got = berezin_transform(spec, X, g, table)
                want = X.word(alpha) @ X.word(beta).conj().T
                worst_repro = max(worst_repro,
                                  float(np.linalg.norm(got - want, 2)))
        poly = random_hereditary(rng, spec.n, max_deg=2)
        lhs = float(np.linalg.norm(hereditary_eval(X, poly), 2))
        rhs = hereditary_model_operator(poly, W).norm()
        worst_vn = max(worst_vn, lhs - rhs)

        sym = random_symbol(rng, spec.n, max_len=2)
        for r in (0.5, 0.9):
            inner = scale_for_radius(X, r)
            worst_mean = max(worst_mean, mean_value_check(
                sym, spec, inner, r, table, N))

    t.check(f"berezin.reproducing{label}",
            "Berezin transform sends W_alpha W_beta^* to X_alpha X_beta^* at pure tuples",
            worst_repro, 1e-10, {"seed": seed})
    t.check(f"berezin.kernel_isometry{label}",
            "K^* K = I at pure tuples once the truncation covers the kernel support",
            worst_iso, 1e-10)
    t.check(f"berezin.intertwining{label}",
            "K X_i^* = (W_i^* (x) I) K",
            worst_inter, 1e-10)
    t.check(f"berezin.von_neumann{label}",
            "||q(X, X^*)|| <= ||q(W_N, W_N^*)|| for hereditary polynomials",
            max(worst_vn, 0.0), 1e-8)
    t.check(f"berezin.mean_value{label}",
            "F(X) equals the extended Berezin transform of F(r W_N) at (1/r) X",
            worst_mean, 1e-8)


def scale_for_radius(X: OperatorTuple, r: float) -> OperatorTuple:
    """A tuple lying in r times the domain: r * X for X in the domain."""
    return X.scaled(r)


def pluriharmonic_suite(spec: DomainSpec, table: WeightTable, N: int,
                        report: VerificationReport, seed: int = 0,
                        label: str = "") -> None:
    t = CheckTimer(report)
    rng = np.random.default_rng(seed)
    order = max(1, min(2, N - 2))
    radii = [0.3, 0.7, 0.95]

    worst_eq = 0.0
    worst_eig = 0.0
    for _ in range(5):
        sym = random_symbol(rng, spec.n, max_len=min(2, N - order),
                            antianalytic=False)
        F = PluriharmonicFunction(sym)
        rep = schur_positivity_test(F, table, radii, order, N, tol=1e-10)
        worst_eq = max(worst_eq, max(rep.equality_residuals))
        op = symbol_to_operator(sym, table, radii[-1], N)
        H = op.matrix + op.matrix.conj().T
        d = sym.aux_dim
        nw = len(enumerate_words(spec.n, order))
        comp_min = float(np.min(np.linalg.eigvalsh(
            (H[: nw * d, : nw * d] + H[: nw * d, : nw * d].conj().T) / 2)))
        worst_eig = max(worst_eig, abs(comp_min - rep.min_eigenvalues[-1]))
    t.check(f"pluriharmonic.gamma_identity{label}",
            "Gamma kernel block matrix equals the compression of F(rW)^* + F(rW)",
            worst_eq, 1e-12, {"seed": seed})
    t.check(f"pluriharmonic.gamma_eigen{label}",
            "Gamma kernel and compression share their minimum eigenvalue",
            worst_eig, 1e-10)

    F_pos = scalar_holomorphic({EMPTY: 1.0, (1,): 1.0})
    rep = schur_positivity_test(F_pos, table, [0.5, 0.9], order, N)
    t.flag(f"pluriharmonic.psd_example{label}",
           "1 + Z_1 has positive real part at truncation", rep.positive)
    F_zero = scalar_holomorphic({(1,): 1.0})
    rep = schur_positivity_test(F_zero, table, [0.5, 0.9], order, N)
    t.flag(f"pluriharmonic.non_psd_example{label}",
           "Z_1 without constant term is reported non-positive", not rep.positive)

    worst_metric = 0.0
    for _ in range(20):
        F, G, H = (PluriharmonicFunction(random_symbol(rng, spec.n, 2))
                   for _ in range(3))
        _, rho_fg = distance(F, G, table, N)
        _, rho_gf = distance(G, F, table, N)
        _, rho_fh = distance(F, H, table, N)
        _, rho_hg = distance(H, G, table, N)
        _, rho_ff = distance(F, F, table, N)
        worst_metric = max(worst_metric,
                           abs(rho_fg - rho_gf),
                           rho_fg - (rho_fh + rho_hg),
                           rho_ff)
    t.check(f"pluriharmonic.metric_axioms{label}",
            "rho is symmetric, vanishes on the diagonal, and obeys the triangle inequality",
            max(worst_metric, 0.0), 1e-12)

    family = [PluriharmonicFunction(MultiToeplitzSymbol.scalar(
        A={(1,): 1.0 - 1.0 / j})) for j in range(1, 9)]
    wrep = weierstrass_limit(family, table, [0.5, 0.9], N)
    limit = PluriharmonicFunction(MultiToeplitzSymbol.scalar(A={(1,): 1.0}))
    rhos = [distance(Fj, limit, table, N)[1] for Fj in family]
    decreasing = all(rhos[i + 1] <= rhos[i] + 1e-12 for i in range(len(rhos) - 1))
    t.flag(f"pluriharmonic.weierstrass{label}",
           "a convergent family is Cauchy per radius and rho-converges monotonically",
           wrep.converged and decreasing and rhos[-1] < rhos[0])


def cauchy_suite(spec: DomainSpec, table: WeightTable, N: int,
                 report: VerificationReport, seed: int = 0,
                 n_tuples: int = 10, label: str = "") -> None:
    t = CheckTimer(report)
    rng = np.random.default_rng(seed)

    if spec.n == 1 and spec.degree == 1:
        lam = 0.37
        X = OperatorTuple(spec, [np.array([[lam]], dtype=complex)])
        r = joint_spectral_radius(spec, X)
        a1 = float(spec.coefficient((1,)))
        t.check(f"cauchy.scalar_radius{label}",
                "linearized joint spectral radius matches the scalar closed form",
                abs(r.r_exact - sqrt(a1) * lam), 1e-12)

    worst_seq = 0.0
    worst_fourier = 0.0
    worst_transform = 0.0
    worst_route = 0.0
    worst_mult = 0.0
    zero_radius_viol = 0
    for _ in range(n_tuples):
        X = random_gated_tuple(rng, spec, dim=3, target_radius=0.6)
        r = joint_spectral_radius(spec, X, k_max=40)
        worst_seq = max(worst_seq, abs(r.r_exact - r.last_sequence_value))

        C = cauchy_kernel(spec, X, N, table)
        worst_fourier = max(worst_fourier,
                            cauchy_kernel_fourier_residual(C, X, table))
        W = creation_tuple(table, N, left=True)
        for alpha in enumerate_words(spec.n, min(3, N - 1)):
            got = cauchy_transform(spec, X, word_operator(W, alpha), N, table, C=C)
            worst_transform = max(worst_transform, float(np.linalg.norm(
                got - X.word(alpha), 2)))

        c1 = {w: complex(rng.standard_normal(), rng.standard_normal())
              for w in enumerate_words(spec.n, 2) if rng.random() < 0.6} or {EMPTY: 1.0}
        c2 = {w: complex(rng.standard_normal(), rng.standard_normal())
              for w in enumerate_words(spec.n, 2) if rng.random() < 0.6} or {(1,): 1.0}
        res1 = analytic_functional_calculus(spec, X, c1, N, table)
        res2 = analytic_functional_calculus(spec, X, c2, N, table)
        worst_route = max(worst_route, res1.cross_residual, res2.cross_residual)
        prod = multiply_symbols(c1, c2)
        direct_prod = np.zeros((X.dim, X.dim), dtype=complex)
        for w, c in prod.items():
            direct_prod += c * X.word(w)
        worst_mult = max(worst_mult, float(np.linalg.norm(
            res1.value @ res2.value - direct_prod, 2)))

        ineq = radius_inequality_check(spec, X, N, table)
        zero_radius_viol += ineq.violations

    t.check(f"cauchy.gelfand_sequence{label}",
            "||Phi^k(I)||^(1/2k) at k = 40 approaches the linearized radius",
            worst_seq, 5e-2, {"seed": seed})
    t.check(f"cauchy.kernel_fourier{label}",
            "Cauchy kernel vacuum column carries sqrt(b_omega) X_omega^*",
            worst_fourier, 1e-10)
    t.check(f"cauchy.transform_reproducing{label}",
            "Cauchy transform sends W_alpha to X_alpha",
            worst_transform, 1e-10)
    t.check(f"cauchy.route_agreement{label}",
            "direct power series agrees with the Cauchy-kernel evaluation route",
            worst_route, 1e-8)
    t.check(f"cauchy.multiplicative{label}",
            "the analytic calculus is multiplicative on polynomial symbols",
            worst_mult, 1e-8)
    t.flag(f"cauchy.radius_inequality{label}",
           "||R_N^k|| <= ||Phi^k(I)||^(1/2) for k <= N, zero violations",
           zero_radius_viol == 0)


def full_suite(spec: DomainSpec, N: int, report: VerificationReport,
               seed: int = 0, label: str = "") -> None:
    table = weights_suite(spec, N, report, label)
    model_suite(spec, table, N, report, label=label)
    toeplitz_suite(spec, table, N, report, seed=seed, n_symbols=5, label=label)
    berezin_suite(spec, table, N, report, seed=seed, n_tuples=3, label=label)
    pluriharmonic_suite(spec, table, N, report, seed=seed, label=label)
    cauchy_suite(spec, table, N, report, seed=seed, n_tuples=3, label=label)
