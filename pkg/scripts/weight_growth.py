#!/usr/bin/env python3
"""Print the per-letter growth ratios b_{g_i alpha} / b_alpha level by level.

Bounded ratios are the hypothesis behind the absence of nonzero compact
weighted right multi-Toeplitz operators; this experiment shows the trend on
any builtin or user-supplied domain spec.
"""
import argparse

from ncdomains.cli import resolve_spec
from ncdomains.weights import compactness_ratio_test, weights_by_factorization


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--spec", default="hyperball_n2_m2")
    ap.add_argument("--max-len", type=int, default=6)
    args = ap.parse_args()

    spec = resolve_spec(args.spec)
    table = weights_by_factorization(spec, args.max_len)
    report = compactness_ratio_test(table)
    print(f"spec: {args.spec}  (n={spec.n}, m={spec.m}), depth {args.max_len}")
    for i in range(1, spec.n + 1):
        levels = ", ".join(f"{float(v):.4f}" for v in report.level_max[i])
        print(f"letter {i}: max ratio {float(report.max_ratio[i]):.4f}; "
              f"per-level maxima [{levels}]")


if __name__ == "__main__":
    main()
