#!/usr/bin/env python3
"""Z2 x Z2 on R^4: equivariant complement dimensions per degree, compared with
the span of the products u3 * u1^a u2^b u3^(2c) u4^(2d).

    python scripts/z2xz2_dimensions.py --max-degree 8
"""
import argparse
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from omeganf.engine import complement_basis, equivariant_complement
from omeganf.polycore.subspace import GradedSubspace
from omeganf.problems import z2z2_invariants, z2z2_space


@dataclass
class Config:
    lam: Fraction = Fraction(1)
    max_degree: int = 6


def ansatz(degree: int) -> list:
    u = z2z2_invariants()
    rest = degree - 2
    out = []
    if rest < 0 or rest % 2:
        return out
    for a, b, c, d in product(range(rest // 2 + 1), repeat=4):
        if 2 * a + 2 * b + 4 * c + 4 * d == rest:
            out.append(u["u3"] * u["u1"] ** a * u["u2"] ** b * u["u3"] ** (2 * c) * u["u4"] ** (2 * d))
    return out


def main(cfg: Config) -> None:
    prob = z2z2_space(cfg.lam)
    print(f"{'k':>2} {'dim P^k(S)':>10} {'dim D^k':>8} {'#products':>9} {'rank':>5} {'same span':>9} {'time':>7}")
    for k in range(2, cfg.max_degree + 1):
        t0 = time.perf_counter()
        plain = complement_basis(prob.linear_part, prob.omega, k)
        eq = equivariant_complement(prob.linear_part, prob.omega, prob.group, k)
        dt = time.perf_counter() - t0
        prods = ansatz(k)
        span = GradedSubspace.span(prods, 4, k)
        print(f"{k:>2} {plain.dim:>10} {eq.dim:>8} {len(prods):>9} {span.dim:>5} {str(span == eq):>9} {dt:>6.2f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--lam", type=Fraction, default=Fraction(1))
    ap.add_argument("--max-degree", type=int, default=6)
    main(Config(**vars(ap.parse_args())))
