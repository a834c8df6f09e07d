#!/usr/bin/env python3
"""Demo: how one paper moves a journal's citation average.

Walks the exact volatility math on a small and a large journal, then shows
the asymmetric reward structure: the best case scales like c/N, the worst
case is capped at -f1/(N+1).

Usage:
    ./01_single_paper_effects.py
"""

from fractions import Fraction

from volatix import (
    VolatilityInputs,
    benefit_approx,
    classify_paper,
    penalty_bound,
    volatility_exact,
    volatility_relative_exact,
)
from volatix.display import decimal_str, percent_str


def show_scenario(label, f1, n1, c):
    inputs = VolatilityInputs(Fraction(str(f1)), n1, c)
    delta = volatility_exact(inputs)
    effect = classify_paper(c, inputs.f1)
    print(f"  {label}")
    print(f"    journal: f1 = {f1}, N1 = {n1};  candidate paper: c = {c}")
    print(f"    classification: {effect.value}")
    print(f"    delta_f = {decimal_str(delta)}  (exact {delta})")
    if inputs.f1 > 0:
        rel = volatility_relative_exact(inputs)
        print(f"    delta_f_rel = {percent_str(rel)}")
    print()


def main():
    print("=" * 64)
    print("  Single-paper volatility of a citation average")
    print("=" * 64)
    print()

    print("The same highly cited paper in journals of different size:")
    show_scenario("small review journal", 5.00, 5, 87)
    show_scenario("mid-sized journal", 5.00, 170, 87)
    show_scenario("large journal", 5.00, 2000, 87)

    print("Large journals barely notice even spectacular papers:")
    print(f"  c=100 in N1=2000:   benefit ~ {decimal_str(benefit_approx(100, 2000))}")
    print(f"  c=1000 in N1=20000: benefit ~ {decimal_str(benefit_approx(1000, 20000))}")
    print()

    print("The downside is bounded: an uncited paper costs at most f1/(N1+1).")
    for f1, n1 in [(10, 99), (171.83, 52), (2.5, 2000)]:
        floor = penalty_bound(Fraction(str(f1)), n1)
        print(f"  f1 = {f1:>7}, N1 = {n1:>5}: worst case delta_f = {decimal_str(floor)}")
    print()

    print("Break-even: a paper cited exactly f1 times changes nothing.")
    inputs = VolatilityInputs(Fraction(3), 9, 3)
    print(f"  f1 = 3, c = 3  ->  delta_f = {volatility_exact(inputs)}")


if __name__ == "__main__":
    main()
