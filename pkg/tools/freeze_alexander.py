#!/usr/bin/env python3
"""Regenerate the frozen Alexander-polynomial constants used in the tests.

Computes Delta for each braid word below with sympy's exact rationals via
the reduced Burau representation, normalized so the lowest-degree
coefficient is +1.  This is deliberately written against sympy only -- it
shares no code with the package, so the values it prints are an
independent cross-check of both in-package routes.

sympy is NOT a dependency of the package or its test suite; this script is
run by hand when the frozen constants in tests/ need to be re-derived.

Usage: python3 tools/freeze_alexander.py
"""

import sympy as sp

t = sp.symbols("t")

WORDS = [
    ("1", 2),
    ("1 1 1", 2),
    ("1 1 1 2", 3),
    ("1 -2 1 -2", 3),
    ("1 -2 1 -3 -2", 4),
    ("1 1 1 1 1", 2),
    ("1 1 1 -2 1 -2", 3),
]


def reduced_burau_gen(n, i):
    """(n-1)x(n-1) reduced Burau matrix of sigma_i (1-indexed)."""
    m = sp.eye(n - 1)
    j = i - 1  # row/col index of the strand pair
    if i > 1:
        m[j, j - 1] = t
    m[j, j] = -t
    if i < n - 1:
        m[j, j + 1] = 1
    return m


def alexander(word, n):
    letters = [int(tok) for tok in word.split()]
    b = sp.eye(n - 1)
    for v in letters:
        g = reduced_burau_gen(n, abs(v))
        if v < 0:
            g = g.inv()
        b = b * g
    det = sp.cancel((sp.eye(n - 1) - b).det() * (1 - t) / (1 - t**n))
    poly = sp.Poly(sp.cancel(sp.expand(det) * t ** 20), t)  # clear t^-k
    coeffs = poly.all_coeffs()[::-1]  # ascending
    while coeffs and coeffs[0] == 0:
        coeffs = coeffs[1:]
    if coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    assert coeffs == coeffs[::-1], f"not palindromic: {coeffs}"
    assert abs(sum(coeffs)) == 1 or abs(sp.Poly(coeffs[::-1], t).eval(1)) == 1
    return coeffs


def main():
    for word, n in WORDS:
        coeffs = alexander(word, n)
        delta = sp.Poly(coeffs[::-1], t).as_expr()
        at_one = sum(coeffs)
        print(f'"{word}" (n={n}): {coeffs}   Delta = {delta}   Delta(1) = {at_one}')


if __name__ == "__main__":
    main()
