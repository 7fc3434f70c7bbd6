"""
The lattice spanned by lines
============================

Each of the 3m^2 lines on the surface is labelled (j, k, l): family j and a
pair of m-th roots of unity. Intersection numbers are combinatorial. A fixed
rational basis of rho lines has Gram discriminant m^(3(m-3)^2).
"""
import numpy as np

from fermatlines.linalg import det_exact, det_mod
from fermatlines.lines import (StandardLine, cyclotomic_as_integer, eigendivisor, eigendivisor_pairing,
                               gram_matrix, line_pairing, rational_basis)

m = 5
a, b = StandardLine(1, 0, 0, m), StandardLine(2, 0, 0, m)
print("self-intersection 2 - m:", line_pairing(a, a, m), "  l1(0,0).l2(0,0):", line_pairing(a, b, m))

B = rational_basis(m)
G = gram_matrix(B, m)
print("basis size", len(B), " Gram is symmetric:", bool((G == G.T).all()))

# exact determinant by multimodular CRT
for m in (5, 7):
    d = det_exact(gram_matrix(rational_basis(m), m))
    print(f"m={m}: disc = {d} = {m}^{3 * (m - 3) ** 2}: {d == m ** (3 * (m - 3) ** 2)}")

# modular spot-check at a larger degree
m, p = 17, 1000000007
print(f"m={m}: det mod p matches m^(3(m-3)^2) mod p:",
      det_mod(gram_matrix(rational_basis(m), m), p) == pow(m, 3 * (m - 3) ** 2, p))

# eigendivisors diagonalise the group action: w(alpha).w(-alpha) = -m^3
m, alpha = 5, (1, 4, 2, 3)
w, wn = eigendivisor(1, alpha, m), eigendivisor(1, tuple(-x % m for x in alpha), m)
print("w1(alpha).w1(-alpha) =", cyclotomic_as_integer(eigendivisor_pairing(w, wn, m)))
