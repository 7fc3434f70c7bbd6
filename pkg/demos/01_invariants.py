"""
Numerical invariants of Fermat surfaces
=======================================

The degree-m Fermat surface x0^m + x1^m + x2^m + x3^m = 0 has second Betti
number b2 = m^3 - 4m^2 + 6m - 2. Over C its Picard number is 1 + #B_m, where
B_m is a set of characters of (Z/m)^4. Lines account for the decomposable
characters D_m; when D_m = B_m they span NS(S) over Q.
"""
from fermatlines.combinatorics import character_sets, rational_generation_test, surface_invariants

# the degrees used throughout the demos
for m in (4, 5, 6, 7, 11, 13):
    inv = surface_invariants(m)
    print(f"m={m:3d}  b2={inv.b2:5d}  pg={inv.pg:4d}  rho={inv.rho:4d}  lambda={inv.lam:5d}"
          f"  lines span over Q: {rational_generation_test(m)}")

# lines span rationally exactly when m is prime to 6 (and for m = 4)
print("degrees <= 40 where lines do not span:",
      [m for m in range(4, 41) if not rational_generation_test(m)])

# the character sets themselves, for a small degree
cs = character_sets(5)
print("m=5: #A =", len(cs.A), " #B =", len(cs.B), " #D =", len(cs.D))
print("first few decomposable characters:", cs.D[:4].tolist())
