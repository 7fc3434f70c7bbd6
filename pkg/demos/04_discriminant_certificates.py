"""
Certification by discriminants
==============================

For small m the lines span a lattice N, and lines plus translates of D_p span
a full-rank lattice N_p. If gcd(disc N, disc N_p) is squarefree the two
together force N to be primitive, so lines generate NS(S).
"""
from fermatlines.certify import certify_discriminant

for m in (4, 5, 7):
    cert = certify_discriminant(m)
    d = cert.discs
    print(f"m={m}: disc N = {d['N']['value']}   disc N_p factors {d['N_p']['factorization']}"
          f"   -> {cert.verdict}")

print(certify_discriminant(5).to_json(indent=None)[:300], "...")
