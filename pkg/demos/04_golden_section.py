"""pi/4 = a atan(phi^kappa) + b atan(phi^ell) in exact Q(i, sqrt5) arithmetic.

Run: python3 demos/04_golden_section.py
"""
from __future__ import annotations

from machin.golden import (golden_norm, golden_search, odd_prime_factors,
                           sixteen_quadruples, verify_golden)

print("kappa  N(1 + i phi^kappa)  odd primes")
for k in range(1, 13):
    n = golden_norm(k)
    print(f"{k:5d}  {n:18d}  {sorted(odd_prime_factors(n))}")

print("\npairs with equal odd prime sets:", golden_search(12))

print("\n a     b    kappa ell  valid")
for q in sixteen_quadruples():
    a, b, k, l = str(q).split()
    print(f"{a:>5s} {b:>5s} {k:>4s} {l:>3s}  {verify_golden(q)}")
