"""Two-term identities x1 atan(z1) + x2 atan(z2) = pi/4 with z = 2^a/b or b/2^a.

Enumerate every candidate over the finite ranges, keep what verifies, and
split the result into sporadic solutions and members of the two families.

Run: python3 demos/03_power_of_two_census.py
"""
from __future__ import annotations

from fractions import Fraction

from machin.catalog import SPORADIC, brute_force_report, in_parametric_family, parametric_family
from machin.formula import verify

rep = brute_force_report()
print(f"candidates sent to the verifier: {rep.candidates_checked}")
for s in sorted(rep.hits):
    tag = "family" if in_parametric_family(s) else "sporadic"
    print(f"  {tag:8s} {s}")

sporadic = {s for s in rep.hits if not in_parametric_family(s)}
print("matches the ten sporadic solutions:", sporadic == set(SPORADIC))

# widen the screen so denominators 3 and 6 reach the verifier too
wide = brute_force_report(screen=Fraction(1, 40))
print(f"d in (3, 6): {wide.d36_candidates} candidates, {wide.d36_valid} valid")

ok = all(verify(parametric_family(w, a).to_formula()).valid for w in (1, 2) for a in range(1, 17))
print("families verify for a = 1..16:", ok)
