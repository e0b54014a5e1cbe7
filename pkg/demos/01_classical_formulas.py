"""Verify the classical two-term formulas and print their Lehmer measures.

Run: python3 demos/01_classical_formulas.py
"""
from __future__ import annotations

from machin.catalog import NAMED, named_formula
from machin.exact import GaussRat, gauss_pow
from machin.formula import lehmer_measure, make_formula, print_formula, verify

# Machin's formula reduces to one Gaussian integer identity
lhs = gauss_pow(GaussRat(5, 1), 4)
rhs = GaussRat(2) * GaussRat(1, 1) * GaussRat(239, 1)
print(f"(5+i)^4 = {lhs}   2(1+i)(239+i) = {rhs}")

for name in NAMED:
    f = named_formula(name)
    rep = verify(f)
    text = print_formula(f)
    if len(text) > 70:
        text = text[:67] + "..."
    print(f"{name:8s} {rep.record():45s} mu={lehmer_measure(f):.6g}  {text}")

# near misses: one digit off, and the right direction on the wrong branch
for f in (make_formula([(4, "1/5"), (-1, "1/238")], "1/4"),
          make_formula([(4, "1/5"), (-1, "1/239")], "9/4")):
    rep = verify(f)
    print(f"{print_formula(f):40s} {rep.record()} {rep.reasons}")
