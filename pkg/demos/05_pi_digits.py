"""Digits of pi from several verified formulas, and what the measure predicts.

Run: python3 demos/05_pi_digits.py [digits]
"""
from __future__ import annotations

import sys

from machin.catalog import named_formula
from machin.formula import lehmer_measure
from machin.generator import theorem3_formula
from machin.pi_engine import benchmark, compute_pi

digits = int(sys.argv[1]) if len(sys.argv) > 1 else 1000

fs = {name: named_formula(name) for name in ("machin", "euler", "gi", "gi2")}
fs["k=4 row"] = theorem3_formula(4).formula      # an argument with 532644 digits

outputs = {name: compute_pi(f, digits) for name, f in fs.items()}
print(outputs["machin"][:60] + "...")
print("all agree:", len(set(outputs.values())) == 1)

print("\nformula   mu        terms")
for (name, f), row in zip(fs.items(), benchmark(list(fs.values()), digits)):
    print(f"{name:9s} {lehmer_measure(f):.6g}  {row.total_terms:6d}  {row.seconds:.3f}s")
# terms ~ digits * mu / 2; the huge-argument row needs few terms, but each is expensive
