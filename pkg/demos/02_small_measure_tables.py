"""Identities n atan(x) - atan(R_3(n, x)) = pi/4 with shrinking Lehmer measure.

x = 1/(4 q_k) for the convergents p_k/q_k of pi, and x a convergent of
pi/2^(m+2) with n = 2^m.  The second argument gets huge (hundreds of millions
of digits for the last rows), so those rows are certified with interval
arithmetic instead of being written out.

Run: python3 demos/02_small_measure_tables.py [k_max]
"""
from __future__ import annotations

import sys
import time

from machin.generator import table1, table1_tsv, table2, table2_tsv

k_max = int(sys.argv[1]) if len(sys.argv) > 1 else 15

t0 = time.perf_counter()
rows = table1(k_max)
print("\n".join(table1_tsv(rows)))
print(f"# routes: {[r.route for r in rows]}  ({time.perf_counter() - t0:.1f}s)\n")

t0 = time.perf_counter()
print("\n".join(table2_tsv(table2((5, 6, 7, 10, 20, 30)))))
print(f"# {time.perf_counter() - t0:.1f}s")

# the measure keeps falling, roughly like 2/log10(q_k)
best = min(rows, key=lambda r: r.measure)
print(f"\nsmallest measure: k={best.label} mu={best.measure:.6g}")
