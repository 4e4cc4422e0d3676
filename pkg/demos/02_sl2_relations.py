"""
Checking [U, D] = H, [H, U] = 2U and [H, D] = -2D exactly, for n up to 6.
"""
import time

from weaksperner.poset import build_weak_order
from weaksperner.sl2 import build_triple, decompose, verify_sl2

for n in range(2, 7):
    t0 = time.perf_counter()
    report = verify_sl2(build_triple(n))
    dt = time.perf_counter() - t0
    worst = max(r.max_abs_residual for r in report.residuals)
    print(f"n={n}  dim={report.dimension:4d}  ok={report.ok}  max residual={worst}  ({dt:.2f}s)")

# The rank sizes then fix how the module splits into irreducibles.
for n in range(2, 7):
    dec = decompose(build_weak_order(n))
    print(f"n={n}  highest weight -> multiplicity  {dec.multiplicities}")
