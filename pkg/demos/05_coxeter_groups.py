"""
The same certificate for the weak orders of other finite Coxeter groups.
"""
import time

from weaksperner.coxeter import build_weak_order_coxeter, conjecture_check, parse_coxeter
from weaksperner.poset import rank_profile

# I2(5) is the dihedral group of order 10; its weak order is two chains glued.
P = build_weak_order_coxeter(parse_coxeter("I2:5"))
print("I2(5):", [str(w) for w in P.elements], rank_profile(P).sizes)

for label in ["I2:7", "A3", "B3", "H3", "A4", "B4", "D4"]:
    t0 = time.perf_counter()
    cert = conjecture_check(parse_coxeter(label))
    print(f"{label:5s} order {cert.metadata['group_order']:5d}  "
          f"Peck={cert.peck}  ({time.perf_counter() - t0:.2f}s)")

# F4 (1152 elements) takes under a minute; H4 (14400) needs allow_large=True.
