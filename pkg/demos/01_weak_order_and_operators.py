"""
The weak order on S_3 and its raising and lowering operators.

Run with ``python demos/01_weak_order_and_operators.py``.
"""
from weaksperner.poset import build_weak_order, export_dot, rank_profile
from weaksperner.sl2 import build_triple

# Permutations are words; covers swap an adjacent ascent.
W3 = build_weak_order(3)
print("ranks:", [[str(W3.elements[i]) for i in block] for block in W3.ranks()])
print("profile:", rank_profile(W3).sizes)

# U is supported on weak covers, D on strong down-covers.
T = build_triple(3)
els = T.basis.elements
print("\nU edges (source -> target: weight)")
for r, c, v in sorted(T.U.entries(), key=lambda e: (e[1], e[0])):
    print(f"  {els[c]} -> {els[r]}: {v}")

print("\nD edges")
for r, c, v in sorted(T.D.entries(), key=lambda e: (e[1], e[0])):
    print(f"  {els[c]} -> {els[r]}: {v}")

# H is diagonal, 2 * length - 3 here.
print("\nH diagonal:", [T.H[i, i] for i in range(T.H.rows)])

# Labelled Hasse diagram for Graphviz.
labels = {(c, r): v for r, c, v in T.U.entries()}
print()
print(export_dot(W3, labels))
