"""
The maps U^(r-2k) from rank k to rank r-k are bijective.

Small cases use Bareiss determinants; n = 6 uses rank modulo a random prime,
which can only certify nonsingularity, never refute it.
"""
from weaksperner.exactlinalg import determinant_exact, nonsingular_certificate
from weaksperner.sl2 import build_triple, raising_power_block

T = build_triple(3)
for k in (0, 1):
    B = raising_power_block(T, k)
    print(f"n=3 k={k}: block {B.to_dense()} det {determinant_exact(B)}")

for n in range(4, 6):
    T = build_triple(n)
    dets = [determinant_exact(raising_power_block(T, k)) for k in range((T.r + 1) // 2)]
    print(f"n={n}: determinants {dets}")

T = build_triple(6)
for k in range((T.r + 1) // 2):
    cert = nonsingular_certificate(raising_power_block(T, k), seed=k)
    print(f"n=6 k={k}: size {cert.dimension:3d}  {cert.verdict.name} via {cert.method} "
          f"(p={cert.prime})")
