"""The square of the infinite Hilbert matrix, compressed to N x N.

1_N H^2 1_N differs from (1_N H 1_N)^2 by a matrix whose trace stays bounded,
so both share the log N slope -arcsin(beta)^2 / pi^2.
"""

import math

import numpy as np

from hankel_asym import GridSpec, compressed_square, corollary_square_check, hilbert_psi, tail_hs, truncate

m = compressed_square(6)
print("top corner of 1_N H^2 1_N (times pi^2):")
print(np.round(m[:4, :4] * math.pi**2, 5))

h = truncate(hilbert_psi(), 6).entries
print("same corner of H_N^2 (times pi^2):")
print(np.round((h @ h)[:4, :4] * math.pi**2, 5))

rep = corollary_square_check(0.9, GridSpec.dyadic(64, 2048))
print("\npredicted slope", rep.predicted_slope.real)
for (n, _), s, d in zip(rep.per_n[1:], rep.slopes, rep.diagnostics["discrepancy"][1:]):
    print(f"N = {n:5d}  slope {s.real:+.5f}  Tr M - Tr H_N^2 = {d[0]:.6f}  (closed form {tail_hs(n):.6f})")
print("limit log 2 / pi^2 =", math.log(2) / math.pi**2)
