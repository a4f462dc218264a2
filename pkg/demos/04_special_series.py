"""The arcsin series behind the predictions, checked three ways."""

import cmath
import math

from hankel_asym.special import arcsin_c, arcsin_sq_of_square, beta_half, closed_S, log_integral, sech_integral, series_S

for v in (0.5, -0.5, 0.9, 1.0, 1j, cmath.exp(2j)):
    print(f"v = {v!s:>24}   series {series_S(v):.12f}   closed {closed_S(v):.12f}")

print()
for v in (-0.9, 0.0, 0.5, 0.9):
    print(f"v = {v:+.1f}   -S(v) = {-series_S(v).real:+.10f}   integral = {log_integral(v):+.10f}")

print()
for m in (1, 2, 5, 20):
    print(f"m = {m:2d}   sech integral {sech_integral(m):.12f}   B(m/2,1/2)/(2 pi^2) {beta_half(m) / (2 * math.pi**2):.12f}")

# arcsin^2 of a square root does not care which root is taken
u = 0.3 - 0.8j
s = cmath.sqrt(u)
print("\n", arcsin_sq_of_square(u), arcsin_c(s) ** 2, arcsin_c(-s) ** 2)
