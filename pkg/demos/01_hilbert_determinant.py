"""How fast does det(I - beta H_N) decay for the Hilbert matrix?

Runs a dyadic sweep and prints the finite-difference slope of log det
against log N next to the predicted power.
"""

import math

from hankel_asym import GridSpec, TruncationCache, gamma_exponent, hilbert_psi, verify

sym = hilbert_psi()
grid = GridSpec.dyadic(64, 2048)
cache = TruncationCache()

for beta in (0.3, 0.6, 0.9, -0.6):
    rep = verify(sym, beta, grid, cache=cache)
    pred = gamma_exponent(sym, beta)
    print(f"beta = {beta:+.1f}   predicted exponent {pred.exponent.real:.5f}")
    for (n, _), s in zip(rep.per_n[1:], rep.slopes):
        print(f"   N = {n:5d}   slope {s.real:+.5f}")
    print(f"   relative error of last slope: {rep.final_rel_err:.2%}\n")

# at beta = 1 the formula gives exactly 3/8
print("exponent at beta = 1:", gamma_exponent(sym, 1, diagnostic=True).exponent.real, "=", 3 / 8)
print("exponent at beta = 1/2 equals 7/72:", math.isclose(gamma_exponent(sym, 0.5).exponent.real, 7 / 72))
