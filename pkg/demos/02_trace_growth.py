"""Traces of powers of H_N grow like mu_k log N.

The k = 1 trace of the Hilbert matrix is sum 1 / (pi (2n + 1)), so its slope
is 1/(2 pi) almost immediately; higher powers converge more slowly.
"""

import numpy as np

from hankel_asym import GridSpec, hilbert_psi, indicator_eta, model_symbol, mu_k, verify_traces

grid = GridSpec.dyadic(64, 2048)

for name, sym in [("hilbert", hilbert_psi()), ("indicator", indicator_eta()), ("psi_i alone", model_symbol(1j))]:
    print(name)
    for rep in verify_traces(sym, 4, grid):
        k = int(rep.label.rsplit("=", 1)[1])
        print(f"   k = {k}   mu_k = {mu_k(sym, k).mu.real:+.6f}   last slope = {rep.final_slope.real:+.6f}")

# odd powers only see jumps at +1 and -1, so the indicator's odd traces stay bounded
traces = [v for _, v in verify_traces(indicator_eta(), 1, grid)[0].per_n]
print("indicator Tr H_N:", np.round(np.real(traces), 4))
