import json
import math

import numpy as np
import pytest

from hankel_asym.errors import QuadratureNotConverged, SymbolError
from hankel_asym.symbol import (
    CirclePoint,
    Symbol,
    builtin,
    evaluate,
    fourier_coefficient,
    fourier_coefficient_quad,
    fourier_coefficients,
    hilbert_psi,
    indicator_eta,
    jump_height,
    load_symbol,
    model_symbol,
    sup_norm,
    symbol_from_dict,
    symbol_to_dict,
)

PI = math.pi


def test_circle_point_normalises():
    assert CirclePoint(-PI / 2) == CirclePoint(3 * PI / 2)
    assert CirclePoint(2 * PI) == CirclePoint(0)
    assert CirclePoint(2 * PI - 1e-13) == CirclePoint(0)
    assert CirclePoint.from_complex(1j).theta == pytest.approx(PI / 2)
    assert CirclePoint(PI / 2).conj() == CirclePoint(3 * PI / 2)


def test_hilbert_coefficients():
    c = fourier_coefficients(hilbert_psi(), 10)
    assert np.allclose(c, 1 / (PI * np.arange(1, 11)), atol=1e-16, rtol=0)


def test_eta_coefficients():
    c = fourier_coefficients(indicator_eta(), 9)
    k = np.arange(1, 9)
    assert c[0] == 0.5
    assert np.allclose(c[1:], np.sin(PI * k / 2) / (PI * k), atol=1e-16, rtol=0)
    assert np.all(c[2::2] == 0)


def test_model_symbol_coefficient():
    # coefficients z^k / (i pi (k+1))
    assert fourier_coefficient(model_symbol(1j), 2) == pytest.approx(1j / (3 * PI), abs=1e-16)
    assert fourier_coefficient(model_symbol(-1), 3) == pytest.approx(-1 / (4j * PI), abs=1e-16)


@pytest.mark.parametrize("sym", [hilbert_psi(), indicator_eta(), model_symbol(np.exp(0.7j)),
                                 Symbol(jump_terms=((0.3, 1.0), (0.2j, 4.0)), smooth_part=((2, 0.1),))])
def test_coefficients_match_quadrature(sym):
    for k in (0, 1, 2, 3, 10, 63, 200, 512):
        assert abs(fourier_coefficient(sym, k) - fourier_coefficient_quad(sym, k)) < 1e-8


def test_quadrature_reports_failure():
    with pytest.raises(QuadratureNotConverged):
        fourier_coefficient_quad(hilbert_psi(), 5, tol=1e-30)


def test_pointwise_values():
    h = hilbert_psi()
    assert evaluate(h, PI) == pytest.approx(0, abs=1e-16)
    # right limit at the jump
    assert evaluate(h, 0.0) == pytest.approx(1j)
    assert evaluate(h, 2 * PI - 1e-6) == pytest.approx(-1j, abs=1e-5)
    e = indicator_eta()
    assert evaluate(e, 0.1) == 1 and evaluate(e, PI) == 0 and evaluate(e, 5.0) == 1


def test_jump_heights():
    assert jump_height(hilbert_psi(), CirclePoint(0)) == 1j
    assert jump_height(hilbert_psi(), CirclePoint(PI)) == 0
    e = indicator_eta()
    assert jump_height(e, CirclePoint(PI / 2)) == -0.5
    assert jump_height(e, 1j) == -0.5
    assert jump_height(e, -1j) == 0.5
    # jump heights agree with the pointwise values
    for sym in (hilbert_psi(), e):
        for j in sym.jumps():
            t = j.location.theta
            half = (evaluate(sym, t + 1e-9) - evaluate(sym, t - 1e-9)) / 2
            assert abs(half - j.kappa) < 1e-6


def test_sup_norms():
    assert sup_norm(hilbert_psi()) == pytest.approx(1.0)
    assert sup_norm(indicator_eta()) == 1.0


def test_validation():
    with pytest.raises(SymbolError):
        Symbol(jump_terms=((0.5, 0.0), (0.5, 2 * PI)))
    with pytest.raises(SymbolError):
        symbol_from_dict({"jumps": [{"theta": 0.0, "re": 2.0}]})
    with pytest.raises(SymbolError):
        symbol_from_dict({"jumps": [{"theta": 0.0}]})
    with pytest.raises(SymbolError):
        builtin("nope")


def test_json_round_trip(tmp_path):
    sym = Symbol(jump_terms=((0.25, 1.0), (0.25j, 2.5)), smooth_part=((1, 0.1),))
    d = symbol_to_dict(sym)
    assert symbol_from_dict(json.loads(json.dumps(d))) == sym
    assert symbol_from_dict({"builtin": "indicator_eta"}) == indicator_eta()
    p = tmp_path / "s.json"
    p.write_text(json.dumps(d))
    assert load_symbol(p) == sym
    p.write_text("{not json")
    with pytest.raises(SymbolError):
        load_symbol(p)
