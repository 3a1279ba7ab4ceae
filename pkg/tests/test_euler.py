import pytest
from hypothesis import given, strategies as st

from tlat import QuiverRepDims, admissibility_contradiction, chi_line, homfp_euler
from tlat.euler import format_report


def test_chi_line_values():
    # chi(O(d)) = (d+1)(d+2)/2 on the plane
    assert chi_line(0, 0) == 1
    assert chi_line(1, 2) == 3
    assert chi_line(0, 2) == 6
    assert chi_line(2, 1) == 0
    assert chi_line(3, 0) == 1


@given(st.integers(0, 100), st.integers(0, 100))
def test_balanced_pairing_is_minus_product(w, wp):
    F = QuiverRepDims(2 * w, w)
    G = QuiverRepDims(2 * wp, wp)
    assert F.balanced and G.balanced
    assert homfp_euler(F, G) == -w * wp


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_pairing_formula(u, w, up, wp):
    assert homfp_euler(QuiverRepDims(u, w), QuiverRepDims(up, wp)) == u * up + w * wp - 3 * u * wp


@pytest.mark.parametrize("w", range(1, 30))
def test_admissibility_forces_w_prime_one(w):
    rep = admissibility_contradiction(w)
    assert rep["forced_w_prime"] == 1 and rep["contradiction"] and not rep["vacuous"]
    assert rep["chi_F_G"] == -w


def test_w_zero_is_vacuous():
    rep = admissibility_contradiction(0)
    assert rep["vacuous"] and not rep["contradiction"]
    assert "vacuous" in format_report(rep)


def test_errors():
    with pytest.raises(ValueError):
        admissibility_contradiction(-1)
    with pytest.raises(ValueError):
        QuiverRepDims(-1, 0)
    with pytest.raises(ValueError):
        homfp_euler(QuiverRepDims(1, 1, 3), QuiverRepDims(1, 1, 2))


def test_report_text():
    text = format_report(admissibility_contradiction(2))
    assert "w' = 1" in text and "contradiction" in text
