import math

import pytest
from hypothesis import given, strategies as st

from zerogap.errors import DomainError
from zerogap.explicit_formula import rhs
from zerogap.extremal import fejer, windowed_fejer
from zerogap.lfunctions import FunctionalEquation
from zerogap.region_scan import (
    VERDICTS,
    RegionClassification,
    classify_point,
    scan_region,
    scan_to_csv,
    _verdict,
)

DELTA0 = math.log(2.0) / (2.0 * math.pi)

GOLDEN_CSV = (
    "# t0 = 14.13\n"
    "# delta = 0.1103178001\n"
    "# Q = 1\n"
    "# step = 1\n"
    "# convention = halved\n"
    "nu1,nu2,fejer_rhs,windowed_rhs,verdict\n"
    "0,0,-7.022135793,-1655.828789,Impossible\n"
    "0,1,-6.889422023,-1635.541227,Impossible\n"
    "1,0,-6.889422023,-1635.541227,Impossible\n"
    "1,1,-6.756708253,-1615.253665,Impossible\n"
)


def test_classify_known_points():
    origin = classify_point(0.0, 0.0)
    assert origin.verdict == "Impossible"
    assert origin.fejer_rhs == pytest.approx(-7.022135793079552, abs=1e-6)
    assert origin.windowed_rhs == pytest.approx(-1655.82878945231, abs=1e-3)

    example = classify_point(4.72095103638565339773, 12.4687522615131728082)
    assert example.verdict == "Unconstrained"
    assert example.fejer_rhs == pytest.approx(0.7121190042667991, abs=1e-6)
    assert example.windowed_rhs == pytest.approx(-50.23250873021476, abs=1e-4)

    far = classify_point(50.0, 50.0)
    assert far.verdict == "ForcedLowZero"
    assert far.fejer_rhs == pytest.approx(11.961424472760486, abs=1e-6)
    assert far.windowed_rhs == pytest.approx(2780.088492960705, abs=1e-3)
    assert far.fejer_rhs > origin.fejer_rhs


def test_classify_symmetric_exactly():
    a = classify_point(3.0, 7.5)
    b = classify_point(7.5, 3.0)
    assert a.fejer_rhs == b.fejer_rhs
    assert a.windowed_rhs == b.windowed_rhs
    assert a.verdict == b.verdict


def test_classify_matches_rhs_assembly():
    # same Fejer kernel, same spectral data, assembled through the general
    # report path: the sums must agree bit for bit
    nu1, nu2 = 2.0, 5.0
    fk = fejer(DELTA0)
    fe = FunctionalEquation(degree=4, conductor=1.0,
                            spectral=(1j * nu1, -1j * nu1, 1j * nu2, -1j * nu2),
                            root_number=1.0 + 0.0j)
    rep = rhs(fe, fk)
    assert classify_point(nu1, nu2).fejer_rhs == rep.rhs_total


def test_verdict_logic():
    assert _verdict(-1.0, -5.0) == "Impossible"
    assert _verdict(-1e-300, 5.0) == "Impossible"
    assert _verdict(0.0, 5.0) == "ForcedLowZero"
    assert _verdict(1.0, 5.0) == "ForcedLowZero"
    assert _verdict(1.0, 0.0) == "Unconstrained"
    assert _verdict(1.0, -5.0) == "Unconstrained"


@given(st.floats(allow_nan=False, allow_infinity=False),
       st.floats(allow_nan=False, allow_infinity=False))
def test_verdict_total(fr, wr):
    assert _verdict(fr, wr) in VERDICTS


def test_classification_validation():
    with pytest.raises(DomainError):
        RegionClassification(nu1=0.0, nu2=0.0, fejer_rhs=0.0,
                             windowed_rhs=0.0, verdict="Maybe")
    with pytest.raises(DomainError):
        classify_point(-1.0, 0.0)
    with pytest.raises(DomainError):
        classify_point(0.0, 0.0, t0=0.0)
    with pytest.raises(DomainError):
        classify_point(0.0, 0.0, delta=0.2)
    with pytest.raises(DomainError):
        classify_point(0.0, 0.0, conductor=0.5)


def test_scan_matches_pointwise():
    rows = scan_region(1.0, 0.5)
    assert len(rows) == 9
    nus = [0.0, 0.5, 1.0]
    k = 0
    for n1 in nus:
        for n2 in nus:
            direct = classify_point(n1, n2)
            row = rows[k]
            k += 1
            assert (row.nu1, row.nu2) == (n1, n2)
            assert row.fejer_rhs == direct.fejer_rhs
            assert row.windowed_rhs == direct.windowed_rhs
            assert row.verdict == direct.verdict


def test_scan_threaded_deterministic():
    a = scan_region(1.0, 1.0, threads=1)
    b = scan_region(1.0, 1.0, threads=3)
    assert a == b


def test_scan_csv_golden():
    rows = scan_region(1.0, 1.0)
    text = scan_to_csv(rows, t0=14.13, delta=DELTA0, conductor=1.0,
                       step=1.0, convention="halved")
    assert text == GOLDEN_CSV


def test_scan_validation():
    with pytest.raises(DomainError):
        scan_region(1.0, 0.0)
    with pytest.raises(DomainError):
        scan_region(-1.0, 0.5)


def test_windowed_kernel_is_what_scan_uses():
    # ForcedLowZero reads a positive windowed total as mass that only
    # ordinates inside (-t0, t0) can supply
    w = windowed_fejer(14.13, DELTA0)
    assert w.value(0.0) > 0.0
    assert w.value(20.0) <= 0.0
    assert w.positivity_window == (-14.13, 14.13)
