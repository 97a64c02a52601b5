import math
from dataclasses import replace

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from zerogap.errors import AccuracyError, DomainError, IncompletenessError
from zerogap.explicit_formula import (
    ExplicitFormulaReport,
    ell,
    ell_grid,
    rhs,
    verify,
    zero_sum,
)
from zerogap.extremal import selberg_minorant
from zerogap.lfunctions import FunctionalEquation, LogDerivativeCoefficients
from zerogap.special_math import DecayEnvelope, digamma, integrate_interval

DELTA0 = math.log(2.0) / (2.0 * math.pi)
NU2 = 12.4687522615131728082

# frozen from a tol=1e-10 run, cross-checked by an independent quadrature
# route (no tail decomposition) and a 30-digit core-integral oracle
ELL_AT_ZERO = 0.29198301495782886
ELL_AT_NU2 = 9.284729207160758
CORE_40 = 42.8583448007978153  # int_{-40}^{40} Re psi(1/4 + it/2) S(t) dt


def test_ell_regression_values(cert_minorant):
    assert ell(0.0, cert_minorant) == pytest.approx(ELL_AT_ZERO, abs=1e-7)
    assert ell(1j * NU2, cert_minorant) == pytest.approx(ELL_AT_NU2, abs=1e-7)


def test_core_integral_oracle(cert_minorant):
    s = cert_minorant
    res = integrate_interval(
        lambda t: np.real(digamma(0.25 + 0.5j * np.asarray(t))) * np.asarray(s.value(t)),
        -40.0, 40.0, 1e-11,
    )
    assert res.value == pytest.approx(CORE_40, abs=1e-10)


def test_ell_conjugation_symmetry(cert_minorant):
    a = ell(2.0 + 3.0j, cert_minorant)
    b = ell(2.0 - 3.0j, cert_minorant)
    assert a == pytest.approx(b, abs=2e-8)


def test_ell_convention_identity(cert_minorant):
    # literal at mu/2 is the same kernel as halved at mu, exactly
    for mu in (0.8, 1.4 + 7.3j, 12.0j):
        assert ell(mu / 2, cert_minorant, "literal") == ell(mu, cert_minorant)


def test_ell_large_re_asymptote(cert_minorant):
    mu = 4000.0
    got = ell(mu, cert_minorant)
    a = 0.25 + mu / 2.0
    want = cert_minorant.integral * (float(np.real(digamma(a + 0j))) - math.log(math.pi))
    assert got == pytest.approx(want, rel=1e-4)


def test_ell_crude_route_agrees(cert_minorant):
    # strip the structured tail: forces the generic log-envelope path
    crude = replace(
        cert_minorant,
        envelope=DecayEnvelope(m=cert_minorant.envelope.m,
                               t0=cert_minorant.envelope.t0, tail=None),
    )
    for mu in (0.0, 3.0 + 40.0j):
        assert ell(mu, crude, tol=1e-4) == pytest.approx(
            ell(mu, cert_minorant), abs=5e-4)


def test_ell_rejects_left_halfplane(cert_minorant):
    with pytest.raises(DomainError):
        ell(-0.5, cert_minorant)
    with pytest.raises(DomainError):
        ell(1.0, cert_minorant, "other")


@settings(max_examples=10)
@given(st.floats(min_value=0.0, max_value=5.0),
       st.floats(min_value=0.0, max_value=30.0))
def test_ell_conjugation_property(cert_minorant, x, y):
    mu = complex(x, y)
    assert ell(mu, cert_minorant, tol=1e-6) == pytest.approx(
        ell(mu.conjugate(), cert_minorant, tol=1e-6), abs=1e-5)


def test_ell_grid_matches_pointwise(cert_minorant):
    re_v = np.arange(0.0, 2.0 + 1e-9, 0.25)
    im_v = np.arange(0.0, 200.0 + 1e-9, 0.25)
    grid = ell_grid(cert_minorant, re_v, im_v)
    bound = ell_grid.last_error_bound
    for (i, j) in ((0, 0), (3, 100), (8, 800), (5, 399), (0, 800)):
        p = ell(complex(re_v[i], im_v[j]), cert_minorant)
        assert abs(grid[i, j] - p) < bound
        assert abs(grid[i, j] - p) < 5e-5


def test_ell_grid_input_validation(cert_minorant):
    with pytest.raises(DomainError):
        ell_grid(cert_minorant, [0.0], [0.0, 0.1])  # step not on the lattice
    with pytest.raises(DomainError):
        ell_grid(cert_minorant, [-1.0], [0.0])
    crude = replace(cert_minorant,
                    envelope=DecayEnvelope(m=1.0, t0=30.0, tail=None))
    with pytest.raises(DomainError):
        ell_grid(crude, [0.0], [0.0])


def _fe(spectral, q=1.0):
    return FunctionalEquation(degree=len(spectral), conductor=q,
                              spectral=tuple(spectral), root_number=1.0 + 0.0j)


def test_rhs_conductor_linearity(cert_minorant, bundled):
    r1 = rhs(bundled.fe, cert_minorant)
    r2 = rhs(_fe(bundled.fe.spectral, q=2.0), cert_minorant)
    shift = math.log(2.0) / math.pi * cert_minorant.integral
    assert r2.rhs_total - r1.rhs_total == pytest.approx(shift, abs=1e-12)
    assert r1.rhs_conductor == 0.0
    assert r1.rhs_primes == 0.0


def test_rhs_archimedean_pairing(cert_minorant, bundled):
    r = rhs(bundled.fe, cert_minorant)
    arch = r.rhs_archimedean
    assert len(arch) == 4
    # conjugate spectral parameters share the integral exactly (cache hit)
    assert arch[0] == arch[1] and arch[2] == arch[3]


def test_rhs_total_permutation_invariant():
    rep = ExplicitFormulaReport(
        rhs_conductor=0.3, rhs_archimedean=(0.1, -0.7, 1.9, 0.05),
        rhs_primes=0.01, convention="halved", tolerance_budget=0.0,
    )
    rep2 = replace(rep, rhs_archimedean=(1.9, 0.05, 0.1, -0.7))
    assert rep.rhs_total == rep2.rhs_total


def test_rhs_prime_sum_gate():
    wide = selberg_minorant(-30.0, 30.0, 0.15)  # support radius beyond log2/2pi
    fe = _fe((0j, 0j))
    with pytest.raises(IncompletenessError):
        rhs(fe, wide)
    short = LogDerivativeCoefficients(values={2: 0j}, bound=1)
    with pytest.raises(IncompletenessError):
        rhs(fe, wide, short)


def test_rhs_prime_term_against_direct_quadrature():
    wide = selberg_minorant(-30.0, 30.0, 0.15)
    fe = _fe((0j, 0j))
    c2 = -0.9306216517822974 + 0.0j
    zero = rhs(fe, wide, LogDerivativeCoefficients(values={2: 0j}, bound=2))
    with_primes = rhs(fe, wide, LogDerivativeCoefficients(values={2: c2}, bound=2))
    got = with_primes.rhs_primes
    assert zero.rhs_primes == 0.0
    assert with_primes.rhs_total - zero.rhs_total == pytest.approx(got, abs=1e-14)
    # independent route: c real, f even -> (c/sqrt2) * 2 cos-transform / 2pi
    x2 = math.log(2.0) / (2.0 * math.pi)
    num = integrate_interval(
        lambda t: np.asarray(wide.value(t)) * np.cos(2.0 * math.pi * x2 * np.asarray(t)),
        -4000.0, 4000.0, 1e-7,
    )
    want = c2.real * 2.0 * num.value / math.sqrt(2.0) / (2.0 * math.pi)
    assert got == pytest.approx(want, abs=1e-4)


def test_zero_sum_bundled(cert_minorant, bundled):
    value, tail = zero_sum(bundled, cert_minorant)
    assert value == pytest.approx(4.03665393538893, abs=1e-9)
    assert tail == pytest.approx(5.509495615671456, abs=1e-9)
    assert tail >= 0.0


def test_zero_sum_doubles_self_dual(cert_minorant, bundled):
    sym = sorted([-z for z in bundled.zeros] + list(bundled.zeros))
    direct = float(np.sum(np.asarray(cert_minorant.value(np.array(sym)))))
    value, _ = zero_sum(bundled, cert_minorant)
    assert value == pytest.approx(direct, abs=1e-12)


def test_zero_sum_tail_bound_matches_density_integral(cert_minorant, bundled):
    # closed form vs direct quadrature of the density surrogate
    _, tail = zero_sum(bundled, cert_minorant)
    d, q, T = bundled.fe.degree, bundled.fe.conductor, bundled.t_max
    m = cert_minorant.envelope.m
    rho = lambda t: (math.log(q) + 0.5 * d * np.log((np.abs(t) + 10.0) / (2.0 * math.pi))) / math.pi
    num = integrate_interval(lambda t: rho(t) / t**2, T, 1e10, 1e-9,
                             breakpoints=np.geomspace(T, 1e10, 40))
    assert tail == pytest.approx(2.0 * m * num.value, rel=1e-6)


def test_zero_sum_incomplete_window_rejected(cert_minorant, bundled):
    too_short = replace(bundled, zeros=bundled.zeros[:3], t_max=20.0)
    with pytest.raises(DomainError):
        zero_sum(too_short, cert_minorant)


def test_zero_sum_empty_infinite(cert_minorant, bundled):
    empty = replace(bundled, zeros=(), t_max=math.inf)
    assert zero_sum(empty, cert_minorant) == (0.0, 0.0)


def test_verify_bundled_report(cert_minorant, bundled):
    rep = verify(bundled, cert_minorant)
    assert rep.zero_side == pytest.approx(4.03665393538893, abs=1e-8)
    assert rep.rhs_total == pytest.approx(3.400927782079258, abs=1e-7)
    assert rep.residual == pytest.approx(0.6357261533096721, abs=1e-7)
    assert abs(rep.residual) <= rep.tail_bound + rep.tolerance_budget
    assert math.isfinite(rep.implied_log_Q)
    assert rep.implied_log_Q == pytest.approx(0.055081473846852344, abs=1e-7)
    assert rep.convention == "halved"
    d = rep.to_dict()
    for key in ("zero_side", "tail_bound", "rhs_conductor", "rhs_archimedean",
                "rhs_primes", "rhs_total", "residual", "implied_log_Q",
                "convention", "tolerance_budget"):
        assert key in d
    assert d["rhs_total"] == pytest.approx(
        d["rhs_conductor"] + sum(d["rhs_archimedean"]) + d["rhs_primes"], abs=1e-14)


def test_verify_flags_convention_mismatch(cert_minorant, bundled):
    # the bundled zeros satisfy the halved normalization; reading the same
    # spectral parameters literally must flunk the consistency check
    rep_h = verify(bundled, cert_minorant, "halved")
    rep_l = verify(bundled, cert_minorant, "literal")
    assert abs(rep_h.residual) <= rep_h.tail_bound + rep_h.tolerance_budget
    assert abs(rep_l.residual) > rep_l.tail_bound + rep_l.tolerance_budget
    assert rep_h.zero_side == rep_l.zero_side
    assert rep_l.implied_log_Q < 0.0  # an impossible conductor: Q < 1
