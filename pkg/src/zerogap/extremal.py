"""Beurling-Selberg extremal functions and Fejer-type kernels.

Every constructor returns a TestFunction: a real-valued function on the
line with quadratic decay, compactly supported Fourier transform, a known
integral, and a positivity window (the interval outside of which the
function is <= 0, or "everywhere" for nonnegative kernels).

The Beurling function B is evaluated on two exact branches,

    B(x) = 1 + 2 (sin pi x / pi)^2 (1/x - psi'(1+x))      for x > -1/2
    B(x) = -1 + 2 (sin pi x / pi)^2 (psi'(-x) + 1/x)      for x <= -1/2

which are equal by the trigamma reflection formula.  The split keeps the
trigamma argument positive and keeps each branch well conditioned on its
domain: the only singular points of the first form are the negative
integers and of the second form x = 0, and neither lies in the branch that
would evaluate it.  At integers sin(pi x) vanishes exactly (the reduction
x - round(x) is exact in floating point), so B(n) = sgn(n) for integer
n != 0 falls out with no special casing.

Beyond the last sign change each function is also carried as an explicit
tail decomposition (smooth part plus amplitude-times-cosine components with
derivative bounds), which is what lets the explicit-formula integrals and
Fourier transforms be finished analytically instead of by brute truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Tuple, Union

import numpy as np

from .errors import AccuracyError, DomainError
from .special_math import (
    DecayEnvelope,
    OscComponent,
    TailDecomposition,
    integrate_line,
    trigamma_real,
    _tetragamma_real,
)

__all__ = [
    "TestFunction",
    "beurling",
    "fejer",
    "fourier_at",
    "selberg_minorant",
    "windowed_fejer",
]

EVERYWHERE = "everywhere"


@dataclass(frozen=True)
class TestFunction:
    """A test function admissible in the explicit formula.

    positivity_window is the open interval outside of which f <= 0, the
    string "everywhere" for nonnegative kernels, or None when no positive
    region could be confirmed.  envelope declares |f(t)| <= M/t^2 beyond
    T0 and optionally carries the structured tail.  fourier_closed, when
    set, is the exact transform (used as a cross-check and fast path; the
    numeric route is fourier_at).
    """

    value: Callable
    integral: float
    support_radius: float
    positivity_window: Union[Tuple[float, float], str, None]
    envelope: DecayEnvelope
    even: bool = True
    fourier_closed: Optional[Callable] = None
    label: str = ""


def _sinpi_over_pi_sq(x: np.ndarray) -> np.ndarray:
    # (sin(pi x)/pi)^2 with exact period-1 argument reduction
    r = x - np.round(x)
    s = np.sin(np.pi * r) / np.pi
    return s * s


def beurling(x):
    """Beurling's extremal majorant of sgn: entire of exponential type 2*pi,
    B(x) >= sgn(x) everywhere, with integral of B - sgn equal to 1."""
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    xv = np.atleast_1d(arr).astype(float)
    out = np.empty(xv.shape)
    s2 = _sinpi_over_pi_sq(xv)

    zero = xv == 0.0
    tiny = ~zero & (np.abs(xv) < 1e-9)  # 1/x overflows near subnormals
    right = (xv > -0.5) & ~zero & ~tiny
    left = xv <= -0.5

    out[zero] = 1.0
    out[tiny] = 1.0 + 2.0 * xv[tiny]  # B = 1 + 2x + O(x^2)
    if right.any():
        xr = xv[right]
        out[right] = 1.0 + 2.0 * s2[right] * (1.0 / xr - trigamma_real(1.0 + xr))
    if left.any():
        xl = xv[left]
        out[left] = -1.0 + 2.0 * s2[left] * (trigamma_real(-xl) + 1.0 / xl)
    return float(out[0]) if scalar else out.reshape(arr.shape)


def _beurling_w(u: np.ndarray) -> np.ndarray:
    # B(u) = sgn(u) + (1 - cos 2 pi u)/pi^2 * w(u) for |u| >= 1/2;
    # w(u) = 1/u - psi'(1+u) on u > 0 and psi'(-u) + 1/u on u < 0.
    u = np.asarray(u, dtype=float)
    out = np.empty(u.shape)
    pos = u > 0
    if pos.any():
        out[pos] = 1.0 / u[pos] - trigamma_real(1.0 + u[pos])
    if (~pos).any():
        un = u[~pos]
        out[~pos] = trigamma_real(-un) + 1.0 / un
    return out


def _beurling_w_deriv(u: float) -> float:
    if u > 0:
        return -1.0 / u**2 - float(_tetragamma_real(1.0 + u))
    return -float(_tetragamma_real(-u)) - 1.0 / u**2


# envelope constants for w, valid for |u| >= 1 (endpoint values
# |w(-1)| = pi^2/6 - 1 ~ 0.645, |w'(-1)| ~ 1.404, |w''(-1)| ~ 4.49,
# decaying like 1/(2u^2), 1/u^3, 3/u^4)
_W_BOUND = 0.70
_DW_BOUND = 1.60
_DDW_BOUND = 5.00


def _bisect(f: Callable[[float], float], lo: float, hi: float, iters: int = 80) -> float:
    flo = f(lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if f(mid) <= 0.0 if flo <= 0.0 else f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _find_window(value: Callable, alpha: float, beta: float, delta: float):
    """Sign-change bracket of value around [alpha, beta]; None if no
    positive point is found inside."""
    mid = 0.5 * (alpha + beta)
    pad = 2.0 / delta
    grid = np.linspace(alpha - pad, beta + pad, 8193)
    vals = value(grid)
    pos = vals > 0.0
    if not pos.any():
        return None
    # maximal positive run containing the most positive point
    k = int(np.argmax(vals))
    i = k
    while i > 0 and pos[i - 1]:
        i -= 1
    j = k
    while j < len(grid) - 1 and pos[j + 1]:
        j += 1
    if i == 0 or j == len(grid) - 1:
        return None  # positive out to the pad: not a confined window
    lo = _bisect(lambda t: float(value(np.array([t]))[0]), grid[i - 1], grid[i])
    hi = _bisect(lambda t: -float(value(np.array([t]))[0]), grid[j], grid[j + 1])
    return (lo, hi)


def selberg_minorant(alpha: float, beta: float, delta: float) -> TestFunction:
    """Selberg's minorant of the indicator of [alpha, beta]:

        S_-(t) = -1/2 (B(delta (alpha - t)) + B(delta (t - beta)))

    S_- <= indicator everywhere, integral = beta - alpha - 1/delta exactly,
    Fourier transform supported in [-delta, delta]."""
    if not (alpha < beta):
        raise DomainError("selberg_minorant requires alpha < beta")
    if not (delta > 0):
        raise DomainError("selberg_minorant requires delta > 0")

    def value(t):
        tv = np.asarray(t, dtype=float)
        scalar = tv.ndim == 0
        tv = np.atleast_1d(tv)
        out = -0.5 * (beurling(delta * (alpha - tv)) + beurling(delta * (tv - beta)))
        return float(out[0]) if scalar else out.reshape(np.asarray(t).shape)

    window = _find_window(value, alpha, beta, delta)

    # tail structure for |t| >= t_valid: both Beurling arguments have
    # modulus >= 1.5 there, so the w-form of B applies on both sides
    s_max = max(abs(alpha), abs(beta))
    t_valid = s_max + 1.5 / delta
    omega = 2.0 * math.pi * delta
    half = 1.0 / (2.0 * math.pi**2)

    def ua(t):
        return delta * (alpha - np.asarray(t, dtype=float))

    def ub(t):
        return delta * (np.asarray(t, dtype=float) - beta)

    def smooth(t):
        return -half * (_beurling_w(ua(t)) + _beurling_w(ub(t)))

    def d_smooth(t):
        return -half * delta * (-_beurling_w_deriv(float(ua(t)))
                                + _beurling_w_deriv(float(ub(t))))

    def q_a(t):
        return half * _beurling_w(ua(t))

    def dq_a(t):
        return -half * delta * _beurling_w_deriv(float(ua(t)))

    def q_b(t):
        return half * _beurling_w(ub(t))

    def dq_b(t):
        return half * delta * _beurling_w_deriv(float(ub(t)))

    # |u| >= kappa * delta * |t| for |t| >= t_valid converts u-space decay
    # bounds into t-space constants
    kappa = 1.5 / (delta * t_valid)
    c_q = half * _W_BOUND / (delta * kappa) ** 2
    c_dq = half * delta * _DW_BOUND / (delta * kappa) ** 3
    c_ddq = half * delta**2 * _DDW_BOUND / (delta * kappa) ** 4
    tail = TailDecomposition(
        t_valid=t_valid,
        smooth=smooth, c_p=2.0 * c_q,
        d_smooth=d_smooth, c_dp=2.0 * c_dq, c_ddp=2.0 * c_ddq,
        components=(
            OscComponent(q_a, dq_a, omega, -omega * alpha, c_q, c_dq, c_ddq),
            OscComponent(q_b, dq_b, omega, -omega * beta, c_q, c_dq, c_ddq),
        ),
    )

    # numeric sup of t^2 |f| beyond T0 (sampled over several phase wraps
    # and out to 10 T0, inflated 5%)
    t0_env = s_max + 0.66 / delta
    span = max(10.0 * t0_env, t0_env + 30.0 / delta)
    ts = np.linspace(t0_env, span, 100_001)
    m_env = 1.05 * float(np.max(ts * ts * np.abs(value(ts))))
    envelope = DecayEnvelope(m=m_env, t0=t0_env, tail=tail)

    return TestFunction(
        value=value,
        integral=beta - alpha - 1.0 / delta,
        support_radius=delta,
        positivity_window=window,
        envelope=envelope,
        even=(alpha == -beta),
        fourier_closed=None,
        label=f"selberg[{alpha:g},{beta:g}]@{delta:g}",
    )


def fejer(delta: float) -> TestFunction:
    """Fejer kernel (sin(pi delta t)/(pi delta t))^2: nonnegative, integral
    1/delta, triangular Fourier transform supported in [-delta, delta]."""
    if not (delta > 0):
        raise DomainError("fejer requires delta > 0")

    def value(t):
        s = np.sinc(delta * np.asarray(t, dtype=float))
        return s * s

    c = 1.0 / (2.0 * math.pi**2 * delta**2)
    omega = 2.0 * math.pi * delta
    tail = TailDecomposition(
        t_valid=1.0 / delta,
        smooth=lambda t: c / np.asarray(t, dtype=float) ** 2,
        c_p=c,
        d_smooth=lambda t: -2.0 * c / np.asarray(t, dtype=float) ** 3,
        c_dp=2.0 * c,
        c_ddp=6.0 * c,
        components=(
            OscComponent(
                amplitude=lambda t: -c / np.asarray(t, dtype=float) ** 2,
                d_amplitude=lambda t: 2.0 * c / t**3,
                omega=omega, phase=0.0,
                c_q=c, c_dq=2.0 * c, c_ddq=6.0 * c,
            ),
        ),
    )

    def ft(x):
        xv = np.abs(np.asarray(x, dtype=float))
        return np.where(xv <= delta, (1.0 - xv / delta) / delta, 0.0)

    return TestFunction(
        value=value,
        integral=1.0 / delta,
        support_radius=delta,
        positivity_window=EVERYWHERE,
        envelope=DecayEnvelope(m=1.0 / (math.pi * delta) ** 2, t0=1.0 / delta, tail=tail),
        even=True,
        fourier_closed=ft,
        label=f"fejer@{delta:g}",
    )


def windowed_fejer(t0: float, delta: float) -> TestFunction:
    """Sign-controlled kernel (t0^2 - t^2) (sin(pi delta t/2)/(pi delta t/2))^4.

    Positive exactly on (-t0, t0), nonpositive outside, Fourier transform
    supported in [-delta, delta] (the fourth power halves the per-factor
    bandwidth, so two sinc^2 windows of radius delta/2 convolve to delta;
    the t^2 multiplier differentiates the transform without widening it).
    Unlike the bare Fejer kernel, the fourth power decays fast enough that
    the t0^2 - t^2 window leaves the function integrable with quadratic
    decay, as the explicit formula requires.
    """
    if not (t0 > 0 and delta > 0):
        raise DomainError("windowed_fejer requires t0 > 0 and delta > 0")

    def value(t):
        tv = np.asarray(t, dtype=float)
        s = np.sinc(0.5 * delta * tv)
        return (t0 * t0 - tv * tv) * s**4

    # closed form: int (t0^2 - t^2) sinc^4(delta t / 2) dt
    #            = (4 t0^2)/(3 delta) - 4/(pi^2 delta^3)
    integral = 4.0 * t0 * t0 / (3.0 * delta) - 4.0 / (math.pi**2 * delta**3)

    # sin^4(v) = 3/8 - cos(2v)/2 + cos(4v)/8 with v = pi delta t / 2 gives
    # f = A(t) (6 - 8 cos(pi delta t) + 2 cos(2 pi delta t)),
    # A(t) = (t0^2 - t^2)/(pi delta t)^4
    pd4 = (math.pi * delta) ** 4
    t_valid = 2.0 * t0

    def amp(t):
        tv = np.asarray(t, dtype=float)
        return (t0 * t0 - tv * tv) / (pd4 * tv**4)

    def d_amp(t):
        return (2.0 * t * t - 4.0 * t0 * t0) / (pd4 * t**5)

    # for |t| >= 2 t0: |A| <= 1.25/(pd4 t^2), |A'| <= 3/(pd4 |t|^3),
    # |A''| <= 11/(pd4 t^4)
    c_a, c_da, c_dda = 1.25 / pd4, 3.0 / pd4, 11.0 / pd4
    om = math.pi * delta

    def scaled(k):
        return (
            lambda t: k * amp(t),
            lambda t: k * d_amp(t),
        )

    a6, da6 = scaled(6.0)
    a8, da8 = scaled(-8.0)
    a2, da2 = scaled(2.0)
    tail = TailDecomposition(
        t_valid=t_valid,
        smooth=a6, c_p=6.0 * c_a,
        d_smooth=da6, c_dp=6.0 * c_da, c_ddp=6.0 * c_dda,
        components=(
            OscComponent(a8, da8, om, 0.0, 8.0 * c_a, 8.0 * c_da, 8.0 * c_dda),
            OscComponent(a2, da2, 2.0 * om, 0.0, 2.0 * c_a, 2.0 * c_da, 2.0 * c_dda),
        ),
    )

    m_env = 16.0 / pd4  # (t^2 - t0^2) sinc^4 <= t^2 (2/(pi delta t))^4
    return TestFunction(
        value=value,
        integral=integral,
        support_radius=delta,
        positivity_window=(-t0, t0),
        envelope=DecayEnvelope(m=m_env, t0=t_valid, tail=tail),
        even=True,
        fourier_closed=None,
        label=f"windowed_fejer@{t0:g},{delta:g}",
    )


# ---------------------------------------------------------------------------
# numeric Fourier transform
# ---------------------------------------------------------------------------


def _canonical(items):
    """Fold cos items (Q, dQ, omega, phase, cq, cdq, cddq) to omega >= 0;
    items with omega ~ 0 are returned separately as smooth contributions."""
    comps, smooth = [], []
    for (q, dq, om, ph, cq, cdq, cddq) in items:
        if om < 0:
            om, ph = -om, -ph
        if om < 1e-9:
            k = math.cos(ph)
            smooth.append((q, dq, k, cq, cdq, cddq))
        else:
            comps.append(OscComponent(q, dq, om, ph, cq, cdq, cddq))
    return comps, smooth


def _modulated_tail(tail: TailDecomposition, a: float, trig: str) -> TailDecomposition:
    """Tail decomposition of g(t) * cos(a t) or g(t) * sin(a t)."""
    shift = 0.0 if trig == "cos" else -0.5 * math.pi
    items = []

    def emit(q, dq, om, ph, cq, cdq, cddq):
        # q cos(om t + ph) * cos(a t) -> half-amplitude at om +- a;
        # the sin carrier is cos shifted by -pi/2 with a sign flip on om - a
        s = 1.0 if trig == "cos" else -1.0
        items.append((_scale(q, 0.5), _scale_s(dq, 0.5), om + a, ph + shift, 0.5 * cq, 0.5 * cdq, 0.5 * cddq))
        items.append((_scale(q, 0.5 * s), _scale_s(dq, 0.5 * s), om - a, ph + shift, 0.5 * cq, 0.5 * cdq, 0.5 * cddq))

    def _scale(f, k):
        return lambda t: k * f(t)

    def _scale_s(f, k):
        return lambda t: k * f(t)

    # the smooth part is the omega = 0, phase = 0 component
    emit(tail.smooth, tail.d_smooth, 0.0, 0.0, tail.c_p, tail.c_dp, tail.c_ddp)
    for c in tail.components:
        emit(c.amplitude, c.d_amplitude, c.omega, c.phase, c.c_q, c.c_dq, c.c_ddq)

    comps, smooth_parts = _canonical(items)

    def smooth(t):
        tv = np.asarray(t, dtype=float)
        acc = np.zeros(tv.shape if tv.ndim else (1,))
        for (q, _dq, k, *_rest) in smooth_parts:
            acc = acc + k * np.atleast_1d(np.asarray(q(tv), dtype=float))
        return acc if tv.ndim else acc

    def d_smooth(t):
        acc = 0.0
        for (_q, dq, k, *_rest) in smooth_parts:
            acc += k * dq(t)
        return acc

    c_p = sum(abs(k) * cq for (_q, _dq, k, cq, _cdq, _cddq) in smooth_parts)
    c_dp = sum(abs(k) * cdq for (_q, _dq, k, _cq, cdq, _cddq) in smooth_parts)
    c_ddp = sum(abs(k) * cddq for (_q, _dq, k, _cq, _cdq, cddq) in smooth_parts)
    return TailDecomposition(
        t_valid=tail.t_valid,
        smooth=smooth, c_p=c_p,
        d_smooth=d_smooth, c_dp=c_dp, c_ddp=c_ddp,
        components=tuple(comps),
    )


def _fourier_part(f: TestFunction, x: float, trig: str, tol: float) -> float:
    a = 2.0 * math.pi * x
    carrier = np.cos if trig == "cos" else np.sin
    if a == 0.0 and trig == "sin":
        return 0.0

    def g(t):
        tv = np.asarray(t, dtype=float)
        return f.value(tv) * carrier(a * tv)

    env = f.envelope
    if env.tail is not None:
        tail = _modulated_tail(env.tail, a, trig) if a != 0.0 else env.tail
        env = DecayEnvelope(m=env.m, t0=env.t0, log_factor=env.log_factor, tail=tail)
    return integrate_line(g, tol, env).value


def fourier_at(f: TestFunction, x: float, tol: float = 1e-7) -> float:
    """f^(x) = int f(u) e^{-2 pi i u x} du, evaluated numerically.

    Returns the real part; for an even test function the imaginary part is
    checked to be below 1e-8 before being discarded.
    """
    re = _fourier_part(f, x, "cos", tol)
    im = -_fourier_part(f, x, "sin", tol)
    if f.even and abs(im) > 1e-8:
        raise AccuracyError(
            f"imaginary leakage {im:.3e} in the transform of an even function",
            best=re,
        )
    return re
