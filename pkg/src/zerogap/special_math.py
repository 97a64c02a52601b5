"""Special functions and line quadrature.

The digamma and trigamma implementations use the classical scheme: the
recurrence psi(z+1) = psi(z) + 1/z pushes the argument into a region where
the Bernoulli asymptotic series converges to double precision, and the
series is then evaluated by Horner's rule in 1/z^2.  Arguments left of
Re z = 1/2 go through the reflection formula with an exactly reduced
cotangent so that accuracy does not degrade near the negative real axis.

``integrate_line`` integrates over the whole real line.  Integrands must
come with a declared decay envelope |g(t)| <= M/t^2 (optionally with a
logarithmic factor).  For integrands that oscillate while decaying only
quadratically, a crude sup-norm tail bound would force absurd truncation
points, so the envelope can carry a structured tail decomposition

    g(t) = P(t) + sum_i Q_i(t) * cos(omega_i t + phi_i)   for |t| >= t_valid

with smooth P, Q_i.  The smooth part is integrated on geometrically growing
panels, and each oscillatory component is integrated up to a moderate cutoff
and then finished with two explicit integrations by parts; the remainder
after the second integration by parts is bounded analytically and folded
into the error estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.special as _sp

from .errors import AccuracyError, DomainError

__all__ = [
    "DecayEnvelope",
    "OscComponent",
    "QuadratureResult",
    "TailDecomposition",
    "digamma",
    "integrate_interval",
    "integrate_line",
    "log_gamma",
    "trigamma_real",
]


# ---------------------------------------------------------------------------
# digamma / trigamma / log_gamma
# ---------------------------------------------------------------------------

# B_{2k}/(2k) for k = 1..8; psi(z) ~ ln z - 1/(2z) - sum_k B_{2k}/(2k z^{2k})
_PSI_SERIES = np.array([
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
])

# B_{2k} for k = 1..8; psi'(z) ~ 1/z + 1/(2z^2) + sum_k B_{2k}/z^{2k+1}
_TRI_SERIES = np.array([
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
])

_PSI_SHIFT = 16.0  # asymptotic series used once |z| >= this
_TRI_SHIFT = 12.0


def _is_nonpositive_integer(z: np.ndarray) -> np.ndarray:
    re = np.real(z)
    im = np.imag(z)
    return (im == 0.0) & (re <= 0.0) & (re == np.floor(re))


def _digamma_right(z: np.ndarray) -> np.ndarray:
    # Re z >= 0.5 assumed; recurrence then Bernoulli series.
    w = np.array(z, dtype=complex, copy=True)
    acc = np.zeros(w.shape, dtype=complex)
    for _ in range(int(_PSI_SHIFT) + 1):
        mask = np.abs(w) < _PSI_SHIFT
        if not mask.any():
            break
        acc[mask] -= 1.0 / w[mask]
        w[mask] += 1.0
    iw = 1.0 / w
    iw2 = iw * iw
    s = np.full(w.shape, _PSI_SERIES[-1], dtype=complex)
    for c in _PSI_SERIES[-2::-1]:
        s = s * iw2 + c
    return acc + np.log(w) - 0.5 * iw - s * iw2


def _cot_pi(z: np.ndarray) -> np.ndarray:
    # cot(pi z), stable for large |Im z| and near-integer Re z.
    out = np.empty(z.shape, dtype=complex)
    big = np.abs(z.imag) > 18.0
    out[big] = -1j * np.sign(z.imag[big])
    zs = z[~big]
    # period-1 reduction of the real part is exact in floating point
    r = zs.real - np.round(zs.real)
    w = np.pi * (r + 1j * zs.imag)
    out[~big] = np.cos(w) / np.sin(w)
    return out


def digamma(z):
    """psi(z) = Gamma'(z)/Gamma(z) for complex z away from the poles.

    Absolute accuracy is ~1e-13 or better for |z| <= 1e6 at points a few
    ulps away from the poles at the nonpositive integers.
    """
    arr = np.asarray(z)
    scalar = arr.ndim == 0
    zc = np.atleast_1d(arr).astype(complex)
    if _is_nonpositive_integer(zc).any():
        raise DomainError("digamma pole: z is a nonpositive integer")
    out = np.empty(zc.shape, dtype=complex)
    left = zc.real < 0.5
    if left.any():
        out[left] = _digamma_right(1.0 - zc[left]) - np.pi * _cot_pi(zc[left])
    if (~left).any():
        out[~left] = _digamma_right(zc[~left])
    if np.isrealobj(arr):
        out = out.real
    return out[0] if scalar else out.reshape(arr.shape)


def trigamma_real(x):
    """psi'(x) for real x > 0, absolute accuracy better than 1e-12."""
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    w = np.atleast_1d(arr).astype(float).copy()
    if (w <= 0.0).any() or not np.isfinite(w).all():
        raise DomainError("trigamma_real requires x > 0")
    acc = np.zeros(w.shape)
    for _ in range(int(_TRI_SHIFT) + 1):
        mask = w < _TRI_SHIFT
        if not mask.any():
            break
        acc[mask] += 1.0 / (w[mask] * w[mask])
        w[mask] += 1.0
    iw = 1.0 / w
    iw2 = iw * iw
    s = np.full(w.shape, _TRI_SERIES[-1])
    for c in _TRI_SERIES[-2::-1]:
        s = s * iw2 + c
    res = acc + iw + 0.5 * iw2 + s * iw2 * iw
    return float(res[0]) if scalar else res.reshape(arr.shape)


def _trigamma_complex(z: np.ndarray) -> np.ndarray:
    # psi'(z) for Re z > 0 (internal; used for tail boundary terms).
    w = np.array(z, dtype=complex, copy=True)
    acc = np.zeros(w.shape, dtype=complex)
    for _ in range(int(_TRI_SHIFT) + 1):
        mask = np.abs(w) < _TRI_SHIFT
        if not mask.any():
            break
        acc[mask] += 1.0 / (w[mask] * w[mask])
        w[mask] += 1.0
    iw = 1.0 / w
    iw2 = iw * iw
    s = np.full(w.shape, _TRI_SERIES[-1], dtype=complex)
    for c in _TRI_SERIES[-2::-1]:
        s = s * iw2 + c
    return acc + iw + 0.5 * iw2 + s * iw2 * iw


def _tetragamma_real(x):
    # psi''(x) for real x > 0 (internal).  d/dx of the trigamma series.
    w = np.atleast_1d(np.asarray(x, dtype=float)).copy()
    acc = np.zeros(w.shape)
    for _ in range(int(_TRI_SHIFT) + 1):
        mask = w < _TRI_SHIFT
        if not mask.any():
            break
        acc[mask] -= 2.0 / w[mask] ** 3
        w[mask] += 1.0
    iw = 1.0 / w
    iw2 = iw * iw
    s = np.zeros(w.shape)
    for k in range(len(_TRI_SERIES) - 1, -1, -1):
        s = s * iw2 + (2 * k + 3) * _TRI_SERIES[k]
    res = acc - iw2 - iw2 * iw - s * iw2 * iw2
    return res if np.asarray(x).ndim else float(res[0])


def log_gamma(z):
    """Principal branch of log Gamma(z); poles raise a domain error.

    Backed by scipy's loggamma, which implements the standard principal
    branch (real on the positive axis, continued through the cut plane).
    """
    arr = np.asarray(z)
    scalar = arr.ndim == 0
    zc = np.atleast_1d(arr).astype(complex)
    if _is_nonpositive_integer(zc).any():
        raise DomainError("log_gamma pole: z is a nonpositive integer")
    out = _sp.loggamma(zc)
    if np.isrealobj(arr) and (np.atleast_1d(arr) > 0).all():
        out = out.real
    return out[0] if scalar else out.reshape(arr.shape)


# ---------------------------------------------------------------------------
# Gauss-Kronrod 15-point panel rule
# ---------------------------------------------------------------------------

_XGK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_WGK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
# 7-point Gauss weights spread onto the 15 Kronrod nodes (zeros elsewhere)
_WG7 = np.zeros(15)
_WG7[1::2] = [0.129484966168870, 0.279705391489277, 0.381830050505119,
              0.417959183673469, 0.381830050505119, 0.279705391489277,
              0.129484966168870]
_WERR = _WGK - _WG7


@dataclass(frozen=True)
class QuadratureResult:
    """Value of an integral together with its accounting.

    error_estimate combines panel error estimators with any analytic bounds
    on omitted tails; evaluations counts integrand calls.
    """

    value: float
    error_estimate: float
    evaluations: int

    def __post_init__(self):
        if not (self.error_estimate >= 0.0):
            raise DomainError("error_estimate must be nonnegative")
        if self.evaluations <= 0:
            raise DomainError("evaluations must be positive")


def _vectorized(g: Callable) -> Callable:
    """Return an ndarray-in / ndarray-out version of g."""
    probe = np.array([0.25, 0.75])
    try:
        out = np.asarray(g(probe), dtype=float)
        if out.shape == probe.shape:
            return g
    except Exception:
        pass
    gv = np.vectorize(g, otypes=[float])
    return lambda t: gv(t)


def _gk_batch(g: Callable, lo: np.ndarray, hi: np.ndarray):
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    pts = c[:, None] + h[:, None] * _XGK[None, :]
    fv = np.asarray(g(pts.ravel()), dtype=float).reshape(pts.shape)
    if not np.isfinite(fv).all():
        bad = pts.ravel()[~np.isfinite(fv.ravel())][0]
        raise DomainError(f"integrand returned a non-finite value near t = {bad!r}")
    vals = h * (fv @ _WGK)
    errs = np.abs(h * (fv @ _WERR))
    return vals, errs, pts.size


def integrate_interval(
    g: Callable,
    a: float,
    b: float,
    tol: float,
    *,
    breakpoints: Optional[Sequence[float]] = None,
    max_evals: int = 4_000_000,
) -> QuadratureResult:
    """Adaptive Gauss-Kronrod integration of g over the finite interval [a, b].

    ``breakpoints`` seeds the initial panel mesh (endpoints are added); panels
    are bisected, worst first, until the summed error estimate meets tol.
    """
    if not (b > a):
        raise DomainError("integrate_interval requires b > a")
    gv = _vectorized(g)
    if breakpoints is None:
        breaks = np.linspace(a, b, 9)
    else:
        pts = [p for p in breakpoints if a < p < b]
        breaks = np.unique(np.concatenate([[a, b], pts]))
    lo = breaks[:-1].copy()
    hi = breaks[1:].copy()
    vals, errs, n = _gk_batch(gv, lo, hi)
    evals = n
    while errs.sum() > tol:
        if evals >= max_evals or lo.size > 400_000:
            best = QuadratureResult(float(vals.sum()), float(errs.sum()), evals)
            raise AccuracyError(
                f"quadrature stalled at error {errs.sum():.3e} > tol {tol:.3e}",
                best=best,
            )
        cutoff = max(errs.max() * 0.3, tol / (4.0 * lo.size))
        sel = errs >= cutoff
        if not sel.any():
            sel = errs == errs.max()
        mid = 0.5 * (lo[sel] + hi[sel])
        new_lo = np.concatenate([lo[~sel], lo[sel], mid])
        new_hi = np.concatenate([hi[~sel], mid, hi[sel]])
        order = np.argsort(new_lo, kind="stable")
        lo, hi = new_lo[order], new_hi[order]
        vals, errs, n = _gk_batch(gv, lo, hi)
        evals += n
    return QuadratureResult(float(vals.sum()), float(errs.sum()), evals)


# ---------------------------------------------------------------------------
# Decay envelopes and structured tails
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OscComponent:
    """One oscillatory tail component  Q(t) * cos(omega t + phase).

    The amplitude callables must be valid for |t| >= the owning
    decomposition's t_valid, on both tails, and the constants bound
    |Q| <= c_q/t^2, |Q'| <= c_dq/|t|^3, |Q''| <= c_ddq/t^4 there.
    """

    amplitude: Callable
    d_amplitude: Callable
    omega: float
    phase: float
    c_q: float
    c_dq: float
    c_ddq: float


@dataclass(frozen=True)
class TailDecomposition:
    """Exact structure of an integrand beyond |t| >= t_valid.

    g(t) = smooth(t) + sum_i amplitude_i(t) cos(omega_i t + phase_i),
    with |smooth| <= c_p/t^2, |smooth'| <= c_dp/|t|^3, |smooth''| <= c_ddp/t^4.
    The derivative data lets the tail be re-modulated by cos/sin carriers
    (Fourier transforms) without losing the analytic remainder bounds.
    """

    t_valid: float
    smooth: Callable
    c_p: float
    d_smooth: Callable = lambda t: 0.0 * np.asarray(t, dtype=float)
    c_dp: float = 0.0
    c_ddp: float = 0.0
    components: tuple = ()


@dataclass(frozen=True)
class DecayEnvelope:
    """Quadratic-decay declaration |g(t)| <= m/t^2 for |t| >= t0.

    With log_factor the bound is m*(1 + log(1+|t|))/t^2 instead.  ``tail``
    optionally supplies the structured decomposition that lets the
    integrator finish slowly decaying oscillatory tails analytically.
    """

    m: float
    t0: float
    log_factor: bool = False
    tail: Optional[TailDecomposition] = None


@dataclass(frozen=True)
class _Weight:
    """Smooth weight W multiplying a tail decomposition (internal).

    Bounds are required on |t| >= the T_core handed to _weighted_tail_side:
    |W| <= c0 + clog*log|t|, |W'| <= cd/|t|, |W''| <= cdd/t^2.
    """

    values: Callable
    deriv: Callable
    c0: float
    clog: float
    cd: float
    cdd: float


_UNIT_WEIGHT = _Weight(
    values=lambda t: np.ones_like(np.asarray(t, dtype=float)),
    deriv=lambda t: 0.0,
    c0=1.0,
    clog=0.0,
    cd=0.0,
    cdd=0.0,
)


def _smooth_tail_cutoff(c_p: float, c0: float, clog: float, eps: float, t_min: float) -> float:
    # smallest T with c_p*(c0 + clog*(log T + 1))/T <= eps, iterated to a fixpoint
    t = max(t_min, c_p * max(c0, 1.0) / eps + 10.0)
    for _ in range(6):
        t = max(t_min, c_p * (c0 + clog * (math.log(t) + 1.0)) / eps)
    return t * 1.05


def _osc_cutoff(comp: OscComponent, w: _Weight, eps: float, t_min: float) -> tuple[float, float]:
    # smallest T with rem2(T) <= eps, where rem2 bounds the remainder after
    # two integrations by parts:
    #   rem2(T) = (1/omega^2) * int_T^inf |(W Q)''| dt
    #          <= (1/omega^2) [ (cdd*c_q + 2*cd*c_dq + c0*c_ddq)/(3T^3)
    #                           + clog*c_ddq*(3 log T + 1)/(9T^3) ]
    om2 = comp.omega * comp.omega

    def rem2(t: float) -> float:
        base = (w.cdd * comp.c_q + 2.0 * w.cd * comp.c_dq + w.c0 * comp.c_ddq) / (3.0 * t**3)
        logp = w.clog * comp.c_ddq * (3.0 * math.log(t) + 1.0) / (9.0 * t**3)
        return (base + logp) / om2

    t = t_min
    if rem2(t) > eps:
        for _ in range(60):
            t *= 1.35
            if rem2(t) <= eps:
                break
    return t, rem2(t)


def _geometric_breaks(t_from: float, t_to: float, ratio: float = 2.0) -> np.ndarray:
    pts = [t_from]
    t = t_from
    while t * ratio < t_to:
        t *= ratio
        pts.append(t)
    pts.append(t_to)
    return np.array(pts)


def _weighted_tail_side(
    weight: _Weight,
    tail: TailDecomposition,
    t_core: float,
    tol_side: float,
    sign: int,
) -> tuple[float, float, int]:
    """Integral of W(t) * g_tail(t) over [t_core, inf) (sign=+1) or
    (-inf, -t_core] (sign=-1), using the structured decomposition."""
    if sign > 0:
        wv, wd = weight.values, weight.deriv
        pf = tail.smooth
        comps = [(c.amplitude, c.d_amplitude, c.omega, c.phase, c) for c in tail.components]
    else:
        wv = lambda t: weight.values(-np.asarray(t))
        wd = lambda t: -weight.deriv(-t)
        pf = lambda t: tail.smooth(-np.asarray(t))
        comps = [
            (
                (lambda c: lambda t: c.amplitude(-np.asarray(t)))(c),
                (lambda c: lambda t: -c.d_amplitude(-t))(c),
                c.omega,
                -c.phase,
                c,
            )
            for c in tail.components
        ]

    n_parts = 1 + len(comps)
    eps_part = tol_side / (2.0 * n_parts)   # analytic-remainder allocation
    tol_part = tol_side / (2.0 * n_parts)   # quadrature allocation

    value = 0.0
    err = 0.0
    evals = 0

    # smooth part on geometric panels
    t2 = _smooth_tail_cutoff(tail.c_p, weight.c0, weight.clog, eps_part, t_core)
    res = integrate_interval(
        lambda t: wv(t) * pf(t), t_core, t2, tol_part,
        breakpoints=_geometric_breaks(t_core, t2),
    )
    value += res.value
    err += res.error_estimate
    err += tail.c_p * (weight.c0 + weight.clog * (math.log(t2) + 1.0)) / t2
    evals += res.evaluations

    # oscillatory parts: resolved panels to T3, then two integrations by parts
    for qf, dqf, omega, phase, c in comps:
        t3, rem = _osc_cutoff(c, weight, eps_part, t_core)
        if t3 > t_core:
            width = min(math.pi / omega, 8.0)
            breaks = np.arange(t_core, t3, width)
            res = integrate_interval(
                lambda t: wv(t) * qf(t) * np.cos(omega * t + phase),
                t_core, t3, tol_part, breakpoints=breaks,
            )
            value += res.value
            err += res.error_estimate
            evals += res.evaluations
        theta = omega * t3 + phase
        a_val = float(wv(np.array([t3]))[0]) * float(qf(np.array([t3]))[0])
        a_der = wd(t3) * float(qf(np.array([t3]))[0]) + float(wv(np.array([t3]))[0]) * dqf(t3)
        value += -a_val * math.sin(theta) / omega - a_der * math.cos(theta) / omega**2
        err += rem
        evals += 4
    return value, err, evals


def _integrate_with_tail(
    g: Callable,
    weight: _Weight,
    tail: TailDecomposition,
    t_core: float,
    tol: float,
    core_breaks: Optional[Sequence[float]] = None,
) -> QuadratureResult:
    """Integral of weight*g over the line; g has the given tail structure
    beyond t_valid <= t_core.  g itself is the full integrand including the
    weight only through the caller's closure for the core region."""
    gv = _vectorized(g)
    if core_breaks is None:
        widths = [min(math.pi / c.omega, 8.0) for c in tail.components] or [4.0]
        w = min(min(widths), 4.0)
        n = max(int(math.ceil(2.0 * t_core / w)), 8)
        core_breaks = np.linspace(-t_core, t_core, n + 1)
    core = integrate_interval(gv, -t_core, t_core, tol / 2.0, breakpoints=core_breaks)
    value = core.value
    err = core.error_estimate
    evals = core.evaluations
    for sign in (+1, -1):
        v, e, n = _weighted_tail_side(weight, tail, t_core, tol / 4.0, sign)
        value += v
        err += e
        evals += n
    return QuadratureResult(float(value), float(err), evals)


def integrate_line(g: Callable, tol: float, envelope: DecayEnvelope) -> QuadratureResult:
    """Integral of g over the whole real line.

    The declared envelope supplies the tail treatment: with a structured
    tail decomposition the omitted mass is finished analytically; otherwise
    the line is truncated where the sup-norm bound drops below tol/2 and
    the remainder is carried in the error estimate.
    """
    if tol <= 0.0:
        raise DomainError("tol must be positive")
    if envelope.m < 0 or envelope.t0 <= 0:
        raise DomainError("envelope requires m >= 0 and t0 > 0")
    if envelope.tail is not None:
        t_core = max(envelope.tail.t_valid, envelope.t0)
        return _integrate_with_tail(g, _UNIT_WEIGHT, envelope.tail, t_core, tol)

    gv = _vectorized(g)
    # both-sides sup-norm tail bound: 2M/T, or 2M(2+log(1+T))/T with the log factor
    if envelope.log_factor:
        t_cut = max(envelope.t0, 10.0)
        for _ in range(8):
            t_cut = max(envelope.t0, 4.0 * envelope.m * (2.0 + math.log1p(t_cut)) / tol)
        tail_bound = 2.0 * envelope.m * (2.0 + math.log1p(t_cut)) / t_cut
    else:
        t_cut = max(envelope.t0, 4.0 * envelope.m / tol)
        tail_bound = 2.0 * envelope.m / t_cut
    t0 = max(envelope.t0, 1.0)
    core = np.linspace(-t0, t0, 17)
    geo = _geometric_breaks(t0, t_cut) if t_cut > t0 else np.array([t0])
    breaks = np.unique(np.concatenate([core, geo, -geo]))
    res = integrate_interval(gv, -t_cut, t_cut, max(tol - tail_bound, tol / 2.0),
                             breakpoints=breaks)
    total_err = res.error_estimate + tail_bound
    out = QuadratureResult(res.value, float(total_err), res.evaluations)
    if total_err > tol * 1.0001:
        raise AccuracyError(
            f"tail bound {tail_bound:.3e} cannot meet tol {tol:.3e}", best=out
        )
    return out
