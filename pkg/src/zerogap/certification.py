"""Grid-search certification of universal bounds on gaps between critical
zeros.

For a window [alpha, beta] of length L > 1/delta the Selberg minorant S of
its indicator has nonnegative transform mass only at frequency zero once
delta <= log2/(2 pi), so for any L-function of degree d whose zeros all
avoid the window the explicit formula forces

    0 >= sum_gamma S(gamma) = rhs_total >= d * min_mu ell(mu, S) / (2 pi)

(conductor and prime terms are nonnegative / vanish).  If the minimum of
ell over the closed right half-plane is positive, no such L-function exists
and every degree-d L-function must have a zero in every window of length L.
The half-plane minimum is searched on a finite grid: ell grows like
fhat(0) log|mu| for large |mu|, so a bounded rectangle plus a boundary-row
check suffices.  The result is labeled numerical evidence, grid-based; it
is not a proof.

The two Gamma-factor normalizations give pointwise-identical values under
mu -> 2 mu, so certificates under the `literal` convention are evaluated on
the halved grid (re_max/2, im_max/2, step/2); verdicts and bisection paths
then agree with the `halved` convention exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import AccuracyError, DomainError
from .explicit_formula import PRIME_FREE_RADIUS, TWO_PI, ell_grid
from .extremal import TestFunction, selberg_minorant

__all__ = [
    "GapCertificate",
    "MinEllSearch",
    "SearchDomain",
    "certify_gap",
    "min_ell_over_mu",
    "minimal_certified_length",
]

EVIDENCE_KIND = "numerical evidence, grid-based"


@dataclass(frozen=True)
class SearchDomain:
    """Rectangle [0, re_max] x [0, im_max] in (Re mu, Im mu), step-spaced.

    boundary_clear records that the minimum over the Re mu = re_max edge
    exceeds the interior minimum, supporting the asymptotic-growth cutoff;
    error_bound is the quadrature budget per grid value.
    """

    re_max: float
    im_max: float
    step: float
    convention: str
    grid_shape: Tuple[int, int]
    boundary_clear: bool
    error_bound: float

    def to_dict(self) -> dict:
        return {
            "re_max": self.re_max,
            "im_max": self.im_max,
            "step": self.step,
            "convention": self.convention,
            "grid_shape": list(self.grid_shape),
            "boundary_clear": self.boundary_clear,
            "error_bound": self.error_bound,
        }


@dataclass(frozen=True)
class MinEllSearch:
    value: float
    argmin: complex
    domain: SearchDomain


@dataclass(frozen=True)
class GapCertificate:
    """Outcome of a gap-certification run; certified implies margin > 0."""

    interval: Tuple[float, float]
    delta: float
    degree: int
    margin: float
    certified: bool
    positivity_window: Optional[Tuple[float, float]]
    search: SearchDomain
    kind: str = EVIDENCE_KIND

    def __post_init__(self):
        if self.certified and not self.margin > 0.0:
            raise DomainError("certificate invariant violated: certified needs margin > 0")

    def to_dict(self) -> dict:
        return {
            "interval": list(self.interval),
            "window_length": self.interval[1] - self.interval[0],
            "delta": self.delta,
            "degree": self.degree,
            "margin": self.margin,
            "certified": self.certified,
            "positivity_window": None if self.positivity_window is None
            else list(self.positivity_window),
            "search_domain": self.search.to_dict(),
            "kind": self.kind,
        }


def _grid_values(lo_excl_max: float, step: float) -> np.ndarray:
    n = int(math.floor(lo_excl_max / step + 1e-9))
    return step * np.arange(n + 1)


def min_ell_over_mu(
    f: TestFunction,
    re_max: float = 50.0,
    im_max: float = 200.0,
    step: float = 0.25,
    convention: str = "halved",
    grid_tol: float = 2.5e-4,
) -> MinEllSearch:
    """Minimum of ell(mu, f) over the grid on [0, re_max] x [0, im_max].

    Only the closed upper-right quadrant is searched: ell is invariant
    under mu -> conj(mu) for even f.  Ties go to the smallest Re mu, then
    the smallest Im mu (row-major first hit).
    """
    if step <= 0 or re_max < step or im_max < 0:
        raise DomainError("need step > 0, re_max >= step, im_max >= 0")
    re_values = _grid_values(re_max, step)
    im_values = _grid_values(im_max, step)
    vals = ell_grid(f, re_values, im_values, convention, grid_tol=grid_tol)
    flat = int(np.argmin(vals))
    i, j = np.unravel_index(flat, vals.shape)
    boundary_clear = bool(vals[-1, :].min() > vals[:-1, :].min()) if len(re_values) > 1 else False
    domain = SearchDomain(
        re_max=float(re_values[-1]),
        im_max=float(im_values[-1]),
        step=step,
        convention=convention,
        grid_shape=vals.shape,
        boundary_clear=boundary_clear,
        error_bound=float(ell_grid.last_error_bound),
    )
    return MinEllSearch(
        value=float(vals[i, j]),
        argmin=complex(re_values[i], im_values[j]),
        domain=domain,
    )


def _mapped_search(convention, re_max, im_max, step):
    # literal ell on (re, im) equals halved ell on (2 re, 2 im); searching
    # the halved rectangle means handing literal the same mu set, halved
    if convention == "literal":
        return re_max / 2.0, im_max / 2.0, step / 2.0
    if convention != "halved":
        raise DomainError(f"unknown convention {convention!r}")
    return re_max, im_max, step


def certify_gap(
    degree: int,
    window_length: float,
    delta: float = PRIME_FREE_RADIUS,
    *,
    re_max: float = 50.0,
    im_max: float = 200.0,
    step: float = 0.25,
    convention: str = "halved",
    grid_tol: float = 2.5e-4,
) -> GapCertificate:
    """Certify that every degree-`degree` L-function (unit conductor or
    larger, transform-trivial prime side) has a zero in every window of the
    given length, by positivity of the minimized archimedean term."""
    if not isinstance(degree, int) or degree < 1:
        raise DomainError("degree must be a positive integer")
    if not 0.0 < delta <= PRIME_FREE_RADIUS + 1e-15:
        raise DomainError(
            f"delta must lie in (0, log2/(2 pi) ~ {PRIME_FREE_RADIUS:.10g}] so the "
            "prime sum vanishes"
        )
    if not window_length > 1.0 / delta:
        raise DomainError(
            f"window_length must exceed 1/delta = {1.0 / delta:.10g}; the minorant "
            "carries no mass below that"
        )
    half = window_length / 2.0
    s_minus = selberg_minorant(-half, half, delta)
    grid = _mapped_search(convention, re_max, im_max, step)
    search = min_ell_over_mu(s_minus, *grid, convention=convention, grid_tol=grid_tol)
    margin = degree * search.value / TWO_PI
    window = s_minus.positivity_window
    window_ok = isinstance(window, tuple)
    return GapCertificate(
        interval=(-half, half),
        delta=delta,
        degree=degree,
        margin=margin,
        certified=bool(margin > 0.0 and window_ok),
        positivity_window=window if window_ok else None,
        search=search.domain,
    )


def minimal_certified_length(
    degree: int,
    delta: float = PRIME_FREE_RADIUS,
    precision: float = 1e-3,
    *,
    re_max: float = 50.0,
    im_max: float = 200.0,
    step: float = 1.0,
    convention: str = "halved",
    grid_tol: float = 2.5e-4,
) -> float:
    """Smallest window length the grid search certifies, by bisection to
    the given precision.  Uses a coarser default search step than
    certify_gap; the returned length is only meaningful together with the
    search parameters that produced it."""
    if not precision > 0:
        raise DomainError("precision must be positive")

    def certified(length: float) -> bool:
        return certify_gap(
            degree, length, delta,
            re_max=re_max, im_max=im_max, step=step,
            convention=convention, grid_tol=grid_tol,
        ).certified

    lo = 1.0 / delta  # exclusive: no mass, uncertifiable by construction
    hi = 5.0 / delta
    tries = 0
    while not certified(hi):
        lo = hi
        hi *= 1.3
        tries += 1
        if tries > 12:
            raise AccuracyError(
                f"no certified window length found up to {hi:.6g}", best=None
            )
    while hi - lo > precision:
        mid = 0.5 * (lo + hi)
        if certified(mid):
            hi = mid
        else:
            lo = mid
    return hi
