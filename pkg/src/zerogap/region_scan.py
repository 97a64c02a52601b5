"""Spectral-parameter feasibility scan for degree-4 functional equations.

A candidate functional equation with spectral parameters
(i nu1, -i nu1, i nu2, -i nu2), conductor Q and trivial prime side is fed
into the explicit formula with two nonnegative test functions:

  * the Fejer kernel, positive everywhere: a negative right side is a
    contradiction, so no such L-function exists ("Impossible");
  * a windowed variant, positive exactly on (-t0, t0) and <= 0 outside: a
    positive right side forces sum f(gamma) > 0, hence a zero with
    |gamma| < t0 ("ForcedLowZero").

Anything else is "Unconstrained" at this delta/t0.  Both kernels have
transform support inside [-delta, delta] with delta <= log2/(2 pi), so the
prime sum vanishes no matter the (unknown) coefficients.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from .errors import DomainError
from .explicit_formula import PRIME_FREE_RADIUS, TWO_PI, ell
from .extremal import TestFunction, fejer, windowed_fejer

__all__ = [
    "RegionClassification",
    "classify_point",
    "scan_region",
    "scan_to_csv",
]

VERDICTS = ("Impossible", "ForcedLowZero", "Unconstrained")


@dataclass(frozen=True)
class RegionClassification:
    nu1: float
    nu2: float
    fejer_rhs: float
    windowed_rhs: float
    verdict: str

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise DomainError(f"unknown verdict {self.verdict!r}")


def _check_params(t0: float, delta: float, conductor: float) -> None:
    if not t0 > 0:
        raise DomainError("t0 must be positive")
    if not 0.0 < delta <= PRIME_FREE_RADIUS + 1e-15:
        raise DomainError(
            f"delta must lie in (0, log2/(2 pi) ~ {PRIME_FREE_RADIUS:.10g}] so the "
            "scan is coefficient-free"
        )
    if not conductor >= 1.0:
        raise DomainError("conductor must be >= 1")


def _assemble(f: TestFunction, l1: float, l2: float, conductor: float) -> float:
    # mirrors rhs().rhs_total for spectral order (i nu1, -i nu1, i nu2, -i nu2):
    # fsum is exact, which also makes the value symmetric in (nu1, nu2)
    cond = f.integral * math.log(conductor) / math.pi
    return math.fsum((cond, l1 / TWO_PI, l1 / TWO_PI, l2 / TWO_PI, l2 / TWO_PI, 0.0))


def _verdict(fejer_rhs: float, windowed_rhs: float) -> str:
    if fejer_rhs < 0.0:
        return "Impossible"
    if windowed_rhs > 0.0:
        return "ForcedLowZero"
    return "Unconstrained"


def classify_point(
    nu1: float,
    nu2: float,
    t0: float = 14.13,
    delta: float = PRIME_FREE_RADIUS,
    conductor: float = 1.0,
    convention: str = "halved",
    tol: float = 1e-8,
) -> RegionClassification:
    """Feasibility verdict for one (nu1, nu2) pair."""
    if nu1 < 0 or nu2 < 0:
        raise DomainError("spectral parameters must be nonnegative")
    _check_params(t0, delta, conductor)
    f = fejer(delta)
    w = windowed_fejer(t0, delta)
    lf1 = ell(1j * nu1, f, convention, tol)
    lf2 = lf1 if nu2 == nu1 else ell(1j * nu2, f, convention, tol)
    lw1 = ell(1j * nu1, w, convention, tol)
    lw2 = lw1 if nu2 == nu1 else ell(1j * nu2, w, convention, tol)
    fr = _assemble(f, lf1, lf2, conductor)
    wr = _assemble(w, lw1, lw2, conductor)
    return RegionClassification(
        nu1=float(nu1), nu2=float(nu2), fejer_rhs=fr, windowed_rhs=wr,
        verdict=_verdict(fr, wr),
    )


def scan_region(
    nu_max: float,
    step: float,
    t0: float = 14.13,
    delta: float = PRIME_FREE_RADIUS,
    conductor: float = 1.0,
    convention: str = "halved",
    tol: float = 1e-8,
    threads: int = 1,
) -> List[RegionClassification]:
    """Classify the full grid [0, nu_max]^2, row-major in (nu1, nu2).

    The archimedean integrals depend on one nu at a time, so each unique nu
    is integrated once per kernel and the grid is assembled from the cache;
    output is byte-for-byte reproducible for fixed inputs regardless of
    thread count.
    """
    if not step > 0 or not nu_max >= 0:
        raise DomainError("need step > 0 and nu_max >= 0")
    _check_params(t0, delta, conductor)
    nus = [float(v) for v in step * np.arange(int(math.floor(nu_max / step + 1e-9)) + 1)]
    f = fejer(delta)
    w = windowed_fejer(t0, delta)

    def one(job):
        kernel, nu = job
        return ell(1j * nu, kernel, convention, tol)

    jobs = [(f, nu) for nu in nus] + [(w, nu) for nu in nus]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(one, jobs))
    else:
        results = [one(j) for j in jobs]
    ell_f = dict(zip(nus, results[: len(nus)]))
    ell_w = dict(zip(nus, results[len(nus):]))

    rows = []
    for n1 in nus:
        for n2 in nus:
            fr = _assemble(f, ell_f[n1], ell_f[n2], conductor)
            wr = _assemble(w, ell_w[n1], ell_w[n2], conductor)
            rows.append(RegionClassification(n1, n2, fr, wr, _verdict(fr, wr)))
    return rows


def scan_to_csv(
    rows: Sequence[RegionClassification],
    *,
    t0: float,
    delta: float,
    conductor: float,
    step: float,
    convention: str,
) -> str:
    """Render a scan as CSV with '#' metadata lines; %.10g floats keep the
    output stable across runs."""
    lines = [
        f"# t0 = {t0:.10g}",
        f"# delta = {delta:.10g}",
        f"# Q = {conductor:.10g}",
        f"# step = {step:.10g}",
        f"# convention = {convention}",
        "nu1,nu2,fejer_rhs,windowed_rhs,verdict",
    ]
    for r in rows:
        lines.append(
            f"{r.nu1:.10g},{r.nu2:.10g},{r.fejer_rhs:.10g},"
            f"{r.windowed_rhs:.10g},{r.verdict}"
        )
    return "\n".join(lines) + "\n"
