"""Worst-case error, inverse problems in delta, and grid certification.

Solvers that rely on a monotonicity theorem refuse to run unless the
hypothesis (``f'''`` decreasing) has been certified on a sample grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._search import bisect, golden_max, newton
from .errors import (ConvergenceError, DomainError, InconsistencyError, LicenseError,
                     SingularityError, UnreachableError)
from .funcmodel import FunctionModel, eval_jet
from .smoothing import (NEAR_ZERO, DeltaSmoothing, F3Class, classify_f3, decinc_conditions,
                        fair_shift, increasing_strictly_concave, make_smoothing,
                        shift_smoothing, tail_horizon)

DEFAULT_GRID = 1024
MARGIN = 1e-10
LICENSE_LO = 1e-8       # license grids start at LICENSE_LO * search_hi


@dataclass(frozen=True)
class Sensitivities:
    dg1: float
    dg2: float
    dg3: float


@dataclass(frozen=True)
class ErrorProfile:
    delta: float
    w2: float
    sup_err: float
    grid_max: float

    def to_dict(self):
        return {"delta": self.delta, "w2": self.w2, "sup_err": self.sup_err,
                "grid_max": self.grid_max}


@dataclass(frozen=True)
class BoundCertificate:
    delta: float
    verdict: str
    min_gap: float
    max_gap: float
    min_gap_mid: float
    max_gap_mid: float
    licensed: str | None
    n: int

    def to_dict(self):
        return {"delta": self.delta, "verdict": self.verdict, "min_gap": self.min_gap,
                "max_gap": self.max_gap, "licensed": self.licensed, "n": self.n}


@dataclass(frozen=True)
class DominationReport:
    delta: float
    lambda_hat: float
    min_gap_gf: float
    min_gap_hg: float
    certified: bool
    min_gap_hg_mid: float = math.nan
    licensed: bool = True
    horizon: float = math.nan
    n: int = DEFAULT_GRID

    def to_dict(self):
        return {"delta": self.delta, "lambda_hat": self.lambda_hat,
                "min_gap_gf": self.min_gap_gf, "min_gap_hg": self.min_gap_hg,
                "certified": self.certified, "licensed": self.licensed,
                "grid": {"n": self.n, "horizon": self.horizon}}


def interior_grid(delta, n):
    """``n`` equispaced points strictly inside ``(0, delta)``."""
    return delta * np.arange(1, n + 1) / (n + 1)


def gap(s: DeltaSmoothing, w):
    """``F = f - g`` on the cubic branch."""
    return eval_jet(s.base, w).v0 - s.cubic(w).v0


# -- sensitivities ------------------------------------------------------------


def sensitivities(f: FunctionModel, delta: float) -> Sensitivities:
    """Derivatives of ``(g1, g2, g3)`` with respect to delta."""
    s = make_smoothing(f, delta)
    r = eval_jet(f, s.delta).v3 - s.g3
    return Sensitivities(s.delta / 2 * r, -2.0 * r, 3.0 / s.delta * r)


def sensitivities_fd(f: FunctionModel, delta: float, rel_step: float = 1e-4) -> Sensitivities:
    """Central finite differences of the coefficients in delta."""
    h = rel_step * delta
    a, b = make_smoothing(f, delta + h), make_smoothing(f, delta - h)
    return Sensitivities((a.g1 - b.g1) / (2 * h), (a.g2 - b.g2) / (2 * h),
                         (a.g3 - b.g3) / (2 * h))


# -- licenses -------------------------------------------------------------------


def _require_decreasing_f3(f, hi, what):
    cls = classify_f3(f, LICENSE_LO * hi, hi)
    if cls.kind is not F3Class.DECREASING:
        raise LicenseError(
            f"{what} needs f''' decreasing on (0, {hi:.6g}]; sampled pattern is {cls.kind.value}"
        )
    return cls


def _check_search_hi(f, search_hi):
    search_hi = float(search_hi)
    if not 0.0 < search_hi < f.domain.upper:
        raise DomainError(f"search_hi={search_hi!r} outside (0, {f.domain})")
    return search_hi


def _monotone_solve(value, target, search_hi, ftol, increasing):
    """Solve ``value(delta) = target`` for a monotone ``value`` on ``(0, search_hi]``."""
    sign = 1.0 if increasing else -1.0

    def resid(d):
        return sign * (value(d) - target)

    r_hi = resid(search_hi)
    if abs(r_hi) <= ftol:
        return search_hi
    if r_hi < 0:
        raise UnreachableError(f"target {target!r} not reached on (0, {search_hi!r}]")
    d0 = min(1.0, search_hi / 2.0)
    if resid(d0) <= 0:
        lo, hi = d0, min(2.0 * d0, search_hi)
        while resid(hi) < 0:
            lo, hi = hi, min(2.0 * hi, search_hi)
    else:
        lo, hi = d0 / 2.0, d0
        while True:
            try:
                r = resid(lo)
            except SingularityError as exc:
                raise UnreachableError(f"target {target!r} needs delta below {lo:.3g}") from exc
            if r <= 0:
                break
            lo, hi = lo / 2.0, lo
            if lo < 1e-300:
                raise UnreachableError(f"target {target!r} not reached as delta -> 0")
    root, lo, hi = bisect(resid, lo, hi, ftol)
    va, vb = value(lo), value(hi)
    if lo < hi and (vb - va) * sign <= 0:
        raise InconsistencyError("value is not monotone across the final bracket")
    return root


def g1_of_delta(f, delta):
    return make_smoothing(f, delta).g1


def solve_delta_for_slope(f: FunctionModel, target_slope: float, search_hi: float) -> float:
    """Delta whose smoothing has ``g'(0) = target_slope``.

    ``g1`` decreases with delta when ``f'''`` is decreasing, so the answer
    is found by bisection after geometric bracketing from ``min(1, search_hi/2)``.
    """
    search_hi = _check_search_hi(f, search_hi)
    _require_decreasing_f3(f, search_hi, "solve_delta_for_slope")
    target = float(target_slope)
    ftol = 1e-10 * max(1.0, abs(target))
    try:
        return _monotone_solve(lambda d: g1_of_delta(f, d), target, search_hi, ftol,
                               increasing=False)
    except UnreachableError as exc:
        raise UnreachableError(
            f"slope {target!r} unreachable: g1({search_hi:.6g}) = "
            f"{g1_of_delta(f, search_hi)!r}; {exc}") from None


# -- worst-case error ----------------------------------------------------------------


def _locate_max(s: DeltaSmoothing):
    d = s.delta

    def F(w):
        return gap(s, w)

    def dF(w):
        fj, gj = eval_jet(s.base, w), s.cubic(w)
        return fj.v1 - gj.v1, fj.v2 - gj.v2

    xtol = 1e-7 * d
    w = golden_max(F, 0.0, d, xtol)
    scale = max(1.0, abs(s.g1), abs(eval_jet(s.base, w).v1))
    w = newton(dF, w, 0.0, d, 1e-13 * scale)
    f1, f2 = dF(w)
    if not (0.0 < w < d) or abs(f1) > 1e-9 * scale or not f2 < 0:
        raise ConvergenceError(
            f"maximiser refinement failed: w2={w!r}, F'={f1!r}, F''={f2!r}")
    return w, F(w)


def grid_max(s: DeltaSmoothing, n=1 << 16, refine=1 << 12):
    """Brute-force maximum of ``F`` on a uniform interior grid plus a local
    refinement around the best point."""
    w = interior_grid(s.delta, n)
    F = gap(s, w)
    k = int(np.argmax(F))
    a = w[k - 1] if k > 0 else 0.5 * w[0]
    b = w[k + 1] if k + 1 < n else 0.5 * (w[-1] + s.delta)
    fine = np.linspace(a, b, refine)
    return float(max(F[k], gap(s, fine).max()))


def worst_case_error(f: FunctionModel, delta: float, cross_check: bool = True) -> ErrorProfile:
    """Sup-norm of ``f - g`` on ``[0, delta]`` and its location.

    Golden-section search brackets the interior maximiser; Newton on ``F'``
    polishes it.  With ``cross_check`` the result is compared against a
    brute-force grid maximum.
    """
    s = make_smoothing(f, delta)
    cls = classify_f3(f, NEAR_ZERO * s.delta, s.delta)
    if cls.kind is not F3Class.DECREASING:
        raise LicenseError(
            f"worst_case_error needs f''' decreasing on (0, delta]; got {cls.kind.value}")
    w2, sup = _locate_max(s)
    gmax = math.nan
    if cross_check:
        gmax = grid_max(s)
        if abs(sup - gmax) > 1e-8 * max(1.0, sup):
            raise InconsistencyError(f"optimiser max {sup!r} vs grid max {gmax!r}")
    return ErrorProfile(s.delta, w2, sup, gmax)


def sup_error(f, delta):
    return _locate_max(make_smoothing(f, delta))[1]


def solve_delta_for_error(f: FunctionModel, target_err: float, search_hi: float) -> float:
    """Delta at which ``max |f - g|`` equals ``target_err`` (increasing in delta)."""
    search_hi = _check_search_hi(f, search_hi)
    target = float(target_err)
    if not target > 0:
        raise DomainError("target error must be > 0")
    _require_decreasing_f3(f, search_hi, "solve_delta_for_error")
    return _monotone_solve(lambda d: sup_error(f, d), target, search_hi, 1e-8 * target,
                           increasing=True)


# -- certification ------------------------------------------------------------


def kratio_oracle(f: FunctionModel, delta: float, w):
    """``(f(w) - g(w)) / (w (w - delta)^3)``; negative under a decreasing ``f'''``."""
    s = make_smoothing(f, delta)
    scalar = np.ndim(w) == 0
    w = float(w) if scalar else np.asarray(w, dtype=float)
    if not (np.all(w > 0.0) and np.all(w < s.delta)):
        raise DomainError(f"K-ratio needs w in (0, delta={s.delta!r})")
    return gap(s, w) / (w * (w - s.delta) ** 3)


def licensed_bound(f, s):
    """Bound direction implied by the sampled shape of ``f'''`` on ``(0, delta]``."""
    cls = classify_f3(f, NEAR_ZERO * s.delta, s.delta)
    if cls.kind is F3Class.DECREASING:
        return "LowerBound"
    if cls.kind is F3Class.INCREASING:
        return "UpperBound"
    if cls.kind is F3Class.DEC_THEN_INC and decinc_conditions(f, s):
        return "LowerBound"
    return None


def certify_bounds(f: FunctionModel, delta: float, n: int = DEFAULT_GRID) -> BoundCertificate:
    """Sign of ``f - g`` on an interior grid of ``(0, delta)``.

    A licensed theorem conclusion contradicted by the grid raises
    :class:`InconsistencyError`.
    """
    s = make_smoothing(f, delta)
    w = interior_grid(s.delta, n)
    F = gap(s, w)
    Fm = gap(s, 0.5 * (w[:-1] + w[1:]))
    margin = MARGIN * max(1.0, abs(eval_jet(f, s.delta).v0))
    lo, hi = float(F.min()), float(F.max())
    if lo >= -margin:
        verdict = "LowerBound"
    elif hi <= margin:
        verdict = "UpperBound"
    else:
        verdict = "Neither"
    lic = licensed_bound(f, s)
    if lic is not None and lic != verdict:
        raise InconsistencyError(f"{f.label}, delta={s.delta!r}: theorem gives {lic}, "
                                 f"grid gives {verdict} (min {lo!r}, max {hi!r})")
    return BoundCertificate(s.delta, verdict, lo, hi, float(Fm.min()), float(Fm.max()),
                            lic, n)


def domination_license(f, delta):
    """Whether ``f'''`` is decreasing and nonnegative on ``(0, 2 delta)`` with
    ``f`` increasing and strictly concave (sampled up to the tail horizon), and
    whether the domain reaches ``2 delta``."""
    horizon = tail_horizon(f, delta)[0]
    hi = min(2.0 * delta, horizon)
    cls = classify_f3(f, NEAR_ZERO * delta, hi)
    ok = (cls.kind is F3Class.DECREASING
          and cls.f3_min >= -1e-12 * max(1.0, abs(cls.f3_max))
          and increasing_strictly_concave(f, NEAR_ZERO * delta, horizon))
    return ok, f.domain.upper >= 2.0 * delta, cls


def certify_domination(f: FunctionModel, delta: float, n: int = DEFAULT_GRID,
                       horizon: float | None = None, allow_truncation: bool = False,
                       force: bool = False) -> DominationReport:
    """Check ``h <= g <= f`` on ``(0, delta)`` and ``h <= g = f`` up to ``horizon``,
    with the shift chosen so that ``h'(0) = g'(0)``.

    Without ``force`` the f''' hypotheses must hold on ``(0, 2 delta)`` and the
    domain must reach ``2 delta`` (or ``allow_truncation`` be given).  With
    ``force`` the data is computed anyway and ``certified`` is False unless
    licensed.
    """
    s = make_smoothing(f, delta)
    shape_ok, reaches, cls = domination_license(f, s.delta)
    licensed = shape_ok and (reaches or allow_truncation)
    if not licensed and not force:
        why = (f"f''' is {cls.kind.value} with min {cls.f3_min:.3g} on (0, {cls.hi:.6g})"
               if not shape_ok else f"domain [0, {f.domain}) shorter than 2*delta")
        raise LicenseError("domination needs f increasing, strictly concave, with f''' "
                           f"decreasing and >= 0 on (0, 2 delta): {why}")
    h = fair_shift(f, s.delta)
    if horizon is None:
        horizon = tail_horizon(f, s.delta)[0]
    horizon = min(float(horizon), (f.domain.upper - h.lam) * (1.0 - 1e-12))
    w_in = interior_grid(s.delta, n)
    hw_in = h(w_in)
    gw_in = s.cubic(w_in).v0
    gap_gf = eval_jet(f, w_in).v0 - gw_in
    gap_hg = gw_in - hw_in
    mids = 0.5 * (w_in[:-1] + w_in[1:])
    gap_mid = s.cubic(mids).v0 - h(mids)
    if horizon > s.delta:
        w_tail = np.linspace(s.delta, horizon, n)
        gap_hg = np.concatenate([gap_hg, eval_jet(f, w_tail).v0 - h(w_tail)])
    scale = max(1.0, abs(eval_jet(f, s.delta).v0))
    min_gf, min_hg = float(gap_gf.min()), float(gap_hg.min())
    certified = licensed and min_gf >= -MARGIN * scale and min_hg >= -MARGIN * scale
    return DominationReport(s.delta, h.lam, min_gf, min_hg, bool(certified),
                            float(gap_mid.min()), bool(licensed), float(horizon), n)


def comparison_grid(f: FunctionModel, delta: float, n: int = DEFAULT_GRID,
                    horizon: float | None = None, lam: float | None = None):
    """Columns ``w, f, g, h, F, K`` on ``[0, horizon]`` for external plotting.

    ``K`` is only defined strictly inside ``(0, delta)``; elsewhere it is NaN.
    """
    s = make_smoothing(f, delta)
    if lam is None:
        lam = fair_shift(f, s.delta).lam
    h = shift_smoothing(f, lam)
    if horizon is None:
        horizon = tail_horizon(f, s.delta)[0]
    horizon = min(float(horizon), (f.domain.upper - lam) * (1.0 - 1e-12))
    w = np.linspace(0.0, s.delta, n + 1)
    if horizon > s.delta:
        w = np.concatenate([w, np.linspace(s.delta, horizon, n + 1)[1:]])
    fw = eval_jet(f, w, strict=False).v0
    gw = np.where(w <= s.delta, s.cubic(w).v0, fw)
    hw = eval_jet(f, w + lam, strict=False).v0 - h.offset
    F = fw - gw
    inside = (w > 0) & (w < s.delta)
    with np.errstate(divide="ignore", invalid="ignore"):
        K = np.where(inside, F / (w * (w - s.delta) ** 3), np.nan)
    return {"w": w, "f": fw, "g": gw, "h": hw, "F": F, "K": K}
