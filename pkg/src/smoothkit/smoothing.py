"""The cubic delta-smoothing, the shift smoothing, and structural checks.

On ``[0, delta]`` the smoothing is the homogeneous cubic
``g1*w + g2*w**2/2 + g3*w**3/6`` matching ``f``, ``f'`` and ``f''`` at
``delta``; beyond ``delta`` it is ``f`` itself.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from ._search import bisect
from .errors import DomainError, LicenseError, NumericError, RequirementError, SingularityError
from .funcmodel import FunctionModel, eval_jet
from .jet import Jet3

ZERO_TOL = 1e-12
NEAR_ZERO = 1e-6        # "0+" is probed at NEAR_ZERO * delta
DEFAULT_F3_GRID = 257


class F3Class(str, enum.Enum):
    DECREASING = "Decreasing"
    INCREASING = "Increasing"
    DEC_THEN_INC = "DecThenInc"
    INC_THEN_DEC = "IncThenDec"
    MIXED = "Mixed"
    UNKNOWN = "Unknown"


THEOREM_TAGS = (
    "IC-sufficient", "IC-iff", "LowerBound", "UpperBound", "LowerBound-DecInc",
    "G1Monotone", "SupErrMonotone", "FairDomination",
)


@dataclass(frozen=True)
class DeltaSmoothing:
    base: FunctionModel
    delta: float
    g1: float
    g2: float
    g3: float

    def jet(self, w):
        return eval_smoothing(self, w)

    def __call__(self, w):
        return eval_smoothing(self, w).v0

    def cubic(self, w):
        """Jet of the cubic branch at ``w`` (no domain or branch check)."""
        w = np.asarray(w, dtype=float) if np.ndim(w) else float(w)
        g1, g2, g3 = self.g1, self.g2, self.g3
        return Jet3(w * (g1 + w * (g2 / 2 + w * g3 / 6)),
                    g1 + w * (g2 + w * g3 / 2),
                    g2 + g3 * w,
                    g3 + 0.0 * w)


@dataclass(frozen=True)
class ShiftSmoothing:
    """``h(w) = f(w + lam) - f(lam)``."""

    base: FunctionModel
    lam: float
    offset: float

    def jet(self, w):
        j = eval_jet(self.base, np.asarray(w, dtype=float) + self.lam
                     if np.ndim(w) else float(w) + self.lam)
        return Jet3(j.v0 - self.offset, j.v1, j.v2, j.v3)

    def __call__(self, w):
        return self.jet(w).v0


def shift_smoothing(f, lam):
    lam = float(lam)
    if not 0.0 < lam < f.domain.upper:
        raise DomainError(f"shift lambda={lam!r} outside (0, {f.domain})")
    return ShiftSmoothing(f, lam, eval_jet(f, lam, strict=False).v0)


def coefficients(f0, f1, f2, delta):
    """``(g1, g2, g3)`` from ``f``, ``f'``, ``f''`` at ``delta``."""
    d = delta
    g1 = 3.0 * f0 / d - 2.0 * f1 + d * f2 / 2.0
    g2 = -6.0 * f0 / d**2 + 6.0 * f1 / d - 2.0 * f2
    g3 = 6.0 * f0 / d**3 - 6.0 * f1 / d**2 + 3.0 * f2 / d
    return g1, g2, g3


def make_smoothing(f: FunctionModel, delta: float) -> DeltaSmoothing:
    delta = float(delta)
    if not (0.0 < delta < f.domain.upper):
        raise DomainError(f"delta={delta!r} outside (0, {f.domain})")
    f_at_0 = eval_jet(f, 0.0, strict=False).v0
    if abs(f_at_0) > ZERO_TOL:
        raise RequirementError(f"{f.label} has f(0)={f_at_0!r}; smoothing needs f(0)=0")
    j = eval_jet(f, delta)
    return DeltaSmoothing(f, delta, *coefficients(j.v0, j.v1, j.v2, delta))


def eval_smoothing(s: DeltaSmoothing, w) -> Jet3:
    """Jet of the smoothing: cubic branch for ``w <= delta``, ``f`` beyond."""
    if np.ndim(w) == 0:
        w = float(w)
        if not 0.0 <= w < s.base.domain.upper:
            raise DomainError(f"w={w!r} outside [0, {s.base.domain})")
        return s.cubic(w) if w <= s.delta else eval_jet(s.base, w)
    w = np.asarray(w, dtype=float)
    if w.size and not (w.min() >= 0.0 and w.max() < s.base.domain.upper):
        raise DomainError(f"points outside [0, {s.base.domain})")
    out = [np.array(c) for c in s.cubic(w)]
    right = w > s.delta
    if np.any(right):
        fj = eval_jet(s.base, w[right])
        for slot, vals in zip(out, fj):
            slot[right] = vals
    return Jet3(*out)


# -- f''' shape -----------------------------------------------------------------


@dataclass(frozen=True)
class F3Classification:
    kind: F3Class
    lo: float
    hi: float
    n: int
    f3_min: float
    f3_max: float


def hybrid_grid(lo, hi, n):
    """``n`` sorted points on ``[lo, hi]``: half geometric (dense near ``lo``),
    half uniform, endpoints shared."""
    if not 0.0 < lo < hi:
        raise ValueError(f"need 0 < lo < hi, got ({lo!r}, {hi!r})")
    k = n // 2
    pts = np.union1d(np.geomspace(lo, hi, k), np.linspace(lo, hi, n - k + 2))
    return pts


def sign_pattern(values, rel_tol=1e-12):
    """Signs of successive differences, dropping those lost in roundoff."""
    d = np.diff(values)
    scale = np.maximum(np.abs(values[:-1]), np.abs(values[1:]))
    keep = np.abs(d) > rel_tol * scale
    return np.sign(d[keep]).astype(int)


def _classify_signs(signs):
    if signs.size == 0:
        return F3Class.UNKNOWN
    changes = np.flatnonzero(np.diff(signs) != 0)
    if changes.size == 0:
        return F3Class.DECREASING if signs[0] < 0 else F3Class.INCREASING
    if changes.size == 1:
        return F3Class.DEC_THEN_INC if signs[0] < 0 else F3Class.INC_THEN_DEC
    return F3Class.MIXED


def classify_f3(f: FunctionModel, lo: float, hi: float, n: int = DEFAULT_F3_GRID):
    """Monotonicity pattern of ``f'''`` sampled on ``[lo, hi]``."""
    if n < 16:
        raise ValueError("classify_f3 needs n >= 16")
    grid = hybrid_grid(float(lo), float(hi), n)
    f3 = eval_jet(f, grid).v3
    return F3Classification(_classify_signs(sign_pattern(f3)), float(lo), float(hi),
                            int(grid.size), float(f3.min()), float(f3.max()))


# -- condition report ---------------------------------------------------------------


def tail_horizon(f, delta):
    """Right end used when sweeping ``[delta, U)``; truncated when ``U`` is infinite."""
    if f.domain.bounded:
        return f.domain.upper * (1.0 - 1e-9), False
    return max(10.0 * delta, delta + 10.0), True


@dataclass(frozen=True)
class ConditionReport:
    delta: float
    g1: float
    g2: float
    g3: float
    t_delta: bool
    t_star_delta: bool
    f3_class: F3Class
    f3_interval: tuple
    f3_nonneg: bool
    increasing_concave_g: bool
    theorems: tuple
    grid: dict
    tail: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "delta": self.delta,
            "g1": self.g1,
            "g2": self.g2,
            "g3": self.g3,
            "t_delta": self.t_delta,
            "t_star_delta": self.t_star_delta,
            "f3_class": self.f3_class.value,
            "f3_interval": list(self.f3_interval),
            "f3_nonneg": self.f3_nonneg,
            "theorems": list(self.theorems),
            "grid": dict(self.grid),
        }


def increasing_strictly_concave(f, lo, hi, n=DEFAULT_F3_GRID):
    """Sampled check that ``f' > 0`` and ``f'' < 0`` on ``[lo, hi]``."""
    j = eval_jet(f, hybrid_grid(lo, hi, n))
    return bool(np.all(j.v1 > 0) and np.all(j.v2 < 0))


def _jet_near_zero(f, delta):
    try:
        return eval_jet(f, 0.0)
    except SingularityError:
        return eval_jet(f, NEAR_ZERO * delta)


def decinc_conditions(f, s):
    """The derivative conditions at ``0+`` and ``delta`` that license a lower
    bound when ``f'''`` decreases then increases."""
    z = _jet_near_zero(f, s.delta)
    f3_delta = eval_jet(f, s.delta).v3
    tol = 1e-9 * max(1.0, abs(s.g3))
    return (z.v1 > s.g1 and z.v2 < s.g2 and z.v3 > s.g3 and f3_delta <= s.g3 + tol)


def check_conditions(f: FunctionModel, delta: float, n: int = DEFAULT_F3_GRID):
    s = make_smoothing(f, delta)
    g1, g2, g3 = s.g1, s.g2, s.g3
    tol = 1e-9 * max(1.0, abs(g3), abs(g2))
    t_delta = g3 >= -tol
    t_star = g2 <= tol

    lo = NEAR_ZERO * s.delta
    horizon, truncated = tail_horizon(f, s.delta)
    try:
        near = classify_f3(f, lo, s.delta, n)
        far = classify_f3(f, lo, horizon, n)
        fair_hi = min(2.0 * s.delta, horizon)
        fair = classify_f3(f, lo, fair_hi, n)
        tail = eval_jet(f, np.linspace(s.delta, horizon, n))
        inc_strict_concave = increasing_strictly_concave(f, lo, horizon, n)
    except SingularityError as exc:
        raise NumericError(f"jet unavailable on sample grid: {exc}") from exc

    f2_tol = 1e-12 * max(1.0, float(np.max(np.abs(tail.v2))))
    tail_ok = bool(np.all(tail.v1 > 0) and np.all(tail.v2 <= f2_tol))
    f3_nonneg = fair.f3_min >= -1e-12 * max(1.0, abs(fair.f3_max))

    tags = set()
    if t_delta and tail_ok:
        tags.add("IC-sufficient")
    if t_star and tail_ok:
        tags.add("IC-iff")
    if near.kind is F3Class.DECREASING:
        tags.add("LowerBound")
    elif near.kind is F3Class.INCREASING:
        tags.add("UpperBound")
    elif near.kind is F3Class.DEC_THEN_INC and decinc_conditions(f, s):
        tags.add("LowerBound-DecInc")
    if far.kind is F3Class.DECREASING:
        tags.update(("G1Monotone", "SupErrMonotone"))
    if (fair.kind is F3Class.DECREASING and f3_nonneg and inc_strict_concave
            and f.domain.upper >= 2.0 * s.delta):
        tags.add("FairDomination")

    return ConditionReport(
        delta=s.delta, g1=g1, g2=g2, g3=g3,
        t_delta=bool(t_delta), t_star_delta=bool(t_star),
        f3_class=near.kind, f3_interval=(near.lo, near.hi), f3_nonneg=bool(f3_nonneg),
        increasing_concave_g=bool(t_star and tail_ok),
        theorems=tuple(t for t in THEOREM_TAGS if t in tags),
        grid={"n": near.n, "lo": near.lo, "hi": near.hi},
        tail={"horizon": horizon, "truncated": truncated, "increasing_concave": tail_ok,
              "far_f3_class": far.kind.value, "fair_f3_class": fair.kind.value,
              "fair_interval": [fair.lo, fair.hi]},
    )


# -- fair shift -----------------------------------------------------------------------


def fair_shift(f: FunctionModel, delta: float) -> ShiftSmoothing:
    """Shift smoothing whose slope at 0 equals the delta-smoothing's ``g1``.

    Solves ``f'(lam) = g1`` on ``(lo, delta)`` by bisection, moving ``lo``
    toward 0 by factors of 1e-3 until ``f'(lo) > g1``.
    """
    s = make_smoothing(f, delta)
    g1 = s.g1
    ftol = 1e-12 * max(1.0, abs(g1))

    def resid(lam):
        return eval_jet(f, lam).v1 - g1

    hi = s.delta
    if resid(hi) >= 0:
        raise NumericError("f'(delta) >= g1; no shift in (0, delta) matches the slope")
    lo = 1e-3 * s.delta
    while True:
        try:
            r_lo = resid(lo)
        except SingularityError:
            r_lo = math.nan
        if r_lo > 0:
            break
        lo *= 1e-3
        if not (r_lo <= 0) or lo < 1e-300:
            raise NumericError("f'(lam) stays below g1 as lam -> 0; no fair shift exists")

    probe = eval_jet(f, np.geomspace(lo, hi, 64)).v1
    if not np.all(np.diff(probe) < 0):
        raise LicenseError("f' is not decreasing on the shift bracket")
    lam, _, _ = bisect(resid, lo, hi, ftol)
    return shift_smoothing(f, lam)
