"""Univariate functions on ``[0, U)`` evaluable to third-order jets.

Builtin families carry hand-derived closed-form derivatives.  Expression
models are differentiated by jet arithmetic (see :mod:`smoothkit.jet`), which
gives an independent route to the same numbers.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import expr as E
from .errors import DomainError, SingularityError, SpecError
from .jet import Jet3


@dataclass(frozen=True)
class Domain:
    """The half-open interval ``[0, upper)``; ``upper`` may be ``inf``."""

    upper: float = math.inf

    def __post_init__(self):
        if not self.upper > 0:
            raise SpecError(f"domain upper bound must be > 0, got {self.upper}")

    def __contains__(self, w):
        w = np.asarray(w, dtype=float)
        return bool(np.all((w >= 0.0) & (w < self.upper)))

    @property
    def bounded(self):
        return math.isfinite(self.upper)

    def __str__(self):
        return "inf" if not self.bounded else repr(self.upper)


class QuinticSqrtParams(NamedTuple):
    c: float
    a1: float
    a: float
    b: float


def quintic_sqrt_close(a5, a4, a3, a2, w0):
    """Remaining parameters that make the quintic/shifted-sqrt piecewise
    function three times differentiable at ``w0``.

    The second and third derivatives of the quintic at ``w0`` do not involve
    the linear coefficient, so they fix the shift ``c`` and amplitude ``a``;
    ``a1`` then matches the slope and ``b`` the value.
    """
    f2 = 20 * a5 * w0**3 + 12 * a4 * w0**2 + 6 * a3 * w0 + 2 * a2
    f3 = 60 * a5 * w0**2 + 24 * a4 * w0 + 6 * a3
    if f3 == 0 or f2 * f3 > 0:
        raise SpecError(
            f"quintic_sqrt needs f''(w0)/f'''(w0) <= 0 with f'''(w0) != 0; "
            f"got f''={f2!r}, f'''={f3!r}"
        )
    c = w0 + 3 * f2 / (2 * f3)
    t = w0 - c
    a1 = -2 * f2 * t - (5 * a5 * w0**4 + 4 * a4 * w0**3 + 3 * a3 * w0**2 + 2 * a2 * w0)
    a = 8 * f3 * t**2.5 / 3
    fw0 = a5 * w0**5 + a4 * w0**4 + a3 * w0**3 + a2 * w0**2 + a1 * w0
    b = fw0 - a * math.sqrt(t)
    return QuinticSqrtParams(c, a1, a, b)


# -- closed-form jets; each takes a float array and returns 4 arrays --------


def _root_jet(w, p):
    with np.errstate(divide="ignore", invalid="ignore"):
        return (w**p, p * w ** (p - 1), p * (p - 1) * w ** (p - 2),
                p * (p - 1) * (p - 2) * w ** (p - 3))


def _entropy_jet(w):
    with np.errstate(divide="ignore", invalid="ignore"):
        v = np.where(w > 0, -w * np.log(np.where(w > 0, w, 1.0)), 0.0)
        return (v, -np.log(w) - 1.0, -1.0 / w, 1.0 / (w * w))


def _incremental_entropy_jet(w):
    with np.errstate(divide="ignore", invalid="ignore"):
        safe = np.where(w > 0, w, 1.0)
        v = np.where(w > 0, w * np.log1p(1.0 / safe), 0.0)
        f1 = np.log1p(1.0 / w) - 1.0 / (1.0 + w)
        f2 = -1.0 / (w * (1.0 + w) ** 2)
        f3 = (1.0 + 3.0 * w) / (w * w * (1.0 + w) ** 3)
        return (v, f1, f2, f3)


def _arcsinh_sqrt_jet(w):
    with np.errstate(divide="ignore", invalid="ignore"):
        q = w * (w + 1.0)
        return (np.arcsinh(np.sqrt(w)), 0.5 / np.sqrt(q),
                -(2.0 * w + 1.0) / (4.0 * q**1.5),
                (8.0 * w * w + 8.0 * w + 3.0) / (8.0 * q**2.5))


def _exp_example_jet(w):
    e = np.exp(-w)
    # -(w+3)e^{-w} + 3 rewritten to avoid cancellation near 0
    return (-3.0 * np.expm1(-w) - w * e, (w + 2.0) * e, -(w + 1.0) * e, w * e)


def _quintic_sqrt_jet(w, a5, a4, a3, a2, w0, c, a1, a, b):
    left = w <= w0
    q = (a5 * w**5 + a4 * w**4 + a3 * w**3 + a2 * w**2 + a1 * w,
         5 * a5 * w**4 + 4 * a4 * w**3 + 3 * a3 * w**2 + 2 * a2 * w + a1,
         20 * a5 * w**3 + 12 * a4 * w**2 + 6 * a3 * w + 2 * a2,
         60 * a5 * w**2 + 24 * a4 * w + 6 * a3)
    t = np.where(left, 1.0, w - c)
    s = np.sqrt(t)
    r = (a * s + b, a / (2 * s), -a / (4 * t * s), 3 * a / (8 * t * t * s))
    return tuple(np.where(left, qi, ri) for qi, ri in zip(q, r))


def _cubic_sqrt_jet(w, eps):
    k = eps * math.sqrt(eps)
    c3 = -1.0 / (24.0 * k * (1.0 + eps))
    c1 = (1.0 + 5.0 * eps) / (8.0 * k)
    shift = (1.0 + 8.0 * eps - 5.0 * eps**2) / (12.0 * k)
    left = w <= 1.0 + eps
    cub = (c3 * w**3 + c1 * w, 3 * c3 * w**2 + c1, 6 * c3 * w, np.full_like(w, 6 * c3))
    t = np.where(left, 1.0, w - 1.0)
    s = np.sqrt(t)
    sq = (s + shift, 0.5 / s, -0.25 / (t * s), 0.375 / (t * t * s))
    return tuple(np.where(left, ci, si) for ci, si in zip(cub, sq))


@dataclass(frozen=True)
class FunctionModel:
    """A univariate function on ``domain``.

    ``kind`` is a builtin family name (with ``params``) or ``"expr"`` with
    ``ast`` set.  Instances are immutable; use the factory functions below.
    """

    kind: str
    params: tuple
    domain: Domain
    ast: object = field(default=None, compare=False)
    text: str = ""

    def jet(self, w, strict=True):
        return eval_jet(self, w, strict=strict)

    def value(self, w):
        return eval_jet(self, w, strict=False).v0

    __call__ = value

    @property
    def label(self):
        if self.kind == "expr":
            return f"expr:{self.text}"
        if not self.params:
            return f"builtin:{self.kind}"
        return f"builtin:{self.kind}({','.join(format(p, '.17g') for p in self.params)})"


def _raw_jet(f, w):
    if f.kind == "expr":
        with np.errstate(all="ignore"):
            j = E.evaluate(f.ast, Jet3.variable(w))
        return tuple(np.asarray(s, dtype=float) * np.ones_like(w) for s in j)
    if f.kind == "root":
        return _root_jet(w, *f.params)
    if f.kind == "quintic_sqrt":
        return _quintic_sqrt_jet(w, *f.params, *quintic_sqrt_close(*f.params))
    if f.kind == "cubic_sqrt":
        return _cubic_sqrt_jet(w, *f.params)
    return _SIMPLE[f.kind](w)


_SIMPLE = {
    "entropy": _entropy_jet,
    "incremental_entropy": _incremental_entropy_jet,
    "arcsinh_sqrt": _arcsinh_sqrt_jet,
    "exp_example": _exp_example_jet,
}


def eval_jet(f: FunctionModel, w, strict: bool = True) -> Jet3:
    """Value and first three derivatives of ``f`` at ``w`` (float or array).

    With ``strict`` (the default) a non-finite derivative raises
    :class:`SingularityError`.  With ``strict=False`` such slots are left as
    ``inf``/``nan`` and the value is still returned, which is how ``f(0)`` is
    read for functions whose derivative blows up at the origin.
    """
    scalar = np.ndim(w) == 0
    wa = np.atleast_1d(np.asarray(w, dtype=float))
    if not (np.all(wa >= 0.0) and np.all(wa < f.domain.upper)):
        bad = wa[(wa < 0.0) | (wa >= f.domain.upper)][0]
        raise DomainError(f"w={bad!r} outside [0, {f.domain})")
    slots = _raw_jet(f, wa)
    if not np.all(np.isfinite(slots[0])):
        bad = wa[~np.isfinite(slots[0])][0]
        raise SingularityError(f"{f.label} has no finite value at w={bad!r}")
    if strict:
        finite = np.isfinite(slots[1]) & np.isfinite(slots[2]) & np.isfinite(slots[3])
        if not np.all(finite):
            bad = wa[~finite][0]
            raise SingularityError(f"{f.label}: derivatives unavailable at w={bad!r}")
    if scalar:
        return Jet3(*(float(s[0]) for s in slots))
    return Jet3(*slots)


# -- factories ----------------------------------------------------------------

_INF = Domain(math.inf)


def root(p):
    p = float(p)
    if not 0.0 < p < 1.0:
        raise SpecError(f"root(p) needs 0 < p < 1, got {p}")
    return FunctionModel("root", (p,), _INF)


def entropy():
    return FunctionModel("entropy", (), Domain(1.0))


def incremental_entropy():
    return FunctionModel("incremental_entropy", (), _INF)


def arcsinh_sqrt():
    return FunctionModel("arcsinh_sqrt", (), _INF)


def exp_example():
    return FunctionModel("exp_example", (), _INF)


def quintic_sqrt(a5, a4, a3, a2, w0):
    params = tuple(float(x) for x in (a5, a4, a3, a2, w0))
    if params[4] <= 0:
        raise SpecError("quintic_sqrt needs w0 > 0")
    quintic_sqrt_close(*params)
    return FunctionModel("quintic_sqrt", params, _INF)


def cubic_sqrt(eps):
    eps = float(eps)
    if not eps > 0:
        raise SpecError(f"cubic_sqrt needs eps > 0, got {eps}")
    return FunctionModel("cubic_sqrt", (eps,), _INF)


def from_expression(text, domain=math.inf):
    if not isinstance(domain, Domain):
        domain = Domain(float(domain))
    return FunctionModel("expr", (), domain, ast=E.parse(text), text=text)


BUILTINS = {
    "root": (root, 1),
    "entropy": (entropy, 0),
    "incremental_entropy": (incremental_entropy, 0),
    "arcsinh_sqrt": (arcsinh_sqrt, 0),
    "exp_example": (exp_example, 0),
    "quintic_sqrt": (quintic_sqrt, 5),
    "cubic_sqrt": (cubic_sqrt, 1),
}

# each builtin written as an expression string, for cross-checking the two routes
EXPRESSION_FORMS = {
    "root": lambda p: f"w^{p!r}",
    "entropy": lambda: "-w*log(w)",
    "incremental_entropy": lambda: "w*log(1+1/w)",
    "arcsinh_sqrt": lambda: "log(sqrt(w)+sqrt(1+w))",
    "exp_example": lambda: "-(w+3)*exp(-w)+3",
}

_BUILTIN_RE = re.compile(r"^\s*([A-Za-z_]+)\s*(?:\((.*)\))?\s*$")


def parse_domain(text):
    text = str(text).strip().lower()
    if text in ("inf", "+inf", "infinity"):
        return _INF
    try:
        return Domain(float(text))
    except ValueError:
        raise SpecError(f"bad domain {text!r}; expected a positive number or 'inf'") from None


def parse_function_spec(spec: str, domain=None) -> FunctionModel:
    """Build a model from ``builtin:name(params)`` or ``expr:<string>``.

    Expression specs need an explicit ``domain`` (``"inf"`` or a number);
    builtin families have fixed domains and reject a conflicting one.
    """
    if spec.startswith("builtin:"):
        m = _BUILTIN_RE.match(spec[len("builtin:"):])
        if m is None or m.group(1) not in BUILTINS:
            raise SpecError(f"unknown builtin in {spec!r}; known: {', '.join(BUILTINS)}")
        factory, arity = BUILTINS[m.group(1)]
        raw = (m.group(2) or "").strip()
        try:
            args = [float(a) for a in raw.split(",")] if raw else []
        except ValueError:
            raise SpecError(f"non-numeric parameter in {spec!r}") from None
        if len(args) != arity:
            raise SpecError(f"{m.group(1)} takes {arity} parameter(s), got {len(args)}")
        f = factory(*args)
        if domain is not None and parse_domain(domain) != f.domain:
            raise SpecError(f"{m.group(1)} has fixed domain [0, {f.domain})")
        return f
    if spec.startswith("expr:"):
        if domain is None:
            raise SpecError("expression specs need an explicit domain (number or 'inf')")
        return from_expression(spec[len("expr:"):], parse_domain(domain))
    raise SpecError(f"function spec must start with 'builtin:' or 'expr:', got {spec!r}")
