"""Third-order jets: a value together with its first three derivatives.

A :class:`Jet3` is the truncated Taylor expansion of a function at a point,
stored as derivatives rather than Taylor coefficients.  Arithmetic on jets
applies the sum, product and chain rules up to order three, so evaluating
an expression on the identity jet ``Jet3.variable(w)`` yields exact
(to roundoff) derivatives of the expression at ``w``.

Slots may be floats or numpy arrays of a common shape; every operation is
elementwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Jet3:
    v0: float
    v1: float
    v2: float
    v3: float

    @classmethod
    def variable(cls, w):
        w = _as_float(w)
        return cls(w, _like(w, 1.0), _like(w, 0.0), _like(w, 0.0))

    @classmethod
    def constant(cls, c, like=None):
        c = float(c)
        if like is None:
            return cls(c, 0.0, 0.0, 0.0)
        return cls(_like(like, c), _like(like, 0.0), _like(like, 0.0), _like(like, 0.0))

    def as_tuple(self):
        return (self.v0, self.v1, self.v2, self.v3)

    def __getitem__(self, k):
        return self.as_tuple()[k]

    def __iter__(self):
        return iter(self.as_tuple())

    @property
    def has_derivatives(self):
        """False when the derivative slots are unavailable (non-finite)."""
        return bool(np.all(np.isfinite([np.asarray(self.v1), np.asarray(self.v2),
                                        np.asarray(self.v3)])))

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _lift(other)
        return Jet3(self.v0 + other.v0, self.v1 + other.v1,
                    self.v2 + other.v2, self.v3 + other.v3)

    __radd__ = __add__

    def __neg__(self):
        return Jet3(-self.v0, -self.v1, -self.v2, -self.v3)

    def __pos__(self):
        return self

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) + (-self)

    def __mul__(self, other):
        if not isinstance(other, Jet3):
            c = float(other)
            return Jet3(c * self.v0, c * self.v1, c * self.v2, c * self.v3)
        a, b = self, other
        return Jet3(
            a.v0 * b.v0,
            a.v1 * b.v0 + a.v0 * b.v1,
            a.v2 * b.v0 + 2.0 * a.v1 * b.v1 + a.v0 * b.v2,
            a.v3 * b.v0 + 3.0 * (a.v2 * b.v1 + a.v1 * b.v2) + a.v0 * b.v3,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, Jet3):
            return self * (1.0 / float(other))
        return self * reciprocal(other)

    def __rtruediv__(self, other):
        return _lift(other) * reciprocal(self)

    def __pow__(self, exponent):
        if isinstance(exponent, Jet3):
            raise TypeError("jet exponents must be constants")
        return power(self, float(exponent))


def _as_float(w):
    if np.ndim(w) == 0:
        return float(w)
    return np.asarray(w, dtype=float)


def _like(w, c):
    if isinstance(w, np.ndarray):
        return np.full(w.shape, c)
    return c


def _lift(x):
    return x if isinstance(x, Jet3) else Jet3.constant(x)


def compose(u, d0, d1, d2, d3):
    """Chain rule: jet of ``phi(u)`` given ``phi`` and its derivatives at ``u.v0``.

    A term whose inner factor is exactly zero contributes zero even when the
    outer derivative is infinite, so constants stay constant.
    """
    u1, u2, u3 = u.v1, u.v2, u.v3
    with np.errstate(invalid="ignore"):
        r1 = _times(d1, u1)
        r2 = _times(d2, u1 * u1) + _times(d1, u2)
        r3 = _times(d3, u1 * u1 * u1) + 3.0 * _times(d2, u1 * u2) + _times(d1, u3)
    return Jet3(d0, r1, r2, r3)


def _times(d, x):
    out = d * x
    if isinstance(out, np.ndarray):
        return np.where(x == 0, 0.0, out)
    return 0.0 if x == 0 else out


def _falling(c, k):
    out = 1.0
    for i in range(k):
        out *= c - i
    return out


def power(u, c):
    """``u ** c`` for a constant exponent ``c``."""
    x = u.v0
    ds = []
    with np.errstate(divide="ignore", invalid="ignore"):
        for k in range(4):
            coef = _falling(c, k)
            if coef == 0.0:
                ds.append(_like(x, 0.0))
            else:
                ds.append(coef * np.power(x, c - k))
    ds = [d if isinstance(x, np.ndarray) else float(d) for d in ds]
    return compose(u, *ds)


def reciprocal(u):
    x = u.v0
    with np.errstate(divide="ignore", invalid="ignore"):
        r = 1.0 / np.asarray(x, dtype=float)
        ds = (r, -r * r, 2.0 * r ** 3, -6.0 * r ** 4)
    return compose(u, *_unwrap(x, ds))


def sqrt(u):
    return power(u, 0.5)


def log(u):
    x = u.v0
    with np.errstate(divide="ignore", invalid="ignore"):
        xa = np.asarray(x, dtype=float)
        r = 1.0 / xa
        ds = (np.log(xa), r, -r * r, 2.0 * r ** 3)
    return compose(u, *_unwrap(x, ds))


def exp(u):
    e = np.exp(np.asarray(u.v0, dtype=float))
    return compose(u, *_unwrap(u.v0, (e, e, e, e)))


def sinh(u):
    xa = np.asarray(u.v0, dtype=float)
    s, c = np.sinh(xa), np.cosh(xa)
    return compose(u, *_unwrap(u.v0, (s, c, s, c)))


def asinh(u):
    xa = np.asarray(u.v0, dtype=float)
    q = 1.0 + xa * xa
    ds = (np.arcsinh(xa), q ** -0.5, -xa * q ** -1.5, (2.0 * xa * xa - 1.0) * q ** -2.5)
    return compose(u, *_unwrap(u.v0, ds))


def _unwrap(x, ds):
    if isinstance(x, np.ndarray):
        return ds
    return tuple(float(d) for d in ds)
