"""Regression corpus of published worked examples.

Each fixture recomputes a reported number or inequality and compares it
with the expected value.  :func:`run_fixtures` never raises on a mismatch;
it reports ``ok=False`` so callers can tabulate every result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import analysis as A
from . import funcmodel as M
from . import smoothing as S
from .errors import SmoothkitError


@dataclass(frozen=True)
class FixtureResult:
    name: str
    quantity: str
    expected: str
    computed: str
    ok: bool


def _close(x, y, rel=1e-9, abs_=0.0):
    return math.isclose(x, y, rel_tol=rel, abs_tol=abs_)


def _num(name, quantity, expected, computed, rel=1e-9, abs_=1e-12):
    return FixtureResult(name, quantity, format(expected, ".12g"), format(computed, ".12g"),
                         _close(expected, computed, rel, abs_))


def _flag(name, quantity, expected, computed):
    return FixtureResult(name, quantity, str(expected), str(computed), expected == computed)


def _cubic_sqrt():
    eps = 0.01
    f = M.cubic_sqrt(eps)
    s = S.make_smoothing(f, 1.0)
    r = S.check_conditions(f, 1.0)
    return [
        _num("ex:AB", "g2", 0.0, s.g2, abs_=1e-9 * abs(s.g3)),
        _num("ex:AB", "g3", -1.0 / (4 * eps * math.sqrt(eps) * (1 + eps)), s.g3),
        _flag("ex:AB", "t_delta", False, r.t_delta),
        _flag("ex:AB", "t_star_delta", True, r.t_star_delta),
    ]


def _root_coefficients():
    s = S.make_smoothing(M.root(0.5), 1.0)
    return [_num("root-0.5", name, want, got) for name, want, got in
            (("g1", 1.875, s.g1), ("g2", -2.5, s.g2), ("g3", 2.25, s.g3))]


def _ex_thm1_gen():
    c, a1, a, b = M.quintic_sqrt_close(1, -4, 10, -50, 2)
    f = M.quintic_sqrt(1, -4, 10, -50, 2)
    s = S.make_smoothing(f, 1.0)
    cert = A.certify_bounds(f, 1.0)
    out = [_num("ex:thm1_gen", k, want, got) for k, want, got in
           (("a1", 132.0, a1), ("a", 4 * math.sqrt(6) / 3, a), ("b", 332 / 3, b),
            ("c", 11 / 6, c))]
    # coefficient closed forms for a quintic base with delta <= w0
    out += [_num("ex:thm1_gen", "g1", 3 * 1 + (-4) + a1, s.g1),
            _num("ex:thm1_gen", "g2", -16 * 1 - 6 * (-4) + 2 * (-50), s.g2),
            _num("ex:thm1_gen", "g3", 36 * 1 + 18 * (-4) + 6 * 10, s.g3),
            _flag("ex:thm1_gen", "bound", "LowerBound", cert.verdict)]
    return out


def _ex_gg():
    f = M.quintic_sqrt(1, -5, 0, -3, 3)
    s = S.make_smoothing(f, 1.0)
    r = S.check_conditions(f, 1.0)
    cert = A.certify_bounds(f, 1.0)
    return [
        _num("ex:gg", "g3", -54.0, s.g3),
        _num("ex:gg", "g2", 8.0, s.g2),
        _flag("ex:gg", "t_star_delta", False, r.t_star_delta),
        _flag("ex:gg", "f3_class", "Decreasing", r.f3_class.value),
        _flag("ex:gg", "bound", "LowerBound", cert.verdict),
    ]


def _incdec():
    f = M.exp_example()
    j0 = M.eval_jet(f, 0.0)
    out = [_num("incdec", "f'(0)", 2.0, j0.v1), _num("incdec", "f''(0)", -1.0, j0.v2),
           _num("incdec", "f'''(0)", 0.0, j0.v3)]
    out.append(_flag("incdec", "f3 on (0,5]", "IncThenDec",
                     S.classify_f3(f, 5 * S.NEAR_ZERO, 5.0).kind.value))
    out.append(_flag("incdec", "f3 on (0,1]", "Increasing",
                     S.classify_f3(f, S.NEAR_ZERO, 1.0).kind.value))
    out.append(_flag("incdec-delta5", "bound", "LowerBound", A.certify_bounds(f, 5.0).verdict))
    out.append(_flag("incdec-delta1", "bound", "UpperBound", A.certify_bounds(f, 1.0).verdict))
    g = M.from_expression("-(w+3)*exp(-w)+3+5e-5*sqrt(w)")
    out.append(_flag("incdec-eps", "f3 on (0,5]", "Mixed",
                     S.classify_f3(g, 5 * S.NEAR_ZERO, 5.0).kind.value))
    out.append(_flag("incdec-eps", "bound", "LowerBound", A.certify_bounds(g, 5.0).verdict))
    return out


def _ex_otherf():
    f = M.from_expression("-w^4+6*w^2-8*w")
    return [_flag("ex:otherf", "bound", "LowerBound", A.certify_bounds(f, 1.0).verdict)]


def _domination():
    out = []
    for label, f in (("root-1/2", M.root(0.5)), ("root-1/3", M.root(1 / 3)),
                     ("root-0.9", M.root(0.9)), ("arcsinh-sqrt", M.arcsinh_sqrt())):
        rep = A.certify_domination(f, 1.0)
        out.append(_flag(f"fair:{label}", "certified", True, rep.certified))
    lam = S.fair_shift(M.root(0.5), 1.0).lam
    out.append(_num("fair:root-1/2", "lambda_hat", 16 / 225, lam, abs_=1e-12))
    return out


def _arcsinh_monotone():
    r = S.check_conditions(M.arcsinh_sqrt(), 1.0)
    return [_flag("ex:incCSH", "G1Monotone", True, "G1Monotone" in r.theorems)]


FIXTURES = (_root_coefficients, _cubic_sqrt, _ex_thm1_gen, _ex_gg, _incdec, _ex_otherf,
            _arcsinh_monotone, _domination)


def run_fixtures():
    results = []
    for fixture in FIXTURES:
        try:
            results.extend(fixture())
        except SmoothkitError as exc:
            name = fixture.__name__.lstrip("_").replace("_", "-")
            results.append(FixtureResult(name, "run", "no error", exc.kind, False))
    return results


def format_table(results):
    rows = [("fixture", "quantity", "expected", "computed", "status")]
    rows += [(r.name, r.quantity, r.expected, r.computed, "ok" if r.ok else "MISMATCH")
             for r in results]
    widths = [max(len(row[i]) for row in rows) for i in range(5)]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip()
                     for row in rows) + "\n"
