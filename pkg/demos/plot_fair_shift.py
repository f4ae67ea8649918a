"""
Comparing with the shifted function
===================================

The simplest alternative to a cubic smoothing is ``h(w) = f(w + lam) - f(lam)``.
Pick ``lam`` so that ``h`` and the cubic have the same slope at 0.  Then ``h``
lies below the cubic everywhere, and the cubic is the tighter approximation.
"""

import io

from smoothkit import analysis, funcmodel, report, smoothing

for label, f in (("sqrt", funcmodel.root(0.5)), ("cube root", funcmodel.root(1 / 3)),
                 ("arcsinh sqrt", funcmodel.arcsinh_sqrt())):
    rep = analysis.certify_domination(f, 1.0)
    print(f"{label:<13} lam={rep.lambda_hat:.12f} certified={rep.certified} "
          f"min(g-h)={rep.min_gap_hg:.3e}")

# for the square root lam = 16/225 exactly
print(smoothing.fair_shift(funcmodel.root(0.5), 1.0).lam, 16 / 225)

# grid data for plotting elsewhere
cols = analysis.comparison_grid(funcmodel.root(0.5), 1.0, n=8, horizon=2.0)
buf = io.StringIO()
report.write_csv(buf, cols)
print(buf.getvalue())
