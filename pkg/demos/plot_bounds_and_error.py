"""
Lower bounds, upper bounds and the worst-case error
====================================================

When the third derivative of ``f`` decreases, the smoothing sits below ``f``.
When it increases, the smoothing sits above.  The shape of ``f'''`` decides.
"""

from smoothkit import analysis, funcmodel, smoothing

f = funcmodel.exp_example()

# f''' = w exp(-w) increases on (0, 1] and peaks at w = 1
print(smoothing.classify_f3(f, 1e-6, 1.0).kind.value)
print(smoothing.classify_f3(f, 5e-6, 5.0).kind.value)

for delta in (1.0, 1.5, 5.0):
    cert = analysis.certify_bounds(f, delta)
    print(f"delta={delta}: {cert.verdict:<10} min(f-g)={cert.min_gap:+.3e} "
          f"max(f-g)={cert.max_gap:+.3e}")

# a polynomial piece glued to a shifted square root
q = funcmodel.quintic_sqrt(1, -4, 10, -50, 2)
print(funcmodel.quintic_sqrt_close(1, -4, 10, -50, 2))
print(analysis.certify_bounds(q, 1.0).verdict)

# worst-case error for the square root, and the delta reaching a given error
root = funcmodel.root(0.5)
profile = analysis.worst_case_error(root, 1.0)
print(f"sup |f-g| = {profile.sup_err:.12f} at w = {profile.w2:.6f}")

delta = analysis.solve_delta_for_error(root, 1e-3, search_hi=100.0)
print(f"delta for error 1e-3: {delta:.10f}")
print(f"delta for slope 100: {analysis.solve_delta_for_slope(root, 100.0, 100.0):.10f}")
