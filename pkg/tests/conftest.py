import numpy as np
import pytest

from smoothkit import funcmodel as M

# families whose third derivative is decreasing on their whole domain
DECREASING_F3 = {
    "root-0.5": lambda: M.root(0.5),
    "root-1/3": lambda: M.root(1 / 3),
    "root-0.9": lambda: M.root(0.9),
    "arcsinh-sqrt": M.arcsinh_sqrt,
    "entropy": M.entropy,
    "incremental-entropy": M.incremental_entropy,
}

# every builtin, with a range of interior points safe for a finite-difference stencil
BUILTIN_CASES = {
    "root-0.1": (lambda: M.root(0.1), 0.05, 5.0),
    "root-0.5": (lambda: M.root(0.5), 0.05, 5.0),
    "root-0.9": (lambda: M.root(0.9), 0.05, 5.0),
    "entropy": (M.entropy, 0.05, 0.95),
    "incremental-entropy": (M.incremental_entropy, 0.05, 5.0),
    "arcsinh-sqrt": (M.arcsinh_sqrt, 0.05, 5.0),
    "exp-example": (M.exp_example, 0.05, 8.0),
    "quintic-sqrt-gen": (lambda: M.quintic_sqrt(1, -4, 10, -50, 2), 0.05, 5.0),
    "quintic-sqrt-gg": (lambda: M.quintic_sqrt(1, -5, 0, -3, 3), 0.05, 6.0),
    "cubic-sqrt": (lambda: M.cubic_sqrt(0.01), 0.05, 3.0),
}


def fd_derivative(fun, x, h):
    """Fourth-order central difference of ``fun`` at ``x``."""
    return (fun(x - 2 * h) - 8 * fun(x - h) + 8 * fun(x + h) - fun(x + 2 * h)) / (12 * h)


def safe_delta(f, delta):
    """Clamp a delta to the model's domain."""
    return min(delta, 0.9 * f.domain.upper) if f.domain.bounded else delta


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for rep in terminalreporter.stats.get(key, []):
            for name, value in getattr(rep, "user_properties", []):
                if name == "acceptance" and rep.when == "call":
                    lines.append(value)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
