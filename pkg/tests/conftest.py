"""Shared test helpers: independent evaluation oracles and problem generators.

The monomial-basis evaluators here deliberately avoid the de Casteljau code
paths under test; curve and net values are cross-checked against plain
power-basis Horner evaluation.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
import pytest

from cci import BezierCurve, Problem, brute_force_intersections
from cci.geometry import derivative_curve, eval_curve, sample_curve

PROBLEMS_DIR = Path(__file__).resolve().parent.parent / "problems"


@pytest.fixture(scope="session")
def problems_dir() -> Path:
    return PROBLEMS_DIR


# ---------------------------------------------------------------------------
# Monomial (power-basis) oracles

def bernstein_to_monomial(coeffs: np.ndarray) -> np.ndarray:
    """Convert Bernstein coefficients to monomial coefficients along axis 0."""
    c = np.asarray(coeffs, dtype=float)
    m = c.shape[0] - 1
    out = np.zeros_like(c)
    for k in range(m + 1):
        for i in range(k + 1):
            out[k] += ((-1) ** (k - i)) * math.comb(m, i) * math.comb(m - i, k - i) * c[i]
    return out


def horner(mono: np.ndarray, t: float) -> np.ndarray:
    r = np.zeros_like(mono[0])
    for k in range(mono.shape[0] - 1, -1, -1):
        r = r * t + mono[k]
    return r


def monomial_eval_curve(control_points: np.ndarray, t: float) -> np.ndarray:
    return horner(bernstein_to_monomial(control_points), t)


def monomial_eval_net(coeffs: np.ndarray, u: float, v: float) -> np.ndarray:
    mono = bernstein_to_monomial(coeffs)
    mono = np.swapaxes(bernstein_to_monomial(np.swapaxes(mono, 0, 1)), 0, 1)
    rows = np.stack([horner(mono[k], v) for k in range(mono.shape[0])])
    return horner(rows, u)


# ---------------------------------------------------------------------------
# Random problem generation

def random_net_coeffs(rng: np.random.Generator, m: int, n: int, d: int = 3,
                      lo: float = -1.0, hi: float = 1.0) -> np.ndarray:
    return rng.uniform(lo, hi, size=(m + 1, n + 1, d))


def _paired_jacobian(c1: BezierCurve, c2: BezierCurve, u: float, v: float) -> np.ndarray:
    d1 = derivative_curve(c1)
    d2 = derivative_curve(c2)
    return np.stack([eval_curve(d1, u), -eval_curve(d2, v)], axis=1)


def _curve_scale(c1: BezierCurve, c2: BezierCurve) -> float:
    return 1.0 + max(
        float(np.abs(c1.control_points).max()),
        float(np.abs(c2.control_points).max()),
    )


def _is_transversal_instance(c1: BezierCurve, c2: BezierCurve,
                             roots: list[tuple[float, float]]) -> bool:
    # Well-conditioned crossings, separated from each other, with the curves
    # nowhere else close to touching: the regime in which both the solver's
    # find-all guarantee and the oracle's grid search are reliable.
    for k, (u, v) in enumerate(roots):
        jac = _paired_jacobian(c1, c2, u, v)
        sv = np.linalg.svd(jac, compute_uv=False)
        if sv[1] < 0.05 * max(1.0, sv[0]):
            return False
        for u2, v2 in roots[k + 1:]:
            if max(abs(u - u2), abs(v - v2)) < 0.05:
                return False
    ts = np.linspace(0.0, 1.0, 160)
    p = sample_curve(c1, ts)
    q = sample_curve(c2, ts)
    gap = np.abs(p[:, None, :] - q[None, :, :]).max(axis=2)
    for u, v in roots:
        iu = np.abs(ts - u) <= 0.04
        iv = np.abs(ts - v) <= 0.04
        gap[np.ix_(iu, iv)] = np.inf
    return float(gap.min()) >= 1e-3 * _curve_scale(c1, c2)


def random_transversal_problem(
    rng: np.random.Generator, max_degree: int = 6
) -> tuple[Problem, list[tuple[float, float]]]:
    """A random curve pair with only well-conditioned transversal crossings.

    Returns the problem and its oracle-computed intersection parameters.
    Alternates between planar pairs (generic crossings, possibly none) and
    3D pairs translated so they meet at a chosen parameter point.
    """
    while True:
        deg1 = int(rng.integers(2, max_degree + 1))
        deg2 = int(rng.integers(2, max_degree + 1))
        if rng.random() < 0.5:
            a = np.concatenate(
                [rng.uniform(0, 1, (deg1 + 1, 2)), np.zeros((deg1 + 1, 1))], axis=1
            )
            b = np.concatenate(
                [rng.uniform(0, 1, (deg2 + 1, 2)), np.zeros((deg2 + 1, 1))], axis=1
            )
            c1, c2 = BezierCurve(a), BezierCurve(b)
        else:
            c1 = BezierCurve(rng.uniform(0, 1, (deg1 + 1, 3)))
            b = BezierCurve(rng.uniform(0, 1, (deg2 + 1, 3)))
            u0, v0 = rng.uniform(0.2, 0.8, size=2)
            shift = eval_curve(c1, u0) - eval_curve(b, v0)
            c2 = BezierCurve(b.control_points + shift)
        roots = brute_force_intersections(c1, c2)
        if _is_transversal_instance(c1, c2, roots):
            return Problem("random", c1, c2), roots


def match_point_sets(
    got: list[tuple[float, float]],
    expected: list[tuple[float, float]],
    tol: float = 1e-6,
) -> bool:
    if len(got) != len(expected):
        return False
    got = sorted(got)
    expected = sorted(expected)
    return all(
        max(abs(g[0] - e[0]), abs(g[1] - e[1])) <= tol
        for g, e in zip(got, expected)
    )
