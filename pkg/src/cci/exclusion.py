"""Exclusion test: does the convex hull of a net's coefficients miss the origin?

By the convex-hull property of Bernstein coefficients, a net whose
coefficient cloud excludes the origin represents a map with no zero on the
unit square, so the corresponding subdomain can be discarded. The test is
decided by driving Gilbert's minimum-norm-point iteration (Frank-Wolfe with
exact line search) and exiting on the first certificate: a pass needs an
explicit separating direction with positive margin, so a pass is always
sound; anything ambiguous, including a stalled iteration, fails
conservatively.
"""

from __future__ import annotations

import math

import numpy as np

from .geometry import ControlNet

__all__ = ["exclusion_test", "hull_excludes_origin"]

_MAX_ITER = 128
_STALL_LIMIT = 10
_STALL_FACTOR = 1.0 - 1e-3


def hull_excludes_origin(points: np.ndarray, tol: float = 1e-12) -> bool:
    """True iff the origin is certifiably outside conv(points).

    ``tol`` is relative to the coefficient scale (the decision is scale
    invariant): an origin within tol * scale of the hull counts as inside,
    a conservative fail. An all-zero cloud is the origin itself, so it
    also fails.
    """
    pts = np.asarray(points, dtype=float)
    pts = pts.reshape(-1, pts.shape[-1])
    scale = np.abs(pts).max(initial=0.0)
    if scale == 0.0:
        return False
    margin = tol * scale

    # Cheap axis-aligned separation covers the common far-from-zero case.
    if (pts.min(axis=0) > margin).any() or (pts.max(axis=0) < -margin).any():
        return True

    # Gilbert iteration toward the hull's minimum-norm point x. A single
    # matvec per step yields both the Frank-Wolfe vertex and the support
    # certificate: every hull point has inner product >= dots.min() with
    # x, so dots.min() / |x| lower-bounds the distance to the origin.
    x = pts[np.einsum("ij,ij->i", pts, pts).argmin()].copy()
    stall = 0
    nx2 = float(x @ x)
    for _ in range(_MAX_ITER):
        nx = math.sqrt(nx2)
        if nx <= margin:
            return False
        dots = pts @ x
        j = int(dots.argmin())
        if dots[j] > margin * nx:
            return True
        gap = nx2 - float(dots[j])
        if gap <= 0.0:
            # x is the minimum-norm point but its certificate margin is not
            # positive: origin on or within tolerance of the hull boundary.
            return False
        d = x - pts[j]
        dd = float(d @ d)
        if dd == 0.0:
            return False
        x -= min(1.0, gap / dd) * d
        new_nx2 = float(x @ x)
        stall = stall + 1 if new_nx2 > _STALL_FACTOR * nx2 else 0
        nx2 = new_nx2
        if stall >= _STALL_LIMIT:
            break
    return False


def exclusion_test(net: ControlNet, tol: float = 1e-12) -> bool:
    """True iff the net's coefficient hull excludes the origin.

    A pass proves the net's map has no zero over the unit square. A fail
    only means a zero could not be ruled out.
    """
    return hull_excludes_origin(net.coeffs.reshape(-1, net.dim), tol)
