"""Plain Newton iteration on 2-component sub-systems.

Used only from starting points that passed the convergence test, so no
damping or globalization is needed; failures are reported, not patched.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import ControlNet, derivative_net, eval_net
from .kantorovich import _is_singular, _solve_2x2

__all__ = ["NewtonResult", "newton_solve"]


@dataclass(frozen=True)
class NewtonResult:
    converged: bool
    root: tuple[float, float]
    iterations: int
    final_step_norm: float
    final_residual_norm: float
    failure_reason: str | None = None
    path: tuple[tuple[float, float], ...] = field(default=(), repr=False)


def newton_solve(
    pair_net: ControlNet,
    x0: tuple[float, float],
    tol: float = 1e-7,
    max_iter: int = 50,
    keep_path: bool = False,
) -> NewtonResult:
    """Newton iteration x <- x - J(x)^-1 f(x) from x0 on a 2-component net.

    Stops when the infinity norm of the step drops to ``tol`` or after
    ``max_iter`` iterations; a singular Jacobian at any iterate aborts.
    ``keep_path`` records every iterate (x0 first) in the result.
    """
    du = derivative_net(pair_net, "u")
    dv = derivative_net(pair_net, "v")
    x = np.array(x0, dtype=float)
    path = [(float(x[0]), float(x[1]))] if keep_path else []
    step_norm = np.inf
    iterations = 0
    failure = "max_iter reached"
    converged = False
    for _ in range(max_iter):
        value = eval_net(pair_net, x[0], x[1])
        jac = np.stack(
            [eval_net(du, x[0], x[1]), eval_net(dv, x[0], x[1])], axis=1
        )
        if _is_singular(jac):
            failure = "singular Jacobian at iterate"
            break
        step = -_solve_2x2(jac, value)
        x = x + step
        iterations += 1
        if keep_path:
            path.append((float(x[0]), float(x[1])))
        step_norm = float(np.abs(step).max())
        if step_norm <= tol:
            converged = True
            failure = None
            break
    residual = float(np.abs(eval_net(pair_net, x[0], x[1])).max())
    return NewtonResult(
        converged=converged,
        root=(float(x[0]), float(x[1])),
        iterations=iterations,
        final_step_norm=float(step_norm),
        final_residual_norm=residual,
        failure_reason=failure,
        path=tuple(path),
    )
