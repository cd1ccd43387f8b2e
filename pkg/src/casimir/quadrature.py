"""Globally adaptive Gauss-Kronrod quadrature for vectorised integrands.

The integrands in this package are smooth and exponentially decaying, so a
15-point Kronrod rule with panel bisection certifies very tight tolerances
in a handful of refinement rounds.  Integrands must accept a 1-D ndarray
and evaluate elementwise, which keeps the per-panel cost at a few numpy
calls instead of hundreds of scalar Python calls.
"""

from __future__ import annotations

from typing import Callable, Sequence

import numpy as np

__all__ = ["QuadratureError", "integrate_adaptive"]

# 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
# (QUADPACK abscissae and weights, nonnegative half).
_XK = np.array([
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728,
])
_WG = np.array([
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469,
])

_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])  # ascending, 15 nodes
_WEIGHTS_K = np.concatenate([_WK[:-1], _WK[::-1]])
_WEIGHTS_G = np.zeros(15)
_WEIGHTS_G[1:14:2] = np.concatenate([_WG[:-1], _WG[::-1]])


class QuadratureError(RuntimeError):
    """Error target not certified within budget; carries the partial result."""

    def __init__(self, message: str, estimate: float, error: float):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


def _panel_rule(f, lo, hi):
    """Kronrod values and |K-G| error estimates for a batch of panels."""
    c = 0.5 * (lo + hi)
    h = 0.5 * (hi - lo)
    x = c[:, None] + h[:, None] * _NODES
    fx = np.asarray(f(x.reshape(-1)), dtype=float).reshape(x.shape)
    k = h * (fx @ _WEIGHTS_K)
    g = h * (fx @ _WEIGHTS_G)
    return k, np.abs(k - g)


def integrate_adaptive(
    f: Callable[[np.ndarray], np.ndarray],
    breaks: Sequence[float],
    rel_tol: float = 1e-12,
    abs_tol: float = 0.0,
    max_panels: int = 2048,
) -> tuple[float, float]:
    """Integrate ``f`` over [breaks[0], breaks[-1]]; returns (value, error).

    ``breaks`` seeds the initial panel layout.  Panels carrying more than
    their share of the error budget are bisected until the summed
    Kronrod-Gauss estimate certifies ``rel_tol`` (or ``abs_tol`` if larger).
    """
    pts = np.asarray(breaks, dtype=float)
    if pts.ndim != 1 or pts.size < 2 or np.any(np.diff(pts) <= 0):
        raise ValueError("breaks must be a strictly increasing sequence")
    lo, hi = pts[:-1], pts[1:]
    val, err = _panel_rule(f, lo, hi)
    for _ in range(64):
        total = float(val.sum())
        total_err = float(err.sum())
        target = max(rel_tol * abs(total), abs_tol)
        if total_err <= target:
            return total, total_err
        if lo.size >= max_panels:
            break
        share = target / (2.0 * lo.size)
        bad = err > share
        if not bad.any():
            bad = err == err.max()
        mid = 0.5 * (lo[bad] + hi[bad])
        new_lo = np.concatenate([lo[bad], mid])
        new_hi = np.concatenate([mid, hi[bad]])
        new_val, new_err = _panel_rule(f, new_lo, new_hi)
        lo = np.concatenate([lo[~bad], new_lo])
        hi = np.concatenate([hi[~bad], new_hi])
        val = np.concatenate([val[~bad], new_val])
        err = np.concatenate([err[~bad], new_err])
    raise QuadratureError(
        f"quadrature error {total_err:.3e} above target {target:.3e} "
        f"after {lo.size} panels",
        estimate=float(val.sum()),
        error=float(err.sum()),
    )
