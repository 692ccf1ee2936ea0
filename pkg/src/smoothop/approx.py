"""Best weighted polynomial approximation E_n(f).

E_n(f) is the infimum of ||f - P|| over algebraic polynomials P of degree
<= n - 1, in the weighted norm of :mod:`smoothop.weighted_space`.  The
infimum is replaced by minimization over a fixed discretization of the norm;
each solver reports its optimality gap rather than hiding it.

Solvers by exponent:

* p = 2: weighted least-squares projection on a Gauss-Legendre grid.
* p = inf: Remez-style exchange iteration on the weighted error over the
  4097-point sup grid, with an equioscillation certificate.
* p = 1 and general p: iteratively reweighted least squares (IRLS) on a
  1025-point Gauss-Legendre grid.

Polynomial unknowns always live in the Chebyshev basis, which keeps the
design matrices well conditioned up to degree 64 and beyond.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as C

from .weighted_space import (
    SampledFunction,
    WeightedSpace,
    as_sampled,
    sup_grid,
    validate_params,
)
from .orthopoly import gauss_legendre

__all__ = [
    "BestApproxResult",
    "best_approx",
    "best_approx_sequence",
    "sequence_to_csv",
]

_GRID_P2 = 256
_GRID_IRLS = 1025
_GRID_SUP = 4097
_IRLS_MAX_ITER = 200
_IRLS_RESIDUAL_FLOOR = 1e-10
_EXCHANGE_MAX_ITER = 60


@dataclass
class BestApproxResult:
    """One best-approximation value E_n(f) with its certificate data.

    `coefficients` hold the near-best polynomial of degree <= n - 1 in the
    Chebyshev basis.  `residual_norm_gap` is the solver's own optimality gap
    estimate; `equioscillation` is the exchange certificate (None for the
    other solvers).
    """

    n: int
    value: float
    coefficients: np.ndarray
    solver: str
    iterations: int
    residual_norm_gap: float
    equioscillation: bool | None = None
    flags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if self.value < 0:
            raise ValueError(f"best approximation value must be >= 0, got {self.value}")

    def polynomial(self) -> C.Chebyshev:
        return C.Chebyshev(self.coefficients)


def _require_valid(space: WeightedSpace) -> None:
    verdict = validate_params(space)
    if not verdict:
        raise ValueError(f"space parameters outside the admissible region: {verdict.clause}")


class _Workspace:
    """Grid data shared by every degree of one (f, space) problem."""

    def __init__(self, f: SampledFunction, space: WeightedSpace, n_top: int):
        self.space = space
        self.n_top = n_top
        if space.is_sup:
            self.xs = sup_grid(_GRID_SUP)
            self.qw = None
        else:
            rule = gauss_legendre(_GRID_IRLS if space.p != 2 else _GRID_P2)
            self.xs = rule.nodes
            self.qw = rule.weights
        self.wgt = (1.0 - self.xs**2) ** space.alpha
        self.fx = f(self.xs)
        if not np.all(np.isfinite(self.fx)):
            bad = int(np.flatnonzero(~np.isfinite(self.fx))[0])
            raise ValueError(f"non-finite sample value {self.fx[bad]} at x = {self.xs[bad]}")
        self.vander = C.chebvander(self.xs, n_top - 1) if n_top >= 1 else None

    def design(self, n: int) -> np.ndarray:
        return self.vander[:, :n]


def _solve_projection(ws: _Workspace, n: int) -> BestApproxResult:
    """Exact weighted least squares: the discrete p=2 problem has a closed solution."""
    scale = np.sqrt(ws.qw) * ws.wgt
    A = ws.design(n) * scale[:, None]
    b = ws.fx * scale
    coef, *_ = np.linalg.lstsq(A, b, rcond=None)
    r = b - A @ coef
    value = float(np.linalg.norm(r))
    gap = float(np.max(np.abs(A.T @ r))) if n >= 1 else 0.0
    return BestApproxResult(n, value, coef, "projection", 1, gap)


def _irls_norm(ws: _Workspace, e: np.ndarray) -> float:
    p = ws.space.p
    return float(np.sum(ws.qw * np.abs(e) ** p) ** (1.0 / p))


def _solve_irls(ws: _Workspace, n: int) -> BestApproxResult:
    """Iteratively reweighted least squares for p = 1 and general p."""
    p = ws.space.p
    V = ws.design(n)
    # weighted L2 warm start
    scale0 = np.sqrt(ws.qw) * ws.wgt
    coef, *_ = np.linalg.lstsq(V * scale0[:, None], ws.fx * scale0, rcond=None)
    e = ws.wgt * (ws.fx - V @ coef)
    value = _irls_norm(ws, e)
    flags: tuple[str, ...] = ()
    gap = math.inf
    iters = 0
    for iters in range(1, _IRLS_MAX_ITER + 1):
        # residual magnitudes floored so the p-2 power cannot blow up near zeros
        mag = np.maximum(np.abs(e), _IRLS_RESIDUAL_FLOOR)
        omega = ws.qw * mag ** (p - 2.0)
        scale = np.sqrt(omega) * ws.wgt
        coef, *_ = np.linalg.lstsq(V * scale[:, None], ws.fx * scale, rcond=None)
        e = ws.wgt * (ws.fx - V @ coef)
        new_value = _irls_norm(ws, e)
        gap = abs(new_value - value)
        value = new_value
        if gap <= 1e-14 + 1e-13 * value:
            break
    else:
        flags = ("max_iterations",)
    return BestApproxResult(n, value, coef, "irls", iters, gap, flags=flags)


def _initial_reference(ws: _Workspace, n: int) -> np.ndarray:
    """Indices of n + 1 interior alternation points to seed the exchange."""
    targets = 0.95 * np.cos(np.pi * np.arange(n, -1, -1) / n) if n >= 1 else np.array([0.0])
    idx = np.searchsorted(ws.xs, targets)
    idx = np.clip(idx, 0, ws.xs.size - 1)
    idx = np.unique(idx)
    k = 0
    while idx.size < n + 1:  # top up after collisions (coarse grids only)
        if k not in idx:
            idx = np.sort(np.append(idx, k))
        k += 1
    return idx[: n + 1]


def _alternating_candidates(e: np.ndarray, ref: np.ndarray) -> np.ndarray:
    """Local extrema of the weighted error merged with the current reference,
    compressed to one strongest representative per sign run."""
    mag = np.abs(e)
    interior = np.flatnonzero(
        (mag[1:-1] >= mag[:-2]) & (mag[1:-1] >= mag[2:])
    ) + 1
    cand = np.unique(np.concatenate([interior, ref]))
    signs = np.sign(e[cand])
    cand = cand[signs != 0]
    signs = np.sign(e[cand])
    keep = []
    run_start = 0
    for i in range(1, cand.size + 1):
        if i == cand.size or signs[i] != signs[run_start]:
            run = cand[run_start:i]
            keep.append(run[np.argmax(mag[run])])
            run_start = i
    return np.asarray(keep, dtype=int)


def _select_window(cand: np.ndarray, e: np.ndarray, n: int) -> np.ndarray:
    """Best window of n + 1 consecutive alternating candidates.

    Only windows containing the strongest candidate are considered (the
    exchange must absorb the global error maximum to make progress); among
    those the min |e| over the window is maximized.
    """
    if cand.size == n + 1:
        return cand
    mag = np.abs(e[cand])
    g = int(np.argmax(mag))
    lo = max(0, g - n)
    hi = min(g, cand.size - n - 1)
    best, best_score = lo, -1.0
    for start in range(lo, hi + 1):
        score = float(np.min(mag[start : start + n + 1]))
        if score > best_score:
            best, best_score = start, score
    return cand[best : best + n + 1]


def _solve_exchange(ws: _Workspace, n: int) -> BestApproxResult:
    """Remez-style exchange on the weighted error over the sup grid."""
    V = ws.vander
    W = ws.wgt
    F = ws.fx
    fw_scale = float(np.max(np.abs(F * W)))
    ref = _initial_reference(ws, n)
    coef = np.zeros(n)
    flags: list[str] = []
    equi = False
    gap = math.inf
    iters = 0
    for iters in range(1, _EXCHANGE_MAX_ITER + 1):
        A = np.empty((n + 1, n + 1))
        A[:, :n] = V[ref, :n] * W[ref, None]
        A[:, n] = (-1.0) ** np.arange(n + 1)
        rhs = F[ref] * W[ref]
        try:
            sol = np.linalg.solve(A, rhs)
        except np.linalg.LinAlgError:
            sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
            flags.append("degenerate_reference")
        coef, h = sol[:n], sol[n]
        e = (F - V[:, :n] @ coef) * W
        emax = float(np.max(np.abs(e)))
        gap = emax - abs(h)
        if emax <= 1e-14 * max(1.0, fw_scale):
            equi = True  # f is feasible; the zero error trivially levels
            gap = 0.0
            break
        if gap <= 1e-12 + 1e-9 * emax:
            equi = True
            break
        cand = _alternating_candidates(e, ref)
        if cand.size < n + 1:
            flags.append("reference_collapse")
            break
        new_ref = _select_window(cand, e, n)
        if np.array_equal(new_ref, ref):
            flags.append("stalled_reference")
            break
        ref = new_ref
    else:
        flags.append("max_iterations")
    value = float(np.max(np.abs((F - V[:, :n] @ coef) * W)))
    if equi:
        # alternation with |e| within 1e-6 of the value on every reference point
        e_ref = (F[ref] - V[ref, :n] @ coef) * W[ref]
        tol = 1e-6 * max(1.0, value)
        leveled = bool(np.max(np.abs(np.abs(e_ref) - value)) <= tol)
        alternating = bool(np.all(e_ref[1:] * e_ref[:-1] < 0)) or value <= 1e-14 * max(1.0, fw_scale)
        equi = leveled and alternating
    if not equi and "max_iterations" not in flags and "reference_collapse" not in flags \
            and "stalled_reference" not in flags:
        flags.append("no_certificate")
    return BestApproxResult(
        n, value, coef, "exchange", iters, max(gap, 0.0),
        equioscillation=equi, flags=tuple(flags),
    )


def _solve(ws: _Workspace, n: int) -> BestApproxResult:
    if ws.space.is_sup:
        return _solve_exchange(ws, n)
    if ws.space.p == 2:
        return _solve_projection(ws, n)
    return _solve_irls(ws, n)


def best_approx(f, n: int, space: WeightedSpace) -> BestApproxResult:
    """Best approximation E_n(f) by polynomials of degree <= n - 1.

    Raises ValueError for n < 1 or parameters outside the admissible region.
    Solver non-convergence is reported through `flags` and the gap, not
    raised.
    """
    if n < 1:
        raise ValueError(f"degree bound must satisfy n >= 1, got {n}")
    _require_valid(space)
    ws = _Workspace(as_sampled(f), space, n)
    return _solve(ws, n)


def best_approx_sequence(f, n_max: int, space: WeightedSpace) -> list[BestApproxResult]:
    """E_1, ..., E_{n_max} on one shared grid, with the monotonicity check.

    Best approximation over a larger polynomial space cannot be worse, so
    E_{nu+1} <= E_nu + 1e-9 must hold; a violation flags the offending entry
    as a solver failure.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    _require_valid(space)
    ws = _Workspace(as_sampled(f), space, n_max)
    results = [_solve(ws, n) for n in range(1, n_max + 1)]
    for i in range(1, len(results)):
        if results[i].value > results[i - 1].value + 1e-9:
            results[i].flags = results[i].flags + ("monotonicity_violation",)
    return results


def sequence_to_csv(results: list[BestApproxResult], buf) -> None:
    """Write a sequence as CSV with columns ν, E_ν, solver, iterations, gap."""
    buf.write("ν,E_ν,solver,iterations,gap\n")
    for r in results:
        buf.write(f"{r.n},{r.value:.16e},{r.solver},{r.iterations},{r.residual_norm_gap:.3e}\n")


def sequence_csv(results: list[BestApproxResult]) -> str:
    out = io.StringIO()
    sequence_to_csv(results, out)
    return out.getvalue()
