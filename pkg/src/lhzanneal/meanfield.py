"""Mean-field free-energy landscape f(m) and the self-consistent
magnetization equation of the infinite-range constraint model.

Conventions
-----------
The free energy per physical qubit at control point (s, tau) is

    f(m) = 3 tau m^4 - < (1/beta) ln 2 cosh(beta h_i(m)) >_i,
    h_i(m) = sqrt((4 tau m^3 + s J_i)^2 + (1 - s)^2),

where <...>_i is the coupling-distribution average.  Its stationarity
condition is the fixed-point equation m = rhs(m) with

    rhs(m) = < (4 tau m^3 + s J_i) / h_i(m) * tanh(beta h_i(m)) >_i,

and at zero temperature the tanh factor is identically 1.  Because
df/dm = 12 tau m^2 (m - rhs(m)), the curvature at a fixed point is exactly
f'' = 12 tau m^2 (1 - rhs'(m)); classification uses this closed form (a
finite-difference f'' drowns in rounding noise for the nearly degenerate
minima close to a critical point).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .model import ControlPoint, CouplingModel, Temperature

# Residual |m - rhs(m)| accepted for a stationary point.
RESIDUAL_TOL = 1e-10
# |f''| below this: reported as a degenerate minimum.
DEGENERATE_CURVATURE = 1e-8
# Two minima within this of each other in f count as degenerate (a
# first-order transition); the one with larger m is reported as global.
F_TIE_TOL = 1e-10

_GRID_BASE = 2001
_GRID_MAX = 32001


@dataclass(frozen=True)
class StationaryPoint:
    """One solution of m = rhs(m), with its free energy and curvature type."""

    m: float
    f: float
    kind: str  # "minimum" | "maximum"
    degenerate: bool = False


@dataclass(frozen=True)
class MinimaReport:
    """All stationary points of f at one control point, sorted by m."""

    stationary: tuple[StationaryPoint, ...]
    global_index: int
    control: ControlPoint
    beta: Temperature
    couplings: CouplingModel

    @property
    def global_point(self) -> StationaryPoint:
        return self.stationary[self.global_index]

    def minima(self) -> tuple[StationaryPoint, ...]:
        return tuple(p for p in self.stationary if p.kind == "minimum")


class _Landscape:
    """Scalar and vectorized evaluators for one (control, beta, couplings)."""

    __slots__ = ("s", "tau", "c", "beta", "terms")

    def __init__(self, control: ControlPoint, beta: Temperature, couplings: CouplingModel):
        self.s = control.s
        self.tau = control.tau
        self.c = 1.0 - control.s
        self.beta = beta.beta  # None at zero temperature
        self.terms = couplings.terms()

    # -- scalar paths (math module; used in root polishing) ---------------

    def f(self, m: float) -> float:
        tau, s, c, b = self.tau, self.s, self.c, self.beta
        u0 = 4.0 * tau * m * m * m
        acc = 0.0
        for w, j in self.terms:
            h = math.hypot(u0 + s * j, c)
            if b is None:
                acc += w * h
            else:
                # (1/b) ln 2cosh(b h) = h + (1/b) ln(1 + e^{-2 b h}), h >= 0
                acc += w * (h + math.log1p(math.exp(-2.0 * b * h)) / b)
        return 3.0 * tau * m ** 4 - acc

    def rhs(self, m: float) -> float:
        tau, s, c, b = self.tau, self.s, self.c, self.beta
        u0 = 4.0 * tau * m * m * m
        acc = 0.0
        for w, j in self.terms:
            u = u0 + s * j
            h = math.hypot(u, c)
            if h == 0.0:
                continue  # sign(0) = 0 convention at s = 1, u = 0
            t = u / h
            if b is not None:
                t *= math.tanh(b * h)
            acc += w * t
        return acc

    def rhs_prime(self, m: float) -> float:
        """d rhs/dm = 12 tau m^2 * sum_i w_i r'(u_i)."""
        return 12.0 * self.tau * m * m * self._sum_du(m)

    def _sum_du(self, m: float) -> float:
        """sum_i w_i d/du [u/h tanh(beta h)] at u_i = 4 tau m^3 + s J_i."""
        tau, s, c, b = self.tau, self.s, self.c, self.beta
        u0 = 4.0 * tau * m * m * m
        c2 = c * c
        acc = 0.0
        for w, j in self.terms:
            u = u0 + s * j
            h = math.hypot(u, c)
            if h == 0.0:
                continue
            if b is None:
                acc += w * c2 / h ** 3
            else:
                t = math.tanh(b * h)
                sech2 = (1.0 - t) * (1.0 + t)
                acc += w * (c2 / h ** 3 * t + b * (u / h) ** 2 * sech2)
        return acc

    def g(self, m: float) -> float:
        return m - self.rhs(m)

    def g_prime(self, m: float) -> float:
        return 1.0 - self.rhs_prime(m)

    def curvature(self, m: float) -> float:
        """Exact f'' at a fixed point of the self-consistency map."""
        return 12.0 * self.tau * m * m * self.g_prime(m)

    def drift_rate(self, m: float) -> float:
        """d m*/d tau of a fixed-point branch (implicit differentiation).

        Returns inf where the branch is at a fold (1 - rhs' -> 0).
        """
        p = self._sum_du(m)
        denom = 1.0 - 12.0 * self.tau * m * m * p
        num = 4.0 * m * m * m * p
        if abs(denom) < 1e-12:
            return math.inf
        return num / denom

    # -- vectorized paths (grid scans) -------------------------------------

    def f_vec(self, m: np.ndarray) -> np.ndarray:
        tau, s, c, b = self.tau, self.s, self.c, self.beta
        u0 = 4.0 * tau * m ** 3
        acc = np.zeros_like(m)
        for w, j in self.terms:
            h = np.hypot(u0 + s * j, c)
            if b is None:
                acc = acc + w * h
            else:
                acc = acc + w * (h + np.log1p(np.exp(-2.0 * b * h)) / b)
        return 3.0 * tau * m ** 4 - acc

    def rhs_vec(self, m: np.ndarray) -> np.ndarray:
        tau, s, c, b = self.tau, self.s, self.c, self.beta
        u0 = 4.0 * tau * m ** 3
        acc = np.zeros_like(m)
        for w, j in self.terms:
            u = u0 + s * j
            h = np.hypot(u, c)
            safe = np.where(h > 0.0, h, 1.0)
            t = np.where(h > 0.0, u / safe, 0.0)
            if b is not None:
                t = t * np.tanh(b * h)
            acc = acc + w * t
        return acc


def _as_m_array(m) -> tuple[np.ndarray, bool]:
    arr = np.asarray(m, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise ValueError("m must lie in [-1, 1]")
    return arr, arr.ndim == 0


def free_energy(m, control: ControlPoint, beta: Temperature, couplings: CouplingModel):
    """Free energy per qubit f(m); accepts a scalar or an array of m."""
    arr, scalar = _as_m_array(m)
    ev = _Landscape(control, beta, couplings)
    out = ev.f_vec(np.atleast_1d(arr))
    return float(out[0]) if scalar else out.reshape(arr.shape)


def self_consistency_rhs(m, control: ControlPoint, beta: Temperature, couplings: CouplingModel):
    """Right-hand side of the fixed-point equation m = rhs(m); always in [-1, 1]."""
    arr, scalar = _as_m_array(m)
    ev = _Landscape(control, beta, couplings)
    out = ev.rhs_vec(np.atleast_1d(arr))
    return float(out[0]) if scalar else out.reshape(arr.shape)


def _refine_root(ev: _Landscape, a: float, b: float, ga: float, gb: float) -> float:
    """Polish one bracketed root of g(m) = m - rhs(m).

    Bisection narrows the bracket, then Newton steps (kept inside the
    bracket) take it to ~1e-13 in m; plain bisection continues whenever
    Newton stalls, e.g. at the triple root of a critical point.
    """
    best_m, best_g = (a, ga) if abs(ga) <= abs(gb) else (b, gb)
    # bisection to a width where Newton is safe
    for _ in range(60):
        if b - a <= 1e-7:
            break
        mid = 0.5 * (a + b)
        gm = ev.g(mid)
        if abs(gm) < abs(best_g):
            best_m, best_g = mid, gm
        if gm == 0.0:
            return mid
        if (gm < 0.0) == (ga < 0.0):
            a, ga = mid, gm
        else:
            b, gb = mid, gm
    x, gx = best_m, best_g
    if not a <= x <= b:
        x = 0.5 * (a + b)
        gx = ev.g(x)
    for _ in range(40):
        if abs(gx) < 1e-14:
            break
        gp = ev.g_prime(x)
        step_ok = gp != 0.0 and math.isfinite(gp)
        if step_ok:
            x_new = x - gx / gp
            step_ok = a <= x_new <= b
        if not step_ok:
            # fall back to one bisection step
            if b - a <= 2e-15:
                break
            x_new = 0.5 * (a + b)
        g_new = ev.g(x_new)
        if (g_new < 0.0) == (ga < 0.0):
            a, ga = x_new, g_new
        else:
            b, gb = x_new, g_new
        if abs(g_new) < abs(gx):
            x, gx = x_new, g_new
        elif not step_ok and b - a <= 2e-15:
            break
        else:
            x, gx = x_new, gx if abs(gx) < abs(g_new) else g_new
        if b - a <= 2e-15:
            break
    return x if abs(ev.g(x)) <= abs(ev.g(0.5 * (a + b))) else 0.5 * (a + b)


def _grid_roots(ev: _Landscape, n: int) -> list[float]:
    grid = np.linspace(-1.0, 1.0, n)
    g = grid - ev.rhs_vec(grid)
    roots: list[float] = []
    exact = np.flatnonzero(g == 0.0)
    for i in exact:
        roots.append(float(grid[i]))
    sign_change = np.flatnonzero(g[:-1] * g[1:] < 0.0)
    for i in sign_change:
        m = _refine_root(ev, float(grid[i]), float(grid[i + 1]), float(g[i]), float(g[i + 1]))
        if abs(ev.g(m)) <= RESIDUAL_TOL:  # rejects jump discontinuities at s = 1
            roots.append(m)
    # boundary fixed points (|rhs| = 1 can only be reached at s = 1)
    for mb in (-1.0, 1.0):
        if abs(ev.g(mb)) <= RESIDUAL_TOL:
            roots.append(mb)
    roots.sort()
    deduped: list[float] = []
    for m in roots:
        if not deduped or m - deduped[-1] > 1e-9:
            deduped.append(m)
    return deduped


def find_stationary_points(
    control: ControlPoint, beta: Temperature, couplings: CouplingModel
) -> MinimaReport:
    """All fixed points of m = rhs(m) on [-1, 1], classified by curvature.

    Sign changes of g(m) = m - rhs(m) are bracketed on a uniform grid and
    polished to residual ~1e-13; the grid density doubles (up to 32001
    points) whenever two stationary points fall within two grid cells of
    each other, which resolves the nearly merged minima near a critical
    point.  Classification is by the exact curvature 12 tau m^2 (1 - rhs');
    |f''| < 1e-8 is reported as a degenerate minimum (flat landscapes at
    tau = 0, the symmetric m = 0 point at epsilon = 1/2, critical points).
    """
    ev = _Landscape(control, beta, couplings)
    n = _GRID_BASE
    while True:
        roots = _grid_roots(ev, n)
        cell = 2.0 / (n - 1)
        crowded = any(b - a < 2.0 * cell for a, b in zip(roots, roots[1:]))
        if not crowded or n >= _GRID_MAX:
            break
        n = 2 * n - 1
    points = []
    for m in roots:
        fpp = ev.curvature(m)
        if abs(fpp) < DEGENERATE_CURVATURE:
            kind, degenerate = "minimum", True
        elif fpp > 0.0:
            kind, degenerate = "minimum", False
        else:
            kind, degenerate = "maximum", False
        points.append(StationaryPoint(m=m, f=ev.f(m), kind=kind, degenerate=degenerate))
    return MinimaReport(
        stationary=tuple(points),
        global_index=_global_index(points),
        control=control,
        beta=beta,
        couplings=couplings,
    )


def _global_index(points: list[StationaryPoint]) -> int:
    minima = [i for i, p in enumerate(points) if p.kind == "minimum"]
    if not minima:  # cannot happen for a smooth landscape; keep a sane answer
        return min(range(len(points)), key=lambda i: points[i].f)
    f_best = min(points[i].f for i in minima)
    tied = [i for i in minima if points[i].f <= f_best + F_TIE_TOL]
    return max(tied, key=lambda i: points[i].m)
