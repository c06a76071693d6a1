"""Adaptive Dormand-Prince 5(4) integration with cubic-Hermite dense output.

Used for the base null curve gamma' = A (with the running Heisenberg area
integral J) and for the Frenet-Serret frame flow.  Example generators such
as cot(exp(s)/2) have rapidly varying derivatives, hence the embedded pair
with PI step control rather than fixed-step RK4.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field

import numpy as np

from .errors import MaxStepsExceeded, OutOfRange, StepUnderflow
from .lorentz import Vec3L

# Dormand-Prince 5(4) tableau
_C = np.array([0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0])
_A = [
    [],
    [1 / 5],
    [3 / 40, 9 / 40],
    [44 / 45, -56 / 15, 32 / 9],
    [19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729],
    [9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656],
    [35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84],
]
_B5 = np.array([35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0])
_E = np.array(
    [71 / 57600, 0.0, -71 / 16695, 71 / 1920, -17253 / 339200, 22 / 525, -1 / 40]
)


@dataclass
class IntegratorConfig:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    # the dense output is cubic Hermite between accepted steps, so the step
    # cap (not the embedded-pair tolerance) controls interpolation error
    max_step: float = 0.01
    min_step: float = 1e-13
    max_steps: int = 100_000

    def __post_init__(self):
        if self.abs_tol <= 0 or self.rel_tol <= 0:
            raise ValueError("tolerances must be positive")
        if not self.min_step < self.max_step:
            raise ValueError("min_step must be below max_step")


def _dopri_samples(f, s0, y0, s1, cfg: IntegratorConfig):
    """Accepted samples [(s, y, f(s,y))] from s0 to s1 (either direction)."""
    y = np.asarray(y0, dtype=float)
    s = float(s0)
    samples = [(s, y.copy(), np.asarray(f(s, y), dtype=float))]
    if s1 == s0:
        return samples
    direction = 1.0 if s1 > s0 else -1.0
    span = abs(s1 - s0)
    h = min(cfg.max_step, span / 10.0, 1e-2)
    k0 = samples[0][2]
    err_prev = 1.0
    nsteps = 0
    while direction * (s1 - s) > 0:
        if nsteps >= cfg.max_steps:
            raise MaxStepsExceeded(f"{cfg.max_steps} steps exhausted at s={s}")
        nsteps += 1
        if h < cfg.min_step:
            raise StepUnderflow(f"step {h:.3e} below min_step at s={s}")
        # clamping to the remaining span is not an underflow
        hd = direction * min(h, abs(s1 - s))
        k = [k0]
        for i in range(1, 7):
            yi = y + hd * sum(a * ki for a, ki in zip(_A[i], k))
            k.append(np.asarray(f(s + _C[i] * hd, yi), dtype=float))
        y_new = y + hd * sum(b * ki for b, ki in zip(_B5, k))
        err_vec = hd * sum(e * ki for e, ki in zip(_E, k))
        scale = cfg.abs_tol + cfg.rel_tol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.sqrt(np.mean((err_vec / scale) ** 2)))
        if err <= 1.0:
            s = s + hd
            y = y_new
            k0 = k[6]  # FSAL
            samples.append((s, y.copy(), k0.copy()))
            # PI controller
            fac = 0.9 * err ** -0.14 * err_prev ** 0.08 if err > 0 else 5.0
            err_prev = max(err, 1e-10)
        else:
            fac = max(0.2, 0.9 * err ** -0.2)
        h = min(cfg.max_step, h * min(5.0, max(0.2, fac)))
    return samples


class _DenseTable:
    """Hermite interpolation over accepted (s, y, y') samples.

    Cubic by default; quintic (C^2, needed when second s-differences of the
    interpolant feed finite-difference oracles) when ``d2`` supplies exact
    second derivatives y'' = d2(s, y, y') at the sample points.
    """

    def __init__(self, samples, d2=None):
        samples = sorted(samples, key=lambda t: t[0])
        self.s = [t[0] for t in samples]
        self.y = [t[1] for t in samples]
        self.dy = [t[2] for t in samples]
        self.ddy = None
        if d2 is not None:
            self.ddy = [
                np.asarray(d2(s, y, dy), dtype=float)
                for s, y, dy in zip(self.s, self.y, self.dy)
            ]

    @property
    def lo(self):
        return self.s[0]

    @property
    def hi(self):
        return self.s[-1]

    def __call__(self, s):
        s = float(s)
        if s < self.lo - 1e-12 or s > self.hi + 1e-12:
            raise OutOfRange(f"s={s} outside [{self.lo}, {self.hi}]")
        i = bisect.bisect_right(self.s, s) - 1
        i = min(max(i, 0), len(self.s) - 2)
        s0, s1 = self.s[i], self.s[i + 1]
        if s == s0:
            return self.y[i].copy()
        if s == s1:
            return self.y[i + 1].copy()
        h = s1 - s0
        u = (s - s0) / h
        if self.ddy is None:
            h00 = (1 + 2 * u) * (1 - u) ** 2
            h10 = u * (1 - u) ** 2
            h01 = u * u * (3 - 2 * u)
            h11 = u * u * (u - 1)
            return (
                h00 * self.y[i]
                + h10 * h * self.dy[i]
                + h01 * self.y[i + 1]
                + h11 * h * self.dy[i + 1]
            )
        u2, u3, u4, u5 = u * u, u**3, u**4, u**5
        q0 = 1 - 10 * u3 + 15 * u4 - 6 * u5
        q1 = u - 6 * u3 + 8 * u4 - 3 * u5
        q2 = 0.5 * u2 - 1.5 * u3 + 1.5 * u4 - 0.5 * u5
        q3 = 10 * u3 - 15 * u4 + 6 * u5
        q4 = -4 * u3 + 7 * u4 - 3 * u5
        q5 = 0.5 * u3 - u4 + 0.5 * u5
        return (
            q0 * self.y[i]
            + q1 * h * self.dy[i]
            + q2 * h * h * self.ddy[i]
            + q3 * self.y[i + 1]
            + q4 * h * self.dy[i + 1]
            + q5 * h * h * self.ddy[i + 1]
        )


def solve_dense(f, s0, y0, grid, cfg: IntegratorConfig):
    """Integrate from s0 and evaluate on an arbitrary grid (both directions)."""
    grid = np.asarray(grid, dtype=float)
    samples = []
    if grid.min() < s0:
        samples += _dopri_samples(f, s0, y0, grid.min(), cfg)
    if grid.max() > s0:
        samples += _dopri_samples(f, s0, y0, grid.max(), cfg)
    if not samples:
        dy0 = np.asarray(f(s0, np.asarray(y0, float)), dtype=float)
        samples = [(s0, np.asarray(y0, float), dy0)]
    table = _DenseTable(samples)
    return [table(s) for s in grid]


@dataclass
class CurvePath:
    """Sampled base null curve gamma (with gamma' = A) and area integral J.

    gamma(s0) = 0 and J(s0) = 0; the ambient translation freedom and the
    Heisenberg left-translation freedom absorb any other choice of
    constants.
    """

    s0: float
    table: _DenseTable = field(repr=False)

    @property
    def s_min(self):
        return self.table.lo

    @property
    def s_max(self):
        return self.table.hi

    @property
    def samples(self):
        """Ordered (s, gamma, J, gamma') tuples at the accepted steps."""
        out = []
        for s, y, dy in zip(self.table.s, self.table.y, self.table.dy):
            out.append((s, Vec3L(*y[0:3]), float(y[3]), Vec3L(*dy[0:3])))
        return out

    def dense_eval(self, s):
        """(gamma, J) at s by cubic-Hermite interpolation."""
        y = self.table(s)
        return Vec3L(*y[0:3]), float(y[3])

    def gamma(self, s) -> Vec3L:
        return self.dense_eval(s)[0]


def integrate_curve(frame_source, s0, s_range, config=None) -> CurvePath:
    """Solve gamma' = A(s), J' = gamma1*A2 - gamma2*A1 over s_range.

    A(s) comes from the frame source; gamma and J start at zero at s0.
    """
    cfg = config or IntegratorConfig()
    lo, hi = float(s_range[0]), float(s_range[1])
    if not (lo <= s0 <= hi):
        raise ValueError(f"s0={s0} outside range [{lo}, {hi}]")

    def rhs(s, y):
        Av = frame_source(s).A.value()
        return np.array(
            [Av.x1, Av.x2, Av.x3, y[0] * Av.x2 - y[1] * Av.x1]
        )

    def rhs2(s, y, dy):
        # exact second derivative: gamma'' = A', J'' = gamma1*A2' - gamma2*A1'
        Ap = frame_source(s).A.deriv().value()
        return np.array([Ap.x1, Ap.x2, Ap.x3, y[0] * Ap.x2 - y[1] * Ap.x1])

    y0 = np.zeros(4)
    samples = []
    if lo < s0:
        samples += _dopri_samples(rhs, s0, y0, lo, cfg)
    if hi > s0:
        samples += _dopri_samples(rhs, s0, y0, hi, cfg)
    if not samples:
        samples = [(s0, y0, rhs(s0, y0))]
    # de-duplicate the shared anchor at s0
    seen = set()
    uniq = []
    for t in samples:
        if t[0] not in seen:
            seen.add(t[0])
            uniq.append(t)
    return CurvePath(s0=s0, table=_DenseTable(uniq, d2=rhs2))
