"""The CMC B-scroll f_L in L^3 and its dual minimal surface f in Nil_3(H).

Evaluates surface points, the Gauss map N_L = -C - t*H*B, fundamental
forms, the normal Gauss map g, the signed area density of the Nil_3
surface, and the d'Alembertian eigenvalue residual used for verification.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import PoleError
from .frames import NullFrame
from .integrate import CurvePath
from .lorentz import ParaComplex, Vec3L, mdot

POLE_TOL = 1e-10


@dataclass(frozen=True)
class FundamentalForms:
    """First/second fundamental forms in the (ds, dt) basis, plus H and K."""

    I: np.ndarray
    II: np.ndarray
    H_mean: float
    K_gauss: float


@dataclass(frozen=True)
class SurfaceSample:
    s: float
    t: float
    f_L: Vec3L
    N_L: Vec3L
    f_nil: Vec3L
    df: np.ndarray  # 2x3 Jacobian of f_nil, rows (d/ds, d/dt)
    g_map: ParaComplex | None  # None marks a projection pole


class ScrollSurface:
    """B-scroll surface pair generated by a frame source and its base curve."""

    def __init__(self, frame_source, path: CurvePath):
        self.frame_source = frame_source
        self.path = path
        self.H = frame_source(path.s0).H

    # -- L^3 side ----------------------------------------------------------

    def bscroll_point(self, s, t) -> Vec3L:
        """f_L(s,t) = gamma(s) + t*B(s)."""
        frame = self.frame_source(s)
        gamma = self.path.gamma(s)
        return gamma + frame.B.value() * t

    def gauss_map_L(self, s, t, frame: NullFrame | None = None) -> Vec3L:
        frame = frame or self.frame_source(s)
        _, Bv, Cv = frame.values()
        return -Cv - Bv * (t * self.H)

    def bscroll_partials(self, s, t):
        """(d/ds f_L, d/dt f_L) = (A + t*B', B)."""
        frame = self.frame_source(s)
        Av, Bv, _ = frame.values()
        Bp = frame.B.deriv().value()
        return Av + Bp * t, Bv

    def fundamental_forms(self, s, t, frame: NullFrame | None = None) -> FundamentalForms:
        frame = frame or self.frame_source(s)
        H = self.H
        k1 = frame.kappa1.value
        k2 = frame.kappa2.value
        I = np.array([[2 * t * k1 + t * t * H * H, -1.0], [-1.0, 0.0]])
        # II_ss = <f_ss, N> expanded through the Frenet-Serret relations
        II = np.array([[-k2 + 2 * t * k1 * H + t * t * H**3, -H], [-H, 0.0]])
        Iinv = np.linalg.inv(I)
        shape = Iinv @ II
        return FundamentalForms(
            I=I,
            II=II,
            H_mean=0.5 * float(np.trace(shape)),
            K_gauss=float(np.linalg.det(shape)),
        )

    # -- normal Gauss map ---------------------------------------------------

    def normal_gauss_map(self, s, t, frame: NullFrame | None = None) -> ParaComplex:
        """g = -(N2 + j*N1)/(1 - N3) for N = N_L(s,t); pole at N3 = 1."""
        N = self.gauss_map_L(s, t, frame)
        d = 1.0 - N.x3
        if abs(d) <= POLE_TOL:
            raise PoleError("normal Gauss map pole: N3 ~ 1")
        return ParaComplex(-N.x2 / d, -N.x1 / d)

    # -- Nil_3 side ---------------------------------------------------------

    def nil3_point(self, s, t) -> Vec3L:
        """f = (g1+t*B1, g2+t*B2, g3 - t*B3 + H*J + t*H*(g1*B2 - g2*B1))."""
        frame = self.frame_source(s)
        gamma, J = self.path.dense_eval(s)
        Bv = frame.B.value()
        H = self.H
        return Vec3L(
            gamma.x1 + t * Bv.x1,
            gamma.x2 + t * Bv.x2,
            gamma.x3
            - t * Bv.x3
            + H * J
            + t * H * (gamma.x1 * Bv.x2 - gamma.x2 * Bv.x1),
        )

    def nil3_partials(self, s, t):
        """Coordinate Jacobian rows (d/ds f, d/dt f) of the Nil_3 surface."""
        frame = self.frame_source(s)
        gamma, _ = self.path.dense_eval(s)
        Av, Bv, _ = frame.values()
        Bp = frame.B.deriv().value()
        H = self.H
        dJ = gamma.x1 * Av.x2 - gamma.x2 * Av.x1
        dw = Av.x1 * Bv.x2 + gamma.x1 * Bp.x2 - Av.x2 * Bv.x1 - gamma.x2 * Bp.x1
        fs = np.array(
            [
                Av.x1 + t * Bp.x1,
                Av.x2 + t * Bp.x2,
                Av.x3 - t * Bp.x3 + H * dJ + t * H * dw,
            ]
        )
        ft = np.array(
            [
                Bv.x1,
                Bv.x2,
                -Bv.x3 + H * (gamma.x1 * Bv.x2 - gamma.x2 * Bv.x1),
            ]
        )
        return fs, ft

    def _frame_components(self, point: Vec3L, v: np.ndarray) -> np.ndarray:
        """Components of a coordinate vector in the left-invariant frame E_i."""
        tau = self.H
        return np.array(
            [v[0], v[1], v[2] + tau * (point.x2 * v[0] - point.x1 * v[1])]
        )

    def nil3_jacobian_metrics(self, s, t):
        """Smallest singular value of the Jacobian and the signed area density.

        The density uses the g_R-orthonormal left-invariant frame and the
        frontal normal extended through the singular set via the shared
        normal Gauss map (projectively (N2, -N1, 1) from N = N_L), so its
        sign flips across a non-degenerate singular curve.
        """
        fs, ft = self.nil3_partials(s, t)
        sigma_min = float(np.linalg.svd(np.vstack([fs, ft]), compute_uv=False)[-1])
        point = self.nil3_point(s, t)
        fs_E = self._frame_components(point, fs)
        ft_E = self._frame_components(point, ft)
        N = self.gauss_map_L(s, t)
        n_dir = np.array([N.x2, -N.x1, 1.0])
        n_E = n_dir / np.linalg.norm(n_dir)
        lam = float(np.linalg.det(np.vstack([fs_E, ft_E, n_E])))
        return {"sigma_min": sigma_min, "lambda": lam}

    def nil3_gauss_map_direct(self, s, t) -> ParaComplex:
        """Normal Gauss map of the Nil_3 surface from its own unit normal.

        Independent of N_L: frame components of the tangents, Lorentzian
        normal direction eta*(ft x fs), g_+-normalization, stereographic
        coordinate.  Shares g with the dual B-scroll away from poles.
        """
        fs, ft = self.nil3_partials(s, t)
        point = self.nil3_point(s, t)
        u = self._frame_components(point, fs)
        v = self._frame_components(point, ft)
        cr = np.cross(u, v)
        nd = np.array([-cr[0], cr[1], cr[2]])  # eta applied
        norm2 = -nd[0] ** 2 + nd[1] ** 2 + nd[2] ** 2
        if norm2 <= 0:
            raise PoleError("normal not spacelike (singular or degenerate point)")
        n = nd / np.sqrt(norm2)
        if abs(1.0 + n[2]) <= POLE_TOL:
            raise PoleError("direct Gauss map pole: n3 ~ -1")
        return ParaComplex(n[0] / (1.0 + n[2]), n[1] / (1.0 + n[2]))

    def sample(self, s, t) -> SurfaceSample:
        fs, ft = self.nil3_partials(s, t)
        try:
            g = self.normal_gauss_map(s, t)
        except PoleError:
            g = None
        return SurfaceSample(
            s=float(s),
            t=float(t),
            f_L=self.bscroll_point(s, t),
            N_L=self.gauss_map_L(s, t),
            f_nil=self.nil3_point(s, t),
            df=np.vstack([fs, ft]),
            g_map=g,
        )

    # -- verification quantities -------------------------------------------

    def box_residual(self, s, t, fd_step=1e-3):
        """min over both signs of ||Box N_L -/+ 2 H^2 N_L|| (second-order FD)."""
        res, _ = self.box_check(s, t, fd_step)
        return res

    def box_check(self, s, t, fd_step=1e-3):
        """(residual, matched_sign); sign -1 means Box N_L = -2 H^2 N_L fits."""
        h = float(fd_step)
        H = self.H

        def u(i, j):
            return self.gauss_map_L(s + i * h, t + j * h).as_array()

        grid = {}
        for i in (-1, 0, 1):
            frame = self.frame_source(s + i * h)
            for j in (-2, -1, 0, 1, 2):
                grid[(i, j)] = self.gauss_map_L(s + i * h, t + j * h, frame)

        def arr(i, j):
            return grid[(i, j)].as_array()

        def u_t(i, j):
            return (arr(i, j + 1) - arr(i, j - 1)) / (2 * h)

        def u_s(j):
            return (arr(1, j) - arr(-1, j)) / (2 * h)

        # P = g^{ss} u_s + g^{st} u_t = -u_t ;  Q = g^{ts} u_s + g^{tt} u_t
        dP_ds = -(u_t(1, 0) - u_t(-1, 0)) / (2 * h)

        def Q(j):
            tt = t + j * h
            return -u_s(j) - (tt * H) ** 2 * u_t(0, j)

        dQ_dt = (Q(1) - Q(-1)) / (2 * h)
        box = dP_ds + dQ_dt
        N = arr(0, 0)
        r_plus = float(np.linalg.norm(box - 2 * H * H * N))
        r_minus = float(np.linalg.norm(box + 2 * H * H * N))
        if r_minus <= r_plus:
            return r_minus, -1
        return r_plus, +1

    def fundamental_forms_fd(self, s, t, fd_step=1e-4):
        """FD cross-check of the forms from f_L and N_L directly."""
        h = float(fd_step)

        def p(ds, dt):
            return self.bscroll_point(s + ds, t + dt).as_array()

        fs = (p(h, 0) - p(-h, 0)) / (2 * h)
        ft = (p(0, h) - p(0, -h)) / (2 * h)
        fss = (p(h, 0) - 2 * p(0, 0) + p(-h, 0)) / h**2
        ftt = (p(0, h) - 2 * p(0, 0) + p(0, -h)) / h**2
        fst = (p(h, h) - p(h, -h) - p(-h, h) + p(-h, -h)) / (4 * h**2)
        N = self.gauss_map_L(s, t).as_array()
        eta = np.diag([-1.0, 1.0, 1.0])

        def dot(a, b):
            return float(a @ eta @ b)

        I = np.array([[dot(fs, fs), dot(fs, ft)], [dot(fs, ft), dot(ft, ft)]])
        II = np.array(
            [[dot(fss, N), dot(fst, N)], [dot(fst, N), dot(ftt, N)]]
        )
        shape = np.linalg.inv(I) @ II
        return FundamentalForms(
            I=I,
            II=II,
            H_mean=0.5 * float(np.trace(shape)),
            K_gauss=float(np.linalg.det(shape)),
        )


def bscroll_point(frame: NullFrame, path: CurvePath, s, t) -> Vec3L:
    return path.gamma(s) + frame.B.value() * t


def gauss_map_L(frame: NullFrame, s, t) -> Vec3L:
    _, Bv, Cv = frame.values()
    return -Cv - Bv * (t * frame.H)
