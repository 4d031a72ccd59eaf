"""Pointwise extrinsic and intrinsic calculus on an immersed Legendrian surface.

Everything here is derived from jets of the immersion F at a chart point:

* metric        g_ij = real_inner(F_i, F_j), inverse, determinant
* Christoffels  from the metric's exact first derivatives
* second form   B_ij = F_ij - Gamma^k_ij F_k + g_ij F   (the +g_ij F term
                removes the 5-sphere's own curvature, so B measures the
                surface inside the sphere, not inside flat 6-space)
* mean curvature H = g^{ij} B_ij (full trace), its normal-frame components
  mu_a, the cubic form sigma_ijk = real_inner(B_ij, J e_k), shape operators,
  and the Gauss curvature both intrinsically (Brioschi) and extrinsically
  (Gauss equation).

Two layers:

1. Module-level functions (``first_fundamental``, ``christoffels``,
   ``frames``, ``second_fundamental``, ``gauss_curvature``,
   ``legendrian_defect``, ``point_report``) work on plain values extracted
   from the jets of one point — the reference implementations.

2. ``ChartFrame`` carries the same chain but keeps every quantity a *jet*
   over a whole batch of points, so higher operators (divergence of JH, its
   exact gradient, vector Laplacians) come out with no finite-difference
   error.  The two layers are tested against each other.

Index conventions: chart indices i, j, k run over (x, y) = (0, 1);
``gamma[k, i, j]`` is Gamma^k_{ij}; arrays carrying several points append the
batch axes last (e.g. a batched metric has shape (2, 2, n)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import ambient, jets
from .errors import DegenerateMetricError, OrderError
from .jets import Jet2
from .surfaces import ImmersionSpec, evaluate_jet_batch

#: Metric determinants at or below this are treated as degenerate.
DET_TOL = 1e-12


# -- jet-vector helpers ------------------------------------------------------
# An ambient vector field along the surface is a tuple of three Jet2.


def jv_dx(F):
    return tuple(f.dx() for f in F)


def jv_dy(F):
    return tuple(f.dy() for f in F)


def jv_J(F):
    return tuple(f * 1j for f in F)


def jv_combine(alpha, U, beta, V):
    """alpha*U + beta*V for jet (or scalar) coefficients alpha, beta."""
    return tuple(alpha * u + beta * v for u, v in zip(U, V))


def jherm(U, V) -> Jet2:
    """Jet of the hermitian product <U, V> (valid: chart variables are real)."""
    acc = U[0] * V[0].conjugate()
    for u, v in zip(U[1:], V[1:]):
        acc = acc + u * v.conjugate()
    return acc


def jreal(U, V) -> Jet2:
    """Jet of real_inner(U, V)."""
    return jherm(U, V).real_part()


def values(F) -> np.ndarray:
    """Stack the values of a jet-vector into shape (3, *batch)."""
    return np.stack([np.asarray(f.value) for f in F])


# -- value-level reference operations ---------------------------------------


def first_fundamental(F) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Metric, inverse and determinant from jets of degree >= 1.

    Returns (g, g_inv, det_g) with g[i, j] of shape (2, 2, *batch).
    Raises ERR_DEGENERATE_METRIC when det <= 1e-12 anywhere.
    """
    Fi = (jv_dx(F), jv_dy(F))
    g = np.array(
        [[np.real(_herm_values(Fi[i], Fi[j])) for j in range(2)] for i in range(2)]
    )
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if np.any(det <= DET_TOL):
        raise DegenerateMetricError(
            f"metric determinant {float(np.min(det)):.3e} <= {DET_TOL:g}"
        )
    g_inv = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]) / det
    return g, g_inv, det


def _herm_values(U, V):
    return sum(np.asarray(u.value) * np.conj(np.asarray(v.value)) for u, v in zip(U, V))


def legendrian_defect(F) -> float:
    """max_i |<F_i, F>| plus the unit-norm defect ||F|^2 - 1|.

    Zero (to roundoff) exactly when the point lies on the unit sphere and
    both chart directions are Legendrian; the hermitian product catches the
    contact-form component through its imaginary part.
    """
    p = values(F)
    tangency = max(
        float(np.max(np.abs(_herm_values(jv_dx(F), F)))),
        float(np.max(np.abs(_herm_values(jv_dy(F), F)))),
    )
    norm_defect = float(np.max(np.abs(ambient.real_inner(p, p) - 1.0)))
    return tangency + norm_defect


def christoffels(F) -> np.ndarray:
    """Gamma^k_{ij} values, shape (2, 2, 2, *batch); needs degree >= 2.

    The metric's first derivatives come from the jet products, so no
    finite differences are involved.
    """
    if min(f.degree for f in F) < 2:
        raise OrderError("christoffels needs jets of degree >= 2")
    Fx, Fy = jv_dx(F), jv_dy(F)
    gj = [[jreal(U, V) for V in (Fx, Fy)] for U in (Fx, Fy)]
    g = np.array([[np.real(gj[i][j].value) for j in range(2)] for i in range(2)])
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    if np.any(det <= DET_TOL):
        raise DegenerateMetricError(
            f"metric determinant {float(np.min(det)):.3e} <= {DET_TOL:g}"
        )
    ginv = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]) / det
    # dg[l, i, j] = d_l g_ij, exact from the metric jets
    dg = np.array(
        [
            [[np.real(gj[i][j].dx().value) for j in range(2)] for i in range(2)],
            [[np.real(gj[i][j].dy().value) for j in range(2)] for i in range(2)],
        ]
    )
    gamma = np.zeros_like(dg)
    for k in range(2):
        for i in range(2):
            for j in range(2):
                acc = 0.0
                for l in range(2):
                    acc = acc + ginv[k, l] * (dg[i, j, l] + dg[j, i, l] - dg[l, i, j])
                gamma[k, i, j] = 0.5 * acc
    return gamma


def frames(F, g) -> tuple[np.ndarray, ...]:
    """Orthonormal frame (e1, e2, nu1, nu2, R): Gram-Schmidt with F_x first.

    nu_a = J e_a and R = reeb(F); for a Legendrian immersion the five vectors
    are orthonormal and span the tangent space of the sphere.
    """
    Fx = values(jv_dx(F))
    Fy = values(jv_dy(F))
    p = values(F)
    e1 = Fx / np.sqrt(g[0, 0])
    w = Fy - (g[0, 1] / g[0, 0]) * Fx
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    e2 = w / np.sqrt(det / g[0, 0])
    return e1, e2, ambient.apply_J(e1), ambient.apply_J(e2), ambient.reeb(p)


@dataclass(frozen=True)
class SecondFundamental:
    """Value-level bundle returned by ``second_fundamental``.

    ``B[i, j]`` are ambient vectors (shape (2, 2, 3, *batch)); ``sigma`` holds
    the orthonormal-frame components sigma_{abc} = <B(e_a, e_b), J e_c>;
    ``A_nu[alpha]`` are the chart-coordinate quadratic forms of the unit
    normals nu_1, nu_2, and ``A_R`` the (vanishing) Reeb one.
    """

    B: np.ndarray
    sigma: np.ndarray
    H: np.ndarray
    mu: np.ndarray
    A_nu: np.ndarray
    A_R: np.ndarray


def second_fundamental(F, g, gamma) -> SecondFundamental:
    """Second fundamental form data from degree >= 2 jets plus (g, gamma).

    B_ij = F_ij - Gamma^k_ij F_k + g_ij F; H = g^{ij} B_ij (full trace);
    sigma_abc = <B(e_a, e_b), J e_c>; mu_a = <H, J e_a>; A^nu_ij = <B_ij, nu>.
    """
    Fx, Fy = jv_dx(F), jv_dy(F)
    F2 = ((jv_dx(Fx), jv_dy(Fx)), (jv_dx(Fy), jv_dy(Fy)))
    p = values(F)
    Fi = (values(Fx), values(Fy))
    det = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
    ginv = np.array([[g[1, 1], -g[0, 1]], [-g[1, 0], g[0, 0]]]) / det

    B = np.zeros((2, 2) + p.shape, dtype=complex)
    for i in range(2):
        for j in range(2):
            B[i, j] = (
                values(F2[i][j])
                - gamma[0, i, j] * Fi[0]
                - gamma[1, i, j] * Fi[1]
                + g[i, j] * p
            )
    H = sum(ginv[i, j] * B[i, j] for i in range(2) for j in range(2))

    e1, e2, nu1, nu2, R = frames(F, g)
    # chart -> orthonormal frame change: e_a = E[a, i] * F_i
    E = np.zeros((2, 2) + p.shape[1:])
    E[0, 0] = 1.0 / np.sqrt(g[0, 0])
    L = np.sqrt(det / g[0, 0])
    E[1, 0] = -g[0, 1] / (g[0, 0] * L)
    E[1, 1] = 1.0 / L

    sigma_chart = np.array(
        [
            [
                [ambient.real_inner(B[i, j], ambient.apply_J(Fi[k])) for k in range(2)]
                for j in range(2)
            ]
            for i in range(2)
        ]
    )
    sigma = np.einsum("ai...,bj...,ck...,ijk...->abc...", E, E, E, sigma_chart)
    mu = np.array([ambient.real_inner(H, nu1), ambient.real_inner(H, nu2)])
    A_nu = np.array(
        [
            [[ambient.real_inner(B[i, j], nu) for j in range(2)] for i in range(2)]
            for nu in (nu1, nu2)
        ]
    )
    A_R = np.array(
        [[ambient.real_inner(B[i, j], R) for j in range(2)] for i in range(2)]
    )
    return SecondFundamental(B=B, sigma=sigma, H=H, mu=mu, A_nu=A_nu, A_R=A_R)


def shape_operator(F, g, gamma, normal) -> np.ndarray:
    """Chart-coordinate quadratic form <B_ij, normal> for an arbitrary normal.

    The normal is NOT normalized here: passing J F_x reproduces tables stated
    for non-unit normal fields.
    """
    sf = second_fundamental(F, g, gamma)
    return np.array(
        [[ambient.real_inner(sf.B[i, j], normal) for j in range(2)] for i in range(2)]
    )


def gauss_curvature(F) -> tuple[np.ndarray, np.ndarray]:
    """(kappa_intrinsic, kappa_gauss_eq): Brioschi versus the Gauss equation.

    kappa_gauss_eq = 1 + (<B_xx, B_yy> - |B_xy|^2) / det g  (equivalent to the
    orthonormal-frame statement).  kappa_intrinsic is the Brioschi formula on
    the metric's exact first and second derivatives, which requires jets of
    degree >= 3; it never sees the embedding, so agreement of the two numbers
    exercises the Gauss equation itself.
    """
    if min(f.degree for f in F) < 3:
        raise OrderError("gauss_curvature needs jets of degree >= 3 for Brioschi")
    g, g_inv, det = first_fundamental(F)
    gamma = christoffels(F)
    sf = second_fundamental(F, g, gamma)
    kappa_gauss = 1.0 + (
        ambient.real_inner(sf.B[0, 0], sf.B[1, 1])
        - ambient.real_inner(sf.B[0, 1], sf.B[0, 1])
    ) / det

    Fx, Fy = jv_dx(F), jv_dy(F)
    gj = [[jreal(U, V) for V in (Fx, Fy)] for U in (Fx, Fy)]

    def d(i, j, jx, jy):
        return np.real(jets.extract_partial(gj[i][j], jx, jy))

    E, Fm, G = g[0, 0], g[0, 1], g[1, 1]
    E_x, E_y = d(0, 0, 1, 0), d(0, 0, 0, 1)
    G_x, G_y = d(1, 1, 1, 0), d(1, 1, 0, 1)
    F_x_, F_y_ = d(0, 1, 1, 0), d(0, 1, 0, 1)
    E_yy = d(0, 0, 0, 2)
    G_xx = d(1, 1, 2, 0)
    F_xy = d(0, 1, 1, 1)

    def det3(m):
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    zero = np.zeros_like(E)
    m1 = [
        [-0.5 * E_yy + F_xy - 0.5 * G_xx, 0.5 * E_x, F_x_ - 0.5 * E_y],
        [F_y_ - 0.5 * G_x, E, Fm],
        [0.5 * G_y, Fm, G],
    ]
    m2 = [
        [zero, 0.5 * E_y, 0.5 * G_x],
        [0.5 * E_y, E, Fm],
        [0.5 * G_x, Fm, G],
    ]
    kappa_intrinsic = (det3(m1) - det3(m2)) / det**2
    return kappa_intrinsic, kappa_gauss


# -- PointFrame --------------------------------------------------------------


@dataclass(frozen=True)
class PointFrame:
    """Everything the toolkit knows about the surface at one chart point."""

    x: float
    y: float
    F: np.ndarray
    F_x: np.ndarray
    F_y: np.ndarray
    F_xx: np.ndarray
    F_xy: np.ndarray
    F_yy: np.ndarray
    g: np.ndarray
    g_inv: np.ndarray
    det_g: float
    gamma: np.ndarray
    e1: np.ndarray
    e2: np.ndarray
    nu1: np.ndarray
    nu2: np.ndarray
    R: np.ndarray
    B: np.ndarray
    sigma: np.ndarray
    H: np.ndarray
    mu: np.ndarray
    A_nu1: np.ndarray
    A_nu2: np.ndarray
    A_R: np.ndarray
    kappa: float
    kappa_intrinsic: float
    norm_H_sq: float
    norm_B_sq: float
    defect_unit_norm: float
    defect_tangency: float
    defect_legendrian: float


def point_report(spec: ImmersionSpec, x: float, y: float) -> PointFrame:
    """Evaluate the full pointwise bundle at one chart point (degree-4 jets)."""
    F = evaluate_jet_batch(spec, x, y, 4)
    g, g_inv, det = first_fundamental(F)
    gamma = christoffels(F)
    sf = second_fundamental(F, g, gamma)
    e1, e2, nu1, nu2, R = frames(F, g)
    kappa_intr, kappa_gauss = gauss_curvature(F)
    p = values(F)
    Fx, Fy = values(jv_dx(F)), values(jv_dy(F))
    Fxx = values(jv_dx(jv_dx(F)))
    Fxy = values(jv_dy(jv_dx(F)))
    Fyy = values(jv_dy(jv_dy(F)))

    norm_B_sq = 0.0
    for i in range(2):
        for j in range(2):
            for k in range(2):
                for l in range(2):
                    norm_B_sq = norm_B_sq + g_inv[i, k] * g_inv[j, l] * (
                        ambient.real_inner(sf.B[i, j], sf.B[k, l])
                    )

    herm_x = ambient.hermitian_inner(Fx, p)
    herm_y = ambient.hermitian_inner(Fy, p)
    defect_tangency = max(abs(float(np.real(herm_x))), abs(float(np.real(herm_y))))
    defect_legendrian = max(abs(complex(herm_x)), abs(complex(herm_y)))
    defect_norm = abs(float(ambient.real_inner(p, p)) - 1.0)

    return PointFrame(
        x=float(x),
        y=float(y),
        F=p,
        F_x=Fx,
        F_y=Fy,
        F_xx=Fxx,
        F_xy=Fxy,
        F_yy=Fyy,
        g=g,
        g_inv=g_inv,
        det_g=float(det),
        gamma=gamma,
        e1=e1,
        e2=e2,
        nu1=nu1,
        nu2=nu2,
        R=R,
        B=sf.B,
        sigma=sf.sigma,
        H=sf.H,
        mu=np.real(sf.mu),
        A_nu1=sf.A_nu[0],
        A_nu2=sf.A_nu[1],
        A_R=sf.A_R,
        kappa=float(kappa_gauss),
        kappa_intrinsic=float(kappa_intr),
        norm_H_sq=float(ambient.real_inner(sf.H, sf.H)),
        norm_B_sq=float(norm_B_sq),
        defect_unit_norm=defect_norm,
        defect_tangency=defect_tangency,
        defect_legendrian=defect_legendrian + defect_norm,
    )


# -- batched jet chain -------------------------------------------------------


class ChartFrame:
    """Jet-exact geometric chain over a batch of chart points.

    Construct with the desired jet degree (4 gives everything; 2 is enough
    for the value-level quantities needed at finite-difference stencil
    points).  Properties are cached; all arrays put chart indices first and
    batch axes last.
    """

    def __init__(self, spec: ImmersionSpec, xs, ys, degree: int = 4, wrap: bool = True):
        self.spec = spec
        self.xs = np.asarray(xs, dtype=float)
        self.ys = np.asarray(ys, dtype=float)
        self.degree = degree
        self.F = evaluate_jet_batch(spec, self.xs, self.ys, degree, wrap=wrap)

    # --- first derivatives and metric ---

    @cached_property
    def Fx(self):
        return jv_dx(self.F)

    @cached_property
    def Fy(self):
        return jv_dy(self.F)

    @cached_property
    def gj(self):
        """Metric jets gj[i][j], degree-1 lower than F."""
        Fi = (self.Fx, self.Fy)
        return [[jreal(Fi[i], Fi[j]) for j in range(2)] for i in range(2)]

    @cached_property
    def det_j(self) -> Jet2:
        gj = self.gj
        det = gj[0][0] * gj[1][1] - gj[0][1] * gj[0][1]
        if np.any(np.real(det.value) <= DET_TOL):
            raise DegenerateMetricError(
                f"metric determinant {float(np.min(np.real(det.value))):.3e} "
                f"<= {DET_TOL:g}"
            )
        return det

    @cached_property
    def ginv_j(self):
        gj, det = self.gj, self.det_j
        return [
            [gj[1][1] / det, -(gj[0][1] / det)],
            [-(gj[0][1] / det), gj[0][0] / det],
        ]

    @cached_property
    def sqrt_det_j(self) -> Jet2:
        return jets.sqrt(self.det_j)

    @cached_property
    def g(self) -> np.ndarray:
        return np.array(
            [[np.real(self.gj[i][j].value) for j in range(2)] for i in range(2)]
        )

    @cached_property
    def g_inv(self) -> np.ndarray:
        return np.array(
            [[np.real(self.ginv_j[i][j].value) for j in range(2)] for i in range(2)]
        )

    @cached_property
    def det_g(self) -> np.ndarray:
        return np.real(self.det_j.value)

    # --- Christoffels and second derivatives ---

    @cached_property
    def gamma_j(self):
        """Christoffel jets gamma_j[k][i][j] (degree-2 lower than F)."""
        gj, ginv = self.gj, self.ginv_j
        dg = [
            [[gj[i][j].dx() for j in range(2)] for i in range(2)],
            [[gj[i][j].dy() for j in range(2)] for i in range(2)],
        ]
        out = []
        for k in range(2):
            row_k = []
            for i in range(2):
                row_i = []
                for j in range(2):
                    acc = None
                    for l in range(2):
                        term = ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j])
                        acc = term if acc is None else acc + term
                    row_i.append(acc * 0.5)
                row_k.append(row_i)
            out.append(row_k)
        return out

    @cached_property
    def gamma(self) -> np.ndarray:
        return np.array(
            [
                [
                    [np.real(self.gamma_j[k][i][j].value) for j in range(2)]
                    for i in range(2)
                ]
                for k in range(2)
            ]
        )

    @cached_property
    def B_j(self):
        """Second-fundamental-form jets B_j[i][j] (jet-vectors)."""
        F, Fx, Fy = self.F, self.Fx, self.Fy
        F2 = ((jv_dx(Fx), jv_dy(Fx)), (jv_dx(Fy), jv_dy(Fy)))
        gm, gj = self.gamma_j, self.gj
        out = []
        for i in range(2):
            row = []
            for j in range(2):
                vec = tuple(
                    F2[i][j][m]
                    - gm[0][i][j] * Fx[m]
                    - gm[1][i][j] * Fy[m]
                    + gj[i][j] * F[m]
                    for m in range(3)
                )
                row.append(vec)
            out.append(row)
        return out

    @cached_property
    def B(self) -> np.ndarray:
        return np.array(
            [[values(self.B_j[i][j]) for j in range(2)] for i in range(2)]
        )

    @cached_property
    def H_j(self):
        """Mean-curvature jet-vector H = g^{ij} B_ij."""
        ginv, B = self.ginv_j, self.B_j
        acc = None
        for i in range(2):
            for j in range(2):
                term = tuple(ginv[i][j] * b for b in B[i][j])
                acc = term if acc is None else tuple(a + t for a, t in zip(acc, term))
        return acc

    @cached_property
    def H(self) -> np.ndarray:
        return values(self.H_j)

    @cached_property
    def JH_j(self):
        return jv_J(self.H_j)

    @cached_property
    def JH(self) -> np.ndarray:
        return values(self.JH_j)

    @cached_property
    def norm_H_sq_j(self) -> Jet2:
        return jreal(self.H_j, self.H_j)

    @cached_property
    def norm_H_sq(self) -> np.ndarray:
        return np.real(self.norm_H_sq_j.value)

    @cached_property
    def norm_B_sq(self) -> np.ndarray:
        g_inv, B = self.g_inv, self.B
        acc = 0.0
        for i in range(2):
            for j in range(2):
                for k in range(2):
                    for l in range(2):
                        acc = acc + g_inv[i, k] * g_inv[j, l] * (
                            ambient.real_inner(B[i, j], B[k, l])
                        )
        return acc

    @cached_property
    def kappa(self) -> np.ndarray:
        """Gauss-equation curvature 1 + (<B_xx,B_yy> - |B_xy|^2)/det."""
        B = self.B
        return 1.0 + (
            ambient.real_inner(B[0, 0], B[1, 1])
            - ambient.real_inner(B[0, 1], B[0, 1])
        ) / self.det_g

    # --- the JH field and its first-order invariants ---

    @cached_property
    def omega_j(self):
        """Jets of the one-form omega_i = real_inner(JH, F_i)."""
        Fi = (self.Fx, self.Fy)
        return [jreal(self.JH_j, Fi[i]) for i in range(2)]

    @cached_property
    def a_j(self):
        """Jets of the chart components a^i of JH: a^i = g^{ij} omega_j."""
        ginv, om = self.ginv_j, self.omega_j
        return [ginv[i][0] * om[0] + ginv[i][1] * om[1] for i in range(2)]

    @cached_property
    def a(self) -> np.ndarray:
        return np.array([np.real(self.a_j[i].value) for i in range(2)])

    @cached_property
    def div_JH_j(self) -> Jet2:
        """Jet of Div(JH) = (1/sqrt g) d_i (sqrt g a^i); value and gradient exact."""
        s = self.sqrt_det_j
        flux_x = (s * self.a_j[0]).dx()
        flux_y = (s * self.a_j[1]).dy()
        return (flux_x + flux_y) / s

    @cached_property
    def div_JH(self) -> np.ndarray:
        return np.real(self.div_JH_j.value)

    @cached_property
    def grad_div_JH(self) -> np.ndarray:
        """(grad Div JH)^i = g^{ij} d_j Div(JH), exact from the Div jet."""
        d = self.div_JH_j
        ddiv = np.array(
            [np.real(jets.extract_partial(d, 1, 0)), np.real(jets.extract_partial(d, 0, 1))]
        )
        return np.einsum("ij...,j...->i...", self.g_inv, ddiv)

    @cached_property
    def nabla_a_j(self):
        """Jets of the covariant derivative T_i^k = (nabla_i JH)^k."""
        a, gm = self.a_j, self.gamma_j
        da = [[a[k].dx(), a[k].dy()] for k in range(2)]  # da[k][i] = d_i a^k
        return [
            [da[k][i] + gm[k][i][0] * a[0] + gm[k][i][1] * a[1] for k in range(2)]
            for i in range(2)
        ]  # indexed [i][k]

    @cached_property
    def nabla_a(self) -> np.ndarray:
        """Values T[i, k] = (nabla_i JH)^k."""
        return np.array(
            [
                [np.real(self.nabla_a_j[i][k].value) for k in range(2)]
                for i in range(2)
            ]
        )

    @cached_property
    def norm_nabla_JH_sq(self) -> np.ndarray:
        """|nabla JH|^2 = g^{ik} g_{jl} T_i^j T_k^l."""
        T = self.nabla_a
        return np.einsum(
            "ik...,jl...,ij...,kl...->...", self.g_inv, self.g, T, T
        )

    @cached_property
    def laplace_JH(self) -> np.ndarray:
        """Rough Laplacian values (Delta JH)^k = g^{ij} (nabla_i nabla_j JH)^k."""
        T = self.nabla_a_j  # T[j][k] jets, degree >= 1 at construction degree 4
        gamma = self.gamma
        dT = np.array(
            [
                [
                    [
                        np.real(jets.extract_partial(T[j][k], 1 - i, i))
                        for k in range(2)
                    ]
                    for j in range(2)
                ]
                for i in range(2)
            ]
        )  # dT[i, j, k] = d_i T_j^k
        Tv = self.nabla_a
        # (nabla_i T)_j^k = d_i T_j^k + Gamma^k_{il} T_j^l - Gamma^l_{ij} T_l^k
        nabla_T = (
            dT
            + np.einsum("kil...,jl...->ijk...", gamma, Tv)
            - np.einsum("lij...,lk...->ijk...", gamma, Tv)
        )
        return np.einsum("ij...,ijk...->k...", self.g_inv, nabla_T)

    @cached_property
    def laplace_norm_H_sq(self) -> np.ndarray:
        """Scalar Laplace-Beltrami of |H|^2, exact from the degree-2 |H|^2 jet."""
        f = self.norm_H_sq_j
        s, ginv = self.sqrt_det_j, self.ginv_j
        df = [f.dx(), f.dy()]
        flux = [
            s * (ginv[0][0] * df[0] + ginv[0][1] * df[1]),
            s * (ginv[1][0] * df[0] + ginv[1][1] * df[1]),
        ]
        lap = (flux[0].dx() + flux[1].dy()) / s
        return np.real(lap.value)

    @cached_property
    def sigma_chart_j(self):
        """Jets of sigma_ijk = real_inner(B_ij, J F_k) in chart indices."""
        Fi = (self.Fx, self.Fy)
        return [
            [[jreal(self.B_j[i][j], jv_J(Fi[k])) for k in range(2)] for j in range(2)]
            for i in range(2)
        ]

    @cached_property
    def sigma_chart(self) -> np.ndarray:
        return np.array(
            [
                [
                    [np.real(self.sigma_chart_j[i][j][k].value) for k in range(2)]
                    for j in range(2)
                ]
                for i in range(2)
            ]
        )

    @cached_property
    def B_JH_JH(self) -> np.ndarray:
        """Ambient vector B(JH, JH) = a^i a^j B_ij."""
        a, B = self.a, self.B
        return np.einsum("i...,j...,ijm...->m...", a, a, B)

    @cached_property
    def obstruction_density(self) -> np.ndarray:
        """trace <B(., nabla . JH), H> = g^{ij} T_j^k <B_ik, H> (values)."""
        T = self.nabla_a
        inner_BH = np.array(
            [
                [ambient.real_inner(self.B[i, k], self.H) for k in range(2)]
                for i in range(2)
            ]
        )
        return np.einsum("ij...,jk...,ik...->...", self.g_inv, T, inner_BH)

    @cached_property
    def grad_norm_H_sq(self) -> np.ndarray:
        """(grad |H|^2)^i values, exact from the |H|^2 jet."""
        f = self.norm_H_sq_j
        df = np.array(
            [np.real(jets.extract_partial(f, 1, 0)), np.real(jets.extract_partial(f, 0, 1))]
        )
        return np.einsum("ij...,j...->i...", self.g_inv, df)

    # --- frame values ---

    @cached_property
    def F_v(self) -> np.ndarray:
        return values(self.F)

    @cached_property
    def Fx_v(self) -> np.ndarray:
        return values(self.Fx)

    @cached_property
    def Fy_v(self) -> np.ndarray:
        return values(self.Fy)

    @cached_property
    def frame_change(self) -> np.ndarray:
        """E[a, i] with e_a = E[a, i] F_i (Gram-Schmidt, F_x first)."""
        g, det = self.g, self.det_g
        E = np.zeros((2, 2) + np.shape(det))
        E[0, 0] = 1.0 / np.sqrt(g[0, 0])
        L = np.sqrt(det / g[0, 0])
        E[1, 0] = -g[0, 1] / (g[0, 0] * L)
        E[1, 1] = 1.0 / L
        return E

    @cached_property
    def e1(self) -> np.ndarray:
        E = self.frame_change
        return E[0, 0] * self.Fx_v + E[0, 1] * self.Fy_v

    @cached_property
    def e2(self) -> np.ndarray:
        E = self.frame_change
        return E[1, 0] * self.Fx_v + E[1, 1] * self.Fy_v

    @cached_property
    def sigma_frame(self) -> np.ndarray:
        """Orthonormal-frame cubic form sigma_abc = <B(e_a, e_b), J e_c>."""
        E = self.frame_change
        return np.einsum(
            "ai...,bj...,ck...,ijk...->abc...", E, E, E, self.sigma_chart
        )
