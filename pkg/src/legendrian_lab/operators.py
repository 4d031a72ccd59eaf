"""Differential operators on surface fields and the variational residuals.

Derivative strategy (the accuracy budget everything below leans on):

* Pointwise quantities (metric, B, H, JH, Div(JH), its exact chart gradient,
  the rough Laplacian of JH, |nabla JH|^2, Delta|H|^2, B(JH,JH), the
  obstruction trace) come out of the degree-4 jet chain in
  ``geometry.ChartFrame`` with no finite-difference error.

* Anything that differentiates a *derived field* (generic divergence,
  gradient, Laplace-Beltrami, covariant derivatives of user fields,
  Delta Div(JH), the normal-bundle Laplacian of H, Brioschi curvature from
  the metric, closedness and four-symmetry checks) uses 4th-order central
  differences with step h = 1e-3 * (1 + |coordinate|) and one Richardson
  extrapolation level, nested at most two deep.  Each level contributes
  roughly h^4 ~ 1e-12 relative error, which is what the tolerance ladder
  encodes.

Residuals implemented (ambient Euclidean norm for vector equations,
absolute value for scalar ones):

* csL:                  Div(JH) = 0
* Willmore-Legendrian:  -J grad Div(JH) + B(JH,JH) - |H|^2 H / 2
                        - 2 Div(JH) R = 0
* csL-Willmore:         Delta Div(JH) + 2 trace<B(., nabla . JH), H>
                        - |H|^2 Div(JH) / 2 - 4 Div(JH) = 0,
  cross-checked against the direct form Div(J W - 2 JH) where W is half the
  Willmore-Legendrian bracket (so <W, R> = -Div(JH)).

``identity_suite`` verifies the web of identities connecting these
quantities at seeded sample points; ``run_verification`` bundles the grid
residuals plus the suite into one report.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import ambient
from .errors import GridError, NotTangentError, StencilOutOfDomainError
from .geometry import ChartFrame, gauss_curvature
from .surfaces import ImmersionSpec, grid_points, sample_points

#: Base finite-difference step scale: h = FD_H_SCALE * (1 + |coordinate|).
FD_H_SCALE = 1e-3

#: Stencil offsets in units of h, serving both D(h) and D(h/2).
_OFFSETS = np.array([-2.0, -1.0, -0.5, 0.5, 1.0, 2.0])

#: |H| below this excludes a point from log|H| and JH/|H| constructs.
SMALL_H = 1e-3

#: Grid-max |Div(JH)| below this marks a member as csL for gated checks.
CSL_GATE = 1e-6

#: Tolerances for the identity suite (scaled by the CLI's tolerance factor).
IDENTITY_TOLERANCES = {
    "legendrian_defect": 1e-11,
    "tri_symmetry": 1e-11,
    "reeb_normal": 1e-11,
    "gauss_claim": 1e-10,
    "gauss_vs_brioschi": 1e-7,
    "gauss_vs_brioschi_fd": 1e-7,
    "ricci_identity": 1e-5,
    "normal_laplacian": 1e-4,
    "div_jb_identity": 1e-5,
    "bochner": 1e-5,
    "log_h_curvature": 1e-5,
    "four_symmetry": 1e-6,
    "closedness": 1e-6,
    "sasakian_reeb": 1e-6,
    "sasakian_J": 1e-6,
}

#: Tolerances for the grid residual checks run by the verify command.
VERIFY_TOLERANCES = {
    "legendrian_defect": 1e-10,
    "csl_residual": 1e-7,
    "csl_willmore_residual": 1e-5,
    "csl_willmore_agreement": 1e-4,
    "obstruction_trace": 1e-6,
    "willmore_implies_minimal": 1e-6,
}

#: Neutral one-line description attached to each check in reports.
CHECK_DESCRIPTIONS = {
    "legendrian_defect": "unit-norm and Legendrian tangency defect of F",
    "tri_symmetry": "full symmetry of the cubic form <B(e_a,e_b), J e_c>",
    "reeb_normal": "H orthogonal to the Reeb direction; vanishing Reeb shape operator",
    "gauss_claim": "2*kappa = 2 + |H|^2 - |B|^2",
    "gauss_vs_brioschi": "Gauss-equation curvature vs intrinsic Brioschi (jet metric derivatives)",
    "gauss_vs_brioschi_fd": "Gauss-equation curvature vs intrinsic Brioschi (finite-difference metric derivatives)",
    "ricci_identity": "Delta(JH) = grad Div(JH) + kappa JH for the closed dual one-form",
    "normal_laplacian": "normal-bundle Laplacian identity Delta^nu H + J Delta(JH) + H + 2 Div(JH) R = 0",
    "div_jb_identity": "Div(J B(JH,JH)) = 2 trace<B(., nabla . JH), H> + grad_{JH}|H|^2 / 2",
    "bochner": "1/2 Delta|H|^2 = |nabla JH|^2 + kappa |JH|^2 on csL members",
    "log_h_curvature": "Delta log|H| = kappa away from zeros of H on csL members",
    "four_symmetry": "full symmetry of the covariant derivative of the cubic form",
    "closedness": "closedness of the one-form dual to JH",
    "sasakian_reeb": "sphere covariant derivative of the Reeb field equals -J X",
    "sasakian_J": "(nabla_X J)(Y) = <X,Y> R - alpha(Y) X on the sphere",
    "csl_residual": "csL equation: Div(JH) = 0",
    "csl_willmore_residual": "csL-Willmore equation (expanded fourth-order form)",
    "csl_willmore_agreement": "expanded vs direct csL-Willmore residual agreement",
    "obstruction_trace": "trace<B(., nabla . JH), H> = 0",
    "willmore_implies_minimal": "small Willmore-Legendrian residual forces small |H|",
    "willmore_legendrian_residual": "Willmore-Legendrian equation residual (grid max reported)",
}


# -- report containers --------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    """One named residual check: aggregate magnitudes and pass/fail status."""

    name: str
    description: str
    n_points: int
    n_skipped: int
    max_residual: float
    rms_residual: float
    tolerance: float
    status: str  # PASS | FAIL | SKIP

    @property
    def passed(self) -> bool:
        return self.status != "FAIL"


@dataclass(frozen=True)
class ResidualReport:
    """Bundle of checks for one surface plus the sampling descriptor."""

    surface: str
    descriptor: str
    checks: tuple[CheckResult, ...]

    @property
    def all_pass(self) -> bool:
        return all(c.passed for c in self.checks)


def _make_check(
    name: str,
    residuals: np.ndarray,
    tolerance: float,
    used_mask: np.ndarray | None = None,
) -> CheckResult:
    residuals = np.atleast_1d(np.asarray(residuals, dtype=float))
    n = residuals.size
    if used_mask is None:
        used_mask = np.ones(n, dtype=bool)
    used = residuals[used_mask]
    n_used = used.size
    if n_used == 0:
        return CheckResult(
            name=name,
            description=CHECK_DESCRIPTIONS.get(name, name),
            n_points=n,
            n_skipped=n,
            max_residual=0.0,
            rms_residual=0.0,
            tolerance=tolerance,
            status="SKIP",
        )
    max_r = float(np.max(np.abs(used)))
    rms = float(np.sqrt(np.mean(used**2)))
    return CheckResult(
        name=name,
        description=CHECK_DESCRIPTIONS.get(name, name),
        n_points=n,
        n_skipped=n - n_used,
        max_residual=max_r,
        rms_residual=rms,
        tolerance=tolerance,
        status="PASS" if max_r < tolerance else "FAIL",
    )


# -- finite differences -------------------------------------------------------


def _as_1d(x, y) -> tuple[np.ndarray, np.ndarray, bool]:
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    ys = np.atleast_1d(np.asarray(y, dtype=float))
    scalar = np.isscalar(x) or np.shape(x) == ()
    return xs, ys, scalar


def partial_derivative(spec: ImmersionSpec, f, xs, ys, axis: int) -> np.ndarray:
    """4th-order Richardson-extrapolated partial of a vectorized field.

    ``f(xs, ys)`` must accept 1-D arrays and return an array whose LAST axis
    is the batch.  Step h = 1e-3 (1 + |t|) along the chosen axis; the stencil
    reaches 2h, and on a non-periodic axis a stencil leaving the chart raises
    ERR_STENCIL_OUT_OF_DOMAIN.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    t = (xs, ys)[axis]
    h = FD_H_SCALE * (1.0 + np.abs(t))
    lo, hi = spec.chart_domain[axis]
    if not spec.periodic[axis]:
        if np.any(t - 2.0 * h < lo) or np.any(t + 2.0 * h > hi):
            raise StencilOutOfDomainError(
                f"stencil of half-width {float(np.max(2.0 * h)):.2e} along "
                f"{'xy'[axis]} leaves the non-periodic range [{lo:g}, {hi:g}]"
            )
    shifted = t[None, :] + _OFFSETS[:, None] * h[None, :]  # (6, n)
    if axis == 0:
        X, Y = shifted, np.broadcast_to(ys, shifted.shape)
    else:
        X, Y = np.broadcast_to(xs, shifted.shape), shifted
    vals = np.asarray(f(X.ravel(), Y.ravel()))
    vals = vals.reshape(vals.shape[:-1] + (6, t.size))
    d_h = (8.0 * (vals[..., 4, :] - vals[..., 1, :]) - (vals[..., 5, :] - vals[..., 0, :])) / (
        12.0 * h
    )
    d_h2 = (8.0 * (vals[..., 3, :] - vals[..., 2, :]) - (vals[..., 4, :] - vals[..., 1, :])) / (
        6.0 * h
    )
    return (16.0 * d_h2 - d_h) / 15.0


# -- generic chart operators --------------------------------------------------


def field_JH(spec: ImmersionSpec, x, y):
    """Chart components (a^1, a^2) of the tangent field J H.

    a^i = g^{ij} real_inner(JH, F_j); the ambient JH must be reconstructed by
    a^i F_i to 1e-10 (it is tangent exactly when the immersion is Legendrian
    and H is orthogonal to the Reeb direction) — ERR_NOT_TANGENT otherwise.
    """
    xs, ys, scalar = _as_1d(x, y)
    fr = ChartFrame(spec, xs, ys, degree=2, wrap=False)
    a = fr.a
    recon = a[0] * fr.Fx_v + a[1] * fr.Fy_v
    dev = np.sqrt(np.sum(np.abs(fr.JH - recon) ** 2, axis=0))
    if np.any(dev > 1e-10):
        raise NotTangentError(
            f"J H has a non-tangent component of size {float(np.max(dev)):.3e}"
        )
    if scalar:
        return float(a[0][0]), float(a[1][0])
    return a[0], a[1]


def jh_field(spec: ImmersionSpec):
    """The TangentField evaluator for J H (no tangency gate, for stencils)."""

    def evaluate(xs, ys):
        return ChartFrame(spec, xs, ys, degree=2, wrap=False).a

    return evaluate


def divergence(spec: ImmersionSpec, field, x, y):
    """Metric divergence (1/sqrt g) d_i(sqrt g a^i) of a tangent field.

    ``field(xs, ys) -> (2, n)`` chart components; differentiation by the
    module's finite-difference stencil on the jet-exact flux values.
    """
    xs, ys, scalar = _as_1d(x, y)

    def flux(px, py):
        a = np.asarray(field(px, py))
        sd = np.sqrt(ChartFrame(spec, px, py, degree=1, wrap=False).det_g)
        return sd * a

    ddx = partial_derivative(spec, flux, xs, ys, 0)[0]
    ddy = partial_derivative(spec, flux, xs, ys, 1)[1]
    out = (ddx + ddy) / np.sqrt(ChartFrame(spec, xs, ys, degree=1, wrap=False).det_g)
    return float(out[0]) if scalar else out


def gradient(spec: ImmersionSpec, scalar_field, x, y):
    """Metric gradient components g^{ij} d_j f of a scalar field."""
    xs, ys, scalar = _as_1d(x, y)
    df = np.stack(
        [
            partial_derivative(spec, scalar_field, xs, ys, 0),
            partial_derivative(spec, scalar_field, xs, ys, 1),
        ]
    )
    g_inv = ChartFrame(spec, xs, ys, degree=1, wrap=False).g_inv
    out = np.einsum("ij...,j...->i...", g_inv, df)
    if scalar:
        return float(out[0][0]), float(out[1][0])
    return out


def laplace_beltrami(spec: ImmersionSpec, scalar_field, x, y):
    """Laplace-Beltrami of a scalar field: divergence of its gradient."""

    def grad_field(px, py):
        return np.asarray(gradient(spec, scalar_field, px, py))

    return divergence(spec, grad_field, x, y)


def covariant_derivative(spec: ImmersionSpec, field, x, y):
    """nabla_i a^j = d_i a^j + Gamma^j_{ik} a^k, indexed [i, j].

    The chart partials of the field come from finite differences; the
    Christoffel symbols are jet-exact.
    """
    xs, ys, scalar = _as_1d(x, y)
    da = np.stack(
        [
            partial_derivative(spec, field, xs, ys, 0),
            partial_derivative(spec, field, xs, ys, 1),
        ]
    )  # da[i, j] = d_i a^j
    fr = ChartFrame(spec, xs, ys, degree=2, wrap=False)
    a = np.asarray(field(xs, ys))
    T = da + np.einsum("jik...,k...->ij...", fr.gamma, a)
    return T[..., 0] if scalar else T


def nabla_JH_pack(spec: ImmersionSpec, x, y):
    """(nabla JH, |nabla JH|^2) from the jet chain (no finite differences).

    Returns (T, s) with T[i, j] = (nabla_i JH)^j.  The generic
    ``covariant_derivative`` applied to the JH field cross-checks this.
    """
    xs, ys, scalar = _as_1d(x, y)
    fr = ChartFrame(spec, xs, ys, degree=4, wrap=False)
    T, s = fr.nabla_a, fr.norm_nabla_JH_sq
    if scalar:
        return T[..., 0], float(s[0])
    return T, s


# -- Willmore machinery -------------------------------------------------------


def _willmore_bracket(fr: ChartFrame) -> np.ndarray:
    """-J grad Div(JH) + B(JH,JH) - |H|^2 H / 2 - 2 Div(JH) R (ambient)."""
    gd = fr.grad_div_JH
    gd_amb = gd[0] * fr.Fx_v + gd[1] * fr.Fy_v
    R = ambient.reeb(fr.F_v)
    return (
        -ambient.apply_J(gd_amb)
        + fr.B_JH_JH
        - 0.5 * fr.norm_H_sq * fr.H
        - 2.0 * fr.div_JH * R
    )


def willmore_operator(spec: ImmersionSpec, x, y):
    """The Willmore-Legendrian operator W (ambient vector, shape (3, n)).

    W = (bracket)/2 with the bracket above; <W, R> = -Div(JH).
    """
    xs, ys, scalar = _as_1d(x, y)
    fr = ChartFrame(spec, xs, ys, degree=4, wrap=False)
    W = 0.5 * _willmore_bracket(fr)
    return W[:, 0] if scalar else W


def residual_willmore_legendrian(spec: ImmersionSpec, x, y):
    """Euclidean norm of the Willmore-Legendrian equation's left side."""
    xs, ys, scalar = _as_1d(x, y)
    fr = ChartFrame(spec, xs, ys, degree=4, wrap=False)
    res = np.sqrt(np.sum(np.abs(_willmore_bracket(fr)) ** 2, axis=0))
    return float(res[0]) if scalar else res


def _grad_div_field(spec: ImmersionSpec):
    def evaluate(xs, ys):
        return ChartFrame(spec, xs, ys, degree=4, wrap=False).grad_div_JH

    return evaluate


def laplace_div_JH(spec: ImmersionSpec, x, y):
    """Delta Div(JH): finite-difference divergence of the exact gradient field."""
    return divergence(spec, _grad_div_field(spec), x, y)


def residual_csl_willmore(spec: ImmersionSpec, x, y):
    """|Delta Div(JH) + 2 trace<B(., nabla . JH), H> - |H|^2 Div/2 - 4 Div|."""
    xs, ys, scalar = _as_1d(x, y)
    fr = ChartFrame(spec, xs, ys, degree=4, wrap=False)
    lap = divergence(spec, _grad_div_field(spec), xs, ys)
    res = np.abs(
        lap
        + 2.0 * fr.obstruction_density
        - 0.5 * fr.norm_H_sq * fr.div_JH
        - 4.0 * fr.div_JH
    )
    return float(res[0]) if scalar else res


def csl_willmore_direct(spec: ImmersionSpec, x, y):
    """Direct-form residual |Div(J W - 2 JH)| (one finite-difference level).

    J W - 2 JH is tangent up to radial terms that the chart projection
    discards; its divergence vanishes exactly on csL-Willmore surfaces.
    """

    def field(px, py):
        fr = ChartFrame(spec, px, py, degree=4, wrap=False)
        vec = ambient.apply_J(0.5 * _willmore_bracket(fr)) - 2.0 * fr.JH
        w = np.stack(
            [ambient.real_inner(vec, fr.Fx_v), ambient.real_inner(vec, fr.Fy_v)]
        )
        return np.einsum("ij...,j...->i...", fr.g_inv, w)

    out = divergence(spec, field, x, y)
    return abs(out) if np.isscalar(out) else np.abs(out)


def obstruction_trace(spec: ImmersionSpec, x, y):
    """trace<B(., nabla . JH), H> = g^{ij} (nabla_j JH)^k <B_ik, H> (jet-exact)."""
    xs, ys, scalar = _as_1d(x, y)
    fr = ChartFrame(spec, xs, ys, degree=4, wrap=False)
    out = fr.obstruction_density
    return float(out[0]) if scalar else out


# -- intrinsic curvature via finite differences -------------------------------


def brioschi_curvature_fd(spec: ImmersionSpec, x, y):
    """Brioschi curvature with metric second derivatives by finite differences.

    The metric's *first* derivatives are jet-exact; one outer stencil supplies
    the second derivatives, making this route independent of the embedding
    data used by the Gauss-equation curvature.
    """
    xs, ys, scalar = _as_1d(x, y)

    def metric_d1(px, py):
        fr = ChartFrame(spec, px, py, degree=2, wrap=False)
        gj = fr.gj
        return np.array(
            [
                [[np.real(gj[i][j].dx().value) for j in range(2)] for i in range(2)],
                [[np.real(gj[i][j].dy().value) for j in range(2)] for i in range(2)],
            ]
        )  # [l, i, j] = d_l g_ij

    ddg_x = partial_derivative(spec, metric_d1, xs, ys, 0)  # d_x d_l g_ij
    ddg_y = partial_derivative(spec, metric_d1, xs, ys, 1)
    fr = ChartFrame(spec, xs, ys, degree=2, wrap=False)
    g = fr.g
    gj = fr.gj
    E, Fm, G = g[0, 0], g[0, 1], g[1, 1]
    E_x = np.real(gj[0][0].dx().value)
    E_y = np.real(gj[0][0].dy().value)
    G_x = np.real(gj[1][1].dx().value)
    G_y = np.real(gj[1][1].dy().value)
    F_x = np.real(gj[0][1].dx().value)
    F_y = np.real(gj[0][1].dy().value)
    E_yy = ddg_y[1, 0, 0]
    G_xx = ddg_x[0, 1, 1]
    F_xy = ddg_x[1, 0, 1]

    def det3(m):
        return (
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        )

    det = fr.det_g
    zero = np.zeros_like(E)
    m1 = [
        [-0.5 * E_yy + F_xy - 0.5 * G_xx, 0.5 * E_x, F_x - 0.5 * E_y],
        [F_y - 0.5 * G_x, E, Fm],
        [0.5 * G_y, Fm, G],
    ]
    m2 = [
        [zero, 0.5 * E_y, 0.5 * G_x],
        [0.5 * E_y, E, Fm],
        [0.5 * G_x, Fm, G],
    ]
    out = (det3(m1) - det3(m2)) / det**2
    return float(out[0]) if scalar else out


# -- the identity suite -------------------------------------------------------


def _normal_projector(fr: ChartFrame):
    """Remove tangential (e1, e2) and radial (F) parts of ambient vectors."""
    e1, e2, p = fr.e1, fr.e2, fr.F_v

    def project(v):
        return (
            v
            - ambient.real_inner(v, e1) * e1
            - ambient.real_inner(v, e2) * e2
            - ambient.real_inner(v, p) * p
        )

    return project


def normal_laplacian_H(spec: ImmersionSpec, xs, ys) -> np.ndarray:
    """Delta^nu H by nested finite differences with normal-connection projection.

    Delta^nu H = g^{ij} (nabla^nu_i (nabla^nu_j H) - Gamma^k_{ij} nabla^nu_k H)
    where nabla^nu_X xi projects the sphere derivative onto the normal bundle
    (spanned by J e_1, J e_2 and the Reeb direction) at each point.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)

    def h_field(px, py):
        return ChartFrame(spec, px, py, degree=2, wrap=False).H

    def w_field(px, py):
        frp = ChartFrame(spec, px, py, degree=2, wrap=False)
        project = _normal_projector(frp)
        dH = [partial_derivative(spec, h_field, px, py, axis) for axis in range(2)]
        return np.stack([project(d) for d in dH])  # (2, 3, n)

    base = ChartFrame(spec, xs, ys, degree=4, wrap=False)
    project0 = _normal_projector(base)
    W = w_field(xs, ys)
    dW = [partial_derivative(spec, w_field, xs, ys, axis) for axis in range(2)]
    g_inv, gamma = base.g_inv, base.gamma
    out = np.zeros_like(base.H)
    for i in range(2):
        for j in range(2):
            second = project0(dW[i][j])
            for k in range(2):
                second = second - gamma[k, i, j] * W[k]
            out = out + g_inv[i, j] * second
    return out


def _sasakian_residuals(
    p: np.ndarray, X: np.ndarray, Y0: np.ndarray, reeb_sign: int = 1
) -> tuple[np.ndarray, np.ndarray]:
    """Finite-difference residuals of the two sphere Sasakian identities.

    Along the great circle gamma(t) = cos(t) p + sin(t) X (X a unit tangent):
    the projected derivative of R(gamma(t)) should equal -J_c X, and the
    derivative of the contact-extended J applied to the projected field
    Y(t) = Y0 - <Y0, gamma> gamma should satisfy
    (nabla_X J_c)(Y) = <X, Y> R - alpha(Y) X.
    """
    h = 1e-2
    steps = np.array([-2.0, -1.0, 1.0, 2.0]) * h
    weights = np.array([1.0, -8.0, 8.0, -1.0]) / (12.0 * h)

    def gamma(t):
        return math.cos(t) * p + math.sin(t) * X

    def project(v):
        return v - ambient.real_inner(v, p) * p

    # identity 1: sphere derivative of the Reeb field
    dR = sum(w * ambient.reeb(gamma(t), reeb_sign) for w, t in zip(weights, steps))
    lhs1 = project(dR)
    rhs1 = -ambient.contact_extended_J(p, X, reeb_sign)
    res1 = np.sqrt(np.sum(np.abs(lhs1 - rhs1) ** 2, axis=0))

    # identity 2: derivative of the contact-extended J
    def Yt(t):
        q = gamma(t)
        return Y0 - ambient.real_inner(Y0, q) * q

    def JYt(t):
        q = gamma(t)
        return ambient.contact_extended_J(q, Yt(t), reeb_sign)

    dJY = sum(w * JYt(t) for w, t in zip(weights, steps))
    dY = sum(w * Yt(t) for w, t in zip(weights, steps))
    lhs2 = project(dJY) - ambient.contact_extended_J(p, project(dY), reeb_sign)
    Y = Yt(0.0)
    R = ambient.reeb(p, reeb_sign)
    alpha_Y = ambient.real_inner(Y, R)
    rhs2 = ambient.real_inner(X, Y) * R - alpha_Y * X
    res2 = np.sqrt(np.sum(np.abs(lhs2 - rhs2) ** 2, axis=0))
    return res1, res2


def identity_suite(
    spec: ImmersionSpec,
    points,
    tolerance_scale: float = 1.0,
    reeb_sign: int = 1,
) -> ResidualReport:
    """Verify the pointwise identity web at the given chart points.

    ``points`` is a pair (xs, ys) of equal-length arrays.  Points that fail a
    check's precondition (|H| too small for log|H|; non-csL member for the
    csL-only identities) are counted as skipped, never silently dropped.
    """
    xs, ys = (np.asarray(a, dtype=float) for a in points)
    n = xs.size
    tol = {k: v * tolerance_scale for k, v in IDENTITY_TOLERANCES.items()}
    fr = ChartFrame(spec, xs, ys, degree=4, wrap=False)
    checks: list[CheckResult] = []

    # Legendrian defect: |<F_i, F>| plus unit-norm deviation.
    herm_x = np.abs(sum(a.value * np.conj(b.value) for a, b in zip(fr.Fx, fr.F)))
    herm_y = np.abs(sum(a.value * np.conj(b.value) for a, b in zip(fr.Fy, fr.F)))
    norm_dev = np.abs(ambient.real_inner(fr.F_v, fr.F_v) - 1.0)
    checks.append(
        _make_check(
            "legendrian_defect",
            np.maximum(herm_x, herm_y) + norm_dev,
            tol["legendrian_defect"],
        )
    )

    # Cubic form symmetry (orthonormal components).
    sig = fr.sigma_frame
    tri = np.zeros(n)
    for perm in permutations(range(3)):
        tri = np.maximum(tri, np.max(np.abs(sig - np.transpose(
            sig, perm + (3,) if sig.ndim == 4 else perm)), axis=(0, 1, 2)))
    checks.append(_make_check("tri_symmetry", tri, tol["tri_symmetry"]))

    # H orthogonal to Reeb; vanishing Reeb shape operator.
    R = ambient.reeb(fr.F_v)
    h_dot_R = np.abs(ambient.real_inner(fr.H, R))
    A_R = np.abs(
        np.array(
            [
                [ambient.real_inner(fr.B[i, j], R) for j in range(2)]
                for i in range(2)
            ]
        )
    ).max(axis=(0, 1))
    checks.append(_make_check("reeb_normal", np.maximum(h_dot_R, A_R), tol["reeb_normal"]))

    # Claim: 2 kappa = 2 + |H|^2 - |B|^2.
    claim = np.abs(2.0 * fr.kappa - 2.0 - fr.norm_H_sq + fr.norm_B_sq)
    checks.append(_make_check("gauss_claim", claim, tol["gauss_claim"]))

    # Intrinsic (Brioschi) vs extrinsic (Gauss equation) curvature.
    kappa_intr, kappa_gauss = gauss_curvature(fr.F)
    checks.append(
        _make_check(
            "gauss_vs_brioschi",
            np.abs(np.atleast_1d(kappa_intr - kappa_gauss)),
            tol["gauss_vs_brioschi"],
        )
    )
    checks.append(
        _make_check(
            "gauss_vs_brioschi_fd",
            np.abs(brioschi_curvature_fd(spec, xs, ys) - fr.kappa),
            tol["gauss_vs_brioschi_fd"],
        )
    )

    # Ricci identity for the closed one-form dual to JH.
    ricci = fr.laplace_JH - fr.grad_div_JH - fr.kappa * fr.a
    ricci_norm = np.sqrt(np.einsum("ij...,i...,j...->...", fr.g, ricci, ricci))
    checks.append(_make_check("ricci_identity", ricci_norm, tol["ricci_identity"]))

    # Normal-bundle Laplacian identity.
    lap_nu = normal_laplacian_H(spec, xs, ys)
    lap_JH_amb = fr.laplace_JH[0] * fr.Fx_v + fr.laplace_JH[1] * fr.Fy_v
    nl = lap_nu + ambient.apply_J(lap_JH_amb) + fr.H + 2.0 * fr.div_JH * R
    checks.append(
        _make_check(
            "normal_laplacian",
            np.sqrt(np.sum(np.abs(nl) ** 2, axis=0)),
            tol["normal_laplacian"],
        )
    )

    # Div(J B(JH,JH)) identity.
    def jb_field(px, py):
        frp = ChartFrame(spec, px, py, degree=2, wrap=False)
        vec = ambient.apply_J(frp.B_JH_JH)
        w = np.stack(
            [ambient.real_inner(vec, frp.Fx_v), ambient.real_inner(vec, frp.Fy_v)]
        )
        return np.einsum("ij...,j...->i...", frp.g_inv, w)

    div_jb = divergence(spec, jb_field, xs, ys)
    grad_h2_along_JH = np.einsum("i...,ij...,j...->...", fr.a, fr.g, fr.grad_norm_H_sq)
    div_jb_res = np.abs(div_jb - 2.0 * fr.obstruction_density - 0.5 * grad_h2_along_JH)
    checks.append(_make_check("div_jb_identity", div_jb_res, tol["div_jb_identity"]))

    # csL gate for the csL-only identities.
    is_csl = bool(np.max(np.abs(fr.div_JH)) < CSL_GATE)
    csl_mask = np.full(n, is_csl)

    # Bochner identity (csL members: surface Ricci = kappa g).
    bochner = np.abs(
        0.5 * fr.laplace_norm_H_sq - fr.norm_nabla_JH_sq - fr.kappa * fr.norm_H_sq
    )
    checks.append(_make_check("bochner", bochner, tol["bochner"], used_mask=csl_mask))

    # Delta log|H| = kappa away from zeros of H (csL members).
    big_h = np.sqrt(fr.norm_H_sq) >= SMALL_H
    log_mask = csl_mask & big_h
    if np.any(log_mask):
        def log_h_field(px, py):
            return 0.5 * np.log(ChartFrame(spec, px, py, degree=2, wrap=False).norm_H_sq)

        lap_log = laplace_beltrami(spec, log_h_field, xs, ys)
        log_res = np.abs(lap_log - fr.kappa)
    else:
        log_res = np.zeros(n)
    checks.append(
        _make_check("log_h_curvature", log_res, tol["log_h_curvature"], used_mask=log_mask)
    )

    # Four-symmetry of the covariant derivative of sigma (chart components).
    def sigma_field(px, py):
        return ChartFrame(spec, px, py, degree=2, wrap=False).sigma_chart

    dsig = np.stack(
        [
            partial_derivative(spec, sigma_field, xs, ys, 0),
            partial_derivative(spec, sigma_field, xs, ys, 1),
        ]
    )  # [l, i, j, k]
    sig_c, gamma = fr.sigma_chart, fr.gamma
    nabla_sigma = (
        dsig
        - np.einsum("mli...,mjk...->lijk...", gamma, sig_c)
        - np.einsum("mlj...,imk...->lijk...", gamma, sig_c)
        - np.einsum("mlk...,ijm...->lijk...", gamma, sig_c)
    )
    four = np.zeros(n)
    base_axes = (0, 1, 2, 3)
    for perm in permutations(base_axes):
        if perm == base_axes:
            continue
        moved = np.transpose(nabla_sigma, perm + (4,) if nabla_sigma.ndim == 5 else perm)
        four = np.maximum(four, np.max(np.abs(nabla_sigma - moved), axis=(0, 1, 2, 3)))
    checks.append(_make_check("four_symmetry", four, tol["four_symmetry"]))

    # Closedness of the one-form dual to JH.
    def omega_field(px, py):
        frp = ChartFrame(spec, px, py, degree=2, wrap=False)
        return np.stack([np.real(o.value) for o in frp.omega_j])

    d_omega_x = partial_derivative(spec, omega_field, xs, ys, 0)[1]
    d_omega_y = partial_derivative(spec, omega_field, xs, ys, 1)[0]
    checks.append(
        _make_check("closedness", np.abs(d_omega_x - d_omega_y), tol["closedness"])
    )

    # Sasakian identities of the ambient sphere at the surface points.
    X = fr.e1
    R_s = ambient.reeb(fr.F_v, reeb_sign)
    Y0 = fr.e2 + 0.5 * R_s + 0.25 * fr.e1
    res1, res2 = _sasakian_residuals(fr.F_v, X, Y0, reeb_sign)
    checks.append(_make_check("sasakian_reeb", res1, tol["sasakian_reeb"]))
    checks.append(_make_check("sasakian_J", res2, tol["sasakian_J"]))

    return ResidualReport(
        surface=spec.label,
        descriptor=f"{n} seeded interior points",
        checks=tuple(checks),
    )


# -- energy -------------------------------------------------------------------


def willmore_energy(spec: ImmersionSpec, grid: tuple[int, int] = (64, 64)):
    """(area, energy) per chart rectangle by tensor-product trapezoid rule.

    area = integral of sqrt(det g); energy = integral of (|H|^2/4 + 1)
    sqrt(det g) — the ambient sectional curvature term is identically 1 on
    the unit sphere.  Periodic axes use the uniform-node form of the
    trapezoid rule (no duplicated endpoint), which is spectrally accurate
    for smooth periodic integrands; non-periodic axes use the closed rule.
    Summation via math.fsum in a fixed order, so results are bit-stable.
    """
    nx, ny = grid
    if nx < 4 or ny < 4:
        raise GridError(f"integration grid {nx}x{ny} too small (need >= 4 per axis)")

    def axis_nodes(axis, m):
        lo, hi = spec.chart_domain[axis]
        step = (hi - lo) / m
        if spec.periodic[axis]:
            nodes = lo + step * np.arange(m)
            weights = np.full(m, step)
        else:
            nodes = np.linspace(lo, hi, m + 1)
            weights = np.full(m + 1, step)
            weights[0] = weights[-1] = 0.5 * step
        return nodes, weights

    xn, xw = axis_nodes(0, nx)
    yn, yw = axis_nodes(1, ny)
    gx, gy = np.meshgrid(xn, yn, indexing="ij")
    fr = ChartFrame(spec, gx.ravel(), gy.ravel(), degree=2, wrap=False)
    sd = np.sqrt(fr.det_g)
    w2 = np.outer(xw, yw).ravel()
    area = math.fsum((w2 * sd).tolist())
    energy = math.fsum((w2 * sd * (0.25 * fr.norm_H_sq + 1.0)).tolist())
    return area, energy


# -- grid verification --------------------------------------------------------


def _grid_residuals(spec: ImmersionSpec, xs, ys) -> dict[str, np.ndarray]:
    """Per-point residual magnitudes used by the verify command."""
    fr = ChartFrame(spec, xs, ys, degree=4, wrap=False)
    herm_x = np.abs(sum(a.value * np.conj(b.value) for a, b in zip(fr.Fx, fr.F)))
    herm_y = np.abs(sum(a.value * np.conj(b.value) for a, b in zip(fr.Fy, fr.F)))
    norm_dev = np.abs(ambient.real_inner(fr.F_v, fr.F_v) - 1.0)
    bracket = _willmore_bracket(fr)
    return {
        "legendrian_defect": np.maximum(herm_x, herm_y) + norm_dev,
        "csl_residual": np.abs(fr.div_JH),
        "willmore_legendrian_residual": np.sqrt(np.sum(np.abs(bracket) ** 2, axis=0)),
        "csl_willmore_residual": residual_csl_willmore(spec, xs, ys),
        "csl_willmore_direct": csl_willmore_direct(spec, xs, ys),
        "obstruction_trace": np.abs(fr.obstruction_density),
        "norm_H": np.sqrt(fr.norm_H_sq),
    }


def _grid_chunk(args):
    spec, xs, ys = args
    return _grid_residuals(spec, xs, ys)


def grid_residuals(
    spec: ImmersionSpec, nx: int, ny: int, workers: int = 1
) -> dict[str, np.ndarray]:
    """Residual maps on the half-offset nx-by-ny grid, optionally in parallel.

    Chunks are split by contiguous index ranges and reassembled in submission
    order, so the result is identical for any worker count.
    """
    if nx < 4 or ny < 4:
        raise GridError(f"verification grid {nx}x{ny} too small (need >= 4 per axis)")
    xs, ys = grid_points(spec, nx, ny)
    if workers <= 1:
        return _grid_residuals(spec, xs, ys)
    bounds = np.linspace(0, xs.size, workers + 1).astype(int)
    chunks = [
        (spec, xs[a:b], ys[a:b])
        for a, b in zip(bounds[:-1], bounds[1:])
        if b > a
    ]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_grid_chunk, chunks))
    return {
        key: np.concatenate([p[key] for p in parts]) for key in parts[0]
    }


def run_verification(
    spec: ImmersionSpec,
    nx: int = 16,
    ny: int = 16,
    seed: int = 0,
    n_sample: int = 100,
    workers: int = 1,
    tolerance_scale: float = 1.0,
    reeb_sign: int = 1,
) -> ResidualReport:
    """Grid residual checks plus the pointwise identity suite, as one report."""
    maps = grid_residuals(spec, nx, ny, workers=workers)
    tol = {k: v * tolerance_scale for k, v in VERIFY_TOLERANCES.items()}
    checks = [
        _make_check("legendrian_defect", maps["legendrian_defect"], tol["legendrian_defect"]),
        _make_check("csl_residual", maps["csl_residual"], tol["csl_residual"]),
        _make_check(
            "csl_willmore_residual", maps["csl_willmore_residual"], tol["csl_willmore_residual"]
        ),
        _make_check(
            "csl_willmore_agreement",
            np.abs(maps["csl_willmore_residual"] - 2.0 * maps["csl_willmore_direct"]),
            tol["csl_willmore_agreement"],
        ),
        _make_check("obstruction_trace", maps["obstruction_trace"], tol["obstruction_trace"]),
        # Consistency with the classification theorem: wherever the
        # Willmore-Legendrian residual is tiny, |H| must be tiny too.
        _make_check(
            "willmore_implies_minimal",
            np.where(
                maps["willmore_legendrian_residual"] < 1e-6, maps["norm_H"], 0.0
            ),
            tol["willmore_implies_minimal"],
        ),
    ]
    xs, ys = sample_points(spec, n_sample, seed)
    suite = identity_suite(
        spec, (xs, ys), tolerance_scale=tolerance_scale, reeb_sign=reeb_sign
    )
    return ResidualReport(
        surface=spec.label,
        descriptor=f"{nx}x{ny} half-offset grid; {n_sample} seeded points (seed {seed})",
        checks=tuple(checks) + suite.checks,
    )
