"""Chart-based metric geometry by numerical differentiation.

A chart is a smooth map ``p -> g(p)`` (symmetric positive-definite matrix) on
a coordinate box. Christoffel symbols and the full Riemann tensor at a point
are assembled from first and second central differences of the metric alone,
so no finite difference is ever taken of an already-differenced quantity and
the scheme stays cleanly second order in the step.

Sign convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
and R_{ijkl} = <R(d_i, d_j) d_k, d_l>, which gives the unit round sphere
sectional curvature +1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import DimensionMismatch, NearSingularMetric, OutOfDomain
from .framecore import Frame

# Default differentiation step: h = STEP_SCALE * (1 + |coordinate|).
STEP_SCALE = 1e-4
REFINED_STEP_SCALE = 1e-3
# Algebraic-identity tolerance for assembled tensors, scaled by (1 + max |R|).
TENSOR_IDENTITY_TOL = 1e-6
MAX_METRIC_CONDITION = 1e8


@dataclass(frozen=True)
class ChartMetric:
    """A coordinate chart: metric function plus a validity box.

    ``domain_box`` has shape (dim, 2) with rows (lo, hi); points (and all
    finite-difference samples around them) must stay inside.
    """

    dim: int
    metric_fn: Callable[[np.ndarray], np.ndarray]
    domain_box: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        box = np.asarray(self.domain_box, dtype=float)
        if box.shape != (self.dim, 2):
            raise DimensionMismatch(
                f"domain_box shape {box.shape}, expected ({self.dim}, 2)"
            )
        object.__setattr__(self, "domain_box", box)
        box.setflags(write=False)

    def metric_at(self, p: np.ndarray) -> np.ndarray:
        g = np.asarray(self.metric_fn(np.asarray(p, dtype=float)), dtype=float)
        if g.shape != (self.dim, self.dim):
            raise DimensionMismatch(f"metric has shape {g.shape}")
        return g

    def steps_at(self, p: np.ndarray, scale: float = STEP_SCALE) -> np.ndarray:
        return scale * (1.0 + np.abs(np.asarray(p, dtype=float)))

    def require_inside(self, p: np.ndarray, margin: np.ndarray | float) -> None:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dim,):
            raise DimensionMismatch(f"point has shape {p.shape}, chart dim {self.dim}")
        lo = self.domain_box[:, 0] + margin
        hi = self.domain_box[:, 1] - margin
        if np.any(p < lo) or np.any(p > hi):
            raise OutOfDomain(
                f"point {p.tolist()} outside chart box with margin (chart {self.name!r})"
            )

    def interior_sampler(self, rng: np.random.Generator, margin: float = 0.1):
        """Uniform sample points inside the box, away from the boundary."""
        lo = self.domain_box[:, 0] + margin
        hi = self.domain_box[:, 1] - margin
        if np.any(hi <= lo):
            raise OutOfDomain("domain box too small for the requested margin")

        def sample() -> np.ndarray:
            return rng.uniform(lo, hi)

        return sample


@dataclass(frozen=True)
class CurvatureTensor:
    """R_{ijkl} components at a point, validated against the algebraic identities."""

    components: np.ndarray

    def __post_init__(self) -> None:
        comp = np.asarray(self.components, dtype=float)
        if comp.ndim != 4 or len(set(comp.shape)) != 1:
            raise DimensionMismatch(f"components have shape {comp.shape}")
        scale = 1.0 + float(np.abs(comp).max())
        tol = TENSOR_IDENTITY_TOL * scale
        defects = {
            "antisym_ij": np.abs(comp + comp.transpose(1, 0, 2, 3)).max(),
            "antisym_kl": np.abs(comp + comp.transpose(0, 1, 3, 2)).max(),
            "pair_sym": np.abs(comp - comp.transpose(2, 3, 0, 1)).max(),
            "bianchi": np.abs(
                comp + comp.transpose(1, 2, 0, 3) + comp.transpose(2, 0, 1, 3)
            ).max(),
        }
        worst = max(defects.values())
        if worst > tol:
            raise DimensionMismatch(
                f"curvature tensor identities violated: {defects} (tol {tol:.2e})"
            )
        object.__setattr__(self, "components", comp)
        comp.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.components.shape[0]


def _metric_derivatives(
    chart: ChartMetric, p: np.ndarray, h: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(g, dg, ddg) with dg[a] = d_a g and ddg[a,b] = d_a d_b g by central differences."""
    n = chart.dim
    g0 = chart.metric_at(p)
    gp = np.empty((n, n, n))
    gm = np.empty((n, n, n))
    for a in range(n):
        ea = np.zeros(n)
        ea[a] = h[a]
        gp[a] = chart.metric_at(p + ea)
        gm[a] = chart.metric_at(p - ea)

    dg = np.empty((n, n, n))
    ddg = np.empty((n, n, n, n))
    for a in range(n):
        dg[a] = (gp[a] - gm[a]) / (2.0 * h[a])
        ddg[a, a] = (gp[a] - 2.0 * g0 + gm[a]) / (h[a] * h[a])
    for a in range(n):
        for b in range(a + 1, n):
            ea = np.zeros(n)
            eb = np.zeros(n)
            ea[a] = h[a]
            eb[b] = h[b]
            mixed = (
                chart.metric_at(p + ea + eb)
                - chart.metric_at(p + ea - eb)
                - chart.metric_at(p - ea + eb)
                + chart.metric_at(p - ea - eb)
            ) / (4.0 * h[a] * h[b])
            ddg[a, b] = mixed
            ddg[b, a] = mixed
    return g0, dg, ddg


def _check_condition(g: np.ndarray) -> None:
    cond = np.linalg.cond(g)
    if not np.isfinite(cond) or cond > MAX_METRIC_CONDITION:
        raise NearSingularMetric(f"metric condition number {cond:.3e}")


def christoffel(
    chart: ChartMetric, p: np.ndarray, step_scale: float = STEP_SCALE
) -> np.ndarray:
    """Christoffel symbols Gamma^k_{ij} at p, indexed [k, i, j]."""
    p = np.asarray(p, dtype=float)
    h = chart.steps_at(p, step_scale)
    chart.require_inside(p, 2.0 * h)
    g, dg, _ = _metric_derivatives(chart, p, h)
    _check_condition(g)
    g_inv = np.linalg.inv(g)
    # dg is indexed [a, i, j] = d_a g_{ij}. Lowered symbols:
    # Gamma_{l,ij} = (d_i g_{jl} + d_j g_{il} - d_l g_{ij}) / 2.
    low = 0.5 * (np.einsum("ijl->lij", dg) + np.einsum("jil->lij", dg) - dg)
    return np.einsum("kl,lij->kij", g_inv, low)


def _christoffel_and_derivative(
    chart: ChartMetric, p: np.ndarray, h: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(g, Gamma^k_{ij}, d_a Gamma^k_{ij}) assembled from metric derivatives only."""
    g, dg, ddg = _metric_derivatives(chart, p, h)
    _check_condition(g)
    g_inv = np.linalg.inv(g)
    low = 0.5 * (
        np.einsum("ijl->lij", dg) + np.einsum("jil->lij", dg) - dg
    )  # Gamma_{l,ij}
    gamma = np.einsum("kl,lij->kij", g_inv, low)
    # d_a Gamma_{l,ij} from second derivatives of g.
    dlow = 0.5 * (
        np.einsum("aijl->alij", ddg) + np.einsum("ajil->alij", ddg)
        - np.einsum("alij->alij", ddg)
    )
    # d_a g^{-1} = -g^{-1} (d_a g) g^{-1}
    dginv = -np.einsum("kl,alm,mn->akn", g_inv, dg, g_inv)
    dgamma = np.einsum("akl,lij->akij", dginv, low) + np.einsum(
        "kl,alij->akij", g_inv, dlow
    )
    return g, gamma, dgamma


def riemann_at(
    chart: ChartMetric,
    p: np.ndarray,
    step_scale: float | None = None,
    refine: bool = False,
) -> CurvatureTensor:
    """Full lowered Riemann tensor R_{ijkl} at p.

    With ``refine=True`` a single Richardson extrapolation step combines the
    h and h/2 results, killing the leading O(h^2) truncation term.  The
    refined path starts from a larger step: extrapolation removes its
    truncation error, while the halved step must stay clear of the
    second-difference roundoff floor eps/h^2.
    """
    p = np.asarray(p, dtype=float)
    if step_scale is None:
        step_scale = REFINED_STEP_SCALE if refine else STEP_SCALE
    h = chart.steps_at(p, step_scale)
    chart.require_inside(p, 4.0 * h)
    comp = _riemann_components(chart, p, h)
    if refine:
        comp_half = _riemann_components(chart, p, 0.5 * h)
        comp = (4.0 * comp_half - comp) / 3.0
    return CurvatureTensor(comp)


def _riemann_components(chart: ChartMetric, p: np.ndarray, h: np.ndarray) -> np.ndarray:
    g, gamma, dgamma = _christoffel_and_derivative(chart, p, h)
    # R^l_{ijk} = d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
    #             + Gamma^m_{jk} Gamma^l_{im} - Gamma^m_{ik} Gamma^l_{jm}
    term1 = dgamma.transpose(1, 0, 2, 3)  # [l, i, j, k] = d_i Gamma^l_{jk}
    term2 = term1.transpose(0, 2, 1, 3)  # d_j Gamma^l_{ik}
    term3 = np.einsum("mjk,lim->lijk", gamma, gamma)
    term4 = np.einsum("mik,ljm->lijk", gamma, gamma)
    r_up = term1 - term2 + term3 - term4
    return np.einsum("lm,mijk->ijkl", g, r_up)


def scalar_on_subspace(tensor: CurvatureTensor, frame: Frame) -> float:
    """Twice the scalar curvature of a subspace: sum_{i,j} R(e_i, e_j, e_j, e_i)."""
    if tensor.dim != frame.dim:
        raise DimensionMismatch("curvature tensor and frame dims differ")
    e = frame.vectors
    return float(np.einsum("abcd,ia,jb,jc,id->", tensor.components, e, e, e, e))


def sectional(tensor: CurvatureTensor, inner, x: np.ndarray, y: np.ndarray) -> float:
    """Sectional curvature of span{x, y}."""
    num = float(np.einsum("abcd,a,b,c,d->", tensor.components, x, y, y, x))
    den = inner.dot(x, x) * inner.dot(y, y) - inner.dot(x, y) ** 2
    return num / den
