"""Casorati curvature measures of fundamental-form coefficients.

Given coefficients B_alpha (one r x r matrix per normal direction alpha):

    C       = (1/r) sum_alpha ||B_alpha||_F^2
    C^L(n)  = (1/(r-1)) sum_alpha || restriction of B_alpha to n^perp ||_F^2
    delta_C(r-1)     = C/2 + ((r+1)/(2r)) * inf_n C^L(n)
    delta-hat_C(r-1) = 2C  - ((2r-1)/(2r)) * sup_n C^L(n)

The inf/sup run over all hyperplanes of the r-dimensional frame. They are
computed by a multi-start projected-gradient optimizer over unit normals and
can be certified against a dense sphere-grid oracle. The proof polynomials

    P = r(r-1)/2 * C + (r^2-1)/2 * C^L + scal_gap
    Q = 2r(r-1)  * C - (r-1)(2r-1)/2 * C^L + scal_gap

(with scal_gap the difference of the two traced scalar curvatures entering the
inequality) are nonnegative whenever scal_gap comes from the traced Gauss
identity, and P vanishes exactly on the equality shape: a shared orthonormal
basis in which every B_alpha is diag(a, ..., a, 2a) with no off-diagonal terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInput, DimensionMismatch
from .framecore import Frame, Hyperplane, InnerProduct

ROLE_B = "B-map"
ROLE_T = "T-submersion"
ROLE_A = "A-submersion"
ROLES = (ROLE_B, ROLE_T, ROLE_A)

SYMMETRY_TOL = 1e-9
GRAD_NORM_TOL = 1e-10
SCAN_PER_DIM = 256
EQUALITY_TOL = 1e-7
CERTIFY_REL_TOL = 1e-4
GRID_PER_DIM = 10_000


@dataclass(frozen=True)
class FormCoefficients:
    """Per-normal coefficient matrices of a second-fundamental-form-like tensor.

    ``coeffs`` has shape (normal_count, r, r). Matrices are symmetric for the
    B and T roles and antisymmetric (zero diagonal) for the A role.
    """

    role: str
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise DegenerateInput(f"unknown role {self.role!r}; know {ROLES}")
        c = np.asarray(self.coeffs, dtype=float)
        if c.ndim != 3 or c.shape[1] != c.shape[2]:
            raise DimensionMismatch(f"coeffs shape {c.shape}, expected (m, r, r)")
        scale = 1.0 + float(np.abs(c).max()) if c.size else 1.0
        if self.role == ROLE_A:
            defect = float(np.abs(c + c.transpose(0, 2, 1)).max()) if c.size else 0.0
            if defect > SYMMETRY_TOL * scale:
                raise DegenerateInput(f"A-role coefficients not antisymmetric ({defect:.2e})")
        else:
            defect = float(np.abs(c - c.transpose(0, 2, 1)).max()) if c.size else 0.0
            if defect > SYMMETRY_TOL * scale:
                raise DegenerateInput(f"{self.role} coefficients not symmetric ({defect:.2e})")
        object.__setattr__(self, "coeffs", c)
        c.setflags(write=False)

    @property
    def r(self) -> int:
        return self.coeffs.shape[1]

    @property
    def normal_count(self) -> int:
        return self.coeffs.shape[0]

    def norm_squared(self) -> float:
        """||B||^2 = sum over all alpha, i, j of the squared coefficients."""
        return float(np.sum(self.coeffs * self.coeffs))

    def trace_vector_norm_squared(self) -> float:
        """||trace B||^2 = sum_alpha (sum_i B_alpha[i,i])^2."""
        traces = np.trace(self.coeffs, axis1=1, axis2=2)
        return float(traces @ traces)


@dataclass(frozen=True)
class CasoratiReport:
    r: int
    C: float
    C_L_inf: float
    C_L_sup: float
    inf_normal: np.ndarray
    sup_normal: np.ndarray
    delta_C: float
    delta_hat_C: float
    converged: bool
    starts: int
    iterations: int
    certified: bool | None = None

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "C": self.C,
            "C_L_inf": self.C_L_inf,
            "C_L_sup": self.C_L_sup,
            "inf_normal": [float(x) for x in self.inf_normal],
            "sup_normal": [float(x) for x in self.sup_normal],
            "delta_C": self.delta_C,
            "delta_hat_C": self.delta_hat_C,
            "optimizer": {
                "converged": self.converged,
                "starts": self.starts,
                "iterations": self.iterations,
                "certified": self.certified,
            },
        }


@dataclass(frozen=True)
class EqualityDiagnosis:
    is_equality_shape: bool
    max_offdiag: float
    max_umbilic_defect: float
    basis_used: Frame

    def to_json(self) -> dict:
        return {
            "is_equality_shape": self.is_equality_shape,
            "max_offdiag": self.max_offdiag,
            "max_umbilic_defect": self.max_umbilic_defect,
        }


def casorati_C(coeffs: FormCoefficients) -> float:
    """C = (1/r) ||B||^2."""
    if coeffs.r < 2:
        raise DimensionMismatch("Casorati curvature needs r >= 2")
    return coeffs.norm_squared() / coeffs.r


def casorati_on_hyperplane(coeffs: FormCoefficients, hp: Hyperplane) -> float:
    """C^L = (1/(r-1)) * sum_alpha || B_alpha restricted to the hyperplane ||_F^2."""
    if hp.r != coeffs.r:
        raise DimensionMismatch("hyperplane and coefficients have different r")
    return _restricted_sum(coeffs.coeffs, hp.unit_normal) / (coeffs.r - 1)


def _restricted_sum(mats: np.ndarray, normal: np.ndarray) -> float:
    bn = np.einsum("sij,j->si", mats, normal)
    btn = np.einsum("sij,i->sj", mats, normal)
    nbn = np.einsum("si,i->s", bn, normal)
    return float(
        np.einsum("sij,sij->", mats, mats)
        - np.einsum("si,si->", bn, bn)
        - np.einsum("si,si->", btn, btn)
        + nbn @ nbn
    )


def _restricted_sum_gradient(mats: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Gradient of sum_alpha ||(I-nn^T) B_alpha (I-nn^T)||_F^2 in n (unconstrained)."""
    bn = np.einsum("sij,j->si", mats, n)
    btn = np.einsum("sij,i->sj", mats, n)
    nbn = np.einsum("si,i->s", bn, n)
    return (
        -2.0 * np.einsum("sij,si->j", mats, bn)
        - 2.0 * np.einsum("sij,sj->i", mats, btn)
        + 2.0 * np.einsum("s,si->i", nbn, bn + btn)
    )


def _projected_gradient(
    mats: np.ndarray, n0: np.ndarray, sign: float, max_iter: int = 400
) -> tuple[np.ndarray, float, int]:
    """Minimize sign * objective over the unit sphere from n0; returns (n, value, iters).

    Spectral (Barzilai-Borwein) step lengths with an Armijo backtracking
    safeguard: the BB step adapts to the local curvature of the quartic, the
    backtracking keeps every accepted step a genuine decrease.
    """
    scale = 1.0 + float(np.sum(mats * mats))
    n = n0 / np.linalg.norm(n0)
    f = sign * _restricted_sum(mats, n)
    grad = sign * _restricted_sum_gradient(mats, n)
    pg = grad - (grad @ n) * n
    t = 1.0 / scale
    iters = 0
    stagnant = 0
    for iters in range(1, max_iter + 1):
        gn = float(np.linalg.norm(pg))
        if gn <= GRAD_NORM_TOL * scale:
            break
        step = t
        improved = False
        while step > 1e-18:
            cand = n - step * pg
            cand /= np.linalg.norm(cand)
            fc = sign * _restricted_sum(mats, cand)
            if fc <= f - 1e-4 * step * gn * gn:
                grad = sign * _restricted_sum_gradient(mats, cand)
                pg_new = grad - (grad @ cand) * cand
                s_vec = cand - n
                y_vec = pg_new - pg
                sy = abs(float(s_vec @ y_vec))
                yy = float(y_vec @ y_vec)
                t = min(sy / yy, 1e6) if sy > 0.0 and yy > 0.0 else 1.0 / scale
                stagnant = stagnant + 1 if f - fc <= 1e-14 * scale else 0
                n, f, pg = cand, fc, pg_new
                improved = True
                break
            step *= 0.5
        if not improved or stagnant >= 3:
            break
    return n, sign * f, iters


def _objective_batch(mats: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    """Restricted sum evaluated at every row of ``dirs`` (unit normals)."""
    total = np.zeros(len(dirs))
    frob_total = 0.0
    for b in mats:
        frob_total += float(np.sum(b * b))
        bn = dirs @ b.T  # rows: B n
        btn = dirs @ b  # rows: B^T n
        nbn = np.einsum("ij,ij->i", dirs, bn)
        total += -np.einsum("ij,ij->i", bn, bn) - np.einsum("ij,ij->i", btn, btn) + nbn * nbn
    return total + frob_total


def _diverse_leaders(dirs: np.ndarray, order: np.ndarray, k: int) -> list[np.ndarray]:
    """First k rows of dirs in the given order, skipping near-parallel repeats."""
    picked: list[np.ndarray] = []
    for idx in order:
        d = dirs[idx]
        if any(abs(float(d @ p)) > 0.95 for p in picked):
            continue
        picked.append(d)
        if len(picked) >= k:
            break
    return picked


def _optimizer_starts(mats: np.ndarray, r: int, rng: np.random.Generator) -> np.ndarray:
    """Eigenvectors of sum_alpha B_alpha^T B_alpha, random directions, and the
    basin-diverse leaders of a coarse sphere scan (both objective tails)."""
    gram = np.zeros((r, r))
    for b in mats:
        gram += b.T @ b
    _, eigvecs = np.linalg.eigh(gram)
    randoms = rng.standard_normal((r, r))
    randoms /= np.linalg.norm(randoms, axis=1, keepdims=True)
    scan = rng.standard_normal((SCAN_PER_DIM * r, r))
    scan /= np.linalg.norm(scan, axis=1, keepdims=True)
    total = _objective_batch(mats, scan)
    leaders = _diverse_leaders(scan, np.argsort(total), 4)
    leaders += _diverse_leaders(scan, np.argsort(-total), 4)
    return np.vstack([eigvecs.T, randoms, leaders])


def delta_casorati(
    coeffs: FormCoefficients, seed: int = 0, certify: bool = False
) -> CasoratiReport:
    """Full report: C, inf/sup of C^L over all hyperplanes, delta values.

    The extrema are found by multi-start projected gradient; the starts mix
    eigenvectors of sum B^T B, random directions, and the leaders of a coarse
    sphere scan. With ``certify=True`` the result is checked against the dense
    grid oracle and the report's ``certified`` flag records the outcome.
    """
    r = coeffs.r
    if r < 3:
        raise DimensionMismatch("delta-Casorati curvatures need r >= 3")
    mats = coeffs.coeffs
    c_val = casorati_C(coeffs)

    rng = np.random.default_rng(seed)
    starts = _optimizer_starts(mats, r, rng)
    best_min, best_min_n = np.inf, starts[0]
    best_max, best_max_n = -np.inf, starts[0]
    total_iters = 0
    converged = True
    for n0 in starts:
        n_min, f_min, it1 = _projected_gradient(mats, n0, +1.0)
        n_max, f_max, it2 = _projected_gradient(mats, n0, -1.0)
        total_iters += it1 + it2
        if f_min < best_min:
            best_min, best_min_n = f_min, n_min
        if f_max > best_max:
            best_max, best_max_n = f_max, n_max

    c_l_inf = best_min / (r - 1)
    c_l_sup = best_max / (r - 1)

    certified: bool | None = None
    if certify:
        grid_inf, _, grid_sup, _ = grid_extrema(coeffs, seed=seed + 1)
        certified = (
            abs(c_l_inf - grid_inf) <= CERTIFY_REL_TOL * (1.0 + abs(grid_inf))
            and abs(c_l_sup - grid_sup) <= CERTIFY_REL_TOL * (1.0 + abs(grid_sup))
        )
        # The grid may genuinely beat the multi-start; keep the better value.
        if grid_inf < c_l_inf:
            c_l_inf = grid_inf
            converged = False
        if grid_sup > c_l_sup:
            c_l_sup = grid_sup
            converged = False

    return CasoratiReport(
        r=r,
        C=c_val,
        C_L_inf=c_l_inf,
        C_L_sup=c_l_sup,
        inf_normal=best_min_n,
        sup_normal=best_max_n,
        delta_C=0.5 * c_val + (r + 1.0) / (2.0 * r) * c_l_inf,
        delta_hat_C=2.0 * c_val - (2.0 * r - 1.0) / (2.0 * r) * c_l_sup,
        converged=converged,
        starts=len(starts),
        iterations=total_iters,
        certified=certified,
    )


def grid_extrema(
    coeffs: FormCoefficients, seed: int = 0, samples: int | None = None
) -> tuple[float, np.ndarray, float, np.ndarray]:
    """Brute-force oracle: (C_L_inf, n_inf, C_L_sup, n_sup) from a sphere grid.

    Uniform random directions (10^4 per dimension by default) plus coordinate
    axes, with the best candidates polished by the local optimizer.
    """
    r = coeffs.r
    mats = coeffs.coeffs
    count = samples if samples is not None else GRID_PER_DIM * r
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((count, r))
    dirs = np.vstack([dirs, np.eye(r)])
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)

    total = _objective_batch(mats, dirs)

    # Polish a handful of basin-diverse leaders on each side; a single leader
    # can sit in the wrong basin even on a dense grid.
    n_min, f_min = _polish_leaders(mats, dirs, np.argsort(total), +1.0)
    n_max, f_max = _polish_leaders(mats, dirs, np.argsort(-total), -1.0)
    return f_min / (r - 1), n_min, f_max / (r - 1), n_max


def _polish_leaders(
    mats: np.ndarray, dirs: np.ndarray, order: np.ndarray, sign: float, k: int = 5
) -> tuple[np.ndarray, float]:
    picked = _diverse_leaders(dirs, order, k)
    best_n, best_key = picked[0], np.inf
    for d in picked:
        n, f, _ = _projected_gradient(mats, d, sign)
        if sign * f < best_key:
            best_n, best_key = n, sign * f
    return best_n, sign * best_key


def proof_polynomial_P(coeffs: FormCoefficients, hp: Hyperplane, scal_gap: float) -> float:
    """P = r(r-1)/2 * C + (r^2-1)/2 * C^L(hp) + scal_gap; provably >= 0."""
    r = coeffs.r
    c_val = casorati_C(coeffs)
    c_l = casorati_on_hyperplane(coeffs, hp)
    return 0.5 * r * (r - 1) * c_val + 0.5 * (r * r - 1) * c_l + scal_gap


def proof_polynomial_Q(coeffs: FormCoefficients, hp: Hyperplane, scal_gap: float) -> float:
    """Q = 2r(r-1) * C - (r-1)(2r-1)/2 * C^L(hp) + scal_gap; provably >= 0."""
    r = coeffs.r
    c_val = casorati_C(coeffs)
    c_l = casorati_on_hyperplane(coeffs, hp)
    return 2.0 * r * (r - 1) * c_val - 0.5 * (r - 1) * (2 * r - 1) * c_l + scal_gap


def gauss_scal_gap(coeffs: FormCoefficients) -> float:
    """scal_gap = ||trace||^2 is traded against rC through the traced Gauss identity.

    For the symmetric roles the identity reads
        left_2scal = right_2scal + ||trace||^2 - r C,
    so the gap (right - left) entering P and Q is  r C - ||trace||^2.
    For the antisymmetric role the trace vanishes and the gap is +3 r C.
    """
    r = coeffs.r
    c_val = casorati_C(coeffs)
    if coeffs.role == ROLE_A:
        return 3.0 * r * c_val
    return r * c_val - coeffs.trace_vector_norm_squared()


def diagnose_equality(coeffs: FormCoefficients, tol: float = EQUALITY_TOL) -> EqualityDiagnosis:
    """Search a shared orthonormal basis realizing the equality shape.

    Equality shape: all off-diagonals vanish and every diagonal reads
    (a, ..., a, 2a) with a shared distinguished axis. For the antisymmetric
    role the shape forces the tensor to vanish identically, so the diagnosis
    reduces to max |coeffs| <= tol.
    """
    r = coeffs.r
    if r < 3:
        raise DimensionMismatch("equality diagnosis needs r >= 3")
    maxabs = float(np.abs(coeffs.coeffs).max()) if coeffs.coeffs.size else 0.0
    scaled_tol = tol * (1.0 + maxabs)
    identity_frame = Frame(np.eye(r), InnerProduct.euclidean(r))

    if coeffs.role == ROLE_A:
        return EqualityDiagnosis(
            is_equality_shape=maxabs <= scaled_tol,
            max_offdiag=maxabs,
            max_umbilic_defect=0.0,
            basis_used=identity_frame,
        )

    # Joint diagonalization attempt: eigenbasis of sum_alpha B_alpha^2.
    gram = np.zeros((r, r))
    for b in coeffs.coeffs:
        gram += b @ b
    _, v = np.linalg.eigh(gram)
    rotated = np.einsum("pi,aij,jq->apq", v.T, coeffs.coeffs, v)

    off = rotated.copy()
    for a in range(off.shape[0]):
        np.fill_diagonal(off[a], 0.0)
    max_offdiag = float(np.abs(off).max()) if off.size else 0.0

    diags = np.einsum("aii->ai", rotated)
    best_defect = np.inf
    for m in range(r):
        defect = 0.0
        for d in diags:
            weight = d.sum() + d[m]  # sum_{i != m} d_i + 2 d_m
            a_fit = weight / (r + 3.0)
            dev = np.abs(d - a_fit)
            dev[m] = abs(d[m] - 2.0 * a_fit)
            defect = max(defect, float(dev.max()))
        best_defect = min(best_defect, defect)

    return EqualityDiagnosis(
        is_equality_shape=max_offdiag <= scaled_tol and best_defect <= scaled_tol,
        max_offdiag=max_offdiag,
        max_umbilic_defect=float(best_defect),
        basis_used=Frame(v.T, InnerProduct.euclidean(r)),
    )


def make_equality_shape(
    role: str,
    amplitudes: np.ndarray,
    r: int,
    basis: np.ndarray | None = None,
) -> FormCoefficients:
    """Coefficients attaining equality: a_alpha * diag(1, ..., 1, 2) in a shared basis.

    ``basis`` (orthonormal, rows) rotates the shape; identity by default. Only
    meaningful for the symmetric roles — the antisymmetric equality shape is
    identically zero, so amplitudes must vanish there.
    """
    amplitudes = np.atleast_1d(np.asarray(amplitudes, dtype=float))
    if role == ROLE_A and np.any(amplitudes != 0.0):
        raise DegenerateInput("antisymmetric equality shape is identically zero")
    pattern = np.ones(r)
    pattern[-1] = 2.0
    mats = np.stack([a * np.diag(pattern) for a in amplitudes])
    if basis is not None:
        u = np.asarray(basis, dtype=float)
        mats = np.einsum("pi,aij,qj->apq", u.T, mats, u.T)
    return FormCoefficients(role, mats)
