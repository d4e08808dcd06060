"""Frame-level linear algebra.

Everything downstream works pointwise with orthonormal frames of subspaces:
orthonormalization against an arbitrary inner product, hyperplane
parametrization by unit normal, restriction of bilinear forms to hyperplanes,
and the squared norm of a structure operator restricted to a frame,

    ||P||^2 = sum_{i,j} <e_i, op(e_j)>^2.

All objects are immutable value types; operations are pure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInput, DimensionMismatch

# Orthonormality tolerance after modified Gram-Schmidt with one
# re-orthogonalization pass; double-precision safe for dim <= 32.
ORTHONORMAL_TOL = 1e-9
GRAM_SYMMETRY_TOL = 1e-12
UNIT_NORMAL_TOL = 1e-12
MAX_DIM = 32


@dataclass(frozen=True)
class InnerProduct:
    """A positive-definite symmetric bilinear form on R^dim (a metric at a point)."""

    gram: np.ndarray

    def __post_init__(self) -> None:
        gram = np.asarray(self.gram, dtype=float)
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise DimensionMismatch(f"gram matrix must be square, got {gram.shape}")
        if gram.shape[0] > MAX_DIM:
            raise DimensionMismatch(f"dimension {gram.shape[0]} exceeds cap {MAX_DIM}")
        scale = max(1.0, float(np.abs(gram).max()))
        if np.abs(gram - gram.T).max() > GRAM_SYMMETRY_TOL * scale:
            raise DegenerateInput("gram matrix is not symmetric")
        if np.linalg.eigvalsh(gram).min() <= 0.0:
            raise DegenerateInput("gram matrix is not positive definite")
        object.__setattr__(self, "gram", gram)
        gram.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.gram.shape[0]

    @classmethod
    def euclidean(cls, dim: int) -> "InnerProduct":
        return cls(np.eye(dim))

    def dot(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(np.asarray(u) @ self.gram @ np.asarray(v))

    def norm(self, u: np.ndarray) -> float:
        return float(np.sqrt(max(self.dot(u, u), 0.0)))


@dataclass(frozen=True)
class Frame:
    """An orthonormal list of coordinate vectors with respect to ``inner``.

    ``vectors`` has shape (count, dim); row i is the i-th frame vector e_i.
    """

    vectors: np.ndarray
    inner: InnerProduct

    def __post_init__(self) -> None:
        vec = np.atleast_2d(np.asarray(self.vectors, dtype=float))
        if vec.shape[1] != self.inner.dim:
            raise DimensionMismatch(
                f"frame vectors have dim {vec.shape[1]}, inner product {self.inner.dim}"
            )
        if vec.shape[0]:
            gram = vec @ self.inner.gram @ vec.T
            defect = np.abs(gram - np.eye(vec.shape[0])).max()
            if defect > ORTHONORMAL_TOL:
                raise DegenerateInput(f"frame is not orthonormal (defect {defect:.2e})")
        object.__setattr__(self, "vectors", vec)
        vec.setflags(write=False)

    @property
    def count(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def orthonormality_defect(self) -> float:
        if self.count == 0:
            return 0.0
        gram = self.vectors @ self.inner.gram @ self.vectors.T
        return float(np.abs(gram - np.eye(self.count)).max())

    def coefficients_of(self, v: np.ndarray) -> np.ndarray:
        """Coefficients of the projection of v onto the frame's span."""
        return self.vectors @ self.inner.gram @ np.asarray(v, dtype=float)

    def project(self, v: np.ndarray) -> np.ndarray:
        """Orthogonal projection of v onto the frame's span."""
        return self.coefficients_of(v) @ self.vectors


@dataclass(frozen=True)
class Hyperplane:
    """A hyperplane of an r-dimensional frame, given by a unit normal in frame coefficients."""

    ambient_frame: Frame
    unit_normal: np.ndarray

    def __post_init__(self) -> None:
        n = np.asarray(self.unit_normal, dtype=float)
        r = self.ambient_frame.count
        if r < 3:
            raise DimensionMismatch(f"hyperplanes need ambient frame dim >= 3, got {r}")
        if n.shape != (r,):
            raise DimensionMismatch(f"normal has shape {n.shape}, expected ({r},)")
        if abs(np.linalg.norm(n) - 1.0) > UNIT_NORMAL_TOL:
            raise DegenerateInput("hyperplane normal is not unit length")
        object.__setattr__(self, "unit_normal", n)
        n.setflags(write=False)

    @property
    def r(self) -> int:
        return self.ambient_frame.count


@dataclass(frozen=True)
class StructureOperator:
    """An almost-complex J or almost-contact (phi, xi, eta) operator on R^dim.

    For kind "almost-complex": matrix^2 = -I.
    For kind "almost-contact": matrix^2 = -I + xi eta^T with eta(xi) = 1,
    matrix @ xi = 0 and eta @ matrix = 0; eta is stored as a covector so the
    identities make sense for non-Euclidean metrics (eta = g xi).
    Kind "trivial" is the zero operator in any dimension; it stands in where a
    model formula carries a structure term with a vanishing coefficient (real
    space forms).
    """

    matrix: np.ndarray
    kind: str
    xi: np.ndarray | None = None
    eta: np.ndarray | None = None

    STRUCTURE_TOL = 1e-9

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch("structure matrix must be square")
        object.__setattr__(self, "matrix", m)
        m.setflags(write=False)
        dim = m.shape[0]
        eye = np.eye(dim)
        if self.kind == "trivial":
            if m.any():
                raise DegenerateInput("trivial structure must be the zero matrix")
        elif self.kind == "almost-complex":
            if np.abs(m @ m + eye).max() > self.STRUCTURE_TOL:
                raise DegenerateInput("J^2 != -I for almost-complex structure")
        elif self.kind == "almost-contact":
            if self.xi is None or self.eta is None:
                raise DegenerateInput("almost-contact structure needs xi and eta")
            xi = np.asarray(self.xi, dtype=float)
            eta = np.asarray(self.eta, dtype=float)
            if xi.shape != (dim,) or eta.shape != (dim,):
                raise DimensionMismatch("xi/eta have wrong shape")
            defects = (
                np.abs(m @ m + eye - np.outer(xi, eta)).max(),
                abs(eta @ xi - 1.0),
                np.abs(m @ xi).max(),
                np.abs(eta @ m).max(),
            )
            if max(defects) > self.STRUCTURE_TOL:
                raise DegenerateInput(
                    f"almost-contact identities violated (defects {defects})"
                )
            object.__setattr__(self, "xi", xi)
            object.__setattr__(self, "eta", eta)
            xi.setflags(write=False)
            eta.setflags(write=False)
        else:
            raise DegenerateInput(f"unknown structure kind {self.kind!r}")

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, v: np.ndarray) -> np.ndarray:
        return self.matrix @ np.asarray(v, dtype=float)

    def metric_compatibility_defect(self, inner: InnerProduct) -> float:
        """Max defect of g(op X, op Y) = g(X, Y) [- eta(X) eta(Y) for contact]."""
        if self.kind == "trivial":
            return 0.0
        g = inner.gram
        lhs = self.matrix.T @ g @ self.matrix
        rhs = g.copy()
        if self.kind == "almost-contact":
            rhs = rhs - np.outer(self.eta, self.eta)
        return float(np.abs(lhs - rhs).max())


def gram_schmidt(raw_vectors: np.ndarray, inner: InnerProduct) -> Frame:
    """Orthonormalize ``raw_vectors`` (rows) against ``inner``.

    Modified Gram-Schmidt with one re-orthogonalization pass. Raises
    DegenerateInput when the input is rank-deficient within tolerance.
    """
    vec = np.atleast_2d(np.asarray(raw_vectors, dtype=float)).copy()
    if vec.shape[1] != inner.dim:
        raise DimensionMismatch("vector dim does not match inner product dim")
    if vec.shape[0] > vec.shape[1]:
        raise DegenerateInput("more vectors than ambient dimension")

    gram = vec @ inner.gram @ vec.T
    # Scale-free rank check before any elimination.
    if vec.shape[0] > 0:
        det = np.linalg.det(gram / max(np.abs(gram).max(), 1e-300))
        if abs(det) < 1e-12:
            raise DegenerateInput("input vectors are (numerically) dependent")

    g = inner.gram
    out = np.empty_like(vec)
    for i in range(vec.shape[0]):
        v = vec[i]
        for _pass in range(2):  # MGS + one re-orthogonalization pass
            for j in range(i):
                v = v - (out[j] @ g @ v) * out[j]
        nrm = np.sqrt(v @ g @ v)
        if nrm < 1e-12:
            raise DegenerateInput("vector collapsed during orthonormalization")
        out[i] = v / nrm
    return Frame(out, inner)


def structure_norm_squared(frame: Frame, op: StructureOperator) -> float:
    """||P||^2 = sum_{i,j} <e_i, op e_j>^2 over the frame; lies in [0, r]."""
    if op.dim != frame.dim:
        raise DimensionMismatch("structure operator dim does not match frame dim")
    p = frame.vectors @ frame.inner.gram @ (op.matrix @ frame.vectors.T)
    return float(np.sum(p * p))


def restrict_to_hyperplane(coeffs: np.ndarray, hp: Hyperplane) -> np.ndarray:
    """Matrix of a bilinear form restricted to a hyperplane.

    ``coeffs`` is the r x r matrix of the form in the ambient frame; the result
    is (r-1) x (r-1) in an orthonormal basis of the hyperplane (any such basis:
    the Frobenius norm of the result is basis-independent).
    """
    coeffs = np.asarray(coeffs, dtype=float)
    r = hp.r
    if coeffs.shape != (r, r):
        raise DimensionMismatch(f"coefficient matrix shape {coeffs.shape} != ({r},{r})")
    basis = _hyperplane_basis(hp.unit_normal)
    return basis.T @ coeffs @ basis


def project_onto_hyperplane(coeffs: np.ndarray, hp: Hyperplane) -> np.ndarray:
    """Alias of :func:`restrict_to_hyperplane`."""
    return restrict_to_hyperplane(coeffs, hp)


def hyperplane_frobenius_sq(coeffs: np.ndarray, normal: np.ndarray) -> float:
    """Frobenius^2 of (I - nn^T) B (I - nn^T) without building a hyperplane basis.

    Works for any square B (frame coefficients) and unit normal n in frame
    coefficients. Agrees with restrict_to_hyperplane + Frobenius^2.
    """
    b = np.asarray(coeffs, dtype=float)
    n = np.asarray(normal, dtype=float)
    bn = b @ n
    nb = b.T @ n
    nbn = float(n @ bn)
    # ||B||^2 - ||Bn||^2 - ||B^T n||^2 + (n^T B n)^2, expanded from the projector.
    return float(np.sum(b * b) - bn @ bn - nb @ nb + nbn * nbn)


def _hyperplane_basis(normal: np.ndarray) -> np.ndarray:
    """Columns: an orthonormal basis of the hyperplane normal^perp in R^r."""
    r = normal.shape[0]
    # Householder reflection taking e_last to the normal; the first r-1 columns
    # of the reflection matrix then span the hyperplane.
    e = np.zeros(r)
    e[-1] = 1.0
    w = normal - e if normal[-1] >= 0 else normal + e
    wn = np.linalg.norm(w)
    if wn < 1e-14:
        h = np.eye(r)
    else:
        w = w / wn
        h = np.eye(r) - 2.0 * np.outer(w, w)
    # h maps +-e_last to the normal, so the remaining columns are the basis.
    return h[:, : r - 1]
