"""Built-in geometries: charts, structures, maps, and hypothesis metadata.

Every entry packages a coordinate chart for each side, a smooth map between
them, a base point, and the theorem tags its geometry honestly supports.  The
map functions below are written with plain arithmetic only (no abs/conj), so
they stay analytic under the complex-step differentiation used by SmoothMap.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .curvature import ChartMetric
from .errors import DegenerateInput, DimensionMismatch, HypothesisViolated
from .framecore import StructureOperator
from .rmaps import MapAtPoint, SmoothMap, map_at_point
from .spaceforms import CONTACT_FAMILIES, NamedFamily, SpaceFormSpec, family_constants


# --------------------------------------------------------------------------
# chart builders
# --------------------------------------------------------------------------

def flat_chart(dim: int, scale: float = 1.0, half_width: float = 5.0, name: str = "") -> ChartMetric:
    """Constant metric scale * I on a centered box."""
    if scale <= 0.0:
        raise DegenerateInput("flat chart needs a positive scale")
    g = scale * np.eye(dim)
    box = np.repeat([[-half_width, half_width]], dim, axis=0)
    return ChartMetric(dim, lambda p: g, box, name or f"flat-{dim}")


def round_sphere_chart(dim: int, radius: float = 1.0, half_width: float = 2.0, name: str = "") -> ChartMetric:
    """Round sphere of the given radius in stereographic coordinates.

    g(y) = 4 R^4 / (R^2 + |y|^2)^2 * I, constant sectional curvature 1/R^2.
    """
    if radius <= 0.0:
        raise DegenerateInput("sphere chart needs a positive radius")
    r2 = radius * radius

    def metric(p: np.ndarray) -> np.ndarray:
        factor = 4.0 * r2 * r2 / (r2 + float(p @ p)) ** 2
        return factor * np.eye(dim)

    box = np.repeat([[-half_width, half_width]], dim, axis=0)
    return ChartMetric(dim, metric, box, name or f"sphere-{dim}-R{radius:g}")


def warped_line_chart(
    fiber_dim: int, half_t: float = 0.8, half_x: float = 1.5, name: str = ""
) -> ChartMetric:
    """Warped product line x fibers: coordinates (t, x_1..x_k), g = diag(1, e^{2t} I_k).

    With the exponential warping this is hyperbolic space of curvature -1 in
    horospherical coordinates.
    """

    def metric(p: np.ndarray) -> np.ndarray:
        g = np.eye(fiber_dim + 1)
        g[1:, 1:] *= np.exp(2.0 * p[0])
        return g

    box = np.vstack([[-half_t, half_t], np.repeat([[-half_x, half_x]], fiber_dim, axis=0)])
    return ChartMetric(fiber_dim + 1, metric, box, name or f"warped-line-{fiber_dim}")


def fubini_study_chart(n: int, half_width: float = 0.8, name: str = "") -> ChartMetric:
    """Complex projective n-space, holomorphic sectional curvature 4.

    Affine coordinates interleaved as (x_1, y_1, ..., x_n, y_n) with
    z_a = x_a + i y_a; the Hermitian matrix
    h_ab = [(1 + |z|^2) delta_ab - conj(z_a) z_b] / (1 + |z|^2)^2 unpacks into
    the real metric blocks g_xx = g_yy = Re h and g_xy = Im h.
    """

    def metric(p: np.ndarray) -> np.ndarray:
        z = p[0::2] + 1j * p[1::2]
        s = 1.0 + float(np.real(np.conj(z) @ z))
        h = (s * np.eye(n) - np.outer(np.conj(z), z)) / (s * s)
        g = np.empty((2 * n, 2 * n))
        g[0::2, 0::2] = h.real
        g[1::2, 1::2] = h.real
        g[0::2, 1::2] = h.imag
        g[1::2, 0::2] = -h.imag
        return g

    box = np.repeat([[-half_width, half_width]], 2 * n, axis=0)
    return ChartMetric(2 * n, metric, box, name or f"fubini-study-{n}")


def heisenberg_chart(half_width: float = 1.6, name: str = "") -> ChartMetric:
    """Standard Sasakian metric on R^5 with phi-sectional curvature -3.

    Coordinates (x_1, y_1, x_2, y_2, z), contact form
    eta = (dz - y_1 dx_1 - y_2 dx_2)/2 and g = (dx^2 + dy^2)/4 + eta (x) eta.
    """

    def metric(p: np.ndarray) -> np.ndarray:
        eta = _heisenberg_eta(p)
        g = 0.25 * np.diag([1.0, 1.0, 1.0, 1.0, 0.0])
        return g + np.outer(eta, eta)

    box = np.repeat([[-half_width, half_width]], 5, axis=0)
    return ChartMetric(5, metric, box, name or "heisenberg-5")


def _heisenberg_eta(p: np.ndarray) -> np.ndarray:
    return 0.5 * np.array([-p[1], 0.0, -p[3], 0.0, 1.0])


# --------------------------------------------------------------------------
# structure operators in chart coordinates
# --------------------------------------------------------------------------

def trivial_structure(dim: int):
    """Zero operator; the structure placeholder of real space forms."""
    zero = np.zeros((dim, dim))

    def build(p: np.ndarray) -> StructureOperator:
        return StructureOperator(zero, "trivial")

    return build


def interleaved_complex_structure(n: int):
    """Constant J on (x_1, y_1, ..., x_n, y_n): d/dx_a -> d/dy_a."""
    j = np.zeros((2 * n, 2 * n))
    for a in range(n):
        j[2 * a + 1, 2 * a] = 1.0
        j[2 * a, 2 * a + 1] = -1.0

    def build(p: np.ndarray) -> StructureOperator:
        return StructureOperator(j, "almost-complex")

    return build


def heisenberg_structure():
    """Sasakian (phi, xi, eta) matching :func:`heisenberg_chart`."""

    def build(p: np.ndarray) -> StructureOperator:
        y1, y2 = p[1], p[3]
        phi = np.array(
            [
                [0.0, 1.0, 0.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, -1.0, 0.0, 0.0],
                [0.0, y1, 0.0, y2, 0.0],
            ]
        )
        xi = np.array([0.0, 0.0, 0.0, 0.0, 2.0])
        return StructureOperator(phi, "almost-contact", xi=xi, eta=_heisenberg_eta(p))

    return build


def warped_contact_structure(fiber_dim: int):
    """Kenmotsu (phi, xi, eta) on a warped line chart: xi = d/dt, J-pairs on fibers."""
    if fiber_dim % 2:
        raise DegenerateInput("warped contact structure pairs fiber coordinates")
    dim = fiber_dim + 1
    phi = np.zeros((dim, dim))
    for a in range(fiber_dim // 2):
        i, j = 1 + 2 * a, 2 + 2 * a
        phi[j, i] = 1.0
        phi[i, j] = -1.0
    xi = np.zeros(dim)
    xi[0] = 1.0
    eta = xi.copy()

    def build(p: np.ndarray) -> StructureOperator:
        return StructureOperator(phi, "almost-contact", xi=xi, eta=eta)

    return build


# --------------------------------------------------------------------------
# map functions (analytic arithmetic only: safe under complex-step)
# --------------------------------------------------------------------------

def _quaternion_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a0, a1, a2, a3 = a
    b0, b1, b2, b3 = b
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        ]
    )


def _quaternion_conjugate(a: np.ndarray) -> np.ndarray:
    return np.stack([a[0], -a[1], -a[2], -a[3]])


def _stereo_to_sphere(y: np.ndarray, radius: float) -> np.ndarray:
    """Inverse stereographic projection onto the sphere |x| = radius."""
    r2 = radius * radius
    s = np.sum(y * y)
    top = np.concatenate([2.0 * r2 * y, np.atleast_1d(radius * (s - r2))])
    return top / (r2 + s)


def _sphere_to_stereo(x: np.ndarray, radius: float) -> np.ndarray:
    """Stereographic coordinates of a point on the sphere |x| = radius."""
    return radius * x[:-1] / (radius - x[-1])


def coordinate_projection(indices) -> callable:
    idx = np.asarray(indices, dtype=int)

    def func(p: np.ndarray) -> np.ndarray:
        return p[idx]

    return func


def zero_padding(pad: int) -> callable:
    def func(p: np.ndarray) -> np.ndarray:
        return np.concatenate([p, np.zeros(pad, dtype=p.dtype)])

    return func


def identity_map() -> callable:
    return lambda p: p + 0.0


def stereographic_embedding(radius: float = 1.0) -> callable:
    """Chart coordinates of the round sphere into the flat ambient space."""
    return lambda y: _stereo_to_sphere(y, radius)


def hopf_quaternionic() -> callable:
    """S^7(1) -> S^4(1/2) in stereographic coordinates on both sides."""

    def func(y: np.ndarray) -> np.ndarray:
        x = _stereo_to_sphere(y, 1.0)
        q1, q2 = x[:4], x[4:]
        prod = _quaternion_product(q1, _quaternion_conjugate(q2))
        s1 = np.sum(q1 * q1)
        s2 = np.sum(q2 * q2)
        h = np.concatenate([prod, np.atleast_1d(0.5 * (s1 - s2))])
        return _sphere_to_stereo(h, 0.5)

    return func


def hopf_complex() -> callable:
    """S^3(1) -> S^2(1/2) in stereographic coordinates on both sides."""

    def func(y: np.ndarray) -> np.ndarray:
        x = _stereo_to_sphere(y, 1.0)
        a, b, c, d = x
        s1 = a * a + b * b
        s2 = c * c + d * d
        h = np.stack([a * c + b * d, b * c - a * d, 0.5 * (s1 - s2)])
        return _sphere_to_stereo(h, 0.5)

    return func


# --------------------------------------------------------------------------
# catalog entries
# --------------------------------------------------------------------------

KIND_MAP = "riemannian-map"
KIND_SUBMERSION = "riemannian-submersion"


@dataclass(frozen=True)
class CatalogEntry:
    """One built-in geometry plus the theorem hypotheses it satisfies."""

    id: str
    kind: str
    smooth_map: SmoothMap
    declared_rank: int
    base_point: np.ndarray
    hypothesis_tags: tuple[str, ...] = ()
    family: NamedFamily | None = None
    spaceform_side: str | None = None  # "source" | "target"
    structure_fn: object | None = None
    reference_values: dict = field(default_factory=dict)
    notes: str = ""

    def __post_init__(self) -> None:
        if self.kind not in (KIND_MAP, KIND_SUBMERSION):
            raise DegenerateInput(f"unknown catalog kind {self.kind!r}")
        if self.spaceform_side not in (None, "source", "target"):
            raise DegenerateInput(f"bad space-form side {self.spaceform_side!r}")
        p = np.asarray(self.base_point, dtype=float)
        if p.shape != (self.smooth_map.source.dim,):
            raise DimensionMismatch("base point does not match the source chart")
        object.__setattr__(self, "base_point", p)
        p.setflags(write=False)

    @property
    def source_chart(self) -> ChartMetric:
        return self.smooth_map.source

    @property
    def target_chart(self) -> ChartMetric:
        return self.smooth_map.target

    @property
    def vertical_dim(self) -> int:
        return self.source_chart.dim - self.declared_rank

    def instantiate(self, point=None) -> MapAtPoint:
        p = self.base_point if point is None else np.asarray(point, dtype=float)
        return map_at_point(self.smooth_map, p, declared_rank=self.declared_rank)

    def structure_at(self, side_point: np.ndarray) -> StructureOperator:
        if self.structure_fn is None:
            raise HypothesisViolated(f"geometry {self.id!r} declares no structure operator")
        return self.structure_fn(np.asarray(side_point, dtype=float))

    def space_form_spec(self, side_point: np.ndarray) -> SpaceFormSpec:
        """Model-curvature constants + structure at a point of the declared side."""
        if self.family is None or self.spaceform_side is None:
            raise HypothesisViolated(f"geometry {self.id!r} declares no space-form side")
        c1, c2, c3 = family_constants(self.family)
        op = self.structure_at(side_point)
        if self.family.name in CONTACT_FAMILIES:
            return SpaceFormSpec("generalized-sasakian", c1, c2, op, c3)
        return SpaceFormSpec("generalized-complex", c1, c2, op, None)

    def summary(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "rank": self.declared_rank,
            "source_dim": self.source_chart.dim,
            "target_dim": self.target_chart.dim,
            "vertical_dim": self.vertical_dim,
            "tags": list(self.hypothesis_tags),
            "family": None if self.family is None else self.family.to_json(),
            "spaceform_side": self.spaceform_side,
            "base_point": [float(x) for x in self.base_point],
        }


def _build_entries() -> dict[str, CatalogEntry]:
    entries: list[CatalogEntry] = []

    # Orthogonal projection R^5 -> R^2: everything vanishes.
    entries.append(
        CatalogEntry(
            id="euclidean-projection-5-2",
            kind=KIND_SUBMERSION,
            smooth_map=SmoothMap(
                flat_chart(5),
                flat_chart(2),
                coordinate_projection([0, 1]),
                name="euclidean-projection-5-2",
            ),
            declared_rank=2,
            base_point=[0.1, -0.2, 0.3, 0.4, -0.1],
            hypothesis_tags=("sub-vert-general", "sub-vert-gcsf", "sub-vert-gcsf-anti"),
            family=NamedFamily("real", 0.0),
            spaceform_side="source",
            structure_fn=trivial_structure(5),
            reference_values={"C_vertical": 0.0, "delta_C_vertical": 0.0},
            notes="flat fibers in a flat total space; equality holds trivially",
        )
    )

    # Unit 3-sphere isometrically immersed in flat R^4 (umbilical, not equality).
    entries.append(
        CatalogEntry(
            id="sphere-immersion-S3",
            kind=KIND_MAP,
            smooth_map=SmoothMap(
                round_sphere_chart(3, 1.0, half_width=2.0),
                flat_chart(4, half_width=2.0),
                stereographic_embedding(1.0),
                name="sphere-immersion-S3",
            ),
            declared_rank=3,
            base_point=[0.2, 0.3, -0.1],
            hypothesis_tags=("map-general", "map-gcsf", "map-gcsf-antiinvariant"),
            family=NamedFamily("real", 0.0),
            spaceform_side="target",
            structure_fn=trivial_structure(4),
            reference_values={
                "C": 1.0,
                "delta_C": 7.0 / 6.0,
                "delta_hat_C": 7.0 / 6.0,
                "rho_horizontal": 1.0,
                "map_general_residual": 1.0 / 6.0,
            },
            notes="second fundamental form is the identity matrix on one normal",
        )
    )

    # Totally geodesic projective line inside the projective plane (rank 2:
    # below the theorem threshold, kept for the computation pipeline only).
    entries.append(
        CatalogEntry(
            id="fubini-study-CP1-CP2",
            kind=KIND_MAP,
            smooth_map=SmoothMap(
                fubini_study_chart(1, half_width=0.8),
                fubini_study_chart(2, half_width=0.9),
                zero_padding(2),
                name="fubini-study-CP1-CP2",
            ),
            declared_rank=2,
            base_point=[0.1, -0.2],
            hypothesis_tags=(),
            family=NamedFamily("complex", 4.0),
            spaceform_side="target",
            structure_fn=interleaved_complex_structure(2),
            reference_values={"B_norm_sq": 0.0, "P_norm_sq": 2.0},
            notes="invariant totally geodesic embedding; rank 2 < 3",
        )
    )

    # The projective plane mapped to itself: rank-4 map into a complex space form.
    entries.append(
        CatalogEntry(
            id="fubini-study-CP2",
            kind=KIND_MAP,
            smooth_map=SmoothMap(
                fubini_study_chart(2, half_width=0.8),
                fubini_study_chart(2, half_width=0.9),
                identity_map(),
                name="fubini-study-CP2",
            ),
            declared_rank=4,
            base_point=[0.1, -0.2, 0.15, 0.05],
            hypothesis_tags=("map-general", "map-gcsf", "map-gcsf-invariant"),
            family=NamedFamily("complex", 4.0),
            spaceform_side="target",
            structure_fn=interleaved_complex_structure(2),
            reference_values={"rho_horizontal": 2.0, "P_norm_sq": 4.0},
            notes="equality case: totally geodesic with invariant range",
        )
    )

    # Hyperbolic 4-space fibered over the warped line: totally umbilical fibers.
    entries.append(
        CatalogEntry(
            id="warped-product-R-x-R3",
            kind=KIND_SUBMERSION,
            smooth_map=SmoothMap(
                warped_line_chart(3),
                flat_chart(1, half_width=2.0),
                coordinate_projection([0]),
                name="warped-product-R-x-R3",
            ),
            declared_rank=1,
            base_point=[0.0, 0.3, -0.2, 0.1],
            hypothesis_tags=("sub-vert-general", "sub-vert-gcsf", "sub-vert-gcsf-anti"),
            family=NamedFamily("real", -1.0),
            spaceform_side="source",
            structure_fn=trivial_structure(4),
            reference_values={
                "T_diagonal": -1.0,
                "ambient_vertical_2scal": -6.0,
                "fiber_2scal": 0.0,
                "delta_C_vertical": 7.0 / 6.0,
            },
            notes="umbilical fibers: inequality strict, shape diagnosis negative",
        )
    )

    # Quaternionic Hopf fibration: fibers are totally geodesic 3-spheres and
    # the horizontal distribution is maximally non-integrable.
    entries.append(
        CatalogEntry(
            id="quaternionic-hopf-S7-S4",
            kind=KIND_SUBMERSION,
            smooth_map=SmoothMap(
                round_sphere_chart(7, 1.0, half_width=0.45),
                round_sphere_chart(4, 0.5, half_width=30.0),
                hopf_quaternionic(),
                name="quaternionic-hopf-S7-S4",
            ),
            declared_rank=4,
            base_point=[0.12, -0.08, 0.1, 0.15, -0.11, 0.09, 0.05],
            hypothesis_tags=(
                "sub-vert-general",
                "sub-vert-gcsf",
                "sub-vert-gcsf-anti",
                "sub-hor-general",
                "sub-hor-gcsf",
            ),
            family=NamedFamily("real", 1.0),
            spaceform_side="source",
            structure_fn=trivial_structure(7),
            reference_values={
                "A_norm_sq": 12.0,
                "C_horizontal": 3.0,
                "C_L_horizontal": 2.0,
                "delta_C_horizontal": 2.75,
                "delta_hat_C_horizontal": 4.25,
                "rho_base_horizontal": 4.0,
                "fiber_2scal": 6.0,
                "T_norm_sq": 0.0,
            },
            notes="base sphere of radius 1/2; vertical equality, horizontal strict",
        )
    )

    # Complex Hopf fibration: both distribution dimensions sit below the
    # theorem threshold, so it only exercises the computation pipeline.
    entries.append(
        CatalogEntry(
            id="complex-hopf-S3-S2",
            kind=KIND_SUBMERSION,
            smooth_map=SmoothMap(
                round_sphere_chart(3, 1.0, half_width=0.45),
                round_sphere_chart(2, 0.5, half_width=10.0),
                hopf_complex(),
                name="complex-hopf-S3-S2",
            ),
            declared_rank=2,
            base_point=[0.1, -0.2, 0.15],
            hypothesis_tags=(),
            family=NamedFamily("real", 1.0),
            spaceform_side="source",
            structure_fn=trivial_structure(3),
            reference_values={"A_norm_sq": 2.0},
            notes="horizontal rank 2 < 3: theorem requests must be rejected",
        )
    )

    # Standard Sasakian R^5 fibered over flat C^2; the Reeb field spans the
    # vertical space, so it is normal to the horizontal distribution.
    entries.append(
        CatalogEntry(
            id="sasakian-R5-model",
            kind=KIND_SUBMERSION,
            smooth_map=SmoothMap(
                heisenberg_chart(),
                flat_chart(4, scale=0.25, half_width=2.0),
                coordinate_projection([0, 1, 2, 3]),
                name="sasakian-R5-model",
            ),
            declared_rank=4,
            base_point=[0.2, 0.3, -0.1, 0.15, 0.1],
            hypothesis_tags=("sub-hor-general", "sub-hor-gssf"),
            family=NamedFamily("sasakian", -3.0),
            spaceform_side="source",
            structure_fn=heisenberg_structure(),
            reference_values={
                "A_norm_sq": 4.0,
                "C_horizontal": 1.0,
                "C_L_horizontal": 2.0 / 3.0,
                "delta_C_horizontal": 11.0 / 12.0,
                "P_norm_sq": 4.0,
                "ambient_horizontal_2scal": -12.0,
            },
            notes="Reeb field vertical: the structure branch without the c3 term",
        )
    )

    # Kenmotsu model H^5 -> H^3 (warped lines shared): the Reeb field d/dt is
    # horizontal and the horizontal distribution is integrable (equality).
    entries.append(
        CatalogEntry(
            id="kenmotsu-H5-H3",
            kind=KIND_SUBMERSION,
            smooth_map=SmoothMap(
                warped_line_chart(4, half_t=0.8, half_x=1.5),
                warped_line_chart(2, half_t=0.9, half_x=1.8),
                coordinate_projection([0, 1, 2]),
                name="kenmotsu-H5-H3",
            ),
            declared_rank=3,
            base_point=[0.1, 0.2, -0.3, 0.25, -0.15],
            hypothesis_tags=("sub-hor-general", "sub-hor-gssf"),
            family=NamedFamily("kenmotsu", -1.0),
            spaceform_side="source",
            structure_fn=warped_contact_structure(4),
            reference_values={
                "A_norm_sq": 0.0,
                "rho_horizontal": -1.0,
                "P_norm_sq": 2.0,
            },
            notes="Reeb field horizontal: the structure branch with the c3 term; equality",
        )
    )

    out = {e.id: e for e in entries}
    if len(out) != len(entries):
        raise DegenerateInput("duplicate catalog ids")
    return out


_ENTRIES = _build_entries()


def list_entries() -> list[CatalogEntry]:
    """All built-in entries in a stable order."""
    return list(_ENTRIES.values())


def get(entry_id: str) -> CatalogEntry:
    try:
        return _ENTRIES[entry_id]
    except KeyError:
        known = ", ".join(sorted(_ENTRIES))
        raise DegenerateInput(f"unknown geometry {entry_id!r}; know {known}") from None


# --------------------------------------------------------------------------
# geometry-description files
# --------------------------------------------------------------------------

_CHART_BUILDERS = {
    "flat": flat_chart,
    "sphere": round_sphere_chart,
    "warped-line": warped_line_chart,
    "fubini-study": fubini_study_chart,
    "heisenberg": heisenberg_chart,
}

_MAP_BUILDERS = {
    "coordinate-projection": lambda spec: coordinate_projection(spec["indices"]),
    "zero-padding": lambda spec: zero_padding(int(spec["pad"])),
    "identity": lambda spec: identity_map(),
    "stereographic-embedding": lambda spec: stereographic_embedding(
        float(spec.get("radius", 1.0))
    ),
    "hopf-quaternionic": lambda spec: hopf_quaternionic(),
    "hopf-complex": lambda spec: hopf_complex(),
}

_STRUCTURE_BUILDERS = {
    "trivial": lambda spec, dim: trivial_structure(dim),
    "interleaved-complex": lambda spec, dim: interleaved_complex_structure(dim // 2),
    "heisenberg": lambda spec, dim: heisenberg_structure(),
    "warped-contact": lambda spec, dim: warped_contact_structure(dim - 1),
}


def _chart_from_description(desc: dict) -> ChartMetric:
    kind = desc.get("builder")
    if kind not in _CHART_BUILDERS:
        raise DegenerateInput(f"unknown chart builder {kind!r}")
    kwargs = {k: v for k, v in desc.items() if k != "builder"}
    return _CHART_BUILDERS[kind](**kwargs)


def entry_from_description(desc: dict) -> CatalogEntry:
    """Build a CatalogEntry from a JSON-style description dictionary.

    Charts and maps are named builtins with parameters; arbitrary user metric
    functions are out of scope for the file format.
    """
    source = _chart_from_description(desc["source_chart"])
    target = _chart_from_description(desc["target_chart"])
    map_desc = desc["map"]
    builder = map_desc.get("builder")
    if builder not in _MAP_BUILDERS:
        raise DegenerateInput(f"unknown map builder {builder!r}")
    func = _MAP_BUILDERS[builder](map_desc)

    family = None
    if desc.get("family"):
        fam = desc["family"]
        family = NamedFamily(fam["name"], float(fam["c"]), fam.get("alpha"))

    structure_fn = None
    if desc.get("structure"):
        sdesc = desc["structure"]
        sbuilder = sdesc.get("builder")
        if sbuilder not in _STRUCTURE_BUILDERS:
            raise DegenerateInput(f"unknown structure builder {sbuilder!r}")
        side = desc.get("spaceform_side", "source")
        dim = source.dim if side == "source" else target.dim
        structure_fn = _STRUCTURE_BUILDERS[sbuilder](sdesc, dim)

    return CatalogEntry(
        id=desc["id"],
        kind=desc["kind"],
        smooth_map=SmoothMap(source, target, func, name=desc["id"]),
        declared_rank=int(desc["declared_rank"]),
        base_point=desc["base_point"],
        hypothesis_tags=tuple(desc.get("tags", ())),
        family=family,
        spaceform_side=desc.get("spaceform_side"),
        structure_fn=structure_fn,
        reference_values=dict(desc.get("reference_values", {})),
        notes=desc.get("notes", ""),
    )


def load_geometry_file(path: str) -> CatalogEntry:
    with open(path, encoding="utf-8") as fh:
        return entry_from_description(json.load(fh))
