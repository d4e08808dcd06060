import numpy as np
import pytest

from casorati.errors import BranchUndetermined, DegenerateInput, HypothesisViolated
from casorati.framecore import Frame, InnerProduct, StructureOperator
from casorati.measures import ROLE_B, delta_casorati, make_equality_shape
from casorati.spaceforms import NamedFamily
from casorati.verify import (
    REGISTRY,
    THEOREM_IDS,
    classify_invariance,
    rhs_for,
    specialization_deviation,
    theorem_info,
    verify_geometry,
    verify_synthetic,
    xi_position,
)

RESIDUAL_SCALE_TOL = 1e-8
EQ_TOL = 1e-7
SPECIALIZATION_TOL = 1e-12

EXPECTED_IDS = (
    "map-general",
    "map-gcsf",
    "map-gcsf-invariant",
    "map-gcsf-antiinvariant",
    "map-gssf",
    "map-gssf-invariant",
    "map-gssf-antiinvariant",
    "sub-vert-general",
    "sub-vert-gcsf",
    "sub-vert-gcsf-inv",
    "sub-vert-gcsf-anti",
    "sub-vert-gssf",
    "sub-vert-gssf-inv",
    "sub-vert-gssf-anti",
    "sub-hor-general",
    "sub-hor-gcsf",
    "sub-hor-gssf",
)


def test_registry_is_complete_pinned():
    assert THEOREM_IDS == EXPECTED_IDS
    assert len(REGISTRY) == 17
    assert theorem_info("map-gssf").needs_xi
    assert not theorem_info("map-gcsf").needs_xi
    with pytest.raises(DegenerateInput):
        theorem_info("map-lorentz")


def _contact_op():
    phi = np.zeros((5, 5))
    phi[0, 1], phi[1, 0] = -1.0, 1.0
    phi[2, 3], phi[3, 2] = -1.0, 1.0
    xi = np.eye(5)[4]
    return StructureOperator(phi, "almost-contact", xi=xi, eta=xi)


def test_xi_position_branches():
    inner = InnerProduct.euclidean(5)
    xi = np.eye(5)[4]
    tangent = xi_position(xi, Frame(np.eye(5)[[0, 1, 4]], inner))
    assert tangent.tangent and tangent.projection_defect <= 1e-12
    normal = xi_position(xi, Frame(np.eye(5)[[0, 1, 2]], inner))
    assert normal.position == "normal"
    oblique_frame = Frame(
        np.vstack([np.eye(5)[0], (np.eye(5)[1] + np.eye(5)[4]) / np.sqrt(2.0)]), inner
    )
    with pytest.raises(BranchUndetermined):
        xi_position(xi, oblique_frame)


def test_classify_invariance_three_ways():
    op = _contact_op()
    inner = InnerProduct.euclidean(5)
    inv = classify_invariance(Frame(np.eye(5)[[0, 1]], inner), op)
    assert inv.label == "invariant" and inv.pnorm2 == pytest.approx(2.0)
    anti = classify_invariance(Frame(np.eye(5)[[0, 2]], inner), op)
    assert anti.label == "anti-invariant" and anti.pnorm2 <= 1e-12
    theta = 0.3
    mixed = np.vstack([np.eye(5)[0], np.cos(theta) * np.eye(5)[1] + np.sin(theta) * np.eye(5)[2]])
    generic = classify_invariance(Frame(mixed, inner), op)
    assert generic.label == "generic"
    assert generic.pnorm2 == pytest.approx(2.0 * np.cos(theta) ** 2, abs=1e-12)


def test_trivial_structure_counts_as_anti_invariant():
    inner = InnerProduct.euclidean(3)
    op = StructureOperator(np.zeros((3, 3)), "trivial")
    out = classify_invariance(Frame(np.eye(3), inner), op)
    assert out.label == "anti-invariant"
    assert out.pnorm2 == 0.0


def _toy_report(r=4):
    return delta_casorati(make_equality_shape(ROLE_B, [1.0], r))


def test_rhs_for_model_theorems():
    rep = _toy_report(4)
    fam = NamedFamily("complex", 4.0)  # c1 = c2 = 1
    # invariant: |P|^2 = r, reference = 1 + 3 * 4 / 12 = 2
    rhs = rhs_for("map-gcsf-invariant", "delta", 4, rep, family=fam)
    assert rhs == pytest.approx(rep.delta_C + 2.0, abs=1e-12)
    # anti-invariant: reference = c1
    rhs = rhs_for("map-gcsf-antiinvariant", "delta-hat", 4, rep, family=fam)
    assert rhs == pytest.approx(rep.delta_hat_C + 1.0, abs=1e-12)
    # generic needs |P|^2 explicitly
    rhs = rhs_for("map-gcsf", "delta", 4, rep, family=fam, pnorm2=2.0)
    assert rhs == pytest.approx(rep.delta_C + 1.5, abs=1e-12)
    with pytest.raises(DegenerateInput):
        rhs_for("map-gcsf", "delta", 4, rep, family=fam)


def test_rhs_for_error_paths():
    rep = _toy_report(4)
    with pytest.raises(DegenerateInput):
        rhs_for("map-general", "delta", 4, rep)  # missing rho_reference
    with pytest.raises(DegenerateInput):
        rhs_for("map-general", "midpoint", 4, rep, rho_reference=0.0)
    with pytest.raises(HypothesisViolated):
        rhs_for("map-general", "delta", 2, _toy_report(3), rho_reference=0.0)
    with pytest.raises(BranchUndetermined):
        rhs_for("map-gssf", "delta", 4, rep, family=NamedFamily("sasakian", -3.0), pnorm2=1.0)


def test_sphere_immersion_residual_one_sixth():
    reports = verify_geometry("map-general", "sphere-immersion-S3")
    assert len(reports) == 2  # both variants
    for rep in reports:
        assert rep.holds
        assert rep.lhs == pytest.approx(1.0, abs=1e-6)
        assert rep.residual == pytest.approx(1.0 / 6.0, abs=1e-6)
        assert not rep.equality.is_equality_shape
        assert rep.xi_branch == "absent"


def test_kenmotsu_horizontal_equality():
    reports = verify_geometry("sub-hor-gssf", "kenmotsu-H5-H3")
    for rep in reports:
        assert rep.holds
        assert rep.xi_branch == "tangent"
        assert abs(rep.residual) <= EQ_TOL * (1.0 + abs(rep.rhs))
        assert rep.equality.is_equality_shape  # A vanishes identically


def test_cp2_identity_map_is_invariant_equality():
    reports = verify_geometry("map-gcsf-invariant", "fubini-study-CP2")
    for rep in reports:
        assert rep.holds
        assert rep.invariance == "invariant"
        if rep.variant == "delta":
            assert abs(rep.residual) <= EQ_TOL * (1.0 + abs(rep.rhs))
        assert rep.equality.is_equality_shape


def test_hopf_sub_hor_is_strict():
    reports = verify_geometry("sub-hor-general", "quaternionic-hopf-S7-S4")
    for rep in reports:
        assert rep.holds
        assert rep.residual > 1e-3  # far from equality
        assert not rep.equality.is_equality_shape


def test_invariance_gate_refuses_mismatched_geometry():
    # the sphere immersion's range is anti-invariant (trivial J), never invariant
    with pytest.raises(HypothesisViolated):
        verify_geometry("map-gcsf-invariant", "sphere-immersion-S3")


def test_family_kind_gates():
    with pytest.raises(HypothesisViolated):
        verify_geometry("map-gssf", "sphere-immersion-S3")  # real family, needs contact
    with pytest.raises(HypothesisViolated):
        verify_geometry("sub-hor-gcsf", "sasakian-R5-model")  # contact family on a gcsf id
    with pytest.raises(HypothesisViolated):
        verify_geometry("sub-vert-general", "sphere-immersion-S3")  # not a submersion


def test_r_threshold_gate():
    with pytest.raises(HypothesisViolated):
        verify_geometry("sub-hor-general", "complex-hopf-S3-S2")  # r = 2


@pytest.mark.parametrize(
    "theorem",
    ["map-general", "map-gssf-invariant", "sub-vert-gcsf-anti", "sub-hor-gssf"],
)
def test_synthetic_fuzz_smoke(theorem):
    out = verify_synthetic(theorem, trials=2000, seed=3)
    assert out["trials"] == 2000
    assert out["failures"] == 0
    assert out["min_residual"] >= -RESIDUAL_SCALE_TOL
    assert out["equality_hits"] == 2000 // 16


def test_synthetic_fuzz_is_deterministic():
    a = verify_synthetic("map-gcsf", trials=500, seed=11)
    b = verify_synthetic("map-gcsf", trials=500, seed=11)
    assert a == b


def test_specialization_deviation_small():
    assert specialization_deviation(samples=300, seed=5) <= SPECIALIZATION_TOL
