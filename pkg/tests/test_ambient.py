"""Tests for weighted projective spaces, blowup ambients, and two-ray games."""

from fractions import Fraction

import pytest

from wcilinks.ambient import (
    ConeZ2,
    DivisorClass,
    Rank2Toric,
    WCISpec,
    WPS,
    analyze_ambient,
    blowup_ambient,
    blowup_weight_vector,
    certify_stratum_empty,
    cone_calculus,
    run_two_ray_game,
    transport_equation,
)
from wcilinks.qpoly import QQ, Ambient, WeightVector


@pytest.fixture
def P61():
    return WPS((1, 2, 3, 4, 7, 11), ("x", "y", "z", "t", "v", "w"))


@pytest.fixture
def T61(P61):
    return blowup_ambient(P61, "w", {"x": 6, "y": 1, "z": 7, "t": 2, "v": 9})


def synthetic_equations(T61):
    """Bihomogeneous equations with the transported hypersurface shape."""
    amb = T61.ambient(QQ)
    f1 = amb.parse(
        "-w*x + y^6 + y^4*t + y^2*t^2 + t^3 + y*z*v*u + z^4*u^2"
        " + z^2*y*(y^2 + t)*u"
    )
    f2 = amb.parse("w*z + y*(y^6 + 2*t^3) + v^2*u + x^2*y^6*u")
    return [f1, f2]


# ---------------------------------------------------------------------------
# weighted projective spaces and numerics


def test_wps_basics(P61):
    assert P61.dim == 5
    assert P61.weight("w") == 11
    assert str(P61) == "P(1,2,3,4,7,11)"
    assert P61.is_well_formed()
    assert not WPS((2, 2, 3), ("x", "y", "z")).is_well_formed()


def test_wci_numerics(P61):
    spec = WCISpec(P61, (12, 14))
    assert spec.dimension == 3
    assert spec.codimension == 2
    assert spec.fano_index == 2
    assert spec.amplitude == Fraction(1, 11)
    report = analyze_ambient(P61, (12, 14))
    assert report.fano_index == 2
    assert report.amplitude == Fraction(1, 11)
    assert report.well_formed


# ---------------------------------------------------------------------------
# divisor classes and cones


def test_divisor_class_arithmetic():
    d = DivisorClass(2, 1)
    e = DivisorClass(1, 0)
    assert (d + e).coords() == (3, 1)
    assert (d - e).coords() == (1, 1)
    assert (3 * e).coords() == (3, 0)
    assert DivisorClass(4, 2).proportional_to(DivisorClass(2, 1))
    assert not DivisorClass(-4, -2).proportional_to(DivisorClass(2, 1))
    assert not DivisorClass(1, 1).proportional_to(DivisorClass(2, 1))


def test_cone_z2():
    c = ConeZ2((1, 0), (1, 1))
    assert c.contains((2, 1))
    assert c.strictly_contains((2, 1))
    assert c.contains((1, 0)) and not c.strictly_contains((1, 0))
    assert c.on_boundary(DivisorClass(3, 3))
    assert c.boundary_ray((5, 5)) == 2
    assert c.boundary_ray((3, 0)) == 1
    assert c.boundary_ray((2, 1)) is None
    assert not c.contains((0, 1))
    with pytest.raises(ValueError):
        ConeZ2((1, 0), (2, 0))
    with pytest.raises(ValueError):
        ConeZ2((1, 1), (1, 0))


# ---------------------------------------------------------------------------
# blowup ambient construction


def test_blowup_ambient_column_order(T61):
    assert T61.names == ("u", "w", "y", "t", "v", "z", "x")
    assert T61.columns == (
        (0, -11),
        (11, 0),
        (2, 1),
        (4, 2),
        (7, 9),
        (3, 7),
        (1, 6),
    )
    assert T61.group1() == ("u", "w")


def test_blowup_ambient_slope_tie_break():
    P = WPS((1, 1, 1, 2, 3), ("y", "z", "x", "t", "w"))
    T = blowup_ambient(P, "x", {"y": 4, "z": 1, "t": 2, "w": 1})
    # z and t both have slope 1; z comes first in the original order
    assert T.names == ("u", "x", "w", "z", "t", "y")
    assert T.columns == ((0, -1), (1, 0), (3, 1), (1, 1), (2, 2), (1, 4))


def test_blowup_ambient_validation(P61):
    with pytest.raises(ValueError, match="missing blowup weight"):
        blowup_ambient(P61, "w", {"x": 6})
    with pytest.raises(ValueError, match="positive"):
        blowup_ambient(P61, "w", {"x": 0, "y": 1, "z": 7, "t": 2, "v": 9})


def test_blowup_weight_vector(P61):
    w = blowup_weight_vector(P61, "w", {"x": 6, "y": 1, "z": 7, "t": 2, "v": 9})
    assert w.nums == (6, 1, 7, 2, 9, 0)
    assert w.den == 11


def test_transport_round_trip(P61, T61):
    amb = P61.ambient(QQ)
    f = amb.parse("w*x + y^6 + t^3")
    weights = {"x": 6, "y": 1, "z": 7, "t": 2, "v": 9}
    lifted = transport_equation(f, P61, "w", weights, T61)
    # setting u = 1 recovers f in the toric coordinate order
    from wcilinks.qpoly import substitute

    toric_amb = lifted.ambient
    back = substitute(lifted, {"u": toric_amb.one()}, toric_amb)
    assert back == f.rename(toric_amb)
    assert T61.bidegree(lifted).coords() == (12, 6)


def test_bidegree_validation(T61):
    amb = T61.ambient(QQ)
    with pytest.raises(ValueError, match="bihomogeneous"):
        T61.bidegree(amb.parse("w*x + y^2"))


# ---------------------------------------------------------------------------
# two-ray games


def test_game_main_family(T61):
    tr = run_two_ray_game(T61)
    assert tr.nmodels == 3
    assert [(c.ray1, c.ray2) for c in tr.chambers] == [
        ((1, 0), (2, 1)),
        ((2, 1), (7, 9)),
        ((7, 9), (3, 7)),
    ]
    assert len(tr.walls) == 2
    w1, w2 = tr.walls
    assert w1.wall_vars == ("y", "t")
    assert w1.plus_vars == ("v", "z", "x")
    assert w1.minus_vars == ("u", "w")
    assert w2.wall_vars == ("v",)
    assert tr.end.kind == "divisorial"
    assert tr.end.contracted == "x"
    assert tr.end.functional == (6, -1)
    assert tr.end.target.weights == (1, 6, 1, 2, 3, 1)
    assert tr.end.target.names == ("u", "w", "y", "t", "v", "z")
    assert tr.end.wall_vars == ("z",)
    assert tr.end.image_dim == 0  # contracted to the point where only z survives
    assert tr.entry.kind == "divisorial"
    assert tr.entry.contracted == "u"
    assert set(zip(tr.entry.target.names, tr.entry.target.weights)) == {
        ("x", 1), ("y", 2), ("z", 3), ("t", 4), ("v", 7), ("w", 11),
    }


def test_game_first_exclusion():
    P = WPS((1, 1, 1, 2, 3), ("y", "z", "x", "t", "w"))
    T = blowup_ambient(P, "x", {"y": 4, "z": 1, "t": 2, "w": 1})
    tr = run_two_ray_game(T)
    assert tr.nmodels == 2
    assert len(tr.walls) == 1
    assert tr.walls[0].wall_vars == ("w",)
    assert tr.end.kind == "divisorial"
    assert tr.end.contracted == "y"
    assert tr.end.functional == (4, -1)
    assert tr.end.target.weights == (1, 4, 11, 3, 6)
    assert tr.end.wall_vars == ("z", "t")
    assert tr.end.image_dim == 1  # image is the curve where z, t survive


def test_game_second_exclusion():
    P = WPS((1, 1, 1, 2, 3, 6), ("y", "z", "x", "t", "w", "s"))
    T = blowup_ambient(P, "x", {"y": 2, "z": 1, "t": 2, "w": 1, "s": 4})
    tr = run_two_ray_game(T)
    assert tr.nmodels == 3
    assert [w.wall_vars for w in tr.walls] == [("w",), ("s",)]
    assert tr.end.kind == "divisorial"
    assert tr.end.contracted == "y"
    assert tr.end.functional == (2, -1)
    assert tr.end.target.weights == (1, 2, 5, 8, 1, 2)
    assert tr.end.image_dim == 1


def test_game_ordinary_blowup_fibration():
    P2 = WPS((1, 1, 1), ("x0", "x1", "x2"))
    T = blowup_ambient(P2, "x0", {"x1": 1, "x2": 1})
    tr = run_two_ray_game(T)
    assert tr.nmodels == 1
    assert len(tr.walls) == 0
    assert tr.end.kind == "fibration"
    assert tr.end.functional == (1, -1)
    assert tr.end.target.weights == (1, 1)
    assert set(tr.end.target.names) == {"u", "x0"}
    assert tr.entry.kind == "divisorial"
    assert tr.entry.contracted == "u"
    assert tr.entry.target.weights == (1, 1, 1)


def test_game_rejects_unpointed():
    T = Rank2Toric(
        ("a", "b", "c", "d"),
        ((1, 0), (0, 1), (-1, 0), (0, -1)),
        2,
    )
    with pytest.raises(ValueError, match="pointed|line"):
        run_two_ray_game(T)


def test_game_rejects_bad_split():
    # group separation fails: group1 contains the largest ray
    T = Rank2Toric(
        ("a", "b", "c", "d"),
        ((1, 2), (1, 0), (2, 1), (1, 1)),
        2,
    )
    with pytest.raises(ValueError, match="separated|inside"):
        run_two_ray_game(T)


# ---------------------------------------------------------------------------
# emptiness certification and cone calculus


def test_certify_unstable_stratum(T61):
    amb = T61.ambient(QQ)
    eqs = [amb.parse("w*z + v^2*u")]
    cert = certify_stratum_empty(
        eqs,
        dead={"y", "t", "v", "z", "x"},
        left=frozenset({"u", "w"}),
        right=frozenset({"y", "t", "v", "z", "x"}),
    )
    assert cert.empty
    assert "unstable" in cert.reason


def test_certify_binary_form_wall(T61):
    eqs = synthetic_equations(T61)
    cert = certify_stratum_empty(
        eqs,
        dead={"v", "z", "x"},
        left=frozenset({"u", "w"}),
        right=frozenset({"y", "t", "v", "z", "x"}),
    )
    assert cert.empty, cert.render()


def test_certify_reports_failure(T61):
    amb = T61.ambient(QQ)
    # no equations restrict: the stratum clearly has stable points
    eqs = [amb.parse("x*w")]
    cert = certify_stratum_empty(
        eqs,
        dead={"x"},
        left=frozenset({"u", "w"}),
        right=frozenset({"y", "t", "v", "z", "x"}),
    )
    assert not cert.empty


def test_cone_calculus_main_family(T61):
    eqs = synthetic_equations(T61)
    tr = run_two_ray_game(T61)
    report = cone_calculus(tr, eqs)
    assert [d.coords() for d in report.bidegrees] == [(12, 6), (14, 7)]
    assert report.anticanonical.coords() == (2, 1)
    assert report.wall_reports[0].isomorphism
    assert not report.wall_reports[1].isomorphism
    assert report.nef_cones[0] == ConeZ2((1, 0), (7, 9))
    assert report.nef_cones[1] == ConeZ2((1, 0), (7, 9))
    assert report.nef_cones[2] == ConeZ2((7, 9), (3, 7))
    assert report.mov == ConeZ2((1, 0), (3, 7))
    assert report.anticanonical_in_mov_interior
    assert not report.anticanonical_on_mov_boundary


def test_cone_calculus_degenerate_member_keeps_walls_genuine(T61):
    # drop the binary forms: the wall locus is no longer certifiably empty
    amb = T61.ambient(QQ)
    eqs = [
        amb.parse("-w*x + y^6 + z^4*u^2"),
        amb.parse("w*z + y^7 + v^2*u"),
    ]
    tr = run_two_ray_game(T61)
    report = cone_calculus(tr, eqs)
    assert not report.wall_reports[0].isomorphism
    assert report.nef_cones[0] == ConeZ2((1, 0), (2, 1))
