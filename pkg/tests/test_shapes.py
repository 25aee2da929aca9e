"""Simplex and horn enumeration against full-product brute force."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from anodyne.fincat import SizeGuardError, is_injective
from anodyne.lattice import builtin_lattice, make_boolean, make_chain
from anodyne.shapes import (
    HornSpec,
    SimplexPoint,
    enumerate_horn,
    enumerate_simplex,
    flat_positions,
    horn_inclusion,
    horn_member,
    point_label,
    validate_point,
)
from util import brute_horn_points, brute_simplex_points

C2 = make_chain(2)
C3 = make_chain(3)
C4 = make_chain(4)
B2 = make_boolean(2)


@pytest.mark.parametrize("lat", [C2, C3, C4, B2], ids=["C2", "C3", "C4", "B2"])
@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_simplex_matches_brute_force(lat, n):
    got = [p.coords for p in enumerate_simplex(lat, n)]
    assert got == brute_simplex_points(lat, n)


@pytest.mark.parametrize("lat", [C2, C3, B2], ids=["C2", "C3", "B2"])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_horn_matches_brute_force(lat, n):
    for k in range(n + 1):
        got = [p.coords for p in enumerate_horn(lat, HornSpec(n, k))]
        assert got == brute_horn_points(lat, n, k)


def test_frozen_counts():
    # counts confirmed by the brute-force oracle above
    assert len(enumerate_simplex(C3, 2)) == 6
    assert len(enumerate_horn(C3, HornSpec(2, 1))) == 5
    assert len(enumerate_simplex(C3, 1)) == 3
    assert len(enumerate_horn(C3, HornSpec(1, 1))) == 1
    for n in range(9):
        assert len(enumerate_simplex(C2, n)) == n + 1


def test_dimension_zero_is_the_single_endpoint_pair():
    for lat in (C2, C3, C4, B2):
        pts = enumerate_simplex(lat, 0)
        assert [p.coords for p in pts] == [(lat.top, lat.bottom)]


def test_inner_horns_saturate_over_the_two_chain():
    # every interior runs over {0,1}; a threshold point always has a
    # flat away from any single inner index once n >= 2
    for n in range(2, 7):
        total = len(enumerate_simplex(C2, n))
        for k in range(1, n):
            assert len(enumerate_horn(C2, HornSpec(n, k))) == total


def test_horn_inclusion_frozen_table():
    inc = horn_inclusion(C3, HornSpec(2, 1))
    assert inc.dom.size == 5 and inc.cod.size == 6
    assert is_injective(inc)
    # confirmed by locating each horn point in the simplex listing
    simplex = [p.coords for p in enumerate_simplex(C3, 2)]
    horn = [p.coords for p in enumerate_horn(C3, HornSpec(2, 1))]
    assert inc.table == tuple(simplex.index(c) for c in horn)
    assert inc.table == (0, 1, 3, 4, 5)


def test_horn_complement_is_the_single_interior_point():
    simplex = enumerate_simplex(C3, 2)
    horn_coords = {p.coords for p in enumerate_horn(C3, HornSpec(2, 1))}
    missing = [p.coords for p in simplex if p.coords not in horn_coords]
    assert missing == [(2, 1, 1, 0)]


@pytest.mark.parametrize("lat", [C3, B2], ids=["C3", "B2"])
def test_horn_membership_predicate_agrees_with_enumeration(lat):
    for n in (1, 2, 3):
        for k in range(n + 1):
            spec = HornSpec(n, k)
            members = {p.coords for p in enumerate_horn(lat, spec)}
            for p in enumerate_simplex(lat, n):
                assert horn_member(lat, spec, p) == (p.coords in members)


def test_flat_positions():
    p = SimplexPoint(2, (2, 2, 0, 0))
    assert flat_positions(p) == (0, 2)
    q = SimplexPoint(2, (2, 1, 0, 0))
    assert flat_positions(q) == (2,)


def test_validate_point_rejections():
    with pytest.raises(ValueError):
        validate_point(C3, SimplexPoint(1, (2, 1)))  # wrong length
    with pytest.raises(ValueError):
        validate_point(C3, SimplexPoint(1, (1, 1, 0)))  # top endpoint wrong
    with pytest.raises(ValueError):
        validate_point(C3, SimplexPoint(1, (2, 1, 1)))  # bottom endpoint wrong
    with pytest.raises(ValueError):
        validate_point(C3, SimplexPoint(2, (2, 0, 1, 0)))  # not decreasing
    with pytest.raises(ValueError):
        validate_point(C3, SimplexPoint(1, (2, 9, 0)))  # out of range


def test_incomparable_coordinates_rejected_on_boolean_square():
    # 01 and 10 are incomparable, so they cannot sit adjacently
    with pytest.raises(ValueError):
        validate_point(B2, SimplexPoint(2, (3, 1, 2, 0)))


def test_horn_spec_validation():
    with pytest.raises(ValueError):
        HornSpec(2, 5)
    with pytest.raises(ValueError):
        HornSpec(2, -1)
    with pytest.raises(ValueError):
        HornSpec(-1, 0)
    assert HornSpec(2, 1).inner
    assert not HornSpec(2, 0).inner
    assert not HornSpec(2, 2).inner


def test_size_guard_names_the_bound():
    with pytest.raises(SizeGuardError) as exc:
        enumerate_simplex(C4, 12, 100)
    assert "100" in str(exc.value)


def test_point_labels_use_lattice_labels():
    assert point_label(C3, SimplexPoint(2, (2, 1, 0, 0))) == "(2,1,0,0)"
    pts = enumerate_simplex(B2, 1)
    labels = [point_label(B2, p) for p in pts]
    assert labels[0] == "(11,00,00)"
    assert len(labels) == len(set(labels))


@given(st.integers(1, 3), st.data())
def test_every_horn_point_has_a_flat_away_from_k(n, data):
    lat = data.draw(st.sampled_from([C2, C3, C4, B2]))
    k = data.draw(st.integers(0, n))
    for p in enumerate_horn(lat, HornSpec(n, k)):
        validate_point(lat, p)
        assert any(j != k for j in flat_positions(p))


@given(st.sampled_from([C2, C3, B2]), st.integers(0, 3))
def test_enumeration_is_strictly_lex_sorted(lat, n):
    pts = [p.coords for p in enumerate_simplex(lat, n)]
    assert pts == sorted(pts)
    assert len(set(pts)) == len(pts)
