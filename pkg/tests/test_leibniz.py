"""Transposition, the arrow-category isos, orthogonality, and closure."""

from __future__ import annotations

import itertools

import pytest

from anodyne.fincat import (
    FamMap,
    Family,
    FinMap,
    FinSet,
    Square,
    compose,
    enumerate_fam_maps,
    enumerate_squares,
    identity,
    identity_square,
    is_bijection,
    is_fam_iso,
    invert,
    pullback_hom_fam,
    pullback_hom_map,
    pushout_product_fam,
    pushout_product_map,
)
from anodyne.leibniz import (
    ArrowIso,
    DiagonalFiller,
    OrthogonalityPreconditionError,
    RetractData,
    RetractDataError,
    assoc_comm_check,
    assoc_iso,
    comm_iso,
    enumerate_fillers,
    enumerate_lifting_problems,
    fill_pushout_product_problem,
    is_filler,
    is_orthogonal,
    orth_closure_pushout_product,
    orth_closure_retract,
    pullback_hom_retract,
    pullback_hom_square_action,
    transpose_fam,
    transpose_map,
    two_var_adjunction_fam,
    two_variable_adjunction,
    unique_filler,
    untranspose_fam,
    untranspose_map,
    validate_retract_data,
)
from util import all_maps, brute_fillers

SWAP = FinMap(FinSet(2), FinSet(2), (1, 0))
EMPTY_TO_POINT = FinMap(FinSet(0), FinSet(1), ())
COLLAPSE = FinMap(FinSet(2), FinSet(1), (0, 0))
POINT_TO_PAIR = FinMap(FinSet(1), FinSet(2), (0,))


def test_family_transpose_roundtrip_exhaustively():
    F = Family(FinSet(2), (FinSet(1), FinSet(2)))
    G = Family(FinSet(1), (FinSet(2),))
    H = Family(FinSet(2), (FinSet(2), FinSet(1)))
    ppf = pushout_product_fam(F, G)
    phf = pullback_hom_fam(G, H)
    left = enumerate_fam_maps(ppf.family, H)
    right = enumerate_fam_maps(F, phf.family)
    assert len(left) == len(right) > 0
    transposed = []
    for h in left:
        t = transpose_fam(h, ppf, phf)
        assert t.src == F and t.dst == phf.family
        assert untranspose_fam(t, ppf, phf) == h
        transposed.append(t)
    assert sorted(t.key() for t in transposed) == sorted(t.key() for t in right)


def test_two_var_adjunction_fam_builds_a_verified_iso():
    F = Family(FinSet(1), (FinSet(2),))
    G = Family(FinSet(2), (FinSet(1), FinSet(1)))
    H = Family(FinSet(1), (FinSet(2),))
    res = two_var_adjunction_fam(F, G, H)
    assert res.iso.src == res.phf_left.family
    assert res.iso.dst == res.phf_right.family
    assert is_fam_iso(res.iso)
    assert res.ppf.first == F and res.phf_left.second == H


def test_map_transpose_is_a_bijection_on_squares():
    f = POINT_TO_PAIR
    g = SWAP
    h = FinMap(FinSet(2), FinSet(2), (0, 0))
    ppm = pushout_product_map(f, g)
    phm = pullback_hom_map(g, h)
    problems = enumerate_squares(ppm.map, h)
    images = []
    for sq in problems:
        t = transpose_map(f, g, h, sq)
        assert t.left == f and t.right == phm.map
        assert untranspose_map(f, g, h, t) == sq
        images.append((tuple(t.top.table), tuple(t.bottom.table)))
    assert len(set(images)) == len(problems)
    other_side = enumerate_squares(f, phm.map)
    assert len(other_side) == len(problems)


def test_two_variable_adjunction_square_counts():
    f = POINT_TO_PAIR
    g = COLLAPSE
    h = SWAP
    res = two_variable_adjunction(f, g, h)
    ppm = pushout_product_map(f, g)
    phm = pullback_hom_map(g, h)
    assert len(enumerate_squares(ppm.map, h)) == len(enumerate_squares(f, phm.map))
    # the ArrowIso endpoints are the two gap maps of the adjunction
    assert res.iso.forward.left == res.left.map
    assert res.iso.forward.right == res.right.map


def test_comm_iso_swaps_factors():
    for f, g in ((POINT_TO_PAIR, SWAP), (EMPTY_TO_POINT, COLLAPSE)):
        iso = comm_iso(f, g)
        assert iso.forward.left == pushout_product_map(f, g).map
        assert iso.forward.right == pushout_product_map(g, f).map
        assert is_bijection(iso.forward.top)
        assert is_bijection(iso.forward.bottom)


def test_assoc_iso_and_report():
    f, g, h = POINT_TO_PAIR, SWAP, COLLAPSE
    iso = assoc_iso(f, g, h)
    left = pushout_product_map(pushout_product_map(f, g).map, h).map
    right = pushout_product_map(f, pushout_product_map(g, h).map).map
    assert iso.forward.left == left and iso.forward.right == right
    report = assoc_comm_check(f, g, h)
    assert report.ok and all(r.status == "pass" for r in report.records)


def test_assoc_comm_with_empty_legs():
    e = EMPTY_TO_POINT
    report = assoc_comm_check(e, e, e)
    assert report.ok


def test_arrow_iso_rejects_non_inverse_pairs():
    sq = identity_square(SWAP)
    bad = Square(SWAP, SWAP, SWAP, SWAP)  # swap conjugation, not an inverse pair
    with pytest.raises(ValueError):
        ArrowIso(sq, bad)


def test_enumerate_fillers_matches_brute_force():
    for i in all_maps(2):
        for f in all_maps(2):
            for sq in enumerate_squares(i, f):
                got = enumerate_fillers(sq)
                assert [df.map.table for df in got] == [
                    d.table for d in brute_fillers(sq)
                ]


def test_filler_for_bijective_left_leg_is_forced():
    problems = enumerate_squares(SWAP, COLLAPSE)
    assert problems
    for sq in problems:
        d = compose(sq.top, invert(SWAP))
        assert [df.map for df in enumerate_fillers(sq)] == [d]
        assert is_filler(sq, d)


def test_filler_for_bijective_right_leg_is_forced():
    problems = enumerate_squares(COLLAPSE, SWAP)
    for sq in problems:
        d = compose(invert(SWAP), sq.bottom)
        assert [df.map for df in enumerate_fillers(sq)] == [d]


def test_frozen_two_filler_counterexample():
    # the unique square between these maps admits exactly two diagonals
    i, f = EMPTY_TO_POINT, COLLAPSE
    squares = enumerate_squares(i, f)
    assert len(squares) == 1
    assert len(enumerate_fillers(squares[0])) == 2
    assert not is_orthogonal(i, f)
    assert not is_orthogonal(i, f, cross_check=True)


def test_constant_legs_filler_count():
    i = FinMap(FinSet(1), FinSet(2), (0,))
    f = FinMap(FinSet(2), FinSet(2), (0, 0))
    top = FinMap(FinSet(1), FinSet(2), (0,))
    bottom = FinMap(FinSet(2), FinSet(2), (0, 0))
    sq = Square(i, f, top, bottom)
    # d(0) is pinned by the top triangle, d(1) is free
    assert len(enumerate_fillers(sq)) == 2


def test_orthogonality_cross_check_agrees_everywhere():
    maps = all_maps(2)
    seen_orthogonal = 0
    for i in maps:
        for f in maps:
            assert is_orthogonal(i, f) == is_orthogonal(i, f, cross_check=True)
            seen_orthogonal += is_orthogonal(i, f)
    assert seen_orthogonal > 0


def test_bijections_are_orthogonal_both_ways():
    bijections = [m for m in all_maps(2) if is_bijection(m)]
    assert bijections
    for b in bijections:
        for f in all_maps(2):
            assert is_orthogonal(b, f)
            assert is_orthogonal(f, b)


def test_unique_filler_agrees_with_enumeration():
    i, f = POINT_TO_PAIR, SWAP
    assert is_orthogonal(i, f)
    phm = pullback_hom_map(i, f)
    for sq in enumerate_squares(i, f):
        d = unique_filler(phm, sq)
        assert [df.map for df in enumerate_fillers(sq)] == [d]


def test_enumerate_lifting_problems_equals_square_enumeration():
    for i in all_maps(2):
        for f in all_maps(2):
            fast = enumerate_lifting_problems(i, f)
            slow = enumerate_squares(i, f)
            assert fast == slow


def test_diagonal_filler_validates():
    sq = enumerate_squares(POINT_TO_PAIR, SWAP)[0]
    d = enumerate_fillers(sq)[0].map
    df = DiagonalFiller(sq, d)
    assert df.map == d
    wrong = FinMap(FinSet(2), FinSet(2), tuple((v + 1) % 2 for v in d.table))
    with pytest.raises(ValueError):
        DiagonalFiller(sq, wrong)


def test_closure_derivation_for_bijective_first_factor():
    for j in (POINT_TO_PAIR, COLLAPSE, EMPTY_TO_POINT):
        records = orth_closure_pushout_product(SWAP, j, COLLAPSE)
        assert all(r.status == "pass" for r in records)
        names = [r.name for r in records]
        assert names == [
            "precondition-orthogonal",
            "commutativity-iso",
            "hom-action-iso",
            "two-variable-iso",
            "bijection-transport",
            "conclusion-bijective",
        ]


def test_closure_derivation_precondition_error():
    with pytest.raises(OrthogonalityPreconditionError):
        orth_closure_pushout_product(EMPTY_TO_POINT, POINT_TO_PAIR, COLLAPSE)


def test_hom_square_action_of_identity_is_identity():
    phm = pullback_hom_map(POINT_TO_PAIR, SWAP)
    action = pullback_hom_square_action(identity_square(POINT_TO_PAIR), SWAP)
    assert action.top == identity(phm.map.dom)
    assert action.bottom == identity(phm.map.cod)


def test_fill_pushout_product_problem_matches_enumeration():
    ppm = pushout_product_map(POINT_TO_PAIR, SWAP)
    target = FinMap(FinSet(2), FinSet(2), (0, 0))
    phm_inner = pullback_hom_map(SWAP, target)
    assert is_bijection(phm_inner.map)
    problems = enumerate_lifting_problems(ppm.map, target)
    assert problems
    for sq in problems:
        d = fill_pushout_product_problem(ppm, target, sq, phm_inner)
        assert brute_fillers(sq) == [d]


def _bijection_retract_data() -> RetractData:
    # the identity on a point as a retract of the swap
    j = identity(FinSet(1))
    s_top = FinMap(FinSet(1), FinSet(2), (0,))
    s_bottom = compose(SWAP, s_top)
    section = Square(j, SWAP, s_top, s_bottom)
    r_leg = FinMap(FinSet(2), FinSet(1), (0, 0))
    retraction = Square(SWAP, j, r_leg, r_leg)
    return RetractData(section, retraction)


def test_retract_data_validation():
    rd = _bijection_retract_data()
    validate_retract_data(rd)
    sq = identity_square(SWAP)
    validate_retract_data(RetractData(sq, sq))


def test_retract_data_reports_failing_component():
    ident = identity(FinSet(2))
    section = identity_square(ident)
    broken = Square(ident, ident, SWAP, SWAP)
    with pytest.raises(RetractDataError) as exc:
        validate_retract_data(RetractData(section, broken))
    assert exc.value.component == "dom"


def test_retract_data_shape_mismatch():
    rd = _bijection_retract_data()
    other = identity_square(COLLAPSE)
    with pytest.raises(RetractDataError) as exc:
        validate_retract_data(RetractData(rd.section, other))
    assert exc.value.component == "shape"


def test_identity_retract_transport_is_the_identity_on_fillers():
    i, f = POINT_TO_PAIR, SWAP
    rd = RetractData(identity_square(i), identity_square(i))
    phm = pullback_hom_map(i, f)
    for sq in enumerate_squares(i, f):
        filler, records = orth_closure_retract(rd, f, sq)
        assert filler.map == unique_filler(phm, sq)
        assert all(r.status == "pass" for r in records)


def test_bijection_retract_transport_matches_forced_filler():
    rd = _bijection_retract_data()
    f = COLLAPSE
    for sq in enumerate_squares(identity(FinSet(1)), f):
        filler, records = orth_closure_retract(rd, f, sq)
        assert filler.map == sq.top  # the only filler over an identity leg
        assert all(r.status == "pass" for r in records)


def test_retract_transport_requires_ambient_orthogonality():
    rd = RetractData(
        identity_square(EMPTY_TO_POINT), identity_square(EMPTY_TO_POINT)
    )
    sq = enumerate_squares(EMPTY_TO_POINT, COLLAPSE)[0]
    with pytest.raises(OrthogonalityPreconditionError):
        orth_closure_retract(rd, COLLAPSE, sq)


def test_pullback_hom_preserves_retract_data():
    rd = _bijection_retract_data()
    for target in (SWAP, COLLAPSE, FinMap(FinSet(2), FinSet(3), (0, 2))):
        moved = pullback_hom_retract(rd, target)
        validate_retract_data(moved)
