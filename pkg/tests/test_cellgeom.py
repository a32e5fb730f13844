import json

import pytest
from hypothesis import given, settings

from src.cellgeom import (
    CellGeometryError,
    box_couple,
    certify,
    h_set,
    phi1,
    phi3,
    phi3_inverse,
    u_set,
    u_set_by_pairs,
    v_set,
)
from src.diagram import EMPTY, Box, YoungDiagram, staircase
from src.semigroup import make_semigroup
from src.semimodule import from_diagram, p_basis, q_cogenerators
from tests.strategies import staircase_diagrams

SQUARE = YoungDiagram((3, 3))


def test_h_set_examples():
    assert h_set(EMPTY, 3, 4) == frozenset()
    assert h_set(SQUARE, 5, 6) == {Box(1, 1), Box(1, 2), Box(2, 2), Box(2, 3)}
    assert len(h_set(YoungDiagram((4, 2)), 5, 7)) == 5


def test_v_set_of_empty_diagram_is_the_staircase():
    tagged = v_set(EMPTY, 3, 4)
    assert set(tagged) == set(staircase(3, 4).boxes())
    assert set(tagged.values()) == {1}


def test_square_in_5_6():
    certificate = certify(SQUARE, 5, 6)
    assert len(certificate.u_boxes) == len(certificate.v_boxes) == 6
    assert certificate.part_sizes(certificate.u_boxes) == (4, 1, 1)
    assert certificate.part_sizes(certificate.v_boxes) == (4, 1, 1)
    assert certificate.part(certificate.u_boxes, 2) == (Box(2, 1),)
    assert certificate.part(certificate.u_boxes, 3) == (Box(2, 4),)
    assert certificate.part(certificate.v_boxes, 3) == (Box(1, 3),)
    assert certificate.pairing[Box(2, 4)] == Box(1, 3)
    assert certificate.pairing[Box(2, 1)] == Box(2, 1)


def test_phi3_round_trip_on_square():
    assert phi3(SQUARE, 5, 6, Box(2, 4)) == Box(1, 3)
    assert phi3_inverse(SQUARE, 5, 6, Box(1, 3)) == Box(2, 4)


def test_phi3_rejects_boxes_outside_u3():
    with pytest.raises(CellGeometryError, match="is in D"):
        phi3(SQUARE, 5, 6, Box(1, 1))
    with pytest.raises(CellGeometryError, match="not in U3"):
        phi3(SQUARE, 5, 6, Box(5, 6))
    with pytest.raises(CellGeometryError, match="not in V3"):
        phi3_inverse(SQUARE, 5, 6, Box(1, 1))


def test_phi1():
    assert phi1(EMPTY, 3, 4, Box(1, 1)) == Box(3, 1)
    assert phi1(EMPTY, 3, 4, Box(3, 1)) == Box(1, 1)
    assert phi1(EMPTY, 3, 4, Box(2, 1)) == Box(2, 1)
    with pytest.raises(CellGeometryError):
        phi1(SQUARE, 5, 6, Box(1, 1))


def test_semigroup_diagram_certificate():
    certificate = certify(EMPTY, 3, 4)
    assert len(certificate.u_boxes) == len(certificate.v_boxes) == 3


@pytest.mark.parametrize("p, q", [(3, 4), (5, 7), (5, 6), (2, 9)])
def test_full_staircase_has_empty_u(p, q):
    stairs = staircase(p, q).diagram
    assert u_set(stairs, p, q) == {}
    certificate = certify(stairs, p, q)
    assert certificate.u_boxes == certificate.v_boxes == {}


def test_box_couple_reads_generators():
    module = from_diagram(make_semigroup(3, 4), EMPTY)
    assert box_couple(EMPTY, 3, 4, Box(1, 1)) == (8, 5)
    basis, cogenerators = p_basis(module), q_cogenerators(module)
    for x in range(1, 4):
        for y in range(1, 5):
            generator, cogenerator = box_couple(EMPTY, 3, 4, Box(x, y))
            assert generator in basis
            assert cogenerator in cogenerators


def test_certify_rejects_diagram_outside_staircase():
    with pytest.raises(CellGeometryError, match="does not fit"):
        certify(YoungDiagram((3,)), 3, 4)


def test_certificate_json_shape():
    payload = certify(SQUARE, 5, 6).to_dict()
    assert json.loads(json.dumps(payload)) == payload
    assert payload["diagram"] == [3, 3]
    assert payload["U"]["3"] == [[2, 4]]
    assert [[2, 4], [1, 3]] in payload["pairing"]
    assert len(payload["pairing"]) == 6


@given(staircase_diagrams(14))
@settings(max_examples=200)
def test_certify_succeeds(case):
    p, q, diagram = case
    certificate = certify(diagram, p, q)
    assert sorted(certificate.pairing.values()) == sorted(certificate.v_boxes)


@given(staircase_diagrams(14))
def test_u_readings_agree(case):
    p, q, diagram = case
    assert u_set_by_pairs(diagram, p, q) == frozenset(u_set(diagram, p, q))


@given(staircase_diagrams(14))
def test_phi1_is_an_involution(case):
    p, q, diagram = case
    for x in range(1, p + 1):
        for y in range(1, q + 1):
            if Box(x, y) in diagram:
                continue
            assert phi1(diagram, p, q, phi1(diagram, p, q, Box(x, y))) == Box(x, y)
