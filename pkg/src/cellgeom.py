from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterator, Tuple

from src.diagram import (
    Box,
    YoungDiagram,
    arm,
    ext_arm,
    ext_leg,
    h_plus,
    h_plus_boxes,
    label,
    leg,
    rectangle_boxes,
    staircase,
)
from src.logging import get_logger
from src.semigroup import make_semigroup
from src.semimodule import dimension, dimension_via_pairs, from_diagram

logger = get_logger(__name__)

PARTS = (1, 2, 3)


class CellGeometryError(Exception):
    pass


@dataclass
class CellCertificate:
    p: int
    q: int
    diagram: YoungDiagram
    u_boxes: Dict[Box, int] = field(default_factory=dict)
    v_boxes: Dict[Box, int] = field(default_factory=dict)
    pairing: Dict[Box, Box] = field(default_factory=dict)

    def part(self, boxes: Dict[Box, int], tag: int) -> Tuple[Box, ...]:
        return tuple(sorted(box for box, part in boxes.items() if part == tag))

    def part_sizes(self, boxes: Dict[Box, int]) -> Tuple[int, int, int]:
        sizes = tuple(len(self.part(boxes, tag)) for tag in PARTS)
        return sizes  # type: ignore[return-value]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "diagram": list(self.diagram.columns),
            "U": {
                str(tag): [list(box) for box in self.part(self.u_boxes, tag)]
                for tag in PARTS
            },
            "V": {
                str(tag): [list(box) for box in self.part(self.v_boxes, tag)]
                for tag in PARTS
            },
            "pairing": [
                [list(source), list(target)]
                for source, target in sorted(self.pairing.items())
            ],
        }


def _require_in_staircase(diagram: YoungDiagram, p: int, q: int) -> None:
    if not staircase(p, q).contains_diagram(diagram):
        raise CellGeometryError(f"diagram {diagram} does not fit in R+ for ({p},{q})")


def _require_in_rectangle(p: int, q: int, box: Box) -> None:
    if not (1 <= box[0] <= p and 1 <= box[1] <= q):
        raise CellGeometryError(f"box {Box(*box)} is outside the {p}x{q} rectangle")


def _arm_leg(diagram: YoungDiagram, box: Box) -> Tuple[int, int]:
    if box in diagram:
        return arm(diagram, box), leg(diagram, box)
    return ext_arm(diagram, box), ext_leg(diagram, box)


def box_couple(diagram: YoungDiagram, p: int, q: int, box: Box) -> Tuple[int, int]:
    """(p-generator of the box's column, q-cogenerator of the box's row)."""
    _require_in_rectangle(p, q, box)
    f = label(p, q, box)
    a, lg = _arm_leg(diagram, box)
    if box in diagram:
        return f - lg * p, f - (a + 1) * q
    return f + (lg + 1) * p, f + a * q


def h_set(diagram: YoungDiagram, p: int, q: int) -> FrozenSet[Box]:
    _require_in_staircase(diagram, p, q)
    return frozenset(h_plus_boxes(diagram, p, q))


def v_set(diagram: YoungDiagram, p: int, q: int) -> Dict[Box, int]:
    hs = h_set(diagram, p, q)
    tagged: Dict[Box, int] = {}
    for box in staircase(p, q).boxes():
        if box not in diagram:
            tagged[box] = 1
            continue
        a, lg = arm(diagram, box), leg(diagram, box)
        in_v2 = lg > 0 and (a + 1) * q <= lg * p
        in_v3 = a * q > (lg + 1) * p
        if (box in hs) + in_v2 + in_v3 != 1:
            raise CellGeometryError(f"box {box} is not in exactly one of H, V2, V3")
        if in_v2:
            tagged[box] = 2
        elif in_v3:
            tagged[box] = 3
    return tagged


def u_set(diagram: YoungDiagram, p: int, q: int) -> Dict[Box, int]:
    """U(D) from the arm/leg inequalities, tagged by part."""
    _require_in_staircase(diagram, p, q)
    tagged: Dict[Box, int] = {}
    for box in rectangle_boxes(p, q):
        a, lg = _arm_leg(diagram, box)
        if box in diagram:
            if (a + 1) * q <= lg * p:
                tagged[box] = 2
        elif a * q >= box.y * p:
            tagged[box] = 1
        elif (lg + 1) * p < a * q:
            tagged[box] = 3
    return tagged


def u_set_by_pairs(diagram: YoungDiagram, p: int, q: int) -> FrozenSet[Box]:
    """U(D) as the boxes whose generator/cogenerator couple satisfies a_i < b_j."""
    _require_in_staircase(diagram, p, q)
    selected = set()
    for box in rectangle_boxes(p, q):
        generator, cogenerator = box_couple(diagram, p, q, box)
        if generator < cogenerator:
            selected.add(box)
    return frozenset(selected)


def phi1(diagram: YoungDiagram, p: int, q: int, box: Box) -> Box:
    """Reverse the order of the boxes of R∖D within the row of ``box``."""
    _require_in_rectangle(p, q, box)
    if box in diagram:
        raise CellGeometryError(f"phi1 is defined on R∖D, but {Box(*box)} is in D")
    return Box(p - ext_arm(diagram, box), box[1])


def _is_u3(diagram: YoungDiagram, p: int, q: int, box: Box) -> bool:
    if box in diagram:
        return False
    a, lg = ext_arm(diagram, box), ext_leg(diagram, box)
    return (lg + 1) * p < a * q < box[1] * p


def _is_v3(diagram: YoungDiagram, p: int, q: int, box: Box) -> bool:
    if box not in diagram:
        return False
    return arm(diagram, box) * q > (leg(diagram, box) + 1) * p


def _drop(a: int, p: int, q: int, box: Box) -> int:
    m = a * q // p
    if m * p == a * q:
        raise CellGeometryError(f"a(c)q/p is an integer at {box}")
    return m


def phi3(diagram: YoungDiagram, p: int, q: int, box: Box) -> Box:
    _require_in_rectangle(p, q, box)
    if box in diagram:
        raise CellGeometryError(f"phi3 needs a box of U3, but {Box(*box)} is in D")
    if not _is_u3(diagram, p, q, box):
        raise CellGeometryError(f"phi3 needs a box of U3, {Box(*box)} is not in U3")
    x, y = box
    a = ext_arm(diagram, box)
    y_new = y - _drop(a, p, q, box)
    if Box(x, y_new) not in diagram:
        raise CellGeometryError(f"phi3 drop from {Box(x, y)} leaves D at row {y_new}")
    x_new = x + arm(diagram, Box(x, y_new)) - a
    return Box(x_new, y_new)


def phi3_inverse(diagram: YoungDiagram, p: int, q: int, box: Box) -> Box:
    _require_in_rectangle(p, q, box)
    if box not in diagram:
        raise CellGeometryError(f"phi3_inverse needs a box of V3, {Box(*box)} is not in D")
    if not _is_v3(diagram, p, q, box):
        raise CellGeometryError(f"phi3_inverse needs a box of V3, {Box(*box)} is not in V3")
    a = arm(diagram, box)
    y = box[1] + _drop(a, p, q, box)
    x = diagram.row_length(y) + 1 + a
    if not (1 <= x <= p and 1 <= y <= q):
        raise CellGeometryError(f"phi3_inverse of {Box(*box)} leaves the rectangle")
    return Box(x, y)


def _outside_boxes(diagram: YoungDiagram, p: int, q: int) -> Iterator[Box]:
    return (box for box in rectangle_boxes(p, q) if box not in diagram)


def certify(diagram: YoungDiagram, p: int, q: int) -> CellCertificate:
    u_boxes = u_set(diagram, p, q)
    v_boxes = v_set(diagram, p, q)
    certificate = CellCertificate(p=p, q=q, diagram=diagram, u_boxes=u_boxes, v_boxes=v_boxes)

    by_pairs = u_set_by_pairs(diagram, p, q)
    if by_pairs != frozenset(u_boxes):
        odd = sorted(by_pairs.symmetric_difference(u_boxes))
        raise CellGeometryError(f"arm/leg and pair readings of U differ at {odd[0]}")

    for box in _outside_boxes(diagram, p, q):
        if phi1(diagram, p, q, phi1(diagram, p, q, box)) != box:
            raise CellGeometryError(f"phi1 is not an involution at {box}")

    for box, part in sorted(u_boxes.items()):
        if part == 1:
            image = phi1(diagram, p, q, box)
        elif part == 2:
            image = box
        else:
            image = phi3(diagram, p, q, box)
            if phi3_inverse(diagram, p, q, image) != box:
                raise CellGeometryError(f"phi3_inverse does not undo phi3 at {box}")
        if v_boxes.get(image) != part:
            raise CellGeometryError(
                f"U{part} box {box} maps to {image}, which is not in V{part}"
            )
        certificate.pairing[box] = image

    if len(set(certificate.pairing.values())) != len(u_boxes) or len(u_boxes) != len(v_boxes):
        raise CellGeometryError(
            f"pairing is not a bijection: |U|={len(u_boxes)}, |V|={len(v_boxes)}"
        )

    module = from_diagram(make_semigroup(p, q), diagram)
    dim = dimension(module)
    if len(u_boxes) != dim or dimension_via_pairs(module) != dim:
        raise CellGeometryError(f"|U|={len(u_boxes)} but dim={dim} for diagram {diagram}")
    delta = (p - 1) * (q - 1) // 2
    if len(v_boxes) != delta - h_plus(diagram, p, q):
        raise CellGeometryError(f"|V|={len(v_boxes)} differs from delta - h+ for {diagram}")

    logger.debug("Certified %s over (%s,%s): |U|=|V|=%s", diagram, p, q, dim)
    return certificate
