from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Any, Dict, Iterator, List, NamedTuple, Sequence, Tuple

from src.logging import get_logger
from src.semigroup import check_pair

logger = get_logger(__name__)


class DiagramError(Exception):
    pass


class Box(NamedTuple):
    """A cell (x, y): column x counted from the left, row y from the bottom, both from 1."""

    x: int
    y: int

    def __str__(self) -> str:
        return f"({self.x},{self.y})"


@dataclass(frozen=True)
class YoungDiagram:
    columns: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        columns = tuple(self.columns)
        object.__setattr__(self, "columns", columns)
        for index, height in enumerate(columns):
            if height < 1:
                raise DiagramError(
                    f"column {index + 1} has height {height}; stored columns must be positive"
                )
            if index > 0 and height > columns[index - 1]:
                raise DiagramError(
                    f"columns must be weakly decreasing, got {list(columns)}"
                )

    @classmethod
    def from_heights(cls, heights: Sequence[int]) -> "YoungDiagram":
        """Build from a height sequence that may carry trailing zero columns."""
        trimmed = list(heights)
        while trimmed and trimmed[-1] == 0:
            trimmed.pop()
        return cls(tuple(trimmed))

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "YoungDiagram":
        return cls(tuple(data["columns"]))

    def to_dict(self) -> Dict[str, Any]:
        return {"columns": list(self.columns)}

    def __str__(self) -> str:
        if not self.columns:
            return "∅"
        return "(" + ",".join(str(height) for height in self.columns) + ")"

    def __len__(self) -> int:
        return self.area

    def __contains__(self, box: object) -> bool:
        if not isinstance(box, tuple) or len(box) != 2:
            return False
        x, y = box
        return 1 <= x <= len(self.columns) and 1 <= y <= self.columns[x - 1]

    @property
    def area(self) -> int:
        return sum(self.columns)

    @property
    def width(self) -> int:
        return len(self.columns)

    def height(self, x: int) -> int:
        if 1 <= x <= len(self.columns):
            return self.columns[x - 1]
        return 0

    @cached_property
    def rows(self) -> Tuple[int, ...]:
        if not self.columns:
            return ()
        return tuple(
            sum(1 for height in self.columns if height >= y)
            for y in range(1, self.columns[0] + 1)
        )

    def row_length(self, y: int) -> int:
        if 1 <= y <= len(self.rows):
            return self.rows[y - 1]
        return 0

    def boxes(self) -> Iterator[Box]:
        for x, height in enumerate(self.columns, start=1):
            for y in range(1, height + 1):
                yield Box(x, y)

    def fits_in(self, other: "YoungDiagram") -> bool:
        if self.width > other.width:
            return False
        return all(h <= other.columns[i] for i, h in enumerate(self.columns))

    def padded(self, width: int) -> Tuple[int, ...]:
        if width < self.width:
            raise DiagramError(f"diagram {self} has more than {width} columns")
        return self.columns + (0,) * (width - self.width)


EMPTY = YoungDiagram(())


def _require_inside(diagram: YoungDiagram, box: Box) -> None:
    if box not in diagram:
        raise DiagramError(f"box {Box(*box)} is not in diagram {diagram}")


def _require_outside(diagram: YoungDiagram, box: Box) -> None:
    if box[0] < 1 or box[1] < 1:
        raise DiagramError(f"box {Box(*box)} has a nonpositive coordinate")
    if box in diagram:
        raise DiagramError(f"box {Box(*box)} belongs to diagram {diagram}")


def arm(diagram: YoungDiagram, box: Box) -> int:
    _require_inside(diagram, box)
    return diagram.row_length(box[1]) - box[0]


def leg(diagram: YoungDiagram, box: Box) -> int:
    _require_inside(diagram, box)
    return diagram.height(box[0]) - box[1]


def ext_arm(diagram: YoungDiagram, box: Box) -> int:
    """Empty boxes strictly left of a box outside the diagram, up to the diagram or column 1."""
    _require_outside(diagram, box)
    return box[0] - 1 - diagram.row_length(box[1])


def ext_leg(diagram: YoungDiagram, box: Box) -> int:
    _require_outside(diagram, box)
    return box[1] - 1 - diagram.height(box[0])


def h_plus_boxes(diagram: YoungDiagram, num: int, den: int) -> List[Box]:
    """Boxes with a/(l+1) <= num/den < (a+1)/l, compared in integers."""
    if den == 0:
        raise DiagramError("slope denominator must be nonzero")
    if den < 0 or num < 0:
        raise DiagramError(f"slope {num}/{den} must be nonnegative with den >= 1")
    coprime = gcd(num, den) == 1
    counted: List[Box] = []
    for box in diagram.boxes():
        a = diagram.row_length(box.y) - box.x
        lg = diagram.height(box.x) - box.y
        if coprime and a < num and lg < den:
            # gcd(num, den) = 1 with a < num, l < den rules out both boundary cases
            assert a * den != num * (lg + 1), f"boundary attained at {box}"
            assert (a + 1) * den != num * lg, f"boundary attained at {box}"
        if a * den <= num * (lg + 1) and lg * num < (a + 1) * den:
            counted.append(box)
    return counted


def h_plus(diagram: YoungDiagram, num: int, den: int) -> int:
    return len(h_plus_boxes(diagram, num, den))


def dinv(diagram: YoungDiagram, n: int) -> int:
    if n < 1:
        raise DiagramError(f"dinv needs n >= 1, got {n}")
    return h_plus(diagram, n, n + 1)


@dataclass(frozen=True)
class Staircase:
    """Boxes of the p x q rectangle strictly below the anti-diagonal."""

    p: int
    q: int
    heights: Tuple[int, ...]

    @property
    def area(self) -> int:
        return sum(self.heights)

    @cached_property
    def diagram(self) -> YoungDiagram:
        return YoungDiagram.from_heights(self.heights)

    def __contains__(self, box: object) -> bool:
        if not isinstance(box, tuple) or len(box) != 2:
            return False
        x, y = box
        return 1 <= x <= self.p and 1 <= y <= self.heights[x - 1]

    def contains_diagram(self, diagram: YoungDiagram) -> bool:
        return diagram.fits_in(self.diagram)

    def boxes(self) -> Iterator[Box]:
        return self.diagram.boxes()


def staircase(p: int, q: int) -> Staircase:
    check_pair(p, q)
    # q - ceil(kq/p) written with floor division
    heights = tuple(q + (-k * q // p) for k in range(1, p + 1))
    return Staircase(p=p, q=q, heights=heights)


def label(p: int, q: int, box: Box) -> int:
    x, y = box
    if not (1 <= x <= p and 1 <= y <= q):
        raise DiagramError(f"box {Box(x, y)} is outside the {p}x{q} rectangle")
    return p * q - q * x - p * y


def rectangle_boxes(p: int, q: int) -> Iterator[Box]:
    for x in range(1, p + 1):
        for y in range(1, q + 1):
            yield Box(x, y)


def _subcolumns(
    bound: Tuple[int, ...], index: int, cap: int
) -> Iterator[Tuple[int, ...]]:
    if index < len(bound):
        for height in range(min(cap, bound[index]), 0, -1):
            for rest in _subcolumns(bound, index + 1, height):
                yield (height,) + rest
    yield ()


def enumerate_subdiagrams(bound: YoungDiagram) -> Iterator[YoungDiagram]:
    """Every diagram inside ``bound``, in lexicographically decreasing column order.

    The empty diagram comes last.
    """
    cap = bound.columns[0] if bound.columns else 0
    for columns in _subcolumns(bound.columns, 0, cap):
        yield YoungDiagram(columns)


def transpose(diagram: YoungDiagram) -> YoungDiagram:
    return YoungDiagram(diagram.rows)
