import pytest

from src.catalog import Catalog
from src.diagram import YoungDiagram
from src.gmap import G, NotInImageError
from src.semimodule import to_diagram


@pytest.fixture(autouse=True)
def fresh_catalog():
    Catalog.clear()
    yield
    Catalog.clear()


def test_semimodules_are_cached():
    first = Catalog.semimodules(3, 4)
    assert Catalog.semimodules(3, 4) is first
    assert len(first) == 5
    assert Catalog.semigroup(3, 4) is Catalog.semigroup(3, 4)


def test_clear_drops_entries():
    Catalog.permutation(2, 5)
    assert Catalog.cached_pairs() == [(2, 5)]
    Catalog.clear()
    assert Catalog.cached_pairs() == []


def test_cached_pairs_order():
    Catalog.semigroup(4, 5)
    Catalog.semigroup(2, 3)
    Catalog.permutation(3, 4)
    assert Catalog.cached_pairs() == [(2, 3), (3, 4), (4, 5)]


def test_inverse_uses_the_cached_permutation():
    for module in Catalog.semimodules(4, 5):
        diagram = to_diagram(module)
        assert Catalog.inverse(G(diagram, 4, 5), 4, 5) == diagram


def test_inverse_rejects_diagrams_outside_the_image():
    with pytest.raises(NotInImageError):
        Catalog.inverse(YoungDiagram((3,)), 3, 4)
