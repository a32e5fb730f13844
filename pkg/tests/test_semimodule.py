import pytest
from hypothesis import given

from src.diagram import EMPTY, YoungDiagram, h_plus, staircase
from src.semigroup import make_semigroup
from src.semimodule import (
    SemiModule,
    SemiModuleError,
    chain_bound,
    dimension,
    dimension_via_pairs,
    enumerate_semimodules,
    from_diagram,
    g,
    g_open_closed,
    g_values,
    gaps_count,
    generator_chains,
    p_basis,
    p_basis_from_diagram,
    q_cogenerators,
    q_cogenerators_from_diagram,
    to_diagram,
    validate,
)
from tests.strategies import staircase_diagrams

FIGURE_COGAPS = (8, 11, 13, 16, 18, 23)


@pytest.fixture
def worked_module():
    return validate(make_semigroup(5, 7), FIGURE_COGAPS)


def test_worked_example(worked_module):
    assert worked_module.missing() == (1, 2, 3, 4, 6, 9)
    assert to_diagram(worked_module) == YoungDiagram((4, 2))
    assert p_basis(worked_module) == (0, 7, 8, 11, 14)
    assert q_cogenerators(worked_module) == (-7, -2, 1, 3, 4, 6, 9)
    assert g(worked_module, 0) == 5
    assert g(worked_module, 11) == 0
    assert g_values(worked_module) == (5, 1, 1, 0, 0)
    assert dimension(worked_module) == 7
    assert dimension_via_pairs(worked_module) == 7
    assert gaps_count(worked_module) == 6
    assert 7 == 12 - h_plus(YoungDiagram((4, 2)), 5, 7)


def test_validate_accepts_semigroup_itself():
    module = validate(make_semigroup(3, 4), [])
    assert module.cogaps == ()
    assert to_diagram(module) == EMPTY


def test_validate_reports_closure_failure():
    with pytest.raises(SemiModuleError, match="2\\+3=5"):
        validate(make_semigroup(3, 4), [2])


def test_validate_reports_non_gap():
    with pytest.raises(SemiModuleError, match="4 is not a gap"):
        validate(make_semigroup(3, 4), [4])


def test_full_module():
    full = validate(make_semigroup(3, 4), [1, 2, 5])
    assert to_diagram(full) == YoungDiagram((2, 1))
    assert p_basis(full) == (0, 1, 2)
    assert q_cogenerators(full) == (-4, -3, -2, -1)
    assert dimension(full) == dimension_via_pairs(full) == 0
    assert gaps_count(full) == 0
    assert g(full, 7) == 0


def test_semigroup_module_over_3_4():
    module = validate(make_semigroup(3, 4), [])
    assert p_basis(module) == (0, 4, 8)
    assert q_cogenerators(module) == (-4, -1, 2, 5)
    assert dimension(module) == dimension_via_pairs(module) == 3
    assert gaps_count(module) == 3


def test_from_diagram_rejects_diagram_outside_staircase():
    with pytest.raises(SemiModuleError, match="does not fit"):
        from_diagram(make_semigroup(3, 4), YoungDiagram((3,)))


@pytest.mark.parametrize("p, q, count", [(3, 4, 5), (2, 3, 2), (5, 7, 66)])
def test_enumerate_semimodules_count(p, q, count):
    modules = list(enumerate_semimodules(make_semigroup(p, q)))
    assert len(modules) == count
    assert len({m.cogaps for m in modules}) == count


def test_module_dict_round_trip(worked_module):
    assert SemiModule.from_dict(worked_module.to_dict()) == worked_module


def test_generator_chains_example():
    module = validate(make_semigroup(5, 8), make_semigroup(5, 8).gaps)
    assert p_basis(module)[:3] == (0, 1, 2)
    assert generator_chains(module, 3) == [(1,), (2, 0)]
    assert chain_bound(module, 3) == 2
    with pytest.raises(SemiModuleError):
        generator_chains(module, 5)


@given(staircase_diagrams(16))
def test_diagram_round_trip(case):
    p, q, diagram = case
    module = from_diagram(make_semigroup(p, q), diagram)
    assert to_diagram(module) == diagram
    assert len(module.cogaps) == diagram.area


@given(staircase_diagrams(16))
def test_three_dimension_routes_agree(case):
    p, q, diagram = case
    module = from_diagram(make_semigroup(p, q), diagram)
    expected = (p - 1) * (q - 1) // 2 - h_plus(diagram, p, q)
    assert dimension(module) == dimension_via_pairs(module) == expected


@given(staircase_diagrams(16))
def test_g_counts_cogenerators(case):
    p, q, diagram = case
    module = from_diagram(make_semigroup(p, q), diagram)
    cogenerators = q_cogenerators(module)
    assert len(cogenerators) == q
    for a in p_basis(module):
        assert g(module, a) == sum(1 for b in cogenerators if b >= a)
        assert g(module, a) == g_open_closed(module, a)


@given(staircase_diagrams(16))
def test_generators_read_off_the_diagram(case):
    p, q, diagram = case
    module = from_diagram(make_semigroup(p, q), diagram)
    assert p_basis_from_diagram(diagram, p, q) == p_basis(module)
    assert q_cogenerators_from_diagram(diagram, p, q) == q_cogenerators(module)


@given(staircase_diagrams(16))
def test_dimension_is_symmetric_under_swap(case):
    p, q, diagram = case
    module = from_diagram(make_semigroup(p, q), diagram)
    assert dimension(module.swapped()) == dimension(module)


@given(staircase_diagrams(14))
def test_chain_bound_sits_between_g_and_staircase(case):
    p, q, diagram = case
    module = from_diagram(make_semigroup(p, q), diagram)
    basis = p_basis(module)
    heights = staircase(p, q).heights
    for k in range(1, p):
        assert g(module, basis[k - 1]) <= chain_bound(module, k) <= heights[k - 1]
