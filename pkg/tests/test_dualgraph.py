from fractions import Fraction

import pytest
from hypothesis import given

from conductorlab.dualgraph import (
    Component,
    InvalidGraph,
    NegativeUnipotentRank,
    SncdGraph,
    UnknownType,
    blow_up_node,
    edge_node_terms,
    euler_after_resolution,
    invariants,
    kodaira_catalog,
    validate,
)
from conductorlab.diagnostics import codes

from conftest import make_cycle, sncd_graphs


def star_iv():
    return kodaira_catalog("IV")


def test_validate_accepts_standard_star():
    assert validate(star_iv()) == []


def test_validate_accepts_good_reduction():
    graph = SncdGraph((Component("c", 1, 2),))
    assert validate(graph) == []
    inv = invariants(graph)
    assert (inv.genus, inv.abelian_rank, inv.toric_rank, inv.unipotent_rank) == (2, 2, 0, 0)
    assert inv.art_tame == 0


def test_validate_flags_disconnected():
    graph = SncdGraph((Component("a", 1, 0), Component("b", 1, 0)))
    assert "NotConnected" in codes(validate(graph))


def test_validate_flags_loop():
    graph = SncdGraph((Component("a", 1, 1),), (("a", "a"),))
    assert "LoopEdge" in codes(validate(graph))


def test_validate_flags_nonintegral_self_intersection():
    graph = SncdGraph((Component("a", 2, 0), Component("b", 1, 0)), (("a", "b"),))
    assert "NonIntegralSelfIntersection" in codes(validate(graph))


def test_validate_flags_gcd():
    graph = SncdGraph(
        (Component("a", 2, 0), Component("b", 2, 0)),
        (("a", "b"), ("a", "b")),
        index_one=True,
    )
    assert "MultiplicityGcdNotOne" in codes(validate(graph))


def test_unknown_edge_endpoint_is_structural_error():
    with pytest.raises(ValueError):
        SncdGraph((Component("a", 1, 0),), (("a", "zz"),))


def test_invariants_type_iv():
    inv = invariants(star_iv())
    assert inv.num_nodes == 3
    assert inv.virtual_nodes == Fraction(11, 3)
    assert inv.genus == 1
    assert inv.abelian_rank == 0
    assert inv.toric_rank == 0
    assert inv.unipotent_rank == 1
    assert inv.art_tame == -5
    assert inv.self_intersections == {"c": -1, "a0.0": -3, "a1.0": -3, "a2.0": -3}


def test_invariants_type_iv_star():
    inv = invariants(kodaira_catalog("IV*"))
    assert inv.num_nodes == 6
    assert inv.virtual_nodes == Fraction(16, 3)
    assert inv.r_minus_e == Fraction(-2, 3)


@pytest.mark.parametrize("n", [2, 3, 5, 9])
def test_invariants_cycle(n):
    inv = invariants(make_cycle(n, 1, [0] * n))
    assert inv.genus == 1
    assert inv.toric_rank == 1
    assert inv.unipotent_rank == 0
    assert inv.virtual_nodes == n == inv.num_nodes
    assert inv.art_tame == -n


def test_invariants_rejects_invalid():
    graph = SncdGraph((Component("a", 1, 0), Component("b", 1, 0)))
    with pytest.raises(InvalidGraph):
        invariants(graph)


def test_negative_unipotent_rank():
    # both multiplicities 2: passes the linear-algebra rules but u = -1
    graph = SncdGraph((Component("a", 2, 0), Component("b", 2, 0)), (("a", "b"),))
    assert validate(graph) == []
    with pytest.raises(NegativeUnipotentRank):
        invariants(graph)


@pytest.mark.parametrize("label", ["I2", "I7", "II", "III", "IV", "I0*", "I1*",
                                   "I4*", "IV*", "III*", "II*"])
def test_catalog_entries_validate(label):
    graph = kodaira_catalog(label)
    assert validate(graph) == []
    invariants(graph)


def test_catalog_shapes():
    ii = kodaira_catalog("II")
    mults = sorted(c.multiplicity for c in ii.components)
    assert mults == [1, 2, 3, 6]
    i0s = kodaira_catalog("I0*")
    assert sorted(c.multiplicity for c in i0s.components) == [1, 1, 1, 1, 2]
    assert len(i0s.edges) == 4


@pytest.mark.parametrize("label", ["I0", "I1", "V", "II**", "nonsense"])
def test_catalog_rejects(label):
    with pytest.raises(UnknownType):
        kodaira_catalog(label)


def test_euler_after_resolution():
    assert euler_after_resolution(5, []) == 5
    assert euler_after_resolution(5, [2]) == 6
    assert euler_after_resolution(-7, [2, 2, 2]) == -4


def test_edge_terms_markov_pairs():
    # (n, n') with n/gcd, n'/gcd a Markov pair contribute exactly 3
    def term(n, m):
        g = SncdGraph((Component("a", n, 0), Component("b", m, 0)), (("a", "b"),))
        return edge_node_terms(g)[0]

    assert term(1, 1) == 3
    assert term(2, 1) == 3
    assert term(5, 2) == 3
    assert term(10, 4) == 3  # gcd 2, pair (5, 2)
    assert term(3, 1) == Fraction(11, 3)
    assert term(3, 2) == Fraction(7, 3)  # below 3: R - E can be negative


@given(sncd_graphs())
def test_multiplicity_vector_spans_kernel(graph):
    inv = invariants(graph)
    M = graph.intersection_matrix()
    mults = tuple(c.multiplicity for c in graph.components)
    assert all(x == 0 for x in M.apply(mults))
    assert inv.betti1 == 1 - inv.num_components + inv.num_nodes


@given(sncd_graphs())
def test_art_tame_two_routes(graph):
    inv = invariants(graph)
    assert inv.art_tame == inv.chi_generic - inv.chi_special
    assert inv.art_tame == -2 * inv.unipotent_rank - inv.num_nodes


@given(sncd_graphs())
def test_blowup_invariance(graph):
    if not graph.edges:
        return
    blown = blow_up_node(graph, 0, "fresh")
    before, after = invariants(graph), invariants(blown)
    assert after.num_components == before.num_components + 1
    assert after.num_nodes == before.num_nodes + 1
    assert after.genus == before.genus
    assert after.abelian_rank == before.abelian_rank
    assert after.toric_rank == before.toric_rank
    assert after.unipotent_rank == before.unipotent_rank
    assert after.r_minus_e == before.r_minus_e


def test_equal_multiplicity_graphs_have_r_equal_e():
    for n, mult in [(2, 1), (4, 3), (6, 2)]:
        inv = invariants(make_cycle(n, mult, [0] * n))
        assert inv.r_minus_e == 0
