from fractions import Fraction

import pytest
from hypothesis import given

from conductorlab.dualgraph import Component, SncdGraph, blow_up_node, kodaira_catalog
from conductorlab.tame import c_tame, diagnostics, pipeline_terms

from conftest import make_cycle, sncd_graphs


CATALOG_VALUES = {
    "I2": Fraction(0),
    "I5": Fraction(0),
    "II": Fraction(1, 6),
    "III": Fraction(1, 4),
    "IV": Fraction(1, 3),
    "I0*": Fraction(1, 2),
    "I1*": Fraction(1, 2),
    "I4*": Fraction(1, 2),
    "IV*": Fraction(2, 3),
    "III*": Fraction(3, 4),
    "II*": Fraction(5, 6),
}


@pytest.mark.parametrize("label, value", sorted(CATALOG_VALUES.items()))
def test_c_tame_catalog(label, value):
    assert c_tame(kodaira_catalog(label)) == value


def test_pipeline_terms_type_iv():
    terms = pipeline_terms(kodaira_catalog("IV"))
    assert terms.gamma_term_over_e == 0
    assert terms.art_prime_over_e == -1
    assert terms.art_base == -5
    assert terms.c_result == Fraction(1, 3)


def test_pipeline_type_ii():
    assert pipeline_terms(kodaira_catalog("II")).c_result == Fraction(1, 6)


def test_pipeline_good_reduction():
    graph = SncdGraph((Component("c", 1, 3),))
    terms = pipeline_terms(graph)
    assert terms.gamma_term_over_e == 0
    assert terms.art_prime_over_e == 0
    assert terms.art_base == 0
    assert terms.c_result == 0


@given(sncd_graphs())
def test_pipeline_matches_closed_form(graph):
    assert pipeline_terms(graph).c_result == c_tame(graph)


@given(sncd_graphs())
def test_c_tame_blowup_invariant(graph):
    if not graph.edges:
        return
    assert c_tame(blow_up_node(graph, 0, "fresh")) == c_tame(graph)


def test_diagnostics_cycle():
    result = diagnostics(make_cycle(4, 1, [0, 0, 0, 0]))
    assert result.r_minus_e == 0
    assert result.mult_reduction_possible
    assert result.spectral_ok is None


def test_diagnostics_type_iv():
    result = diagnostics(kodaira_catalog("IV"))
    assert result.r_minus_e == Fraction(2, 3)
    assert not result.mult_reduction_possible


def nodal_cubic_resolution():
    # blow up the node of an irreducible singular fiber: strict transform of
    # genus 0, exceptional of multiplicity 2, meeting twice
    return SncdGraph(
        (Component("strict", 1, 0), Component("exc", 2, 0)),
        (("strict", "exc"), ("strict", "exc")),
    )


def test_spectral_inequality_nodal_cubic():
    result = diagnostics(nodal_cubic_resolution(), mu_for_spectral=1)
    assert result.spectral_bound == 3
    assert result.spectral_ok is True


def test_spectral_inequality_fails_for_large_mu():
    result = diagnostics(nodal_cubic_resolution(), mu_for_spectral=Fraction(7, 2))
    assert result.spectral_ok is False
