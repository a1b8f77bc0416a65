"""The tame part of the base-change conductor of a Jacobian, from a labelled
dual graph, by two independent routes.

Closed form.  With ``art`` the tame Artin conductor and ``R`` the virtual
node count of the graph,

    c_tame = -(art + R)/4 = u/2 - (R - E)/4,

the second equality because ``art = -2u - E``.  Both forms are evaluated and
compared on every call.

Pipeline form.  The same number is assembled the long way, term by term, as
it arises from comparing the graph with its semistable cover after a ramified
base extension of degree ``e``:

* the discrepancy/relative-canonical term
  ``(Gamma^2 + 2 Gamma . pullback omega)/e
    = 2 #edges - sum E_i^2 - 2 sum chi(E_i) + 2 chi(generic fiber)``,
* the cover's Artin conductor divided by ``e``,
  ``Art'/e = - sum_edges gcd(n, n')^2 / (n n')`` (each node of the base graph
  turns into gcd(n, n') chains of rational curves upstairs),
* the base Artin conductor ``art`` itself,

combined as ``-12 c = (Gamma term) - Art'/e + art``.  Agreement of the
pipeline with the closed form is asserted unconditionally; it is the
strongest internal cross-check the graph data admits.

Diagnostics.  ``R - E = 0`` is a necessary condition for the Jacobian to
acquire purely multiplicative (or, more generally, good-abelian-part)
reduction, so the sign of ``R - E`` is reported as an obstruction.  When the
caller supplies the Milnor number ``mu`` of an isolated singularity whose
embedded resolution this graph is, the strict spectral bound

    mu < sum_edges(term - 3) + 3 t

is evaluated (known in equal characteristic zero; reported, never asserted).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .dualgraph import GraphInvariants, SncdGraph, edge_node_terms, invariants


@dataclass(frozen=True)
class PipelineTerms:
    """The term-by-term assembly of ``-12 c`` from the graph."""

    gamma_term_over_e: Fraction
    art_prime_over_e: Fraction
    art_base: int
    c_result: Fraction


@dataclass(frozen=True)
class TameDiagnostics:
    r_minus_e: Fraction
    mult_reduction_possible: bool
    spectral_bound: Fraction | None = None
    spectral_ok: bool | None = None


def c_tame(graph: SncdGraph) -> Fraction:
    """Tame base-change conductor ``-(art + R)/4`` of the Jacobian.

    The equivalent form ``u/2 - (R - E)/4`` is computed alongside and the two
    must agree exactly.  The value is non-negative on every graph that comes
    from an actual degeneration; a negative result on synthetic input only
    triggers a warning.
    """
    return _c_tame(invariants(graph))


def _c_tame(inv: GraphInvariants) -> Fraction:
    from_artin = -Fraction(inv.art_tame + inv.virtual_nodes) / 4
    from_ranks = Fraction(inv.unipotent_rank, 2) - inv.r_minus_e / 4
    if from_artin != from_ranks:
        raise AssertionError("the two closed forms of c_tame disagree")
    if from_artin < 0:
        warnings.warn(
            f"c_tame = {from_artin} < 0: the labels cannot come from a "
            "degeneration of an index-one curve",
            stacklevel=3,
        )
    return from_artin


def pipeline_terms(graph: SncdGraph) -> PipelineTerms:
    """Assemble ``-12 c`` from the semistable-cover comparison, term by term.

    The result must equal :func:`c_tame`; a mismatch raises, since both sides
    are determined by the same graph.
    """
    inv = invariants(graph)
    sum_self = sum(inv.self_intersections.values())
    sum_chi = sum(2 - 2 * c.genus for c in graph.components)
    gamma_term = Fraction(
        2 * inv.num_nodes - sum_self - 2 * sum_chi + 2 * inv.chi_generic
    )
    art_prime_over_e = Fraction(0)
    for a, b in graph.edges:
        n, m = graph.multiplicity(a), graph.multiplicity(b)
        art_prime_over_e -= Fraction(gcd(n, m) ** 2, n * m)
    c = -(gamma_term - art_prime_over_e + inv.art_tame) / 12
    if c != _c_tame(inv):
        raise AssertionError("pipeline assembly disagrees with the closed form")
    return PipelineTerms(gamma_term, art_prime_over_e, inv.art_tame, c)


def diagnostics(graph: SncdGraph, mu_for_spectral: Fraction | None = None) -> TameDiagnostics:
    """Combinatorial obstructions read off the graph.

    ``mult_reduction_possible`` is the necessary condition ``R = E``.  When
    ``mu_for_spectral`` is given, the graph is read as the embedded
    resolution of a single isolated singularity on an irreducible fiber and
    the strict spectral inequality ``mu < sum_edges(term - 3) + 3 t`` is
    evaluated against it.
    """
    inv = invariants(graph)
    r_minus_e = inv.r_minus_e
    bound: Fraction | None = None
    ok: bool | None = None
    if mu_for_spectral is not None:
        mu = Fraction(mu_for_spectral)
        bound = sum((t - 3 for t in edge_node_terms(graph)), Fraction(0))
        bound += 3 * inv.toric_rank
        ok = mu < bound
    return TameDiagnostics(
        r_minus_e=r_minus_e,
        mult_reduction_possible=(r_minus_e == 0),
        spectral_bound=bound,
        spectral_ok=ok,
    )
