"""Labelled dual graphs of normal-crossings degenerations of curves.

A degeneration whose special fiber is a strict-normal-crossings divisor
``sum n_i E_i`` is encoded combinatorially: one vertex per irreducible
component, labelled with its multiplicity ``n_i >= 1`` and genus
``g_i >= 0``, and one edge per intersection point (so ``E_i . E_j`` parallel
edges between distinct vertices; components are smooth, so loops are
forbidden).

From this purely combinatorial datum every numerical invariant used in this
package is computable exactly:

* self-intersections from ``n_i E_i^2 = - sum_j n_j (E_i . E_j)``, which also
  makes the multiplicity vector a kernel vector of the intersection form;
* Euler characteristics ``chi(special fiber) = sum chi(E_i) - #edges`` and
  ``chi(generic fiber) = sum n_i chi(E_i minus its nodes)``, hence the genus
  of the generic fiber;
* the rank decomposition ``g = a + t + u`` with ``a = sum g_i``,
  ``t = b_1(graph) = 1 - V + #edges`` and ``u`` the unipotent rank;
* the tame Artin conductor ``chi(generic) - chi(special) = -2u - #edges``;
* the multiplicity-weighted node count
  ``R = (1/3) sum_edges (n^2 + n'^2 + gcd(n, n')^2) / (n n')``,
  a "virtual" number of nodes that refines the edge count ``E`` and whose
  difference ``R - E`` is a blowup-invariant of the degeneration.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd

from .diagnostics import Diagnostic
from .exactmath import SymMatrix, check_neg_semidefinite


class InvalidGraph(ValueError):
    """The graph fails validation and invariants cannot be computed."""


class NegativeUnipotentRank(ValueError):
    """The labels are inconsistent: no actual degeneration has u < 0."""


class UnknownType(ValueError):
    """Unrecognized fiber-type label."""


@dataclass(frozen=True)
class Component:
    """One irreducible component of the special fiber."""

    id: str
    multiplicity: int
    genus: int = 0

    def __post_init__(self):
        if self.multiplicity < 1:
            raise ValueError(f"component {self.id!r}: multiplicity must be >= 1")
        if self.genus < 0:
            raise ValueError(f"component {self.id!r}: genus must be >= 0")


@dataclass(frozen=True)
class SncdGraph:
    """A labelled dual graph: components plus a multiset of edges.

    Edges are unordered pairs of component ids; repeats encode components
    meeting in several points.  ``index_one`` opts in to the extra check that
    the multiplicities have gcd 1.
    """

    components: tuple[Component, ...]
    edges: tuple[tuple[str, str], ...] = ()
    index_one: bool = False

    def __post_init__(self):
        if not self.components:
            raise ValueError("graph needs at least one component")
        ids = [c.id for c in self.components]
        if len(set(ids)) != len(ids):
            raise ValueError("component ids must be unique")
        known = set(ids)
        normalized = []
        for edge in self.edges:
            a, b = edge
            if a not in known or b not in known:
                raise ValueError(f"edge {edge!r} references an unknown component")
            normalized.append((a, b) if a <= b else (b, a))
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "edges", tuple(normalized))

    def component(self, cid: str) -> Component:
        for c in self.components:
            if c.id == cid:
                return c
        raise KeyError(cid)

    def multiplicity(self, cid: str) -> int:
        return self.component(cid).multiplicity

    def degree(self, cid: str) -> int:
        return sum((a == cid) + (b == cid) for a, b in self.edges)

    def edge_multiplicity(self, a: str, b: str) -> int:
        key = (a, b) if a <= b else (b, a)
        return sum(1 for e in self.edges if e == key)

    def intersection_matrix(self) -> SymMatrix:
        """The full intersection matrix, diagonal included.

        Requires the self-intersections to be integral; callers should
        validate first.
        """
        self_ints = self_intersections(self)
        order = [c.id for c in self.components]
        idx = {cid: k for k, cid in enumerate(order)}
        n = len(order)
        rows = [[0] * n for _ in range(n)]
        for a, b in self.edges:
            rows[idx[a]][idx[b]] += 1
            rows[idx[b]][idx[a]] += 1
        for cid, k in idx.items():
            rows[k][k] = self_ints[cid]
        return SymMatrix(rows)


@dataclass(frozen=True)
class GraphInvariants:
    """All graph-level numerical invariants of a valid labelled dual graph."""

    num_components: int
    num_nodes: int
    betti1: int
    virtual_nodes: Fraction
    chi_generic: int
    chi_special: int
    genus: int
    abelian_rank: int
    toric_rank: int
    unipotent_rank: int
    art_tame: int
    self_intersections: dict[str, int] = field(compare=False)

    @property
    def r_minus_e(self) -> Fraction:
        return self.virtual_nodes - self.num_nodes


def self_intersections(graph: SncdGraph) -> dict[str, int]:
    """Solve ``n_i E_i^2 = - sum_j n_j (E_i . E_j)`` for every component.

    Raises :class:`InvalidGraph` when the result is not an integer.
    """
    out: dict[str, int] = {}
    for c in graph.components:
        weighted = sum(
            graph.multiplicity(b if a == c.id else a)
            for a, b in graph.edges
            if c.id in (a, b) and a != b
        )
        # a loop would contribute to both branches; loops are rejected in
        # validation, exclude them here so the error surfaces there
        if weighted % c.multiplicity != 0:
            raise InvalidGraph(
                f"component {c.id!r}: {c.multiplicity} does not divide the "
                f"weighted intersection sum {weighted}"
            )
        out[c.id] = -(weighted // c.multiplicity)
    return out


def validate(graph: SncdGraph) -> list[Diagnostic]:
    """Check the well-formedness rules; empty list means the graph is valid.

    Rules: no loops, connectivity, integrality of every self-intersection,
    negative-semidefinite intersection form with one-dimensional kernel
    (necessarily spanned by the multiplicity vector), and -- only when
    ``index_one`` is set -- gcd of the multiplicities equal to 1.
    """
    out: list[Diagnostic] = []
    for a, b in graph.edges:
        if a == b:
            out.append(Diagnostic("LoopEdge", f"component {a!r} intersects itself; "
                                              "resolve the node first"))
    if not _connected(graph):
        out.append(Diagnostic("NotConnected", "dual graph is not connected"))
    integral = True
    for c in graph.components:
        weighted = sum(
            graph.multiplicity(b if a == c.id else a)
            for a, b in graph.edges
            if c.id in (a, b) and a != b
        )
        if weighted % c.multiplicity != 0:
            integral = False
            out.append(Diagnostic(
                "NonIntegralSelfIntersection",
                f"component {c.id!r}: multiplicity {c.multiplicity} does not "
                f"divide the weighted intersection sum {weighted}",
            ))
    if integral and not any(d.code == "LoopEdge" for d in out):
        report = check_neg_semidefinite(graph.intersection_matrix())
        if not report.zariski_ok:
            out.append(Diagnostic(
                "IntersectionFormDegenerate",
                "intersection form is not negative semidefinite with "
                f"one-dimensional kernel (rank {report.rank}, kernel "
                f"dimension {len(report.kernel_basis)})",
            ))
    if graph.index_one:
        g = reduce(gcd, (c.multiplicity for c in graph.components))
        if g != 1:
            out.append(Diagnostic(
                "MultiplicityGcdNotOne",
                f"multiplicities have gcd {g}, but the graph is flagged index one",
            ))
    return out


def _connected(graph: SncdGraph) -> bool:
    ids = [c.id for c in graph.components]
    adjacency: dict[str, set[str]] = {cid: set() for cid in ids}
    for a, b in graph.edges:
        adjacency[a].add(b)
        adjacency[b].add(a)
    seen = {ids[0]}
    stack = [ids[0]]
    while stack:
        for nxt in adjacency[stack.pop()]:
            if nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return len(seen) == len(ids)


def invariants(graph: SncdGraph) -> GraphInvariants:
    """Compute all invariants of a valid graph.

    Raises :class:`InvalidGraph` when validation fails and
    :class:`NegativeUnipotentRank` when the labels force ``u < 0`` (which
    signals that no genuine degeneration carries them).
    """
    problems = validate(graph)
    if problems:
        raise InvalidGraph("; ".join(str(d) for d in problems))

    V = len(graph.components)
    E = len(graph.edges)
    b1 = 1 - V + E
    self_ints = self_intersections(graph)

    degree = {c.id: graph.degree(c.id) for c in graph.components}
    chi_open = {c.id: 2 - 2 * c.genus - degree[c.id] for c in graph.components}
    chi_generic = sum(c.multiplicity * chi_open[c.id] for c in graph.components)
    chi_special = sum(2 - 2 * c.genus for c in graph.components) - E

    genus2 = 2 - chi_generic
    if genus2 % 2 != 0:  # unreachable once self-intersections are integral
        raise InvalidGraph(f"chi of the generic fiber is odd ({chi_generic})")
    genus = genus2 // 2

    abelian = sum(c.genus for c in graph.components)
    toric = b1
    unipotent = genus - abelian - toric
    if unipotent < 0:
        raise NegativeUnipotentRank(
            f"g = {genus}, a = {abelian}, t = {toric} give u = {unipotent} < 0"
        )

    art_tame = chi_generic - chi_special
    if art_tame != -2 * unipotent - E:
        raise AssertionError("the two Artin-conductor routes disagree")

    R = virtual_nodes(graph)
    return GraphInvariants(
        num_components=V,
        num_nodes=E,
        betti1=b1,
        virtual_nodes=R,
        chi_generic=chi_generic,
        chi_special=chi_special,
        genus=genus,
        abelian_rank=abelian,
        toric_rank=toric,
        unipotent_rank=unipotent,
        art_tame=art_tame,
        self_intersections=self_ints,
    )


def virtual_nodes(graph: SncdGraph) -> Fraction:
    """``R = (1/3) sum_edges (n^2 + n'^2 + gcd(n, n')^2) / (n n')``."""
    total = Fraction(0)
    for a, b in graph.edges:
        n, m = graph.multiplicity(a), graph.multiplicity(b)
        total += Fraction(n * n + m * m + gcd(n, m) ** 2, n * m)
    return total / 3


def edge_node_terms(graph: SncdGraph) -> list[Fraction]:
    """Per-edge contributions ``(n^2 + n'^2 + gcd^2)/(n n')`` (each counts 3
    in ``3R``; an edge contributes exactly 3 iff ``n/gcd`` and ``n'/gcd`` are
    a Markov pair such as 1,1 or 2,1 or 5,2)."""
    out = []
    for a, b in graph.edges:
        n, m = graph.multiplicity(a), graph.multiplicity(b)
        out.append(Fraction(n * n + m * m + gcd(n, m) ** 2, n * m))
    return out


def blow_up_node(graph: SncdGraph, edge_index: int, new_id: str) -> SncdGraph:
    """Blow up the intersection point recorded by ``edges[edge_index]``.

    The edge ``(a, b)`` is replaced by a new rational component of
    multiplicity ``n_a + n_b`` meeting both.  This leaves the genus, the rank
    decomposition (a, t, u) and the difference ``R - E`` unchanged.
    """
    if not 0 <= edge_index < len(graph.edges):
        raise IndexError(edge_index)
    if any(c.id == new_id for c in graph.components):
        raise ValueError(f"component id {new_id!r} already in use")
    a, b = graph.edges[edge_index]
    n = graph.multiplicity(a) + graph.multiplicity(b)
    edges = list(graph.edges)
    del edges[edge_index]
    edges += [(a, new_id), (new_id, b)]
    return SncdGraph(
        components=graph.components + (Component(new_id, n, 0),),
        edges=tuple(edges),
        index_one=graph.index_one,
    )


def euler_after_resolution(chi_base: int, exceptional_chis) -> int:
    """Euler characteristic of the fiber after resolving; each exceptional
    divisor of Euler characteristic ``chi`` contributes ``chi - 1``."""
    return chi_base + sum(chi - 1 for chi in exceptional_chis)


_IN_PATTERN = re.compile(r"^I(\d+)(\*?)$")


def kodaira_catalog(label: str) -> SncdGraph:
    """The standard minimal normal-crossings configuration for a Kodaira
    fiber type.

    Recognized labels: ``In`` for n >= 2 (a cycle), ``II``, ``III``, ``IV``
    (star resolutions of the cuspidal, tangent and triple-point fibers),
    ``In*`` for n >= 0, and the extended-Dynkin types ``IV*``, ``III*``,
    ``II*``.  Types ``I0`` and ``I1`` are not in the catalog: the first is
    smooth and the second needs its node resolved before it has a labelled
    dual graph.
    """
    label = label.strip()
    m = _IN_PATTERN.match(label)
    if m and not m.group(2):
        n = int(m.group(1))
        if n < 2:
            raise UnknownType(f"I{n} has no loop-free dual graph; resolve first")
        comps = tuple(Component(f"c{k}", 1, 0) for k in range(n))
        edges = tuple((f"c{k}", f"c{(k + 1) % n}") for k in range(n))
        return SncdGraph(comps, edges, index_one=True)
    if m and m.group(2):
        n = int(m.group(1))
        chain = tuple(Component(f"d{k}", 2, 0) for k in range(n + 1))
        leaves = tuple(Component(f"l{k}", 1, 0) for k in range(4))
        edges = [(f"d{k}", f"d{k + 1}") for k in range(n)]
        edges += [("l0", "d0"), ("l1", "d0"), ("l2", f"d{n}"), ("l3", f"d{n}")]
        return SncdGraph(chain + leaves, tuple(edges), index_one=True)
    if label == "II":
        return _star(6, [(1,), (2,), (3,)])
    if label == "III":
        return _star(4, [(1,), (1,), (2,)])
    if label == "IV":
        return _star(3, [(1,), (1,), (1,)])
    if label == "IV*":
        return _star(3, [(2, 1), (2, 1), (2, 1)])
    if label == "III*":
        return _star(4, [(3, 2, 1), (3, 2, 1), (2,)])
    if label == "II*":
        return _star(6, [(5, 4, 3, 2, 1), (4, 2), (3,)])
    raise UnknownType(f"unrecognized fiber type {label!r}")


def _star(center: int, arms) -> SncdGraph:
    comps = [Component("c", center, 0)]
    edges = []
    for arm_idx, arm in enumerate(arms):
        prev = "c"
        for pos, mult in enumerate(arm):
            cid = f"a{arm_idx}.{pos}"
            comps.append(Component(cid, mult, 0))
            edges.append((prev, cid))
            prev = cid
    return SncdGraph(tuple(comps), tuple(edges), index_one=True)


KODAIRA_LABELS = ("I2", "I3", "II", "III", "IV", "I0*", "I1*", "IV*", "III*", "II*")
