"""Shared generators for the property suites.

Graphs are generated from shapes that satisfy the divisibility constraints by
construction (cycles of constant multiplicity, multiplicity-one chains, stars
whose leaf multiplicities divide the center and sum to a multiple of it, each
optionally roughened by node blowups).  Stars always receive at least one
multiplicity-one leaf so the gcd of the multiplicities is 1; together with
the linear-algebra conditions this keeps the labels realizable, hence the
unipotent rank non-negative.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from conductorlab.dualgraph import Component, SncdGraph, blow_up_node
from conductorlab.exactmath import SymMatrix


def make_cycle(length: int, mult: int, genera) -> SncdGraph:
    comps = tuple(Component(f"c{i}", mult, g) for i, g in zip(range(length), genera))
    edges = tuple((f"c{i}", f"c{(i + 1) % length}") for i in range(length))
    return SncdGraph(comps, edges)


def make_chain(genera) -> SncdGraph:
    comps = tuple(Component(f"c{i}", 1, g) for i, g in enumerate(genera))
    edges = tuple((f"c{i}", f"c{i + 1}") for i in range(len(genera) - 1))
    return SncdGraph(comps, edges)


def make_star(center_mult: int, center_genus: int, leaves) -> SncdGraph:
    """Star with the given (divisor-of-center) leaf multiplicities, padded
    with multiplicity-one leaves until the weighted sum is a multiple of the
    center multiplicity."""
    leaves = list(leaves)
    total = sum(m for m, _ in leaves)
    pad = (-total) % center_mult
    if pad == 0 and all(m > 1 for m, _ in leaves):
        pad = center_mult  # force a multiplicity-one leaf, keeping gcd = 1
    leaves += [(1, 0)] * pad
    comps = [Component("c", center_mult, center_genus)]
    comps += [Component(f"l{i}", m, g) for i, (m, g) in enumerate(leaves)]
    edges = tuple(("c", f"l{i}") for i in range(len(leaves)))
    return SncdGraph(tuple(comps), edges)


def random_graph(rng: random.Random) -> SncdGraph:
    kind = rng.choice(("cycle", "chain", "star"))
    if kind == "cycle":
        length = rng.randint(2, 7)
        mult = rng.randint(1, 6)
        graph = make_cycle(length, mult, [rng.randint(0, 2) for _ in range(length)])
    elif kind == "chain":
        length = rng.randint(1, 6)
        graph = make_chain([rng.randint(0, 2) for _ in range(length)])
    else:
        center = rng.randint(2, 12)
        divisors = [d for d in range(1, center + 1) if center % d == 0]
        leaves = [(rng.choice(divisors), rng.randint(0, 1))
                  for _ in range(rng.randint(1, 4))]
        graph = make_star(center, rng.randint(0, 1), leaves)
    for b in range(rng.randint(0, 3)):
        if graph.edges:
            graph = blow_up_node(graph, rng.randrange(len(graph.edges)), f"b{b}")
    return graph


@st.composite
def sncd_graphs(draw) -> SncdGraph:
    return random_graph(random.Random(draw(st.integers(0, 2**32 - 1))))


def random_negative_definite(rng: random.Random, dim: int) -> SymMatrix:
    """Exact negative-definite matrix: a negative diagonal conjugated by
    random integer shears (congruence preserves definiteness)."""
    a = [[0] * dim for _ in range(dim)]
    for i in range(dim):
        a[i][i] = -rng.randint(1, 9)
    for _ in range(2 * dim):
        i, j = rng.randrange(dim), rng.randrange(dim)
        if i == j:
            continue
        c = rng.randint(-3, 3)
        if c == 0:
            continue
        # M <- E^T M E with E = I + c e_{ij}: col_j += c col_i, row_j += c row_i
        for k in range(dim):
            a[k][j] += c * a[k][i]
        for k in range(dim):
            a[j][k] += c * a[i][k]
    return SymMatrix(a)


def random_wild_cover(rng: random.Random):
    """Weakly ramified cover data whose genus is read off Riemann-Hurwitz,
    so the gate identity holds by construction.  Returns None when the draw
    is inconsistent (negative genus or negative recovered Swan)."""
    from conductorlab.cover import NegativeSwan, WildBranchLocus, WildCoverData

    p = rng.choice((2, 3, 5))
    r = rng.randint(1, 3)
    quotient_genus = rng.randint(0, 2)
    sw_extension = rng.randint(0, 6)
    branch = []
    for i in range(r):
        count = rng.randint(1, 3) if i == 0 else rng.randint(0, 2)
        if count == 0:
            continue
        if i == 0:
            # a full-stabilizer point sees the whole base extension
            sw_locals = tuple([sw_extension] * count)
        else:
            sw_locals = tuple(rng.randint(0, 6) for _ in range(count))
        branch.append(WildBranchLocus(i, sw_locals))
    rhs = p**r * (2 * quotient_genus - 2)
    for locus in branch:
        stab = p ** (r - locus.type_index)
        orbit = p**locus.type_index
        rhs += locus.count * orbit * (2 * stab - 2)
    if rhs % 2 != 0:
        return None
    genus = rhs // 2 + 1
    if genus < quotient_genus or genus < 0:
        return None
    data = WildCoverData(p, r, genus, quotient_genus, sw_extension, tuple(branch))
    try:
        from conductorlab.cover import swan_of_curve

        swan_of_curve(data)
    except NegativeSwan:
        return None
    return data


@st.composite
def wild_covers(draw):
    rng = random.Random(draw(st.integers(0, 2**32 - 1)))
    data = random_wild_cover(rng)
    while data is None:
        data = random_wild_cover(rng)
    return data
