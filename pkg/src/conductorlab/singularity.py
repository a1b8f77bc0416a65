"""Milnor and discrepancy numbers of normal surface singularities from
resolution data.

The authoritative computation is the adjunction solver: on a resolution with
exceptional curves ``E_1, ..., E_V`` (genera ``g_i``, negative-definite
intersection matrix ``M``), the discrepancy divisor ``Gamma = sum k_i E_i``
is the unique solution of

    M k = b,    b_i = 2 g_i - 2 - M_ii,

and ``Gamma^2 = k . b``.  The Milnor and discrepancy numbers are then

    mu = 12 p_g + Gamma^2 - sum 2 g_i - b_1 + V,
    nu =          Gamma^2 - sum 2 g_i - b_1 + V,

with ``p_g`` the geometric genus of the point and ``b_1`` the first Betti
number of the dual graph of the exceptional locus.  For a rational
singularity with rational exceptional curves and tree dual graph this
collapses to ``mu = nu = Gamma^2 + V``.

Two families get closed forms, each cross-checked against the solver:

* Cyclic quotient points of order prime to the residue characteristic.  The
  minimal resolution of the point with data ``(e, r)`` is the chain of
  rational curves with self-intersections ``-a_i`` read off the descending
  continued fraction ``e/r = [a_1, ..., a_l]``, and

      mu = 3l - ( r/e + sum a_i + r'/e ) + 2(1 - 1/e),

  where ``r r' = 1 (mod e)`` (the two reciprocals are the values of the
  expansion and of its reversal).  The companion quantity
  ``mu~ = mu - 2(1 - 1/e)`` is the per-point summand in the tame
  potential-good-reduction conductor formula.

* Weakly ramified wild quotient points: if the local group has order ``q``
  (a power of the residue characteristic) and the extension it cuts out has
  Swan conductor ``sw``, then ``mu = 4 (q - 1 + sw)/q``.  No resolution data
  is needed at all.

For order-``p`` cyclic wild points the expected minimal resolution is a
three-arm star and this module also exposes its discrepancy coefficients:
with ``alpha = p s`` and ``lambda = p(1 - alpha) + 2 alpha``,

    x_i = (p P_i + lambda r_i) / p^2,   k_i = x_i - 1,
    y_j = (alpha - j + 1)/alpha * k_0        (j = 2..alpha),

where ``r_i`` is the remainder sequence of the arm's continued fraction and
``P_i`` the companion recursion ``P_{i+1} = P_i a_i - P_{i-1}``.  Two
initializations of that recursion are in circulation; ``P_0 = 0, P_1 = 1``
("standard") is the one consistent with the adjunction solver and with the
boundary identity ``x_0 = lambda/p``, so it is the default, but
``P_0 = P_1 = 1`` ("shifted") is kept selectable for comparison.  The
printed source for the chart does not pin down the remaining intersection
data (node self-intersection, arm residues), so the chart is exposed as-is
together with a brute-force probe that searches for completions whose
solver Milnor number hits the expected ``4 s (1 - 1/p)``; the probe is a
discovery tool, not a claim.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .exactmath import (
    HJExpansion,
    SingularMatrix,
    SymMatrix,
    hj_expand,
    hj_eval,
    solve_definite,
)


class NotNegativeDefinite(ValueError):
    """The intersection matrix of a resolution must be negative definite."""


@dataclass(frozen=True)
class ResolutionDatum:
    """Exceptional configuration of a resolved normal surface point.

    ``genera[i]`` is the genus of the i-th exceptional curve and
    ``intersection`` the full symmetric intersection matrix (integral,
    off-diagonal entries >= 0, diagonal <= -1).  ``p_g`` is the geometric
    genus of the point; setting ``rational`` pins it to 0.
    """

    genera: tuple[int, ...]
    intersection: SymMatrix
    p_g: int = 0
    rational: bool = False

    def __post_init__(self):
        object.__setattr__(self, "genera", tuple(self.genera))
        n = self.intersection.dimension
        if len(self.genera) != n:
            raise ValueError("one genus per exceptional curve, please")
        if any(g < 0 for g in self.genera):
            raise ValueError("genera must be non-negative")
        for i in range(n):
            for j in range(n):
                entry = self.intersection[i, j]
                if entry.denominator != 1:
                    raise ValueError("intersection numbers must be integers")
                if i == j and entry > -1:
                    raise ValueError(f"self-intersection {entry} at {i} must be <= -1")
                if i != j and entry < 0:
                    raise ValueError(f"negative off-diagonal entry at ({i}, {j})")
        if self.rational and self.p_g != 0:
            raise ValueError("a rational singularity has p_g = 0")
        if self.p_g < 0:
            raise ValueError("p_g must be non-negative")
        if not _connected_config(self.intersection):
            raise ValueError("exceptional locus must be connected")
        if self.betti1 < 0:
            raise AssertionError("b1 < 0 cannot happen on a connected graph")

    @property
    def num_curves(self) -> int:
        return self.intersection.dimension

    @property
    def num_edges(self) -> int:
        n = self.intersection.dimension
        return sum(
            int(self.intersection[i, j])
            for i in range(n)
            for j in range(i + 1, n)
        )

    @property
    def betti1(self) -> int:
        return self.num_edges - self.num_curves + 1


def _connected_config(M: SymMatrix) -> bool:
    n = M.dimension
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if j != i and j not in seen and M[i, j] != 0:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


@dataclass(frozen=True)
class Discrepancy:
    coefficients: tuple[Fraction, ...]
    gamma_sq: Fraction


@dataclass(frozen=True)
class MilnorNumbers:
    mu: Fraction
    nu: Fraction


def discrepancy_solve(datum: ResolutionDatum) -> Discrepancy:
    """Solve the adjunction system ``M k = (2g_i - 2 - M_ii)_i`` exactly."""
    M = datum.intersection
    b = [
        Fraction(2 * datum.genera[i] - 2) - M[i, i]
        for i in range(datum.num_curves)
    ]
    try:
        k = solve_definite(M, b)
    except SingularMatrix as exc:
        raise NotNegativeDefinite(str(exc)) from exc
    gamma_sq = sum(ki * bi for ki, bi in zip(k, b))
    return Discrepancy(tuple(k), gamma_sq)


def milnor_nu(datum: ResolutionDatum) -> MilnorNumbers:
    """Milnor and discrepancy numbers from the resolution datum."""
    gamma_sq = discrepancy_solve(datum).gamma_sq
    base = gamma_sq - 2 * sum(datum.genera) - datum.betti1 + datum.num_curves
    result = MilnorNumbers(mu=12 * datum.p_g + base, nu=base)
    if datum.rational and not any(datum.genera) and datum.betti1 == 0:
        if result.mu != gamma_sq + datum.num_curves or result.mu != result.nu:
            raise AssertionError("rational tree case must give mu = nu = Gamma^2 + V")
    return result


def blow_up(datum: ResolutionDatum, i: int, j: int | None = None) -> ResolutionDatum:
    """Blow up a regular closed point of the exceptional locus.

    With ``j`` omitted the point lies on the single curve ``i``; otherwise it
    is an intersection point of curves ``i`` and ``j`` (which must actually
    meet).  Either way the new (-1)-curve is appended last.  The combination
    ``Gamma^2 + num_curves``, and with it ``mu`` and ``nu``, is unchanged.
    """
    n = datum.num_curves
    rows = [[int(datum.intersection[r, c]) for c in range(n)] + [0] for r in range(n)]
    rows.append([0] * (n + 1))
    rows[n][n] = -1
    rows[i][i] -= 1
    rows[i][n] = rows[n][i] = 1
    if j is not None:
        if datum.intersection[i, j] < 1:
            raise ValueError(f"curves {i} and {j} do not meet")
        rows[j][j] -= 1
        rows[j][n] = rows[n][j] = 1
        rows[i][j] -= 1
        rows[j][i] -= 1
    return ResolutionDatum(
        genera=datum.genera + (0,),
        intersection=SymMatrix(rows),
        p_g=datum.p_g,
        rational=datum.rational,
    )


@dataclass(frozen=True)
class CyclicSingularity:
    """Cyclic quotient point of order prime to the residue characteristic,
    with numerical data ``(e, r)``, ``0 < r < e`` coprime."""

    e: int
    r: int

    def __post_init__(self):
        if self.e < 2:
            raise ValueError("order must be >= 2")
        if not 0 < self.r < self.e:
            raise ValueError(f"need 0 < r < e, got r={self.r}, e={self.e}")
        if gcd(self.e, self.r) != 1:
            raise ValueError(f"({self.e}, {self.r}) are not coprime")


@dataclass(frozen=True)
class TameCyclicNumbers:
    """Closed-form and solver Milnor data of a cyclic quotient point."""

    singularity: CyclicSingularity
    expansion: HJExpansion
    chain: ResolutionDatum
    mu_closed: Fraction
    mu_tilde: Fraction
    mu_solver: Fraction


def cyclic_chain(expansion: HJExpansion) -> ResolutionDatum:
    """The minimal resolution chain: rational curves of self-intersection
    ``-a_i`` meeting consecutively."""
    a = expansion.terms
    n = len(a)
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = -a[i]
        if i + 1 < n:
            rows[i][i + 1] = rows[i + 1][i] = 1
    return ResolutionDatum(genera=(0,) * n, intersection=SymMatrix(rows), rational=True)


def cyclic_chain_discrepancy(expansion: HJExpansion, convention: str = "standard"):
    """Closed-form discrepancy coefficients ``(P_i + r_i)/e - 1`` along the
    resolution chain of a cyclic quotient point.

    Under the default convention this reproduces the adjunction solver
    exactly (the alternative initialization ``P_0 = P_1 = 1`` does not; see
    the module docstring), and the boundary values at the virtual indices 0
    and l+1 are 0, matching the strict transforms being untouched.
    """
    polys = _companion_polys(expansion.terms, convention)
    remainders = list(expansion.remainders) + [0]  # r_{l+1} = 0
    e = expansion.numerator
    return tuple(
        Fraction(polys[i] + remainders[i], e) - 1
        for i in range(1, expansion.length + 1)
    )


def tame_cyclic(sing: CyclicSingularity) -> TameCyclicNumbers:
    """Milnor number of a cyclic quotient point, twice over.

    ``mu_closed`` comes from the continued-fraction formula, ``mu_solver``
    from the adjunction system on the resolution chain; they must agree
    exactly.  ``mu_tilde = mu_closed - 2(1 - 1/e)`` is the summand appearing
    in the tame potential-good-reduction conductor.
    """
    expansion = hj_expand(sing.e, sing.r)
    chain = cyclic_chain(expansion)
    forward = 1 / hj_eval(expansion.terms)
    backward = 1 / hj_eval(tuple(reversed(expansion.terms)))
    mu_tilde = 3 * expansion.length - (forward + sum(expansion.terms) + backward)
    mu_closed = mu_tilde + 2 * (1 - Fraction(1, sing.e))
    mu_solver = milnor_nu(chain).mu
    if mu_closed != mu_solver:
        raise AssertionError(
            f"closed form {mu_closed} != solver {mu_solver} for ({sing.e}, {sing.r})"
        )
    return TameCyclicNumbers(sing, expansion, chain, mu_closed, mu_tilde, mu_solver)


def _prime_power(n: int) -> tuple[int, int] | None:
    if n < 2:
        return None
    p = None
    m = n
    for q in range(2, n + 1):
        if q * q > m:
            p = m if p is None else p
            break
        if m % q == 0:
            p = q
            break
    assert p is not None
    exp = 0
    while m % p == 0:
        m //= p
        exp += 1
    return (p, exp) if m == 1 else None


@dataclass(frozen=True)
class WeakWildSingularity:
    """Weakly ramified wild quotient point: local group of prime-power order
    ``order`` and local extension Swan conductor ``swan``."""

    order: int
    swan: int

    def __post_init__(self):
        if _prime_power(self.order) is None:
            raise ValueError(f"order {self.order} is not a prime power >= 2")
        if self.swan < 0:
            raise ValueError("Swan conductor must be non-negative")


def weak_wild_milnor(sing: WeakWildSingularity) -> Fraction:
    """``mu = 4 (1 - 1/q + sw/q)`` with ``q`` the local group order."""
    return Fraction(4 * (sing.order - 1 + sing.swan), sing.order)


P_RECURSION_CONVENTIONS = ("standard", "shifted")


def _companion_polys(terms, convention: str) -> list[int]:
    """``P_0, P_1, ..., P_{l+1}`` with ``P_{i+1} = P_i a_i - P_{i-1}``."""
    if convention == "standard":
        seq = [0, 1]
    elif convention == "shifted":
        seq = [1, 1]
    else:
        raise ValueError(f"unknown convention {convention!r}; "
                         f"pick one of {P_RECURSION_CONVENTIONS}")
    for a in terms:
        seq.append(seq[-1] * a - seq[-2])
    return seq


@dataclass(frozen=True)
class PCyclicWildChart:
    """Discrepancy data of the expected order-p wild chart.

    The resolution is a star: a chain of ``alpha - 1`` rational
    (-2)-curves ``D_2, ..., D_alpha`` (``alpha = p s``), and two
    continued-fraction chains for ``p/r_plus`` and ``p/r_minus``, all
    emanating from a node ``E_0 = D_1``.  ``k[i]`` are the discrepancy
    coefficients on the node (i = 0) and the two chains (positive indices
    for the plus chain, negative for the minus chain); ``y[j]`` those on the
    (-2)-chain.  ``mu_expected = 4 s (1 - 1/p)`` and ``swan = (s-1)(p-1)``
    are the values the jump parameter ``s`` dictates.
    """

    p: int
    s: int
    r_plus: int
    r_minus: int
    alpha: int
    lam: Fraction
    plus_expansion: HJExpansion
    minus_expansion: HJExpansion
    k: dict[int, Fraction]
    y: dict[int, Fraction]
    mu_expected: Fraction
    swan: int
    convention: str


def p_cyclic_wild_chart(
    p: int,
    s: int,
    r_plus: int,
    r_minus: int,
    convention: str = "standard",
) -> PCyclicWildChart:
    """Build the order-p wild chart data for jump parameter ``s``."""
    pp = _prime_power(p)
    if pp is None or pp[1] != 1:
        raise ValueError(f"{p} is not prime")
    if s < 1:
        raise ValueError("jump parameter must be >= 1")
    for r in (r_plus, r_minus):
        if not 0 < r < p:
            raise ValueError(f"residue {r} must satisfy 0 < r < {p}")
    alpha = p * s
    lam = Fraction(p * (1 - alpha) + 2 * alpha)

    k: dict[int, Fraction] = {}
    for side, r1 in ((1, r_plus), (-1, r_minus)):
        expansion = hj_expand(p, r1)
        polys = _companion_polys(expansion.terms, convention)
        for i in range(0, expansion.length + 1):
            x_i = (p * polys[i] + lam * expansion.remainders[i]) / Fraction(p * p)
            k[side * i] = x_i - 1
        if side == 1:
            plus = expansion
        else:
            minus = expansion
    # index 0 is shared between the two chains; the loop writes it twice with
    # the same value since P_0 and r_0 = p do not depend on the side
    y = {j: Fraction(alpha - j + 1, alpha) * k[0] for j in range(2, alpha + 1)}
    return PCyclicWildChart(
        p=p,
        s=s,
        r_plus=r_plus,
        r_minus=r_minus,
        alpha=alpha,
        lam=lam,
        plus_expansion=plus,
        minus_expansion=minus,
        k=k,
        y=y,
        mu_expected=Fraction(4 * s * (p - 1), p),
        swan=(s - 1) * (p - 1),
        convention=convention,
    )


def chart_resolution(chart: PCyclicWildChart, node_self_intersection: int) -> ResolutionDatum:
    """Complete the chart to a resolution datum with a caller-supplied node
    self-intersection (the printed chart does not determine it).

    Curve order: node, then ``D_2..D_alpha``, then the plus chain, then the
    minus chain.
    """
    if node_self_intersection > -1:
        raise ValueError("node self-intersection must be <= -1")
    d_len = chart.alpha - 1
    plus = chart.plus_expansion.terms
    minus = chart.minus_expansion.terms
    n = 1 + d_len + len(plus) + len(minus)
    rows = [[0] * n for _ in range(n)]
    rows[0][0] = node_self_intersection

    def link(i, j):
        rows[i][j] = rows[j][i] = 1

    pos = 1
    prev = 0
    for _ in range(d_len):
        rows[pos][pos] = -2
        link(prev, pos)
        prev = pos
        pos += 1
    for terms in (plus, minus):
        prev = 0
        for a in terms:
            rows[pos][pos] = -a
            link(prev, pos)
            prev = pos
            pos += 1
    return ResolutionDatum(genera=(0,) * n, intersection=SymMatrix(rows), rational=True)


def chart_coefficient_vector(chart: PCyclicWildChart) -> tuple[Fraction, ...]:
    """Chart discrepancy coefficients in the row order of
    :func:`chart_resolution`."""
    out = [chart.k[0]]
    out += [chart.y[j] for j in range(2, chart.alpha + 1)]
    out += [chart.k[i] for i in range(1, chart.plus_expansion.length + 1)]
    out += [chart.k[-i] for i in range(1, chart.minus_expansion.length + 1)]
    return tuple(out)


@dataclass(frozen=True)
class ChartProbe:
    node_self_intersection: int
    mu_solver: Fraction
    solver_coefficients: tuple[Fraction, ...]
    chart_coefficients: tuple[Fraction, ...]
    coefficients_match: bool
    mu_matches_expected: bool


def probe_chart(chart: PCyclicWildChart, node_self_intersection: int) -> ChartProbe:
    """Compare the chart coefficients against the adjunction solver on one
    completion of the intersection data."""
    datum = chart_resolution(chart, node_self_intersection)
    solved = discrepancy_solve(datum)
    mu = milnor_nu(datum).mu
    chart_vec = chart_coefficient_vector(chart)
    return ChartProbe(
        node_self_intersection=node_self_intersection,
        mu_solver=mu,
        solver_coefficients=solved.coefficients,
        chart_coefficients=chart_vec,
        coefficients_match=(chart_vec == solved.coefficients),
        mu_matches_expected=(mu == chart.mu_expected),
    )


def search_chart_completions(p: int, s: int, node_range=range(-12, -1)) -> list[ChartProbe]:
    """Discovery oracle: scan residues and node self-intersections for
    completions whose solver Milnor number equals ``4 s (1 - 1/p)``.

    Completions whose matrix fails negative definiteness are skipped.  An
    empty result is informative, not an error.
    """
    hits = []
    for r_plus in range(1, p):
        for r_minus in range(1, p):
            chart = p_cyclic_wild_chart(p, s, r_plus, r_minus)
            for node in node_range:
                try:
                    probe = probe_chart(chart, node)
                except NotNegativeDefinite:
                    continue
                if probe.mu_matches_expected:
                    hits.append(probe)
    return hits
