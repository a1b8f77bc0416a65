import random
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from conductorlab.exactmath import SymMatrix, hj_expand
from conductorlab.singularity import (
    CyclicSingularity,
    NotNegativeDefinite,
    ResolutionDatum,
    WeakWildSingularity,
    blow_up,
    chart_coefficient_vector,
    chart_resolution,
    cyclic_chain_discrepancy,
    discrepancy_solve,
    milnor_nu,
    p_cyclic_wild_chart,
    probe_chart,
    search_chart_completions,
    tame_cyclic,
    weak_wild_milnor,
)


def chain_datum(self_ints, genera=None, **kw):
    n = len(self_ints)
    rows = [[0] * n for _ in range(n)]
    for i, s in enumerate(self_ints):
        rows[i][i] = s
        if i + 1 < n:
            rows[i][i + 1] = rows[i + 1][i] = 1
    return ResolutionDatum(genera or (0,) * n, SymMatrix(rows), **kw)


@pytest.mark.parametrize("self_ints, genera, coeffs, gamma_sq", [
    ([-2], None, (Fraction(0),), Fraction(0)),
    ([-3], None, (Fraction(-1, 3),), Fraction(-1, 3)),
    ([-3, -2], None, (Fraction(-2, 5), Fraction(-1, 5)), Fraction(-2, 5)),
])
def test_discrepancy_known(self_ints, genera, coeffs, gamma_sq):
    result = discrepancy_solve(chain_datum(self_ints, genera))
    assert result.coefficients == coeffs
    assert result.gamma_sq == gamma_sq


def test_discrepancy_solves_adjunction_exactly():
    datum = chain_datum([-3, -2, -4], genera=(1, 0, 2))
    result = discrepancy_solve(datum)
    M = datum.intersection
    for i in range(3):
        lhs = sum(result.coefficients[j] * M[i, j] for j in range(3))
        assert lhs == 2 * datum.genera[i] - 2 - M[i, i]


def test_discrepancy_rejects_indefinite():
    with pytest.raises(NotNegativeDefinite):
        discrepancy_solve(chain_datum([-1, -1]))  # singular 2x2 chain


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_milnor_a_n(n):
    numbers = milnor_nu(chain_datum([-2] * n, rational=True))
    assert numbers.mu == n == numbers.nu


def test_milnor_single_minus_three():
    numbers = milnor_nu(chain_datum([-3], rational=True))
    assert numbers.mu == Fraction(2, 3)


def test_milnor_chain_three_two():
    numbers = milnor_nu(chain_datum([-3, -2], rational=True))
    assert numbers.mu == Fraction(8, 5)


def test_milnor_nu_differ_by_geometric_genus():
    datum = chain_datum([-3, -2], genera=(1, 0), p_g=2)
    numbers = milnor_nu(datum)
    assert numbers.mu - numbers.nu == 24


def test_resolution_datum_validation():
    with pytest.raises(ValueError):
        chain_datum([-2, 0])  # diagonal must be <= -1
    with pytest.raises(ValueError):
        ResolutionDatum((0, 0), SymMatrix([[-2, -1], [-1, -2]]))
    with pytest.raises(ValueError):
        ResolutionDatum((0, 0), SymMatrix([[-2, 0], [0, -2]]))  # disconnected
    with pytest.raises(ValueError):
        chain_datum([-2], rational=True, p_g=1)


@pytest.mark.parametrize("e, r, mu, mu_tilde", [
    (6, 1, Fraction(-5, 3), Fraction(-10, 3)),
    (3, 2, Fraction(2), Fraction(2, 3)),
    (2, 1, Fraction(1), Fraction(0)),
    (4, 1, Fraction(0), Fraction(-3, 2)),
])
def test_tame_cyclic_reference_values(e, r, mu, mu_tilde):
    numbers = tame_cyclic(CyclicSingularity(e, r))
    assert numbers.mu_closed == mu
    assert numbers.mu_tilde == mu_tilde
    assert numbers.mu_solver == mu


def test_tame_cyclic_chain_is_expansion():
    numbers = tame_cyclic(CyclicSingularity(7, 3))
    assert numbers.expansion.terms == (3, 2, 2)
    M = numbers.chain.intersection
    assert [int(M[i, i]) for i in range(3)] == [-3, -2, -2]


def coprime_pairs(max_e):
    for e in range(2, max_e + 1):
        for r in range(1, e):
            if gcd(e, r) == 1:
                yield e, r


def test_tame_cyclic_solver_agreement_small():
    # tame_cyclic raises internally on closed-form/solver mismatch
    for e, r in coprime_pairs(25):
        numbers = tame_cyclic(CyclicSingularity(e, r))
        assert numbers.mu_closed - numbers.mu_tilde == 2 * (1 - Fraction(1, e))


def test_tame_cyclic_reversal_duality():
    for e, r in coprime_pairs(40):
        r_dual = pow(r, -1, e)
        mu = tame_cyclic(CyclicSingularity(e, r)).mu_closed
        mu_dual = tame_cyclic(CyclicSingularity(e, r_dual)).mu_closed
        assert mu == mu_dual


def test_chain_discrepancy_closed_form_matches_solver():
    # the companion recursion must start P_0 = 0: on (5, 2) the shifted
    # initialization P_0 = 1 disagrees with the adjunction system
    exp = hj_expand(5, 2)
    solver = discrepancy_solve(tame_cyclic(CyclicSingularity(5, 2)).chain)
    assert cyclic_chain_discrepancy(exp) == solver.coefficients
    assert cyclic_chain_discrepancy(exp, "shifted") != solver.coefficients


@given(st.integers(2, 40))
def test_chain_discrepancy_closed_form_all_residues(e):
    for r in range(1, e):
        if gcd(e, r) != 1:
            continue
        exp = hj_expand(e, r)
        solver = discrepancy_solve(tame_cyclic(CyclicSingularity(e, r)).chain)
        assert cyclic_chain_discrepancy(exp) == solver.coefficients


@given(st.integers(0, 2**32 - 1))
def test_milnor_blowup_invariance(seed):
    rng = random.Random(seed)
    e = rng.randint(2, 20)
    r = rng.choice([x for x in range(1, e) if gcd(e, x) == 1])
    datum = tame_cyclic(CyclicSingularity(e, r)).chain
    reference = milnor_nu(datum)
    for _ in range(rng.randint(1, 3)):
        i = rng.randrange(datum.num_curves)
        neighbors = [
            j for j in range(datum.num_curves)
            if j != i and datum.intersection[i, j] >= 1
        ]
        if neighbors and rng.random() < 0.5:
            datum = blow_up(datum, i, rng.choice(neighbors))
        else:
            datum = blow_up(datum, i)
    blown = milnor_nu(datum)
    assert blown.mu == reference.mu
    assert blown.nu == reference.nu


@pytest.mark.parametrize("order, sw, mu", [
    (2, 1, Fraction(4)),
    (3, 2, Fraction(16, 3)),
    (5, 0, Fraction(16, 5)),
    (4, 3, Fraction(6)),
])
def test_weak_wild_milnor(order, sw, mu):
    assert weak_wild_milnor(WeakWildSingularity(order, sw)) == mu


def test_weak_wild_rejects_non_prime_power():
    with pytest.raises(ValueError):
        WeakWildSingularity(6, 0)
    with pytest.raises(ValueError):
        WeakWildSingularity(2, -1)


def test_weak_wild_jump_identity_small():
    for p in (2, 3, 5, 7):
        for s in range(1, 6):
            sing = WeakWildSingularity(p, (s - 1) * (p - 1))
            assert weak_wild_milnor(sing) == Fraction(4 * s * (p - 1), p)


def test_chart_p2_s1():
    chart = p_cyclic_wild_chart(2, 1, 1, 1)
    assert chart.alpha == 2
    assert chart.lam == 2
    assert chart.k[0] == chart.lam / Fraction(2) - 1 == 0
    assert chart.y == {2: Fraction(0)}
    assert chart.k == {0: Fraction(0), 1: Fraction(0), -1: Fraction(0)}
    assert chart.swan == 0


def test_chart_mu_expected():
    assert p_cyclic_wild_chart(3, 1, 1, 2).mu_expected == Fraction(8, 3)
    chart = p_cyclic_wild_chart(2, 2, 1, 1)
    assert chart.mu_expected == 4
    assert chart.swan == 1


def test_chart_node_value_is_lambda_over_p():
    for p, s, r1, r2 in [(3, 2, 1, 2), (5, 1, 2, 3), (7, 3, 4, 2)]:
        chart = p_cyclic_wild_chart(p, s, r1, r2)
        assert chart.k[0] == chart.lam / Fraction(p) - 1
        shifted = p_cyclic_wild_chart(p, s, r1, r2, convention="shifted")
        assert shifted.k[0] != shifted.lam / Fraction(p) - 1


def test_chart_rejects_bad_residues():
    with pytest.raises(ValueError):
        p_cyclic_wild_chart(3, 1, 3, 1)
    with pytest.raises(ValueError):
        p_cyclic_wild_chart(4, 1, 1, 1)  # not prime
    with pytest.raises(ValueError):
        p_cyclic_wild_chart(3, 1, 1, 1, convention="mystery")


def test_chart_probe_documents_open_mismatch():
    # with every printed coefficient zero the chart is crepant, so the
    # solver agrees on the coefficients for a (-2) node, yet the resulting
    # Milnor number is the number of curves, not the expected 4s(1 - 1/p):
    # the printed chart does not pin down the full intersection data
    chart = p_cyclic_wild_chart(2, 2, 1, 1)
    probe = probe_chart(chart, -2)
    assert probe.coefficients_match
    assert probe.mu_solver == 6
    assert chart.mu_expected == 4
    assert not probe.mu_matches_expected


def test_chart_resolution_shape():
    chart = p_cyclic_wild_chart(3, 1, 1, 2)
    datum = chart_resolution(chart, -2)
    # node + (alpha - 1) rational (-2)-curves + the two expansion chains
    expected = 1 + (chart.alpha - 1) + chart.plus_expansion.length + chart.minus_expansion.length
    assert datum.num_curves == expected
    assert len(chart_coefficient_vector(chart)) == expected


def test_search_chart_completions_contract():
    for p, s in [(2, 1), (3, 1)]:
        hits = search_chart_completions(p, s, node_range=range(-8, -1))
        for probe in hits:
            assert probe.mu_matches_expected
