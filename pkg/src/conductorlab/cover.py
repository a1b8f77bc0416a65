"""Base-change conductors of Jacobians with potential good reduction,
computed from Galois branch data on the special fiber of the good model.

A curve of genus ``g`` acquires good reduction after a Galois extension of
degree ``e``; the Galois group acts on the special fiber of the good model,
a smooth curve of genus ``g`` over the residue field, with quotient of genus
``g_bar``.  The quotient model is singular exactly at the images of points
with non-trivial stabilizer, and the conductor is assembled from those local
singularities.  In both regimes handled here ``a = g_bar``, ``t = 0`` and so
``u = g - g_bar``.

Tame regime.  Each branch orbit of size ``d < e`` produces a cyclic quotient
point with data ``(e_Q = e/d, r_Q)``, and

    c = u/2 + (1/12) sum_Q mu~_Q
      = u/2 + (1/12) sum_Q ( mu_Q - 2 (1 - 1/e_Q) ),

with ``mu_Q`` and ``mu~_Q`` from :mod:`conductorlab.singularity`; both forms
are computed and compared.  The input is gated by the Riemann-Hurwitz
identity ``2g - 2 = e (2 g_bar - 2) + sum_d m_d (e - d)``.

Weakly wild regime.  The extension has degree ``p^r`` and the action on the
special fiber is weakly ramified; points of type ``i`` (stabilizer order
``p^{r-i}``) carry local extension Swan conductors ``sw_{i,j}``.  Writing
``chi_bar = 2 - 2 g_bar``, ``A = sum_i m_i (1 - p^{i-r})``,
``B = sum_{i,j} sw_{i,j} p^{i-r}``, and ``sw`` for the Swan conductor of the
base extension, the Swan conductor of the curve is recovered from the
quotient data by

    Sw(C) = 2 B - sw (chi_bar - 2 A),

and the conductor is ``c_tame = u/2``, ``c_wild = Sw(C)/4``.  As a
cross-check, the full assembly

    -12 c = 2 chi (1 - 1/e) + 2 (chi/e) sw + (chi - chi_bar - Sw(C)) - mu,
    mu = 4 A + 4 B,

is evaluated and must reproduce ``c_tame + c_wild``; here the first group of
terms is the discrepancy pairing of the quotient map, the middle group its
Artin conductor, and ``mu`` the total Milnor number of the quotient's
singularities.  The gate is the weakly ramified Riemann-Hurwitz identity
``2g - 2 = p^r (2 g_bar - 2) + sum_i m_i p^i (2 p^{r-i} - 2)``, and ordinary
special fibers can further be screened with the Deuring-Shafarevich identity
``gamma - 1 = |G| (gamma_bar - 1) + sum (|G| - |O|)`` over small orbits
(an ordinary fiber forces the action to be weakly ramified).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diagnostics import Diagnostic
from .exactmath import as_rational
from .singularity import CyclicSingularity, tame_cyclic


class RHMismatch(ValueError):
    """Input genera and branch data violate Riemann-Hurwitz."""


class NegativeSwan(ValueError):
    """The recovered Sw(C) is negative: the input data is inconsistent."""


class MissingTerm(ValueError):
    """A required named term was not supplied to the formula evaluator."""


class MissingOrdinaryData(ValueError):
    """Deuring-Shafarevich validation needs p-rank and orbit data."""


class NoFullStabilizerPoint(ValueError):
    """Weakly wild data must contain a point with full stabilizer."""


@dataclass(frozen=True)
class TameBranchLocus:
    """``count`` branch orbits of size ``orbit_size``, each producing a
    cyclic quotient point with the given numerical data."""

    orbit_size: int
    count: int
    singularity: CyclicSingularity

    def __post_init__(self):
        if self.orbit_size < 1:
            raise ValueError("orbit size must be >= 1")
        if self.count < 1:
            raise ValueError("count must be >= 1")


@dataclass(frozen=True)
class TameCoverData:
    e: int
    genus: int
    quotient_genus: int
    branch: tuple[TameBranchLocus, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "branch", tuple(self.branch))
        if self.e < 2:
            raise ValueError("degree must be >= 2")
        if self.genus < 0 or self.quotient_genus < 0:
            raise ValueError("genera must be non-negative")
        for locus in self.branch:
            if self.e % locus.orbit_size != 0:
                raise ValueError(
                    f"orbit size {locus.orbit_size} does not divide e = {self.e}"
                )
            e_q = self.e // locus.orbit_size
            if e_q < 2:
                raise ValueError("orbits of full size are unramified, not branch data")
            if locus.singularity.e != e_q:
                raise ValueError(
                    f"singularity order {locus.singularity.e} != e/d = {e_q}"
                )


@dataclass(frozen=True)
class WildBranchLocus:
    """All singular points of one type: ``type_index = i`` means stabilizer
    order ``p^{r-i}``; ``swan_locals[j]`` is the Swan conductor of the local
    extension at the j-th such point.  For a point with full stabilizer the
    local extension is the base extension itself, so its entry should equal
    the extension Swan conductor."""

    type_index: int
    swan_locals: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "swan_locals", tuple(self.swan_locals))
        if self.type_index < 0:
            raise ValueError("type index must be >= 0")
        if not self.swan_locals:
            raise ValueError("a branch record needs at least one point")
        if any(sw < 0 for sw in self.swan_locals):
            raise ValueError("local Swan conductors are non-negative")

    @property
    def count(self) -> int:
        return len(self.swan_locals)


@dataclass(frozen=True)
class OrdinaryData:
    """p-ranks and small-orbit sizes for the Deuring-Shafarevich check."""

    p_rank: int
    quotient_p_rank: int
    small_orbit_sizes: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "small_orbit_sizes", tuple(self.small_orbit_sizes))
        if self.p_rank < 0 or self.quotient_p_rank < 0:
            raise ValueError("p-ranks are non-negative")


@dataclass(frozen=True)
class WildCoverData:
    p: int
    r: int
    genus: int
    quotient_genus: int
    sw_extension: int
    branch: tuple[WildBranchLocus, ...] = ()
    ordinary: OrdinaryData | None = None

    def __post_init__(self):
        object.__setattr__(self, "branch", tuple(self.branch))
        if self.p < 2 or any(self.p % q == 0 for q in range(2, self.p)):
            raise ValueError(f"{self.p} is not prime")
        if self.r < 1:
            raise ValueError("extension degree exponent must be >= 1")
        if self.genus < 0 or self.quotient_genus < 0:
            raise ValueError("genera must be non-negative")
        if self.sw_extension < 0:
            raise ValueError("extension Swan conductor is non-negative")
        for locus in self.branch:
            if locus.type_index >= self.r:
                raise ValueError(
                    f"type {locus.type_index} has trivial stabilizer for r = {self.r}"
                )

    @property
    def degree(self) -> int:
        return self.p ** self.r

    @property
    def chi(self) -> int:
        return 2 - 2 * self.genus

    @property
    def chi_bar(self) -> int:
        return 2 - 2 * self.quotient_genus


@dataclass(frozen=True)
class ReportTerm:
    name: str
    value: Fraction
    note: str


@dataclass(frozen=True)
class ConductorReport:
    c_tame: Fraction
    c_wild: Fraction
    c_total: Fraction
    unipotent_rank: int
    terms: tuple[ReportTerm, ...]

    def __post_init__(self):
        if self.c_total != self.c_tame + self.c_wild:
            raise ValueError("c_total must equal c_tame + c_wild")
        if self.c_tame < 0 or self.c_wild < 0:
            raise ValueError("conductor parts must be non-negative")

    def term(self, name: str) -> Fraction:
        for t in self.terms:
            if t.name == name:
                return t.value
        raise KeyError(name)


def rh_validate(data) -> list[Diagnostic]:
    """Check the applicable Riemann-Hurwitz identity exactly.

    Empty list iff the supplied genera and branch data are consistent.
    """
    if isinstance(data, TameCoverData):
        lhs = 2 * data.genus - 2
        rhs = data.e * (2 * data.quotient_genus - 2)
        rhs += sum(
            locus.count * (data.e - locus.orbit_size) for locus in data.branch
        )
        if lhs != rhs:
            return [Diagnostic(
                "RHMismatch",
                f"2g - 2 = {lhs} but the cover side gives {rhs}",
            )]
        return []
    if isinstance(data, WildCoverData):
        lhs = 2 * data.genus - 2
        rhs = data.degree * (2 * data.quotient_genus - 2)
        for locus in data.branch:
            stab = data.p ** (data.r - locus.type_index)
            orbit = data.p ** locus.type_index
            rhs += locus.count * orbit * (2 * stab - 2)
        if lhs != rhs:
            return [Diagnostic(
                "RHMismatch",
                f"2g - 2 = {lhs} but the weakly ramified cover side gives {rhs}",
            )]
        return []
    raise TypeError(f"unsupported cover data {type(data).__name__}")


def ds_validate(data: WildCoverData) -> list[Diagnostic]:
    """Check the Deuring-Shafarevich identity on the supplied p-rank data."""
    if data.ordinary is None:
        raise MissingOrdinaryData("supply p-ranks and small-orbit sizes")
    out: list[Diagnostic] = []
    order = data.degree
    for size in data.ordinary.small_orbit_sizes:
        if size < 1 or size >= order or order % size != 0:
            out.append(Diagnostic(
                "BadOrbitSize",
                f"small orbit size {size} must properly divide |G| = {order}",
            ))
    lhs = data.ordinary.p_rank - 1
    rhs = order * (data.ordinary.quotient_p_rank - 1)
    rhs += sum(order - size for size in data.ordinary.small_orbit_sizes)
    if lhs != rhs:
        out.append(Diagnostic(
            "DSMismatch",
            f"gamma - 1 = {lhs} but the orbit side gives {rhs}",
        ))
    return out


def ordinary_implies_weakly_ramified(data: WildCoverData) -> bool:
    """True when the supplied p-rank equals the genus: an ordinary special
    fiber, which forces the action to be weakly ramified."""
    if data.ordinary is None:
        raise MissingOrdinaryData("supply p-ranks first")
    return data.ordinary.p_rank == data.genus


def bcc_tame_good(data: TameCoverData) -> ConductorReport:
    """Base-change conductor for tame potential good reduction.

    Computes the conductor through the per-point ``mu~`` summands and again
    through the Milnor numbers; the two must agree exactly.  ``c_wild = 0``
    in this regime.
    """
    problems = rh_validate(data)
    if problems:
        raise RHMismatch("; ".join(str(d) for d in problems))
    u = data.genus - data.quotient_genus
    if u < 0:
        raise RHMismatch(f"quotient genus exceeds genus: u = {u}")

    sum_mu_tilde = Fraction(0)
    sum_mu_corrected = Fraction(0)
    for locus in data.branch:
        numbers = tame_cyclic(locus.singularity)
        sum_mu_tilde += locus.count * numbers.mu_tilde
        correction = 2 * (1 - Fraction(1, locus.singularity.e))
        sum_mu_corrected += locus.count * (numbers.mu_closed - correction)
    c_from_tilde = Fraction(u, 2) + sum_mu_tilde / 12
    c_from_mu = Fraction(u, 2) + sum_mu_corrected / 12
    if c_from_tilde != c_from_mu:
        raise AssertionError("the mu~ and mu routes disagree")

    terms = (
        ReportTerm("u", Fraction(u), "unipotent rank g - g_bar (a = g_bar, t = 0 "
                                     "for potential good reduction)"),
        ReportTerm("sum_mu_tilde", sum_mu_tilde,
                   "sum over singular points of the quotient of mu~"),
        ReportTerm("c_from_mu_tilde", c_from_tilde, "u/2 + (1/12) sum mu~"),
        ReportTerm("c_from_mu", c_from_mu, "u/2 + (1/12) sum (mu - 2(1 - 1/e_Q))"),
    )
    return ConductorReport(
        c_tame=c_from_tilde,
        c_wild=Fraction(0),
        c_total=c_from_tilde,
        unipotent_rank=u,
        terms=terms,
    )


@dataclass(frozen=True)
class CurveSwan:
    """Swan conductor of the curve recovered from quotient data.  It is an
    integer for genuine inputs; integrality is reported, not enforced."""

    value: Fraction
    integral: bool


def _branch_sums(data: WildCoverData) -> tuple[Fraction, Fraction]:
    """``A = sum_i m_i (1 - p^{i-r})`` and ``B = sum_{i,j} sw_{i,j} p^{i-r}``."""
    a = Fraction(0)
    b = Fraction(0)
    for locus in data.branch:
        stab = data.p ** (data.r - locus.type_index)
        a += locus.count * (1 - Fraction(1, stab))
        b += Fraction(sum(locus.swan_locals), stab)
    return a, b


def swan_of_curve(data: WildCoverData) -> CurveSwan:
    """Recover ``Sw(C) = 2B - sw (chi_bar - 2A)`` from the quotient data.

    Raises :class:`RHMismatch` when the gate identity fails and
    :class:`NegativeSwan` when the recovered value is negative.
    """
    problems = rh_validate(data)
    if problems:
        raise RHMismatch("; ".join(str(d) for d in problems))
    a, b = _branch_sums(data)
    value = 2 * b - data.sw_extension * (data.chi_bar - 2 * a)
    if value < 0:
        raise NegativeSwan(f"recovered Sw(C) = {value} < 0")
    return CurveSwan(value=value, integral=(value.denominator == 1))


def bcc_wild_weak(data: WildCoverData) -> ConductorReport:
    """Base-change conductor for weakly wild potential good reduction:
    ``c_tame = u/2`` and ``c_wild = Sw(C)/4``.

    The report also carries the full ``-12c`` assembly (discrepancy pairing,
    quotient Artin conductor, total Milnor number); it must reproduce the
    direct answer and a disagreement raises.
    """
    problems = rh_validate(data)
    if problems:
        raise RHMismatch("; ".join(str(d) for d in problems))
    if not any(locus.type_index == 0 for locus in data.branch):
        raise NoFullStabilizerPoint(
            "a weakly ramified action always fixes a point; data with no "
            "type-0 record cannot occur"
        )
    u = data.genus - data.quotient_genus
    if u < 0:
        raise RHMismatch(f"quotient genus exceeds genus: u = {u}")

    swan_curve = swan_of_curve(data)
    c_tame = Fraction(u, 2)
    c_wild = swan_curve.value / 4

    e = data.degree
    chi, chi_bar = data.chi, data.chi_bar
    a, b = _branch_sums(data)
    mu = 4 * a + 4 * b
    pairing_term = 2 * chi * (1 - Fraction(1, e)) + Fraction(2 * chi, e) * data.sw_extension
    artin_term = chi - chi_bar - swan_curve.value
    minus_twelve_c = pairing_term + artin_term - mu
    assembled = -minus_twelve_c / 12
    if assembled != c_tame + c_wild:
        raise AssertionError(
            f"assembly gives {assembled}, direct formula gives {c_tame + c_wild}"
        )

    terms = (
        ReportTerm("u", Fraction(u), "unipotent rank g - g_bar"),
        ReportTerm("swan_curve", swan_curve.value,
                   "Sw(C) = 2B - sw (chi_bar - 2A)"
                   + ("" if swan_curve.integral else " (non-integral: suspicious input)")),
        ReportTerm("milnor_sum", mu, "total Milnor number 4A + 4B of the quotient"),
        ReportTerm("pairing_term", pairing_term,
                   "discrepancy pairing 2 chi (1 - 1/e) + 2 (chi/e) sw"),
        ReportTerm("artin_term", Fraction(artin_term),
                   "quotient Artin conductor chi - chi_bar - Sw(C)"),
        ReportTerm("minus_twelve_c", minus_twelve_c,
                   "pairing + artin - milnor_sum; equals -12 c"),
    )
    return ConductorReport(
        c_tame=c_tame,
        c_wild=c_wild,
        c_total=c_tame + c_wild,
        unipotent_rank=u,
        terms=terms,
    )


_VARIANT_KEYS = {
    1: ("e", "gamma_sq", "gamma_dot_omega", "art_prime", "art"),
    2: ("e", "gamma_sq", "gamma_dot_omega", "art_prime", "art", "nu"),
    3: ("e", "gamma_dot_omega", "art", "mu"),
}


def bcc_formula_eval(variant: int, terms) -> Fraction:
    """Evaluate one of the three general conductor formulas on named terms.

    * variant 1 (both models regular):
      ``-12c = (gamma_sq + 2 gamma_dot_omega - art_prime)/e + art``
    * variant 2 (normal base, regular cover):
      ``-12c = 2 (gamma_sq + gamma_dot_omega - art_prime)/e + art - nu``
    * variant 3 (rational singularities, smooth cover):
      ``-12c = 2 gamma_dot_omega/e + art - mu``

    ``terms`` maps the names above to exact rationals (ints and "num/den"
    strings accepted).  Missing required names raise :class:`MissingTerm`.
    """
    if variant not in _VARIANT_KEYS:
        raise ValueError(f"variant must be 1, 2 or 3, got {variant!r}")
    needed = _VARIANT_KEYS[variant]
    values = {}
    for key in needed:
        if key not in terms:
            raise MissingTerm(f"variant {variant} needs term {key!r}")
        values[key] = as_rational(terms[key])
    e = values["e"]
    if e <= 0:
        raise ValueError("degree term e must be positive")
    if variant == 1:
        minus_twelve_c = (
            values["gamma_sq"] + 2 * values["gamma_dot_omega"] - values["art_prime"]
        ) / e + values["art"]
    elif variant == 2:
        minus_twelve_c = 2 * (
            values["gamma_sq"] + values["gamma_dot_omega"] - values["art_prime"]
        ) / e + values["art"] - values["nu"]
    else:
        minus_twelve_c = 2 * values["gamma_dot_omega"] / e + values["art"] - values["mu"]
    return -minus_twelve_c / 12


def elliptic_nu_p3(c_tame_value) -> Fraction:
    """Discrepancy number of the quotient point of an additive elliptic curve
    acquiring good reduction in residue characteristic 3: ``12 c_tame - 2``.

    The four additive-and-wild fiber types have c_tame in {1/6, 5/6, 1/3,
    2/3}, giving 0, 8, 2 and 6; other inputs are evaluated as given.
    """
    return 12 * as_rational(c_tame_value) - 2
