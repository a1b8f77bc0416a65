"""Exact rational arithmetic, descending continued fractions, and exact
symmetric linear algebra.

This module is the numeric substrate for the whole package.  All values are
``fractions.Fraction`` (arbitrary precision, always in lowest terms, positive
denominator); floating point is banned repo-wide because the quantities of
interest are exact fractions such as ``-5/3``.

Descending continued fractions
------------------------------

For coprime integers ``e > r > 0`` the descending (negative-regular)
continued fraction expansion writes

    e/r = a_1 - 1/(a_2 - 1/(... - 1/a_l)),     all a_i >= 2.

The expansion is produced by the ceiling recursion ``a = ceil(e/r)``,
``(e, r) <- (r, a*r - e)``, which is tie-free since ``gcd(e, r) = 1``.
Alongside the terms we return the strictly descending remainder sequence
``r_0 = e > r_1 = r > ... > r_l = 1`` satisfying ``r_{i+1} = a_i r_i -
r_{i-1}``; it reappears in the singularity module as the coefficient data of
exceptional chains.

Exact symmetric solving
-----------------------

``solve_definite`` solves ``M x = b`` for a symmetric negative-definite ``M``
by fraction-free-in-spirit LDL^T elimination: a symmetric matrix is negative
definite iff every pivot produced by elimination without row exchanges is
negative (the pivots are ratios of consecutive leading principal minors, so
this is the alternating-minors test).  ``check_neg_semidefinite`` performs
the semidefinite variant by Schur-complement reduction with diagonal pivot
search, and reports the exact rank and kernel.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

Rational = Fraction


class DimensionMismatch(ValueError):
    """Vector/matrix dimensions are incompatible."""


class SingularMatrix(ValueError):
    """Definite-mode solve received a singular or indefinite matrix."""


def as_rational(value) -> Fraction:
    """Coerce an int, Fraction or ``"num/den"`` string to an exact Fraction.

    Floats are rejected: accepting them would silently launder binary
    rounding error into an "exact" computation.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


@dataclass(frozen=True)
class HJExpansion:
    """Descending continued fraction expansion of ``numerator/residue``.

    ``terms`` are the partial quotients ``a_1, ..., a_l`` (all >= 2) and
    ``remainders`` the sequence ``r_0 = numerator > r_1 = residue > ... >
    r_l = 1``.
    """

    numerator: int
    residue: int
    terms: tuple[int, ...]
    remainders: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.terms)

    def value(self) -> Fraction:
        return Fraction(self.numerator, self.residue)


def hj_expand(e: int, r: int) -> HJExpansion:
    """Expand ``e/r`` as a descending continued fraction.

    Requires ``e >= 2``, ``0 < r < e`` and ``gcd(e, r) = 1``.
    """
    if e < 2:
        raise ValueError(f"numerator must be >= 2, got {e}")
    if not 0 < r < e:
        raise ValueError(f"residue must satisfy 0 < r < e, got r={r}, e={e}")
    if gcd(e, r) != 1:
        raise ValueError(f"({e}, {r}) are not coprime")

    terms: list[int] = []
    remainders = [e, r]
    num, den = e, r
    while den > 1:
        a = -(-num // den)  # ceil(num/den)
        terms.append(a)
        num, den = den, a * den - num
        remainders.append(den)
    terms.append(num)  # final step: num/1
    # the loop records the remainder after each step; the final append above
    # consumed the pair (num, 1), whose successor remainder is 0 and is not kept
    expansion = HJExpansion(e, r, tuple(terms), tuple(remainders[: len(terms) + 1]))
    if expansion.remainders[-1] != 1 or any(a < 2 for a in expansion.terms):
        raise AssertionError(f"continued fraction recursion broke on ({e}, {r})")
    return expansion


def hj_eval(terms) -> Fraction:
    """Exact value of the descending continued fraction ``[a_1, ..., a_l]``.

    Inverse of :func:`hj_expand`: ``hj_eval(hj_expand(e, r).terms) == e/r``.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("empty continued fraction")
    if any(a < 2 for a in terms):
        raise ValueError(f"all terms must be >= 2, got {terms}")
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        value = a - 1 / value
    return value


class SymMatrix:
    """An immutable symmetric matrix of exact rationals."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        converted = tuple(tuple(as_rational(x) for x in row) for row in rows)
        n = len(converted)
        if any(len(row) != n for row in converted):
            raise DimensionMismatch("matrix is not square")
        for i in range(n):
            for j in range(i):
                if converted[i][j] != converted[j][i]:
                    raise ValueError(f"matrix not symmetric at ({i}, {j})")
        object.__setattr__(self, "rows", converted)

    def __setattr__(self, name, value):
        raise AttributeError("SymMatrix is immutable")

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"SymMatrix({[[str(x) for x in row] for row in self.rows]})"

    def apply(self, vector) -> tuple[Fraction, ...]:
        """Matrix-vector product ``M v``."""
        v = _as_vector(vector, self.dimension)
        return tuple(sum(row[j] * v[j] for j in range(self.dimension)) for row in self.rows)

    def quadratic_form(self, vector) -> Fraction:
        """``v^T M v``."""
        v = _as_vector(vector, self.dimension)
        return sum(v[i] * x for i, x in enumerate(self.apply(v)))


def _as_vector(vector, n: int) -> tuple[Fraction, ...]:
    v = tuple(as_rational(x) for x in vector)
    if len(v) != n:
        raise DimensionMismatch(f"vector has length {len(v)}, expected {n}")
    return v


@dataclass(frozen=True)
class SemidefiniteReport:
    """Result of the negative-semidefiniteness check.

    ``zariski_ok`` is the single flag downstream graph validation cares
    about: the form is negative semidefinite with one-dimensional kernel,
    which is what the intersection form of a connected degeneration must
    satisfy (kernel spanned by the multiplicity vector).
    """

    rank: int
    kernel_basis: tuple[tuple[Fraction, ...], ...]
    negative_semidefinite: bool

    @property
    def zariski_ok(self) -> bool:
        return self.negative_semidefinite and len(self.kernel_basis) == 1


def solve_definite(M: SymMatrix, b, sign: str = "negative-definite"):
    """Solve ``M x = b`` exactly for negative-definite symmetric ``M``.

    With ``sign="negative-definite"`` (the default) the factorization
    verifies definiteness as it goes and raises :class:`SingularMatrix` on a
    zero or positive pivot.  With ``sign="negative-semidefinite-rank-check"``
    no solve is performed; the exact rank and kernel basis are returned
    instead (``b`` is ignored and may be ``None``).
    """
    if sign == "negative-semidefinite-rank-check":
        return check_neg_semidefinite(M)
    if sign != "negative-definite":
        raise ValueError(f"unknown mode {sign!r}")

    n = M.dimension
    rhs = list(_as_vector(b, n))
    a = [list(row) for row in M.rows]

    # Elimination without pivoting: legal precisely when all leading
    # principal minors are nonzero, which definiteness guarantees.
    for k in range(n):
        pivot = a[k][k]
        if pivot >= 0:
            raise SingularMatrix(
                f"pivot {k} is {pivot}; matrix is not negative definite"
            )
        for i in range(k + 1, n):
            factor = a[i][k] / pivot
            if factor == 0:
                continue
            for j in range(k, n):
                a[i][j] -= factor * a[k][j]
            rhs[i] -= factor * rhs[k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = rhs[i] - sum(a[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / a[i][i]
    solution = tuple(x)
    if M.apply(solution) != _as_vector(b, n):
        raise AssertionError("exact solve produced a nonzero residual")
    return solution


def check_neg_semidefinite(M: SymMatrix) -> SemidefiniteReport:
    """Exact rank, kernel basis, and negative-semidefiniteness of ``M``.

    Never raises: this is a diagnostic.  Semidefiniteness is decided by
    Schur-complement reduction: repeatedly pick a nonzero diagonal entry of
    the active block; it must be negative; when no nonzero diagonal entry
    remains, the block must be identically zero (a symmetric matrix with a
    zero diagonal entry but nonzero row is indefinite).
    """
    n = M.dimension
    semidefinite = _neg_semidefinite(M)
    rank, kernel = _rank_and_kernel(M)
    return SemidefiniteReport(rank, kernel, semidefinite)


def _neg_semidefinite(M: SymMatrix) -> bool:
    n = M.dimension
    a = [list(row) for row in M.rows]
    active = list(range(n))
    while active:
        pivot_idx = next((i for i in active if a[i][i] != 0), None)
        if pivot_idx is None:
            return all(a[i][j] == 0 for i in active for j in active)
        pivot = a[pivot_idx][pivot_idx]
        if pivot > 0:
            return False
        active.remove(pivot_idx)
        for i in active:
            if a[i][pivot_idx] == 0:
                continue
            factor = a[i][pivot_idx] / pivot
            for j in active:
                a[i][j] -= factor * a[pivot_idx][j]
    return True


def _rank_and_kernel(M: SymMatrix):
    n = M.dimension
    a = [list(row) for row in M.rows]
    pivot_cols: list[int] = []
    row = 0
    for col in range(n):
        pivot_row = next((r for r in range(row, n) if a[r][col] != 0), None)
        if pivot_row is None:
            continue
        a[row], a[pivot_row] = a[pivot_row], a[row]
        inv = 1 / a[row][col]
        a[row] = [x * inv for x in a[row]]
        for r in range(n):
            if r != row and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[row])]
        pivot_cols.append(col)
        row += 1
        if row == n:
            break
    rank = len(pivot_cols)
    free_cols = [c for c in range(n) if c not in pivot_cols]
    kernel: list[tuple[Fraction, ...]] = []
    for free in free_cols:
        vec = [Fraction(0)] * n
        vec[free] = Fraction(1)
        for r, col in enumerate(pivot_cols):
            vec[col] = -a[r][free]
        kernel.append(tuple(vec))
    for vec in kernel:
        if any(x != 0 for x in M.apply(vec)):
            raise AssertionError("kernel vector fails M v = 0 exactly")
    return rank, tuple(kernel)
