"""Swan and Artin conductors from lower-numbering ramification filtrations.

A filtration is given by the chain of group orders ``|G_0| >= |G_1| >= ...``
only; every formula in scope depends on nothing else.  For a representation
``V`` with fixed-space dimensions ``dim V^{G_i}``,

    Sw(V)  = sum_{i>=1} dim(V / V^{G_i}) / [G_0 : G_i],
    Art(V) = dim V - dim V^{G_0} + Sw(V),

and for the extension itself (the regular representation),

    sw = sum_{i>=1} (|G_i| - 1),

with different exponent ``|G_0| - 1 + sw``.  In particular ``sw = 0`` iff
``G_1`` is trivial, i.e. iff the extension is tame.

Order-p extensions are often handed around by a jump parameter ``s``
normalized so that the extension's Swan conductor is ``(s - 1)(p - 1)``;
:func:`p_cyclic_jump_swan` evaluates that convention.  It intentionally is a
separate operation from :func:`swan_extension` (where a filtration with
``G_1 = ... = G_s`` of order p gives ``s (p - 1)``): the two parameters
count jumps differently and callers must choose explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class InconsistentDims(ValueError):
    """Representation data does not fit the filtration."""


@dataclass(frozen=True)
class RamFiltration:
    """Orders ``[|G_0|, |G_1|, ..., |G_N|]``; groups beyond index N are
    trivial.  Each order divides the previous one.  If the residue
    characteristic ``p`` is supplied, ``|G_1|`` must be a p-power and
    ``|G_0|/|G_1|`` prime to p."""

    sizes: tuple[int, ...]
    residue_char: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if not self.sizes:
            raise ValueError("filtration needs at least |G_0|")
        if any(s < 1 for s in self.sizes):
            raise ValueError("group orders are positive")
        for prev, cur in zip(self.sizes, self.sizes[1:]):
            if cur > prev or prev % cur != 0:
                raise ValueError(
                    f"orders must be weakly decreasing and divide: {prev} -> {cur}"
                )
        p = self.residue_char
        if p is not None:
            wild = self.order(1)
            while wild % p == 0:
                wild //= p
            if wild != 1:
                raise ValueError(f"|G_1| = {self.order(1)} is not a power of p = {p}")
            if (self.sizes[0] // self.order(1)) % p == 0:
                raise ValueError("|G_0|/|G_1| must be prime to p")

    def order(self, i: int) -> int:
        """``|G_i|``, with the trivial-group tail implied."""
        return self.sizes[i] if i < len(self.sizes) else 1

    @property
    def ramification_index(self) -> int:
        return self.sizes[0]


@dataclass(frozen=True)
class RepFixedDims:
    """Dimension data of a representation: ``fixed_dims[i] = dim V^{G_i}``,
    one entry per filtration step."""

    dim: int
    fixed_dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "fixed_dims", tuple(self.fixed_dims))
        if self.dim < 0:
            raise ValueError("dimension must be non-negative")
        if any(d < 0 or d > self.dim for d in self.fixed_dims):
            raise ValueError("fixed-space dimensions must lie in [0, dim]")
        for prev, cur in zip(self.fixed_dims, self.fixed_dims[1:]):
            if cur < prev:
                raise ValueError("fixed-space dimensions must be weakly increasing")


@dataclass(frozen=True)
class SwanArtin:
    swan: Fraction
    artin: Fraction


def swan_artin_rep(filt: RamFiltration, rep: RepFixedDims) -> SwanArtin:
    """Swan and Artin conductors of a representation with the given
    fixed-space dimensions."""
    if len(rep.fixed_dims) != len(filt.sizes):
        raise InconsistentDims(
            f"{len(rep.fixed_dims)} fixed dimensions for a filtration of "
            f"length {len(filt.sizes)}"
        )
    e = filt.ramification_index
    swan = Fraction(0)
    for i in range(1, len(filt.sizes)):
        index = Fraction(e, filt.order(i))  # [G_0 : G_i]
        swan += Fraction(rep.dim - rep.fixed_dims[i]) / index
    artin = rep.dim - rep.fixed_dims[0] + swan
    return SwanArtin(swan=swan, artin=artin)


@dataclass(frozen=True)
class ExtensionConductor:
    sw: int
    different_exponent: int


def swan_extension(filt: RamFiltration) -> ExtensionConductor:
    """Swan conductor ``sum_{i>=1}(|G_i| - 1)`` of the extension and the
    exponent ``e - 1 + sw`` of its different."""
    sw = sum(filt.order(i) - 1 for i in range(1, len(filt.sizes)))
    return ExtensionConductor(sw=sw, different_exponent=filt.ramification_index - 1 + sw)


def regular_representation(filt: RamFiltration) -> RepFixedDims:
    """The regular representation: ``dim = |G_0|`` and
    ``dim V^{G_i} = [G_0 : G_i]``."""
    e = filt.ramification_index
    return RepFixedDims(dim=e, fixed_dims=tuple(e // filt.order(i) for i in range(len(filt.sizes))))


def p_cyclic_jump_swan(p: int, s: int) -> int:
    """Extension Swan conductor ``(s - 1)(p - 1)`` of an order-p extension
    handed around by its jump parameter ``s`` (see the module docstring for
    how this differs from a lower-numbering jump)."""
    if s < 1:
        raise ValueError("jump parameter must be >= 1")
    return (s - 1) * (p - 1)
