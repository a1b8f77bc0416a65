"""Exact combinatorial invariants of degenerating one-parameter families of curves.

Everything in this package computes with arbitrary-precision rationals; no
floating point is used anywhere.  The main entry points are

* :mod:`conductorlab.dualgraph` -- labelled dual graphs of normal-crossings
  degenerations and their numerical invariants,
* :mod:`conductorlab.tame` -- the tame part of the base-change conductor of a
  Jacobian, computed by two independent routes,
* :mod:`conductorlab.singularity` -- Milnor and discrepancy numbers of normal
  surface singularities from resolution data,
* :mod:`conductorlab.ramification` -- Swan and Artin conductors from
  ramification filtrations,
* :mod:`conductorlab.cover` -- conductor engines for curves with potential
  good reduction, driven by Galois branch data,
* :mod:`conductorlab.cli` -- the ``conductor-lab`` command line tool.
"""

__version__ = "0.1.0"
