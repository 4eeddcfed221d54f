"""Desk-scale toolkit for well- and better-quasi-orders.

Quasi-order algebra, fronts with ordinal ranks, super-sequences, powerset
comparison games, finite partition extraction, and generalised shifts. All
infinitary notions are handled through explicit finite windows; reports echo
the window they inspected so that results are reproducible and honestly
scoped.
"""

__version__ = "0.1.0"
