"""Ordinals below omega^omega in Cantor normal form.

Enough ordinal arithmetic for front ranks: Trivial/Uniform fronts have finite
rank, the Schreier front has rank omega, and finite sequence-compositions
stay below omega^omega. Coefficients are stored most significant first;
comparison is lexicographic after padding.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass


@functools.total_ordering
@dataclass(frozen=True)
class OrdinalCNF:
    """c_k * omega^k + ... + c_1 * omega + c_0 as (c_k, ..., c_1, c_0)."""

    coefficients: tuple

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coefficients)
        if any(c < 0 for c in cs):
            raise ValueError("coefficients must be naturals")
        while len(cs) > 1 and cs[0] == 0:
            cs = cs[1:]
        if not cs:
            cs = (0,)
        object.__setattr__(self, "coefficients", cs)

    @classmethod
    def natural(cls, n: int) -> "OrdinalCNF":
        return cls((n,))

    @classmethod
    def omega(cls) -> "OrdinalCNF":
        return cls((1, 0))

    def _padded(self, width: int) -> tuple:
        return (0,) * (width - len(self.coefficients)) + self.coefficients

    def __lt__(self, other: "OrdinalCNF") -> bool:
        w = max(len(self.coefficients), len(other.coefficients))
        return self._padded(w) < other._padded(w)

    def __eq__(self, other) -> bool:
        return (isinstance(other, OrdinalCNF)
                and self.coefficients == other.coefficients)

    def __hash__(self) -> int:
        return hash(self.coefficients)

    @property
    def is_zero(self) -> bool:
        return self.coefficients == (0,)

    @property
    def is_finite(self) -> bool:
        return len(self.coefficients) == 1

    @property
    def is_limit(self) -> bool:
        return not self.is_zero and self.coefficients[-1] == 0

    def succ(self) -> "OrdinalCNF":
        return OrdinalCNF(self.coefficients[:-1] + (self.coefficients[-1] + 1,))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        k = len(self.coefficients) - 1
        for i, c in enumerate(self.coefficients):
            p = k - i
            if c == 0:
                continue
            if p == 0:
                terms.append(str(c))
            elif p == 1:
                terms.append("omega" if c == 1 else f"omega*{c}")
            else:
                terms.append(f"omega^{p}" if c == 1 else f"omega^{p}*{c}")
        return " + ".join(terms)

    def __repr__(self) -> str:
        return f"OrdinalCNF({self.coefficients!r})"


ZERO = OrdinalCNF.natural(0)
OMEGA_ORD = OrdinalCNF.omega()
