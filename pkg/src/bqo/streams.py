"""Infinite subsets of omega as total increasing enumerations.

An InfSet is a strictly increasing enumeration n -> x_n with a materialised
prefix cache, never a bare membership predicate: that way density arguments
terminate with explicit moduli. The cache fill is idempotent (each index
computes to the same value), so concurrent reads are safe.
"""
from __future__ import annotations

from typing import Callable, Optional, Sequence


class InfSet:
    """Infinite subset of the naturals, presented by its enumeration."""

    __slots__ = ("_gen", "_cache", "name")

    def __init__(self, gen: Callable[[int], int], name: str = "set"):
        self._gen = gen
        self._cache: list = []
        self.name = name

    def nth(self, i: int) -> int:
        if i < 0:
            raise IndexError("negative index into an enumeration")
        while len(self._cache) <= i:
            k = len(self._cache)
            v = int(self._gen(k))
            if v < 0:
                raise ValueError(f"{self.name}: enumeration left the naturals")
            if self._cache and v <= self._cache[-1]:
                raise ValueError(
                    f"{self.name}: enumeration not strictly increasing "
                    f"at index {k} ({self._cache[-1]} then {v})")
            self._cache.append(v)
        return self._cache[i]

    def prefix(self, k: int) -> tuple:
        return tuple(self.nth(i) for i in range(k))

    def upto(self, bound: int) -> tuple:
        """All elements strictly below the bound."""
        out = []
        i = 0
        while True:
            v = self.nth(i)
            if v >= bound:
                break
            out.append(v)
            i += 1
        return tuple(out)

    def contains(self, x: int) -> bool:
        if x < 0:
            return False
        i = 0
        while True:
            v = self.nth(i)
            if v == x:
                return True
            if v > x:
                return False
            i += 1

    def after(self, n: int) -> "InfSet":
        """The tail {x in this set | x > n}."""
        def gen(i: int, n=n) -> int:
            j = 0
            while self.nth(j) <= n:
                j += 1
            return self.nth(j + i)
        return InfSet(gen, name=f"{self.name}/{n}")

    def shift(self) -> "InfSet":
        """Drop the least element."""
        return InfSet(lambda i: self.nth(i + 1), name=f"shift({self.name})")

    def agrees_upto(self, other: "InfSet", bound: int) -> bool:
        return self.upto(bound) == other.upto(bound)

    def subset_prefix_of(self, other: "InfSet", count: int = 16) -> bool:
        """Prefix-checked containment: the first `count` elements all belong
        to the other set."""
        return all(other.contains(x) for x in self.prefix(count))

    def __repr__(self) -> str:
        return f"InfSet({self.name})"


def omega() -> InfSet:
    return InfSet(lambda i: i, name="omega")


def arithmetic(start: int, step: int) -> InfSet:
    if step < 1:
        raise ValueError("arithmetic progression needs positive step")
    return InfSet(lambda i: start + step * i, name=f"arith:{start},{step}")


def evens() -> InfSet:
    return arithmetic(0, 2)


def odds() -> InfSet:
    return arithmetic(1, 2)


def prefix_then_arithmetic(prefix: Sequence[int], start: int,
                           step: int) -> InfSet:
    prefix = tuple(int(x) for x in prefix)
    for a, b in zip(prefix, prefix[1:]):
        if b <= a:
            raise ValueError("prefix must be strictly increasing")
    if prefix and start <= prefix[-1]:
        raise ValueError("tail must start above the prefix")
    if step < 1:
        raise ValueError("tail needs positive step")

    def gen(i: int) -> int:
        if i < len(prefix):
            return prefix[i]
        return start + step * (i - len(prefix))

    head = ",".join(str(x) for x in prefix)
    return InfSet(gen, name=f"prefix:{head}+arith:{start},{step}")


def from_enumeration(values: Callable[[int], int], name: str) -> InfSet:
    return InfSet(values, name=name)


def parse_base(descriptor: str) -> InfSet:
    """Parse a base descriptor.

    Grammar: "omega" | "evens" | "odds" | "omega/k" (naturals above k) |
    "arith:a,d" | "prefix:x1,x2,...+arith:a,d".
    """
    d = descriptor.strip()
    if d == "omega":
        return omega()
    if d == "evens":
        return evens()
    if d == "odds":
        return odds()
    if d.startswith("omega/"):
        k = int(d.split("/", 1)[1])
        return InfSet(lambda i, k=k: k + 1 + i, name=f"omega/{k}")
    if d.startswith("prefix:"):
        head, _, tail = d.partition("+")
        if not tail.startswith("arith:"):
            raise ValueError(f"prefix descriptor needs an arithmetic tail: {d!r}")
        pref = [int(x) for x in head[len("prefix:"):].split(",") if x != ""]
        a, s = (int(x) for x in tail[len("arith:"):].split(","))
        return prefix_then_arithmetic(pref, a, s)
    if d.startswith("arith:"):
        a, s = (int(x) for x in d[len("arith:"):].split(","))
        return arithmetic(a, s)
    raise ValueError(f"unknown base descriptor {descriptor!r}")
