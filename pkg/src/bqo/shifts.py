"""Increasing injections of the naturals and shift transport.

IncInj wraps a total evaluator n -> f(n) validated to be strictly
increasing on every evaluated window.  The module provides the composition
monoid, critical points and orbit maps of non-identity members, and the
two transport constructions rho and sigma that exchange the plain shift
with an arbitrary right-composition shift:

    rho(f o g) = rho(f) o successor        (rho(f) = f o orbit(g))
    sigma(f o successor) = sigma(f) o g    (piecewise orbit exponents)

sigma's strict monotonicity is runtime-asserted across every piece
boundary it evaluates, reproducing the two inequality chains that prove
it.  g_perfect_extract searches a window for a restriction h making a
valuation monotone along every requested shift simultaneously, verifying
each candidate against a deterministic battery of sampled injections
before accepting it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from .errors import LooksLikeIdentity, NotBQOEvidence, WindowExhausted
from .fronts import Front, front_member
from .streams import InfSet, from_enumeration, parse_base, prefix_then_arithmetic
from .superseq import SuperSeq


@dataclass(frozen=True)
class IncInj:
    """A strictly increasing injection of the naturals, given by evaluator.

    Values are cached; every evaluation is checked against its cached
    neighbours, so filling a window validates strict monotonicity on it.
    """

    evaluator: Callable[[int], int]
    tag: str = "opaque"
    name: str = "f"
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, n: int) -> int:
        if n < 0:
            raise ValueError("increasing injections are defined on naturals")
        v = self._cache.get(n)
        if v is None:
            v = int(self.evaluator(n))
            if v < 0:
                raise ValueError(f"{self.name}: value {v} at {n} leaves omega")
            prev = self._cache.get(n - 1)
            if prev is not None and prev >= v:
                raise ValueError(
                    f"{self.name}: not increasing at {n} ({prev} then {v})")
            nxt = self._cache.get(n + 1)
            if nxt is not None and v >= nxt:
                raise ValueError(
                    f"{self.name}: not increasing at {n} ({v} then {nxt})")
            self._cache[n] = v
        return v

    def values(self, bound: int) -> tuple:
        return tuple(self(n) for n in range(bound))

    def __repr__(self) -> str:
        return f"IncInj({self.name})"


def identity_inj() -> IncInj:
    return IncInj(lambda n: n, tag="id", name="id")


def successor() -> IncInj:
    return IncInj(lambda n: n + 1, tag="succ", name="succ")


def affine(a: int, b: int) -> IncInj:
    if a < 1:
        raise ValueError("affine slope must be at least 1")
    if b < 0:
        raise ValueError("affine offset must be a natural")
    return IncInj(lambda n: a * n + b, tag=f"affine:{a},{b}",
                  name=f"affine:{a},{b}")


def table_then_affine(table: Sequence[int], a: int, b: int) -> IncInj:
    """Explicit initial values followed by an affine tail n -> a*n + b."""
    table = tuple(int(x) for x in table)
    if not table:
        return affine(a, b)
    for x, y in zip(table, table[1:]):
        if y <= x:
            raise ValueError("table values must be strictly increasing")
    if a < 1:
        raise ValueError("tail slope must be at least 1")
    if a * len(table) + b <= table[-1]:
        raise ValueError("tail must continue above the table")

    def ev(n: int) -> int:
        return table[n] if n < len(table) else a * n + b

    head = ",".join(str(x) for x in table)
    return IncInj(ev, tag=f"table:{head}+tail:affine:{a},{b}",
                  name=f"table:{head}+tail:affine:{a},{b}")


def enum_of_set(X: InfSet) -> IncInj:
    """The injection enumerating an infinite set in increasing order."""
    return IncInj(X.nth, tag=f"enum-of-set:{X.name}",
                  name=f"enum-of-set:{X.name}")


def parse_inj(descriptor: str) -> IncInj:
    """Parse an injection descriptor.

    Grammar: "id" | "succ" | "affine:a,b" | "table:v1,...+tail:affine:a,b"
    | "enum-of-set:<base descriptor>".
    """
    d = descriptor.strip()
    if d == "id":
        return identity_inj()
    if d == "succ":
        return successor()
    if d.startswith("affine:"):
        a, b = (int(x) for x in d.split(":", 1)[1].split(","))
        return affine(a, b)
    if d.startswith("table:"):
        body = d[len("table:"):]
        if "+tail:affine:" not in body:
            raise ValueError(f"table descriptor needs an affine tail: {d!r}")
        head, tail = body.split("+tail:affine:", 1)
        table = tuple(int(x) for x in head.split(",") if x != "")
        a, b = (int(x) for x in tail.split(","))
        return table_then_affine(table, a, b)
    if d.startswith("enum-of-set:"):
        return enum_of_set(parse_base(d.split(":", 1)[1]))
    raise ValueError(f"unknown injection descriptor {descriptor!r}")


def compose(f: IncInj, g: IncInj) -> IncInj:
    """Pointwise composition n -> f(g(n))."""
    return IncInj(lambda n: f(g(n)), tag="compose",
                  name=f"({f.name} o {g.name})")


def agrees_upto(f: IncInj, g: IncInj, window: int) -> bool:
    """Windowed equality: pointwise agreement on [0, window)."""
    return f.values(window) == g.values(window)


def critical_point(g: IncInj, bound: int = 64) -> int:
    """Least k below the probe bound with k < g(k)."""
    for k in range(bound):
        v = g(k)
        if v < k:
            raise ValueError(f"{g.name}: g({k}) = {v} < {k}, not increasing")
        if v > k:
            return k
    raise LooksLikeIdentity(bound)


def orbit_map(g: IncInj, probe: int = 64) -> IncInj:
    """G(n) = n-th iterate of g at its critical point; strictly increasing."""
    kg = critical_point(g, probe)
    orbit: List[int] = [kg]

    def ev(n: int) -> int:
        while len(orbit) <= n:
            orbit.append(g(orbit[-1]))
        return orbit[n]

    return IncInj(ev, tag="orbit", name=f"orbit({g.name})")


def rho(f: IncInj, g: IncInj, probe: int = 64) -> IncInj:
    """Transport along the orbit: rho(f) = f o orbit(g), which turns
    right-composition by g into right-composition by the successor."""
    G = orbit_map(g, probe)
    out = compose(f, G)
    return IncInj(out.evaluator, tag="rho", name=f"rho({f.name};{g.name})")


def sigma(f: IncInj, g: IncInj, probe: int = 64) -> IncInj:
    """Piecewise transport turning the successor shift into the g shift.

    sigma(f)(l) = l below the orbit, and the (f(n) - n)-th iterate of g on
    the n-th orbit gap.  Strict monotonicity across each evaluated piece
    boundary is asserted by replaying the two inequality chains that
    establish it; the exponent is asserted non-negative (any increasing
    injection satisfies f(n) >= n).
    """
    G = orbit_map(g, probe)
    kg = G(0)

    def gpow(e: int, x: int) -> int:
        for _ in range(e):
            x = g(x)
        return x

    asserted = set()

    def assert_boundary(n: int) -> None:
        if n == 0:
            # entry chain: every l < G(0) sits below the first piece value
            assert G(0) <= gpow(f(0), G(0))
            assert gpow(f(0), G(0)) == G(f(0))
        # exit chain at the top of piece n
        e = f(n) - n
        top = gpow(e, G(n + 1) - 1)
        at_next = gpow(e, G(n + 1))
        assert top < at_next
        assert at_next == gpow(f(n) + 1, kg)
        nxt_base = gpow(f(n + 1), kg)
        assert at_next <= nxt_base
        assert nxt_base == G(f(n + 1))
        assert nxt_base == gpow(f(n + 1) - (n + 1), G(n + 1))

    def ev(l: int) -> int:
        if l < G(0):
            return l
        n = 0
        while not (G(n) <= l < G(n + 1)):
            n += 1
        e = f(n) - n
        assert e >= 0, "increasing injections satisfy f(n) >= n"
        if n not in asserted:
            asserted.add(n)
            assert_boundary(n)
        return gpow(e, l)

    return IncInj(ev, tag="sigma", name=f"sigma({f.name};{g.name})")


def factor_enumeration(X: InfSet, Y: InfSet, window: int) -> Optional[IncInj]:
    """The injection h with enum(X) = enum(Y) o h, when X sits inside Y.

    Positions are matched on [0, window); returns None as soon as an X
    element is missed by Y's enumeration, witnessing non-containment.
    """
    positions = []
    j = 0
    for i in range(window):
        x = X.nth(i)
        while Y.nth(j) < x:
            j += 1
        if Y.nth(j) != x:
            return None
        positions.append(j)

    def ev(n: int) -> int:
        if n < len(positions):
            return positions[n]
        # beyond the verified window, keep matching (may raise if it fails)
        target = X.nth(n)
        k = positions[-1] if positions else 0
        while Y.nth(k) < target:
            k += 1
        if Y.nth(k) != target:
            raise ValueError(
                f"{X.name} is not inside {Y.name} at position {n}")
        return k

    return IncInj(ev, tag="factor", name=f"factor({X.name}<={Y.name})")


# --- windowed perfection along several shifts -------------------------------

def g_join_nodes(front: Front, points: Sequence[int], g: IncInj) -> list:
    """Minimal prefixes determining a member and its g-subsequence member.

    A prefix u resolves when a member s begins u and a member t begins the
    subsequence (u[g(0)], u[g(1)], ...); both prefixes are unique, so
    stopping at first resolution yields the minimal determining nodes.
    """
    points = list(points)
    out = []

    def member_prefix(u: tuple) -> Optional[tuple]:
        for i in range(len(u) + 1):
            if front_member(front, u[:i]):
                return u[:i]
        return None

    def g_sub(u: tuple) -> tuple:
        vals = []
        i = 0
        while True:
            gi = g(i)
            if gi >= len(u):
                return tuple(vals)
            vals.append(u[gi])
            i += 1

    def rec(u: tuple, start: int) -> None:
        if u:
            s = member_prefix(u)
            t = member_prefix(g_sub(u))
            if s is not None and t is not None:
                out.append((u, s, t))
                return
        for i in range(start, len(points)):
            rec(u + (points[i],), i + 1)

    rec((), 0)
    return out


def _sample_battery(window: int) -> List[IncInj]:
    """Deterministic injections used to verify candidate restrictions."""
    battery = [affine(1, k) for k in range(min(window, 8))]
    battery += [affine(2, b) for b in (0, 1, 2)]
    battery += [affine(3, b) for b in (0, 1)]
    return battery


def _extend_listing(Z: Sequence[int]) -> InfSet:
    """Infinite set continuing a finite listing by its final stride."""
    Z = tuple(Z)
    if len(Z) >= 2:
        step = Z[-1] - Z[-2]
    else:
        step = 1
    return prefix_then_arithmetic(Z, Z[-1] + step, step)


def _resolve_value(phi: SuperSeq, h: IncInj, limit: int):
    """Value of the valuation at the set enumerated by h, if the member
    prefix resolves within the limit."""
    stream: List[int] = []
    for i in range(limit):
        stream.append(h(i))
        if front_member(phi.front, tuple(stream)):
            return phi.value(tuple(stream))
    if front_member(phi.front, ()):
        return phi.value(())
    return None


@dataclass(frozen=True)
class GPerfectReport:
    """A verified restriction: along h, the valuation is monotone under
    every requested shift on the sampled battery."""

    h: IncInj
    h_set: InfSet
    Z: tuple
    window: int
    joins_colored: int
    checks_passed: int
    candidates_tried: int


def g_perfect_extract(phi: SuperSeq, gs: Iterable[IncInj], window: int,
                      probe: int = 64,
                      max_candidates: int = 256) -> GPerfectReport:
    """Find h with value(h o f) <= value(h o f o g) for each requested g.

    Candidate sets are homogeneous windows for the conjunction of the
    per-shift comparison colorings (largest first, lexicographically
    least first), extended to infinite sets by their final stride, and
    accepted only after the monotonicity law passes on a deterministic
    battery of composed injections.  When no candidate survives but the
    complement coloring owns a homogeneous window, the failure is evidence
    of badness in the codomain and raises NotBQOEvidence.
    """
    if phi.codomain is None:
        raise ValueError("perfection extraction needs a quasi-order codomain")
    gs = list(gs)
    if not gs:
        raise ValueError("at least one shift is required")
    for g in gs:
        critical_point(g, probe)  # rejects identity-looking shifts
    leq = phi.codomain.leq
    points = list(phi.front.base.upto(window))
    joins = []
    for g in gs:
        joins.extend(g_join_nodes(phi.front, points, g))
    colors = {u: (1 if leq(phi.value(s), phi.value(t)) else 0)
              for (u, s, t) in joins}
    join_sets = [(frozenset(u), u) for u in colors]

    def candidates(side: int, size: int):
        cur: List[int] = []
        cur_set: set = set()

        def rec(start: int):
            if len(cur) == size:
                yield tuple(cur)
                return
            for i in range(start, len(points)):
                if len(cur) + (len(points) - i) < size:
                    return
                v = points[i]
                cur.append(v)
                cur_set.add(v)
                if all(colors[u] == side
                       for fs, u in join_sets
                       if v in fs and fs <= cur_set):
                    yield from rec(i + 1)
                cur.pop()
                cur_set.discard(v)

        yield from rec(0)

    battery = _sample_battery(window)

    def verify(h: IncInj) -> int:
        checks = 0
        for f in battery:
            hf = compose(h, f)
            for g in gs:
                a = _resolve_value(phi, hf, window)
                b = _resolve_value(phi, compose(hf, g), window)
                if a is None or b is None:
                    continue
                if not leq(a, b):
                    return 0
                checks += 1
        return checks

    tried = 0
    for size in range(len(points), 0, -1):
        for Z in itertools.islice(candidates(1, size), max_candidates):
            tried += 1
            h_set = _extend_listing(Z)
            h = enum_of_set(h_set)
            checks = verify(h)
            if checks:
                return GPerfectReport(h, h_set, Z, window, len(colors),
                                      checks, tried)
    for size in range(len(points), 0, -1):
        for Z in itertools.islice(candidates(0, size), 1):
            realized = [u for fs, u in join_sets if fs <= frozenset(Z)]
            if realized:
                raise NotBQOEvidence(
                    f"comparison fails homogeneously on {Z} "
                    f"({len(realized)} witnesses); the codomain restricted "
                    f"to this valuation is not well-behaved")
    raise WindowExhausted(
        f"no verifiable restriction below {window} for {len(gs)} shifts")
