"""Finite Ramsey search and windowed partition extraction.

finite_ramsey finds a largest (or target-sized) subset of [0, N) all of
whose k-subsets share one color.  nw_extract specializes to 2-colorings of
a front's members: it returns a subset Z of base points such that every
member realized inside Z has one color side, mirroring the classical
partition proof as a lexicographic depth-first search with
member-completion pruning (side 0 tried before side 1, so the answer is
simultaneously exhaustive on the window and lexicographically least).

dichotomy_extract derives, from a valuation and a decidable relation R,
the 2-coloring "does R hold between the value here and the value one shift
later", extracts a homogeneous Z, and reports whether the valuation is a
homomorphism into R or into its complement on Z.

laver_embed runs the two-stage Ramsey filtering that turns a bad
pair-indexed sequence into an order embedding of the two-clause pair order
into the codomain, then verifies both directions of the embedding on the
output.  f2_to_powerset_badseq and powerset_badseq_to_f2 convert between
bad pair-indexed sequences and bad sequences of sets under domination,
choosing least witnesses so every construction is reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .errors import (EmbeddingCheckFailed, NotBadOnWindow, NotBadPowersetSeq,
                     RamseyStageFailed, WindowExhausted)
from .fronts import (Front, UniformSchema, front_member, members_within,
                     uniform_front)
from .qo import rado_leq
from .streams import omega
from .superseq import SuperSeq, badness_check


# --- finite Ramsey search ---------------------------------------------------

@dataclass(frozen=True)
class RamseyReport:
    """Best homogeneous set found: all k-subsets of Z share `color`."""

    Z: tuple
    color: Optional[int]
    window: int
    k: int
    r: int
    target: Optional[int]
    exhaustive: bool
    explored: int


def _homogeneous_search(n: int, k: int, color: Callable[[tuple], int],
                        target: Optional[int], required_side: Optional[int],
                        budget: int):
    """Branch-and-bound for a maximum set whose k-subsets are one color.

    DFS in ascending lexicographic order, so the first set of any size
    found is the lexicographically least of that size.  With a target the
    search stops at the first set reaching it; otherwise it proves
    maximality (subject to the node budget; exceeding it clears the
    exhaustive flag).
    """
    best: list = []
    best_color: Optional[int] = None
    explored = 0
    complete = True
    cap = n if target is None else min(n, target)
    cur: list = []

    def rec(start: int, fixed: Optional[int]) -> bool:
        nonlocal best, best_color, explored, complete
        if len(cur) > len(best):
            best = list(cur)
            best_color = fixed
        if len(cur) == cap:
            return target is not None
        for i in range(start, n):
            if explored >= budget:
                complete = False
                return False
            if target is None:
                if len(cur) + (n - i) <= len(best):
                    break
            elif len(cur) + (n - i) < cap:
                break
            explored += 1
            cur.append(i)
            new_fixed = fixed
            ok = True
            if len(cur) >= k:
                for rest in itertools.combinations(cur[:-1], k - 1):
                    c = color(tuple(sorted(rest + (i,))))
                    if new_fixed is None:
                        new_fixed = c
                    elif c != new_fixed:
                        ok = False
                        break
            if ok and rec(i + 1, new_fixed):
                return True
            cur.pop()
        return False

    rec(0, required_side)
    return tuple(best), best_color, explored, complete


def finite_ramsey(N: int, k: int, r: int, coloring: Callable[[tuple], int],
                  target: Optional[int] = None,
                  exhaustive: Optional[bool] = None,
                  budget: int = 500_000) -> RamseyReport:
    """Search [0, N) for a set all of whose k-subsets share one color.

    coloring must be total on ascending k-tuples from [0, N) with values
    below r.  Without a target the largest homogeneous set found is
    returned (lexicographically least among those of maximal size); with a
    target the search stops at the first, lexicographically least, set of
    size min(N, target).  Never raises: the report carries the best found
    and an exhaustiveness flag.
    """
    if N < 0 or k < 1 or r < 1:
        raise ValueError("need N >= 0, k >= 1, r >= 1")
    if r == 1:
        size = N if target is None else min(N, target)
        return RamseyReport(tuple(range(size)), 0 if size >= k else None,
                            N, k, r, target, True, 0)
    del exhaustive  # the search is complete unless the budget trips
    Z, col, explored, complete = _homogeneous_search(
        N, k, coloring, target, None, budget)
    if len(Z) < k:
        col = None
    return RamseyReport(Z, col, N, k, r, target, complete, explored)


def _ramsey_on(points: Sequence[int], k: int,
               color_on_points: Callable[[tuple], int],
               required_side: Optional[int] = None,
               budget: int = 500_000):
    """Homogeneous search over an arbitrary ascending ground set."""
    points = tuple(points)

    def color(ix: tuple) -> int:
        return color_on_points(tuple(points[i] for i in ix))

    Z, col, explored, complete = _homogeneous_search(
        len(points), k, color, None, required_side, budget)
    return tuple(points[i] for i in Z), col, explored, complete


# --- colorings of front members --------------------------------------------

@dataclass(frozen=True)
class Coloring:
    """A color for every member of a front (or of a raw finite family)."""

    front: object               # Front, or an iterable of member tuples
    color: Callable[[tuple], int]
    r: int = 2
    name: str = "c"


def named_coloring(name: str) -> Callable[[tuple], int]:
    """Color rules by name: sum-parity, size-parity, min-parity,
    max-parity, or constant:c."""
    if name == "sum-parity":
        return lambda s: sum(s) % 2
    if name == "size-parity":
        return lambda s: len(s) % 2
    if name == "min-parity":
        return lambda s: (min(s) if s else 0) % 2
    if name == "max-parity":
        return lambda s: (max(s) if s else 0) % 2
    if name.startswith("constant:"):
        value = int(name.split(":", 1)[1])
        return lambda s: value
    raise ValueError(f"unknown coloring rule {name!r}")


def coloring_from_dict(data: dict) -> Coloring:
    """Build a Coloring from a file payload: a front reference plus either
    a rule name or a finite member table {"m,n": color}."""
    from .fronts import front_from_dict

    front = front_from_dict(data["front"])
    r = int(data.get("r", 2))
    if "rule" in data:
        return Coloring(front, named_coloring(data["rule"]), r,
                        data.get("name", data["rule"]))
    table = {tuple(int(x) for x in key.split(",") if x != ""): int(v)
             for key, v in data["table"].items()}
    default = data.get("default")

    def color(s: tuple) -> int:
        s = tuple(s)
        if s in table:
            return table[s]
        if default is None:
            raise KeyError(f"no color for member {s}")
        return int(default)

    return Coloring(front, color, r, data.get("name", "table"))


def _points_and_members(front, window: int):
    if isinstance(front, Front):
        return list(front.base.upto(window)), members_within(front, window)
    members = sorted(tuple(s) for s in front
                     if not s or s[-1] < window)
    points = sorted({x for s in members for x in s})
    return points, members


@dataclass(frozen=True)
class ExtractReport:
    """Homogeneous window extraction: every member of the family realized
    inside Z carries the color `side`."""

    Z: tuple
    side: int
    window: int
    target: int
    exhaustive: bool
    members_checked: int
    witnesses: tuple          # ((member, color), ...) for members inside Z


def nw_extract(col: Coloring, window: int, target: int) -> ExtractReport:
    """Find the lexicographically least Z of the target size on which the
    2-coloring is one-sided; side 0 is preferred over side 1.

    Depth-first search over ascending subsets of the base points with
    member-completion pruning: a partial set already containing a member of
    the wrong color is abandoned.  Raises WindowExhausted when neither side
    admits a qualifying set within the window.
    """
    if col.r != 2:
        raise ValueError("extraction needs a 2-coloring")
    points, members = _points_and_members(col.front, window)
    colors = {}
    for s in members:
        c = int(col.color(s))
        if not 0 <= c < 2:
            raise ValueError(f"color {c} of member {s} out of range")
        colors[s] = c
    member_sets = [(frozenset(s), s) for s in members]

    def qualifying_Z(side: int) -> Optional[tuple]:
        cur: list = []
        cur_set: set = set()

        def rec(start: int) -> bool:
            if len(cur) == target:
                return True
            for i in range(start, len(points)):
                if len(cur) + (len(points) - i) < target:
                    return False
                v = points[i]
                cur.append(v)
                cur_set.add(v)
                ok = all(colors[s] == side
                         for fs, s in member_sets
                         if v in fs and fs <= cur_set)
                if ok and rec(i + 1):
                    return True
                cur.pop()
                cur_set.discard(v)
            return False

        return tuple(cur) if rec(0) else None

    for side in (0, 1):
        Z = qualifying_Z(side)
        if Z is not None:
            inside = frozenset(Z)
            witnesses = tuple((s, colors[s]) for s in members
                              if frozenset(s) <= inside)
            return ExtractReport(Z, side, window, target, True,
                                 len(members), witnesses)
    raise WindowExhausted(
        f"no one-sided set of size {target} below {window}")


# --- the relation dichotomy -------------------------------------------------

def join_nodes(front: Front, window: int) -> list:
    """Minimal witness prefixes determining a member and its shift member.

    Each returned triple (u, s, t) has s the unique member beginning u and
    t the unique member beginning u minus its least entry; u is exactly
    their union, of length max(|s|, |t| + 1).
    """
    points = list(front.base.upto(window))
    out: list = []

    def member_prefix(u: tuple) -> Optional[tuple]:
        for i in range(len(u) + 1):
            if front_member(front, u[:i]):
                return u[:i]
        return None

    def rec(u: tuple, start: int) -> None:
        if u:
            s = member_prefix(u)
            t = member_prefix(u[1:])
            if s is not None and t is not None:
                out.append((u, s, t))
                return
        for i in range(start, len(points)):
            rec(u + (points[i],), i + 1)

    rec((), 0)
    return out


@dataclass(frozen=True)
class DichotomyReport:
    """On Z, the valuation is a homomorphism into the returned side: every
    shift-related member pair inside Z satisfies it."""

    Z: tuple
    side: str                  # relation name or name + "-complement"
    side_index: int            # 1 = relation holds, 0 = complement
    window: int
    joins_colored: int
    pairs_verified: int
    exhaustive: bool


def dichotomy_extract(phi: SuperSeq, R: Callable, window: int,
                      relation_name: str = "R") -> DichotomyReport:
    """Split the window by whether R holds one shift ahead, and return the
    largest Z on which one side is uniform (side preference: complement
    first at equal size, matching the underlying extraction order)."""
    joins = join_nodes(phi.front, window)
    if not joins:
        raise WindowExhausted("no shift pair is determined within the window")
    cmap = {u: (1 if R(phi.value(s), phi.value(t)) else 0)
            for (u, s, t) in joins}
    col = Coloring(front=tuple(cmap), color=lambda u: cmap[u],
                   name="shift-compare")
    points = sorted({x for u in cmap for x in u})
    for size in range(len(points), 0, -1):
        try:
            rep = nw_extract(col, window, size)
        except WindowExhausted:
            continue
        inside = frozenset(rep.Z)
        verified = 0
        for (u, s, t) in joins:
            if frozenset(u) <= inside:
                assert (1 if R(phi.value(s), phi.value(t)) else 0) == rep.side
                verified += 1
        side = relation_name if rep.side == 1 else f"{relation_name}-complement"
        return DichotomyReport(rep.Z, side, rep.side, window, len(joins),
                               verified, rep.exhaustive)
    raise WindowExhausted(
        f"no nonempty one-sided set below {window}")


# --- the pair-order embedding extraction ------------------------------------

@dataclass(frozen=True)
class StageReport:
    """One Ramsey filtering stage: the homogeneous set and its side."""

    ground: tuple
    homogeneous: tuple
    side: Optional[int]
    explored: int


@dataclass(frozen=True)
class LaverReport:
    """Successful two-stage extraction: on X, pair order and codomain order
    agree in both directions through the valuation."""

    X: tuple
    window: int
    triples: StageReport
    quadruples: StageReport
    pairs_checked: int


def laver_embed(f: SuperSeq, window: int, min_size: int = 4) -> LaverReport:
    """Extract X on which f embeds the two-clause pair order.

    Stage one makes comparisons f({i,j}) <= f({i,k}) uniform over triples;
    stage two makes f({i,j}) <= f({k,l}) uniform over quadruples; both must
    land on the holds-side (their failure to do so at adequate size is
    evidence of a bad sequence in the codomain and raises
    RamseyStageFailed).  The minimum of the surviving set is dropped and
    both directions of the embedding are verified on every pair over X.
    """
    schema = f.front.schema
    if not (isinstance(schema, UniformSchema) and schema.k == 2):
        raise ValueError("embedding extraction needs a pair front")
    if f.codomain is None:
        raise ValueError("embedding extraction needs a quasi-order codomain")
    rep = badness_check(f, window)
    if not rep.bad_on_window:
        raise NotBadOnWindow(
            f"good pair {rep.good_witness} within {window}")
    leq = f.codomain.leq
    points = list(f.front.base.upto(window))

    def c3(tr: tuple) -> int:
        i, j, k = tr
        return 1 if leq(f.value((i, j)), f.value((i, k))) else 0

    def c4(qd: tuple) -> int:
        i, j, k, l = qd
        return 1 if leq(f.value((i, j)), f.value((k, l))) else 0

    need = min_size + 1
    N1, side1, ex1, _ = _ramsey_on(points, 3, c3, required_side=1)
    stage1 = StageReport(tuple(points), N1, 1 if len(N1) >= 3 else None, ex1)
    if len(N1) < need:
        raise RamseyStageFailed(
            f"triple stage keeps only {len(N1)} points below {window}; "
            f"need {need} (comparisons refuse to hold along a large set)")
    N2, side2, ex2, _ = _ramsey_on(N1, 4, c4, required_side=1)
    stage2 = StageReport(tuple(N1), N2, 1 if len(N2) >= 4 else None, ex2)
    if len(N2) < need:
        raise RamseyStageFailed(
            f"quadruple stage keeps only {len(N2)} points below {window}; "
            f"need {need}")
    X = tuple(N2[1:])
    violations = []
    pairs = list(itertools.combinations(X, 2))
    for p in pairs:
        for q in pairs:
            left = rado_leq(p, q)
            right = leq(f.value(p), f.value(q))
            if left != right:
                violations.append((p, q, left, right))
    if violations:
        raise EmbeddingCheckFailed(
            f"{len(violations)} pair comparisons disagree with the pair "
            f"order, first at {violations[0][:2]}", pairs=violations)
    return LaverReport(X, window, stage1, stage2, len(pairs) ** 2)


# --- witness conversions ----------------------------------------------------

@dataclass(frozen=True)
class PowersetSeqReport:
    """Window truncation of the set sequence P_m = values of the m-th row,
    with the per-pair witnesses that defeat domination."""

    window: int
    points: tuple
    sets: tuple                # sets[i] = values of the row at points[i]
    witnesses: tuple           # ((m, n, value), ...) for point pairs m < n
    truncated: bool
    all_confirmed: bool


def f2_to_powerset_badseq(f: SuperSeq, window: int) -> PowersetSeqReport:
    """Rows of a bad pair-indexed sequence as a domination-bad set sequence.

    P_m collects f({m, n}) over the window; for m < n the value f({m, n})
    lies in P_m but below nothing in P_n, defeating domination.  Sets are
    window truncations and flagged as such.
    """
    schema = f.front.schema
    if not (isinstance(schema, UniformSchema) and schema.k == 2):
        raise ValueError("row extraction needs a pair front")
    if f.codomain is None:
        raise ValueError("row extraction needs a quasi-order codomain")
    rep = badness_check(f, window)
    if not rep.bad_on_window:
        raise NotBadOnWindow(
            f"good pair {rep.good_witness} within {window}")
    leq = f.codomain.leq
    points = list(f.front.base.upto(window))
    rows = []
    for i, m in enumerate(points[:-1]):
        rows.append(tuple(f.value((m, n)) for n in points[i + 1:]))
    witnesses = []
    confirmed = True
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            m, n = points[i], points[j]
            w = f.value((m, n))
            if any(leq(w, q) for q in rows[j]):
                confirmed = False
            else:
                witnesses.append((m, n, w))
    return PowersetSeqReport(window, tuple(points[:-1]), tuple(rows),
                             tuple(witnesses), True, confirmed)


def powerset_badseq_to_f2(Ps: Sequence, qo, window: Optional[int] = None
                          ) -> SuperSeq:
    """Choose least witnesses against domination and index them by pairs.

    Requires every P_m to contain, for each later P_n, an element below
    nothing in P_n (else NotBadPowersetSeq).  Witnesses are least under the
    carrier's canonical key, and the resulting pair-indexed law
    (m < n < l implies no comparison between the (m,n) and (n,l) picks) is
    re-verified on the window.
    """
    rows = [tuple(P) for P in Ps]
    n_rows = len(rows)
    bound = n_rows if window is None else min(window, n_rows)
    table: dict = {}
    for m in range(bound):
        for n in range(m + 1, bound):
            candidates = [q for q in rows[m]
                          if not any(qo.leq(q, p) for p in rows[n])]
            if not candidates:
                raise NotBadPowersetSeq(
                    f"row {m} is dominated by row {n}: no witness survives")
            table[(m, n)] = min(candidates, key=qo.key)
    for m in range(bound):
        for n in range(m + 1, bound):
            for l in range(n + 1, bound):
                if qo.leq(table[(m, n)], table[(n, l)]):
                    raise NotBadPowersetSeq(
                        f"witness law fails at {(m, n, l)}")

    def valuation(s: tuple):
        s = tuple(s)
        if s not in table:
            raise WindowExhausted(
                f"pair {s} lies beyond the verified window {bound}")
        return table[s]

    return SuperSeq(front=uniform_front(2, omega()), valuation=valuation,
                    codomain=qo, name="least-witnesses")
