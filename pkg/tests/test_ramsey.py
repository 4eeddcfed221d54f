from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bqo.errors import (
    EmbeddingCheckFailed,
    NotBadOnWindow,
    NotBadPowersetSeq,
    RamseyStageFailed,
    WindowExhausted,
)
from bqo.fronts import (
    Front,
    front_member,
    schreier_front,
    trivial_front,
    uniform_front,
)
from bqo.qo import OMEGA, RADO, CodedQO, antichain, rado_leq
from bqo.ramsey import (
    Coloring,
    coloring_from_dict,
    dichotomy_extract,
    f2_to_powerset_badseq,
    finite_ramsey,
    join_nodes,
    laver_embed,
    named_coloring,
    nw_extract,
    powerset_badseq_to_f2,
)
from bqo.streams import from_enumeration
from bqo.superseq import SuperSeq, badness_check, named_valuation, perfect_check

OMEGA_EQ = CodedQO(
    name="omega-eq",
    contains=lambda x: isinstance(x, int) and x >= 0,
    leq=lambda a, b: a == b,
    key=lambda x: x,
    fmt=str,
    parse=int,
)


def identity_u2() -> SuperSeq:
    return SuperSeq(front=uniform_front(2), valuation=named_valuation("identity"),
                    codomain=RADO, name="identity")


def pentagon(s) -> int:
    i, j = s
    return 1 if abs(i - j) in (1, 4) else 0


def brute_max_homogeneous(n: int, k: int, color):
    """All-subsets reference: largest (lex-least) homogeneous subset."""
    for size in range(n, -1, -1):
        for cand in itertools.combinations(range(n), size):
            colors = {color(tuple(sub)) for sub in itertools.combinations(cand, k)}
            if len(colors) <= 1:
                return cand, (colors.pop() if colors else None)
    return (), None


class TestFiniteRamsey:
    def test_pigeonhole_parity(self):
        rep = finite_ramsey(10, 1, 2, lambda s: s[0] % 2)
        assert rep.Z == (0, 2, 4, 6, 8)
        assert rep.color == 0
        assert rep.exhaustive

    def test_pigeonhole_prefers_lex_least_class_on_ties(self):
        # both classes have five elements; the even class is lex-least,
        # whatever its color
        rep = finite_ramsey(10, 1, 2, lambda s: (s[0] + 1) % 2)
        assert rep.Z == (0, 2, 4, 6, 8)
        assert rep.color == 1

    def test_pentagon_max_homogeneous_is_two(self):
        rep = finite_ramsey(5, 2, 2, pentagon)
        assert rep.Z == (0, 1)
        assert rep.color == 1
        assert rep.exhaustive

    def test_degenerate_single_color(self):
        for n, target, want in [(9, 4, 4), (9, None, 9), (3, 7, 3)]:
            rep = finite_ramsey(n, 2, 1, lambda s: 0, target=target)
            assert rep.Z == tuple(range(want))
            assert rep.exhaustive

    def test_target_returns_lex_least_of_that_size(self):
        rep = finite_ramsey(6, 2, 2, lambda s: (s[0] + s[1]) % 2, target=3)
        assert rep.Z == (0, 2, 4)
        assert rep.color == 0

    def test_target_larger_than_best_returns_best_found(self):
        rep = finite_ramsey(5, 2, 2, pentagon, target=4)
        assert len(rep.Z) == 2
        assert rep.exhaustive

    def test_budget_cutoff_clears_exhaustive_flag(self):
        rep = finite_ramsey(12, 2, 2, lambda s: (s[0] * s[1]) % 2, budget=5)
        assert not rep.exhaustive

    def test_rejects_bad_parameters(self):
        with pytest.raises(ValueError):
            finite_ramsey(-1, 2, 2, lambda s: 0)
        with pytest.raises(ValueError):
            finite_ramsey(4, 0, 2, lambda s: 0)
        with pytest.raises(ValueError):
            finite_ramsey(4, 2, 0, lambda s: 0)

    @given(st.integers(0, 2 ** 15 - 1), st.integers(4, 6))
    @settings(max_examples=60, deadline=None)
    def test_agrees_with_brute_force(self, bits, n):
        pairs = list(itertools.combinations(range(n), 2))
        table = {p: (bits >> i) & 1 for i, p in enumerate(pairs)}
        color = lambda s: table[s]
        rep = finite_ramsey(n, 2, 2, color)
        want_Z, want_color = brute_max_homogeneous(n, 2, color)
        assert rep.Z == want_Z
        assert rep.exhaustive
        if len(rep.Z) >= 2:
            assert rep.color == want_color

    @given(st.integers(0, 2 ** 15 - 1))
    @settings(max_examples=40, deadline=None)
    def test_ramsey_number_guarantee_at_six(self, bits):
        # every 2-coloring of pairs from six points has a one-colored triple
        pairs = list(itertools.combinations(range(6), 2))
        table = {p: (bits >> i) & 1 for i, p in enumerate(pairs)}
        rep = finite_ramsey(6, 2, 2, lambda s: table[s], target=3)
        assert len(rep.Z) == 3
        colors = {table[p] for p in itertools.combinations(rep.Z, 2)}
        assert colors == {rep.color}


class TestColoring:
    def test_named_rules(self):
        assert named_coloring("sum-parity")((1, 2)) == 1
        assert named_coloring("size-parity")((1, 2)) == 0
        assert named_coloring("min-parity")((3, 6)) == 1
        assert named_coloring("max-parity")((3, 6)) == 0
        assert named_coloring("constant:1")((0, 9)) == 1

    def test_unknown_rule_rejected(self):
        with pytest.raises(ValueError):
            named_coloring("zigzag")

    def test_from_dict_with_rule(self):
        col = coloring_from_dict({"front": {"schema": "uniform", "k": 2},
                                  "rule": "sum-parity"})
        assert isinstance(col.front, Front)
        assert col.color((0, 3)) == 1
        assert col.r == 2

    def test_from_dict_with_table(self):
        col = coloring_from_dict({
            "front": {"schema": "uniform", "k": 1},
            "table": {"0": 1, "1": 0},
            "default": 1,
        })
        assert col.color((0,)) == 1
        assert col.color((1,)) == 0
        assert col.color((7,)) == 1

    def test_from_dict_table_without_default_is_partial(self):
        col = coloring_from_dict({"front": {"schema": "uniform", "k": 1},
                                  "table": {"0": 1}})
        with pytest.raises(KeyError):
            col.color((5,))


class TestNWExtract:
    def test_point_parity(self):
        rep = nw_extract(Coloring(uniform_front(1), named_coloring("min-parity")),
                         8, 4)
        assert rep.Z == (0, 2, 4, 6)
        assert rep.side == 0
        assert rep.witnesses == (((0,), 0), ((2,), 0), ((4,), 0), ((6,), 0))
        assert rep.exhaustive

    def test_pair_sum_parity(self):
        rep = nw_extract(Coloring(uniform_front(2), named_coloring("sum-parity")),
                         8, 3)
        assert rep.Z == (0, 2, 4)
        assert rep.side == 0
        assert {s for s, _ in rep.witnesses} == {(0, 2), (0, 4), (2, 4)}

    def test_variable_size_parity(self):
        rep = nw_extract(Coloring(schreier_front(), named_coloring("size-parity")),
                         12, 3)
        # any set containing 0 realises the singleton member {0} of odd size,
        # so the even side starts at 1
        assert rep.Z == (1, 2, 3)
        assert rep.side == 0
        assert {s for s, _ in rep.witnesses} == {(1, 2), (1, 3)}

    def test_side_one_when_side_zero_impossible(self):
        rep = nw_extract(Coloring(uniform_front(1), named_coloring("constant:1")),
                         6, 4)
        assert rep.side == 1
        assert rep.Z == (0, 1, 2, 3)

    def test_pentagon_admits_no_homogeneous_triple(self):
        family = tuple(itertools.combinations(range(5), 2))
        with pytest.raises(WindowExhausted):
            nw_extract(Coloring(family, pentagon), 5, 3)

    def test_target_beyond_window_raises(self):
        with pytest.raises(WindowExhausted):
            nw_extract(Coloring(uniform_front(1), named_coloring("min-parity")),
                       6, 5)

    def test_requires_two_colors(self):
        with pytest.raises(ValueError):
            nw_extract(Coloring(uniform_front(1), lambda s: 0, r=3), 6, 2)

    def test_color_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            nw_extract(Coloring(uniform_front(1), lambda s: 2), 6, 2)

    def test_raw_family_restricted_to_window(self):
        family = ((0, 9), (0, 1), (1, 2))
        rep = nw_extract(Coloring(family, lambda s: 0), 5, 3)
        # the member reaching 9 lies beyond the window and is ignored
        assert rep.Z == (0, 1, 2)
        assert {s for s, _ in rep.witnesses} == {(0, 1), (1, 2)}

    @given(st.integers(0, 2 ** 15 - 1))
    @settings(max_examples=60, deadline=None)
    def test_six_point_pair_colorings_always_yield_triples(self, bits):
        pairs = list(itertools.combinations(range(6), 2))
        table = {p: (bits >> i) & 1 for i, p in enumerate(pairs)}
        rep = nw_extract(Coloring(tuple(pairs), lambda s: table[s]), 6, 3)
        assert len(rep.Z) == 3
        for s in itertools.combinations(rep.Z, 2):
            assert table[s] == rep.side

    @given(st.integers(0, 2 ** 10 - 1), st.integers(2, 4))
    @settings(max_examples=40, deadline=None)
    def test_recoloring_members_inside_Z_gives_declared_side(self, bits, target):
        front = schreier_front()
        window = 10
        from bqo.fronts import members_within
        members = members_within(front, window)
        table = {s: (bits >> (i % 10)) & 1 for i, s in enumerate(members)}
        col = Coloring(front, lambda s: table[s])
        try:
            rep = nw_extract(col, window, target)
        except WindowExhausted:
            return
        inside = set(rep.Z)
        for s in members:
            if set(s) <= inside:
                assert table[s] == rep.side


class TestJoinNodes:
    def test_pair_front_joins_are_triples(self):
        joins = join_nodes(uniform_front(2), 5)
        assert len(joins) == 10
        for u, s, t in joins:
            a, b, c = u
            assert s == (a, b) and t == (b, c)

    def test_point_front_joins_are_pairs(self):
        joins = join_nodes(uniform_front(1), 4)
        assert [(u, s, t) for u, s, t in joins] == [
            ((a, b), (a,), (b,))
            for a, b in itertools.combinations(range(4), 2)]

    def test_trivial_front_joins_are_single_points(self):
        joins = join_nodes(trivial_front(), 3)
        assert joins == [((0,), (), ()), ((1,), (), ()), ((2,), (), ())]

    def test_minimality_length_law(self):
        for front in (uniform_front(2), uniform_front(3), schreier_front()):
            for u, s, t in join_nodes(front, 7):
                assert len(u) == max(len(s), len(t) + 1)
                assert tuple(sorted(set(s) | set(t))) == u
                assert front_member(front, s)
                assert front_member(front, t)

    def test_variable_front_join_count(self):
        # members sized by least entry: joins group by their two least points
        joins = join_nodes(schreier_front(), 6)
        assert len(joins) == 10


def listed_base(points):
    points = tuple(points)

    def value(i: int) -> int:
        if i < len(points):
            return points[i]
        return points[-1] + 1 + (i - len(points))

    return from_enumeration(value, name="listed")


class TestDichotomy:
    def test_increasing_minima_land_on_strict_order(self):
        phi = SuperSeq(front=uniform_front(2), valuation=named_valuation("min"),
                       name="min")
        rep = dichotomy_extract(phi, lambda a, b: a < b, 8, relation_name="lt")
        assert rep.side == "lt"
        assert rep.side_index == 1
        assert rep.Z == tuple(range(8))
        assert rep.pairs_verified == rep.joins_colored == 56

    def test_pair_identity_lands_on_complement(self):
        rep = dichotomy_extract(identity_u2(), rado_leq, 8,
                                relation_name="rado-leq")
        assert rep.side == "rado-leq-complement"
        assert rep.side_index == 0
        assert rep.Z == tuple(range(8))

    def test_constant_valuation_lands_on_relation(self):
        phi = SuperSeq(front=uniform_front(2),
                       valuation=named_valuation("constant:5"), codomain=OMEGA,
                       name="c5")
        rep = dichotomy_extract(phi, OMEGA.leq, 8)
        assert rep.side == "R"
        assert rep.Z == tuple(range(8))

    def test_mixed_relation_returns_largest_one_sided_set(self):
        # minimum modulo 2, compared by equality: one shift ahead the
        # minimum moves from a to b, so the relation holds exactly on
        # same-parity neighbours
        phi = SuperSeq(front=uniform_front(2),
                       valuation=named_valuation("minmod2"), name="m2")
        rep = dichotomy_extract(phi, lambda a, b: a == b, 8, relation_name="eq")
        assert rep.side == "eq"
        # a join compares minima, so only the two least entries matter and
        # trailing points with no room for a completion ride along free
        assert rep.Z == (0, 2, 4, 6, 7)
        for a, b in itertools.combinations(rep.Z[:-1], 2):
            assert a % 2 == b % 2 or b == rep.Z[-1]

    def test_output_passes_perfect_check_on_restricted_base(self):
        phi = SuperSeq(front=uniform_front(2),
                       valuation=named_valuation("minmod2"), name="m2")
        R = lambda a, b: a == b
        rep = dichotomy_extract(phi, R, 8, relation_name="eq")
        restricted = SuperSeq(front=uniform_front(2, listed_base(rep.Z)),
                              valuation=phi.valuation, name="m2|Z")
        side_R = R if rep.side_index == 1 else (lambda a, b: not R(a, b))
        assert perfect_check(restricted, side_R, max(rep.Z) + 1).holds

    def test_schreier_front_dichotomy(self):
        phi = SuperSeq(front=schreier_front(),
                       valuation=lambda s: len(s), name="size")
        rep = dichotomy_extract(phi, lambda a, b: a <= b, 7, relation_name="le")
        inside = set(rep.Z)
        for u, s, t in join_nodes(schreier_front(), 7):
            if set(u) <= inside:
                assert (len(s) <= len(t)) == (rep.side_index == 1)


class TestLaverEmbed:
    def test_identity_embeds_at_twelve(self):
        rep = laver_embed(identity_u2(), 12)
        assert rep.X == tuple(range(1, 12))
        assert rep.pairs_checked == 3025
        assert rep.triples.homogeneous == tuple(range(12))
        assert rep.quadruples.homogeneous == tuple(range(12))
        assert rep.triples.side == 1 and rep.quadruples.side == 1

    def test_identity_embedding_holds_both_directions(self):
        rep = laver_embed(identity_u2(), 9)
        f = identity_u2()
        pairs = list(itertools.combinations(rep.X, 2))
        for p in pairs:
            for q in pairs:
                assert rado_leq(p, q) == RADO.leq(f.value(p), f.value(q))

    def test_small_window_still_succeeds(self):
        rep = laver_embed(identity_u2(), 5)
        assert rep.X == (1, 2, 3, 4)

    def test_window_four_fails_at_triple_stage(self):
        with pytest.raises(RamseyStageFailed):
            laver_embed(identity_u2(), 4)

    def test_min_size_is_honoured(self):
        with pytest.raises(RamseyStageFailed):
            laver_embed(identity_u2(), 5, min_size=5)
        rep = laver_embed(identity_u2(), 6, min_size=5)
        assert len(rep.X) == 5

    def test_good_sequence_rejected(self):
        const = SuperSeq(front=uniform_front(2), valuation=lambda s: (0, 1),
                         codomain=RADO, name="cpair")
        with pytest.raises(NotBadOnWindow):
            laver_embed(const, 8)

    def test_injective_equality_values_fail_the_triple_stage(self):
        # distinct values under equality: bad, but no comparison ever holds,
        # so no usable homogeneous set exists on the embedding side
        inj = SuperSeq(front=uniform_front(2), valuation=lambda s: s[0] * 100 + s[1],
                       codomain=OMEGA_EQ, name="inj")
        with pytest.raises(RamseyStageFailed):
            laver_embed(inj, 8)

    def test_embedding_verification_catches_disagreement(self):
        # comparisons hold everywhere except across equal shift boundaries,
        # so both stages pass and badness holds, but the reverse direction
        # of the same-first-entry comparisons disagrees with the pair order
        loose = CodedQO(
            name="loose",
            contains=lambda x: isinstance(x, tuple) and len(x) == 2,
            leq=lambda a, b: a[1] != b[0],
            key=lambda x: x,
            fmt=str,
            parse=lambda s: s,
        )
        f = SuperSeq(front=uniform_front(2), valuation=lambda s: tuple(s),
                     codomain=loose, name="id-loose")
        with pytest.raises(EmbeddingCheckFailed) as exc:
            laver_embed(f, 5)
        assert exc.value.pairs
        p, q, left, right = exc.value.pairs[0]
        assert rado_leq(p, q) == left
        assert loose.leq(tuple(p), tuple(q)) == right
        assert left != right

    def test_requires_pair_front_and_codomain(self):
        with pytest.raises(ValueError):
            laver_embed(SuperSeq(front=uniform_front(1),
                                 valuation=lambda s: s[0], codomain=OMEGA), 6)
        with pytest.raises(ValueError):
            laver_embed(SuperSeq(front=uniform_front(2),
                                 valuation=lambda s: tuple(s)), 6)


class TestRowsToSets:
    def test_identity_rows(self):
        rep = f2_to_powerset_badseq(identity_u2(), 6)
        assert rep.points == (0, 1, 2, 3, 4)
        assert rep.sets[0] == ((0, 1), (0, 2), (0, 3), (0, 4), (0, 5))
        assert rep.sets[4] == ((4, 5),)
        assert len(rep.witnesses) == 10
        assert rep.truncated
        assert rep.all_confirmed
        for m, n, w in rep.witnesses:
            assert w == (m, n)

    def test_constant_rejected(self):
        const = SuperSeq(front=uniform_front(2), valuation=lambda s: (0, 1),
                         codomain=RADO, name="cpair")
        with pytest.raises(NotBadOnWindow):
            f2_to_powerset_badseq(const, 6)

    def test_distinct_constants_under_equality(self):
        f = SuperSeq(front=uniform_front(2), valuation=lambda s: s[0],
                     codomain=OMEGA_EQ, name="first")
        rep = f2_to_powerset_badseq(f, 5)
        assert rep.sets == ((0, 0, 0, 0), (1, 1, 1), (2, 2), (3,))
        assert rep.all_confirmed

    def test_requires_pair_front_and_codomain(self):
        with pytest.raises(ValueError):
            f2_to_powerset_badseq(
                SuperSeq(front=schreier_front(), valuation=lambda s: len(s),
                         codomain=OMEGA), 6)
        with pytest.raises(ValueError):
            f2_to_powerset_badseq(
                SuperSeq(front=uniform_front(2), valuation=lambda s: tuple(s)), 6)


class TestSetsToPairs:
    def test_generator_family_recovers_identity(self):
        K = 8
        Ds = [tuple((m, n) for n in range(m + 1, K)) for m in range(5)]
        g = powerset_badseq_to_f2(Ds, RADO)
        for m in range(5):
            for n in range(m + 1, 5):
                assert g.value((m, n)) == (m, n)
        assert badness_check(g, 5).bad_on_window

    def test_round_trip_on_identity(self):
        rows = f2_to_powerset_badseq(identity_u2(), 6)
        g = powerset_badseq_to_f2(rows.sets, RADO)
        for m in range(5):
            for n in range(m + 1, 5):
                assert g.value((m, n)) == (m, n)

    def test_nested_increasing_rejected(self):
        with pytest.raises(NotBadPowersetSeq):
            powerset_badseq_to_f2([(0,), (1,), (2,)], OMEGA)

    def test_alternating_antichain_works_only_at_window_two(self):
        A2 = antichain(2)
        g = powerset_badseq_to_f2([(0,), (1,)], A2)
        assert g.value((0, 1)) == 0
        with pytest.raises(NotBadPowersetSeq):
            powerset_badseq_to_f2([(0,), (1,), (0,)], A2)

    def test_least_witness_by_canonical_key(self):
        rows = [(5, 3), (7,)]
        g = powerset_badseq_to_f2(rows, OMEGA_EQ)
        assert g.value((0, 1)) == 3

    def test_window_parameter_truncates(self):
        rows = [(0,), (1,), (0,)]
        g = powerset_badseq_to_f2(rows, antichain(2), window=2)
        assert g.value((0, 1)) == 0

    def test_beyond_window_pairs_raise(self):
        g = powerset_badseq_to_f2([(0,), (1,)], antichain(2))
        with pytest.raises(WindowExhausted):
            g.value((0, 5))

    @given(st.lists(st.lists(st.integers(0, 3), min_size=1, max_size=3),
                    min_size=2, max_size=4))
    @settings(max_examples=60, deadline=None)
    def test_outputs_are_bad_or_rejection_is_witnessed(self, rows):
        rows = [tuple(r) for r in rows]
        try:
            g = powerset_badseq_to_f2(rows, OMEGA)
        except NotBadPowersetSeq:
            # some earlier row must indeed be dominated by a later one
            assert any(
                all(any(q <= p for p in rows[n]) for q in rows[m])
                for m in range(len(rows)) for n in range(m + 1, len(rows)))
            return
        assert badness_check(g, len(rows)).bad_on_window
