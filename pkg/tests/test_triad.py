from __future__ import annotations

import math
import random
from fractions import Fraction
from itertools import combinations

import pytest

from teamnets.network import CommunicationNetwork, week_window
from teamnets.triad import (
    RelativeTriadCensus,
    TriadCensus,
    census_closed_form,
    mean_weekly_relative_census,
    relative_census,
    triad_census,
)


def make_net(roster, edges):
    return CommunicationNetwork(
        roster=tuple(roster),
        edges=frozenset(tuple(sorted(e)) for e in edges),
        window=week_window(1),
    )


def random_net(rng, n, p):
    roster = [f"v{i}" for i in range(n)]
    edges = {
        (a, b) for a, b in combinations(roster, 2) if rng.random() < p
    }
    return make_net(roster, edges)


FOUR_NODE = make_net("ABCD", [("A", "C"), ("A", "D"), ("C", "D"), ("B", "D")])


class TestCensus:
    def test_four_node_walkthrough(self):
        assert triad_census(FOUR_NODE).counts == (0, 1, 2, 1)

    def test_empty_network(self):
        net = make_net("ABCD", [])
        assert triad_census(net).counts == (4, 0, 0, 0)

    def test_complete_network(self):
        roster = "ABCDE"
        net = make_net(roster, combinations(roster, 2))
        assert triad_census(net).counts == (0, 0, 0, 10)

    def test_too_small(self):
        with pytest.raises(ValueError):
            triad_census(make_net("AB", []))
        with pytest.raises(ValueError):
            census_closed_form(make_net("AB", []))

    def test_total_is_n_choose_3(self):
        rng = random.Random(0)
        for _ in range(50):
            n = rng.randint(3, 10)
            net = random_net(rng, n, rng.random())
            assert triad_census(net).total == math.comb(n, 3)


class TestClosedForm:
    def test_four_node_walkthrough(self):
        assert census_closed_form(FOUR_NODE).counts == (0, 1, 2, 1)

    def test_star_has_no_triangles(self):
        # K_{1,4}: the hub pairs give C(4,2) = 6 two-edge triads
        net = make_net("HABCD", [("H", x) for x in "ABCD"])
        expected = (4, 0, 6, 0)
        assert census_closed_form(net).counts == expected
        assert triad_census(net).counts == expected

    def test_matches_enumeration_on_random_graphs(self):
        rng = random.Random(42)
        for _ in range(300):
            n = rng.randint(3, 12)
            net = random_net(rng, n, rng.random())
            assert census_closed_form(net).counts == triad_census(net).counts


class TestRelativeCensus:
    def test_walkthrough(self):
        assert relative_census(TriadCensus((0, 1, 2, 1))).freqs == (0.0, 0.25, 0.5, 0.25)

    def test_all_empty(self):
        assert relative_census(TriadCensus((4, 0, 0, 0))).freqs == (1.0, 0.0, 0.0, 0.0)

    def test_all_complete(self):
        assert relative_census(TriadCensus((0, 0, 0, 10))).freqs == (0.0, 0.0, 0.0, 1.0)

    def test_zero_total_raises(self):
        with pytest.raises(ValueError):
            relative_census(TriadCensus((0, 0, 0, 0)))

    def test_sums_to_one(self):
        rng = random.Random(9)
        for _ in range(100):
            net = random_net(rng, rng.randint(3, 9), rng.random())
            rel = relative_census(triad_census(net))
            assert math.fsum(rel.freqs) == pytest.approx(1.0, abs=1e-12)


class TestMeanWeekly:
    def test_singleton(self):
        one = RelativeTriadCensus((1.0, 0.0, 0.0, 0.0))
        assert mean_weekly_relative_census([one]).freqs == (1.0, 0.0, 0.0, 0.0)

    def test_two_extremes(self):
        a = RelativeTriadCensus((1.0, 0.0, 0.0, 0.0))
        b = RelativeTriadCensus((0.0, 0.0, 0.0, 1.0))
        assert mean_weekly_relative_census([a, b]).freqs == (0.5, 0.0, 0.0, 0.5)

    def test_three_weeks_against_fraction_oracle(self):
        weekly_counts = [(1, 2, 1, 0), (2, 2, 0, 0), (0, 4, 0, 0)]
        weekly = [relative_census(TriadCensus(c)) for c in weekly_counts]
        got = mean_weekly_relative_census(weekly)
        for k in range(4):
            expected = sum(Fraction(c[k], sum(c)) for c in weekly_counts) / 3
            assert got.freqs[k] == pytest.approx(float(expected), abs=1e-12)
        assert math.fsum(got.freqs) == pytest.approx(1.0, abs=1e-12)

    def test_empty_raises(self):
        with pytest.raises(ValueError):
            mean_weekly_relative_census([])


class TestInvariances:
    def test_label_permutation(self):
        rng = random.Random(4)
        for _ in range(30):
            n = rng.randint(3, 8)
            net = random_net(rng, n, rng.random())
            mapping = dict(zip(net.roster, rng.sample(net.roster, n)))
            relabeled = make_net(
                [mapping[v] for v in net.roster],
                [(mapping[a], mapping[b]) for a, b in net.edges],
            )
            assert triad_census(relabeled).counts == triad_census(net).counts

    def test_complement_duality(self):
        rng = random.Random(8)
        for _ in range(30):
            n = rng.randint(3, 8)
            net = random_net(rng, n, rng.random())
            complement = make_net(
                net.roster,
                [e for e in combinations(net.roster, 2) if e not in net.edges],
            )
            assert triad_census(complement).counts == tuple(
                reversed(triad_census(net).counts)
            )
