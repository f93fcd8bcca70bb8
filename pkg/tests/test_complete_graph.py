import math
import random
from fractions import Fraction

import pytest

from controlsets import (
    BudgetError,
    InputError,
    ThresholdDistribution,
    analytic_min_size,
    cdf,
    complete,
    crosscheck_complete,
    empty_sufficient,
    from_thresholds,
    is_sufficient,
    optimal_oracle,
)


def induced_game(dist):
    return from_thresholds(complete(dist.n), dist.thetas)


def tenths(*xs):
    return ThresholdDistribution(tuple(Fraction(x, 10) for x in xs))


class TestCdf:
    def test_all_half_at_half(self):
        d = ThresholdDistribution((Fraction(1, 2),) * 4)
        assert cdf(d, Fraction(1, 2)) == 1

    def test_counting(self):
        assert cdf(tenths(1, 3, 5, 7, 9), Fraction(1, 2)) == Fraction(3, 5)

    def test_one_is_total(self):
        assert cdf(tenths(2, 9, 10), 1) == 1

    def test_domain(self):
        with pytest.raises(InputError):
            cdf(tenths(1, 2), Fraction(3, 2))


class TestEmptySufficient:
    def test_evenly_spread_thresholds(self):
        n = 6
        d = ThresholdDistribution(tuple(Fraction(i, n) for i in range(n)))
        assert empty_sufficient(d)
        assert is_sufficient(induced_game(d), set())

    def test_all_zero(self):
        assert empty_sufficient(ThresholdDistribution((Fraction(0),) * 4))

    def test_boundary_tie_at_one(self):
        # Thresholds (0, 1) on two players: the zero-threshold player is
        # indifferent at the all-0 profile and flips weakly, after which the
        # other is indifferent too, so the empty set is sufficient.  The
        # closed form must agree with the cascade.
        d = ThresholdDistribution((Fraction(0), Fraction(1)))
        assert is_sufficient(induced_game(d), set())
        assert empty_sufficient(d)

    def test_agrees_with_cascade_on_randoms(self):
        rng = random.Random(71)
        for _ in range(60):
            n = rng.randint(2, 9)
            d = ThresholdDistribution(
                tuple(Fraction(rng.randint(0, 8), 8) for _ in range(n))
            )
            assert empty_sufficient(d) == is_sufficient(induced_game(d), set())


class TestAnalyticMinSize:
    def test_spread_instance(self):
        m, chosen = analytic_min_size(tenths(1, 3, 5, 7, 9))
        assert m == 1
        assert chosen == frozenset({4})  # the 0.9-threshold player

    def test_uniform_half_even(self):
        for n in (4, 6, 8):
            d = ThresholdDistribution((Fraction(1, 2),) * n)
            assert analytic_min_size(d)[0] == n // 2

    def test_uniform_half_odd(self):
        for n in (3, 5, 7):
            d = ThresholdDistribution((Fraction(1, 2),) * n)
            m, _ = analytic_min_size(d)
            assert m == n // 2
            assert optimal_oracle(induced_game(d)).min_size == m

    def test_zero_when_empty_suffices(self):
        n = 5
        d = ThresholdDistribution(tuple(Fraction(i, n) for i in range(n)))
        assert analytic_min_size(d) == (0, frozenset())

    def test_tie_break_prefers_low_index(self):
        d = ThresholdDistribution((Fraction(1, 2),) * 4)
        _, chosen = analytic_min_size(d)
        assert chosen == frozenset({0, 1})

    def test_min_size_zero_iff_empty_sufficient(self):
        rng = random.Random(73)
        for _ in range(40):
            n = rng.randint(2, 9)
            d = ThresholdDistribution(
                tuple(Fraction(rng.randint(0, 6), 6) for _ in range(n))
            )
            assert (analytic_min_size(d)[0] == 0) == empty_sufficient(d)

    def test_adding_zero_threshold_player_never_increases(self):
        rng = random.Random(79)
        for _ in range(30):
            n = rng.randint(2, 8)
            thetas = tuple(Fraction(rng.randint(0, 10), 10) for _ in range(n))
            before, _ = analytic_min_size(ThresholdDistribution(thetas))
            after, _ = analytic_min_size(ThresholdDistribution(thetas + (Fraction(0),)))
            assert after <= before

    def test_matches_fine_grid_scan(self):
        # The candidate-point optimum must equal a dense grid scan of the
        # same objective, up to grid resolution.
        rng = random.Random(83)
        steps = 400
        for _ in range(20):
            n = rng.randint(2, 9)
            d = ThresholdDistribution(
                tuple(Fraction(rng.randint(0, 12), 12) for _ in range(n))
            )
            m, _ = analytic_min_size(d)
            grid_sup = max(
                (n - 1) * Fraction(k, steps)
                - sum(1 for t in d.thetas if t < Fraction(k, steps))
                for k in range(steps + 1)
            )
            lo = max(0, math.ceil(grid_sup))
            hi = max(0, math.ceil(grid_sup + Fraction(n - 1, steps)))
            assert lo <= m <= hi


class TestCrosscheck:
    def test_random_instances_match_oracle(self):
        rng = random.Random(89)
        for _ in range(40):
            n = rng.randint(2, 10)
            d = ThresholdDistribution(
                tuple(
                    Fraction(rng.randint(0, q), q)
                    for q in (rng.randint(1, 12) for _ in range(n))
                )
            )
            assert crosscheck_complete(d)

    def test_named_examples(self):
        assert crosscheck_complete(tenths(1, 3, 5, 7, 9))
        assert crosscheck_complete(ThresholdDistribution((Fraction(1, 2),) * 6))

    def test_budget(self):
        d = ThresholdDistribution((Fraction(1, 2),) * 15)
        with pytest.raises(BudgetError):
            crosscheck_complete(d)


class TestValidation:
    def test_thresholds_sorted_on_construction(self):
        d = tenths(9, 1, 5)
        assert d.thetas == (Fraction(1, 10), Fraction(5, 10), Fraction(9, 10))

    def test_out_of_range_rejected(self):
        with pytest.raises(InputError):
            ThresholdDistribution((Fraction(1, 2), Fraction(11, 10)))

    def test_needs_two_players(self):
        with pytest.raises(InputError):
            ThresholdDistribution((Fraction(1, 2),))
