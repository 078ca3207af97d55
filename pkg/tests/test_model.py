import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from modalsim.model import (
    CRITERIA,
    FILTER_MAX,
    FILTER_MIN,
    MODES,
    Agent,
    Criterion,
    Mode,
    TripWindow,
    available_modes,
    best_mode,
    blend_filter,
    criteria_vector,
    decide,
    habit_frequencies,
    habit_triggers,
    perceive,
    record_trip,
    score,
    score_all,
)

value_grids = arrays(float, (4, 6), elements=st.floats(0, 100))
filter_grids = arrays(float, (4, 6), elements=st.floats(FILTER_MIN, FILTER_MAX))
priority_vectors = arrays(float, (6,), elements=st.floats(0.1, 100))


def make_agent(
    distance=5.0,
    access_bus=True,
    access_car=True,
    priorities=None,
    filter_grid=None,
    trips=None,
    current=Mode.CAR,
):
    return Agent(
        id=0,
        current_mode=current,
        distance_km=distance,
        access_bus=access_bus,
        access_car=access_car,
        priorities=criteria_vector(priorities) if priorities is not None else np.full(6, 50.0),
        filter=np.asarray(filter_grid, dtype=float) if filter_grid is not None else np.ones((4, 6)),
        trips=trips if trips is not None else TripWindow(),
    )


class TestEnums:
    def test_exactly_four_modes_in_canonical_order(self):
        assert [m.name for m in Mode] == ["CAR", "BIKE", "BUS", "WALK"]

    def test_exactly_six_criteria(self):
        assert [c.name for c in Criterion] == [
            "ECOLOGY",
            "COMFORT",
            "PRICE",
            "PRACTICALITY",
            "TIME",
            "SAFETY",
        ]

    def test_labels_round_trip(self):
        for m in Mode:
            assert Mode.from_label(m.label) is m
        with pytest.raises(ValueError):
            Mode.from_label("tram")


class TestAvailableModes:
    def test_eight_km_excludes_walk_includes_bike(self):
        assert available_modes(8, True, True) == {Mode.CAR, Mode.BIKE, Mode.BUS}

    def test_short_distance_no_access(self):
        assert available_modes(3, False, False) == {Mode.BIKE, Mode.WALK}

    def test_sole_mode_blocked_gives_empty_set(self):
        assert available_modes(20, False, True, blocked=Mode.CAR) == set()

    def test_thresholds_are_strict(self):
        assert Mode.WALK not in available_modes(7.0, True, True)
        assert Mode.BIKE not in available_modes(15.0, True, True)
        assert Mode.WALK in available_modes(6.999, True, True)


class TestPerceive:
    def test_multiplication(self):
        objective = np.zeros((4, 6))
        objective[Mode.CAR, Criterion.COMFORT] = 80.0
        filt = np.ones((4, 6))
        filt[Mode.CAR, Criterion.COMFORT] = 1.2
        out = perceive(objective, filt, True)
        assert out[Mode.CAR, Criterion.COMFORT] == pytest.approx(96.0)

    def test_upper_clamp(self):
        objective = np.full((4, 6), 80.0)
        filt = np.full((4, 6), 1.5)
        assert np.all(perceive(objective, filt, True) == 100.0)

    def test_identity_filter(self):
        objective = np.random.default_rng(0).uniform(0, 100, (4, 6))
        assert np.array_equal(perceive(objective, np.ones((4, 6)), True), objective)

    def test_disabled_returns_objective(self):
        objective = np.full((4, 6), 40.0)
        filt = np.full((4, 6), 1.9)
        assert np.array_equal(perceive(objective, filt, False), objective)

    @given(value_grids, filter_grids)
    def test_output_within_value_bounds(self, objective, filt):
        out = perceive(objective, filt, True)
        assert np.all(out >= 0) and np.all(out <= 100)


class TestScore:
    def test_constant_values(self):
        values = np.full((4, 6), 50.0)
        assert score(values, criteria_vector([1, 2, 3, 4, 5, 6]), Mode.BUS) == pytest.approx(50.0)

    def test_survey_car_user_oracle(self):
        # Weighted sum of the mean car-user priorities against the mean
        # car-user evaluation of the car, both on the 0-100 scale;
        # expected value hand-computed independently.
        priorities = criteria_vector([56.5, 71.9, 56.3, 85.7, 77.9, 67.2])
        values = np.zeros((4, 6))
        values[Mode.CAR] = [25.2, 85.1, 38.4, 83.2, 82.1, 76.9]
        assert score(values, priorities, Mode.CAR) == pytest.approx(68.35, abs=0.01)

    def test_single_active_criterion(self):
        values = np.zeros((4, 6))
        values[Mode.WALK, Criterion.ECOLOGY] = 100.0
        priorities = criteria_vector([100, 0, 0, 0, 0, 0])
        assert score(values, priorities, Mode.WALK) == pytest.approx(100.0)

    def test_degenerate_priorities(self):
        with pytest.raises(ValueError, match="degenerate priorities"):
            score(np.full((4, 6), 50.0), np.zeros(6), Mode.CAR)

    @given(value_grids, priority_vectors)
    def test_bounds(self, values, priorities):
        scores = score_all(values, priorities)
        assert np.all(scores >= -1e-9) and np.all(scores <= 100 + 1e-9)

    @given(value_grids, priority_vectors, st.floats(0.1, 50))
    def test_monotone_in_single_value(self, values, priorities, bump):
        before = score(values, priorities, Mode.BIKE)
        values = values.copy()
        values[Mode.BIKE, Criterion.TIME] = min(100.0, values[Mode.BIKE, Criterion.TIME] + bump)
        assert score(values, priorities, Mode.BIKE) >= before - 1e-9


class TestBestMode:
    def test_strict_maximum(self):
        values = np.zeros((4, 6))
        values[Mode.CAR] = 60.0
        values[Mode.BUS] = 50.0
        priorities = np.full(6, 10.0)
        assert best_mode(values, priorities, {Mode.CAR, Mode.BUS}) is Mode.CAR

    def test_tie_break_canonical(self):
        values = np.full((4, 6), 42.0)
        assert best_mode(values, np.full(6, 1.0), set(MODES)) is Mode.CAR
        assert best_mode(values, np.full(6, 1.0), {Mode.BUS, Mode.WALK}) is Mode.BUS

    def test_empty_candidates(self):
        with pytest.raises(ValueError, match="no available mode"):
            best_mode(np.zeros((4, 6)), np.full(6, 1.0), set())

    @given(value_grids, priority_vectors, st.floats(0.01, 100))
    def test_invariant_under_priority_scaling(self, values, priorities, k):
        assert best_mode(values, priorities, set(MODES)) is best_mode(values, priorities * k, set(MODES))

    @given(value_grids, priority_vectors)
    def test_result_in_candidates(self, values, priorities):
        candidates = {Mode.BIKE, Mode.WALK}
        assert best_mode(values, priorities, candidates) in candidates


class TestTripWindow:
    def test_full_car_window(self):
        w = TripWindow([Mode.CAR] * 100)
        freq = habit_frequencies(w)
        assert freq[Mode.CAR] == 1.0 and freq.sum() == 1.0

    def test_half_and_half(self):
        w = TripWindow([Mode.CAR] * 50 + [Mode.BIKE] * 50)
        freq = w.frequencies()
        assert freq[Mode.CAR] == 0.5 and freq[Mode.BIKE] == 0.5

    def test_empty_window(self):
        w = TripWindow()
        assert len(w) == 0
        assert np.all(w.frequencies() == 0)
        assert w.usual_mode() is None

    def test_eviction_at_capacity(self):
        w = TripWindow([Mode.CAR] * 100)
        w.append(Mode.BIKE)
        assert len(w) == 100
        assert w.counts[Mode.CAR] == 99 and w.counts[Mode.BIKE] == 1

    def test_modes_order_oldest_first(self):
        w = TripWindow([Mode.CAR, Mode.BIKE, Mode.BUS], capacity=3)
        w.append(Mode.WALK)
        assert w.modes() == [Mode.BIKE, Mode.BUS, Mode.WALK]

    def test_usual_mode_tie_break(self):
        w = TripWindow([Mode.WALK, Mode.BUS])
        assert w.usual_mode() is Mode.BUS  # canonical order wins the tie

    @given(st.lists(st.sampled_from(list(Mode)), max_size=250))
    def test_length_bounded_and_frequencies_normalized(self, modes):
        w = TripWindow(modes)
        assert len(w) <= 100
        freq = w.frequencies()
        if len(w):
            assert freq.sum() == pytest.approx(1.0)
        else:
            assert freq.sum() == 0.0


class TestHabitTriggers:
    def test_always_when_frequency_one(self):
        freq = TripWindow([Mode.CAR] * 100).frequencies()
        assert habit_triggers(freq, 0.0)
        assert habit_triggers(freq, 0.999999)

    def test_never_when_empty(self):
        assert not habit_triggers(TripWindow().frequencies(), 0.0)

    @pytest.mark.parametrize("f", [0.25, 0.5, 0.75])
    def test_empirical_rate_within_binomial_bounds(self, f):
        n_mode = int(100 * f)
        w = TripWindow([Mode.CAR] * n_mode + [Mode.BIKE, Mode.BUS, Mode.WALK] * ((100 - n_mode) // 3))
        freq = w.frequencies()
        f_actual = freq.max()
        rng = np.random.default_rng(123)
        n = 10_000
        hits = sum(habit_triggers(freq, rng.random()) for _ in range(n))
        sigma = np.sqrt(f_actual * (1 - f_actual) / n)
        assert abs(hits / n - f_actual) < 4 * sigma


class TestBlendFilter:
    def proto(self, seed):
        return np.random.default_rng(seed).uniform(FILTER_MIN, FILTER_MAX, (4, 4, 6))

    def test_one_hot_returns_prototype_exactly(self):
        protos = self.proto(1)
        freq = np.array([0.0, 1.0, 0.0, 0.0])
        assert np.array_equal(blend_filter(freq, protos), protos[Mode.BIKE])

    def test_half_half_is_entrywise_mean(self):
        protos = self.proto(2)
        out = blend_filter(np.array([0.5, 0.5, 0.0, 0.0]), protos)
        expected = (protos[Mode.CAR] + protos[Mode.BIKE]) / 2  # independent arithmetic
        assert np.allclose(out, expected)

    def test_identical_prototypes(self):
        grid = np.full((4, 6), 1.2)
        protos = np.stack([grid] * 4)
        out = blend_filter(np.array([0.1, 0.2, 0.3, 0.4]), protos)
        assert np.allclose(out, grid)

    def test_zero_mass_error(self):
        with pytest.raises(ValueError, match="no habit mass"):
            blend_filter(np.zeros(4), self.proto(3))

    @given(arrays(float, (4,), elements=st.floats(0, 1)).filter(lambda f: f.sum() > 1e-6))
    def test_output_within_filter_bounds(self, freq):
        out = blend_filter(freq, self.proto(4))
        assert np.all(out >= FILTER_MIN - 1e-12) and np.all(out <= FILTER_MAX + 1e-12)


class TestDecide:
    def layout_favoring(self, mode, high=90.0, low=40.0):
        layout = np.full((4, 6), low)
        layout[mode] = high
        return layout

    def test_plain_rational_choice(self):
        agent = make_agent(trips=TripWindow())
        d = decide(agent, self.layout_favoring(Mode.CAR), biases_enabled=False, habits_enabled=False)
        assert d.chosen is Mode.CAR
        assert not (d.by_habit or d.habit_contrary or d.biased or d.constrained or d.forced)

    def test_habit_overrides_better_mode(self):
        agent = make_agent(trips=TripWindow([Mode.CAR] * 100))
        d = decide(agent, self.layout_favoring(Mode.BUS), habits_enabled=True, u_habit=0.3)
        assert d.chosen is Mode.CAR and d.by_habit and d.habit_contrary

    def test_biased_flag_from_filter_inflation(self):
        layout = self.layout_favoring(Mode.BUS, high=60.0, low=50.0)
        filt = np.ones((4, 6))
        filt[Mode.CAR] = 1.5  # subjective argmax flips to car
        agent = make_agent(filter_grid=filt, trips=TripWindow())
        d = decide(agent, layout, biases_enabled=True, habits_enabled=False)
        assert d.chosen is Mode.CAR and d.biased
        # oracle: direct argmax comparison on both grids
        assert best_mode(layout, agent.priorities, set(MODES)) is Mode.BUS
        assert best_mode(perceive(layout, filt, True), agent.priorities, set(MODES)) is Mode.CAR

    def test_biases_disabled_never_biased(self):
        filt = np.full((4, 6), 1.9)
        agent = make_agent(filter_grid=filt, trips=TripWindow([Mode.BUS] * 10))
        d = decide(agent, self.layout_favoring(Mode.WALK), biases_enabled=False, u_habit=0.99)
        assert not d.biased

    def test_habits_disabled_never_by_habit(self):
        agent = make_agent(trips=TripWindow([Mode.CAR] * 100))
        d = decide(agent, self.layout_favoring(Mode.CAR), habits_enabled=False, u_habit=0.0)
        assert not d.by_habit and not d.habit_contrary

    def test_blocked_mode_not_chosen_when_alternative_exists(self):
        agent = make_agent(trips=TripWindow([Mode.CAR] * 100))
        d = decide(agent, self.layout_favoring(Mode.CAR), blocked=Mode.CAR, u_habit=0.0)
        assert d.chosen is not Mode.CAR

    def test_constrained_when_preferred_unavailable(self):
        agent = make_agent(distance=20.0, access_bus=True, access_car=False, trips=TripWindow())
        d = decide(agent, self.layout_favoring(Mode.CAR), habits_enabled=False)
        assert d.chosen is Mode.BUS and d.constrained

    def test_forced_retention_when_nothing_available(self):
        agent = make_agent(
            distance=20.0, access_bus=False, access_car=True, current=Mode.CAR, trips=TripWindow()
        )
        d = decide(agent, self.layout_favoring(Mode.CAR), blocked=Mode.CAR)
        assert d.forced and d.constrained and d.chosen is Mode.CAR

    def test_satisfaction_matches_chosen_score(self):
        agent = make_agent(trips=TripWindow())
        layout = self.layout_favoring(Mode.BIKE)
        d = decide(agent, layout, biases_enabled=False, habits_enabled=False)
        assert d.satisfaction == pytest.approx(score(layout, agent.priorities, d.chosen))

    @given(
        value_grids,
        filter_grids,
        priority_vectors,
        st.floats(0, 0.999),
        st.sampled_from(list(Mode)),
    )
    @settings(max_examples=60)
    def test_rational_branch_matches_brute_force(self, layout, filt, priorities, u, usual):
        # all four modes available: short distance, full access, habits off
        agent = make_agent(
            distance=3.0, priorities=priorities, filter_grid=filt, trips=TripWindow([usual] * 5)
        )
        d = decide(agent, layout, biases_enabled=True, habits_enabled=False, u_habit=u)
        subjective = perceive(layout, filt, True)
        brute = max(MODES, key=lambda m: (score(subjective, priorities, m), -int(m)))
        assert d.chosen is brute


class TestRecordTrip:
    def test_filter_drifts_one_percent(self):
        protos = np.random.default_rng(5).uniform(FILTER_MIN, FILTER_MAX, (4, 4, 6))
        agent = make_agent(trips=TripWindow([Mode.CAR] * 100), filter_grid=protos[Mode.CAR])
        record_trip(agent, Mode.BIKE, protos, biases_enabled=True)
        freq = agent.trips.frequencies()
        assert freq[Mode.CAR] == pytest.approx(0.99) and freq[Mode.BIKE] == pytest.approx(0.01)
        expected = 0.99 * protos[Mode.CAR] + 0.01 * protos[Mode.BIKE]
        assert np.allclose(agent.filter, expected)

    def test_append_to_empty_window(self):
        protos = np.ones((4, 4, 6))
        agent = make_agent(trips=TripWindow())
        record_trip(agent, Mode.WALK, protos)
        assert len(agent.trips) == 1
        assert agent.trips.frequencies()[Mode.WALK] == 1.0
        assert agent.current_mode is Mode.WALK

    def test_same_mode_at_capacity_is_stable(self):
        protos = np.ones((4, 4, 6))
        agent = make_agent(trips=TripWindow([Mode.BUS] * 100))
        before = agent.trips.frequencies().copy()
        record_trip(agent, Mode.BUS, protos)
        assert np.array_equal(agent.trips.frequencies(), before)

    def test_biases_disabled_keeps_filter(self):
        protos = np.full((4, 4, 6), 1.5)
        agent = make_agent(trips=TripWindow([Mode.CAR] * 10), filter_grid=np.ones((4, 6)))
        record_trip(agent, Mode.CAR, protos, biases_enabled=False)
        assert np.array_equal(agent.filter, np.ones((4, 6)))
