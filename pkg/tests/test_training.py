from fractions import Fraction

import numpy as np
import pytest

from sonowork.errors import (
    BadBlock,
    EmptySession,
    IllegalEvent,
    NotCompleted,
    ReplayDisabled,
    SkipDisabled,
)
from sonowork.synth import SonifyConfig, write_wav
from sonowork.training import (
    Begin,
    FeedbackDone,
    Key,
    KeyPress,
    Modality,
    Phase,
    PresentationDone,
    Replay,
    ResponseRecord,
    SessionState,
    SkipIntro,
    Stimulus,
    StimulusClass,
    advance,
    expected_key,
    generate_block,
    new_session,
    score_records,
    score_session,
    simulate_session,
    synthetic_participant,
)

CONFIG = SonifyConfig()


class TestExpectedKey:
    def test_mapping(self):
        assert expected_key(StimulusClass.INCREASING) == Key.UP
        assert expected_key(StimulusClass.DECREASING) == Key.DOWN
        assert expected_key(StimulusClass.SINE) == Key.LEFT
        assert expected_key(StimulusClass.SQUARE) == Key.RIGHT

    def test_bijection(self):
        keys = {expected_key(cls) for cls in StimulusClass}
        assert keys == set(Key)
        assert len(keys) == len(list(StimulusClass))


class TestGenerateBlock:
    def test_balance_and_determinism(self):
        a = generate_block(1, 3, 7, CONFIG)
        b = generate_block(1, 3, 7, CONFIG)
        assert len(a) == 12
        for cls in StimulusClass:
            assert sum(1 for s in a if s.stimulus_class == cls) == 3
        for s1, s2 in zip(a, b):
            assert s1.stimulus_class == s2.stimulus_class
            assert write_wav(s1.audio) == write_wav(s2.audio)

    def test_contains_exactly_four_classes(self):
        block = generate_block(1, 2, 0, CONFIG)
        assert {s.stimulus_class for s in block} == set(StimulusClass)

    def test_different_seeds_differ(self):
        a = [s.stimulus_class for s in generate_block(1, 5, 1, CONFIG)]
        b = [s.stimulus_class for s in generate_block(1, 5, 2, CONFIG)]
        assert a != b  # 20-item shuffles colliding is vanishingly unlikely

    def test_bad_block(self):
        for block in (0, 4, -1):
            with pytest.raises(BadBlock):
                generate_block(block, 1, 0, CONFIG)

    def test_block1_signals_clean_and_normalized(self):
        for stim in generate_block(1, 2, 3, CONFIG):
            assert len(stim.series) == 64
            assert stim.series.y.min() >= 0.0 and stim.series.y.max() <= 1.0

    def test_block2_increasing_slope_positive(self):
        # regression oracle over the generated series
        for stim in generate_block(2, 5, 11, CONFIG):
            if stim.stimulus_class == StimulusClass.INCREASING:
                slope = np.polyfit(np.arange(64), stim.series.y, 1)[0]
                assert slope > 0
            if stim.stimulus_class == StimulusClass.DECREASING:
                slope = np.polyfit(np.arange(64), stim.series.y, 1)[0]
                assert slope < 0

    def test_block2_noisy(self):
        ramp = np.arange(64) / 63.0
        noisy = [s for s in generate_block(2, 2, 5, CONFIG) if s.stimulus_class == StimulusClass.INCREASING]
        for stim in noisy:
            assert np.abs(stim.series.y - ramp).max() > 0.0
            assert np.abs(stim.series.y - ramp).max() <= 0.1 + 1e-12

    def test_block3_period_counts_vary(self):
        periods = set()
        for stim in generate_block(3, 8, 17, CONFIG):
            if stim.stimulus_class == StimulusClass.SQUARE:
                # count level transitions of the clean pattern underneath
                sign_changes = int(np.sum(np.abs(np.diff(stim.series.y > 0.5))))
                periods.add(sign_changes)
        assert len(periods) > 1

    def test_ids_sequential(self):
        block = generate_block(1, 3, 9, CONFIG)
        assert [s.id for s in block] == list(range(12))

    def test_modality_applied(self):
        block = generate_block(1, 1, 0, CONFIG, Modality.AUDIO_ONLY)
        assert all(s.modality == Modality.AUDIO_ONLY for s in block)


def _tiny_session(**kwargs) -> SessionState:
    return new_session(generate_block(1, 1, 42, CONFIG), **kwargs)


def _answer(state: SessionState, correct=True, latency=500.0) -> SessionState:
    key = expected_key(state.current.stimulus_class)
    if not correct:
        key = Key.UP if key != Key.UP else Key.DOWN
    return advance(state, KeyPress(key=key, latency_ms=latency))


class TestStateMachine:
    def test_full_walkthrough(self):
        state = _tiny_session()
        assert state.phase == Phase.INTRO
        state = advance(state, Begin())
        for i in range(4):
            assert state.phase == Phase.PRESENTING
            assert state.cursor == i
            state = advance(state, PresentationDone())
            assert state.phase == Phase.AWAITING_RESPONSE
            state = _answer(state)
            assert state.phase == Phase.FEEDBACK
            assert len(state.responses) == i + 1
            assert state.responses[-1].correct
            state = advance(state, FeedbackDone())
        assert state.phase == Phase.COMPLETED
        assert len(state.responses) == state.total

    def test_skip_intro(self):
        state = advance(_tiny_session(), SkipIntro())
        assert state.phase == Phase.PRESENTING

    def test_skip_disabled(self):
        state = _tiny_session(allow_skip_intro=False)
        with pytest.raises(SkipDisabled):
            advance(state, SkipIntro())

    def test_replay_returns_to_presenting_without_recording(self):
        state = advance(_tiny_session(), Begin())
        state = advance(state, PresentationDone())
        cursor = state.cursor
        replayed = advance(state, Replay())
        assert replayed.phase == Phase.PRESENTING
        assert replayed.cursor == cursor
        assert replayed.responses == state.responses

    def test_replay_disabled(self):
        state = advance(_tiny_session(allow_replay=False), Begin())
        state = advance(state, PresentationDone())
        with pytest.raises(ReplayDisabled):
            advance(state, Replay())

    def test_illegal_events(self):
        state = _tiny_session()
        with pytest.raises(IllegalEvent):
            advance(state, KeyPress(key=Key.UP))
        with pytest.raises(IllegalEvent):
            advance(state, PresentationDone())
        begun = advance(state, Begin())
        with pytest.raises(IllegalEvent):
            advance(begun, Begin())
        with pytest.raises(IllegalEvent):
            advance(begun, KeyPress(key=Key.UP))

    def test_incorrect_key_recorded(self):
        state = advance(_tiny_session(), Begin())
        state = advance(state, PresentationDone())
        state = _answer(state, correct=False)
        assert not state.responses[-1].correct

    def test_negative_latency_rejected(self):
        with pytest.raises(ValueError):
            KeyPress(key=Key.UP, latency_ms=-1.0)

    def test_safety_random_walk(self):
        # responses never outrun presentations; completion iff all answered
        rng = np.random.default_rng(55)
        state = new_session(generate_block(1, 2, 8, CONFIG))
        events = [Begin(), SkipIntro(), PresentationDone(), Replay(), FeedbackDone(),
                  KeyPress(key=Key.LEFT, latency_ms=10.0)]
        for _ in range(400):
            event = events[int(rng.integers(0, len(events)))]
            try:
                state = advance(state, event)
            except (IllegalEvent, SkipDisabled, ReplayDisabled):
                continue
            assert len(state.responses) <= state.cursor + 1
            if state.phase == Phase.COMPLETED:
                assert len(state.responses) == state.total
            if len(state.responses) == state.total:
                # only the last stimulus's feedback can hold a full log
                assert state.phase in (Phase.FEEDBACK, Phase.COMPLETED)
                assert state.cursor == state.total - 1
            if state.phase == Phase.COMPLETED:
                break


class TestScoring:
    def _completed_state(self, outcomes, latencies=None) -> SessionState:
        state = new_session(generate_block(1, len(outcomes) // 4 or 1, 4, CONFIG))
        outcomes = list(outcomes)
        latencies = latencies or [100.0] * len(outcomes)
        state = advance(state, Begin())
        for ok, latency in zip(outcomes, latencies):
            state = advance(state, PresentationDone())
            state = _answer(state, correct=ok, latency=latency)
            state = advance(state, FeedbackDone())
        return state

    def test_ten_of_thirteen_displays_77(self):
        # hand-built 13-response log with 10 correct
        classes = [StimulusClass.INCREASING, StimulusClass.DECREASING, StimulusClass.SINE,
                   StimulusClass.SQUARE] * 3 + [StimulusClass.INCREASING]
        pairs = []
        for i, cls in enumerate(classes):
            correct = i < 10
            key = expected_key(cls) if correct else (Key.DOWN if expected_key(cls) != Key.DOWN else Key.UP)
            pairs.append((cls, ResponseRecord(stimulus_id=i, key=key, correct=correct, latency_ms=250.0)))
        report = score_records(pairs)
        assert report.total == 13 and report.correct == 10
        assert report.overall_pct == pytest.approx(100 * 10 / 13)
        assert report.overall_display == "77%"

    def test_zero_of_four(self):
        state = self._completed_state([False, False, False, False])
        report = score_session(state)
        assert report.overall_pct == 0.0
        assert report.overall_display == "0%"

    def test_not_completed(self):
        state = advance(_tiny_session(), Begin())
        with pytest.raises(NotCompleted):
            score_session(state)

    def test_empty_session(self):
        with pytest.raises(EmptySession):
            score_records([])

    def test_per_class_recount_oracle_randomized(self):
        rng = np.random.default_rng(314)
        for _ in range(20):
            outcomes = [bool(rng.integers(0, 2)) for _ in range(8)]
            state = self._completed_state(outcomes, latencies=list(rng.uniform(50, 900, 8)))
            report = score_session(state)
            # recount from the raw response list
            by_class = {}
            for stimulus, record in zip(state.stimuli, state.responses):
                n, c = by_class.get(stimulus.stimulus_class, (0, 0))
                by_class[stimulus.stimulus_class] = (n + 1, c + (1 if record.correct else 0))
            assert sum(n for n, _ in by_class.values()) == report.total
            assert sum(c for _, c in by_class.values()) == report.correct
            for cls, (n, c) in by_class.items():
                assert report.per_class[cls].n == n
                assert report.per_class[cls].correct == c

    def test_overall_equals_weighted_class_mean_exact(self):
        state = self._completed_state([True, False, True, True, False, True, True, True])
        report = score_session(state)
        weighted = sum(
            Fraction(s.correct, s.n) * Fraction(s.n, report.total)
            for s in report.per_class.values()
        )
        assert Fraction(report.correct, report.total) == weighted

    def test_median_latency(self):
        state = self._completed_state([True] * 4, latencies=[100.0, 300.0, 200.0, 400.0])
        assert score_session(state).median_latency_ms == 250.0


class TestSyntheticParticipant:
    def test_clean_block1_classes(self):
        for stim in generate_block(1, 2, 21, CONFIG):
            assert synthetic_participant(stim) == expected_key(stim.stimulus_class)

    def test_simulation_determinism(self):
        a = simulate_session(1, 3, 7, CONFIG)
        b = simulate_session(1, 3, 7, CONFIG)
        assert a.to_json() == b.to_json()

    def test_block1_small_session_perfect(self):
        report = simulate_session(1, 5, 33, CONFIG)
        assert report.overall_pct == 100.0
