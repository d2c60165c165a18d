import numpy as np
import pytest

from avsociety.config import ConfigurationError
from avsociety.emotion.occ import (
    AppraisalInputs,
    Combiner,
    FearConfig,
    FisSet,
    FuzzySettings,
    appraise,
    appraise_constants,
    fear_intensity,
    fear_potential,
    willingness,
)


def test_fear_config_defaults():
    cfg = FearConfig()
    assert cfg.threshold == 0.1
    assert cfg.combiner is Combiner.MEAN
    assert sum(cfg.weights) == pytest.approx(1.0)


def test_combiner_from_string():
    assert FearConfig(combiner="product").combiner is Combiner.PRODUCT


@pytest.mark.parametrize(
    "kwargs",
    [
        {"threshold": 1.5},
        {"combiner": "max"},
        {"weights": (0.5, 0.5, 0.5)},
        {"weights": (1.0, 0.0)},
        {"weights": (1.2, -0.1, -0.1)},
    ],
)
def test_invalid_fear_config(kwargs):
    with pytest.raises(ConfigurationError):
        FearConfig(**kwargs)


@pytest.mark.parametrize(
    ("combiner", "expected"),
    [(Combiner.MEAN, 0.4), (Combiner.MIN, 0.1), (Combiner.PRODUCT, 0.01)],
)
def test_fear_potential(combiner, expected):
    assert fear_potential(0.1, 0.1, 1.0, FearConfig(combiner=combiner)) == pytest.approx(expected)


def test_weighted_mean():
    cfg = FearConfig(weights=(0.0, 0.0, 1.0))
    assert fear_potential(0.1, 0.1, 0.7, cfg) == pytest.approx(0.7)


@pytest.mark.parametrize(
    ("potential", "threshold", "expected"),
    [(0.4, 0.1, 0.3), (0.1, 0.1, 0.0), (0.05, 0.1, 0.0), (1.0, 0.0, 1.0), (0.0, 0.0, 0.0)],
)
def test_fear_intensity(potential, threshold, expected):
    assert fear_intensity(potential, threshold) == pytest.approx(expected)


def test_default_sliders():
    state = appraise_constants(0.1, 0.1, 1.0, FearConfig())
    assert state.potential == pytest.approx(0.4)
    assert state.intensity == pytest.approx(0.3)
    assert state.willingness == pytest.approx(0.3)


def test_certain_event_doubles_willingness_with_default_sliders():
    state = appraise_constants(0.1, 1.0, 1.0, FearConfig())
    assert state.willingness == pytest.approx(0.6)


def test_threshold_override():
    assert appraise_constants(0.1, 0.1, 1.0, FearConfig(), threshold=0.4).intensity == 0.0


def test_gating_holds_for_random_appraisals():
    rng = np.random.default_rng(42)
    cfg = FearConfig()
    for _ in range(10_000):
        ud, li, ig, threshold = rng.uniform(0, 1, 4)
        state = appraise_constants(ud, li, ig, cfg, threshold=threshold)
        assert 0.0 <= state.potential <= 1.0
        assert state.intensity == pytest.approx(max(0.0, state.potential - threshold))
        assert (state.intensity > 0) == (state.potential > threshold)
        assert state.willingness == willingness(state.intensity)


def test_as_row_drops_threshold():
    row = appraise_constants(0.1, 0.1, 1.0, FearConfig()).as_row(tick=3, agent_id=7)
    assert row["tick"] == 3
    assert row["agent_id"] == 7
    assert "threshold" not in row
    assert set(row) >= {"undesirability", "likelihood", "ig", "potential", "intensity", "willingness"}


def test_fuzzy_appraisal(fis_set):
    inputs = AppraisalInputs(
        imp_goal=0.5, ach_goal=0.0, distance=0.1, speed=0.9, sense_of_reality=0.9, proximity=0.1
    )
    state = appraise(inputs, fis_set, FearConfig())
    for value in (state.undesirability, state.likelihood, state.ig, state.potential):
        assert 0.0 <= value <= 1.0
    assert state.likelihood > 0.5
    assert appraise(inputs, fis_set, FearConfig(), likelihood_override=1.0).likelihood == 1.0


def test_far_neighbor_is_less_frightening(fis_set):
    near = AppraisalInputs(0.5, 0.0, 0.1, 0.9, 0.9, 0.1)
    far = AppraisalInputs(0.5, 0.0, 1.0, 0.0, 0.9, 1.0)
    cfg = FearConfig()
    assert appraise(near, fis_set, cfg).potential > appraise(far, fis_set, cfg).potential


def test_fis_set_from_peaks():
    fis = FisSet.build({"VL": 0.2, "L": 0.3, "M": 0.56, "H": 0.8, "VH": 0.95}, revision="published")
    assert fis.undesirability.lookup("VHImpG", "VHFAG") == "MUD"
    assert FisSet.build().undesirability.lookup("VHImpG", "VHFAG") == "VLUD"


def test_fuzzy_settings_validation():
    with pytest.raises(ConfigurationError, match="missing levels"):
        FuzzySettings(peaks={"VL": 0.2})
    with pytest.raises(ConfigurationError, match="unknown revision"):
        FuzzySettings(undesirability_rules="draft")


@pytest.mark.parametrize("combiner", list(Combiner))
def test_fear_state_stays_in_range(combiner):
    rng = np.random.default_rng(3)
    for _ in range(2_000):
        raw = rng.uniform(0, 1, 3)
        cfg = FearConfig(combiner=combiner, weights=tuple(raw / raw.sum()), threshold=rng.uniform(0, 1))
        ud, li, ig = rng.uniform(0, 1, 3)
        state = appraise_constants(ud, li, ig, cfg)
        for value in (state.potential, state.intensity, state.willingness):
            assert 0.0 <= value <= 1.0
        assert state.willingness <= state.potential


def test_fuzzy_fear_state_stays_in_range(fis_set):
    rng = np.random.default_rng(11)
    cfg = FearConfig()
    for _ in range(50):
        inputs = AppraisalInputs(*rng.uniform(0, 1, 6))
        state = appraise(inputs, fis_set, cfg, threshold=rng.uniform(0, 1))
        for value in (state.undesirability, state.likelihood, state.ig, state.potential, state.willingness):
            assert 0.0 <= value <= 1.0
