import pytest

from avsociety.config import ConfigurationError
from avsociety.experiments.design import (
    ROW_SEED_STRIDE,
    SET_IDS,
    ExperimentSpec,
    UnknownSetError,
    load_experiment_spec,
    resolve_set_names,
)
from avsociety.society.config import WorldConfig


@pytest.mark.parametrize("set_id", SET_IDS)
def test_builtin_sets_load(set_id):
    spec = load_experiment_spec(set_id)
    assert spec.set_id == set_id.upper()
    assert spec.mode == ("random-walk" if set_id.startswith("a") else "norms")
    assert [row.num_avs for row in spec.rows] == [10, 15, 20, 25, 30]
    assert spec.repetitions == 7
    assert spec.ticks == 1000
    for sub in spec.sub_sweeps():
        for row in sub.rows:
            row.world_config(WorldConfig(), spec.mode, spec.ticks)


def test_sets_one_and_two_sweep_two_sonar_ranges():
    for set_id in ("a1", "a2", "b1", "b2"):
        spec = load_experiment_spec(set_id)
        assert spec.sonar_values == (2, 5)
        assert [sub.name for sub in spec.sub_sweeps()] == [f"{set_id}-sonar2", f"{set_id}-sonar5"]
    assert load_experiment_spec("b5").name == "b5-sonar1"


def test_norm_sets_carry_the_sliders():
    cfg = load_experiment_spec("B3").rows[0].world_config(WorldConfig(), "norms", 1000)
    assert (cfg.li, cfg.ud, cfg.ig) == (0.1, 0.1, 1.0)
    assert cfg.metacognition


def test_seeds():
    spec = load_experiment_spec("a3").with_overrides(base_seed=100)
    assert spec.seed(0, 0) == 100
    assert spec.seed(2, 3) == 100 + 2 * ROW_SEED_STRIDE + 3
    seeds = {spec.seed(r, k) for r in range(len(spec.rows)) for k in range(spec.repetitions)}
    assert len(seeds) == len(spec.rows) * spec.repetitions


def test_sub_sweeps_share_seeds():
    spec = load_experiment_spec("a1")
    low, high = spec.sub_sweeps()
    assert low.seed(4, 6) == high.seed(4, 6) == spec.seed(4, 6)
    assert all(row.sonar_ranges == (5,) for row in high.rows)


def test_unknown_set():
    with pytest.raises(UnknownSetError) as e:
        load_experiment_spec("c7")
    assert "c7" in str(e.value)


def test_resolve_set_names():
    assert resolve_set_names("all") == list(SET_IDS)
    assert resolve_set_names("a1, b2") == ["a1", "b2"]
    assert resolve_set_names(["a1", "all"])[1:] == list(SET_IDS)
    assert resolve_set_names("") == []


def test_yaml_file(tmp_path):
    path = tmp_path / "mine.yaml"
    path.write_text(
        "set_id: custom\nmode: norms\nrepetitions: 2\nticks: 50\n"
        "rows:\n  - num_avs: 4\n    max_velocity: 0.3\n  - num_avs: 6\n    sonar_range: 3\n"
    )
    spec = load_experiment_spec(path)
    assert spec.set_id == "custom"
    assert [row.experiment_no for row in spec.rows] == [1, 2]
    assert spec.rows[0].sonar_ranges == (WorldConfig().sonar_range,)
    assert spec.sonar_values == (2, 3)
    assert spec.set_number is None


@pytest.mark.parametrize(
    ("data", "key"),
    [
        ({"set_id": "A1", "mode": "norms", "rows": [{"num_avs": 10}]}, "mode"),
        ({"set_id": "X", "mode": "chaos", "rows": [{"num_avs": 10}]}, "mode"),
        ({"set_id": "X", "rows": []}, "rows"),
        ({"set_id": "X", "rows": [{"sonar_range": 2}]}, "rows[1].num_avs"),
        ({"rows": [{"num_avs": 10}]}, "set_id"),
        ({"set_id": "X", "rows": [{"num_avs": 10}], "colour": "red"}, "colour"),
        ({"set_id": "X", "rows": [{"num_avs": 10}], "repetitions": 0}, "repetitions"),
    ],
)
def test_invalid_specs(data, key):
    with pytest.raises(ConfigurationError) as e:
        ExperimentSpec.from_dict(data)
    assert e.value.key == key


def test_multi_sonar_row_needs_a_choice():
    row = load_experiment_spec("a1").rows[0]
    with pytest.raises(ValueError, match="sweeps sonar ranges"):
        row.world_config(WorldConfig(), "random-walk", 10)
    assert row.world_config(WorldConfig(), "random-walk", 10, sonar_range=5).sonar_range == 5
