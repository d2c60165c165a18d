import numpy as np
import pytest

from avsociety.fuzzy.io import dump_rules
from avsociety.fuzzy.rulebases import (
    UNDESIRABILITY_RULES,
    VALIDATED_UNDESIRABILITY_OVERRIDES,
    build_ig_fis,
    build_likelihood_fis,
    build_undesirability_fis,
    undesirability_rules,
)
from tests.conftest import get_test_data


@pytest.mark.parametrize(
    ("builder", "golden"),
    [
        (build_likelihood_fis, "likelihood_rules.txt"),
        (build_undesirability_fis, "undesirability_rules.txt"),
        (build_ig_fis, "ig_rules.txt"),
    ],
)
def test_rule_tables_match_golden_files(builder, golden):
    assert dump_rules(builder()) == get_test_data(golden)


def test_every_rule_base_covers_all_token_pairs():
    for fis in (build_likelihood_fis(), build_undesirability_fis(), build_ig_fis()):
        pairs = {(in1, in2) for in1, in2, _ in fis.table()}
        assert len(pairs) == 25


def test_lookup():
    assert build_likelihood_fis().lookup("MD", "VHS") == "VHLH"
    assert build_ig_fis().lookup("VHSOR", "NChance") == "MIG"
    with pytest.raises(KeyError):
        build_likelihood_fis().lookup("MD", "NAG")


def test_validated_revision_changes_only_finished_goal_rows():
    published = undesirability_rules("published")
    validated = undesirability_rules("validated")
    assert published == UNDESIRABILITY_RULES
    changed = {(imp, ach): new for (imp, ach, old), (_, _, new) in zip(published, validated) if old != new}
    assert changed == VALIDATED_UNDESIRABILITY_OVERRIDES
    assert all(ach == "VHFAG" for _, ach in changed)


def test_unknown_revision():
    with pytest.raises(ValueError, match="Unknown undesirability rule revision"):
        undesirability_rules("draft")


def test_close_and_fast_is_more_likely_than_far_and_slow():
    fis = build_likelihood_fis()
    assert fis.infer(0.0, 1.0) > fis.infer(1.0, 0.0)


def test_nearer_events_raise_ig():
    fis = build_ig_fis()
    assert fis.infer(0.9, 0.0) > fis.infer(0.9, 1.0)


GRID = np.linspace(0, 1, 101)


@pytest.mark.parametrize("builder", [build_likelihood_fis, build_undesirability_fis, build_ig_fis])
def test_some_rule_fires_everywhere(builder):
    fis = builder()
    for in1 in GRID:
        for in2 in GRID:
            assert fis.output_activations(in1, in2).max() > 0, (in1, in2)


@pytest.mark.slow
@pytest.mark.parametrize("builder", [build_likelihood_fis, build_undesirability_fis, build_ig_fis])
def test_outputs_stay_in_the_unit_interval_on_a_fine_grid(builder):
    fis = builder()
    outputs = np.array([[fis.infer(in1, in2) for in2 in GRID] for in1 in GRID])
    assert outputs.min() >= 0.0
    assert outputs.max() <= 1.0
