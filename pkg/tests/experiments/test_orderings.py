"""Full experiment sets at their configured 7 repetitions. Expect a long run."""

import os

import pytest

from avsociety.experiments.design import SET_IDS, load_experiment_spec
from avsociety.experiments.report import (
    SPEED_EFFECT_SOURCES,
    compare_modes,
    density_trend,
    select_matrix_sources,
    sonar_safety_matrix,
    speed_effect,
)
from avsociety.experiments.sweep import run_experiment_set


@pytest.fixture(scope="module")
def summaries():
    workers = os.cpu_count() or 1
    by_key = {}
    for set_id in SET_IDS:
        for summary in run_experiment_set(load_experiment_spec(set_id), workers=workers):
            by_key[(summary.set_id.upper(), summary.sonar_range)] = summary
    return by_key


def _failures(report):
    return [(row.num_avs, row.mean_a, row.mean_b) for row in report.rows if not row.passed]


@pytest.mark.slow
def test_norms_collide_less_in_every_cell(summaries):
    norm_keys = [key for key in summaries if key[0].startswith("B")]
    assert len(norm_keys) == 7
    for set_id, sonar in norm_keys:
        report = compare_modes(summaries[("A" + set_id[1:], sonar)], summaries[(set_id, sonar)])
        assert report.passed, f"{set_id} sonar {sonar}: {_failures(report)}"


@pytest.mark.slow
def test_random_walk_collisions_grow_with_density(summaries):
    for (set_id, sonar), summary in summaries.items():
        if set_id.startswith("A"):
            trend = density_trend(summary)
            assert trend.passed, f"{set_id} sonar {sonar}: {trend.votes}"


@pytest.mark.slow
def test_slow_norm_set_collides_less_than_fast_one(summaries):
    slow, fast = (summaries[key] for key in SPEED_EFFECT_SOURCES)
    report = speed_effect(slow, fast)
    assert report.passed, _failures(report)


@pytest.mark.slow
def test_long_safety_distance_with_short_sonar_collides_most(summaries):
    matrix = sonar_safety_matrix(select_matrix_sources(summaries.values()))
    assert matrix.passed, matrix.cells
