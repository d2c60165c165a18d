import pytest
import yaml

from avsociety.experiments.progress import SweepProgressManager, _fit, sweep_of


@pytest.fixture
def manager():
    return SweepProgressManager(num_runs=5)


@pytest.fixture
def manager_with_yaml(tmp_path):
    yaml_path = tmp_path / "report.yaml"
    return SweepProgressManager(num_runs=3, yaml_report_path=yaml_path), yaml_path


@pytest.mark.parametrize(
    ("text", "width", "keep_end", "expected"),
    [
        ("a1-sonar2", 12, False, "a1-sonar2   "),
        ("b1-sonar5/e3/r6", 10, False, "b1-sona..."),
        ("b1-sonar5/e3/r6", 10, True, "...5/e3/r6"),
        ("hello", 5, False, "hello"),
    ],
)
def test_fit(text, width, keep_end, expected):
    assert _fit(text, width, keep_end=keep_end) == expected


@pytest.mark.parametrize(
    ("run_id", "sweep"),
    [("b1-sonar2/e3/r6", "b1-sonar2"), ("a5-sonar1/e1/r0", "a5-sonar1"), ("lonely", "lonely")],
)
def test_sweep_of(run_id, sweep):
    assert sweep_of(run_id) == sweep


def test_manager_initialization(manager):
    assert manager.n_completed == 0
    assert manager.total_collisions == 0
    assert manager.n_active == 0
    assert manager.overview() == {"sweeps": {}, "failures": {}, "total_collisions": 0}


def test_run_lifecycle(manager):
    manager.on_run_start("a1-sonar2/e1/r0", "10 AVs, seed 0")
    assert manager.n_active == 1
    manager.on_run_end("a1-sonar2/e1/r0", 4)
    assert manager.n_active == 0
    assert manager.n_completed == 1
    assert manager.total_collisions == 4
    tally = manager.tally("a1-sonar2")
    assert (tally.runs, tally.failed, tally.collisions) == (1, 0, 4)
    assert tally.recent == ["r0"]


def test_run_end_without_start(manager):
    manager.on_run_end("b1-sonar2/e1/r0", 2)
    assert manager.n_completed == 1
    assert manager.n_active == 0


def test_tallies_are_per_sweep(manager):
    for i, run_id in enumerate(["a1-sonar2/e1/r0", "a1-sonar2/e1/r1", "a1-sonar5/e1/r0"], 1):
        manager.on_run_start(run_id)
        manager.on_run_end(run_id, i)
    assert manager.tally("a1-sonar2").collisions == 3
    assert manager.tally("a1-sonar2").mean == 1.5
    assert manager.tally("a1-sonar5").runs == 1
    assert manager.total_collisions == 6


def test_recent_runs_are_capped(manager):
    for rep in range(8):
        manager.on_run_end(f"b3-sonar2/e2/r{rep}", 0)
    assert manager.tally("b3-sonar2").recent == ["r3", "r4", "r5", "r6", "r7"]


def test_uncaught_exception(manager):
    manager.on_run_start("b2-sonar5/e1/r0")
    manager.on_uncaught_exception("b2-sonar5/e1/r0", ValueError("test error"))
    tally = manager.tally("b2-sonar5")
    assert (tally.runs, tally.failed, tally.collisions) == (1, 1, 0)
    assert tally.mean is None
    assert manager.overview()["failures"] == {"b2-sonar5/e1/r0": "ValueError: test error"}


def test_yaml_report_generation(manager_with_yaml):
    manager, yaml_path = manager_with_yaml
    manager.on_run_start("a1-sonar2/e1/r0")
    manager.on_run_end("a1-sonar2/e1/r0", 3)
    manager.on_run_start("a1-sonar2/e1/r1")
    manager.on_uncaught_exception("a1-sonar2/e1/r1", RuntimeError("boom"))

    data = yaml.safe_load(yaml_path.read_text())
    assert data["sweeps"]["a1-sonar2"] == {"runs": 2, "failed": 1, "collisions": 3}
    assert data["failures"] == {"a1-sonar2/e1/r1": "RuntimeError: boom"}
    assert data["total_collisions"] == 3
