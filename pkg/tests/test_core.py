import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smtt.core import (
    PAPER_P1,
    Instance,
    Job,
    edd_sequence,
    evaluate,
    load_instance,
    resolve_instance,
    save_instance,
    total_tardiness,
)
from strategies import instances, instances_with_sequence

PAPER_BEST = [3, 9, 2, 1, 7, 8, 5, 10, 6, 4]


def test_reference_instance_best_sequence():
    assert evaluate(PAPER_P1, PAPER_BEST).total == 23


def test_reference_instance_identity_sequence():
    ev = evaluate(PAPER_P1, list(range(1, 11)))
    assert ev.total == 165
    # jobs 7..10 are the tardy ones in id order
    assert ev.tardiness == (0, 0, 0, 0, 0, 0, 37, 34, 66, 28)


def test_reference_instance_reversed_sequence():
    ev = evaluate(PAPER_P1, list(range(10, 0, -1)))
    assert ev.total == 218
    assert ev.tardiness[-3:] == (38, 84, 96)


def test_single_job_before_due_date():
    inst = Instance("one", (Job(1, 5, 9),))
    ev = evaluate(inst, [1])
    assert ev.completion == (5,)
    assert ev.tardiness == (0,)
    assert ev.total == 0


def test_loose_due_dates_give_zero_total():
    inst = Instance("loose", (Job(1, 4, 100), Job(2, 6, 100), Job(3, 2, 100)))
    assert total_tardiness(inst, [3, 1, 2]) == 0


def test_total_tardiness_matches_evaluate():
    assert total_tardiness(PAPER_P1, PAPER_BEST) == evaluate(PAPER_P1, PAPER_BEST).total


def test_edd_reference_instance():
    assert edd_sequence(PAPER_P1) == [1, 2, 9, 7, 3, 8, 5, 10, 6, 4]


def test_edd_identity_when_already_sorted():
    inst = Instance("sorted", (Job(1, 3, 10), Job(2, 3, 20), Job(3, 3, 30)))
    assert edd_sequence(inst) == [1, 2, 3]


def test_edd_tie_breaks_by_id():
    inst = Instance("tie", (Job(1, 3, 10), Job(2, 3, 5), Job(3, 3, 5)))
    assert edd_sequence(inst) == [2, 3, 1]


class TestSequenceValidation:
    def test_duplicate_id_named(self):
        with pytest.raises(ValueError, match="duplicate job id 5"):
            evaluate(PAPER_P1, [5, 5, 1, 2, 3, 4, 6, 7, 8, 9])

    def test_out_of_range_id_named(self):
        with pytest.raises(ValueError, match="unknown job id 11"):
            evaluate(PAPER_P1, [11, 1, 2, 3, 4, 5, 6, 7, 8, 9])

    def test_missing_id_named(self):
        with pytest.raises(ValueError, match="missing job id 10"):
            evaluate(PAPER_P1, [1, 2, 3, 4, 5, 6, 7, 8, 9])

    def test_non_integer_rejected(self):
        with pytest.raises(ValueError, match="unknown job id"):
            evaluate(PAPER_P1, [1.5, 2, 3, 4, 5, 6, 7, 8, 9, 10])


class TestInstanceValidation:
    def test_duplicate_job_ids(self):
        with pytest.raises(ValueError, match="duplicate job id 1"):
            Instance("bad", (Job(1, 2, 3), Job(1, 2, 3)))

    def test_ids_must_cover_range(self):
        with pytest.raises(ValueError, match="missing id 2"):
            Instance("bad", (Job(1, 2, 3), Job(3, 2, 3)))

    def test_empty_instance(self):
        with pytest.raises(ValueError, match="at least one job"):
            Instance("bad", ())

    def test_negative_processing_time(self):
        with pytest.raises(ValueError, match="processing time"):
            Job(1, -1, 3)

    def test_negative_due_date(self):
        with pytest.raises(ValueError, match="due date"):
            Job(1, 1, -3)


class TestJsonInterchange:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "p1.json"
        save_instance(PAPER_P1, path)
        loaded = load_instance(path)
        assert loaded == PAPER_P1

    def test_save_is_byte_deterministic(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        save_instance(PAPER_P1, a)
        save_instance(PAPER_P1, b)
        assert a.read_bytes() == b.read_bytes()

    def test_document_shape(self, tmp_path):
        path = tmp_path / "p1.json"
        save_instance(PAPER_P1, path)
        doc = json.loads(path.read_text())
        assert doc["name"] == "paper-p1"
        assert doc["jobs"][0] == {"id": 1, "p": 11, "d": 57}

    def test_bad_json_reports_position(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"name": "x", "jobs": [')
        with pytest.raises(ValueError, match="line 1"):
            load_instance(path)

    def test_missing_field_reported(self, tmp_path):
        path = tmp_path / "nofield.json"
        path.write_text(json.dumps({"name": "x", "jobs": [{"id": 1, "p": 2}]}))
        with pytest.raises(ValueError, match="'d'"):
            load_instance(path)

    def test_non_integer_field_reported(self, tmp_path):
        path = tmp_path / "floaty.json"
        path.write_text(json.dumps({"name": "x", "jobs": [{"id": 1, "p": 2.5, "d": 3}]}))
        with pytest.raises(ValueError, match="must be an integer"):
            load_instance(path)

    def test_resolve_builtin_name(self):
        assert resolve_instance("paper-p1") is PAPER_P1


@given(instances_with_sequence())
def test_final_completion_is_total_processing(pair):
    inst, seq = pair
    ev = evaluate(inst, seq)
    assert ev.completion[-1] == inst.total_processing()


@given(instances_with_sequence())
def test_tardiness_never_negative(pair):
    inst, seq = pair
    ev = evaluate(inst, seq)
    assert all(t >= 0 for t in ev.tardiness)
    assert ev.total == sum(ev.tardiness)


@given(instances_with_sequence())
def test_completion_non_decreasing(pair):
    inst, seq = pair
    ev = evaluate(inst, seq)
    assert all(a <= b for a, b in zip(ev.completion, ev.completion[1:]))
    if all(j.p > 0 for j in inst.jobs):
        assert all(a < b for a, b in zip(ev.completion, ev.completion[1:]))


@given(instances_with_sequence(), st.integers(0, 50))
def test_due_date_shift_by_makespan_zeroes_total(pair, extra):
    inst, seq = pair
    shift = inst.total_processing() + extra
    shifted = Instance(
        inst.name, tuple(Job(j.id, j.p, j.d + shift) for j in inst.jobs)
    )
    assert evaluate(shifted, seq).total == 0


@given(instances_with_sequence())
def test_evaluate_is_pure(pair):
    inst, seq = pair
    assert evaluate(inst, seq) == evaluate(inst, seq)
