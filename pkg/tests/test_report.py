"""Check rows and the deterministic CSV/JSON writers."""

import json

import numpy as np
import pytest

from annulab.reduction import DecayProfile
from annulab.report import (
    all_pass,
    floor_check,
    info_check,
    read_decay_csv,
    residual_check,
    write_decay_csv,
    write_report_json,
    write_results_csv,
    write_section_csv,
)


def test_residual_rows_pass_below_tolerance():
    assert residual_check("c", "r", 1e-12, 1e-10).passed
    assert not residual_check("c", "r", 1e-9, 1e-10).passed
    # the boundary itself passes
    assert residual_check("c", "r", 1e-10, 1e-10).passed


def test_floor_rows_pass_above_and_get_suffixed():
    row = floor_check("c", "min_norm", 0.5, 1e-6)
    assert row.name == "min_norm_floor"
    assert row.passed
    assert not floor_check("c", "min_norm_floor", 1e-9, 1e-6).passed


def test_info_rows_never_fail():
    row = info_check("c", "verdict_code", 2.0)
    assert row.passed
    assert row.tolerance == float("inf")


def test_all_pass():
    rows = [residual_check("c", "a", 0.0, 1.0), floor_check("c", "b", 2.0, 1.0)]
    assert all_pass(rows)
    rows.append(residual_check("c", "bad", 2.0, 1.0))
    assert not all_pass(rows)


def test_results_csv_format(tmp_path):
    path = tmp_path / "results.csv"
    write_results_csv(path, [residual_check("identity", "t1", 1.25e-13, 1e-12)])
    text = path.read_text()
    lines = text.split("\n")
    assert lines[0] == "check,name,value,tolerance,pass"
    assert lines[1] == "identity,t1,1.25e-13,9.9999999999999998e-13,true"
    assert text.endswith("\n") and "\r" not in text


def test_results_csv_seventeen_digit_round_trip(tmp_path):
    path = tmp_path / "results.csv"
    value = 0.1 + 0.2
    write_results_csv(path, [residual_check("c", "v", value, 1.0)])
    field = path.read_text().split("\n")[1].split(",")[2]
    assert float(field) == value


def test_decay_csv_round_trip(tmp_path):
    p1 = DecayProfile(pullback="C", sizes=[4, 8], epsilon=0.5)
    p2 = DecayProfile(pullback="C0", sizes=[4, 8], epsilon=0.5)
    p1.singular_values = {4: [2.0, 1.0, 0.25], 8: [2.5, 1.0]}
    p2.singular_values = {4: [0.5], 8: [0.125]}
    p1.tail_indices = {4: 2, 8: 2}
    p2.tail_indices = {4: 0, 8: 0}
    path = tmp_path / "decay.csv"
    write_decay_csv(path, [p1, p2])
    back = read_decay_csv(path)
    assert [s for s, _ in back] == [4, 8]
    assert back[0][1] == [[2.0, 1.0, 0.25], [0.5]]
    assert back[1][1] == [[2.5, 1.0], [0.125]]


def test_decay_csv_rejects_foreign_tables(tmp_path):
    path = tmp_path / "other.csv"
    path.write_text("a,b\n1,2\n")
    with pytest.raises(ValueError):
        read_decay_csv(path)


def test_section_csv_carries_window_indices(tmp_path):
    ent = np.array([[1.0 + 2.0j, 0.0], [0.0, -1.0 + 0.0j]])
    path = tmp_path / "section.csv"
    write_section_csv(path, ent, (-1, 0), (3, 4))
    lines = path.read_text().strip().split("\n")
    assert lines[0] == "j,k,re,im"
    assert lines[1].startswith("-1,3,1,2")
    assert lines[4].startswith("0,4,-1,")


def test_report_json_shape(tmp_path):
    path = tmp_path / "report.json"
    rows = [residual_check("c", "r", 0.0, 1.0)]
    write_report_json(
        path,
        {"R": 0.5, "seed": 1},
        rows,
        ["results.csv"],
        1.5,
        extra={"witness": 1.0 + 2.0j},
    )
    doc = json.loads(path.read_text())
    assert set(doc) == {"checks", "config", "duration_seconds", "extra", "files"}
    assert doc["config"] == {"R": 0.5, "seed": 1}
    assert doc["checks"][0]["pass"] is True
    assert doc["extra"]["witness"] == [1.0, 2.0]
    # keys are emitted sorted so reruns diff cleanly
    text = path.read_text()
    assert text.index('"checks"') < text.index('"config"') < text.index('"files"')


def test_report_json_rejects_unknown_objects(tmp_path):
    with pytest.raises(TypeError):
        write_report_json(
            tmp_path / "r.json", {}, [], [], 0.0, extra={"bad": object()}
        )
