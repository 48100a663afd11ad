from __future__ import annotations

import pytest

from hypertype import verify as vf


def test_every_check_once_per_suite():
    everything = vf.selected("all")
    assert len(everything) == len(set(everything)) == len(vf.CHECKS)
    per_suite = sum((vf.selected(s) for s in vf.SUITES), [])
    assert sorted(per_suite) == everything
    assert "coherent.measure_moments" in vf.selected("coherent")


def test_unknown_names():
    with pytest.raises(KeyError):
        vf.selected("nope")
    with pytest.raises(KeyError):
        vf.resolve_overrides({"no_such_check": 1.0})


def test_override_by_suffix_touches_one_check():
    got = vf.resolve_overrides({"orthogonality": 1e-6})
    assert got == {"poly.orthogonality": 1e-6}
    assert vf.resolve_overrides({"poly.orthogonality": 1e-3}) == {"poly.orthogonality": 1e-3}
    suffixes = [cid.split(".", 1)[1] for cid in vf.CHECKS]
    assert len(suffixes) == len(set(suffixes))


def test_report_sorted_and_deterministic(monkeypatch):
    r1 = vf.run_suite("ladder")
    monkeypatch.setenv("HYPERTYPE_THREADS", "4")
    assert vf.thread_cap() == 4
    r2 = vf.run_suite("ladder")
    ids = [r.id for r in r1.results]
    assert ids == sorted(ids) == [r.id for r in r2.results]
    assert [(r.error, r.worst) for r in r1.results] == [(r.error, r.worst) for r in r2.results]
    assert r1.passed


def test_seeded_checks_repeat():
    ctx = vf.Context(seed=5)
    a = vf.run_suite("bargmann", ctx)
    b = vf.run_suite("bargmann", vf.Context(seed=5))
    assert [r.error for r in a.results] == [r.error for r in b.results]


def test_failure_identifies_worst():
    report = vf.run_suite("poly", overrides={"orthogonality": 1e-30, "rodrigues_float": 1e-30})
    assert not report.passed
    worst = report.worst_offender()
    assert worst.id in ("poly.orthogonality", "poly.rodrigues_float")
    failed = {r.id for r in report.results if not r.passed}
    assert failed <= {"poly.orthogonality", "poly.rodrigues_float"}
    d = report.as_dict()
    assert d["schema_version"] == 1 and d["passed"] is False


def test_bad_thread_env(monkeypatch):
    monkeypatch.setenv("HYPERTYPE_THREADS", "many")
    assert vf.thread_cap() == 1
