import pytest

import jokerlab.morava as morava
from jokerlab.verify import CHECK_IDS, verify_paper


def test_check_ids_unique():
    assert len(CHECK_IDS) == len(set(CHECK_IDS))


def test_filter_by_prefix():
    report = verify_paper("hecke")
    assert report.checks and all(c.id.startswith("hecke") for c in report.checks)
    assert report.counts["flagged"] == 1


def test_full_report_is_all_pass_with_two_flags():
    report = verify_paper()
    assert report.ok
    assert report.counts["fail"] == 0
    flagged = sorted(c.id for c in report.checks if c.status == "flagged")
    assert flagged == ["hecke.duplicate-displays", "massey.display"]
    data = report.to_json()
    assert data["summary"]["pass"] == len(CHECK_IDS) - 2


def test_deterministic_output():
    a = verify_paper("massey").to_json()
    b = verify_paper("massey").to_json()
    assert a == b


def test_sabotaged_omega_convention_is_caught(monkeypatch):
    original = morava._digits

    def conjugated(g, count):
        return [d.frobenius() for d in original(g, count)]

    monkeypatch.setattr(morava, "_digits", conjugated)
    report = verify_paper("coaction.three-cell")
    (check,) = report.checks
    assert check.status == "fail"
    assert "expected" in check.details
