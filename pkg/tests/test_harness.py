"""Conjecture scans: predicted sets, verdicts, counterexample enumeration."""

import pytest

from rho_tensor.charcalc import dominant_weights_below
from rho_tensor.harness import (
    HOLDS,
    naive_condition_scan,
    predicted_weights,
    scan_all,
    support_containment_check,
    verify_conjecture,
)
from rho_tensor.rootdata import AlgebraError
from rho_tensor.tensor import klimyk

from reference_tables import B2_5RHO_2RHO, G2_3RHO_4RHO, G2_5RHO_2RHO


def test_predicted_weights_n_zero(b2):
    assert predicted_weights(b2, 4, 0) == [(4, 4)]


def test_predicted_weights_b2_reference(b2):
    assert set(predicted_weights(b2, 5, 2)) == set(B2_5RHO_2RHO)
    assert len(predicted_weights(b2, 5, 2)) == 34


def test_predicted_weights_g2_reference(g2):
    assert set(predicted_weights(g2, 5, 2)) == set(G2_5RHO_2RHO)
    assert set(predicted_weights(g2, 4, 3)) == set(G2_3RHO_4RHO)
    assert len(predicted_weights(g2, 4, 3)) == 112


def test_predicted_weights_requires_m_ge_n(b2):
    with pytest.raises(AlgebraError):
        predicted_weights(b2, 1, 2)


def test_verify_conjecture_reference_cases(b2, g2):
    rep = verify_conjecture(b2, 5, 2)
    assert rep.verdict == HOLDS and rep.missing == [] and len(rep.present) == 34
    rep = verify_conjecture(g2, 4, 3)
    assert rep.verdict == HOLDS and len(rep.present) == 112
    rep = verify_conjecture(g2, 3, 0)
    assert rep.verdict == HOLDS and rep.present == [(3, 3)]


def test_naive_scan_b2_counterexample_list(b2):
    absent = naive_condition_scan(b2, 5, 2)
    assert len(absent) == 16
    assert (0, 1) in absent
    # disjoint from the support, and together they partition the cone slice
    support = klimyk(b2, (5, 5), (2, 2)).support()
    assert support.isdisjoint(absent)
    assert support | set(absent) == set(dominant_weights_below(b2, (7, 7)))


def test_naive_scan_diagonal_sl2_is_empty(a1):
    for n in range(0, 4):
        assert naive_condition_scan(a1, n, n) == []


def test_naive_scan_n_zero(b2):
    absent = naive_condition_scan(b2, 3, 0)
    below = dominant_weights_below(b2, (3, 3))
    assert set(absent) == set(below) - {(3, 3)}


def test_support_containment(a1, g2):
    for m, n in [(5, 2), (4, 3), (3, 0)]:
        assert support_containment_check(g2, m, n).holds
    for m in range(1, 6):
        for n in range(m):
            assert support_containment_check(a1, m, n).holds
    # m = n + 1 extreme holds by commutativity
    assert support_containment_check(a1, 3, 2).holds
    with pytest.raises(AlgebraError):
        support_containment_check(a1, 2, 2)


def test_scan_all_small(a1):
    reports = scan_all(["A1"], 4)
    assert len(reports) == 9
    assert all(r.verdict == HOLDS for r in reports)
    assert scan_all([], 3) == []


def test_scan_all_rank2_includes_reference_cases():
    reports = scan_all(["B2", "G2"], 7)
    key = {(r.algebra, r.m, r.n): r for r in reports}
    assert key[("B2", 5, 2)].verdict == HOLDS
    assert key[("G2", 5, 2)].verdict == HOLDS
    assert all(r.verdict == HOLDS for r in reports)


def test_scan_all_rejects_affine():
    with pytest.raises(AlgebraError):
        scan_all(["A1~"], 2)


def test_scan_all_records_per_case_errors(monkeypatch):
    import rho_tensor.harness as hn

    def boom(rs, m, n, cache=None):
        raise RuntimeError("synthetic failure")

    monkeypatch.setattr(hn, "verify_conjecture", boom)
    reports = hn.scan_all(["A1"], 1)
    assert all(r.verdict == "ERROR" and r.error == "synthetic failure" for r in reports)


def test_scan_all_threaded_matches_serial():
    serial = scan_all(["A2"], 3, threads=1)
    threaded = scan_all(["A2"], 3, threads=4)
    assert [(r.algebra, r.m, r.n, r.verdict, r.missing) for r in serial] == [
        (r.algebra, r.m, r.n, r.verdict, r.missing) for r in threaded
    ]
