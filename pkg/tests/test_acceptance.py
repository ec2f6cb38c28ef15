"""Acceptance suite: one test per exit criterion, each printing a PASS/FAIL
line. Run with ``pytest tests/test_acceptance.py -v -s``.

Everything here is exact arithmetic; "tolerance" is always zero. Stated
runtime ceilings are asserted as well (they are generous on this hardware).
"""

import random
import time
from contextlib import contextmanager

from rho_tensor.affine import (
    affine_freudenthal,
    affine_rho,
    affinize,
    delta_max_weights,
    gko_l0_scalar,
    gko_positivity_certificate,
    sl2_delta_max_rule,
    theta_pairing,
    truncated_tensor,
)
from rho_tensor.charcalc import clear_memory_cache, dominant_weights_below, freudenthal
from rho_tensor.harness import HOLDS, naive_condition_scan, scan_all
from rho_tensor.rootdata import build_root_system
from rho_tensor.tensor import klimyk, oracle_decompose, schur_compare

from conftest import RANK_LE_3
from reference_tables import B2_5RHO_2RHO, G2_3RHO_4RHO, G2_5RHO_2RHO


@contextmanager
def criterion(num: int, description: str):
    started = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"FAIL  criterion {num}: {description}")
        raise
    print(f"PASS  criterion {num}: {description}  [{time.monotonic() - started:.1f}s]")


def test_criterion_1_b2_golden_table(b2):
    with criterion(1, "B2 golden table 5rho (x) 2rho, exact, cold cache < 10 s"):
        clear_memory_cache()
        started = time.monotonic()
        dec = klimyk(b2, (5, 5), (2, 2))
        elapsed = time.monotonic() - started
        assert dec.components == B2_5RHO_2RHO
        assert len(dec.components) == 34
        assert dec.multiplicity((5, 5)) == 5
        assert dec.multiplicity((3, 3)) == 1
        assert dec.multiplicity((5, 3)) == 4
        assert dec.multiplicity((7, 7)) == 1
        assert elapsed < 10


def test_criterion_2_g2_golden_tables(g2):
    with criterion(2, "G2 golden tables 5rho (x) 2rho and 3rho (x) 4rho, exact, cold < 60 s"):
        clear_memory_cache()
        started = time.monotonic()
        dec_a = klimyk(g2, (5, 5), (2, 2))
        dec_b = klimyk(g2, (3, 3), (4, 4))
        elapsed = time.monotonic() - started
        assert dec_a.components == G2_5RHO_2RHO
        assert dec_a.multiplicity((5, 5)) == 21
        assert dec_a.multiplicity((3, 3)) == 1
        assert dec_a.multiplicity((7, 7)) == 1
        assert dec_b.components == G2_3RHO_4RHO
        assert dec_b.multiplicity((4, 4)) == 48
        assert dec_b.multiplicity((3, 3)) == 29
        assert dec_b.multiplicity((1, 1)) == 1
        assert elapsed < 60


def test_criterion_3_b2_counterexample_scan(b2):
    with criterion(3, "naive scan B2 (5,2): exactly 16 absent weights, omega_2 among them"):
        absent = naive_condition_scan(b2, 5, 2)
        assert len(absent) == 16
        assert (0, 1) in absent


def test_criterion_4_conjecture_sweep():
    with criterion(4, "sweep rank <= 3, m >= n >= 0, m+n <= 6: support = predicted, all HOLDS"):
        reports = scan_all(RANK_LE_3, 6)
        assert len(reports) == len(RANK_LE_3) * 16
        failures = [(r.algebra, r.m, r.n, r.verdict) for r in reports if r.verdict != HOLDS]
        # support <= predicted is asserted unconditionally inside verify_conjecture;
        # equality is the conjecture under test, so report any non-HOLDS loudly.
        assert not failures, f"conjecture FAILS (reportable finding): {failures}"
        for r in reports:
            assert r.present == r.predicted


def test_criterion_5_schur_remark(g2):
    with criterion(5, "G2 Schur comparison: 3rho (x) 4rho dominates 5rho (x) 2rho"):
        rep = schur_compare(klimyk(g2, (5, 5), (2, 2)), klimyk(g2, (3, 3), (4, 4)))
        assert rep.dominates
        assert rep.witnesses == []


def test_criterion_6_oracle_equivalence():
    with criterion(6, "klimyk == oracle on 200 random rank <= 3 pairs (dim product <= 1e5)"):
        rng = random.Random(987654321)
        systems = {name: build_root_system(name) for name in RANK_LE_3}
        checked = 0
        while checked < 200:
            rs = systems[rng.choice(RANK_LE_3)]
            hi = 4 if rs.rank <= 2 else 2
            lam = tuple(rng.randint(0, hi) for _ in range(rs.rank))
            mu = tuple(rng.randint(0, hi) for _ in range(rs.rank))
            if rs.weyl_dimension(lam) * rs.weyl_dimension(mu) > 100_000:
                continue
            assert klimyk(rs, lam, mu).components == oracle_decompose(rs, lam, mu).components
            checked += 1


def test_criterion_7_conservation_and_ckm_shift():
    with criterion(7, "dimension conservation on all outputs; rho-shift equivalence, ranks <= 3"):
        # conservation is asserted inside every klimyk/oracle call; exercise a
        # spread of cases here and re-check one by hand
        for name, lam, mu in [("B2", (3, 2), (1, 1)), ("A3", (1, 1, 1), (1, 0, 1)), ("G2", (2, 1), (1, 1))]:
            rs = build_root_system(name)
            dec = klimyk(rs, lam, mu)
            total = sum(m * rs.weyl_dimension(nu) for nu, m in dec.components.items())
            assert total == rs.weyl_dimension(lam) * rs.weyl_dimension(mu)
        # lam <= 2rho in dominance iff lam - rho is a weight of V(rho), exhaustively
        for name in RANK_LE_3:
            rs = build_root_system(name)
            rho = rs.rho
            char = freudenthal(rs, rho)
            below = set(dominant_weights_below(rs, tuple(2 * x for x in rho)))
            translated = {
                tuple(a + b for a, b in zip(rho, beta))
                for beta_dom in char.mults
                for beta in rs.orbit(beta_dom)
                if all(a + b >= 0 for a, b in zip(rho, beta))
            }
            assert below == translated, name


def test_criterion_8_affine_sl2_suite(sl2_affine):
    with criterion(8, "affine sl2 suite at depth 6, m >= n >= 1, m+n <= 5 (min-rule, "
                      "shift-0 presence, positive L0 + unbroken strings, certificates)"):
        rs = sl2_affine
        depth = 6
        h = rs.dual_coxeter
        rho = affine_rho(rs)
        for m in range(1, 5):
            for n in range(1, min(m, 5 - m) + 1):
                lvl = (m + n) * h
                dec = truncated_tensor(rs, m * rho, n * rho, depth)
                char_n = affine_freudenthal(rs, n * rho, depth)

                # (a) delta-maximal components obey the min-rule
                for w, d in dec.delta_max_components():
                    lam = affinize(rs, w, lvl)
                    assert sl2_delta_max_rule(rs, m, n, lam, depth=depth) == -d, (m, n, w, d)

                # (b) every predicted lam = m rho + beta (beta delta-maximal,
                # lam dominant) appears at shift 0
                predicted = set()
                for beta_dom, d in delta_max_weights(char_n):
                    for beta in {beta_dom, tuple(-x for x in beta_dom)}:  # rank-1 orbit
                        lam_fin = tuple(m + b for b in beta)
                        if min(lam_fin) >= 0 and theta_pairing(rs, lam_fin) <= lvl:
                            predicted.add((lam_fin, d))
                for key in predicted:
                    assert key in dec.components, (m, n, key)

                # (c) strictly positive L0 scalar and unbroken delta-strings
                min_depth_of = {}
                for (w, d) in dec.components:
                    nu = affinize(rs, w, lvl, -d)
                    assert gko_l0_scalar(rs, m * rho, n * rho, nu) > 0, (m, n, w, d)
                    min_depth_of[w] = min(d, min_depth_of.get(w, depth))
                for w, d0 in min_depth_of.items():
                    for k in range(d0, depth + 1):
                        assert (w, k) in dec.components, (m, n, w, k)

                # (d) certificate terms: first three >= 0, fourth > 0
                for (w, d) in dec.components:
                    beta = affinize(rs, tuple(a - m for a in w), n * h, -d)
                    rep = gko_positivity_certificate(rs, m, n, beta)
                    t1, t2, t3, t4 = rep.certificate_terms
                    assert t1 >= 0 and t2 >= 0 and t3 >= 0 and t4 > 0


def test_criterion_9_affine_sl3_dominant_delta_max(sl3_affine):
    with criterion(9, "affine sl3 at depth 4: dominant delta-maximal beta of V(n rho) "
                      "yields the component V(m rho + beta) at shift 0"):
        rs = sl3_affine
        depth = 4
        h = rs.dual_coxeter
        rho = affine_rho(rs)
        for m, n in [(2, 1), (3, 1), (2, 2)]:
            lvl = (m + n) * h
            dec = truncated_tensor(rs, m * rho, n * rho, depth)
            char_n = affine_freudenthal(rs, n * rho, depth)
            checked = 0
            for beta_dom, d in delta_max_weights(char_n):
                if theta_pairing(rs, beta_dom) > n * h:
                    continue  # beta not affine-dominant: reported separately, not asserted
                lam_fin = tuple(m + b for b in beta_dom)
                assert (lam_fin, d) in dec.components, (m, n, beta_dom, d)
                checked += 1
            assert checked > 0
