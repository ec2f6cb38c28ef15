"""Conjecture verification scans over V(m rho) (x) V(n rho).

The scans compare the actual dominant support of a decomposition against the
predicted set {m rho + beta : beta a weight of V(n rho)} intersected with the
dominant chamber. Support containment in the predicted set is a theorem and
is asserted unconditionally; set equality is the statement under test, so a
FAILS verdict is a reportable finding rather than an internal error.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .charcalc import CharCache, dominant_weights_below, freudenthal
from .rootdata import AlgebraError, AlgebraId, InvariantError, RootSystem, Weight, build_root_system
from .tensor import klimyk

HOLDS = "HOLDS"
FAILS = "FAILS"
DEPTH_LIMITED = "DEPTH_LIMITED"
ERROR = "ERROR"

THREADS_ENV_VAR = "RHO_TENSOR_THREADS"


@dataclass
class ConjectureReport:
    """Verdict for one (algebra, m, n) case."""

    algebra: str
    m: int
    n: int
    predicted: list[Weight]
    present: list[Weight]
    missing: list[Weight]
    verdict: str
    error: str | None = None


def _rho_multiple(rs: RootSystem, k: int) -> Weight:
    return (k,) * rs.rank


def predicted_weights(rs: RootSystem, m: int, n: int, cache: CharCache | None = None) -> list[Weight]:
    """All dominant lam <= (m+n) rho whose translate lam - m rho is a weight
    of V(n rho), in lexicographic order."""
    if m < n or n < 0:
        raise AlgebraError(f"predicted_weights requires m >= n >= 0, got m={m}, n={n}")
    rs._require_finite()
    char_n = freudenthal(rs, _rho_multiple(rs, n), cache)
    mrho = _rho_multiple(rs, m)
    out = [
        lam
        for lam in dominant_weights_below(rs, _rho_multiple(rs, m + n))
        if char_n.contains(rs, tuple(a - b for a, b in zip(lam, mrho)))
    ]
    out.sort()
    return out


def verify_conjecture(rs: RootSystem, m: int, n: int, cache: CharCache | None = None) -> ConjectureReport:
    """Decompose V(m rho) (x) V(n rho) and compare support with prediction."""
    predicted = predicted_weights(rs, m, n, cache)
    dec = klimyk(rs, _rho_multiple(rs, m), _rho_multiple(rs, n), cache)
    support = dec.support()
    extra = support - set(predicted)
    if extra:
        raise InvariantError(
            f"{rs.algebra} m={m} n={n}: decomposition support exceeds the translated weight set: "
            f"{sorted(extra)}"
        )
    missing = sorted(set(predicted) - support)
    present = sorted(support)
    verdict = HOLDS if not missing else FAILS
    return ConjectureReport(str(rs.algebra), m, n, predicted, present, missing, verdict)


def naive_condition_scan(rs: RootSystem, m: int, n: int, cache: CharCache | None = None) -> list[Weight]:
    """Dominant lam <= (m+n) rho that are *not* components of
    V(m rho) (x) V(n rho), lexicographically sorted."""
    if m < n or n < 0:
        raise AlgebraError(f"naive_condition_scan requires m >= n >= 0, got m={m}, n={n}")
    rs._require_finite()
    support = klimyk(rs, _rho_multiple(rs, m), _rho_multiple(rs, n), cache).support()
    below = dominant_weights_below(rs, _rho_multiple(rs, m + n))
    return sorted(lam for lam in below if lam not in support)


@dataclass
class SupportContainmentReport:
    holds: bool
    witnesses: list[Weight] = field(default_factory=list)


def support_containment_check(
    rs: RootSystem, m: int, n: int, cache: CharCache | None = None
) -> SupportContainmentReport:
    """supp V(m rho)(x)V(n rho) vs supp V((m-1) rho)(x)V((n+1) rho)."""
    if m <= n or n < 0:
        raise AlgebraError(f"support_containment_check requires m > n >= 0, got m={m}, n={n}")
    sup_a = klimyk(rs, _rho_multiple(rs, m), _rho_multiple(rs, n), cache).support()
    sup_b = klimyk(rs, _rho_multiple(rs, m - 1), _rho_multiple(rs, n + 1), cache).support()
    witnesses = sorted(sup_a - sup_b)
    return SupportContainmentReport(holds=not witnesses, witnesses=witnesses)


def _threads_hint() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def scan_all(
    types: list[AlgebraId | str],
    max_sum: int,
    cache: CharCache | None = None,
    threads: int | None = None,
) -> list[ConjectureReport]:
    """verify_conjecture for every listed type and every m >= n >= 0 with
    m + n <= max_sum. Per-case failures are recorded, never raised."""
    cases = []
    for t in types:
        aid = AlgebraId.parse(t) if isinstance(t, str) else t
        if aid.affine:
            raise AlgebraError(f"scan_all covers finite types only, got {aid}")
        for total in range(max_sum + 1):
            for n in range(total // 2 + 1):
                cases.append((aid, total - n, n))

    def run(case) -> ConjectureReport:
        aid, m, n = case
        try:
            return verify_conjecture(build_root_system(aid), m, n, cache)
        except Exception as exc:  # recorded, not raised
            return ConjectureReport(str(aid), m, n, [], [], [], ERROR, error=str(exc))

    if threads is None:
        threads = _threads_hint()
    if threads > 1 and len(cases) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(run, cases))
    else:
        reports = [run(c) for c in cases]
    reports.sort(key=lambda r: (r.algebra, r.m + r.n, r.m, r.n))
    return reports
