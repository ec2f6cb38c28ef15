"""Exact weight multiplicities of finite-type irreducibles via Freudenthal's
recursion, with an in-memory memo and an optional persistent cache.

Character tables store dominant representatives only; orbit expansion happens
on demand. Within one run, weights are processed by decreasing dominance
(increasing height of ``lam - mu``), so every multiplicity the recursion
references is already known; weights in the same height layer are independent
of one another and may be evaluated in any order (or concurrently).
"""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass
from pathlib import Path
from random import Random

from .rootdata import (
    AlgebraError,
    InvariantError,
    RootSystem,
    Weight,
    floor_root_coords,
)

CACHE_ENV_VAR = "RHO_TENSOR_CACHE"
_CACHE_FORMAT = "rho-tensor-char v1"

_memo: dict[tuple[str, Weight], "DominantCharacter"] = {}
_memo_lock = threading.Lock()


@dataclass
class DominantCharacter:
    """Map from dominant weights of V(highest) to exact multiplicities."""

    algebra: str
    highest: Weight
    mults: dict[Weight, int]

    def contains(self, rs: RootSystem, beta: Weight) -> bool:
        """True iff ``beta`` (any Weyl chamber) is a weight of V(highest)."""
        return rs.to_dominant(beta)[0] in self.mults

    def multiplicity(self, rs: RootSystem, beta: Weight) -> int:
        """Weight multiplicity at ``beta``; Weyl-invariant by reflection."""
        return self.mults.get(rs.to_dominant(beta)[0], 0)

    def full_weights(self, rs: RootSystem) -> dict[Weight, int]:
        """Orbit-expand the dominant table to all weights."""
        out: dict[Weight, int] = {}
        for mu, m in self.mults.items():
            for w in rs.orbit(mu):
                out[w] = m
        return out

    def dimension(self, rs: RootSystem) -> int:
        return sum(m * len(rs.orbit(mu)) for mu, m in self.mults.items())


def weight_set_contains(char: DominantCharacter, rs: RootSystem, beta: Weight) -> bool:
    return char.contains(rs, beta)


def multiplicity_at(char: DominantCharacter, rs: RootSystem, beta: Weight) -> int:
    return char.multiplicity(rs, beta)


def dominant_weights_below(rs: RootSystem, lam: Weight) -> list[Weight]:
    """All dominant mu with lam - mu a non-negative integer combination of
    simple roots, by breadth-first descent subtracting simple roots."""
    rs._require_finite()
    if not rs.is_dominant(lam):
        raise AlgebraError(f"dominant_weights_below requires a dominant weight, got {lam}")
    caps = floor_root_coords(rs, lam)
    rank = rs.rank
    zero = (0,) * rank
    seen = {zero}
    frontier = [zero]
    out = [lam]
    while frontier:
        nxt = []
        for c in frontier:
            for i in range(rank):
                if c[i] < caps[i]:
                    cc = c[:i] + (c[i] + 1,) + c[i + 1 :]
                    if cc not in seen:
                        seen.add(cc)
                        nxt.append(cc)
                        mu = tuple(a - b for a, b in zip(lam, rs.fund_coords_of_root(cc)))
                        if all(x >= 0 for x in mu):
                            out.append(mu)
        frontier = nxt
    out.sort(key=lambda mu: (rs.height(tuple(a - b for a, b in zip(lam, mu))), mu))
    return out


def _freudenthal_table(rs: RootSystem, lam: Weight, order_seed: int | None = None) -> dict[Weight, int]:
    rank = rs.rank
    rho = rs.rho
    roots = [
        (rc, rs.positive_roots_fund[k], rs.sip_wr(rs.positive_roots_fund[k], rc))
        for k, rc in enumerate(rs.positive_roots)
    ]
    # s_rr(alpha, alpha) = sip_wr(alpha_fund, alpha_rc)
    lam_rho = tuple(x + 1 for x in lam)
    top = rs.sip_ww(lam_rho, lam_rho)

    weights = dominant_weights_below(rs, lam)
    offsets = {mu: tuple(int(x) for x in rs.root_coords(tuple(a - b for a, b in zip(lam, mu)))) for mu in weights}
    layers: dict[int, list[Weight]] = {}
    for mu in weights:
        layers.setdefault(sum(offsets[mu]), []).append(mu)

    rng = Random(order_seed) if order_seed is not None else None
    mults: dict[Weight, int] = {lam: 1}
    for h in sorted(layers):
        if h == 0:
            continue
        layer = layers[h]
        if rng is not None:
            rng.shuffle(layer)
        for mu in layer:
            c_mu = offsets[mu]
            num = 0
            for rc, fund, s_aa in roots:
                base = rs.sip_wr(mu, rc)
                j = 1
                while True:
                    ok = True
                    for i in range(rank):
                        if c_mu[i] - j * rc[i] < 0:
                            ok = False
                            break
                    if not ok:
                        break
                    nu = tuple(mu[i] + j * fund[i] for i in range(rank))
                    m = mults.get(rs.to_dominant(nu)[0], 0)
                    if m:
                        num += m * (base + j * s_aa)
                    j += 1
            num *= 2
            denom = top - rs.sip_ww(tuple(x + 1 for x in mu), tuple(x + 1 for x in mu))
            if denom <= 0:
                raise InvariantError(
                    f"Freudenthal denominator {denom} <= 0 at mu={mu} for highest weight {lam} ({rs.algebra})"
                )
            q, r = divmod(num, denom)
            if r != 0 or q < 0:
                raise InvariantError(
                    f"Freudenthal recursion produced non-multiplicity {num}/{denom} at mu={mu}, lam={lam}"
                )
            if q:
                mults[mu] = q
    return mults


def freudenthal(rs: RootSystem, lam: Weight, cache: "CharCache | None" = None) -> DominantCharacter:
    """Dominant character table of the finite-type irreducible V(lam)."""
    rs._require_finite()
    if not rs.is_dominant(lam):
        raise AlgebraError(f"freudenthal requires a dominant highest weight, got {lam}")
    key = (str(rs.algebra), lam)
    with _memo_lock:
        hit = _memo.get(key)
    if hit is not None:
        if cache is not None:
            cache.ensure(rs, lam, hit.mults)
        return hit
    char = None
    if cache is not None:
        stored = cache.load(rs, lam)
        if stored is not None:
            char = DominantCharacter(str(rs.algebra), lam, stored)
    if char is None:
        if all(x == 0 for x in lam):
            table = {lam: 1}
        else:
            table = _freudenthal_table(rs, lam)
        char = DominantCharacter(str(rs.algebra), lam, table)
        if cache is not None:
            cache.store(rs, lam, char.mults)
    with _memo_lock:
        _memo[key] = char
    return char


def clear_memory_cache() -> None:
    with _memo_lock:
        _memo.clear()


class CharCache:
    """Content-addressed on-disk store of dominant character tables.

    One plain-text file per (algebra, highest weight) with a versioned
    header and sorted ``c1,...,cr:mult`` lines; writes are atomic so
    concurrent readers never observe a partial table.
    """

    def __init__(self, root: str | Path | None = None, enabled: bool = True):
        if root is None:
            root = os.environ.get(CACHE_ENV_VAR) or Path.home() / ".cache" / "rho-tensor"
        self.root = Path(root)
        self.enabled = enabled
        self._write_lock = threading.Lock()

    def _path(self, algebra: str, lam: Weight) -> Path:
        return self.root / f"{algebra}.{'_'.join(str(c) for c in lam)}.char"

    def load(self, rs: RootSystem, lam: Weight) -> dict[Weight, int] | None:
        if not self.enabled:
            return None
        path = self._path(str(rs.algebra), lam)
        if not path.is_file():
            return None
        lines = path.read_text().splitlines()
        expect = f"{_CACHE_FORMAT} {rs.algebra} {','.join(str(c) for c in lam)}"
        if not lines or lines[0] != expect:
            return None
        table: dict[Weight, int] = {}
        for line in lines[1:]:
            if not line.strip():
                continue
            coords, _, mult = line.partition(":")
            table[tuple(int(c) for c in coords.split(","))] = int(mult)
        if table.get(lam) != 1:
            return None
        return table

    def store(self, rs: RootSystem, lam: Weight, table: dict[Weight, int]) -> None:
        if not self.enabled:
            return
        path = self._path(str(rs.algebra), lam)
        body = [f"{_CACHE_FORMAT} {rs.algebra} {','.join(str(c) for c in lam)}"]
        for mu in sorted(table):
            body.append(f"{','.join(str(c) for c in mu)}:{table[mu]}")
        with self._write_lock:
            self.root.mkdir(parents=True, exist_ok=True)
            tmp = path.with_suffix(f".tmp{os.getpid()}.{threading.get_ident()}")
            tmp.write_text("\n".join(body) + "\n")
            os.replace(tmp, path)

    def ensure(self, rs: RootSystem, lam: Weight, table: dict[Weight, int]) -> None:
        """Persist the table if it is not on disk yet (memo-hit path)."""
        if self.enabled and not self._path(str(rs.algebra), lam).is_file():
            self.store(rs, lam, table)

    def stat(self) -> list[tuple[str, int]]:
        if not self.root.is_dir():
            return []
        return sorted((p.name, p.stat().st_size) for p in self.root.glob("*.char"))

    def clear(self) -> int:
        removed = 0
        if self.root.is_dir():
            for p in self.root.glob("*.char"):
                p.unlink()
                removed += 1
        return removed


def default_cache(enabled: bool = True) -> CharCache:
    return CharCache(None, enabled)
