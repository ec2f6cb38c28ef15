"""Truncated character theory for untwisted affine Kac-Moody algebras.

Affine weights carry r+1 fundamental coordinates over omega_0..omega_r plus
an integer delta shift. Characters of positive-level irreducibles are
computed slice-by-slice down to an explicit delta-depth by the Kac-Moody
Freudenthal recursion (real roots alpha + k delta with multiplicity one,
imaginary roots k delta with multiplicity rank). Truncated tensor products
are decomposed by peeling highest weights depth by depth. Everything is
depth-qualified: no claim is made beyond the truncation.

The normalized invariant form follows the standard affine conventions:
(delta|delta) = 0, (delta|Lambda) = level(Lambda), and on classical parts it
restricts to the finite normalized form, so levels and the Virasoro scalars
of the Goddard-Kent-Olive coset construction come out as exact rationals.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction

from .rootdata import AlgebraError, InvariantError, RootSystem, Weight

DEFAULT_DEPTH = 6

_aff_memo: dict[tuple[str, tuple[int, ...], int, int], "TruncatedAffineCharacter"] = {}
_aff_lock = threading.Lock()


@dataclass(frozen=True)
class AffineWeight:
    """Integer coordinates over omega_0..omega_r plus a delta shift."""

    fund: tuple[int, ...]
    delta_shift: int = 0

    def __add__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(
            tuple(a + b for a, b in zip(self.fund, other.fund)),
            self.delta_shift + other.delta_shift,
        )

    def __sub__(self, other: "AffineWeight") -> "AffineWeight":
        return AffineWeight(
            tuple(a - b for a, b in zip(self.fund, other.fund)),
            self.delta_shift - other.delta_shift,
        )

    def __mul__(self, k: int) -> "AffineWeight":
        return AffineWeight(tuple(k * a for a in self.fund), k * self.delta_shift)

    __rmul__ = __mul__

    def shifted(self, k: int) -> "AffineWeight":
        return AffineWeight(self.fund, self.delta_shift + k)

    @property
    def finite(self) -> Weight:
        return self.fund[1:]

    def is_dominant(self) -> bool:
        return all(x >= 0 for x in self.fund)


def _require_affine(rs: RootSystem) -> None:
    if not rs.algebra.affine:
        raise AlgebraError(f"{rs.algebra}: operation requires an untwisted affine algebra")


def affine_rho(rs: RootSystem, k: int = 1) -> AffineWeight:
    _require_affine(rs)
    return AffineWeight((k,) * (rs.rank + 1), 0)


def affine_delta(rs: RootSystem) -> AffineWeight:
    _require_affine(rs)
    return AffineWeight((0,) * (rs.rank + 1), 1)


def level(rs: RootSystem, w: AffineWeight) -> int:
    """Value on the central element: omega_0 coefficient 1, omega_i the dual marks."""
    _require_affine(rs)
    return w.fund[0] + sum(a * x for a, x in zip(rs.dual_marks, w.fund[1:]))


def theta_pairing(rs: RootSystem, finite_w: Weight) -> int:
    """<w, theta^vee> for a finite weight, via the dual marks."""
    return sum(a * x for a, x in zip(rs.dual_marks, finite_w))


def affinize(rs: RootSystem, finite_w: Weight, lvl: int, delta_shift: int = 0) -> AffineWeight:
    """The affine weight of the given level with classical part ``finite_w``."""
    _require_affine(rs)
    f0 = lvl - theta_pairing(rs, finite_w)
    return AffineWeight((f0,) + tuple(finite_w), delta_shift)


def affine_bilinear(rs: RootSystem, x: AffineWeight, y: AffineWeight) -> Fraction:
    """Normalized invariant form: finite part plus level/delta cross terms."""
    _require_affine(rs)
    fin = rs.bilinear(x.finite, y.finite)
    return fin + level(rs, x) * y.delta_shift + level(rs, y) * x.delta_shift


def in_affine_root_lattice(rs: RootSystem, w: AffineWeight) -> bool:
    return level(rs, w) == 0 and rs.in_root_lattice(w.finite)


@dataclass
class TruncatedAffineCharacter:
    """Per-depth finite-weight multiplicity slices of an affine irreducible.

    ``slices[d]`` maps finite dominant representatives to the multiplicity of
    ``highest - (finite offset) - d*delta``; slice 0 is the character of the
    finite irreducible with the same classical part.
    """

    algebra: str
    highest: AffineWeight
    depth: int
    slices: tuple[dict[Weight, int], ...]

    def multiplicity(self, rs: RootSystem, finite_w: Weight, d: int) -> int:
        if d < 0 or d > self.depth:
            raise AlgebraError(f"depth {d} outside computed range 0..{self.depth}")
        return self.slices[d].get(rs.to_dominant(finite_w)[0], 0)

    def min_depth(self, rs: RootSystem, finite_w: Weight) -> int | None:
        """First slice where the finite weight appears, within the truncation."""
        dom = rs.to_dominant(finite_w)[0]
        for d in range(self.depth + 1):
            if dom in self.slices[d]:
                return d
        return None


def affine_freudenthal(rs: RootSystem, lam: AffineWeight, depth: int) -> TruncatedAffineCharacter:
    """Delta-depth-truncated character of the affine irreducible V(lam)."""
    _require_affine(rs)
    if depth < 0:
        raise AlgebraError(f"depth must be non-negative, got {depth}")
    if not lam.is_dominant():
        raise AlgebraError(f"affine_freudenthal requires a dominant highest weight, got {lam}")
    lvl = level(rs, lam)
    if lvl <= 0:
        raise AlgebraError(f"affine_freudenthal requires positive level, got level {lvl}")
    key = (str(rs.algebra), lam.fund, lam.delta_shift, depth)
    with _aff_lock:
        hit = _aff_memo.get(key)
    if hit is not None:
        return hit

    rank = rs.rank
    scale = rs.form_scale
    h_dual = rs.dual_coxeter
    marks = rs.marks
    lam_fin = lam.finite
    caps = [x.numerator // x.denominator for x in rs.root_coords(lam_fin)]

    # candidate finite dominant parts per depth: gamma over the integer box
    # -d*marks <= gamma <= floor(root coords of lam_fin)
    def candidates(d: int):
        lo = [-d * a for a in marks]
        hi = caps
        out = []

        def rec(i, acc):
            if i == rank:
                gamma = tuple(acc)
                mu = tuple(
                    lam_fin[k] - sum(rs.cartan[k][j] * gamma[j] for j in range(rank)) for k in range(rank)
                )
                if all(x >= 0 for x in mu):
                    out.append((mu, gamma))
                return
            for v in range(lo[i], hi[i] + 1):
                rec(i + 1, acc + [v])

        rec(0, [])
        return out

    # process all (mu, d) candidates in increasing affine height of lam - mu
    todo = []
    for d in range(depth + 1):
        for mu, gamma in candidates(d):
            height = d + sum(g + d * a for g, a in zip(gamma, marks))
            todo.append((height, d, mu, gamma))
    todo.sort(key=lambda t: (t[0], t[1], t[2]))

    slices: list[dict[Weight, int]] = [dict() for _ in range(depth + 1)]
    slices[0][lam_fin] = 1

    finite_roots = [
        (rc, rs.positive_roots_fund[k], rs.sip_wr(rs.positive_roots_fund[k], rc))
        for k, rc in enumerate(rs.positive_roots)
    ]
    all_roots = finite_roots + [
        (tuple(-x for x in rc), tuple(-x for x in fund), s_aa) for rc, fund, s_aa in finite_roots
    ]

    lam_rho_fin = tuple(x + 1 for x in lam_fin)
    top_fin = rs.sip_ww(lam_rho_fin, lam_rho_fin)
    lvl_scaled = lvl * scale

    def slice_mult(w: Weight, d: int) -> int:
        return slices[d].get(rs.to_dominant(w)[0], 0)

    for height, d, mu, gamma in todo:
        if height == 0:
            continue
        num = 0
        # real roots alpha + k*delta, k = 0 (positive alpha only) and k >= 1 (all alpha)
        for k in range(0, d + 1):
            roots = finite_roots if k == 0 else all_roots
            for rc, fund, s_aa in roots:
                base = rs.sip_wr(mu, rc) + k * lvl_scaled
                j = 1
                while k * j <= d or k == 0:
                    dd = d - k * j
                    offs_ok = True
                    for i in range(rank):
                        if gamma[i] - j * rc[i] + dd * marks[i] < 0:
                            offs_ok = False
                            break
                    if not offs_ok:
                        break
                    nu = tuple(mu[i] + j * fund[i] for i in range(rank))
                    m = slice_mult(nu, dd)
                    if m:
                        num += m * (base + j * s_aa)
                    j += 1
        # imaginary roots k*delta with multiplicity rank
        for k in range(1, d + 1):
            for j in range(1, d // k + 1):
                m = slice_mult(mu, d - k * j)
                if m:
                    num += rank * m * k * lvl_scaled
        num *= 2
        if num == 0:
            continue
        mu_rho = tuple(x + 1 for x in mu)
        denom = top_fin - rs.sip_ww(mu_rho, mu_rho) + 2 * d * (lvl + h_dual) * scale
        if denom <= 0:
            raise InvariantError(
                f"affine Freudenthal: nonzero numerator with denominator {denom} <= 0 "
                f"at finite part {mu}, depth {d}, highest {lam} ({rs.algebra})"
            )
        q, r = divmod(num, denom)
        if r != 0 or q < 0:
            raise InvariantError(
                f"affine Freudenthal produced non-multiplicity {num}/{denom} at {mu}, depth {d}"
            )
        if q:
            slices[d][mu] = q

    char = TruncatedAffineCharacter(str(rs.algebra), lam, depth, tuple(slices))
    with _aff_lock:
        _aff_memo[key] = char
    return char


def delta_max_weights(char: TruncatedAffineCharacter) -> list[tuple[Weight, int]]:
    """Dominant representatives (finite weight, depth) that start their
    delta-string: positive multiplicity at the depth, zero one slice up."""
    out = []
    for d in range(char.depth + 1):
        for w in char.slices[d]:
            if d == 0 or w not in char.slices[d - 1]:
                out.append((w, d))
    out.sort(key=lambda t: (t[1], t[0]))
    return out


def _expand_slices(rs: RootSystem, char: TruncatedAffineCharacter) -> list[dict[Weight, int]]:
    full = []
    for sl in char.slices:
        expanded: dict[Weight, int] = {}
        for w, m in sl.items():
            for x in _finite_orbit(rs, w):
                expanded[x] = m
        full.append(expanded)
    return full


def _finite_orbit(rs: RootSystem, w: Weight) -> list[Weight]:
    seen = {w}
    frontier = [w]
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(rs.rank):
                if v[i] != 0:
                    img = rs.simple_reflection(v, i)
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
        frontier = nxt
    return list(seen)


@dataclass
class TruncatedDecomposition:
    """Components of V(lhs) (x) V(rhs) found within the truncation depth,
    keyed by (finite dominant part, delta-depth below lhs+rhs)."""

    algebra: str
    lhs: AffineWeight
    rhs: AffineWeight
    depth: int
    components: dict[tuple[Weight, int], int]

    def delta_max_components(self) -> list[tuple[Weight, int]]:
        best: dict[Weight, int] = {}
        for (w, d) in self.components:
            if w not in best or d < best[w]:
                best[w] = d
        return sorted(best.items(), key=lambda t: (t[1], t[0]))


def truncated_tensor(
    rs: RootSystem, lam: AffineWeight, mu: AffineWeight, depth: int
) -> TruncatedDecomposition:
    """Decompose the product of two positive-level affine irreducibles up to
    ``depth`` by slice convolution and highest-weight extraction.

    Extraction walks depths in increasing order and, within a depth, finite
    parts in decreasing height, so every candidate sees the contributions of
    all previously peeled components. Positive residual at a non-dominant
    affine weight or any negative residual is an internal failure.
    """
    _require_affine(rs)
    lvl_l, lvl_m = level(rs, lam), level(rs, mu)
    if lvl_l <= 0 or lvl_m <= 0:
        raise AlgebraError(f"truncated_tensor requires positive levels, got {lvl_l}, {lvl_m}")
    if depth < 0:
        raise AlgebraError(f"depth must be non-negative, got {depth}")
    lvl = lvl_l + lvl_m
    ch_l = affine_freudenthal(rs, lam, depth)
    ch_m = affine_freudenthal(rs, mu, depth)
    full_l = _expand_slices(rs, ch_l)
    full_m = _expand_slices(rs, ch_m)

    residual: list[dict[Weight, int]] = [dict() for _ in range(depth + 1)]
    for d1 in range(depth + 1):
        for d2 in range(depth + 1 - d1):
            target = residual[d1 + d2]
            for w1, m1 in full_l[d1].items():
                for w2, m2 in full_m[d2].items():
                    key = tuple(a + b for a, b in zip(w1, w2))
                    target[key] = target.get(key, 0) + m1 * m2

    components: dict[tuple[Weight, int], int] = {}
    for d in range(depth + 1):
        layer = [w for w in residual[d] if rs.is_dominant(w)]
        layer.sort(key=lambda w: (-rs.height(w), w))
        for w in layer:
            c = residual[d].get(w, 0)
            if c == 0:
                continue
            if c < 0:
                raise InvariantError(
                    f"negative residual {c} at finite part {w}, depth {d} in "
                    f"{lam} (x) {mu} over {rs.algebra}"
                )
            if theta_pairing(rs, w) > lvl:
                raise InvariantError(
                    f"positive residual {c} at non-dominant affine weight (finite {w}, depth {d}, "
                    f"level {lvl}) in {lam} (x) {mu} over {rs.algebra}"
                )
            comp_char = affine_freudenthal(rs, affinize(rs, w, lvl), depth - d)
            comp_full = _expand_slices(rs, comp_char)
            for e in range(depth - d + 1):
                target = residual[d + e]
                for x, mx in comp_full[e].items():
                    acc = target.get(x, 0) - c * mx
                    if acc:
                        target[x] = acc
                    else:
                        target.pop(x, None)
            components[(w, d)] = c
    leftovers = {(w, d): v for d in range(depth + 1) for w, v in residual[d].items() if v}
    if leftovers:
        raise InvariantError(
            f"extraction left a nonzero residual in {lam} (x) {mu} over {rs.algebra}: {leftovers}"
        )
    return TruncatedDecomposition(str(rs.algebra), lam, mu, depth, components)


def sl2_delta_max_rule(
    rs: RootSystem, m: int, n: int, lam: AffineWeight, depth: int = DEFAULT_DEPTH
) -> int:
    """Position of the delta-maximal component through ``lam`` in
    V(m rho) (x) V(n rho) for affine sl2: N = min(k1, k2) with k1, k2 the
    shifts taking lam - m rho (resp. lam - n rho) to the top of its
    delta-string in V(n rho) (resp. V(m rho))."""
    _require_affine(rs)
    if rs.algebra.family != "A" or rs.rank != 1:
        raise AlgebraError(f"sl2_delta_max_rule applies to A1~ only, got {rs.algebra}")
    if m < n or n < 1:
        raise AlgebraError(f"sl2_delta_max_rule requires m >= n >= 1, got m={m}, n={n}")
    if not lam.is_dominant():
        raise AlgebraError(f"lam must be dominant, got {lam}")
    h_dual = rs.dual_coxeter
    if level(rs, lam) != (m + n) * h_dual:
        raise AlgebraError(
            f"lam must have level {(m + n) * h_dual}, got {level(rs, lam)}"
        )
    rho_m = affine_rho(rs, m)
    rho_n = affine_rho(rs, n)
    if not rs.in_root_lattice(tuple(a - b for a, b in zip(lam.finite, (rho_m + rho_n).finite))):
        raise AlgebraError(f"lam {lam} is not congruent to (m+n) rho modulo the root lattice")
    s = lam.delta_shift
    ks = []
    for big, other in ((rho_m, rho_n), (rho_n, rho_m)):
        beta_fin = tuple(a - b for a, b in zip(lam.finite, big.finite))
        char = affine_freudenthal(rs, other, depth)
        dmin = char.min_depth(rs, beta_fin)
        if dmin is None:
            raise AlgebraError(
                f"lam - {'m' if big is rho_m else 'n'} rho is not a weight of the complementary "
                f"factor within depth {depth}"
            )
        ks.append(-s - dmin)
    return min(ks)


@dataclass
class GkoReport:
    """Exact GKO coset data for one component of V(m rho) (x) V(n rho)."""

    central_charge: Fraction
    l0_scalar: Fraction
    certificate_terms: tuple[Fraction, Fraction, Fraction, Fraction]
    denominator: Fraction


def gko_central_charge(rs: RootSystem, level_l: int, level_m: int) -> Fraction:
    """dim(g) * (l/(l+h) + m/(m+h) - (l+m)/(l+m+h)), exact."""
    _require_affine(rs)
    if level_l < 0 or level_m < 0:
        raise AlgebraError(f"levels must be non-negative, got {level_l}, {level_m}")
    h = rs.dual_coxeter
    dim = rs.dim_adjoint
    return dim * (
        Fraction(level_l, level_l + h)
        + Fraction(level_m, level_m + h)
        - Fraction(level_l + level_m, level_l + level_m + h)
    )


def gko_l0_scalar(rs: RootSystem, lam: AffineWeight, mu: AffineWeight, nu: AffineWeight) -> Fraction:
    """Scalar by which the coset L_0 acts on the V(nu) isotypic piece of
    V(lam) (x) V(mu)."""
    _require_affine(rs)
    h = rs.dual_coxeter
    ll, lm = level(rs, lam), level(rs, mu)
    if ll <= 0 or lm <= 0:
        raise AlgebraError(f"gko_l0_scalar requires positive levels, got {ll}, {lm}")
    if level(rs, nu) != ll + lm:
        raise AlgebraError(f"nu must have level {ll + lm}, got {level(rs, nu)}")
    rho2 = 2 * affine_rho(rs)

    def casimir(w: AffineWeight, lv: int) -> Fraction:
        return affine_bilinear(rs, w, w + rho2) / (lv + h)

    return Fraction(1, 2) * (casimir(lam, ll) + casimir(mu, lm) - casimir(nu, ll + lm))


def gko_positivity_certificate(rs: RootSystem, m: int, n: int, beta: AffineWeight) -> GkoReport:
    """The four non-negative summands whose total, divided by
    2 h (m+1)(n+1)(m+n+1), is the L_0 scalar on V(m rho + beta).

    ``beta`` must be a weight of V(n rho), handed over as an affine weight
    whose delta shift records its depth below n rho.
    """
    _require_affine(rs)
    if m < n or n < 1:
        raise AlgebraError(f"certificate requires m >= n >= 1, got m={m}, n={n}")
    h = rs.dual_coxeter
    rho_aff = affine_rho(rs)
    rho_n, rho_m = n * rho_aff, m * rho_aff
    depth_needed = -beta.delta_shift
    if depth_needed < 0 or affine_freudenthal(rs, rho_n, depth_needed).multiplicity(
        rs, beta.finite, depth_needed
    ) == 0:
        raise AlgebraError(f"beta {beta} is not a weight of V({n} rho) at its recorded shift")
    gamma = rho_n - beta

    def ip(x: AffineWeight, y: AffineWeight) -> Fraction:
        return affine_bilinear(rs, x, y)

    t1 = (m + 1) * (n + 1) * ip(2 * rho_aff, gamma)
    t2 = (m + 1) * (n + 1) * (ip(rho_n, rho_n) - ip(beta, beta))
    t3 = 2 * (m + 1) * (n + 1) * ip(rho_m, gamma)
    t4 = (m + n + 2) * ip(rho_m, rho_n)
    terms = (Fraction(t1), Fraction(t2), Fraction(t3), Fraction(t4))
    if any(t < 0 for t in terms[:3]) or terms[3] <= 0:
        raise InvariantError(
            f"positivity certificate failed for m={m}, n={n}, beta={beta}: terms {terms}"
        )
    denominator = Fraction(2 * h * (m + 1) * (n + 1) * (m + n + 1))
    scalar = sum(terms) / denominator
    verify = gko_l0_scalar(rs, rho_m, rho_n, rho_m + beta)
    if scalar != verify:
        raise InvariantError(
            f"certificate sum {scalar} disagrees with direct L_0 scalar {verify} "
            f"for m={m}, n={n}, beta={beta}"
        )
    return GkoReport(
        central_charge=gko_central_charge(rs, m * h, n * h),
        l0_scalar=scalar,
        certificate_terms=terms,
        denominator=denominator,
    )


UNBROKEN = "UNBROKEN"
GAP_AT_ONE = "GAP_AT_ONE"


def delta_string_classify(scalar: Fraction) -> str:
    """String structure below a delta-maximal component: positive scalar
    means no gaps; zero means exactly the shift-one member is absent."""
    if scalar > 0:
        return UNBROKEN
    if scalar == 0:
        return GAP_AT_ONE
    raise InvariantError(f"L_0 scalar {scalar} < 0 on a delta-maximal component (unitarity violation)")


def kac_wakimoto_check(
    rs: RootSystem, lam: AffineWeight, mu: AffineWeight, nu: AffineWeight, depth: int
) -> int | None:
    """Least k <= depth with V(nu - k delta) a component of the truncated
    decomposition, or None if none within the truncation (never a refutation)."""
    _require_affine(rs)
    if not in_affine_root_lattice(rs, lam + mu - nu):
        raise AlgebraError(
            "kac_wakimoto_check precondition violated: lam + mu - nu is not in the affine root lattice"
        )
    dec = truncated_tensor(rs, lam, mu, depth)
    dom = rs.to_dominant(nu.finite)[0]
    base = -nu.delta_shift  # depth position of nu itself relative to lam+mu
    for k in range(depth + 1):
        d = base + k
        if 0 <= d <= depth and (dom, d) in dec.components:
            return k
    return None
