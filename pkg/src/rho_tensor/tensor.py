"""Exact tensor product decomposition of finite-type irreducibles.

The production path is the Klimyk algorithm: iterate over the weights of the
smaller factor, reflect ``lam + nu + rho`` to the dominant chamber tracking
the sign, and accumulate. ``oracle_decompose`` is an independent check that
multiplies full characters as formal weight sums and peels highest weights;
the two must agree everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .charcalc import CharCache, freudenthal
from .rootdata import AlgebraError, InvariantError, RootSystem, RootVector, Weight


@dataclass
class Decomposition:
    """Outer multiplicities of the components of V(lhs) (x) V(rhs)."""

    algebra: str
    lhs: Weight
    rhs: Weight
    components: dict[Weight, int]

    def multiplicity(self, nu: Weight) -> int:
        return self.components.get(nu, 0)

    def support(self) -> set[Weight]:
        return set(self.components)

    def sorted_items(self) -> list[tuple[Weight, int]]:
        return sorted(self.components.items())


def _check_decomposition(rs: RootSystem, dec: Decomposition) -> None:
    bad = {nu: m for nu, m in dec.components.items() if m <= 0}
    if bad:
        raise InvariantError(f"non-positive outer multiplicities in {dec.lhs} (x) {dec.rhs}: {bad}")
    cartan = tuple(a + b for a, b in zip(dec.lhs, dec.rhs))
    if dec.components.get(cartan) != 1:
        raise InvariantError(
            f"Cartan component of {dec.lhs} (x) {dec.rhs} has multiplicity "
            f"{dec.components.get(cartan)}, expected 1"
        )
    total = sum(m * rs.weyl_dimension(nu) for nu, m in dec.components.items())
    expected = rs.weyl_dimension(dec.lhs) * rs.weyl_dimension(dec.rhs)
    if total != expected:
        raise InvariantError(
            f"dimension conservation failed for {dec.lhs} (x) {dec.rhs}: {total} != {expected}"
        )


def _reflect_regular(rs: RootSystem, w: list[int]) -> tuple[Weight, int] | None:
    """Reflect to the dominant chamber; None as soon as a wall is certain."""
    rank = rs.rank
    cols = rs.simple_fund
    parity = 1
    while True:
        neg = -1
        for i in range(rank):
            wi = w[i]
            if wi == 0:
                return None
            if wi < 0:
                neg = i
                break
        if neg < 0:
            if 0 in w:
                return None
            return tuple(w), parity
        wi = w[neg]
        col = cols[neg]
        for j in range(rank):
            w[j] -= wi * col[j]
        parity = -parity


def klimyk(rs: RootSystem, lam: Weight, mu: Weight, cache: CharCache | None = None) -> Decomposition:
    """Decompose V(lam) (x) V(mu) by signed reflection over the weights of
    the smaller-dimensional factor (ties toward ``mu``)."""
    rs._require_finite()
    for w in (lam, mu):
        if not rs.is_dominant(w):
            raise AlgebraError(f"klimyk requires dominant weights, got {w}")
    if rs.weyl_dimension(lam) < rs.weyl_dimension(mu):
        big, small = mu, lam
    else:
        big, small = lam, mu
    char = freudenthal(rs, small, cache)
    rank = rs.rank
    shifted = tuple(x + 1 for x in big)  # big + rho
    components: dict[Weight, int] = {}
    for wt, m in char.mults.items():
        for nu in rs.orbit(wt):
            xi = [shifted[i] + nu[i] for i in range(rank)]
            hit = _reflect_regular(rs, xi)
            if hit is None:
                continue
            dom, sign = hit
            key = tuple(x - 1 for x in dom)
            acc = components.get(key, 0) + m * sign
            if acc:
                components[key] = acc
            else:
                components.pop(key, None)
    if any(m < 0 for m in components.values()):
        raise InvariantError(
            f"Klimyk accumulation went negative for {lam} (x) {mu}: "
            f"{ {k: v for k, v in components.items() if v < 0} }"
        )
    dec = Decomposition(str(rs.algebra), lam, mu, components)
    _check_decomposition(rs, dec)
    return dec


def oracle_decompose(rs: RootSystem, lam: Weight, mu: Weight, cache: CharCache | None = None) -> Decomposition:
    """Brute-force decomposition: multiply full characters as formal weight
    sums, then repeatedly strip a maximal dominant weight. Intended for small
    dimensions; serves as the independent oracle for :func:`klimyk`."""
    rs._require_finite()
    for w in (lam, mu):
        if not rs.is_dominant(w):
            raise AlgebraError(f"oracle_decompose requires dominant weights, got {w}")
    full_l = freudenthal(rs, lam, cache).full_weights(rs)
    full_m = freudenthal(rs, mu, cache).full_weights(rs)
    product: dict[Weight, int] = {}
    for w1, m1 in full_l.items():
        for w2, m2 in full_m.items():
            key = tuple(a + b for a, b in zip(w1, w2))
            product[key] = product.get(key, 0) + m1 * m2

    def sort_key(w: Weight):
        return (rs.height(w), w)

    components: dict[Weight, int] = {}
    while product:
        nu = max(product, key=sort_key)
        coeff = product[nu]
        if coeff < 0 or not rs.is_dominant(nu):
            raise InvariantError(
                f"oracle peel found maximal weight {nu} with coefficient {coeff} in {lam} (x) {mu}"
            )
        components[nu] = coeff
        for w, m in freudenthal(rs, nu, cache).full_weights(rs).items():
            acc = product.get(w, 0) - coeff * m
            if acc:
                product[w] = acc
            else:
                product.pop(w, None)
    dec = Decomposition(str(rs.algebra), lam, mu, components)
    _check_decomposition(rs, dec)
    return dec


def contains_component(
    rs: RootSystem, lam: Weight, mu: Weight, nu: Weight, cache: CharCache | None = None
) -> bool:
    """Membership of V(nu) in V(lam) (x) V(mu)."""
    if not rs.is_dominant(nu):
        raise AlgebraError(f"contains_component requires a dominant nu, got {nu}")
    return nu in klimyk(rs, lam, mu, cache).components


def saturation_check(
    rs: RootSystem, lam: Weight, mu: Weight, nu: Weight, d: int, cache: CharCache | None = None
) -> bool:
    """True iff V(d nu) is a component of V(d lam) (x) V(d mu).

    Requires ``lam + mu - nu`` in the root lattice; a violated precondition
    raises, which keeps it distinct from a legitimate ``False``.
    """
    if d < 1:
        raise AlgebraError(f"saturation factor must be a positive integer, got {d}")
    diff = tuple(a + b - c for a, b, c in zip(lam, mu, nu))
    if not rs.in_root_lattice(diff):
        raise AlgebraError(
            f"saturation_check precondition violated: lam+mu-nu = {diff} is not in the root lattice"
        )
    scale = lambda w: tuple(d * x for x in w)
    return contains_component(rs, scale(lam), scale(mu), scale(nu), cache)


@dataclass
class SchurReport:
    """Outcome of a multiplicity-dominance comparison of two decompositions."""

    dominates: bool
    witnesses: list[tuple[Weight, int, int]] = field(default_factory=list)


def schur_compare(a: Decomposition, b: Decomposition) -> SchurReport:
    """Does ``b`` contain every component of ``a`` with multiplicity at least
    as large? Witnesses list each violating weight with both multiplicities."""
    if a.algebra != b.algebra:
        raise AlgebraError(f"cannot compare decompositions over {a.algebra} and {b.algebra}")
    total_a = tuple(x + y for x, y in zip(a.lhs, a.rhs))
    total_b = tuple(x + y for x, y in zip(b.lhs, b.rhs))
    if total_a != total_b:
        raise AlgebraError(
            f"cannot compare decompositions with different total weights {total_a} and {total_b}"
        )
    witnesses = [
        (nu, a.multiplicity(nu), b.multiplicity(nu))
        for nu in sorted(a.support() | b.support())
        if b.multiplicity(nu) < a.multiplicity(nu)
    ]
    return SchurReport(dominates=not witnesses, witnesses=witnesses)


def pair_order_violations(
    rs: RootSystem, lam: Weight, mu: Weight, lam_p: Weight, mu_p: Weight
) -> list[RootVector]:
    """Positive coroots where min{lam, mu} exceeds min{lam', mu'}."""
    if tuple(a + b for a, b in zip(lam, mu)) != tuple(a + b for a, b in zip(lam_p, mu_p)):
        raise AlgebraError("pair order requires lam + mu = lam' + mu'")
    bad = []
    for rc in rs.positive_roots:
        lo = min(rs.pair_coroot(lam, rc), rs.pair_coroot(mu, rc))
        hi = min(rs.pair_coroot(lam_p, rc), rs.pair_coroot(mu_p, rc))
        if lo > hi:
            bad.append(rc)
    return bad


def pair_order_le(rs: RootSystem, lam: Weight, mu: Weight, lam_p: Weight, mu_p: Weight) -> bool:
    """min-pairing order on pairs of dominant weights with equal sums."""
    return not pair_order_violations(rs, lam, mu, lam_p, mu_p)
