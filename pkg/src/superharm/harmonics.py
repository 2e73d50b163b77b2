"""Spherical and generalized harmonics and their Fischer decompositions.

For superdimension M = m - 2n, the degrees

    exceptional_indices(M) = { k : 2 - M/2 <= k <= 2 - M }   (M in -2N_0)

are where the classical picture breaks: the space Ht_k of degree-k solutions
of lap r2 lap = 0 strictly contains the harmonics H_k = ker lap, and the
defect is measured by the socle H0_k = H_k intersect r2 P_{k-2}, a copy of
the mirror harmonics H_{2-M-k} multiplied by a power of r2.

The Fischer decomposition of P_k then mixes both kinds of component: with
N_k = {k, k-2, ..}, the exceptional starts are tildeJ_k = N_k cap
exceptional_indices(M), their mirrors J0_k = {2 - M - l} are suppressed, and
the remaining starts J_k contribute plain harmonics:

    P_k = sum over tildeJ_k of r^(k-l) Ht_l + sum over J_k of r^(k-l) H_l.

For m = 0 the multiplication by r2 is no longer injective and the formula
above is not available; the purely fermionic decomposition indexed by
N_min(k, 2n-k) is used instead, and the report cross-checks it against the
index-set formula.

All spaces are exact kernels of exact matrices; every claimed direct sum is
verified by an exact rank computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactla import (
    Subspace,
    image,
    kernel,
    operator_matrix,
    polynomials_rank,
    span_subspace,
    subspace_polynomials,
)
from .operators import (
    generalized_laplacian_op,
    laplacian_op,
    rsquare,
    rsquare_op,
)
from .superpoly import SuperPolynomial, SuperSignature, monomial_basis


def exceptional_indices(M: int) -> frozenset[int]:
    """Degrees where generalized and ordinary harmonics differ; empty unless
    M is a nonpositive even integer (M = 0 included)."""
    if M > 0 or M % 2 != 0:
        return frozenset()
    return frozenset(range(2 - M // 2, 2 - M + 1))


@lru_cache(maxsize=None)
def harmonic_space(signature: SuperSignature, k: int) -> Subspace:
    """H_k: degree-k kernel of the Laplace operator."""
    if k < 0:
        return Subspace.zero(0, (signature, k))
    return kernel(operator_matrix(laplacian_op(signature), k), (signature, k))


@lru_cache(maxsize=None)
def generalized_harmonic_space(signature: SuperSignature, k: int) -> Subspace:
    """Ht_k: degree-k kernel of lap r2 lap."""
    if k < 0:
        return Subspace.zero(0, (signature, k))
    return kernel(operator_matrix(generalized_laplacian_op(signature), k), (signature, k))


@lru_cache(maxsize=None)
def socle_space(signature: SuperSignature, k: int) -> Subspace:
    """H0_k: harmonics that are also multiples of r2."""
    H = harmonic_space(signature, k)
    if k < 2:
        return Subspace.zero(H.ambient_dim, (signature, k))
    r2_image = image(operator_matrix(rsquare_op(signature), k - 2), (signature, k))
    return H.intersect(r2_image)


@lru_cache(maxsize=None)
def harmonic_basis(signature: SuperSignature, k: int) -> tuple[SuperPolynomial, ...]:
    return subspace_polynomials(harmonic_space(signature, k))


@lru_cache(maxsize=None)
def generalized_harmonic_basis(signature: SuperSignature, k: int) -> tuple[SuperPolynomial, ...]:
    return subspace_polynomials(generalized_harmonic_space(signature, k))


@lru_cache(maxsize=None)
def rsquare_power(signature: SuperSignature, j: int) -> SuperPolynomial:
    """(r2)^j, cached per signature."""
    if j < 0:
        raise ValueError("negative power of r2")
    if j == 0:
        return SuperPolynomial.one(signature)
    return rsquare_power(signature, j - 1) * rsquare(signature)


@dataclass(frozen=True)
class FischerIndexSets:
    """Start degrees for the degree-k decomposition.

    degrees: every start k, k-2, ..; exceptional: starts whose component is
    the generalized space; suppressed: mirror degrees 2 - M - l of the
    exceptional starts, which carry no component; ordinary: the rest.
    """

    k: int
    degrees: tuple[int, ...]
    exceptional: tuple[int, ...]
    suppressed: tuple[int, ...]
    ordinary: tuple[int, ...]


def fischer_index_sets(signature: SuperSignature, k: int) -> FischerIndexSets:
    exc = exceptional_indices(signature.M)
    degrees = tuple(range(k, -1, -2))
    exceptional = tuple(l for l in degrees if l in exc)
    suppressed_set = {2 - signature.M - l for l in exceptional}
    suppressed = tuple(l for l in degrees if l in suppressed_set)
    ordinary = tuple(l for l in degrees if l not in exc and l not in suppressed_set)
    return FischerIndexSets(k, degrees, exceptional, suppressed, ordinary)


@dataclass(frozen=True)
class FischerSummand:
    """One component r^power * (H or Ht at start degree)."""

    kind: str  # "H" or "Ht"
    degree: int
    rpower: int
    dim: int

    def describe(self) -> str:
        prefix = f"r^{self.rpower}*" if self.rpower else ""
        return f"{prefix}{self.kind}_{self.degree}"


@dataclass(frozen=True)
class DecompositionReport:
    signature: SuperSignature
    k: int
    summands: tuple[FischerSummand, ...]
    suppressed: tuple[int, ...]
    total_dim: int
    space_dim: int
    verified: bool
    failure_witness: str | None = None
    notes: tuple[str, ...] = ()


def _summand_polynomials(
    signature: SuperSignature, kind: str, degree: int, rpower: int
) -> list[SuperPolynomial]:
    basis = (
        harmonic_basis(signature, degree)
        if kind == "H"
        else generalized_harmonic_basis(signature, degree)
    )
    lift = rsquare_power(signature, rpower // 2)
    return [lift * h for h in basis]


def _decomposition_plan(
    signature: SuperSignature, k: int
) -> tuple[list[tuple[str, int, int]], tuple[int, ...], tuple[str, ...]]:
    """Component list (kind, start degree, r-power) of the degree-k
    decomposition, plus suppressed degrees and notes."""
    notes: list[str] = []
    sets = fischer_index_sets(signature, k)
    if signature.m == 0:
        plan = _fermionic_summand_plan(signature, k)
        formula_plan = [("Ht", l, k - l) for l in sets.exceptional] + [
            ("H", l, k - l) for l in sets.ordinary
        ]
        agreement = _plans_agree(signature, plan, formula_plan, k)
        notes.append(
            "m=0: purely fermionic decomposition used; index-set formula "
            + ("matches after dropping trivial components" if agreement else "DISAGREES")
        )
        starts = {degree for _, degree, _ in plan}
        suppressed = tuple(sorted(l for l in sets.degrees if l not in starts))
    else:
        plan = [("Ht", l, k - l) for l in sets.exceptional] + [
            ("H", l, k - l) for l in sets.ordinary
        ]
        plan.sort(key=lambda item: item[1])
        suppressed = tuple(sorted(sets.suppressed))
    return plan, suppressed, tuple(notes)


@lru_cache(maxsize=None)
def fischer_stack(signature: SuperSignature, k: int) -> tuple[SuperPolynomial, ...]:
    """Concatenated lifted component bases of the degree-k decomposition, in
    summand order; spans P_k exactly when the decomposition verifies.  Empty
    for k < 0."""
    if k < 0:
        return ()
    plan, _, _ = _decomposition_plan(signature, k)
    stacked: list[SuperPolynomial] = []
    for kind, degree, rpower in plan:
        stacked.extend(_summand_polynomials(signature, kind, degree, rpower))
    return tuple(stacked)


def _fermionic_summand_plan(signature: SuperSignature, k: int) -> list[tuple[str, int, int]]:
    """Components of degree k for m = 0: starts N_min(k, 2n-k), plain
    harmonics only."""
    twon = signature.fermionic_count
    if k > twon:
        return []
    base = min(k, twon - k)
    return [("H", l, k - l) for l in range(base % 2, base + 1, 2)]


def fischer_decomposition(signature: SuperSignature, k: int) -> DecompositionReport:
    """Decompose P_k into r-power multiples of (generalized) harmonics and
    verify exactness of the direct sum by rank."""
    if k < 0:
        raise ValueError("negative degree")
    plan, suppressed, notes = _decomposition_plan(signature, k)

    summands = []
    stacked: list[SuperPolynomial] = []
    for kind, degree, rpower in plan:
        polys = _summand_polynomials(signature, kind, degree, rpower)
        summands.append(FischerSummand(kind, degree, rpower, len(polys)))
        stacked.extend(polys)

    space_dim = len(monomial_basis(signature, k))
    total = sum(s.dim for s in summands)
    joint_rank = polynomials_rank(stacked, k)
    verified = joint_rank == total == space_dim
    witness = None
    if not verified:
        witness = (
            f"rank {joint_rank} of stacked components vs sum of dims {total} "
            f"vs dim P_{k} = {space_dim}"
        )
    return DecompositionReport(
        signature=signature,
        k=k,
        summands=tuple(summands),
        suppressed=suppressed,
        total_dim=total,
        space_dim=space_dim,
        verified=verified,
        failure_witness=witness,
        notes=tuple(notes),
    )


def _plans_agree(signature, fermionic_plan, formula_plan, k) -> bool:
    """At m = 0 the index-set formula may list components that vanish; it
    must never miss a nonzero one and never claim a nonzero extra one."""

    def nonzero_components(plan):
        found = set()
        for kind, degree, rpower in plan:
            polys = _summand_polynomials(signature, kind, degree, rpower)
            if polys and polynomials_rank(polys, k) > 0:
                found.add((degree, rpower))  # Ht equals H at m = 0
        return found

    return nonzero_components(fermionic_plan) == nonzero_components(formula_plan)


@dataclass(frozen=True)
class TheoremAReport:
    """Exactness report for the harmonic triple at one degree."""

    signature: SuperSignature
    k: int
    exceptional: bool
    dim_h: int
    dim_ht: int
    dim_socle: int
    dim_mirror: int | None
    quotient_dim: int
    checks: tuple[tuple[str, bool], ...]
    verified: bool


def verify_theorem_A(signature: SuperSignature, k: int) -> TheoremAReport:
    """Regular degrees: Ht_k = H_k and the socle vanishes.  Exceptional
    degrees: the socle is the r-power image of the mirror harmonics, the
    chain socle < H_k < Ht_k is strict, and the three defect dimensions
    agree."""
    M = signature.M
    H = harmonic_space(signature, k)
    Ht = generalized_harmonic_space(signature, k)
    H0 = socle_space(signature, k)
    exceptional = k in exceptional_indices(M)
    checks: list[tuple[str, bool]] = []
    dim_mirror = None
    if not exceptional:
        checks.append(("generalized equals harmonic", Ht == H))
        checks.append(("socle is zero", H0.dim == 0))
    else:
        mirror_degree = 2 - M - k
        mirror_basis = harmonic_basis(signature, mirror_degree)
        dim_mirror = len(mirror_basis)
        rpow = rsquare_power(signature, (2 * k + M - 2) // 2)
        lifted = span_subspace(signature, k, [rpow * h for h in mirror_basis])
        checks.append(("socle is r-power of mirror harmonics", H0 == lifted))
        checks.append(
            (
                "strict chain socle < H < Ht",
                Ht.contains_subspace(H)
                and H.contains_subspace(H0)
                and H0.dim < H.dim < Ht.dim,
            )
        )
        checks.append(
            (
                "defect dimensions agree",
                Ht.dim - H.dim == H0.dim == dim_mirror,
            )
        )
    return TheoremAReport(
        signature=signature,
        k=k,
        exceptional=exceptional,
        dim_h=H.dim,
        dim_ht=Ht.dim,
        dim_socle=H0.dim,
        dim_mirror=dim_mirror,
        quotient_dim=H.dim - H0.dim,
        checks=tuple(checks),
        verified=all(ok for _, ok in checks),
    )
