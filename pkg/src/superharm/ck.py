"""Cauchy-Kovalevskaya extension along the last bosonic variable.

A homogeneous Q of degree k in signature (m|2n) is determined by the triple

    boundary   = Q restricted to x_m = 0            (degree k,   lower ring)
    normal     = d/dx_m Q restricted to x_m = 0     (degree k-1, lower ring)
    laplacian  = lap Q                              (degree k-2, full ring)

and ck_extend reconstructs Q from the triple in closed form, using the
series xi(ell, -) that solves lap F = x_m^(ell-2)/(ell-2)! * w with vanishing
boundary data.  The boundary and normal parts ride on xi(0, -) and xi(1, -),
which are annihilated by lap; the prescribed Laplacian enters through its
x_m-slices.  The mutually inverse pair (ck_data, ck_extend) realizes the
dimension count dim P_k = dim P'_k + dim P'_{k-1} + dim P_{k-2} with P' one
bosonic variable down; in particular harmonics correspond to triples with
zero laplacian part.

ck_extend_recursive rebuilds Q by the two-step coefficient recursion
instead; it exists so the closed form can be checked against an independent
construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .operators import laplacian, xi
from .superpoly import (
    SuperPolynomial,
    SuperSignature,
    d_bosonic,
    embed,
    restrict_hyperplane,
    xm_coefficients,
)


@dataclass(frozen=True)
class CKData:
    """Restriction data of a degree-k polynomial: value and normal
    derivative on the hyperplane x_m = 0 plus the full Laplace image."""

    degree: int
    boundary: SuperPolynomial
    normal: SuperPolynomial
    laplacian: SuperPolynomial

    def __post_init__(self):
        k = self.degree
        if k < 0:
            raise ValueError("negative degree")
        full = self.laplacian.signature
        if full.m == 0:
            raise ValueError("extension needs at least one bosonic variable")
        lower = full.restricted()
        if self.boundary.signature != lower or self.normal.signature != lower:
            raise ValueError(
                f"boundary data must live in {lower}, got "
                f"{self.boundary.signature} and {self.normal.signature}"
            )
        for part, deg, name in (
            (self.boundary, k, "boundary"),
            (self.normal, k - 1, "normal"),
            (self.laplacian, k - 2, "laplacian"),
        ):
            if not part.is_homogeneous(deg):
                raise ValueError(f"{name} part is not homogeneous of degree {deg}")

    @property
    def signature(self) -> SuperSignature:
        return self.laplacian.signature

    @property
    def lower_signature(self) -> SuperSignature:
        return self.boundary.signature

    @classmethod
    def from_parts(
        cls,
        signature: SuperSignature,
        degree: int,
        boundary: SuperPolynomial | None = None,
        normal: SuperPolynomial | None = None,
        laplacian: SuperPolynomial | None = None,
    ) -> "CKData":
        """Build a triple in full signature `signature`, filling omitted
        parts with zero."""
        lower = signature.restricted()
        return cls(
            degree,
            boundary if boundary is not None else SuperPolynomial.zero(lower),
            normal if normal is not None else SuperPolynomial.zero(lower),
            laplacian if laplacian is not None else SuperPolynomial.zero(signature),
        )


def ck_data(p: SuperPolynomial, k: int | None = None) -> CKData:
    """Restriction data of a homogeneous polynomial."""
    if k is None:
        k = p.degree()
        if k is None:
            raise ValueError("degree of the zero polynomial must be given explicitly")
    if not p.is_homogeneous(k):
        raise ValueError(f"polynomial is not homogeneous of degree {k}")
    m = p.signature.m
    if m == 0:
        raise ValueError("extension needs at least one bosonic variable")
    return CKData(
        k,
        restrict_hyperplane(p),
        restrict_hyperplane(d_bosonic(p, m)),
        laplacian(p),
    )


def ck_extend(data: CKData) -> SuperPolynomial:
    """Closed-form extension: xi(0) and xi(1) carry the boundary data, the
    shifted series xi(j+2) turn each x_m-slice of the prescribed Laplacian
    into a particular solution."""
    out = xi(0, data.boundary) + xi(1, data.normal)
    if data.degree >= 2:
        for j, w in enumerate(xm_coefficients(data.laplacian, data.degree - 2)):
            out = out + xi(j + 2, w)
    return out


def ck_extend_recursive(data: CKData) -> SuperPolynomial:
    """Rebuild the polynomial coefficient by coefficient: with
    Q = sum_j x_m^j/j! c_j, the Laplacian splits as lap' + d_m^2, forcing
    c_{j+2} = w_j - lap' c_j from c_0, c_1 and the slices w_j."""
    k = data.degree
    sig = data.signature
    coeffs = [SuperPolynomial.zero(data.lower_signature) for _ in range(k + 1)]
    coeffs[0] = data.boundary
    if k >= 1:
        coeffs[1] = data.normal
    slices = xm_coefficients(data.laplacian, k - 2) if k >= 2 else ()
    for j in range(k - 1):
        coeffs[j + 2] = slices[j] - laplacian(coeffs[j])
    xm = SuperPolynomial.x(sig, sig.m)
    out = SuperPolynomial.zero(sig)
    for j, c in enumerate(coeffs):
        out = out + embed(c) * Fraction(1, factorial(j)) * xm**j
    return out
