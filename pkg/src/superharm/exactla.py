"""Exact rational linear algebra over fixed monomial bases.

Matrices are stored sparsely, one dict per row mapping column index to a
nonzero rational.  Elimination runs fraction-free over integers with per-row
content reduction, then normalizes to reduced row echelon form over the
rationals.  RREF is the canonical representation of a subspace: two
subspaces are equal iff their ambients agree and their basis matrices are
identical.

Columns are positions in the canonical monomial basis of one homogeneous
degree, so a Subspace can be tagged with its (signature, degree) ambient and
converted back and forth between rows and polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .superpoly import (
    SuperPolynomial,
    SuperSignature,
    basis_index,
    monomial_basis,
)

_ZERO = Fraction(0)


class RationalMatrix:
    """Immutable sparse matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, data: Sequence[Mapping[int, Fraction]]):
        if rows != len(data):
            raise ValueError("row count does not match data")
        clean = []
        for r in data:
            row = {}
            for j, v in r.items():
                if not 0 <= j < cols:
                    raise ValueError(f"column {j} out of range 0..{cols - 1}")
                v = Fraction(v)
                if v:
                    row[j] = v
            clean.append(row)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", tuple(clean))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("RationalMatrix is immutable")

    @classmethod
    def from_rows(cls, cols: int, rows: Iterable[Mapping[int, Fraction] | Sequence[Fraction]]):
        data = []
        for r in rows:
            if isinstance(r, Mapping):
                data.append(dict(r))
            else:
                data.append({j: Fraction(v) for j, v in enumerate(r) if v})
        return cls(len(data), cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, [{} for _ in range(rows)])

    @classmethod
    def identity(cls, nn: int) -> "RationalMatrix":
        return cls(nn, nn, [{i: Fraction(1)} for i in range(nn)])

    def entry(self, i: int, j: int) -> Fraction:
        return self._data[i].get(j, _ZERO)

    def row_dict(self, i: int) -> dict[int, Fraction]:
        return dict(self._data[i])

    def row_dicts(self) -> tuple[Mapping[int, Fraction], ...]:
        return self._data

    def dense(self) -> list[list[Fraction]]:
        return [
            [self._data[i].get(j, _ZERO) for j in range(self.cols)] for i in range(self.rows)
        ]

    def transpose(self) -> "RationalMatrix":
        data: list[dict[int, Fraction]] = [{} for _ in range(self.cols)]
        for i, row in enumerate(self._data):
            for j, v in row.items():
                data[j][i] = v
        return RationalMatrix(self.cols, self.rows, data)

    def apply(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Matrix times column vector, both sparse."""
        out: dict[int, Fraction] = {}
        for i, row in enumerate(self._data):
            s = _ZERO
            for j, v in row.items():
                c = vec.get(j)
                if c is not None:
                    s += v * c
            if s:
                out[i] = s
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return (
            self.rows == other.rows and self.cols == other.cols and self._data == other._data
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"RationalMatrix({self.rows}x{self.cols}, nnz={sum(len(r) for r in self._data)})"


# -- integer row elimination -------------------------------------------------


def _int_row(row: Mapping[int, Fraction]) -> dict[int, int]:
    den = 1
    for v in row.values():
        den = den * v.denominator // gcd(den, v.denominator)
    out = {j: int(v * den) for j, v in row.items() if v}
    return _reduce_content(out)


def _reduce_content(row: dict[int, int]) -> dict[int, int]:
    if not row:
        return row
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    lead = min(row)
    if row[lead] < 0:
        g = -g
    if g != 1:
        for j in row:
            row[j] //= g
    return row


def _eliminate(row: dict[int, int], pivot: dict[int, int], col: int) -> dict[int, int]:
    """Cross-multiply col out of row using pivot; row is consumed."""
    a = pivot[col]
    b = row[col]
    g = gcd(a, b)
    fa, fb = a // g, b // g
    if fa != 1:
        for j in row:
            row[j] *= fa
    for j, v in pivot.items():
        nv = row.get(j, 0) - fb * v
        if nv:
            row[j] = nv
        else:
            row.pop(j, None)
    return _reduce_content(row)


def _echelon(int_rows: Iterable[dict[int, int]]) -> dict[int, dict[int, int]]:
    """Forward elimination; returns a map from pivot column to pivot row."""
    pivots: dict[int, dict[int, int]] = {}
    for row in int_rows:
        row = _reduce_content(dict(row))
        while row:
            lead = min(row)
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = row
                break
            row = _eliminate(row, piv, lead)
    return pivots


def _rref_fraction_rows(rows: Iterable[Mapping[int, Fraction]]) -> list[dict[int, Fraction]]:
    """Canonical RREF rows (pivot 1, pivots cleared above), zero rows dropped."""
    pivots = _echelon(_int_row(r) for r in rows)
    leads = sorted(pivots)
    for pos in range(len(leads) - 1, -1, -1):
        lead = leads[pos]
        piv = pivots[lead]
        for upper in leads[:pos]:
            row = pivots[upper]
            if lead in row:
                pivots[upper] = _eliminate(row, piv, lead)
    out = []
    for lead in leads:
        row = pivots[lead]
        denom = Fraction(row[lead])
        out.append({j: v / denom for j, v in row.items()})
    return out


def rref(A: RationalMatrix) -> RationalMatrix:
    """Reduced row echelon form with zero rows dropped."""
    rows = _rref_fraction_rows(A.row_dicts())
    return RationalMatrix(len(rows), A.cols, rows)


def rank(A: RationalMatrix) -> int:
    return len(_echelon(_int_row(r) for r in A.row_dicts()))


class Subspace:
    """Subspace of a based vector space, held as a canonical RREF matrix.

    ``ambient`` is the (signature, degree) pair naming the monomial basis the
    coordinates refer to, or None for a bare coordinate space.
    """

    __slots__ = ("ambient", "basis_matrix")

    def __init__(
        self,
        basis_matrix: RationalMatrix,
        ambient: tuple[SuperSignature, int] | None = None,
    ):
        object.__setattr__(self, "basis_matrix", basis_matrix)
        object.__setattr__(self, "ambient", ambient)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_rows(
        cls,
        cols: int,
        rows: Iterable[Mapping[int, Fraction]],
        ambient: tuple[SuperSignature, int] | None = None,
    ) -> "Subspace":
        reduced = _rref_fraction_rows(rows)
        return cls(RationalMatrix(len(reduced), cols, reduced), ambient)

    @classmethod
    def zero(cls, cols: int, ambient=None) -> "Subspace":
        return cls(RationalMatrix(0, cols, []), ambient)

    @classmethod
    def full(cls, cols: int, ambient=None) -> "Subspace":
        return cls(RationalMatrix.identity(cols), ambient)

    @property
    def dim(self) -> int:
        return self.basis_matrix.rows

    @property
    def ambient_dim(self) -> int:
        return self.basis_matrix.cols

    def _check_compatible(self, other: "Subspace") -> None:
        if self.ambient != other.ambient or self.ambient_dim != other.ambient_dim:
            raise ValueError("subspaces live in different ambients")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient == other.ambient
            and self.basis_matrix == other.basis_matrix
        )

    __hash__ = None  # type: ignore[assignment]

    def reduce(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Remainder of vec after subtracting its projection along basis rows."""
        v = {j: Fraction(c) for j, c in vec.items() if c}
        for row in self.basis_matrix.row_dicts():
            lead = min(row)
            c = v.get(lead)
            if not c:
                continue
            for j, w in row.items():
                nv = v.get(j, _ZERO) - c * w
                if nv:
                    v[j] = nv
                else:
                    v.pop(j, None)
        return v

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains(r) for r in other.basis_matrix.row_dicts())

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        stacked = list(self.basis_matrix.row_dicts()) + list(other.basis_matrix.row_dicts())
        return Subspace.from_rows(self.ambient_dim, stacked, self.ambient)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: [U|U] and [V|0] rows; echelon rows with zero left block
        carry an intersection basis in the right block."""
        self._check_compatible(other)
        c = self.ambient_dim
        doubled: list[dict[int, int]] = []
        for r in self.basis_matrix.row_dicts():
            ir = _int_row(r)
            doubled.append({**ir, **{j + c: v for j, v in ir.items()}})
        for r in other.basis_matrix.row_dicts():
            doubled.append(_int_row(r))
        pivots = _echelon(doubled)
        inter_rows = []
        for lead, row in pivots.items():
            if lead >= c:
                inter_rows.append({j - c: Fraction(v) for j, v in row.items()})
        return Subspace.from_rows(c, inter_rows, self.ambient)

    def __repr__(self) -> str:
        tag = "" if self.ambient is None else f", ambient={self.ambient[0]}@{self.ambient[1]}"
        return f"Subspace(dim={self.dim}, of={self.ambient_dim}{tag})"


def kernel(A: RationalMatrix, ambient: tuple[SuperSignature, int] | None = None) -> Subspace:
    """Null space of A, canonical basis."""
    reduced = _rref_fraction_rows(A.row_dicts())
    pivot_cols = [min(r) for r in reduced]
    pivot_set = set(pivot_cols)
    free_cols = [j for j in range(A.cols) if j not in pivot_set]
    rows = []
    for f in free_cols:
        vec = {f: Fraction(1)}
        for pc, r in zip(pivot_cols, reduced):
            c = r.get(f)
            if c:
                vec[pc] = -c
        rows.append(vec)
    return Subspace.from_rows(A.cols, rows, ambient)


def image(A: RationalMatrix, ambient: tuple[SuperSignature, int] | None = None) -> Subspace:
    """Column space of A, canonical basis."""
    return Subspace.from_rows(A.rows, A.transpose().row_dicts(), ambient)


# -- polynomial coordinates ---------------------------------------------------


def polynomial_vector(p: SuperPolynomial, k: int) -> dict[int, Fraction]:
    """Coordinates of a homogeneous polynomial in the canonical degree-k basis."""
    if not p.is_homogeneous(k):
        raise ValueError(f"polynomial is not homogeneous of degree {k}")
    idx = basis_index(p.signature, k)
    return {idx[mono]: c for mono, c in p.terms.items()}


def vector_polynomial(
    signature: SuperSignature, k: int, vec: Mapping[int, Fraction]
) -> SuperPolynomial:
    basis = monomial_basis(signature, k)
    return SuperPolynomial(signature, {basis[j]: c for j, c in vec.items() if c})


def span_subspace(
    signature: SuperSignature, k: int, polys: Iterable[SuperPolynomial]
) -> Subspace:
    cols = len(monomial_basis(signature, k))
    rows = [polynomial_vector(p, k) for p in polys if not p.is_zero()]
    return Subspace.from_rows(cols, rows, (signature, k))


def subspace_polynomials(space: Subspace) -> tuple[SuperPolynomial, ...]:
    """Basis rows of an ambient-tagged subspace, as polynomials."""
    if space.ambient is None:
        raise ValueError("subspace carries no monomial ambient")
    sig, k = space.ambient
    return tuple(
        vector_polynomial(sig, k, row) for row in space.basis_matrix.row_dicts()
    )


def operator_matrix(op, k: int) -> RationalMatrix:
    """Matrix of a degree-homogeneous operator on the degree-k basis.

    Columns follow the source basis at degree k, rows the target basis at
    degree k + op.degree_shift.
    """
    source = monomial_basis(op.signature, k)
    target_sig = op.target_signature
    tk = k + op.degree_shift
    tidx = basis_index(target_sig, tk)
    data: list[dict[int, Fraction]] = [{} for _ in tidx]
    src_sig = op.signature
    for j, mono in enumerate(source):
        q = op(SuperPolynomial(src_sig, {mono: Fraction(1)}, _clean=True))
        for tm, c in q.terms.items():
            data[tidx[tm]][j] = c
    return RationalMatrix(len(data), len(source), data)


def polynomials_rank(polys: Iterable[SuperPolynomial], k: int) -> int:
    """Rank of the span of homogeneous degree-k polynomials."""
    rows = []
    cols = 0
    for p in polys:
        if p.is_zero():
            continue
        cols = len(monomial_basis(p.signature, k))
        rows.append(_int_row(polynomial_vector(p, k)))
    if not rows:
        return 0
    return len(_echelon(rows))
