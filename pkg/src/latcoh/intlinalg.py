"""Exact integer matrix algebra.

Hermite and Smith normal forms with transformation matrices, integer
kernels, solvability of linear systems over Z with infeasibility
certificates, quotient invariant factors, and sublattice membership.
All arithmetic is exact; no floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Optional, Sequence

from . import _matops


def _freeze(rows) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major, arbitrary precision."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative dimensions")
        if len(self.entries) != self.rows:
            raise ValueError("row count mismatch")
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    # -- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        frozen = _freeze(rows)
        if cols is None:
            if not frozen:
                raise ValueError("cols required for a matrix with no rows")
            cols = len(frozen[0])
        return cls(len(frozen), cols, frozen)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple(tuple(0 for _ in range(cols)) for _ in range(rows)))

    # -- basic algebra ------------------------------------------------

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, tuple(zip(*self.entries)) if self.entries else tuple(() for _ in range(self.cols)))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        bt = list(zip(*other.entries)) if other.entries else [()] * other.cols
        out = tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt)
                    for row in self.entries)
        return IntMatrix(self.rows, other.cols, out)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in sum")
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(x + y for x, y in zip(r, s))
                               for r, s in zip(self.entries, other.entries)))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(-x for x in r) for r in self.entries))

    def __rmul__(self, k: int) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols,
                         tuple(tuple(k * x for x in r) for r in self.entries))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product (column-vector convention)."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * v for a, v in zip(row, vec)) for row in self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def is_zero(self) -> bool:
        return all(not any(r) for r in self.entries)

    def max_abs(self) -> int:
        return max((abs(v) for row in self.entries for v in row), default=0)

    def det(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = self.to_lists()
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.rows == self.cols and abs(self.det()) == 1


@dataclass(frozen=True)
class FinAbInvariants:
    """Isomorphism type Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ..."""

    factors: tuple[int, ...]
    free_rank: int = 0

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        for d in self.factors:
            if d <= 1:
                raise ValueError("invariant factors must exceed 1")
        for a, b in zip(self.factors, self.factors[1:]):
            if b % a:
                raise ValueError("broken divisibility chain")

    @property
    def is_trivial(self) -> bool:
        return not self.factors and self.free_rank == 0

    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        return prod(self.factors, start=1)

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.factors] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "1"


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    coeffs: Optional[tuple[int, ...]]

    def __bool__(self) -> bool:
        return self.member


@dataclass(frozen=True)
class InfeasibilityCertificate:
    """Witness that A x = b has no integer solution.

    `functional` is an integer row vector w and `modulus` m >= 0 with
    w A == 0 (mod m) entrywise while w b != 0 (mod m); m == 0 means exact
    equality w A == 0 with w b != 0.  Either way no integer x can satisfy
    A x = b.
    """

    functional: tuple[int, ...]
    modulus: int

    def validate(self, A: "IntMatrix", b: Sequence[int]) -> bool:
        w = self.functional
        if len(w) != A.rows or len(b) != A.rows:
            return False
        wa = [sum(w[i] * A.entries[i][j] for i in range(A.rows)) for j in range(A.cols)]
        wb = sum(x * y for x, y in zip(w, b))
        if self.modulus == 0:
            return all(v == 0 for v in wa) and wb != 0
        return all(v % self.modulus == 0 for v in wa) and wb % self.modulus != 0


def _as_matrix(A) -> IntMatrix:
    if isinstance(A, IntMatrix):
        return A
    return IntMatrix.from_rows(A)


def hnf(A) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form: returns (H, U) with U @ A == H, U unimodular."""
    A = _as_matrix(A)
    h, u = _matops.hnf_rows(A.to_lists(), A.cols)
    return IntMatrix.from_rows(h, A.cols), IntMatrix.from_rows(u, A.rows)


def snf(A) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (S, U, V) with U @ A @ V == S."""
    A = _as_matrix(A)
    s, u, v = _matops.snf_rows(A.to_lists(), A.cols, want_transforms=True)
    return (IntMatrix.from_rows(s, A.cols),
            IntMatrix.from_rows(u, A.rows),
            IntMatrix.from_rows(v, A.cols))


def invariant_factor_diagonal(A) -> list[int]:
    """Nonzero Smith diagonal of A (no transforms computed)."""
    A = _as_matrix(A)
    return _matops.snf_diagonal(A.to_lists(), A.cols)


def kernel_basis(A) -> IntMatrix:
    """Rows spanning the left kernel {x : x A = 0}; saturated by construction."""
    A = _as_matrix(A)
    rows = _matops.kernel_rows(A.to_lists(), A.cols)
    return IntMatrix.from_rows(rows, A.rows)


def solve_integer(A, b) -> Optional[tuple[int, ...]]:
    """Some exact integer solution of A x = b, or None when there is none."""
    A = _as_matrix(A)
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    x = _matops.solve_columns(A.to_lists(), A.cols, list(b))
    return tuple(x) if x is not None else None


def solve_integer_with_certificate(A, b):
    """Solve A x = b; on failure also return an InfeasibilityCertificate.

    Returns (x, None) when solvable and (None, certificate) otherwise.
    The certificate comes from the Smith decomposition: a divisibility
    failure in U b against the diagonal yields a contradicting functional.
    """
    A = _as_matrix(A)
    if len(b) != A.rows:
        raise ValueError("right-hand side length mismatch")
    S, U, V = snf(A)
    ub = U.apply(b)
    n = A.cols
    y = [0] * n
    for i in range(A.rows):
        d = S.entries[i][i] if i < n else 0
        if d:
            if ub[i] % d:
                return None, InfeasibilityCertificate(U.row(i), d)
            y[i] = ub[i] // d
        elif ub[i]:
            return None, InfeasibilityCertificate(U.row(i), 0)
    x = V.apply(y)
    return tuple(x), None


def lattice_membership(sub_basis, v) -> MembershipResult:
    """Is v in the Z-span of the rows of sub_basis?  Coefficients when so."""
    B = _as_matrix(sub_basis)
    if len(v) != B.cols:
        raise ValueError("vector length mismatch")
    solver = _matops.RowSolver(B.to_lists(), B.cols)
    coeffs = solver.contains(list(v))
    if coeffs is None:
        return MembershipResult(False, None)
    return MembershipResult(True, tuple(coeffs))


def quotient_invariants(ambient_rank: int, sub_basis) -> FinAbInvariants:
    """Invariant factors and free rank of Z^ambient_rank / rowspan(sub_basis)."""
    B = _as_matrix(sub_basis)
    if B.cols != ambient_rank:
        raise ValueError("sub-basis rows must live in Z^ambient_rank")
    diag = _matops.snf_diagonal(B.to_lists(), ambient_rank)
    factors = tuple(d for d in diag if d > 1)
    return FinAbInvariants(factors=factors, free_rank=ambient_rank - len(diag))


class RowLatticeSolver:
    """Reusable canonical reduction against a fixed row lattice.

    Wraps a one-time Hermite factorization; `reduce` returns the canonical
    residue of a vector modulo the row span together with expressing
    coefficients, `contains` the coefficients alone.
    """

    def __init__(self, basis, cols: Optional[int] = None):
        B = basis if isinstance(basis, IntMatrix) else IntMatrix.from_rows(basis, cols)
        self.basis = B
        self._solver = _matops.RowSolver(B.to_lists(), B.cols)

    @property
    def rank(self) -> int:
        return self._solver.rank

    def reduce(self, v) -> tuple[tuple[int, ...], tuple[int, ...]]:
        res, coeffs = self._solver.reduce(list(v))
        return tuple(res), tuple(coeffs)

    def residue(self, v) -> tuple[int, ...]:
        return tuple(self._solver.residue(list(v)))

    def contains(self, v) -> Optional[tuple[int, ...]]:
        coeffs = self._solver.contains(list(v))
        return tuple(coeffs) if coeffs is not None else None

    def coeffs_many(self, vectors) -> list[list[int]]:
        return self._solver.coeffs_many([list(v) for v in vectors])


def saturation_is_full(basis) -> bool:
    """True when the row lattice is saturated (a direct summand of Z^n)."""
    B = _as_matrix(basis)
    diag = _matops.snf_diagonal(B.to_lists(), B.cols)
    return all(d == 1 for d in diag)
