"""Barnes-Wall side: kissing numbers, real Clifford group orders, small BW lattices.

Scalings are fixed per lattice: D4 and E8 have minimal norm 2 (E8 unimodular),
Lambda16 has minimal norm 4 and Gram determinant 256.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
from sympy import Matrix, Rational, ZZ
from sympy.polys.matrices import DomainMatrix

from .errors import CapabilityError, DimensionError, PreconditionError


def kissing_number(m: int) -> int:
    """k(1) = 4, k(m) = (2^m + 2) k(m-1): minimal-vector count of BW_{2^m}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    k = 4
    for j in range(2, m + 1):
        k *= 2**j + 2
    return k


def clifford_order(m: int) -> int:
    """Order 2^(m^2+m+1) (2^m - 1) prod_{j<m} (4^j - 1) of the real Clifford group."""
    if m < 1:
        raise ValueError("m must be >= 1")
    out = 2 ** (m * m + m + 1) * (2**m - 1)
    for j in range(1, m):
        out *= 4**j - 1
    return out


def _frac_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(tuple(Fraction(x) for x in r) for r in rows)


def _to_sympy(rows) -> Matrix:
    return Matrix([[Rational(x.numerator, x.denominator) for x in r] for r in rows])


@dataclass(frozen=True)
class LatticeBasis:
    name: str
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise DimensionError("generator matrix must be square")
        if self.matrix().det() == 0:
            raise PreconditionError("generator rows are linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def matrix(self) -> Matrix:
        return _to_sympy(self.rows)

    def gram(self) -> Matrix:
        M = self.matrix()
        return M * M.T

    def gram_determinant(self):
        return self.gram().det()


@dataclass(frozen=True)
class OrthogonalTransform:
    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        B = _to_sympy(self.rows)
        if B.shape[0] != B.shape[1] or B * B.T != Matrix.eye(B.shape[0]):
            raise PreconditionError("transform is not orthogonal")

    @classmethod
    def from_rows(cls, rows) -> "OrthogonalTransform":
        return cls(_frac_matrix(rows))

    @classmethod
    def permutation(cls, perm: Sequence[int], signs: Sequence[int] | None = None) -> "OrthogonalTransform":
        n = len(perm)
        signs = signs or [1] * n
        rows = [[0] * n for _ in range(n)]
        for i, p in enumerate(perm):
            rows[i][p] = signs[i]
        return cls.from_rows(rows)

    def matrix(self) -> Matrix:
        return _to_sympy(self.rows)

    def __matmul__(self, other: "OrthogonalTransform") -> "OrthogonalTransform":
        P = self.matrix() * other.matrix()
        return OrthogonalTransform(_frac_matrix([[Fraction(int(x.p), int(x.q)) for x in P.row(i)] for i in range(P.rows)]))


def _integer_row_basis(rows: list[list[int]]) -> list[list[int]]:
    """Echelon basis of the Z-span of integer rows (Euclidean elimination)."""
    rows = [r[:] for r in rows if any(r)]
    n = len(rows[0])
    basis = []
    for col in range(n):
        active = [r for r in rows if r[col]]
        rest = [r for r in rows if not r[col]]
        while len(active) > 1:
            active.sort(key=lambda r: abs(r[col]))
            piv = active[0]
            nxt = [piv]
            for r in active[1:]:
                q = r[col] // piv[col]
                red = [a - q * b for a, b in zip(r, piv)]
                (nxt if red[col] else rest).append(red)
            active = nxt
        if active:
            basis.append(active[0])
        rows = [r for r in rest if any(r)]
    return basis


def _reed_muller_1(r: int) -> list[list[int]]:
    """Generator rows of the first-order Reed-Muller code of length 2^r."""
    n = 1 << r
    gens = [[1] * n]
    for k in range(r):
        gens.append([(i >> (r - 1 - k)) & 1 for i in range(n)])
    return gens


def _lambda16_integer_rows() -> list[list[int]]:
    """Basis of {v in Z^16 : v mod 2 in RM(1,4), sum(v) = 0 mod 4} (minimal norm 8)."""
    n = 16
    span = []
    for g in _reed_muller_1(4):
        v = g[:]
        if sum(v) % 4:
            v[v.index(1)] = -1
        span.append(v)
    for i in range(n):
        for j in range(i + 1, n):
            e = [0] * n
            e[i], e[j] = 2, 2
            span.append(e)
        e = [0] * n
        e[i] = 4
        span.append(e)
    return _integer_row_basis(span)


def _lll(rows: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    den = math.lcm(*(x.denominator for r in rows for x in r))
    ints = [[int(x * den) for x in r] for r in rows]
    red = DomainMatrix(ints, (len(ints), len(ints[0])), ZZ).lll().to_Matrix()
    return [[Fraction(int(x), den) for x in red.row(i)] for i in range(red.rows)]


def bw_generator(n: int) -> LatticeBasis:
    if n == 4:
        rows = [[-1, -1, 0, 0], [1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1]]
        return LatticeBasis("D4", _frac_matrix(rows))
    if n == 8:
        h = Fraction(1, 2)
        rows = [[2, 0, 0, 0, 0, 0, 0, 0]]
        for i in range(6):
            r = [0] * 8
            r[i], r[i + 1] = -1, 1
            rows.append(r)
        rows.append([h] * 8)
        return LatticeBasis("E8", _frac_matrix(rows))
    if n == 16:
        # (1/sqrt2) * integer lattice, rotated pairwise by (1/sqrt2)[[1,1],[1,-1]]
        # so that all coordinates stay rational
        out = []
        for r in _lambda16_integer_rows():
            row = []
            for k in range(0, 16, 2):
                a, b = r[k], r[k + 1]
                row += [Fraction(a + b, 2), Fraction(a - b, 2)]
            out.append(row)
        return LatticeBasis("Lambda16", tuple(tuple(r) for r in _lll(out)))
    raise CapabilityError(f"no Barnes-Wall generator for n={n}; supported: 4, 8, 16")


def minimal_vectors(basis: LatticeBasis) -> tuple[Fraction, int]:
    """(minimal nonzero norm, number of vectors of that norm), by exhaustive
    Fincke-Pohst enumeration over an LLL-reduced basis.

    Floating point only prunes (with slack); every candidate norm is exact.
    """
    n = basis.dimension
    if n > 16:
        raise CapabilityError("minimal-vector enumeration is limited to n <= 16")
    rows = _lll(basis.rows)
    den = math.lcm(*(x.denominator for r in rows for x in r)) ** 2
    gram = [[int(sum(a * b for a, b in zip(ri, rj)) * den) for rj in rows] for ri in rows]
    bound = min(gram[i][i] for i in range(n))
    R = np.linalg.cholesky(np.array(gram, dtype=float)).T  # gram = R^T R
    diag = np.diag(R) ** 2
    mu = R / np.diag(R)[:, None]
    slack = 1e-7 * max(1, bound)

    found: dict[int, int] = {}
    x = [0] * n

    def exact_norm() -> int:
        return sum(gram[i][j] * x[i] * x[j] for i in range(n) for j in range(n))

    def rec(i: int, budget: float) -> None:
        c = -sum(mu[i, j] * x[j] for j in range(i + 1, n))
        r = math.sqrt(max(budget, 0.0) / diag[i])
        lo, hi = math.ceil(c - r - 1e-9), math.floor(c + r + 1e-9)
        for xi in range(lo, hi + 1):
            x[i] = xi
            rem = budget - diag[i] * (xi - c) ** 2
            if rem < -slack:
                continue
            if i == 0:
                if any(x):
                    q = exact_norm()
                    if q <= bound:
                        found[q] = found.get(q, 0) + 1
            else:
                rec(i - 1, rem)
        x[i] = 0

    rec(n - 1, bound + slack)
    min_norm = min(found)
    return Fraction(min_norm, den), found[min_norm]


def is_lattice_automorphism(basis: LatticeBasis, transform: OrthogonalTransform) -> bool:
    """U = M B M^-1 must be an integer matrix of determinant +-1."""
    M = basis.matrix()
    B = transform.matrix()
    if B.shape != M.shape:
        raise DimensionError("transform and lattice dimensions differ")
    U = M * B * M.inv()
    if any(not x.is_integer for x in U):
        return False
    return abs(U.det()) == 1


def format_matrix(rows) -> str:
    """Plain-text matrix: one row per line, entries as p/q."""
    def fmt(x):
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return "\n".join(" ".join(fmt(v) for v in r) for r in rows) + "\n"
