"""Pauli group on m qubits in symplectic GF(2) form.

An operator is stored as ``i**s * X**x Z**z`` where ``x`` and ``z`` are
m-bit integers.  Qubit 1 is the most significant bit, so that
``format(x, f"0{m}b")`` reads left to right in tensor-factor order and the
same convention indexes computational basis states.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import CapabilityError, DimensionError, PreconditionError, VerificationError

MAX_QUBITS = 5
DEFAULT_MAX_QUBITS = 4


def _parity(v: int) -> int:
    return v.bit_count() & 1


@dataclass(frozen=True, order=True)
class PauliOperator:
    m: int
    x: int
    z: int
    s: int = 0

    def __post_init__(self):
        if self.m < 1:
            raise DimensionError(f"qubit count must be positive, got {self.m}")
        mask = (1 << self.m) - 1
        if self.x & ~mask or self.z & ~mask:
            raise DimensionError(f"x/z bits exceed {self.m} qubits")
        object.__setattr__(self, "s", self.s % 4)

    @classmethod
    def identity(cls, m: int) -> "PauliOperator":
        return cls(m, 0, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> "PauliOperator":
        """Parse ``"XZ"``, ``"-YY"``, ``"iZ"`` style labels (Y = iXZ)."""
        s = 0
        body = label.strip()
        if body.startswith("+"):
            body = body[1:]
        elif body.startswith("-"):
            s, body = 2, body[1:]
        if body.startswith("i"):
            s, body = s + 1, body[1:]
        x = z = 0
        for ch in body:
            x <<= 1
            z <<= 1
            if ch == "X":
                x |= 1
            elif ch == "Z":
                z |= 1
            elif ch == "Y":
                x |= 1
                z |= 1
                s += 1
            elif ch != "I":
                raise ValueError(f"bad Pauli label {label!r}")
        if not body:
            raise ValueError("empty Pauli label")
        return cls(len(body), x, z, s)

    @classmethod
    def from_vector(cls, m: int, vec: int) -> "PauliOperator":
        """Hermitian, positive-label operator for the packed vector ``(x << m) | z``."""
        x, z = vec >> m, vec & ((1 << m) - 1)
        return cls(m, x, z, (x & z).bit_count())

    @property
    def vector(self) -> int:
        return (self.x << self.m) | self.z

    def bitstring(self) -> str:
        return format(self.vector, f"0{2 * self.m}b")

    def label(self) -> str:
        """Inverse of :meth:`from_label`."""
        ys = (self.x & self.z).bit_count()
        phase = (self.s - ys) % 4
        chars = []
        for q in range(self.m - 1, -1, -1):
            xb, zb = (self.x >> q) & 1, (self.z >> q) & 1
            chars.append("IZXY"[2 * xb + zb])
        return ["", "i", "-", "-i"][phase] + "".join(chars)

    def __repr__(self) -> str:
        return f"PauliOperator({self.label()})"

    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        return pauli_product(self, other)


def _check_same(a: PauliOperator, b: PauliOperator) -> None:
    if a.m != b.m:
        raise DimensionError(f"qubit counts differ: {a.m} vs {b.m}")


def pauli_product(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    _check_same(a, b)
    s = a.s + b.s + 2 * (a.z & b.x).bit_count()
    return PauliOperator(a.m, a.x ^ b.x, a.z ^ b.z, s)


def symplectic_form(a: PauliOperator, b: PauliOperator) -> int:
    _check_same(a, b)
    return _parity((a.x & b.z) ^ (b.x & a.z))


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    return symplectic_form(a, b) == 0


def is_hermitian(a: PauliOperator) -> bool:
    return (a.s + (a.x & a.z).bit_count()) % 2 == 0


def vector_form(m: int, u: int, v: int) -> int:
    """Symplectic form on packed ``(x << m) | z`` vectors."""
    mask = (1 << m) - 1
    return _parity(((u >> m) & v & mask) ^ ((v >> m) & u & mask))


# ---------------------------------------------------------------------------
# Maximal commuting sets


def _span(gens: Sequence[int]) -> list[int]:
    out = [0]
    for g in gens:
        out += [w ^ g for w in out]
    return out


@dataclass(frozen=True)
class MaximalCommutingSet:
    """An unsigned Lagrangian subspace with its reduced-echelon generators."""

    m: int
    generators: tuple[PauliOperator, ...]
    key: tuple[int, ...] = field(repr=False, compare=True)

    @classmethod
    def from_vectors(cls, m: int, gens: Sequence[int]) -> "MaximalCommutingSet":
        members = sorted(v for v in _span(gens) if v)
        return cls(m, tuple(PauliOperator.from_vector(m, g) for g in gens), tuple(members))

    @property
    def member_vectors(self) -> tuple[int, ...]:
        return self.key

    @cached_property
    def members(self) -> tuple[PauliOperator, ...]:
        return tuple(PauliOperator.from_vector(self.m, v) for v in self.key)

    def __repr__(self) -> str:
        return "MCS{" + ", ".join(g.label() for g in self.generators) + "}"


def mcs_count(m: int) -> int:
    out = 1
    for i in range(1, m + 1):
        out *= 1 + 2**i
    return out


def _check_range(m: int, long_running: bool) -> None:
    top = MAX_QUBITS if long_running else DEFAULT_MAX_QUBITS
    if not 1 <= m <= top:
        hint = "" if long_running or m > MAX_QUBITS else " (m=5 needs long_running=True)"
        raise CapabilityError(f"m={m} outside supported range 1..{top}{hint}")


def lagrangian_generators(m: int) -> Iterable[tuple[int, ...]]:
    """Yield every Lagrangian subspace of GF(2)^{2m} once, as its RREF rows.

    Rows are built from the lowest pivot upwards.  A row with pivot ``p`` has
    zeros above ``p`` and at every previously chosen pivot; its remaining low
    bits are constrained linearly by isotropy with the rows already chosen,
    so the admissible fillings are enumerated as an affine GF(2) space.
    """
    nbits = 2 * m

    def extend(rows: list[int], pivots: list[int]):
        if len(rows) == m:
            yield tuple(sorted(rows, reverse=True))
            return
        need = m - len(rows)
        lo = pivots[-1] + 1 if pivots else 0
        for p in range(lo, nbits - need + 1):
            free = [j for j in range(p) if j not in pivots]
            for row in _isotropic_fillings(m, 1 << p, free, rows):
                rows.append(row)
                pivots.append(p)
                yield from extend(rows, pivots)
                rows.pop()
                pivots.pop()

    yield from extend([], [])


def _isotropic_fillings(m: int, head: int, free: list[int], rows: list[int]) -> list[int]:
    # constraint bit k of a free position j is <e_j, rows[k]>
    target = 0
    cons = []
    for k, r in enumerate(rows):
        target |= vector_form(m, head, r) << k
    for j in free:
        c = 0
        for k, r in enumerate(rows):
            c |= vector_form(m, 1 << j, r) << k
        cons.append((c, 1 << j))
    # Gaussian elimination on (constraint, assignment) pairs
    pivoted: list[tuple[int, int]] = []
    kernel: list[int] = []
    for c, a in cons:
        for pc, pa in pivoted:
            if c ^ pc < c:
                c ^= pc
                a ^= pa
        if c:
            pivoted.append((c, a))
            pivoted.sort(reverse=True)
        else:
            kernel.append(a)
    particular = 0
    t = target
    for pc, pa in pivoted:
        if t ^ pc < t:
            t ^= pc
            particular ^= pa
    if t:
        return []
    return [head | particular ^ k for k in _span(kernel)]


def enumerate_mcs(m: int, long_running: bool = False) -> list[MaximalCommutingSet]:
    _check_range(m, long_running)
    sets = [MaximalCommutingSet.from_vectors(m, gens) for gens in lagrangian_generators(m)]
    sets.sort(key=lambda s: s.key)
    return sets


# ---------------------------------------------------------------------------
# Magic configurations


@dataclass(frozen=True)
class MagicContext:
    operators: tuple[PauliOperator, ...]
    expected_sign: int

    def __post_init__(self):
        if self.expected_sign not in (1, -1):
            raise ValueError("expected_sign must be +1 or -1")
        ops = self.operators
        for i in range(len(ops)):
            for j in range(i + 1, len(ops)):
                if not commutes(ops[i], ops[j]):
                    raise PreconditionError(f"{ops[i]!r} and {ops[j]!r} do not commute")


def _ops(*labels: str) -> tuple[PauliOperator, ...]:
    return tuple(PauliOperator.from_label(lbl) for lbl in labels)


def mermin_square() -> tuple[tuple[tuple[PauliOperator, ...], ...], list[MagicContext]]:
    """The 3x3 two-qubit square; contexts are the three rows then the three columns."""
    grid = (
        _ops("ZI", "IZ", "ZZ"),
        _ops("IX", "XI", "XX"),
        _ops("ZX", "XZ", "YY"),
    )
    contexts = [MagicContext(row, 1) for row in grid]
    for c in range(3):
        contexts.append(MagicContext(tuple(row[c] for row in grid), -1 if c == 2 else 1))
    return grid, contexts


def mermin_pentagram() -> tuple[tuple[PauliOperator, ...], list[MagicContext]]:
    """The ten three-qubit operators; contexts are the four columns then the row."""
    singles = _ops("ZII", "XII", "IZI", "IXI", "IIZ", "IIX")
    z1, x1, z2, x2, z3, x3 = singles
    row = _ops("ZZZ", "ZXX", "XZX", "XXZ")
    columns = [(z1, z2, z3), (z1, x2, x3), (x1, z2, x3), (x1, x2, z3)]
    contexts = [MagicContext(col + (top,), 1) for col, top in zip(columns, row)]
    contexts.append(MagicContext(row, -1))
    return singles + row, contexts


def context_product(ops: Sequence[PauliOperator]) -> PauliOperator:
    if not ops:
        raise PreconditionError("empty context")
    out = ops[0]
    for op in ops[1:]:
        out = pauli_product(out, op)
    return out


def verify_magic(contexts: Iterable[MagicContext | Sequence[PauliOperator]]) -> list[int]:
    """Return the sign of each context product, which must be +-Identity."""
    signs = []
    for ctx in contexts:
        ops = tuple(ctx.operators if isinstance(ctx, MagicContext) else ctx)
        for op in ops:
            if not is_hermitian(op):
                raise PreconditionError(f"{op!r} is not Hermitian")
        for i in range(len(ops)):
            for j in range(i + 1, len(ops)):
                if not commutes(ops[i], ops[j]):
                    raise PreconditionError(f"{ops[i]!r} and {ops[j]!r} do not commute")
        prod = context_product(ops)
        if prod.x or prod.z or prod.s % 2:
            raise VerificationError(f"context product {prod!r} is not +-Identity")
        signs.append(1 if prod.s == 0 else -1)
    return signs


def rref_vectors(vectors: Iterable[int]) -> list[int]:
    """Reduced row-echelon basis (leading bit highest) of the GF(2) span."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            if v ^ b < v:
                v ^= b
        if v:
            for i, b in enumerate(basis):
                if b ^ v < b:
                    basis[i] = b ^ v
            basis.append(v)
            basis.sort(reverse=True)
    return basis


def mcs_of_context(operators: Sequence[PauliOperator]) -> MaximalCommutingSet:
    """The maximal commuting set spanned by a context of m independent commuting operators."""
    m = operators[0].m
    for i, a in enumerate(operators):
        for b in operators[i + 1:]:
            if not commutes(a, b):
                raise PreconditionError(f"{a!r} and {b!r} do not commute")
    gens = rref_vectors(op.vector for op in operators)
    if len(gens) != m:
        raise PreconditionError(f"context spans rank {len(gens)}, need {m}")
    return MaximalCommutingSet.from_vectors(m, gens)
