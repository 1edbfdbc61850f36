"""Joint eigenstates of maximal commuting sets, in exact Gaussian-integer form."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DimensionError, VerificationError
from .pauli import MaximalCommutingSet, PauliOperator, _check_range, enumerate_mcs, lagrangian_generators


class GaussianInteger(NamedTuple):
    re: int
    im: int

    def __add__(self, other):
        return GaussianInteger(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return GaussianInteger(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return GaussianInteger(self.re * other.re - self.im * other.im,
                               self.re * other.im + self.im * other.re)

    def __neg__(self):
        return GaussianInteger(-self.re, -self.im)

    def conjugate(self) -> "GaussianInteger":
        return GaussianInteger(self.re, -self.im)

    def norm(self) -> int:
        return self.re * self.re + self.im * self.im

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __str__(self) -> str:
        return _ALPHABET_STR.get(self, f"({self.re}{self.im:+d}i)")


ZERO = GaussianInteger(0, 0)
ONE = GaussianInteger(1, 0)
I_UNIT = GaussianInteger(0, 1)
MINUS_ONE = GaussianInteger(-1, 0)
MINUS_I = GaussianInteger(0, -1)

# amplitude code: 0 for zero, 1 + k for i**k
_BY_CODE = (ZERO, ONE, I_UNIT, MINUS_ONE, MINUS_I)
_CODE = {g: c for c, g in enumerate(_BY_CODE)}
_ALPHABET_STR = {ZERO: "0", ONE: "1", I_UNIT: "i", MINUS_ONE: "-1", MINUS_I: "-i"}
# catalog order: earlier support first, then phase 1 < i < -1 < -i
_SORT_RANK = (4, 0, 1, 2, 3)


def canonicalize(amplitudes: Sequence[GaussianInteger]) -> tuple[GaussianInteger, ...]:
    """Divide by the first nonzero amplitude; the result must lie in {0, +-1, +-i}."""
    amps = [GaussianInteger(*a) for a in amplitudes]
    lead = next((a for a in amps if a), None)
    if lead is None:
        raise VerificationError("zero vector is not a ray")
    nrm = lead.norm()
    conj = lead.conjugate()
    out = []
    for a in amps:
        p = a * conj
        if p.re % nrm or p.im % nrm:
            raise VerificationError(f"amplitude {a} not a unit multiple of {lead}")
        q = GaussianInteger(p.re // nrm, p.im // nrm)
        if q not in _CODE:
            raise VerificationError(f"amplitude {q} outside the stabilizer alphabet")
        out.append(_BY_CODE[_CODE[q]])
    return tuple(out)


@dataclass(frozen=True)
class Ray:
    m: int
    amplitudes: tuple[GaussianInteger, ...]
    key: bytes = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.amplitudes) != 1 << self.m:
            raise DimensionError(f"expected {1 << self.m} amplitudes, got {len(self.amplitudes)}")
        try:
            codes = bytes(_CODE[a] for a in self.amplitudes)
        except KeyError:
            raise VerificationError("ray is not in canonical form") from None
        if not any(codes) or codes[next(i for i, c in enumerate(codes) if c)] != 1:
            raise VerificationError("ray is not in canonical form")
        object.__setattr__(self, "key", codes)

    @classmethod
    def from_amplitudes(cls, amplitudes: Sequence) -> "Ray":
        amps = canonicalize(amplitudes)
        m = len(amps).bit_length() - 1
        if 1 << m != len(amps):
            raise DimensionError("amplitude count must be a power of two")
        return cls(m, amps)

    @classmethod
    def from_codes(cls, m: int, codes: Iterable[int]) -> "Ray":
        return cls(m, tuple(_BY_CODE[c] for c in codes))

    @property
    def qubit_count(self) -> int:
        return self.m

    @property
    def is_real(self) -> bool:
        return all(a.im == 0 for a in self.amplitudes)

    @property
    def support_size(self) -> int:
        """Squared norm of the canonical vector."""
        return sum(1 for a in self.amplitudes if a)

    def sort_key(self) -> bytes:
        return bytes(_SORT_RANK[c] for c in self.key)

    def __str__(self) -> str:
        return "(" + ", ".join(str(a) for a in self.amplitudes) + ")"


def canonicalize_ray(ray: Ray) -> Ray:
    return Ray.from_amplitudes(ray.amplitudes)


def inner(a: Ray, b: Ray) -> GaussianInteger:
    """<a|b> of the canonical (unnormalised) vectors."""
    if a.m != b.m:
        raise DimensionError(f"ray dimensions differ: {a.m} vs {b.m}")
    re = im = 0
    for (ur, ui), (vr, vi) in zip(a.amplitudes, b.amplitudes):
        re += ur * vr + ui * vi
        im += ur * vi - ui * vr
    return GaussianInteger(re, im)


def overlap2(a: Ray, b: Ray) -> Fraction:
    return Fraction(inner(a, b).norm(), a.support_size * b.support_size)


# ---------------------------------------------------------------------------
# Projector construction


_COS = np.array([1, 0, -1, 0], dtype=np.int16)
_SIN = np.array([0, 1, 0, -1], dtype=np.int16)
_PARITY = np.array([bin(v).count("1") & 1 for v in range(1 << 5)], dtype=np.int16)


def _apply_pauli(op: PauliOperator, re: np.ndarray, im: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Apply op along the last axis: (op v)[b ^ x] = i**s (-1)**(z.b) v[b]."""
    n = re.shape[-1]
    idx = np.arange(n)
    par = _PARITY[op.z & idx]
    k = (op.s + 2 * par) % 4
    c, sn = _COS[k], _SIN[k]
    pre = c * re - sn * im
    pim = sn * re + c * im
    perm = idx ^ op.x
    return pre[..., perm], pim[..., perm]


def sign_vectors(m: int) -> list[tuple[int, ...]]:
    return list(itertools.product((1, -1), repeat=m))


def _projected_images(mcs: MaximalCommutingSet, signs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """prod_i (I + s_i g_i) applied to every basis vector, for every sign row.

    Returns (re, im) of shape (len(signs), n, n): [sign row, seed, amplitude].
    Entries are bounded by n = 2^m <= 32 in magnitude, so int16 is exact.
    """
    n = 1 << mcs.m
    signs = signs.astype(np.int16)
    re = np.broadcast_to(np.eye(n, dtype=np.int16), (len(signs), n, n)).copy()
    im = np.zeros_like(re)
    for i, g in enumerate(mcs.generators):
        gre, gim = _apply_pauli(g, re, im)
        s = signs[:, i][:, None, None]
        re = re + s * gre
        im = im + s * gim
    return re, im


def _canonical_codes(re: np.ndarray, im: np.ndarray) -> np.ndarray:
    """Canonical amplitude codes for rows of (re, im), shape (rows, n)."""
    nz = (re != 0) | (im != 0)
    first = nz.argmax(axis=1)
    rows = np.arange(len(re))
    lr, li = re[rows, first][:, None], im[rows, first][:, None]
    nrm = lr * lr + li * li
    pr = re * lr + im * li
    pi = im * lr - re * li
    if np.any(pr % nrm) or np.any(pi % nrm):
        raise VerificationError("eigenvector amplitudes differ in magnitude")
    qr, qi = pr // nrm, pi // nrm
    codes = np.zeros(re.shape, dtype=np.uint8)
    codes[(qr == 1) & (qi == 0)] = 1
    codes[(qr == 0) & (qi == 1)] = 2
    codes[(qr == -1) & (qi == 0)] = 3
    codes[(qr == 0) & (qi == -1)] = 4
    if np.any((codes == 0) & ((qr != 0) | (qi != 0))):
        raise VerificationError("amplitude outside {+-1, +-i}")
    return codes


def eigenbasis_codes(mcs: MaximalCommutingSet, signs: Sequence[Sequence[int]] | None = None) -> np.ndarray:
    """Canonical amplitude codes of the joint eigenvectors, one row per sign vector."""
    signs = np.array(signs if signs is not None else sign_vectors(mcs.m), dtype=np.int64).reshape(-1, mcs.m)
    re, im = _projected_images(mcs, signs)
    nz = (re != 0) | (im != 0)
    has = nz.any(axis=2)
    if not has.any(axis=1).all():
        raise VerificationError(f"projector of {mcs!r} annihilates every seed")
    seed = has.argmax(axis=1)
    rows = np.arange(len(signs))
    return _canonical_codes(re[rows, seed], im[rows, seed])


def eigenbasis(mcs: MaximalCommutingSet, signs: Sequence[int]) -> Ray:
    if len(signs) != mcs.m or any(s not in (1, -1) for s in signs):
        raise ValueError(f"need {mcs.m} signs in {{+1, -1}}, got {signs!r}")
    return Ray.from_codes(mcs.m, eigenbasis_codes(mcs, [signs])[0])


def context_eigenbasis(mcs: MaximalCommutingSet) -> list[Ray]:
    """All 2^m joint eigenrays of one maximal commuting set, in sign order."""
    return [Ray.from_codes(mcs.m, row) for row in eigenbasis_codes(mcs)]


# ---------------------------------------------------------------------------
# Catalogs


class RayCatalog:
    """Duplicate-free, canonically ordered list of rays with a key index."""

    def __init__(self, rays: Iterable[Ray]):
        unique: dict[bytes, Ray] = {}
        m = None
        for r in rays:
            if m is None:
                m = r.m
            elif r.m != m:
                raise DimensionError("catalog rays must share the qubit count")
            unique.setdefault(r.key, r)
        self.m = m
        self.rays: tuple[Ray, ...] = tuple(sorted(unique.values(), key=Ray.sort_key))
        self.index: dict[bytes, int] = {r.key: i for i, r in enumerate(self.rays)}
        self._overlaps: dict[tuple[int, int], Fraction] = {}

    def __len__(self) -> int:
        return len(self.rays)

    def __getitem__(self, i: int) -> Ray:
        return self.rays[i]

    def __iter__(self):
        return iter(self.rays)

    def id_of(self, ray: Ray) -> int:
        return self.index[ray.key]

    def __contains__(self, ray: Ray) -> bool:
        return ray.key in self.index

    @property
    def dimension(self) -> int:
        return 1 << self.m

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(re, im) int8 arrays of shape (len, n)."""
        codes = np.frombuffer(b"".join(r.key for r in self.rays), dtype=np.uint8).reshape(len(self), -1)
        re = np.array([0, 1, 0, -1, 0], dtype=np.int8)[codes]
        im = np.array([0, 0, 1, 0, -1], dtype=np.int8)[codes]
        return re, im

    def overlap2(self, i: int, j: int) -> Fraction:
        key = (i, j) if i <= j else (j, i)
        val = self._overlaps.get(key)
        if val is None:
            val = self._overlaps[key] = overlap2(self.rays[i], self.rays[j])
        return val


def all_rays(m: int, long_running: bool = False) -> RayCatalog:
    _check_range(m, long_running)
    rays = []
    for mcs in enumerate_mcs(m, long_running):
        rays.extend(context_eigenbasis(mcs))
    return RayCatalog(rays)


def real_rays(catalog: RayCatalog) -> RayCatalog:
    return RayCatalog(r for r in catalog if r.is_real)


def ray_counts(m: int, long_running: bool = False) -> tuple[int, int]:
    """(#rays, #real rays) without materialising Ray objects; streams over MCS."""
    _check_range(m, long_running)
    n = 1 << m
    signs = np.array(sign_vectors(m), dtype=np.int64)
    chunks = []
    for gens in lagrangian_generators(m):
        mcs = MaximalCommutingSet.from_vectors(m, gens)
        re, im = _projected_images(mcs, signs)
        nz = (re != 0) | (im != 0)
        seed = nz.any(axis=2).argmax(axis=1)
        rows = np.arange(len(signs))
        chunks.append(_canonical_codes(re[rows, seed], im[rows, seed]))
    codes = np.concatenate(chunks)
    packed = np.ascontiguousarray(codes).view(np.dtype((np.void, n)))
    uniq = np.unique(packed.ravel())
    u = np.frombuffer(uniq.tobytes(), dtype=np.uint8).reshape(-1, n)
    real = int(np.count_nonzero(~(np.isin(u, (2, 4)).any(axis=1))))
    return len(u), real
