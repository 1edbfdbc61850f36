from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from paulibks.errors import CapabilityError, DimensionError, VerificationError
from paulibks.pauli import MaximalCommutingSet, PauliOperator, enumerate_mcs
from paulibks.rays import (
    GaussianInteger,
    Ray,
    RayCatalog,
    all_rays,
    canonicalize,
    context_eigenbasis,
    eigenbasis,
    inner,
    overlap2,
    ray_counts,
    real_rays,
)
from test_pauli import as_matrix

UNITS = [GaussianInteger(1, 0), GaussianInteger(0, 1), GaussianInteger(-1, 0), GaussianInteger(0, -1)]
ALPHABET = [GaussianInteger(0, 0)] + UNITS


def to_numpy(ray: Ray) -> np.ndarray:
    return np.array([complex(a.re, a.im) for a in ray.amplitudes])


def mcs_from_labels(*labels: str) -> MaximalCommutingSet:
    ops = [PauliOperator.from_label(s) for s in labels]
    return MaximalCommutingSet.from_vectors(ops[0].m, [o.vector for o in ops])


@st.composite
def amplitude_vectors(draw):
    m = draw(st.integers(1, 3))
    amps = draw(st.lists(st.sampled_from(ALPHABET), min_size=1 << m, max_size=1 << m))
    if not any(amps):
        amps[draw(st.integers(0, (1 << m) - 1))] = UNITS[0]
    return amps


class TestCanonicalize:
    def test_examples(self):
        amps = [GaussianInteger(0, 0), GaussianInteger(0, 1), GaussianInteger(-1, 0), GaussianInteger(0, 0)]
        assert canonicalize(amps) == (GaussianInteger(0, 0), GaussianInteger(1, 0),
                                      GaussianInteger(0, 1), GaussianInteger(0, 0))

    def test_zero_vector(self):
        with pytest.raises(VerificationError):
            canonicalize([GaussianInteger(0, 0)] * 2)

    def test_bad_magnitude(self):
        with pytest.raises(VerificationError):
            canonicalize([GaussianInteger(1, 0), GaussianInteger(2, 0)])

    def test_uncanonical_ray_rejected(self):
        with pytest.raises(VerificationError):
            Ray(1, (GaussianInteger(0, 1), GaussianInteger(1, 0)))
        with pytest.raises(DimensionError):
            Ray(2, (GaussianInteger(1, 0),))

    @given(amplitude_vectors(), st.sampled_from(UNITS))
    def test_idempotent_and_phase_invariant(self, amps, phase):
        once = canonicalize(amps)
        assert canonicalize(once) == once
        assert canonicalize([a * phase for a in amps]) == once
        assert next(a for a in once if a) == GaussianInteger(1, 0)

    @given(amplitude_vectors())
    def test_overlap_with_self(self, amps):
        r = Ray.from_amplitudes(amps)
        assert overlap2(r, r) == 1
        assert inner(r, r) == GaussianInteger(r.support_size, 0)


class TestEigenbasis:
    def test_x1x2(self):
        r = eigenbasis(mcs_from_labels("XI", "IX"), (1, -1))
        assert [str(a) for a in r.amplitudes] == ["1", "-1", "1", "-1"]

    def test_z_basis(self):
        rays = context_eigenbasis(mcs_from_labels("ZI", "IZ"))
        assert [r.key for r in rays] == [bytes([1, 0, 0, 0]), bytes([0, 1, 0, 0]),
                                         bytes([0, 0, 1, 0]), bytes([0, 0, 0, 1])]

    def test_bad_signs(self):
        with pytest.raises(ValueError):
            eigenbasis(mcs_from_labels("ZI", "IZ"), (1, 0))
        with pytest.raises(ValueError):
            eigenbasis(mcs_from_labels("ZI", "IZ"), (1,))

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_eigenvalue_equations(self, m):
        for mcs in enumerate_mcs(m)[:: max(1, m * 7)]:
            rays = context_eigenbasis(mcs)
            vecs = [to_numpy(r) for r in rays]
            for signs, v in zip(product((1, -1), repeat=m), vecs):
                for s, g in zip(signs, mcs.generators):
                    assert np.allclose(as_matrix(g) @ v, s * v)
            for a, b in combinations(rays, 2):
                assert overlap2(a, b) == 0


class TestOverlap:
    def test_examples(self):
        z0 = Ray.from_codes(1, [1, 0])
        plus = Ray.from_codes(1, [1, 1])
        plus_i = Ray.from_codes(1, [1, 2])
        assert overlap2(z0, plus) == Fraction(1, 2)
        assert overlap2(plus, plus_i) == Fraction(1, 2)
        assert overlap2(Ray.from_codes(1, [1, 3]), plus) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            overlap2(Ray.from_codes(1, [1, 0]), Ray.from_codes(2, [1, 0, 0, 0]))

    @given(amplitude_vectors(), st.data())
    def test_matches_numpy(self, amps, data):
        b = data.draw(st.lists(st.sampled_from(ALPHABET), min_size=len(amps), max_size=len(amps)))
        if not any(b):
            b[0] = UNITS[0]
        ra, rb = Ray.from_amplitudes(amps), Ray.from_amplitudes(b)
        va, vb = to_numpy(ra), to_numpy(rb)
        ref = abs(np.vdot(va, vb)) ** 2 / (np.vdot(va, va).real * np.vdot(vb, vb).real)
        assert float(overlap2(ra, rb)) == pytest.approx(ref, abs=1e-12)
        assert overlap2(ra, rb) == overlap2(rb, ra)


class TestCatalog:
    @pytest.mark.parametrize("m,rays,real", [(1, 6, 4), (2, 60, 24), (3, 1080, 240), (4, 36720, 4320)])
    def test_counts(self, m, rays, real):
        catalog = all_rays(m)
        assert (len(catalog), len(real_rays(catalog))) == (rays, real)

    @pytest.mark.parametrize("m", [1, 2, 3])
    def test_streaming_counts_agree(self, m):
        catalog = all_rays(m)
        assert ray_counts(m) == (len(catalog), len(real_rays(catalog)))

    def test_one_qubit_catalog(self):
        keys = [r.key for r in all_rays(1)]
        assert keys == [bytes([1, 1]), bytes([1, 2]), bytes([1, 3]), bytes([1, 4]), bytes([1, 0]), bytes([0, 1])]

    def test_catalog_sorted_and_unique(self):
        catalog = all_rays(2)
        keys = [r.sort_key() for r in catalog]
        assert keys == sorted(keys) and len(set(keys)) == len(keys)
        assert all(catalog.id_of(r) == i for i, r in enumerate(catalog))

    def test_duplicates_collapse(self):
        r = Ray.from_codes(1, [1, 0])
        assert len(RayCatalog([r, r, Ray.from_codes(1, [0, 1])])) == 2

    def test_mixed_dimensions(self):
        with pytest.raises(DimensionError):
            RayCatalog([Ray.from_codes(1, [1, 0]), Ray.from_codes(2, [1, 0, 0, 0])])

    def test_every_ray_is_uniform_on_support(self):
        for r in all_rays(3):
            assert r.support_size in (1, 2, 4, 8)

    def test_range(self):
        with pytest.raises(CapabilityError):
            all_rays(5)
        with pytest.raises(CapabilityError):
            ray_counts(6, long_running=True)
