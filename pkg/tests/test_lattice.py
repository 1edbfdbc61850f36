from fractions import Fraction
from itertools import combinations, product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paulibks import expected
from paulibks.errors import CapabilityError, DimensionError, PreconditionError
from paulibks.lattice import (
    LatticeBasis,
    OrthogonalTransform,
    bw_generator,
    clifford_order,
    format_matrix,
    is_lattice_automorphism,
    kissing_number,
    minimal_vectors,
)


def coordinate_minimum(basis: LatticeBasis) -> tuple[Fraction, int]:
    """Shortest lattice vectors, found among all points of {0, +-1/2, +-1}^n.

    Complete for generators with entries in Z/2 and minimal norm at most 2.
    """
    M = np.array([[float(x) for x in r] for r in basis.rows])
    pts = np.array(list(product((-1, -0.5, 0, 0.5, 1), repeat=len(M))))
    pts = pts[np.any(pts != 0, axis=1)]
    coeffs = pts @ np.linalg.inv(M)
    inside = pts[np.all(np.isclose(coeffs, np.round(coeffs)), axis=1)]
    norms = np.einsum("ij,ij->i", inside, inside)
    low = norms.min()
    assert low <= 2
    return Fraction(round(low * 4), 4), int(np.count_nonzero(np.isclose(norms, low)))


def lambda16_count() -> int:
    """Norm-8 vectors of {v in Z^16 : v mod 2 in RM(1,4), sum v = 0 mod 4}, counted by pattern."""
    words = set()
    rows = [[1] * 16] + [[(i >> (3 - k)) & 1 for i in range(16)] for k in range(4)]
    for pick in product((0, 1), repeat=5):
        words.add(tuple(sum(p * r[i] for p, r in zip(pick, rows)) % 2 for i in range(16)))
    count = 0
    for w in words:
        if sum(w) == 8:  # all odd entries are +-1
            count += sum(1 for signs in product((1, -1), repeat=8) if sum(signs) % 4 == 0)
    # even vectors of norm 8: two entries +-2
    count += sum(1 for _ in combinations(range(16), 2)) * sum(1 for a, b in product((2, -2), repeat=2) if (a + b) % 4 == 0)
    return count


class TestFormulas:
    def test_kissing(self):
        assert [kissing_number(m) for m in range(1, 6)] == [4, 24, 240, 4320, 146880]

    def test_kissing_equals_real_rays(self):
        assert [kissing_number(m) for m in range(1, 6)] == [expected.TABLE1[m][3] for m in range(1, 6)]

    def test_clifford(self):
        assert [clifford_order(m) for m in range(1, 5)] == [8, 1152, 2580480, 89181388800]

    def test_clifford_m5_disagrees_with_printed_value(self):
        assert clifford_order(5) == 48126558103142400
        assert clifford_order(5) / expected.TABLE1_M5_AUT_APPROX == pytest.approx(10.03, abs=0.01)

    def test_domain(self):
        with pytest.raises(ValueError):
            kissing_number(0)
        with pytest.raises(ValueError):
            clifford_order(0)


class TestGenerators:
    @pytest.mark.parametrize("n", [4, 8, 16])
    def test_gram_determinant(self, n):
        basis = bw_generator(n)
        assert basis.gram_determinant() == expected.LATTICE_GRAM_DET[n]
        M = np.array([[float(x) for x in r] for r in basis.rows])
        assert np.linalg.det(M @ M.T) == pytest.approx(expected.LATTICE_GRAM_DET[n])

    @pytest.mark.parametrize("n", [4, 8])
    def test_small_minimal_vectors_against_coordinates(self, n):
        name, norm, count = expected.LATTICE_MIN_VECTORS[n]
        assert coordinate_minimum(bw_generator(n)) == (norm, count)
        assert minimal_vectors(bw_generator(n)) == (norm, count)

    def test_lambda16(self):
        assert lambda16_count() == 4320
        assert minimal_vectors(bw_generator(16)) == (Fraction(4), 4320)

    def test_lambda16_is_the_rotated_integer_model(self):
        rows = bw_generator(16).rows
        back = []
        for r in rows:
            v = []
            for k in range(0, 16, 2):
                v += [r[k] + r[k + 1], r[k] - r[k + 1]]
            assert all(x.denominator == 1 for x in v)
            back.append([int(x) for x in v])
        for v in back:
            parity = [x % 2 for x in v]
            assert sum(v) % 4 == 0
            assert parity == [0] * 16 or sum(parity) in (8, 16)
        # covolume: 2^16 for 2Z^16, divided by 2^5 codewords, doubled by the sum condition
        assert abs(round(np.linalg.det(np.array(back, dtype=float)))) == 2**12

    def test_unsupported(self):
        with pytest.raises(CapabilityError):
            bw_generator(32)

    def test_bad_basis(self):
        with pytest.raises(DimensionError):
            LatticeBasis("x", ((Fraction(1), Fraction(0)),))
        with pytest.raises(PreconditionError):
            LatticeBasis("x", ((Fraction(1), Fraction(1)), (Fraction(2), Fraction(2))))

    def test_format(self):
        assert format_matrix([[Fraction(1, 2), 0], [1, -1]]) == "1/2 0\n1 -1\n"


signed_perms8 = st.tuples(st.permutations(range(8)), st.lists(st.sampled_from((1, -1)), min_size=8, max_size=8))


class TestAutomorphisms:
    @given(st.permutations(range(4)), st.lists(st.sampled_from((1, -1)), min_size=4, max_size=4))
    @settings(max_examples=20, deadline=None)
    def test_d4_signed_permutations(self, perm, signs):
        assert is_lattice_automorphism(bw_generator(4), OrthogonalTransform.permutation(perm, signs))

    @given(signed_perms8)
    @settings(max_examples=20, deadline=None)
    def test_e8_even_sign_changes(self, sp):
        perm, signs = sp
        t = OrthogonalTransform.permutation(perm, signs)
        assert is_lattice_automorphism(bw_generator(8), t) == (signs.count(-1) % 2 == 0)

    @given(signed_perms8, signed_perms8)
    @settings(max_examples=15, deadline=None)
    def test_composition(self, a, b):
        e8 = bw_generator(8)
        ta, tb = OrthogonalTransform.permutation(*a), OrthogonalTransform.permutation(*b)
        if is_lattice_automorphism(e8, ta) and is_lattice_automorphism(e8, tb):
            assert is_lattice_automorphism(e8, ta @ tb)

    @pytest.mark.parametrize("name", ["hadamard", "reflection", "pythagorean"])
    def test_d4_against_root_system(self, name):
        h, f = Fraction(1, 2), Fraction
        rows = {
            "hadamard": [[h, h, h, h], [h, h, -h, -h], [h, -h, h, -h], [h, -h, -h, h]],
            "reflection": [[f(int(i == j)) - h for j in range(4)] for i in range(4)],
            "pythagorean": [[f(3, 5), f(4, 5), 0, 0], [f(-4, 5), f(3, 5), 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        }[name]
        roots = set()
        for i, j in combinations(range(4), 2):
            for a, b in product((1, -1), repeat=2):
                v = [0] * 4
                v[i], v[j] = a, b
                roots.add(tuple(Fraction(x) for x in v))
        image = {tuple(sum(v[k] * rows[k][c] for k in range(4)) for c in range(4)) for v in roots}
        t = OrthogonalTransform.from_rows(rows)
        assert is_lattice_automorphism(bw_generator(4), t) == (image == roots)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionError):
            is_lattice_automorphism(bw_generator(4), OrthogonalTransform.permutation(list(range(8))))
