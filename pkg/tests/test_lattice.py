import random

import pytest

from delpezzo import (
    LatticeVector,
    PicardLattice,
    RankMismatchError,
    basis_vector,
    canonical_class,
    degree,
    discriminant,
    is_canonical_multiple,
    max_interpolation_points,
    normal_bundle_splitting,
    pair,
    self_intersection,
)


def test_pairing_is_diagonal():
    r = 5
    basis = [basis_vector(r, i) for i in range(r + 1)]
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            expected = 0 if i != j else (1 if i == 0 else -1)
            assert pair(u, v) == expected


def test_pairing_bilinear_random():
    rng = random.Random(91)
    for _ in range(200):
        r = rng.choice((4, 5, 6, 7))
        u = LatticeVector(tuple(rng.randrange(-20, 21) for _ in range(r + 1)))
        v = LatticeVector(tuple(rng.randrange(-20, 21) for _ in range(r + 1)))
        w = LatticeVector(tuple(rng.randrange(-20, 21) for _ in range(r + 1)))
        k = rng.randrange(-5, 6)
        assert pair(u, v) == pair(v, u)
        assert pair(u + v, w) == pair(u, w) + pair(v, w)
        assert pair(k * u, v) == k * pair(u, v)


def test_canonical_class_and_degree():
    for r in (1, 4, 5, 6, 7):
        om = canonical_class(r)
        assert tuple(om) == (-3,) + (1,) * r
        assert degree(om) == r - 9
        if r != 1:
            assert pair(om, om) == 9 - r
    l0 = basis_vector(4, 0)
    assert degree(l0) == 3
    assert degree(basis_vector(4, 2)) == 1
    assert degree(l0 - basis_vector(4, 1)) == 2


def test_degree_is_minus_omega_pairing():
    rng = random.Random(17)
    for r in (4, 5, 6, 7):
        om = canonical_class(r)
        for _ in range(50):
            v = LatticeVector(tuple(rng.randrange(-9, 10) for _ in range(r + 1)))
            assert degree(v) == -pair(om, v)


def test_vector_arithmetic_and_hash():
    u = LatticeVector((1, -1, 0, 0, 0))
    v = LatticeVector((0, 1, 1, 0, 0))
    assert tuple(u + v) == (1, 0, 1, 0, 0)
    assert tuple(u - v) == (1, -2, -1, 0, 0)
    assert tuple(-u) == (-1, 1, 0, 0, 0)
    assert tuple(3 * u) == (3, -3, 0, 0, 0)
    assert u * 3 == 3 * u
    assert hash(u) == hash(LatticeVector((1, -1, 0, 0, 0)))
    assert u != v
    assert u < LatticeVector((1, 0, 0, 0, 0))
    with pytest.raises(AttributeError):
        u.coeffs = (0, 0, 0, 0, 0)


def test_rank_mismatch_rejected():
    u = LatticeVector((1, 0, 0, 0, 0))
    v = LatticeVector((1, 0, 0, 0, 0, 0))
    with pytest.raises(RankMismatchError):
        pair(u, v)
    with pytest.raises(RankMismatchError):
        u + v
    with pytest.raises(RankMismatchError):
        LatticeVector((1, 2, 3))  # rank 2 is not supported
    with pytest.raises(TypeError):
        LatticeVector((1.0, 0, 0, 0, 0))


def test_discriminant_examples():
    r = 6
    line = basis_vector(r, 6)
    assert self_intersection(line) == -1
    assert discriminant(line) == 1 - (9 - r) * (-1)  # = 4 at rank 6
    assert discriminant(canonical_class(r)) == 0
    conic = basis_vector(r, 0) - basis_vector(r, 1)
    assert discriminant(conic) == 4


def test_is_canonical_multiple():
    for r in (4, 5, 6, 7):
        om = canonical_class(r)
        zero = LatticeVector((0,) * (r + 1))
        assert is_canonical_multiple(zero)
        for k in (-3, -1, 1, 2, 5):
            assert is_canonical_multiple(k * om)
        assert not is_canonical_multiple(basis_vector(r, 0))
        assert not is_canonical_multiple(om + basis_vector(r, 1))


def test_picard_lattice_construction():
    lat = PicardLattice.for_rank(5)
    assert lat.d == 4
    assert lat.omega == canonical_class(5)
    assert PicardLattice.for_degree(4) == lat
    assert len(lat.basis()) == 6
    gram = lat.gram_matrix()
    assert gram[0][0] == 1 and gram[1][1] == -1 and gram[0][1] == 0
    with pytest.raises(ValueError):
        PicardLattice(5, 5, canonical_class(5))
    with pytest.raises(RankMismatchError):
        PicardLattice.for_rank(3)


# Interpolation counts: the uniform closed form ((n-1)e - 2)//(n-1) + 1
# serves as the cross-check for the branch implementation.
@pytest.mark.parametrize("n", range(2, 8))
@pytest.mark.parametrize("e", range(1, 12))
def test_max_interpolation_points_closed_form(n, e):
    assert max_interpolation_points(n, e) == ((n - 1) * e - 2) // (n - 1) + 1


def test_max_interpolation_points_values():
    assert max_interpolation_points(2, 1) == 0
    assert max_interpolation_points(2, 3) == 2
    assert max_interpolation_points(3, 1) == 1
    assert max_interpolation_points(3, 4) == 4
    assert max_interpolation_points(5, 7) == 7
    with pytest.raises(ValueError):
        max_interpolation_points(1, 3)
    with pytest.raises(ValueError):
        max_interpolation_points(3, 0)


@pytest.mark.parametrize("n", range(3, 8))
@pytest.mark.parametrize("e", range(1, 10))
def test_normal_bundle_splitting_totals(n, e):
    parts = normal_bundle_splitting(n, e)
    assert len(parts) == n - 1
    assert sum(parts) == (n - 1) * e - 2


def test_normal_bundle_splitting_values():
    assert normal_bundle_splitting(3, 5) == (4, 4)
    assert normal_bundle_splitting(4, 3) == (2, 2, 3)
    assert normal_bundle_splitting(5, 1) == (0, 0, 1, 1)
    with pytest.raises(ValueError):
        normal_bundle_splitting(2, 5)
