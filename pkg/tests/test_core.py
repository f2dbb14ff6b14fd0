import random
from fractions import Fraction

import pytest

from latscreen import (
    Lattice,
    LatticeError,
    catalog,
    extend_to_basis,
    in_dual,
    in_extended_dual,
    in_scaled_lattice,
    is_positive_definite,
    orthogonal_split,
    quotient_invariants,
    sublattice_gram,
)

from oracle import det_fraction

A2 = [[2, -1], [-1, 2]]


def test_lattice_rejects_non_square():
    with pytest.raises(LatticeError):
        Lattice([[2, -1]])
    with pytest.raises(LatticeError):
        Lattice([[2, -1], [-1]])
    with pytest.raises(LatticeError):
        Lattice([])


def test_lattice_rejects_non_symmetric():
    with pytest.raises(LatticeError, match=r"not symmetric at \(0, 1\)"):
        Lattice([[2, -1], [1, 2]])


def test_lattice_rejects_indefinite():
    with pytest.raises(LatticeError, match="minor 2 is -3"):
        Lattice([[1, 2], [2, 1]])
    with pytest.raises(LatticeError, match="minor 1 is 0"):
        Lattice([[0, 0], [0, 2]])
    with pytest.raises(LatticeError, match="minor 1 is -2"):
        Lattice([[-2, 0], [0, 2]])


def test_is_positive_definite():
    assert is_positive_definite(A2)
    assert not is_positive_definite([[1, 2], [2, 1]])
    assert not is_positive_definite([[2, -1], [1, 2]])
    assert is_positive_definite([[1]])


def test_basic_accessors():
    lat = Lattice(A2)
    assert lat.rank == 2
    assert lat.determinant == 3
    assert lat.leading_minors == (2, 3)
    assert lat.inner((1, 0), (0, 1)) == -1
    assert lat.norm((1, 1)) == 2
    assert lat.norm((1, -1)) == 6
    assert lat.parity((1, 0)) == 0
    assert Lattice([[1, 0], [0, 2]]).parity((1, 0)) == 1
    assert tuple(lat.gram_times((1, 2))) == (0, 3)


def test_is_even():
    assert Lattice(A2).is_even
    assert not Lattice([[1, 0], [0, 1]]).is_even
    assert not Lattice([[2, 1], [1, 3]]).is_even
    assert catalog("E", 8).is_even


def test_determinant_matches_fraction_elimination():
    rng = random.Random(11)
    for _ in range(200):
        d = rng.randint(1, 5)
        g = [[0] * d for _ in range(d)]
        for i in range(d):
            g[i][i] = rng.randint(1, 12)
            for j in range(i + 1, d):
                g[i][j] = g[j][i] = rng.randint(-4, 4)
        if not is_positive_definite(g):
            continue
        lat = Lattice(g)
        assert Fraction(lat.determinant) == det_fraction(g)


def test_in_dual():
    lat = Lattice(A2)
    assert in_dual(lat, (1, 2), 3)
    assert not in_dual(lat, (1, 1), 3)
    assert in_dual(lat, (0, 0), 5)
    assert in_dual(Lattice([[4]]), (1,), 4)
    assert not in_dual(Lattice([[4]]), (1,), 3)


def test_in_scaled_lattice():
    assert in_scaled_lattice((2, 4), 2)
    assert not in_scaled_lattice((2, 3), 2)
    assert in_scaled_lattice((0, 0), 7)


def test_in_extended_dual():
    f = Fraction
    assert in_extended_dual(Lattice([[2]]), (f(1, 2),))
    assert in_extended_dual(Lattice(A2), (f(1, 3), f(2, 3)))
    # the doubled pairing with a unit vector is odd, so this is outside
    assert not in_extended_dual(Lattice([[1, 0], [0, 1]]), (f(1, 2), f(0)))
    # both pairings odd: allowed, the parity is uniform across odd basis vectors
    assert in_extended_dual(Lattice([[1, 0], [0, 1]]), (f(1, 2), f(1, 2)))
    assert in_extended_dual(Lattice(A2), (f(1), f(-2)))


def test_extend_to_basis_small():
    lat = Lattice([[1, 0], [0, 1]])
    cols = extend_to_basis(lat, (2, 3))
    assert [row[0] for row in cols] == [2, 3]
    det = cols[0][0] * cols[1][1] - cols[0][1] * cols[1][0]
    assert det in (1, -1)
    with pytest.raises(LatticeError):
        extend_to_basis(lat, (2, 4))
    with pytest.raises(LatticeError):
        extend_to_basis(lat, (0, 0))


def test_extend_to_basis_random():
    """Random primitive vectors always extend to a unimodular basis."""
    from latscreen.intlinalg import determinant
    from math import gcd

    rng = random.Random(23)
    checked = 0
    while checked < 1000:
        d = rng.randint(1, 5)
        x = [rng.randint(-50, 50) for _ in range(d)]
        g = 0
        for v in x:
            g = gcd(g, v)
        if g != 1:
            continue
        checked += 1
        lat = Lattice([[2 if i == j else 0 for j in range(d)] for i in range(d)])
        cols = extend_to_basis(lat, tuple(x))
        assert [row[0] for row in cols] == list(x)
        assert determinant(cols) in (1, -1)


def test_orthogonal_split():
    sub, comp, cols = orthogonal_split(Lattice([[2, 0], [0, 4]]), (1, 0))
    assert sub.gram == ((2,),)
    assert comp.gram == ((4,),)
    assert cols == [[1, 0], [0, 1]]

    # D2 = A1 + A1 in skew coordinates
    lat = Lattice([[4, 2], [2, 2]])
    sub, comp, cols = orthogonal_split(lat, (0, 1))
    assert sub.gram == ((2,),)
    assert comp.determinant * 2 == lat.determinant


def test_orthogonal_split_requires_divisibility():
    with pytest.raises(LatticeError, match="no orthogonal split"):
        orthogonal_split(Lattice([[1, 0], [0, 3]]), (1, 1))


def test_quotient_invariants():
    assert quotient_invariants(Lattice(A2)) == (1, 3)
    assert quotient_invariants(Lattice([[1, 0], [0, 1]])) == (1, 1)
    assert quotient_invariants(Lattice([[2, 0], [0, 2]])) == (2, 2)
    assert quotient_invariants(catalog("D", 4)) == (1, 1, 2, 2)
    assert quotient_invariants(catalog("E", 8)) == (1,) * 8


def test_sublattice_gram():
    lat = Lattice(A2)
    assert sublattice_gram(lat, [(1, -1), (1, 2)]).gram == ((6, -3), (-3, 6))
    assert sublattice_gram(lat, [(1, 0)]).gram == ((2,),)
    with pytest.raises(LatticeError):
        sublattice_gram(lat, [(1, 1), (2, 2)])
