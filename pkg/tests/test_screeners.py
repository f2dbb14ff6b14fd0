import math
import random
from fractions import Fraction

import pytest

from latscreen import (
    Lattice,
    LatticeError,
    all_screeners,
    box_enumerate,
    catalog,
    central_charge,
    conformal_weight,
    dual_pairing_unit,
    enumerate_exact_norm,
    is_positive_definite,
    is_screener,
    screener_span,
    screener_splitting,
    screening_system,
    virasoro_shift,
)
from latscreen.screeners import in_sublattice

A2 = [[2, -1], [-1, 2]]

# a small pool of lattices every property test runs over
POOL = [
    Lattice([[2]]),
    Lattice([[4]]),
    Lattice([[12]]),
    Lattice(A2),
    Lattice([[1, 0], [0, 1]]),
    Lattice([[2, 0], [0, 2]]),
    Lattice([[4, 0], [0, 3]]),
    Lattice([[2, 1], [1, 3]]),
    Lattice([[2, -1], [-1, 3]]),
    Lattice([[4, -2], [-2, 2]]),
    Lattice([[2, 0], [0, 4]]),
    catalog("A", 3),
    catalog("A", 4),
    catalog("D", 4),
    catalog("D", 5),
    catalog("E", 6),
]


def test_is_screener_basics():
    lat = Lattice(A2)
    assert is_screener(lat, (1, 0))
    assert is_screener(lat, (1, 2))
    assert not is_screener(lat, (2, 0))      # in 2L
    assert not is_screener(lat, (2, 4))      # in 2L
    assert not is_screener(lat, (0, 0))
    assert not is_screener(Lattice([[1, 0], [0, 1]]), (1, 0))  # odd norm
    # norm 4 does not divide all entries of twice the Gram image
    assert not is_screener(Lattice([[4, 1], [1, 2]]), (1, 0))


def test_screeners_of_a2():
    s = all_screeners(Lattice(A2))
    assert s.vectors == ((0, 1), (1, 0), (1, 1), (1, -1), (1, 2), (2, 1))
    assert s.norms == (2, 2, 2, 6, 6, 6)
    assert s.total_count == 12
    assert s.min_norm == 2


def test_screeners_rank2_specials():
    assert all_screeners(Lattice([[1, 0], [0, 1]])).vectors == ((1, -1), (1, 1))
    assert all_screeners(Lattice([[2, 0], [0, 2]])).vectors == (
        (0, 1), (1, 0), (1, -1), (1, 1))
    assert all_screeners(Lattice([[4, 0], [0, 3]])).vectors == ((1, 0),)
    assert all_screeners(Lattice([[2, 1], [1, 3]])).vectors == ((1, 0), (1, -2))
    assert all_screeners(Lattice([[2, -1], [-1, 3]])).vectors == ((1, 0), (1, 2))


def test_screener_counts_of_root_lattices():
    assert len(all_screeners(catalog("A", 3))) == 9
    assert len(all_screeners(catalog("A", 4))) == 10
    assert len(all_screeners(catalog("A", 5))) == 15
    assert len(all_screeners(catalog("D", 4))) == 24
    assert len(all_screeners(catalog("D", 5))) == 25
    assert len(all_screeners(catalog("D", 6))) == 36
    assert len(all_screeners(catalog("E", 6))) == 36
    assert len(all_screeners(catalog("E", 7))) == 63
    assert len(all_screeners(catalog("E", 8))) == 120


def test_nonroot_screeners():
    s = all_screeners(catalog("A", 3))
    extra = [v for v, n in zip(s.vectors, s.norms) if n > 2]
    assert extra == [(1, 0, -1), (1, 0, 1), (1, 2, 1)]

    s = all_screeners(catalog("D", 5))
    extra = [v for v, n in zip(s.vectors, s.norms) if n > 2]
    assert extra == [
        (1, -1, 0, 0, 0),
        (1, 1, 0, 0, 0),
        (1, 1, 2, 0, 0),
        (1, 1, 2, 2, 0),
        (1, 1, 2, 2, 2),
    ]

    s = all_screeners(catalog("E", 8))
    assert set(s.norms) == {2}


def test_matches_box_oracle():
    rng = random.Random(977)
    done = 0
    while done < 200:
        d = rng.randint(1, 4)
        g = [[0] * d for _ in range(d)]
        for i in range(d):
            g[i][i] = rng.randint(1, 8)
            for j in range(i + 1, d):
                g[i][j] = g[j][i] = rng.randint(-8, 8)
        if not is_positive_definite(g):
            continue
        done += 1
        lat = Lattice(g)
        fast = all_screeners(lat).vectors
        boxed = box_enumerate(lat, 2 * lat.determinant)
        slow = tuple(v for v in boxed.vectors if is_screener(lat, v))
        assert fast == slow


def test_norm2_vectors_are_always_screeners():
    for lat in POOL:
        for v in enumerate_exact_norm(lat, 2).vectors:
            assert is_screener(lat, v)


def test_no_higher_multiples():
    """n*a for |n| >= 2 never stays a screener."""
    for lat in POOL:
        for v in all_screeners(lat).vectors:
            for n in (2, 3, -2):
                assert not is_screener(lat, tuple(n * t for t in v))


def test_half_norm_inner_produces_sum():
    """a + b is a screener whenever <a,b> = -<b,b>/2 and <a,a> <= <b,b>."""
    for lat in POOL:
        vs = all_screeners(lat).vectors
        signed = [v for v in vs] + [tuple(-t for t in v) for v in vs]
        for a in signed:
            for b in signed:
                if lat.inner(a, b) == -lat.norm(b) // 2 and lat.norm(a) <= lat.norm(b):
                    s = tuple(x + y for x, y in zip(a, b))
                    if any(s):
                        assert is_screener(lat, s), (lat.gram, a, b)


def test_orthogonal_sum_criterion():
    """For orthogonal screeners, a +- b stays a screener exactly when norms
    agree, the doubled Gram image is divisible, and the sum leaves 2L."""
    from latscreen import in_dual, in_scaled_lattice

    for lat in POOL:
        vs = all_screeners(lat).vectors
        for a in vs:
            for b in vs:
                if a == b or lat.inner(a, b) != 0:
                    continue
                for sign in (1, -1):
                    s = tuple(x + sign * y for x, y in zip(a, b))
                    expected = (
                        lat.norm(a) == lat.norm(b)
                        and in_dual(lat, s, lat.norm(a))
                        and not in_scaled_lattice(s, 2)
                    )
                    assert is_screener(lat, s) == expected


def test_angle_trichotomy():
    """Distinct screeners meet at one of the allowed angles: orthogonal, the
    half-norm slope of the shorter against the longer, or equal up to sign."""
    for lat in POOL:
        vs = all_screeners(lat).vectors
        for i, a in enumerate(vs):
            for b in vs[i + 1:]:
                t = lat.inner(a, b)
                na, nb = lat.norm(a), lat.norm(b)
                hi = max(na, nb)
                assert 2 * abs(t) in (0, hi, 2 * hi), (lat.gram, a, b)


def test_half_norm_lcm_divides_determinant():
    for lat in POOL:
        s = all_screeners(lat)
        acc = 1
        for n in s.norms:
            acc = acc * (n // 2) // math.gcd(acc, n // 2)
        if s.vectors:
            assert lat.determinant % acc == 0


def test_screener_predicate_via_dual_on_indecomposables():
    """On indecomposable lattices of rank >= 2 the 2L exclusion is automatic:
    even norm plus dual divisibility already makes a screener."""
    from latscreen import in_dual

    for lat in [catalog("A", 3), catalog("A", 4), catalog("D", 4),
                catalog("D", 5), catalog("E", 6)]:
        from latscreen import enumerate_up_to_norm
        res = enumerate_up_to_norm(lat, 2 * lat.determinant)
        via_dual = tuple(
            v for v, n in zip(res.vectors, res.norms)
            if n % 2 == 0 and in_dual(lat, tuple(2 * t for t in v), n)
        )
        assert via_dual == all_screeners(lat).vectors


def test_rescaling_bijection():
    for name, n in (("A", 2), ("A", 3), ("D", 4)):
        base = catalog(name, n)
        s0 = all_screeners(base)
        for p in (2, 3):
            scaled = catalog(name, n, scale=p)
            sp = all_screeners(scaled)
            assert sp.vectors == s0.vectors
            assert sp.norms == tuple(p * t for t in s0.norms)
            assert sp.total_count == s0.total_count


def test_screening_system():
    sys_a2 = screening_system(all_screeners(Lattice(A2)))
    assert sys_a2 == ((0, 1), (1, 0))
    assert screening_system(all_screeners(Lattice([[2]]))) == ((1,),)
    assert screening_system(all_screeners(Lattice([[4, 0], [0, 3]]))) == ((1, 0),)
    for lat in POOL:
        s = all_screeners(lat)
        if not s.vectors:
            continue
        system = screening_system(s)
        assert len(system) == screener_span(s).gram.rank


def test_screener_span():
    span = screener_span(all_screeners(Lattice(A2)))
    assert span.index_in_lattice == 1
    assert span.basis == ((1, 0), (0, 1))

    span = screener_span(all_screeners(Lattice([[4, 0], [0, 3]])))
    assert span.index_in_lattice is None
    assert span.gram.gram == ((4,),)

    # rank-2 type 2a: the span has index 2 and rescaled square Gram
    span = screener_span(all_screeners(Lattice([[2, -1], [-1, 3]])))
    assert span.basis == ((1, 0), (0, 2))
    assert span.index_in_lattice == 2
    assert span.gram.determinant == 20
    # the basis (a1, a1 + 2 a2) spans the same sublattice diagonally
    assert in_sublattice([list(b) for b in span.basis], (1, 2))
    assert Lattice([[2, 0], [0, 10]]).determinant == span.gram.determinant


def test_screener_splitting():
    split = screener_splitting(all_screeners(Lattice(A2)))
    assert split.index_in_lattice == 1
    assert split.span_rank == 2

    split = screener_splitting(all_screeners(Lattice([[4, 0], [0, 3]])))
    assert split.index_in_lattice == 1
    assert split.span_rank == 1
    assert split.gram.gram == ((4, 0), (0, 3))


def test_splitting_chain():
    """2L sits inside the split sublattice, which sits inside L, and the
    determinant grows by the square of the index."""
    for lat in POOL:
        split = screener_splitting(all_screeners(lat))
        basis = [list(b) for b in split.basis]
        d = lat.rank
        for i in range(d):
            doubled = tuple(2 if j == i else 0 for j in range(d))
            assert in_sublattice(basis, doubled)
        assert split.gram.determinant == split.index_in_lattice ** 2 * lat.determinant
        if split.index_in_lattice > 1:
            assert (4 ** d * lat.determinant) % split.gram.determinant == 0


def test_dual_pairing_unit():
    lat = Lattice(A2)
    g = dual_pairing_unit(lat, (1, 0))
    assert sum(gi * ti for gi, ti in zip(lat.gram_times((1, 0)), g)) == 1
    with pytest.raises(LatticeError):
        dual_pairing_unit(lat, (2, 0))


def test_virasoro_shift_rank1():
    g = virasoro_shift(Lattice([[4]]), (1,), 2, 1)
    assert g == (Fraction(1, 4),)
    lat = Lattice([[12]])
    g = virasoro_shift(lat, (1,), 3, 2)
    assert g == (Fraction(1, 12),)
    # weight-1 exponents on both sides
    assert conformal_weight(lat, (Fraction(-1, 3),), g, 0) == 1
    assert conformal_weight(lat, (Fraction(1, 2),), g, 0) == 1
    assert virasoro_shift(Lattice([[2]]), (1,), 1, 1) == (Fraction(0),)


def test_virasoro_shift_errors():
    with pytest.raises(LatticeError):
        virasoro_shift(Lattice([[4]]), (1,), 3, 1)   # norm mismatch
    with pytest.raises(LatticeError):
        virasoro_shift(Lattice([[4, 1], [1, 2]]), (1, 0), 2, 1)  # not a screener


def test_central_charge():
    assert central_charge(1, (Fraction(0),), Lattice([[2]])) == 1
    assert central_charge(1, (Fraction(1, 4),), Lattice([[4]])) == -2
    assert central_charge(1, (Fraction(1, 12),), Lattice([[12]])) == 0
    lat = Lattice(A2)
    assert central_charge(2, (Fraction(0), Fraction(0)), lat) == 2
