import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polycol.exactmath import (
    QQ,
    ZZ,
    IntegersMod,
    Poly,
    PolynomialRing,
    det_int,
    dot,
    extended_gcd,
    hermite_normal_form,
    identity_matrix,
    integral_section,
    kernel_basis_int,
    mat_mul,
    primitive_part,
    rank_int,
    saturation_basis,
)


def test_primitive_part_examples():
    assert primitive_part((2, 4, 6)) == (1, 2, 3)
    assert primitive_part((0, -3)) == (0, -1)
    assert primitive_part((5,)) == (1,)
    with pytest.raises(ValueError):
        primitive_part((0, 0))


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=5))
def test_primitive_part_idempotent(v):
    if not any(v):
        return
    p = primitive_part(tuple(v))
    assert primitive_part(p) == p


def test_extended_gcd():
    for a, b in [(12, 18), (-4, 6), (0, 5), (7, 0), (1, 1), (-9, -6)]:
        g, x, y = extended_gcd(a, b)
        assert g >= 0
        assert a * x + b * y == g


def test_integral_section_examples():
    assert integral_section((1, 0)) == (1, 0)
    assert integral_section((0, 1)) == (0, 1)
    w = integral_section((2, 3))
    assert dot((2, 3), w) == 1
    assert w == (-1, 1)
    with pytest.raises(ValueError):
        integral_section((2, 4))


def test_integral_section_random():
    # 1000 random primitive vectors in dimensions 1..5
    rng = random.Random(0)
    done = 0
    while done < 1000:
        n = rng.randint(1, 5)
        v = tuple(rng.randint(-20, 20) for _ in range(n))
        if not any(v):
            continue
        v = primitive_part(v)
        assert dot(v, integral_section(v)) == 1
        done += 1


def test_hnf_examples():
    h, u = hermite_normal_form(identity_matrix(2))
    assert h == identity_matrix(2)
    assert u == identity_matrix(2)

    h, u = hermite_normal_form(((2, 0), (0, 2)))
    assert h == ((2, 0), (0, 2))

    h, u = hermite_normal_form(((1, 1), (1, -1)))
    assert h == ((1, 1), (0, 2))
    assert mat_mul(u, ((1, 1), (1, -1))) == h


def _hnf_shape_ok(h):
    pivots = []
    last = -1
    for row in h:
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            continue
        j = nz[0]
        assert j > last, "pivot columns must move right"
        last = j
        assert row[j] > 0
        pivots.append((len(pivots), j))
    for r, c in pivots:
        for i in range(r):
            assert 0 <= h[i][c] < h[r][c]
    return True


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 4),
    st.integers(1, 4),
    st.data(),
)
def test_hnf_properties(nr, nc, data):
    m = tuple(
        tuple(data.draw(st.integers(-9, 9)) for _ in range(nc))
        for _ in range(nr)
    )
    h, u = hermite_normal_form(m)
    assert abs(det_int(u)) == 1
    assert mat_mul(u, m) == h
    assert _hnf_shape_ok(h)
    assert rank_int(h) == rank_int(m)


def test_kernel_and_saturation():
    k = kernel_basis_int(((1, 1, 0),))
    assert len(k) == 2
    assert all(dot((1, 1, 0), v) == 0 for v in k)
    sat = saturation_basis(((2, 0), (0, 2)))
    # saturation of a finite-index sublattice is the whole lattice
    h, _ = hermite_normal_form(sat)
    assert h == identity_matrix(2)


def test_poly_basics():
    ring = PolynomialRing(("a", "b"))
    a = ring.var("a")
    b = ring.var("b")
    p = (a + b) * (a - b)
    assert p == a * a - b * b
    assert (a + 1) ** 2 == a * a + 2 * a + 1
    assert repr(a * a - b + 1) == "a^2 - b + 1"
    assert ring.zero == 0 and ring.one == 1
    assert a != b


@settings(max_examples=200, deadline=None)
@given(st.data())
def test_poly_ring_axioms(data):
    ring = PolynomialRing(("x", "y"))

    def rand_poly():
        terms = {}
        for _ in range(data.draw(st.integers(0, 4))):
            e = (data.draw(st.integers(0, 3)), data.draw(st.integers(0, 3)))
            terms[e] = data.draw(st.integers(-5, 5))
        return Poly(("x", "y"), terms)

    p, q, r = rand_poly(), rand_poly(), rand_poly()
    assert (p + q) * r == p * r + q * r
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p + (-p) == ring.zero


def test_coefficient_rings():
    assert ZZ.is_unit(-1) and not ZZ.is_unit(2)
    assert QQ.inverse(Fraction(3, 4)) == Fraction(4, 3)
    m5 = IntegersMod(5)
    x = m5.from_int(3)
    assert m5.inverse(x) * x == m5.one
    assert m5.from_int(8) == m5.from_int(3)
    with pytest.raises(ValueError):
        IntegersMod(6).inverse(IntegersMod(6).from_int(2))
    ring = PolynomialRing(("t",))
    with pytest.raises(ValueError):
        ring.inverse(ring.var("t"))
