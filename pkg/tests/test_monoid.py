import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from oracles import brute_max_divisibility, positive_functional, torsion_invariants
from tamelog.errors import BudgetExceeded, InvalidFace, NotInLattice, NotInMonoid
from tamelog.monoid import (
    AffineMonoid,
    Face,
    Lattice,
    content,
    is_face,
    is_sharp,
    localize_sharpen,
    max_divisibility,
    member,
    quotient_torsion,
    saturation_witness,
)

EVEN = AffineMonoid(((2, 0), (1, 1), (0, 2)))
N2 = AffineMonoid(((1, 0), (0, 1)), saturated=True)


def test_lattice_canonical_and_rank():
    a = Lattice(2, ((2, 0), (1, 1)))
    b = Lattice(2, ((1, 1), (0, 2)))
    assert a == b
    assert a.rank == 2
    assert (1, 0) not in a and (3, 1) in a
    with pytest.raises(ValueError):
        Lattice(2, ((1, 2), (2, 4)))


@pytest.mark.parametrize(
    "v, lattice, expected",
    [
        ((4, 6), Lattice.standard(2), 2),
        ((2, 2), Lattice(2, ((2, 0), (1, 1))), 2),
        ((6, 10, 15), Lattice.standard(3), 1),
    ],
)
def test_content_examples(v, lattice, expected):
    assert content(v, lattice) == expected


def test_content_zero_and_outside():
    assert content((0, 0), Lattice.standard(2)) is None
    with pytest.raises(NotInLattice):
        content((1, 0), Lattice(2, ((2, 0), (1, 1))))


@given(st.lists(st.integers(-9, 9), min_size=3, max_size=3), st.integers(1, 7))
def test_content_scales(v, k):
    assume(any(v))
    lat = Lattice(3, ((1, 1, 0), (0, 2, 0), (0, 0, 3)))
    w = tuple(lat.point(v))
    assert content(tuple(k * x for x in w), lat) == k * content(w, lat)


def test_member_examples():
    assert member(N2, (1, 1))
    assert not member(EVEN, (1, 0))
    assert member(EVEN, (2, 2))
    assert member(EVEN, (0, 0))
    assert not member(N2, (-1, 0))


def test_member_non_pointed_and_budget():
    line = AffineMonoid(((1, 0), (-1, 0), (0, 1)))
    assert member(line, (-3, 2))
    with pytest.raises(BudgetExceeded):
        member(line, (5, -1), budget=1000)
    with pytest.raises(BudgetExceeded):
        member(AffineMonoid(((1, 0), (0, 1))), (40, 40), budget=5)


def test_is_sharp_examples():
    assert is_sharp(N2)
    assert not is_sharp(AffineMonoid(((1, 0), (-1, 0))))
    assert is_sharp(EVEN)
    assert not AffineMonoid(((1, 0), (-1, 0), (0, 1))).sharp


@pytest.mark.parametrize(
    "monoid, v, expected",
    [
        (AffineMonoid(((1,),)), (7,), 7),
        (N2, (4, 6), 2),
        (EVEN, (2, 2), 2),
        (AffineMonoid(((2,), (3,))), (6,), 3),
        (AffineMonoid(((2,), (3,))), (5,), 1),
    ],
)
def test_max_divisibility_examples(monoid, v, expected):
    assert max_divisibility(monoid, v) == expected


def test_max_divisibility_errors():
    with pytest.raises(ValueError):
        max_divisibility(N2, (0, 0))
    with pytest.raises(NotInMonoid):
        max_divisibility(EVEN, (1, 0))
    with pytest.raises(ValueError):
        max_divisibility(AffineMonoid(((1, 0), (-1, 0), (0, 1))), (0, 2))


gen_sets = st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=1, max_size=4).filter(
    lambda gs: all(any(g) for g in gs)
)


@given(gen_sets, st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_max_divisibility_matches_brute_force(gens, coeffs):
    monoid = AffineMonoid(tuple(gens))
    v = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(2))
    assume(any(v))
    assert max_divisibility(monoid, v) == brute_max_divisibility(gens, v)


def test_face_checks():
    assert is_face(N2, Face(frozenset({0})))
    assert is_face(N2, Face(frozenset()))
    assert is_face(EVEN, Face(frozenset({0})))
    assert not is_face(EVEN, Face(frozenset({1})))
    assert not is_face(AffineMonoid(((1, 0), (1, 1), (1, 2))), Face(frozenset({0, 2})))
    assert not is_face(N2, Face(frozenset({5})))


def test_localize_sharpen_examples():
    q, image = localize_sharpen(N2, Face(frozenset({0})), (3, 5))
    assert image == (5,) and q.lattice.rank == 1
    q, image = localize_sharpen(EVEN, Face(frozenset()), (2, 2))
    assert q is EVEN and image == (2, 2)
    q, image = localize_sharpen(EVEN, Face(frozenset({0})), (2, 2))
    assert image == (2,)
    assert max_divisibility(q, image) == 2
    with pytest.raises(InvalidFace):
        localize_sharpen(EVEN, Face(frozenset({1})), (2, 2))


rays3 = st.lists(st.tuples(*[st.integers(0, 3)] * 3), min_size=1, max_size=4).filter(
    lambda gs: all(any(g) for g in gs)
)


@given(rays3, st.data())
def test_localize_sharpen_is_sharp(gens, data):
    monoid = AffineMonoid(tuple(gens))
    faces = [Face(frozenset(i for i in range(len(gens)) if mask >> i & 1)) for mask in range(1 << len(gens))]
    faces = [f for f in faces if is_face(monoid, f)]
    face = data.draw(st.sampled_from(faces))
    coeffs = data.draw(st.lists(st.integers(0, 2), min_size=len(gens), max_size=len(gens)))
    marked = tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) for i in range(3))
    q, image = localize_sharpen(monoid, face, marked)
    assert is_sharp(q)
    assert member(q, image)


@given(st.lists(st.integers(-8, 8), min_size=2, max_size=2))
def test_quotient_torsion_matches_sympy(c):
    assume(any(c))
    basis = ((2, 1, 0), (0, 3, 1))
    lat = Lattice(3, basis)
    v = lat.point(c)
    assert quotient_torsion(v, lat) == torsion_invariants(lat.basis, v)


def test_saturation_witness():
    assert saturation_witness(AffineMonoid(((2,), (3,)))) == (1,)
    assert saturation_witness(EVEN) is None
    assert saturation_witness(AffineMonoid(((1, 0), (1, 2)))) is None
    assert saturation_witness(AffineMonoid(((1, 0), (0, 2), (1, 1)))) == (0, 1)
    assert saturation_witness(N2) is None


def test_positive_functional_is_positive():
    for gens in (EVEN.generators, ((1, 0, 0), (1, 1, 0), (1, 1, 1))):
        m = AffineMonoid(gens)
        w = m.positive_functional
        assert all(sum(a * b for a, b in zip(w, c)) > 0 for c in m._coords)
        assert positive_functional(list(gens)) is not None


def test_member_many_generators_within_budget():
    gens = ((-2, -1, -2), (1, 1, 1), (-2, -2, -1), (-4, 4, -4), (-4, -4, 4), (-4, 4, 1), (-4, 1, 4), (-4, 3, 3))
    v = (-42, -14, 36)
    m = AffineMonoid(gens, budget=20_000)
    assert max_divisibility(m, v) == brute_max_divisibility(list(gens), v)
