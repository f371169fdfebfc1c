import cmath
import random
from fractions import Fraction
from math import gcd

import pytest

from src.application.CustomError import DivisionByZero, NotASubfield, OrderMismatch, UnsupportedField
from src.application.Cyclotomic import (
    CycloElement,
    cyclotomic_field,
    imag_unit,
    in_real_quadratic_subfield,
    phi,
    root_of_unity,
    sqrt2,
)


@pytest.mark.parametrize('n, expected', [(1, 1), (2, 1), (3, 2), (4, 2), (8, 4), (12, 4), (24, 8)])
def test_phi(n: int, expected: int) -> None:
    """Test the degree of the cyclotomic field."""
    assert phi(n) == expected
    assert cyclotomic_field(n).degree == expected


def test_phi_rejects_non_positive_order() -> None:
    """Test that order 0 is rejected."""
    with pytest.raises(UnsupportedField):
        phi(0)


def test_root_of_unity_relations() -> None:
    """Test ω_8^4 = -1, ω_3 + ω_3^2 = -1 and ω_n^n = 1."""
    assert root_of_unity(8, 4) == -CycloElement.one(8)
    assert root_of_unity(3, 1) + root_of_unity(3, 2) == CycloElement.from_rational(3, -1)
    for n in (1, 2, 5, 12):
        assert root_of_unity(n, 1) ** n == CycloElement.one(n)


def test_wrong_coordinate_count() -> None:
    """Test that the constructor checks the number of coordinates."""
    with pytest.raises(UnsupportedField):
        CycloElement(8, (1, 0))


@pytest.mark.parametrize('n', [3, 5, 8, 12, 24])
def test_invert(n: int) -> None:
    """Test x · x^-1 = 1 for x = 2 + ω_n."""
    x = root_of_unity(n, 1) + 2
    assert x * x.invert() == CycloElement.one(n)
    assert x / x == CycloElement.one(n)


def test_invert_zero() -> None:
    """Test that inverting zero raises DivisionByZero."""
    with pytest.raises(DivisionByZero):
        CycloElement.zero(8).invert()


def test_order_mismatch() -> None:
    """Test that elements of different fields must be embedded first."""
    with pytest.raises(OrderMismatch):
        root_of_unity(4, 1) + root_of_unity(8, 1)


def test_negative_power() -> None:
    """Test ω_8^-1 = ω_8^7."""
    assert root_of_unity(8, 1) ** -1 == root_of_unity(8, 7)


def test_galois_conjugate_and_conjugate() -> None:
    """Test the automorphisms ω ↦ ω^3 and complex conjugation."""
    omega = root_of_unity(8, 1)
    assert omega.galois_conjugate(3) == root_of_unity(8, 3)
    assert omega.conjugate() == root_of_unity(8, 7)
    with pytest.raises(UnsupportedField):
        omega.galois_conjugate(2)


def test_embed() -> None:
    """Test i = ω_4 = ω_8^2 after embedding."""
    assert root_of_unity(4, 1).embed(8) == root_of_unity(8, 2)
    assert root_of_unity(3, 1).embed(24) == root_of_unity(24, 8)
    with pytest.raises(NotASubfield):
        root_of_unity(8, 1).embed(12)


def test_descend() -> None:
    """Test restriction to a subfield."""
    assert root_of_unity(8, 2).descend(4) == root_of_unity(4, 1)
    assert (sqrt2(8) * sqrt2(8)).descend(1) == CycloElement.from_rational(1, 2)
    with pytest.raises(NotASubfield):
        root_of_unity(8, 1).descend(4)


def test_sqrt2_and_imag_unit() -> None:
    """Test √2² = 2 and i² = -1 in Q(ω_24)."""
    assert sqrt2(24) * sqrt2(24) == CycloElement.from_rational(24, 2)
    assert imag_unit(24) * imag_unit(24) == CycloElement.from_rational(24, -1)
    with pytest.raises(UnsupportedField):
        sqrt2(12)
    with pytest.raises(UnsupportedField):
        imag_unit(6)


def test_algebraic_integer() -> None:
    """Test the integrality check on power-basis coordinates."""
    assert root_of_unity(12, 5).is_algebraic_integer()
    assert not CycloElement.from_rational(4, Fraction(1, 2)).is_algebraic_integer()


def test_complex_value() -> None:
    """Test the numeric cross-check of ω_8."""
    assert abs(complex(root_of_unity(8, 1)) - cmath.exp(2j * cmath.pi / 8)) < 1e-12
    assert abs(complex(sqrt2(8)) - 2 ** 0.5) < 1e-12


def test_in_real_quadratic_subfield() -> None:
    """Test membership in Q(ω_3, √2): √2 belongs, i does not."""
    assert in_real_quadratic_subfield(sqrt2(24), 3)
    assert in_real_quadratic_subfield(root_of_unity(3, 1).embed(24), 3)
    assert not in_real_quadratic_subfield(imag_unit(24), 3)
    with pytest.raises(UnsupportedField):
        in_real_quadratic_subfield(sqrt2(8), 4)


def test_str() -> None:
    """Test the textual form."""
    assert str(CycloElement.zero(4)) == '0'
    assert str(root_of_unity(8, 1) - 1) == '-1 + ω8'


def _sample(rng: random.Random, n: int, integral: bool = False) -> CycloElement:
    denominators = (1,) if integral else (1, 2, 3, 4)
    return CycloElement(n, tuple(Fraction(rng.randint(-5, 5), rng.choice(denominators)) for _ in range(phi(n))))


@pytest.fixture(scope='module')
def rng():
    """Fixture to create a seeded generator for random field elements."""
    yield random.Random(20)


@pytest.mark.parametrize('n', [3, 5, 8, 12, 24])
def test_field_axioms(rng: random.Random, n: int) -> None:
    """Test associativity, distributivity and inverses on random elements."""
    for _ in range(10):
        x, y, z = (_sample(rng, n) for _ in range(3))
        assert (x * y) * z == x * (y * z)
        assert (x + y) + z == x + (y + z)
        assert x * (y + z) == x * y + x * z
        if not x.is_zero():
            assert x * x.invert() == CycloElement.one(n)


@pytest.mark.parametrize('n', [3, 8, 12, 24])
def test_conjugate_is_multiplicative_involution(rng: random.Random, n: int) -> None:
    """Test conj(conj(x)) = x and conj(x·y) = conj(x)·conj(y)."""
    for _ in range(10):
        x, y = _sample(rng, n), _sample(rng, n)
        assert x.conjugate().conjugate() == x
        assert (x * y).conjugate() == x.conjugate() * y.conjugate()


@pytest.mark.parametrize('n, m', [(1, 8), (3, 24), (4, 8), (8, 24), (6, 24)])
def test_embed_is_ring_morphism(rng: random.Random, n: int, m: int) -> None:
    """Test that embedding preserves sums and products and is injective."""
    for _ in range(10):
        x, y = _sample(rng, n), _sample(rng, n)
        assert (x * y).embed(m) == x.embed(m) * y.embed(m)
        assert (x + y).embed(m) == x.embed(m) + y.embed(m)
        assert (x.embed(m) == y.embed(m)) == (x == y)


@pytest.mark.parametrize('n', [3, 8, 12])
def test_algebraic_integers_closed(rng: random.Random, n: int) -> None:
    """Test that sums and products of algebraic integers stay integral."""
    for _ in range(10):
        x, y = _sample(rng, n, integral=True), _sample(rng, n, integral=True)
        assert (x + y).is_algebraic_integer()
        assert (x * y).is_algebraic_integer()


def test_trace_squared_is_not_integral() -> None:
    """Test 1/2 - ω_8 + 1/2·ω_8^2 against the integrality check."""
    omega = root_of_unity(8, 1)
    x = Fraction(1, 2) - omega + omega ** 2 / 2
    assert x.coeffs == (Fraction(1, 2), Fraction(-1), Fraction(1, 2), Fraction(0))
    assert not x.is_algebraic_integer()
    assert root_of_unity(8, 1).is_algebraic_integer()


@pytest.mark.parametrize('n, e', [(8, 1), (8, 2), (8, 4), (8, 6), (12, 3), (12, 8), (24, 9), (5, 0), (6, 4)])
def test_root_of_unity_order(n: int, e: int) -> None:
    """Test that ω_n^e has multiplicative order n / gcd(n, e)."""
    x = root_of_unity(n, e)
    order = next(m for m in range(1, n + 1) if x ** m == CycloElement.one(n))
    assert order == n // gcd(n, e)


def test_inexact_coordinates_rejected() -> None:
    """Test that floating-point coordinates are refused."""
    with pytest.raises(TypeError):
        CycloElement(4, (0.5, 0))
