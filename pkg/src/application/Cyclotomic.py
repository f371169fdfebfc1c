import cmath
import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from numbers import Rational

import sympy
from sympy.polys.specialpolys import cyclotomic_poly

from src.application.CustomError import DivisionByZero, NotASubfield, OrderMismatch, UnsupportedField

logger = logging.getLogger(__name__)

_X = sympy.Symbol('x')


def phi(n: int) -> int:
    """Euler's totient, the degree of Q(ω_n) over Q."""
    if n < 1:
        raise UnsupportedField(f'Cyclotomic order must be positive, got {n}.')
    return int(sympy.totient(n))


@dataclass(frozen=True)
class CyclotomicField:
    """
    Reduction data of Q(ω_n).

    Attributes:
        order (int): The label n of the field.
        degree (int): φ(n), the length of every coordinate vector.
        power_table (tuple): Integer coordinates of ω_n^j for 0 <= j < max(n, 2φ(n) - 1).
    """
    order: int
    degree: int
    power_table: tuple[tuple[int, ...], ...]


_FIELDS: dict[int, CyclotomicField] = {}
_FIELDS_LOCK = threading.Lock()


def _build_field(n: int) -> CyclotomicField:
    degree = phi(n)
    # Φ_n = x^d + low[d-1] x^(d-1) + ... + low[0]
    low = [int(c) for c in reversed(sympy.Poly(cyclotomic_poly(n, _X), _X).all_coeffs())][:-1]
    power = tuple(1 if i == 0 else 0 for i in range(degree))
    table = [power]
    for _ in range(max(n, 2 * degree - 1) - 1):
        top = power[-1]
        shifted = (0,) + power[:-1]
        power = tuple(s - top * c for s, c in zip(shifted, low))
        table.append(power)
    logger.debug(f'Built reduction table of Q(ω_{n}), degree {degree}')
    return CyclotomicField(order=n, degree=degree, power_table=tuple(table))


def cyclotomic_field(n: int) -> CyclotomicField:
    """Returns the cached reduction data of Q(ω_n), building it on first use."""
    field = _FIELDS.get(n)
    if field is None:
        if n < 1:
            raise UnsupportedField(f'Cyclotomic order must be positive, got {n}.')
        with _FIELDS_LOCK:
            field = _FIELDS.get(n)
            if field is None:
                field = _build_field(n)
                _FIELDS[n] = field
    return field


@dataclass(frozen=True)
class CycloElement:
    """
    Exact element of Q(ω_n) as rational coordinates over the power basis 1, ω_n, ..., ω_n^(φ(n)-1).

    Attributes:
        order (int): The field label n.
        coeffs (tuple[Fraction, ...]): The φ(n) coordinates, always reduced modulo Φ_n.
    """
    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        field = cyclotomic_field(self.order)
        inexact = [c for c in self.coeffs if not isinstance(c, Rational)]
        if inexact:
            raise TypeError(f'Coordinates must be exact rationals, got {inexact[0]!r}.')
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != field.degree:
            raise UnsupportedField(
                f'Q(ω_{self.order}) needs {field.degree} coordinates, got {len(coeffs)}.')
        object.__setattr__(self, 'coeffs', coeffs)

    @classmethod
    def _raw(cls, order: int, coeffs) -> 'CycloElement':
        element = object.__new__(cls)
        object.__setattr__(element, 'order', order)
        object.__setattr__(element, 'coeffs', tuple(coeffs))
        return element

    @classmethod
    def from_rational(cls, order: int, value) -> 'CycloElement':
        degree = cyclotomic_field(order).degree
        return cls._raw(order, (Fraction(value),) + (Fraction(0),) * (degree - 1))

    @classmethod
    def zero(cls, order: int) -> 'CycloElement':
        return cls.from_rational(order, 0)

    @classmethod
    def one(cls, order: int) -> 'CycloElement':
        return cls.from_rational(order, 1)

    @classmethod
    def _combine(cls, order: int, terms) -> 'CycloElement':
        """Sums c·ω_order^j over (c, j) pairs with j inside the power table."""
        field = cyclotomic_field(order)
        result = [Fraction(0)] * field.degree
        for c, j in terms:
            if c:
                for i, t in enumerate(field.power_table[j]):
                    if t:
                        result[i] += c * t
        return cls._raw(order, result)

    def _coerce(self, other) -> 'CycloElement':
        if isinstance(other, CycloElement):
            if other.order != self.order:
                raise OrderMismatch(
                    f'Cannot combine elements of Q(ω_{self.order}) and Q(ω_{other.order}); embed first.')
            return other
        if isinstance(other, Rational):
            return CycloElement.from_rational(self.order, other)
        return NotImplemented

    def __add__(self, other) -> 'CycloElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElement._raw(self.order, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> 'CycloElement':
        return CycloElement._raw(self.order, (-a for a in self.coeffs))

    def __sub__(self, other) -> 'CycloElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloElement._raw(self.order, (a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other) -> 'CycloElement':
        return -self + other

    def __mul__(self, other) -> 'CycloElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        product = [Fraction(0)] * (2 * len(self.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        product[i + j] += a * b
        return CycloElement._combine(self.order, ((c, j) for j, c in enumerate(product)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> 'CycloElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other) -> 'CycloElement':
        return self.invert() * other

    def __pow__(self, exponent: int) -> 'CycloElement':
        base = self if exponent >= 0 else self.invert()
        exponent = abs(exponent)
        result = CycloElement.one(self.order)
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def invert(self) -> 'CycloElement':
        """
        Multiplicative inverse through the field norm: the product of all Galois conjugates is rational.

        Raises:
            DivisionByZero: If the element is zero.
        """
        if self.is_zero():
            raise DivisionByZero(f'Cannot invert zero in Q(ω_{self.order}).')
        cofactor = CycloElement.one(self.order)
        for j in range(2, self.order + 1):
            if gcd(j, self.order) == 1 and j % self.order != 1:
                cofactor = cofactor * self.galois_conjugate(j)
        norm = (self * cofactor).coeffs[0]
        return CycloElement._raw(self.order, (c / norm for c in cofactor.coeffs))

    def galois_conjugate(self, j: int) -> 'CycloElement':
        """Image under the automorphism ω_n ↦ ω_n^j, for j coprime to n."""
        if gcd(j, self.order) != 1:
            raise UnsupportedField(f'{j} is not a unit modulo {self.order}.')
        return CycloElement._combine(
            self.order, ((c, (i * j) % self.order) for i, c in enumerate(self.coeffs)))

    def conjugate(self) -> 'CycloElement':
        """Complex conjugation, the automorphism ω_n ↦ ω_n^-1."""
        return self.galois_conjugate(-1 % self.order if self.order > 1 else 1)

    def embed(self, m: int) -> 'CycloElement':
        """
        Represents the same complex number in Q(ω_m) via ω_n = ω_m^(m/n).

        Raises:
            NotASubfield: If n does not divide m.
        """
        if m < 1 or m % self.order:
            raise NotASubfield(f'Q(ω_{self.order}) is not a subfield of Q(ω_{m}).')
        if m == self.order:
            return self
        step = m // self.order
        return CycloElement._combine(m, ((c, i * step) for i, c in enumerate(self.coeffs)))

    def descend(self, n: int) -> 'CycloElement':
        """
        Rewrites the element over the power basis of the subfield Q(ω_n).

        Raises:
            NotASubfield: If n does not divide the order or the element is not in Q(ω_n).
        """
        if n < 1 or self.order % n:
            raise NotASubfield(f'Q(ω_{n}) is not a subfield of Q(ω_{self.order}).')
        basis = [root_of_unity(n, i).embed(self.order) for i in range(phi(n))]
        coordinates = solve_in_span(basis, self)
        if coordinates is None:
            raise NotASubfield(f'{self} does not lie in Q(ω_{n}).')
        return CycloElement._raw(n, coordinates)

    def is_algebraic_integer(self) -> bool:
        """True iff every power-basis coordinate is an integer."""
        return all(c.denominator == 1 for c in self.coeffs)

    def __complex__(self) -> complex:
        return sum(
            (float(c) * cmath.exp(2j * cmath.pi * i / self.order) for i, c in enumerate(self.coeffs)),
            0j,
        )

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            power = '' if i == 0 else (f'ω{self.order}' if i == 1 else f'ω{self.order}^{i}')
            if not power:
                terms.append(str(c))
            elif c == 1:
                terms.append(power)
            elif c == -1:
                terms.append(f'-{power}')
            else:
                terms.append(f'{c}·{power}')
        return ' + '.join(terms).replace('+ -', '- ') if terms else '0'


def root_of_unity(n: int, e: int) -> CycloElement:
    """ω_n^e in Q(ω_n), exponent reduced modulo n."""
    field = cyclotomic_field(n)
    return CycloElement._raw(n, (Fraction(c) for c in field.power_table[e % n]))


def solve_in_span(spanning: list[CycloElement], target: CycloElement) -> tuple[Fraction, ...] | None:
    """
    Finds rational c with Σ c_i·spanning[i] = target, or None if the target is outside the span.

    Free parameters of an underdetermined system are set to zero.
    """
    def to_rational(c: Fraction) -> sympy.Rational:
        return sympy.Rational(c.numerator, c.denominator)

    matrix = sympy.Matrix([[to_rational(c) for c in v.coeffs] for v in spanning]).T
    rhs = sympy.Matrix([to_rational(c) for c in target.coeffs])
    try:
        solution, params = matrix.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    if params.shape[0]:
        solution = solution.subs({p: 0 for p in params})
    return tuple(Fraction(int(v.p), int(v.q)) for v in solution)


def sqrt2(ambient: int) -> CycloElement:
    """√2 = ω_8 + ω_8^-1 inside Q(ω_ambient)."""
    if ambient < 1 or ambient % 8:
        raise UnsupportedField(f'√2 needs an ambient order divisible by 8, got {ambient}.')
    omega8 = root_of_unity(8, 1)
    return (omega8 + omega8.conjugate()).embed(ambient)


def imag_unit(ambient: int) -> CycloElement:
    """i = ω_4 inside Q(ω_ambient)."""
    if ambient < 1 or ambient % 4:
        raise UnsupportedField(f'i needs an ambient order divisible by 4, got {ambient}.')
    return root_of_unity(4, 1).embed(ambient)


def in_real_quadratic_subfield(x: CycloElement, k: int) -> bool:
    """
    Decides whether x lies in Q(ω_k, √2), the Q-span of ω_k^i and √2·ω_k^i for 0 <= i < φ(k).

    Raises:
        UnsupportedField: If 4 divides k or the order of x is not a multiple of lcm(8, k).
    """
    if k < 1 or k % 4 == 0 or x.order % lcm(8, k):
        raise UnsupportedField(
            f'Membership in Q(ω_{k}, √2) needs 4 ∤ k and an ambient divisible by lcm(8, {k}); '
            f'got ambient {x.order}.')
    root2 = sqrt2(x.order)
    spanning = []
    for i in range(phi(k)):
        power = root_of_unity(k, i).embed(x.order)
        spanning.extend((power, root2 * power))
    return solve_in_span(spanning, x) is not None
