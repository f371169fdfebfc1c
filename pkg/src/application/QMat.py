import logging
from collections import deque
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from math import lcm
from numbers import Rational

from src.application.CustomError import BadAxes, NotInSigmaPM, OrderMismatch, UnsupportedField
from src.application.Cyclotomic import CycloElement, imag_unit, root_of_unity, sqrt2

logger = logging.getLogger(__name__)


class Axis(IntEnum):
    """Direction index of a Pauli matrix."""
    X = 1
    Y = 2
    Z = 3

    @classmethod
    def parse(cls, value) -> 'Axis':
        try:
            return cls(int(value))
        except (TypeError, ValueError) as e:
            raise BadAxes(f'Axis must be one of 1, 2, 3, got {value!r}.') from e


def third_axis(a: int, b: int) -> Axis:
    """The axis completing two distinct axes to {1, 2, 3}."""
    if a == b:
        raise BadAxes(f'No completing axis for the repeated axis {a}.')
    return Axis(6 - a - b)


def levi_civita(a: int, b: int, c: int) -> int:
    """ε_abc = (a-b)(b-c)(c-a)/2."""
    return (a - b) * (b - c) * (c - a) // 2


@dataclass(frozen=True)
class Mat2:
    """
    2×2 matrix whose four entries live in the common field Q(ω_order).
    """
    order: int
    e11: CycloElement
    e12: CycloElement
    e21: CycloElement
    e22: CycloElement

    def __post_init__(self) -> None:
        for entry in self.entries:
            if entry.order != self.order:
                raise OrderMismatch(
                    f'Matrix declared over Q(ω_{self.order}) has an entry in Q(ω_{entry.order}).')

    @classmethod
    def from_rows(cls, order: int, rows) -> 'Mat2':
        """Builds a matrix from [[e11, e12], [e21, e22]]; rational entries are lifted into Q(ω_order)."""
        def lift(value) -> CycloElement:
            if isinstance(value, CycloElement):
                return value
            if isinstance(value, Rational):
                return CycloElement.from_rational(order, value)
            raise TypeError(f'Unsupported matrix entry {value!r}')

        (a, b), (c, d) = rows
        return cls(order, lift(a), lift(b), lift(c), lift(d))

    @classmethod
    def identity(cls, order: int) -> 'Mat2':
        return cls.from_rows(order, [[1, 0], [0, 1]])

    @property
    def entries(self) -> tuple[CycloElement, CycloElement, CycloElement, CycloElement]:
        return (self.e11, self.e12, self.e21, self.e22)

    def rows(self) -> list[list[CycloElement]]:
        return [[self.e11, self.e12], [self.e21, self.e22]]

    def key(self) -> tuple:
        """Flattened coordinate vectors, collision-free inside a fixed field."""
        return tuple(entry.coeffs for entry in self.entries)

    def _check(self, other: 'Mat2') -> None:
        if other.order != self.order:
            raise OrderMismatch(
                f'Cannot combine matrices over Q(ω_{self.order}) and Q(ω_{other.order}); embed first.')

    def __matmul__(self, other: 'Mat2') -> 'Mat2':
        self._check(other)
        return Mat2(
            self.order,
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
        )

    def __mul__(self, other) -> 'Mat2':
        if isinstance(other, Mat2):
            return self @ other
        return self.scalar_mul(other)

    def __rmul__(self, other) -> 'Mat2':
        return self.scalar_mul(other)

    def __add__(self, other: 'Mat2') -> 'Mat2':
        self._check(other)
        return Mat2(self.order, *(x + y for x, y in zip(self.entries, other.entries)))

    def __sub__(self, other: 'Mat2') -> 'Mat2':
        self._check(other)
        return Mat2(self.order, *(x - y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> 'Mat2':
        return Mat2(self.order, *(-x for x in self.entries))

    def scalar_mul(self, scalar) -> 'Mat2':
        if isinstance(scalar, CycloElement) and scalar.order != self.order:
            raise OrderMismatch(
                f'Scalar in Q(ω_{scalar.order}) cannot scale a matrix over Q(ω_{self.order}).')
        return Mat2(self.order, *(x * scalar for x in self.entries))

    def dagger(self) -> 'Mat2':
        """Conjugate transpose."""
        return Mat2(self.order, self.e11.conjugate(), self.e21.conjugate(),
                    self.e12.conjugate(), self.e22.conjugate())

    def det(self) -> CycloElement:
        return self.e11 * self.e22 - self.e12 * self.e21

    def trace(self) -> CycloElement:
        return self.e11 + self.e22

    def inverse(self) -> 'Mat2':
        inverse_det = self.det().invert()
        return Mat2(self.order, self.e22 * inverse_det, -self.e12 * inverse_det,
                    -self.e21 * inverse_det, self.e11 * inverse_det)

    def __pow__(self, exponent: int) -> 'Mat2':
        base = self if exponent >= 0 else self.inverse()
        exponent = abs(exponent)
        result = Mat2.identity(self.order)
        while exponent:
            if exponent & 1:
                result = result @ base
            base = base @ base
            exponent >>= 1
        return result

    def embed(self, m: int) -> 'Mat2':
        if m == self.order:
            return self
        return Mat2(m, *(x.embed(m) for x in self.entries))

    def is_diagonal(self) -> bool:
        return self.e12.is_zero() and self.e21.is_zero()

    def is_scalar(self) -> bool:
        return self.is_diagonal() and self.e11 == self.e22

    def is_unitary(self) -> bool:
        return self.dagger() @ self == Mat2.identity(self.order)

    def to_complex_rows(self) -> list[list[complex]]:
        return [[complex(x) for x in row] for row in self.rows()]

    def __str__(self) -> str:
        return f'[[{self.e11}, {self.e12}], [{self.e21}, {self.e22}]]'


def default_ambient(k: int = 1) -> int:
    """lcm(8, k): contains ω_k, i and 1/√2."""
    return lcm(8, k)


def pauli(a: int, ambient: int = 8) -> Mat2:
    """
    The Pauli matrix σ_a over Q(ω_ambient).

    Raises:
        UnsupportedField: If 4 does not divide the ambient order.
    """
    a = Axis.parse(a)
    if ambient < 1 or ambient % 4:
        raise UnsupportedField(f'Pauli matrices need an ambient order divisible by 4, got {ambient}.')
    if a is Axis.X:
        return Mat2.from_rows(ambient, [[0, 1], [1, 0]])
    if a is Axis.Y:
        i = imag_unit(ambient)
        return Mat2.from_rows(ambient, [[0, -i], [i, 0]])
    return Mat2.from_rows(ambient, [[1, 0], [0, -1]])


def identity_root(k: int, a: int, ambient: int | None = None) -> Mat2:
    """
    V_{k,a} = ½((1 + ω_k)I + (1 - ω_k)σ_a), a k-th root of the identity with determinant ω_k.

    Raises:
        UnsupportedField: If lcm(k, 4) does not divide the ambient order.
    """
    ambient = default_ambient(k) if ambient is None else ambient
    if k < 1 or ambient % lcm(k, 4):
        raise UnsupportedField(f'V_{{{k},{a}}} needs an ambient order divisible by lcm({k}, 4), got {ambient}.')
    omega = root_of_unity(k, 1).embed(ambient)
    half = Fraction(1, 2)
    return (Mat2.identity(ambient).scalar_mul((1 + omega) * half)
            + pauli(a, ambient).scalar_mul((1 - omega) * half))


def translation(a: int, b: int, ambient: int = 8) -> Mat2:
    """
    ρ_ab = (σ_a + σ_b)/√2, with ρ_aa = I.

    Raises:
        UnsupportedField: If 8 does not divide the ambient order.
    """
    a, b = Axis.parse(a), Axis.parse(b)
    if ambient < 1 or ambient % 8:
        raise UnsupportedField(f'ρ_{a}{b} needs an ambient order divisible by 8, got {ambient}.')
    if a == b:
        return Mat2.identity(ambient)
    return (pauli(a, ambient) + pauli(b, ambient)).scalar_mul(sqrt2(ambient) * Fraction(1, 2))


def conjugate_by(conjugator: Mat2, matrix: Mat2) -> Mat2:
    """C·U·C^-1."""
    return conjugator @ matrix @ conjugator.inverse()


def cyclic_conjugator(a: int, b: int, ambient: int = 8) -> Mat2:
    """
    ρ_ab·V†_{4,a}: conjugation by it sends σ_a → σ_b → σ_c → σ_a for ε_abc = 1,
    and likewise permutes the V_{k,·} and ρ_{··} families.

    Raises:
        BadAxes: If ε_abc ≠ 1 for the completing axis c.
    """
    a, b = Axis.parse(a), Axis.parse(b)
    c = third_axis(a, b)
    if levi_civita(a, b, c) != 1:
        raise BadAxes(f'Cyclic conjugator needs ε_{a}{b}{c} = 1.')
    return translation(a, b, ambient) @ identity_root(4, a, ambient).dagger()


@dataclass(frozen=True)
class SignedPauli:
    """One of ±σ_1, ±σ_2, ±σ_3."""
    axis: Axis
    sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, 'axis', Axis.parse(self.axis))
        if self.sign not in (1, -1):
            raise BadAxes(f'Sign of a signed Pauli matrix must be ±1, got {self.sign}.')

    def matrix(self, ambient: int = 8) -> Mat2:
        sigma = pauli(self.axis, ambient)
        return sigma if self.sign == 1 else -sigma

    def __neg__(self) -> 'SignedPauli':
        return SignedPauli(self.axis, -self.sign)

    def __str__(self) -> str:
        return f"{'+' if self.sign == 1 else '-'}σ{int(self.axis)}"


SIGMA_PM: tuple[SignedPauli, ...] = tuple(SignedPauli(axis, sign) for sign in (1, -1) for axis in Axis)

SignedPauliAction = tuple[SignedPauli, ...]


def signed_pauli_action(U: Mat2) -> SignedPauliAction:
    """
    Images of SIGMA_PM (in that order) under s ↦ U·s·U†.

    Raises:
        NotInSigmaPM: If some conjugate is not a signed Pauli matrix.
    """
    ambient = lcm(U.order, 4)
    U = U.embed(ambient)
    U_dagger = U.dagger()
    lookup = {s.matrix(ambient): s for s in SIGMA_PM}
    images = []
    for s in SIGMA_PM:
        image = U @ s.matrix(ambient) @ U_dagger
        if image not in lookup:
            raise NotInSigmaPM(f'Conjugating {s} gives {image}, which is not in Σ±.')
        images.append(lookup[image])
    return tuple(images)


def compose_actions(outer: SignedPauliAction, inner: SignedPauliAction) -> SignedPauliAction:
    """Action of A·B given the actions of A (outer) and B (inner)."""
    position = {s: i for i, s in enumerate(SIGMA_PM)}
    return tuple(outer[position[image]] for image in inner)


def action_group(generators: list[Mat2]) -> set[SignedPauliAction]:
    """All permutations of Σ± induced by products of the generators."""
    actions = [signed_pauli_action(g) for g in generators]
    identity = tuple(SIGMA_PM)
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for action in actions:
            product = compose_actions(current, action)
            if product not in seen:
                seen.add(product)
                queue.append(product)
    logger.debug(f'Σ± action group has {len(seen)} permutations')
    return seen


@dataclass(frozen=True)
class GateLetter:
    """
    A single gate in a word: V_{k,a} (kind 'V') or ρ_ab (kind 'R'), optionally daggered.
    """
    kind: str
    k: int = 1
    a: Axis = Axis.X
    b: Axis = Axis.X
    dagger: bool = False

    @property
    def degree(self) -> int:
        return self.k if self.kind == 'V' else 1

    def matrix(self, ambient: int) -> Mat2:
        if self.kind == 'V':
            gate = identity_root(self.k, self.a, ambient)
        else:
            gate = translation(self.a, self.b, ambient)
        return gate.dagger() if self.dagger else gate

    def __str__(self) -> str:
        body = f'V{self.k}_{int(self.a)}' if self.kind == 'V' else f'R{int(self.a)}{int(self.b)}'
        return body + ("'" if self.dagger else '')


GATE_ALIASES: dict[str, GateLetter] = {
    'X': GateLetter('V', 2, Axis.X),
    'Y': GateLetter('V', 2, Axis.Y),
    'Z': GateLetter('V', 2, Axis.Z),
    'S': GateLetter('V', 4, Axis.Z),
    'T': GateLetter('V', 8, Axis.Z),
    'H': GateLetter('R', 1, Axis.X, Axis.Z),
}


def evaluate_gate_word(letters: list[GateLetter], ambient: int | None = None) -> Mat2:
    """Left-to-right product of the gates, over lcm(8, all degrees) unless an ambient is given."""
    if ambient is None:
        ambient = lcm(8, *(letter.degree for letter in letters))
    result = Mat2.identity(ambient)
    for letter in letters:
        result = result @ letter.matrix(ambient)
    return result
