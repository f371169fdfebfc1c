import logging
import random
from dataclasses import dataclass
from fractions import Fraction

from src.application.CustomError import NotApplicable, NotASubfield, NotReducible
from src.application.Cyclotomic import CycloElement
from src.application.PauliRootGroups import FiniteGroup, GroupKind, classify
from src.application.QMat import Mat2

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class F9:
    """re + im·ī in F_3[ī]/(ī² + 1)."""
    re: int = 0
    im: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, 're', self.re % 3)
        object.__setattr__(self, 'im', self.im % 3)

    def __add__(self, other: 'F9') -> 'F9':
        return F9(self.re + other.re, self.im + other.im)

    def __sub__(self, other: 'F9') -> 'F9':
        return F9(self.re - other.re, self.im - other.im)

    def __neg__(self) -> 'F9':
        return F9(-self.re, -self.im)

    def __mul__(self, other: 'F9') -> 'F9':
        return F9(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def __pow__(self, exponent: int) -> 'F9':
        if exponent < 0:
            return self.inverse() ** -exponent
        result, base = ONE, self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def inverse(self) -> 'F9':
        if self.is_zero():
            raise ZeroDivisionError('0 has no inverse in F_9')
        return self ** 7

    def frobenius_conjugate(self) -> 'F9':
        """x ↦ x³, the non-trivial automorphism of F_9."""
        return self ** 3

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        imaginary = 'ī' if self.im == 1 else '2ī'
        return imaginary if self.re == 0 else f'{self.re}+{imaginary}'


ZERO = F9(0, 0)
ONE = F9(1, 0)
IBAR = F9(0, 1)
OMEGA8_IMAGE = F9(1, -1)


@dataclass(frozen=True)
class GUMat:
    e11: F9
    e12: F9
    e21: F9
    e22: F9

    @classmethod
    def identity(cls) -> 'GUMat':
        return cls(ONE, ZERO, ZERO, ONE)

    @property
    def entries(self) -> tuple[F9, F9, F9, F9]:
        return (self.e11, self.e12, self.e21, self.e22)

    def __matmul__(self, other: 'GUMat') -> 'GUMat':
        return GUMat(
            self.e11 * other.e11 + self.e12 * other.e21,
            self.e11 * other.e12 + self.e12 * other.e22,
            self.e21 * other.e11 + self.e22 * other.e21,
            self.e21 * other.e12 + self.e22 * other.e22,
        )

    def __add__(self, other: 'GUMat') -> 'GUMat':
        return GUMat(*(x + y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> 'GUMat':
        return GUMat(*(-x for x in self.entries))

    def dagger(self) -> 'GUMat':
        """Transpose composed with the Frobenius conjugate."""
        return GUMat(self.e11.frobenius_conjugate(), self.e21.frobenius_conjugate(),
                     self.e12.frobenius_conjugate(), self.e22.frobenius_conjugate())

    def __str__(self) -> str:
        return f'[[{self.e11}, {self.e12}], [{self.e21}, {self.e22}]]'


def _reduce_rational(c: Fraction) -> F9:
    denominator, exponent = c.denominator, 0
    while denominator % 2 == 0:
        denominator //= 2
        exponent += 1
    if denominator != 1:
        raise NotReducible(f'Coefficient {c} has a denominator with an odd prime factor.')
    # 1/2 ↦ 2 since 2·2 = 1 in F_3
    return F9(c.numerator * pow(2, exponent, 3), 0)


def _to_omega8(x: CycloElement) -> CycloElement:
    try:
        return x.embed(8) if 8 % x.order == 0 else x.descend(8)
    except NotASubfield as e:
        raise NotReducible(f'{x} does not lie in Q(ω_8).') from e


def reduce_element(x: CycloElement) -> F9:
    """Ring morphism Z[1/2, ω_8] → F_9 sending ω_8 ↦ 1 - ī."""
    result = ZERO
    power = ONE
    for c in _to_omega8(x).coeffs:
        result = result + _reduce_rational(c) * power
        power = power * OMEGA8_IMAGE
    return result


def reduce_mod3(matrix: Mat2) -> GUMat:
    """
    Raises:
        NotReducible: If an entry is outside Q(ω_8) or has a denominator that is not a power of 2.
    """
    return GUMat(*(reduce_element(x) for x in matrix.entries))


def is_gu29(matrix: GUMat) -> bool:
    """U†U = ±I."""
    product = matrix.dagger() @ matrix
    identity = GUMat.identity()
    return product == identity or product == -identity


@dataclass(frozen=True)
class GU29Report:
    homomorphism: bool
    injective: bool
    image_size: int
    in_gu29: bool
    sample_size: int


def verify_gu29_isomorphism(clifford: FiniteGroup, sample_size: int = 10000, seed: int = 0) -> GU29Report:
    """
    Checks that reduction mod 3 is an injective homomorphism from the enumerated Clifford group into GU(2,9).

    Multiplicativity is tested on every element times each generator and on a seeded random sample of pairs.

    Raises:
        NotApplicable: If the group is not the smooth degree-4 group.
    """
    spec = clifford.spec
    if spec.k != 4 or classify(spec) is not GroupKind.SMOOTH:
        raise NotApplicable(f'{spec.label} is not the Clifford group.')
    images = [reduce_mod3(element) for element in clifford]
    generators = [g.embed(clifford.ambient) for g in spec.generators()]

    homomorphism = True
    for element, image in zip(clifford, images):
        for generator in generators:
            product_index = clifford.index_of(element @ generator)
            if product_index is None or images[product_index] != image @ reduce_mod3(generator):
                homomorphism = False

    rng = random.Random(seed)
    elements = clifford.elements
    for _ in range(sample_size):
        i, j = rng.randrange(len(elements)), rng.randrange(len(elements))
        if reduce_mod3(elements[i] @ elements[j]) != images[i] @ images[j]:
            homomorphism = False
            break

    image_size = len(set(images))
    report = GU29Report(
        homomorphism=homomorphism,
        injective=image_size == len(clifford),
        image_size=image_size,
        in_gu29=all(is_gu29(image) for image in images),
        sample_size=sample_size,
    )
    logger.info(f'GU(2,9) check for {spec.label}: {report}')
    return report
