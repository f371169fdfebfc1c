import logging
import math
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from src.application.CustomError import (
    InfiniteGroup,
    NotAMember,
    NotApplicable,
    NotASubfield,
    SpecMismatch,
    UnsupportedField,
)
from src.application.Cyclotomic import CycloElement, root_of_unity
from src.application.QMat import (
    Axis,
    Mat2,
    conjugate_by,
    cyclic_conjugator,
    default_ambient,
    identity_root,
    levi_civita,
    third_axis,
    translation,
)

logger = logging.getLogger(__name__)

INFINITE = math.inf


class GroupKind(Enum):
    """Trichotomy of Pauli root groups."""
    CYCLIC = 'cyclic'
    POLYCYCLIC = 'polycyclic'
    SMOOTH = 'smooth'


@dataclass(frozen=True)
class Letter:
    """A generator letter: 'V' for the identity root, 'R' for the translation matrix."""
    symbol: str
    dagger: bool = False

    def __post_init__(self) -> None:
        if self.symbol not in ('V', 'R'):
            raise ValueError(f'Unknown generator letter {self.symbol!r}')

    def __str__(self) -> str:
        return self.symbol + ("'" if self.dagger else '')


Word = tuple[Letter, ...]

V_LETTER = Letter('V')
V_DAGGER = Letter('V', dagger=True)
R_LETTER = Letter('R')


def word_to_text(word: Word) -> str:
    return ' '.join(str(letter) for letter in word) if word else 'I'


@dataclass(frozen=True)
class GroupSpec:
    """
    The four indices of P = ⟨V_{k,a}, ρ_bc⟩.
    """
    k: int
    a: Axis
    b: Axis
    c: Axis

    def __post_init__(self) -> None:
        if not isinstance(self.k, int) or self.k < 1:
            raise UnsupportedField(f'Degree must be a positive integer, got {self.k!r}.')
        for name in ('a', 'b', 'c'):
            object.__setattr__(self, name, Axis.parse(getattr(self, name)))

    @property
    def kind(self) -> GroupKind:
        return classify(self)

    @property
    def ambient(self) -> int:
        return default_ambient(self.k)

    @property
    def translation_key(self) -> tuple[Axis, Axis] | None:
        """The unordered pair {b, c} in sorted order, or None for ρ_bb = I."""
        if self.b == self.c:
            return None
        return (min(self.b, self.c), max(self.b, self.c))

    @property
    def literal(self) -> str:
        return f'{self.k}:{int(self.a)}:{int(self.b)}{int(self.c)}'

    @property
    def label(self) -> str:
        return f'⟨V_{{{self.k},{int(self.a)}}}, ρ_{int(self.b)}{int(self.c)}⟩'

    def generators(self, ambient: int | None = None) -> tuple[Mat2, Mat2]:
        ambient = self.ambient if ambient is None else ambient
        return identity_root(self.k, self.a, ambient), translation(self.b, self.c, ambient)

    def __str__(self) -> str:
        return self.literal


def classify(spec: GroupSpec) -> GroupKind:
    """
    Sorts a spec by how its translation sits against the root axis.

    Args:
        spec (GroupSpec): The group ⟨V_{k,a}, ρ_bc⟩.

    Returns:
        GroupKind: CYCLIC when b = c, POLYCYCLIC when a, b, c are distinct, SMOOTH otherwise.
    """
    if spec.b == spec.c:
        return GroupKind.CYCLIC
    if levi_civita(spec.a, spec.b, spec.c) != 0:
        return GroupKind.POLYCYCLIC
    return GroupKind.SMOOTH


def is_finite(spec: GroupSpec) -> bool:
    """
    Args:
        spec (GroupSpec): The group to decide.

    Returns:
        bool: False exactly for smooth specs with k outside {1, 2, 4}.
    """
    return classify(spec) is not GroupKind.SMOOTH or spec.k in (1, 2, 4)


_SMOOTH_ORDERS = {1: 2, 2: 16, 4: 192}


def predicted_order(spec: GroupSpec) -> int | float:
    """Group order, or INFINITE."""
    kind = classify(spec)
    if kind is GroupKind.CYCLIC:
        return spec.k
    if kind is GroupKind.POLYCYCLIC:
        return 2 * spec.k ** 2
    return _SMOOTH_ORDERS.get(spec.k, INFINITE)


def default_cap(spec: GroupSpec) -> int:
    order = predicted_order(spec)
    return 10 * order if order != INFINITE else 4096


def structure_label(spec: GroupSpec) -> str:
    """
    Name of the isomorphism type, backed by orders and defining relations only.

    Raises:
        InfiniteGroup: If the group is infinite.
    """
    if not is_finite(spec):
        raise InfiniteGroup(f'{spec.label} is infinite and has no finite structure label.')
    k = spec.k
    kind = classify(spec)
    if kind is GroupKind.CYCLIC:
        return f'C_{k}'
    if kind is GroupKind.POLYCYCLIC:
        return f'C_{k} ≀ C_2 = S({k},2)'
    return {1: 'C_2', 2: 'D_8 (16 elements)', 4: '2O ⋊ C_4'}[k]


def evaluate_word(spec: GroupSpec, word: Word, ambient: int | None = None) -> Mat2:
    """Left-to-right product of generator letters of the spec."""
    ambient = spec.ambient if ambient is None else ambient
    V, R = spec.generators(ambient)
    images = {
        V_LETTER: V,
        V_DAGGER: V.dagger(),
        R_LETTER: R,
        Letter('R', dagger=True): R.dagger(),
    }
    result = Mat2.identity(ambient)
    for letter in word:
        result = result @ images[letter]
    return result


@dataclass(frozen=True)
class CapExceeded:
    """Enumeration stopped after finding more than `cap` distinct elements."""
    spec: GroupSpec
    cap: int
    ambient: int


@dataclass(frozen=True)
class FiniteGroup:
    """
    A fully enumerated Pauli root group.

    Attributes:
        spec (GroupSpec): The generating spec.
        ambient (int): The field order all elements live in.
        elements (tuple[Mat2, ...]): Elements in breadth-first discovery order, identity first.
        words (tuple[Word, ...]): A shortest generator word for each element.
    """
    spec: GroupSpec
    ambient: int
    elements: tuple[Mat2, ...]
    words: tuple[Word, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, '_index', {element: i for i, element in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, matrix: Mat2) -> bool:
        return matrix in self._index

    def index_of(self, matrix: Mat2) -> int | None:
        return self._index.get(matrix)

    def word_of(self, matrix: Mat2) -> Word | None:
        index = self._index.get(matrix)
        return None if index is None else self.words[index]


_GENERATOR_LETTERS = {'V': V_LETTER, 'R': R_LETTER}


@lru_cache(maxsize=512)
def _closure(spec: GroupSpec, cap: int, ambient: int, generator_order: str) -> FiniteGroup | CapExceeded:
    V, R = spec.generators(ambient)
    generators = [(_GENERATOR_LETTERS[s], {'V': V, 'R': R}[s]) for s in generator_order]
    identity = Mat2.identity(ambient)
    elements = [identity]
    words: list[Word] = [()]
    index = {identity: 0}
    queue = deque([0])
    while queue:
        current = queue.popleft()
        for letter, generator in generators:
            product = elements[current] @ generator
            if product in index:
                continue
            if len(elements) >= cap:
                logger.info(f'Enumeration of {spec.label} exceeded cap {cap}')
                return CapExceeded(spec=spec, cap=cap, ambient=ambient)
            index[product] = len(elements)
            elements.append(product)
            words.append(words[current] + (letter,))
            queue.append(index[product])
    logger.debug(f'Enumerated {spec.label}: {len(elements)} elements over Q(ω_{ambient})')
    return FiniteGroup(spec=spec, ambient=ambient, elements=tuple(elements), words=tuple(words))


def enumerate_group(spec: GroupSpec,
                    cap: int | None = None,
                    ambient: int | None = None,
                    generator_order: str = 'VR') -> FiniteGroup | CapExceeded:
    """
    Breadth-first closure of {V_{k,a}, ρ_bc} under right multiplication.

    Args:
        spec (GroupSpec): The group to enumerate.
        cap (int, optional): Maximum number of distinct elements. Defaults to default_cap(spec).
        ambient (int, optional): Field order, a multiple of lcm(8, k). Defaults to lcm(8, k).
        generator_order (str): Order in which the letters 'V' and 'R' are tried.

    Returns:
        FiniteGroup | CapExceeded: The whole group with shortest words, or the overflow result.
    """
    cap = default_cap(spec) if cap is None else cap
    if cap < 1:
        raise ValueError(f'Enumeration cap must be positive, got {cap}.')
    ambient = spec.ambient if ambient is None else ambient
    if ambient % spec.ambient:
        raise UnsupportedField(f'Ambient Q(ω_{ambient}) does not contain the entries of {spec.label}.')
    if sorted(generator_order) != ['R', 'V']:
        raise ValueError(f'generator_order must be a permutation of "VR", got {generator_order!r}.')
    return _closure(spec, cap, ambient, generator_order)


def member(group: FiniteGroup, matrix: Mat2) -> tuple[bool, Word | None]:
    """
    Membership test with a realizing generator word.

    Raises:
        NotASubfield: If the matrix entries do not embed into the group's field.
    """
    word = group.word_of(matrix.embed(group.ambient))
    return word is not None, word


def scalar_subgroup(group: FiniteGroup) -> list[CycloElement]:
    """All λ with λ·I in the group, in enumeration order."""
    return [element.e11 for element in group if element.is_scalar()]


def conjugator(p: GroupSpec, q: GroupSpec, ambient: int | None = None) -> Mat2:
    """
    A matrix C with C·P·C^-1 = Q mapping generators onto generators, for same-kind, same-degree specs.

    Cyclic shifts of the axes come from the cyclic conjugator ρ_12·V†_{4,1}; smooth specs sharing the
    root but not the translation orientation are first flipped by V_{4,a} or its dagger.

    Raises:
        SpecMismatch: If the specs differ in degree or kind.
    """
    if p.k != q.k or classify(p) is not classify(q):
        raise SpecMismatch(f'{p.label} and {q.label} are not of the same kind and degree.')
    ambient = p.ambient if ambient is None else ambient
    flip = Mat2.identity(ambient)
    a = p.a
    if classify(p) is GroupKind.SMOOTH:
        b_p = p.c if p.b == a else p.b
        b_q = q.c if q.b == q.a else q.b
        orientation_p = levi_civita(a, b_p, third_axis(a, b_p))
        orientation_q = levi_civita(q.a, b_q, third_axis(q.a, b_q))
        if orientation_p != orientation_q:
            v4 = identity_root(4, a, ambient)
            flip = v4 if orientation_p == 1 else v4.dagger()
    shift = (q.a - a) % 3
    return cyclic_conjugator(Axis.X, Axis.Y, ambient) ** shift @ flip


@dataclass(frozen=True)
class PolycyclicNF:
    """Exponents of V^s·(ρVρ)^t·ρ^u."""
    s: int
    t: int
    u: int

    def __post_init__(self) -> None:
        if self.s < 0 or self.t < 0 or self.u not in (0, 1):
            raise ValueError(f'Invalid normal form ({self.s}, {self.t}, {self.u}).')


def evaluate_nf(spec: GroupSpec, nf: PolycyclicNF, ambient: int | None = None) -> Mat2:
    """
    Multiplies out V^s·(ρVρ)^t·ρ^u; inverse of polycyclic_nf.

    Args:
        spec (GroupSpec): Polycyclic spec whose V and ρ are used.
        nf (PolycyclicNF): The exponents (s, t, u).
        ambient (int, optional): Field order of the result. Defaults to the spec's ambient field.

    Returns:
        Mat2: The group element.
    """
    ambient = spec.ambient if ambient is None else ambient
    V, R = spec.generators(ambient)
    return V ** nf.s @ (R @ V @ R) ** nf.t @ R ** nf.u


def _root_exponent(x: CycloElement, k: int) -> int | None:
    for e in range(k):
        if root_of_unity(k, e).embed(x.order) == x:
            return e
    return None


def polycyclic_nf(spec: GroupSpec, matrix: Mat2) -> PolycyclicNF:
    """
    The unique (s, t, u) with matrix = V^s·(ρVρ)^t·ρ^u for the spec's own V and ρ.

    The matrix is conjugated into the frame ⟨V_{k,3}, ρ_12⟩, where the first two factors are
    diag(ω_k^t, ω_k^s), and the exponents are read off the diagonal.

    Raises:
        NotApplicable: If the spec is not polycyclic.
        NotAMember: If the matrix is not in the group.
    """
    if classify(spec) is not GroupKind.POLYCYCLIC:
        raise NotApplicable(f'{spec.label} is not polycyclic.')
    try:
        matrix = matrix.embed(spec.ambient)
    except NotASubfield as e:
        raise NotAMember(f'{matrix} has entries outside Q(ω_{spec.ambient}).') from e
    frame = GroupSpec(spec.k, Axis.Z, Axis.X, Axis.Y)
    framed = conjugate_by(conjugator(spec, frame), matrix)
    u = 0 if framed.is_diagonal() else 1
    if u:
        framed = framed @ translation(Axis.X, Axis.Y, spec.ambient)
    if not framed.is_diagonal():
        raise NotAMember(f'{matrix} is not an element of {spec.label}.')
    t = _root_exponent(framed.e11, spec.k)
    s = _root_exponent(framed.e22, spec.k)
    if s is None or t is None:
        raise NotAMember(f'{matrix} is not an element of {spec.label}.')
    nf = PolycyclicNF(s=s, t=t, u=u)
    if evaluate_nf(spec, nf) != matrix:
        raise NotAMember(f'{matrix} is not an element of {spec.label}.')
    return nf


@dataclass(frozen=True)
class InfinitenessCertificate:
    """
    Tr(V_{k,a}·ρ_ab)² written over the power basis of Q(ω_k); a non-integral coordinate shows the
    product has infinite order.
    """
    spec: GroupSpec
    trace_squared: CycloElement
    coordinates: tuple[Fraction, ...]
    witness_index: int

    def verify(self) -> bool:
        V, R = self.spec.generators()
        trace = (V @ R).trace()
        return ((trace * trace).descend(self.spec.k) == self.trace_squared
                and self.trace_squared.coeffs == self.coordinates
                and self.coordinates[self.witness_index].denominator != 1)


def infiniteness_certificate(spec: GroupSpec) -> InfinitenessCertificate:
    """
    Raises:
        NotApplicable: If the spec is not smooth or every coordinate is integral (k in {1, 2, 4}).
    """
    if classify(spec) is not GroupKind.SMOOTH:
        raise NotApplicable(f'{spec.label} is {classify(spec).value}, hence finite.')
    V, R = spec.generators()
    trace = (V @ R).trace()
    trace_squared = (trace * trace).descend(spec.k)
    coordinates = trace_squared.coeffs
    non_integral = [i for i, c in enumerate(coordinates) if c.denominator != 1]
    if not non_integral:
        raise NotApplicable(
            f'Tr(U)² = {trace_squared} is an algebraic integer; {spec.label} is not certified infinite.')
    logger.debug(f'Certified {spec.label} infinite via coordinate {non_integral[0]}')
    return InfinitenessCertificate(spec=spec, trace_squared=trace_squared,
                                   coordinates=coordinates, witness_index=non_integral[0])


def all_specs(k: int) -> list[GroupSpec]:
    """The twelve specs of degree k, translation pairs taken unordered and ρ_aa = I written as bb = aa."""
    specs = []
    for a in Axis:
        specs.append(GroupSpec(k, a, a, a))
        for b, c in ((Axis.X, Axis.Y), (Axis.X, Axis.Z), (Axis.Y, Axis.Z)):
            specs.append(GroupSpec(k, a, b, c))
    return specs
