import logging
from dataclasses import dataclass
from enum import Enum
from math import lcm

from src.application.CustomError import DegreeMismatch, NoPositiveRelation, SpecMismatch
from src.application.Cyclotomic import CycloElement, in_real_quadratic_subfield
from src.application.PauliRootGroups import (
    R_LETTER,
    V_DAGGER,
    V_LETTER,
    CapExceeded,
    GroupKind,
    GroupSpec,
    Letter,
    Word,
    classify,
    default_cap,
    enumerate_group,
    evaluate_word,
    is_finite,
    predicted_order,
)
from src.application.QMat import (
    Axis,
    Mat2,
    conjugate_by,
    cyclic_conjugator,
    levi_civita,
    third_axis,
    translation,
)

logger = logging.getLogger(__name__)


class Answer(Enum):
    EQUAL = 'Equal'
    NOT_EQUAL = 'NotEqual'
    SUBGROUP = 'Subgroup'
    NOT_SUBGROUP = 'NotSubgroup'
    UNDETERMINED = 'Undetermined'


POSITIVE_ANSWERS = (Answer.EQUAL, Answer.SUBGROUP)
NEGATIVE_ANSWERS = (Answer.NOT_EQUAL, Answer.NOT_SUBGROUP)

OUTSIDE_THEOREMS = 'outside-paper-theorems'


def generator_names(spec: GroupSpec) -> tuple[str, str]:
    return f'V_{{{spec.k},{int(spec.a)}}}', f'ρ_{int(spec.b)}{int(spec.c)}'


@dataclass(frozen=True)
class WitnessEntry:
    """A word over the source generators that evaluates to one generator of the target."""
    target_name: str
    target: Mat2
    word: Word


@dataclass(frozen=True)
class Witness:
    """
    Constructive containment certificate.

    Attributes:
        source (GroupSpec): The group whose generators the words are written in.
        target (GroupSpec): The group whose generators are expressed.
        entries (tuple[WitnessEntry, ...]): One word per target generator, so target ≤ source.
        converse (tuple[WitnessEntry, ...]): Source generators over target generators; filled for equality only.
    """
    source: GroupSpec
    target: GroupSpec
    entries: tuple[WitnessEntry, ...]
    converse: tuple[WitnessEntry, ...] = ()

    @property
    def ambient(self) -> int:
        return lcm(self.source.ambient, self.target.ambient)

    def verify(self) -> bool:
        """Every word evaluates exactly to its declared generator."""
        ambient = self.ambient
        forward = all(evaluate_word(self.source, entry.word, ambient) == entry.target
                      for entry in self.entries)
        backward = all(evaluate_word(self.target, entry.word, ambient) == entry.target
                       for entry in self.converse)
        return forward and backward

    def dagger_free(self) -> 'Witness':
        """Rewrites V† as V^(k-1) and ρ† as ρ."""
        def expand(word: Word, k: int) -> Word:
            letters = []
            for letter in word:
                if letter.symbol == 'V' and letter.dagger:
                    letters.extend([V_LETTER] * (k - 1))
                else:
                    letters.append(Letter(letter.symbol))
            return tuple(letters)

        return Witness(
            source=self.source,
            target=self.target,
            entries=tuple(WitnessEntry(e.target_name, e.target, expand(e.word, self.source.k))
                          for e in self.entries),
            converse=tuple(WitnessEntry(e.target_name, e.target, expand(e.word, self.target.k))
                           for e in self.converse),
        )


@dataclass(frozen=True)
class OrderGap:
    """
    Equality would force `larger` into `smaller`, but |larger| > |smaller|.
    """
    smaller: GroupSpec
    smaller_order: int
    larger: GroupSpec
    larger_order: int | float
    note: str = ''

    def recheck(self) -> bool:
        return (predicted_order(self.smaller) == self.smaller_order
                and predicted_order(self.larger) == self.larger_order
                and self.smaller_order < self.larger_order)


@dataclass(frozen=True)
class FieldObstruction:
    """
    After conjugation by `conjugator`, every generator of `group` has entries in Q(ω_k, √2) while the
    conjugated translation matrix of `other` has an entry outside that field.
    """
    group: GroupSpec
    other: GroupSpec
    conjugator: Mat2
    frame_generators: tuple[Mat2, Mat2]
    offending_matrix: Mat2
    position: tuple[int, int]
    entry: CycloElement
    k: int

    def recheck(self) -> bool:
        ambient = self.conjugator.order
        frame = tuple(conjugate_by(self.conjugator, g) for g in self.group.generators(ambient))
        if frame != self.frame_generators:
            return False
        if not all(in_real_quadratic_subfield(x, self.k) for g in frame for x in g.entries):
            return False
        offending = conjugate_by(self.conjugator, translation(self.other.b, self.other.c, ambient))
        row, col = self.position
        return (offending == self.offending_matrix
                and offending.rows()[row][col] == self.entry
                and not in_real_quadratic_subfield(self.entry, self.k))


@dataclass(frozen=True)
class MissingElement:
    """
    `matrix` = `word` over the generators of `present_in`, yet it is absent from the enumerated `missing_from`.
    """
    matrix: Mat2
    present_in: GroupSpec
    word: Word
    missing_from: GroupSpec
    ambient: int
    cap: int

    def recheck(self) -> bool:
        if evaluate_word(self.present_in, self.word, self.ambient) != self.matrix:
            return False
        group = enumerate_group(self.missing_from, cap=self.cap, ambient=self.ambient)
        return not isinstance(group, CapExceeded) and self.matrix not in group


def determinant_order(spec: GroupSpec) -> int:
    """Order of the cyclic group of determinants: det V_{k,a} = ω_k and det ρ_bc = -1 unless b = c."""
    return spec.k if spec.b == spec.c else lcm(spec.k, 2)


@dataclass(frozen=True)
class DegreeObstruction:
    """
    smaller_degree does not divide larger_degree; `determinant_obstruction` records whether the
    determinants alone already rule out containment.
    """
    smaller_degree: int
    larger_degree: int
    determinant_obstruction: bool
    smaller: GroupSpec | None = None
    larger: GroupSpec | None = None

    def recheck(self) -> bool:
        if self.larger_degree % self.smaller_degree == 0:
            return False
        if self.smaller is None or self.larger is None:
            return True
        expected = determinant_order(self.larger) % determinant_order(self.smaller) != 0
        return expected == self.determinant_obstruction


NegativeEvidence = OrderGap | FieldObstruction | MissingElement | DegreeObstruction
Evidence = Witness | NegativeEvidence


@dataclass(frozen=True)
class RelationVerdict:
    answer: Answer
    rule: str
    evidence: Evidence | None = None

    def __post_init__(self) -> None:
        if self.answer in POSITIVE_ANSWERS and not isinstance(self.evidence, Witness):
            raise ValueError(f'{self.answer.value} verdict needs a witness.')
        if self.answer in NEGATIVE_ANSWERS and (self.evidence is None or isinstance(self.evidence, Witness)):
            raise ValueError(f'{self.answer.value} verdict needs negative evidence.')
        if self.answer is Answer.UNDETERMINED and self.evidence is not None:
            raise ValueError('Undetermined verdict carries no evidence.')


def _other_axis(spec: GroupSpec) -> Axis:
    return spec.c if spec.b == spec.a else spec.b


def _derivable(source: GroupSpec) -> tuple[dict[Axis, Word], dict[tuple | None, Word]]:
    """
    Words over the source generators for V_{k,x} (keyed by axis x) and ρ (keyed by translation pair).
    """
    k = source.k
    roots: dict[Axis, Word] = {source.a: (V_LETTER,)}
    pairs: dict[tuple | None, Word] = {None: ()}
    if source.translation_key is not None:
        pairs[source.translation_key] = (R_LETTER,)
    if classify(source) is not GroupKind.SMOOTH:
        return roots, pairs

    a, b = source.a, _other_axis(source)
    # ρ_ab·V_{k,a}·ρ_ab = V_{k,b}
    roots[b] = (R_LETTER, V_LETTER, R_LETTER)
    if k % 4:
        return roots, pairs

    q = k // 4
    v4 = {a: (V_LETTER,) * q, b: (R_LETTER,) + (V_LETTER,) * q + (R_LETTER,)}
    v4_dagger = {a: (V_DAGGER,) * q, b: (R_LETTER,) + (V_DAGGER,) * q + (R_LETTER,)}
    c = third_axis(a, b)
    if levi_civita(b, a, c) == 1:
        roots[c] = v4[b] + (V_LETTER,) + v4_dagger[b]
    else:
        roots[c] = v4_dagger[b] + (V_LETTER,) + v4[b]
    for pivot, other in ((a, b), (b, a)):
        key = (min(pivot, c), max(pivot, c))
        if levi_civita(pivot, other, c) == 1:
            pairs[key] = v4[pivot] + (R_LETTER,) + v4_dagger[pivot]
        else:
            pairs[key] = v4_dagger[pivot] + (R_LETTER,) + v4[pivot]
    return roots, pairs


def _words_for(source: GroupSpec, target: GroupSpec) -> tuple[Word, Word] | None:
    roots, pairs = _derivable(source)
    if target.k == 1:
        root_word = ()
    elif source.k % target.k == 0 and target.a in roots:
        root_word = roots[target.a] * (source.k // target.k)
    else:
        return None
    pair_word = pairs.get(target.translation_key)
    if pair_word is None:
        return None
    return root_word, pair_word


def _entries(source: GroupSpec, target: GroupSpec, words: tuple[Word, Word]) -> tuple[WitnessEntry, ...]:
    ambient = lcm(source.ambient, target.ambient)
    return tuple(WitnessEntry(name, matrix, word)
                 for name, matrix, word in zip(generator_names(target), target.generators(ambient), words))


def witness_generators(p: GroupSpec, q: GroupSpec) -> Witness:
    """
    Words over the generators of p for both generators of q, certifying Q ≤ P.

    Raises:
        NoPositiveRelation: If the conjugation calculus gives no word for some generator of q.
    """
    words = _words_for(p, q)
    if words is None:
        raise NoPositiveRelation(f'No constructive words express {q.label} over {p.label}.')
    return Witness(source=p, target=q, entries=_entries(p, q, words))


def _mutual_witness(p: GroupSpec, q: GroupSpec) -> Witness:
    forward = witness_generators(p, q)
    backward = witness_generators(q, p)
    return Witness(source=p, target=q, entries=forward.entries, converse=backward.entries)


def _theorem1_case(p: GroupSpec, q: GroupSpec) -> str | None:
    kind_p, kind_q = classify(p), classify(q)
    if p.k == 1 and p.translation_key == q.translation_key:
        return 'theorem1.case1'
    if kind_p is kind_q is GroupKind.CYCLIC and p.a == q.a:
        return 'theorem1.case2'
    if kind_p is kind_q is GroupKind.SMOOTH and p.translation_key == q.translation_key:
        return 'theorem1.case3'
    if kind_p is kind_q is GroupKind.SMOOTH and p.k % 4 == 0:
        return 'theorem1.case4'
    if p.a == q.a and p.translation_key == q.translation_key:
        return 'theorem1.reflexive'
    return None


def _missing_element(p: GroupSpec, q: GroupSpec, cap: int | None = None) -> MissingElement | None:
    """A generator of one group that the other, finite, group does not contain."""
    ambient = lcm(p.ambient, q.ambient)
    for present, absent in ((q, p), (p, q)):
        if cap is None and not is_finite(absent):
            continue
        used_cap = default_cap(absent) if cap is None else cap
        group = enumerate_group(absent, cap=used_cap, ambient=ambient)
        if isinstance(group, CapExceeded):
            continue
        for matrix, word in zip(present.generators(ambient), ((V_LETTER,), (R_LETTER,))):
            if matrix not in group:
                return MissingElement(matrix=matrix, present_in=present, word=word,
                                      missing_from=absent, ambient=ambient, cap=used_cap)
    return None


def _require(evidence: NegativeEvidence | None, p: GroupSpec, q: GroupSpec) -> NegativeEvidence:
    if evidence is None:
        raise RuntimeError(f'No separating element found for {p.label} and {q.label}.')
    return evidence


def _field_obstruction(p: GroupSpec, q: GroupSpec) -> FieldObstruction:
    ambient = p.ambient
    shift = {(1, 3): 0, (2, 3): 1, (1, 2): 2}[p.translation_key]
    conjugator = cyclic_conjugator(Axis.X, Axis.Y, ambient) ** shift
    frame = tuple(conjugate_by(conjugator, g) for g in p.generators(ambient))
    offending = conjugate_by(conjugator, translation(q.b, q.c, ambient))
    for row, values in enumerate(offending.rows()):
        for col, entry in enumerate(values):
            if not in_real_quadratic_subfield(entry, p.k):
                return FieldObstruction(group=p, other=q, conjugator=conjugator, frame_generators=frame,
                                        offending_matrix=offending, position=(row, col), entry=entry, k=p.k)
    raise RuntimeError(f'Every entry of the conjugated ρ of {q.label} lies in Q(ω_{p.k}, √2).')


def decide_equal(p: GroupSpec, q: GroupSpec) -> RelationVerdict:
    """
    Decides P = Q for two groups of the same degree.

    Raises:
        DegreeMismatch: If the degrees differ.
    """
    if p.k != q.k:
        raise DegreeMismatch(f'{p.label} and {q.label} have degrees {p.k} and {q.k}.')
    rule = _theorem1_case(p, q)
    if rule is not None:
        logger.debug(f'{p} = {q} by {rule}')
        return RelationVerdict(Answer.EQUAL, rule, _mutual_witness(p, q))

    k = p.k
    kind_p, kind_q = classify(p), classify(q)
    if kind_p is not kind_q:
        rule = 'lemma5.mixed-kinds'
        order_p, order_q = predicted_order(p), predicted_order(q)
        if order_p != order_q and is_finite(p) and is_finite(q):
            smaller, larger = (p, q) if order_p < order_q else (q, p)
            evidence = OrderGap(smaller=smaller, smaller_order=predicted_order(smaller), larger=larger,
                                larger_order=predicted_order(larger), note='groups of different order')
        else:
            evidence = _require(_missing_element(p, q), p, q)
    elif kind_p is GroupKind.POLYCYCLIC:
        rule = 'lemma4.polycyclic-distinct'
        if k == 1:
            evidence = _require(_missing_element(p, q), p, q)
        else:
            majorant = GroupSpec(k, q.a, *p.translation_key)
            evidence = OrderGap(smaller=p, smaller_order=predicted_order(p), larger=majorant,
                                larger_order=predicted_order(majorant),
                                note=f'P = Q would contain {majorant.label}')
    elif kind_p is GroupKind.CYCLIC:
        rule = 'theorem1.cyclic-distinct-roots'
        evidence = _require(_missing_element(p, q), p, q)
    else:
        rule = 'lemma8.field-obstruction'
        evidence = _field_obstruction(p, q)
    logger.debug(f'{p} ≠ {q} by {rule}')
    return RelationVerdict(Answer.NOT_EQUAL, rule, evidence)


def _same_axes(p: GroupSpec, q: GroupSpec) -> bool:
    return p.a == q.a and p.translation_key == q.translation_key


def _degree_verdict(p: GroupSpec, q: GroupSpec, prefix: str = '') -> RelationVerdict:
    if q.k % p.k == 0:
        return RelationVerdict(Answer.SUBGROUP, prefix + 'theorem2.divides', witness_generators(q, p))
    obstruction = DegreeObstruction(
        smaller_degree=p.k, larger_degree=q.k,
        determinant_obstruction=determinant_order(q) % determinant_order(p) != 0,
        smaller=p, larger=q)
    return RelationVerdict(Answer.NOT_SUBGROUP, prefix + 'theorem2.not-divides', obstruction)


def decide_subgroup(p: GroupSpec, q: GroupSpec) -> RelationVerdict:
    """
    Decides P ≤ Q.

    Same axes are decided by degree divisibility. Otherwise Q is first replaced by an equal group
    carrying P's axes when the equality decision allows it (the rule tags are chained with '+'),
    and as a last resort a constructive witness is attempted.

    Raises:
        SpecMismatch: If the axes differ and neither route applies.
    """
    if _same_axes(p, q):
        verdict = _degree_verdict(p, q)
    else:
        bridge = GroupSpec(q.k, p.a, p.b, p.c)
        equality = decide_equal(bridge, q)
        if equality.answer is Answer.EQUAL:
            verdict = _degree_verdict(p, q, prefix=equality.rule + '+')
        else:
            words = _words_for(q, p)
            if words is None:
                raise SpecMismatch(f'{p.label} and {q.label} have different axes.')
            verdict = RelationVerdict(Answer.SUBGROUP, 'constructive-witness',
                                      Witness(source=q, target=p, entries=_entries(q, p, words)))
    logger.debug(f'{p} ≤ {q}: {verdict.answer.value} by {verdict.rule}')
    return verdict


def decide_relation(p: GroupSpec, q: GroupSpec, relation: str = 'equal') -> RelationVerdict:
    """Like decide_equal / decide_subgroup, but answers Undetermined outside both theorems."""
    if relation == 'equal':
        if p.k != q.k:
            return RelationVerdict(Answer.UNDETERMINED, OUTSIDE_THEOREMS)
        return decide_equal(p, q)
    if relation != 'subgroup':
        raise ValueError(f"Relation must be 'equal' or 'subgroup', got {relation!r}.")
    try:
        return decide_subgroup(p, q)
    except SpecMismatch:
        return RelationVerdict(Answer.UNDETERMINED, OUTSIDE_THEOREMS)


def _bfs_entries(source_group, target: GroupSpec) -> tuple[WitnessEntry, ...]:
    ambient = source_group.ambient
    return tuple(WitnessEntry(name, matrix, source_group.word_of(matrix))
                 for name, matrix in zip(generator_names(target), target.generators(ambient)))


def brute_force_relation(p: GroupSpec, q: GroupSpec, cap: int | None = None,
                         relation: str = 'equal') -> RelationVerdict:
    """
    Compares the enumerated element sets of both groups in the field lcm of their ambients.

    For relation='subgroup' the question is P ≤ Q. Undetermined when either enumeration exceeds the cap.
    """
    if relation not in ('equal', 'subgroup'):
        raise ValueError(f"Relation must be 'equal' or 'subgroup', got {relation!r}.")
    ambient = lcm(p.ambient, q.ambient)
    group_p = enumerate_group(p, cap=cap, ambient=ambient)
    group_q = enumerate_group(q, cap=cap, ambient=ambient)
    if isinstance(group_p, CapExceeded) or isinstance(group_q, CapExceeded):
        return RelationVerdict(Answer.UNDETERMINED, 'brute-force.cap-exceeded')

    p_in_q = all(g in group_q for g in p.generators(ambient))
    q_in_p = all(g in group_p for g in q.generators(ambient))
    if relation == 'subgroup':
        if p_in_q:
            witness = Witness(source=q, target=p, entries=_bfs_entries(group_q, p))
            return RelationVerdict(Answer.SUBGROUP, 'brute-force.subset', witness)
        return RelationVerdict(Answer.NOT_SUBGROUP, 'brute-force.missing-element',
                               _missing_element(q, p, cap=len(group_q)))
    if p_in_q and q_in_p:
        witness = Witness(source=p, target=q, entries=_bfs_entries(group_p, q),
                          converse=_bfs_entries(group_q, p))
        return RelationVerdict(Answer.EQUAL, 'brute-force.equal', witness)
    return RelationVerdict(Answer.NOT_EQUAL, 'brute-force.missing-element',
                           _missing_element(p, q, cap=max(len(group_p), len(group_q))))
