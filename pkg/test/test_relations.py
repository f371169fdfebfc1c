from itertools import product

import pytest

from src.application.CustomError import DegreeMismatch, NoPositiveRelation
from src.application.PauliRootGroups import (
    INFINITE,
    R_LETTER,
    V_DAGGER,
    V_LETTER,
    GroupKind,
    GroupSpec,
    all_specs,
    classify,
)
from src.application.Relations import (
    NEGATIVE_ANSWERS,
    OUTSIDE_THEOREMS,
    Answer,
    DegreeObstruction,
    FieldObstruction,
    MissingElement,
    OrderGap,
    RelationVerdict,
    Witness,
    brute_force_relation,
    decide_equal,
    decide_relation,
    decide_subgroup,
    determinant_order,
    witness_generators,
)

SMALL_FIELD_DEGREES = [1, 2, 3, 4, 6, 8, 12]


def _non_smooth(k: int) -> list[GroupSpec]:
    return [spec for spec in all_specs(k) if classify(spec) is not GroupKind.SMOOTH]


@pytest.mark.parametrize('p, q, rule', [
    (GroupSpec(1, 1, 1, 3), GroupSpec(1, 2, 3, 1), 'theorem1.case1'),
    (GroupSpec(5, 2, 2, 2), GroupSpec(5, 2, 1, 1), 'theorem1.case2'),
    (GroupSpec(3, 1, 1, 3), GroupSpec(3, 3, 3, 1), 'theorem1.case3'),
    (GroupSpec(8, 1, 1, 2), GroupSpec(8, 2, 2, 3), 'theorem1.case4'),
    (GroupSpec(4, 1, 1, 2), GroupSpec(4, 3, 1, 3), 'theorem1.case4'),
    (GroupSpec(6, 3, 1, 2), GroupSpec(6, 3, 2, 1), 'theorem1.reflexive'),
])
def test_equal_cases(p: GroupSpec, q: GroupSpec, rule: str) -> None:
    """Test the equality cases and their mutual witnesses."""
    verdict = decide_equal(p, q)
    assert verdict.answer is Answer.EQUAL
    assert verdict.rule == rule
    assert isinstance(verdict.evidence, Witness)
    assert len(verdict.evidence.entries) == 2
    assert len(verdict.evidence.converse) == 2
    assert verdict.evidence.verify()


@pytest.mark.parametrize('k', [3, 5, 6, 8])
def test_smooth_equalities_carry_mutual_witnesses(k: int) -> None:
    """Test that every smooth Equal verdict is confirmed by words in both directions."""
    smooth = [spec for spec in all_specs(k) if classify(spec) is GroupKind.SMOOTH]
    equal = 0
    for p, q in product(smooth, smooth):
        verdict = decide_equal(p, q)
        if verdict.answer is not Answer.EQUAL:
            continue
        equal += 1
        assert isinstance(verdict.evidence, Witness)
        assert verdict.evidence.converse
        assert verdict.evidence.verify()
    assert equal >= len(smooth)


def test_lemma8_field_obstruction() -> None:
    """Test that ⟨V_{3,1}, ρ_12⟩ and ⟨V_{3,1}, ρ_13⟩ differ by a field obstruction."""
    verdict = decide_equal(GroupSpec(3, 1, 1, 2), GroupSpec(3, 1, 1, 3))
    assert verdict.answer is Answer.NOT_EQUAL
    assert verdict.rule == 'lemma8.field-obstruction'
    assert isinstance(verdict.evidence, FieldObstruction)
    assert verdict.evidence.recheck()


@pytest.mark.parametrize('k', [1, 2, 3, 5, 6, 7])
def test_field_obstruction_for_all_distinct_smooth_pairs(k: int) -> None:
    """Test that smooth groups with distinct translations and 4 ∤ k are separated with a recheckable obstruction."""
    smooth = [spec for spec in all_specs(k) if classify(spec) is GroupKind.SMOOTH]
    for p, q in product(smooth, smooth):
        if p.translation_key == q.translation_key:
            continue
        verdict = decide_equal(p, q)
        assert verdict.answer is Answer.NOT_EQUAL
        assert verdict.evidence.recheck()


def test_lemma4_polycyclic_distinct() -> None:
    """Test that two distinct polycyclic groups are separated by an order gap."""
    verdict = decide_equal(GroupSpec(4, 3, 1, 2), GroupSpec(4, 1, 2, 3))
    assert verdict.rule == 'lemma4.polycyclic-distinct'
    assert isinstance(verdict.evidence, OrderGap)
    assert verdict.evidence.smaller_order == 32
    assert verdict.evidence.larger_order == 192
    assert verdict.evidence.recheck()


def test_lemma4_with_infinite_majorant() -> None:
    """Test the order gap against an infinite majorant at k = 3."""
    verdict = decide_equal(GroupSpec(3, 3, 1, 2), GroupSpec(3, 2, 1, 3))
    assert verdict.evidence.larger_order == INFINITE
    assert verdict.evidence.recheck()


def test_lemma4_degree_one() -> None:
    """Test that the two-element polycyclic groups are separated by a missing element."""
    verdict = decide_equal(GroupSpec(1, 3, 1, 2), GroupSpec(1, 1, 2, 3))
    assert verdict.answer is Answer.NOT_EQUAL
    assert isinstance(verdict.evidence, MissingElement)
    assert verdict.evidence.recheck()


@pytest.mark.parametrize('p, q, evidence_type', [
    (GroupSpec(4, 3, 1, 2), GroupSpec(4, 3, 1, 3), OrderGap),
    (GroupSpec(2, 3, 3, 3), GroupSpec(2, 3, 1, 2), OrderGap),
    (GroupSpec(3, 3, 1, 2), GroupSpec(3, 3, 1, 3), MissingElement),
    (GroupSpec(1, 1, 2, 3), GroupSpec(1, 1, 1, 3), MissingElement),
])
def test_lemma5_mixed_kinds(p: GroupSpec, q: GroupSpec, evidence_type: type) -> None:
    """Test that groups of different kinds are never equal."""
    verdict = decide_equal(p, q)
    assert verdict.answer is Answer.NOT_EQUAL
    assert verdict.rule == 'lemma5.mixed-kinds'
    assert isinstance(verdict.evidence, evidence_type)
    assert verdict.evidence.recheck()


def test_cyclic_distinct_roots() -> None:
    """Test ⟨σ_1⟩ ≠ ⟨σ_2⟩."""
    verdict = decide_equal(GroupSpec(2, 1, 1, 1), GroupSpec(2, 2, 2, 2))
    assert verdict.rule == 'theorem1.cyclic-distinct-roots'
    assert verdict.evidence.recheck()


def test_decide_equal_needs_same_degree() -> None:
    """Test DegreeMismatch and the Undetermined fallback."""
    with pytest.raises(DegreeMismatch):
        decide_equal(GroupSpec(4, 3, 1, 3), GroupSpec(8, 3, 1, 3))
    verdict = decide_relation(GroupSpec(4, 3, 1, 3), GroupSpec(8, 3, 1, 3), 'equal')
    assert verdict.answer is Answer.UNDETERMINED
    assert verdict.rule == OUTSIDE_THEOREMS
    assert verdict.evidence is None


def test_decide_relation_rejects_unknown_relation() -> None:
    """Test the relation name check."""
    with pytest.raises(ValueError):
        decide_relation(GroupSpec(4, 3, 1, 3), GroupSpec(4, 3, 1, 3), 'contains')


@pytest.mark.parametrize('k', [1, 2, 4])
def test_equality_agrees_with_brute_force(k: int) -> None:
    """Test all 144 ordered pairs of degree k against enumeration."""
    specs = all_specs(k)
    for p, q in product(specs, specs):
        decided = decide_equal(p, q)
        enumerated = brute_force_relation(p, q)
        assert decided.answer is enumerated.answer, f'{p} vs {q}'


@pytest.mark.parametrize('k', [3, 5, 6])
def test_non_smooth_equality_agrees_with_brute_force(k: int) -> None:
    """Test cyclic and polycyclic pairs of degree k against enumeration."""
    specs = _non_smooth(k)
    for p, q in product(specs, specs):
        assert decide_equal(p, q).answer is brute_force_relation(p, q).answer, f'{p} vs {q}'


@pytest.mark.parametrize('k', [1, 2, 4])
def test_decided_containment_agrees_with_brute_force(k: int) -> None:
    """Test that every decided subgroup answer at degree k matches enumeration."""
    specs = all_specs(k)
    for p, q in product(specs, specs):
        decided = decide_relation(p, q, 'subgroup')
        if decided.answer is Answer.UNDETERMINED:
            continue
        assert decided.answer is brute_force_relation(p, q, relation='subgroup').answer, f'{p} ≤ {q}'


@pytest.mark.parametrize('k, multiple', list(product(range(1, 13), repeat=2)))
@pytest.mark.parametrize('axes', [(3, 3, 3), (3, 1, 2), (1, 1, 3)])
def test_degree_divisibility(k: int, multiple: int, axes: tuple[int, int, int]) -> None:
    """Test P_k ≤ P_m exactly when k divides m, for fixed axes."""
    p, q = GroupSpec(k, *axes), GroupSpec(multiple, *axes)
    verdict = decide_subgroup(p, q)
    if multiple % k == 0:
        assert verdict.answer is Answer.SUBGROUP
        assert verdict.rule == 'theorem2.divides'
        assert verdict.evidence.verify()
    else:
        assert verdict.answer is Answer.NOT_SUBGROUP
        assert verdict.rule == 'theorem2.not-divides'
        assert isinstance(verdict.evidence, DegreeObstruction)
        assert verdict.evidence.recheck()


@pytest.mark.parametrize('k, multiple', list(product(SMALL_FIELD_DEGREES, repeat=2)))
@pytest.mark.parametrize('axes', [(3, 3, 3), (3, 1, 2)])
def test_degree_divisibility_by_enumeration(k: int, multiple: int, axes: tuple[int, int, int]) -> None:
    """Test the finite cases of the divisibility rule by comparing element sets."""
    p, q = GroupSpec(k, *axes), GroupSpec(multiple, *axes)
    assert decide_subgroup(p, q).answer is brute_force_relation(p, q, relation='subgroup').answer


def test_determinant_obstruction() -> None:
    """Test det-order bookkeeping: ω_8 is no determinant of the Clifford group."""
    verdict = decide_subgroup(GroupSpec(8, 3, 1, 3), GroupSpec(4, 3, 1, 3))
    assert verdict.answer is Answer.NOT_SUBGROUP
    assert verdict.evidence.determinant_obstruction
    assert determinant_order(GroupSpec(8, 3, 1, 3)) == 8
    assert determinant_order(GroupSpec(3, 3, 1, 2)) == 6
    assert determinant_order(GroupSpec(3, 3, 3, 3)) == 3


def test_bridged_subgroup() -> None:
    """Test ⟨V_{4,1}, ρ_12⟩ ≤ ⟨V_{8,3}, ρ_13⟩ through an equal group with matching axes."""
    verdict = decide_subgroup(GroupSpec(4, 1, 1, 2), GroupSpec(8, 3, 1, 3))
    assert verdict.answer is Answer.SUBGROUP
    assert verdict.rule == 'theorem1.case4+theorem2.divides'
    assert verdict.evidence.verify()


def test_constructive_witness_subgroup() -> None:
    """Test ⟨σ_3⟩ ≤ Clifford group via the words of the Clifford generators."""
    verdict = decide_subgroup(GroupSpec(2, 3, 3, 3), GroupSpec(4, 3, 1, 3))
    assert verdict.answer is Answer.SUBGROUP
    assert verdict.rule == 'constructive-witness'
    assert verdict.evidence.entries[0].word == (V_LETTER, V_LETTER)
    assert verdict.evidence.verify()


def test_undetermined_subgroup() -> None:
    """Test that containment across different axes without a bridge stays undetermined."""
    verdict = decide_relation(GroupSpec(3, 1, 1, 2), GroupSpec(6, 2, 1, 3), 'subgroup')
    assert verdict.answer is Answer.UNDETERMINED
    assert verdict.rule == OUTSIDE_THEOREMS


def test_witness_words() -> None:
    """Test the conjugation words of the witness calculus."""
    witness = witness_generators(GroupSpec(3, 3, 3, 1), GroupSpec(3, 1, 1, 3))
    assert witness.entries[0].word == (R_LETTER, V_LETTER, R_LETTER)
    assert witness.entries[1].word == (R_LETTER,)
    assert witness.verify()

    witness = witness_generators(GroupSpec(4, 1, 1, 2), GroupSpec(4, 1, 1, 3))
    assert witness.entries[1].word == (V_LETTER, R_LETTER, V_DAGGER)
    assert witness.verify()

    witness = witness_generators(GroupSpec(8, 3, 1, 3), GroupSpec(4, 3, 1, 3))
    assert witness.entries[0].word == (V_LETTER, V_LETTER)
    assert witness.verify()


@pytest.mark.parametrize('k', [4, 8, 12])
def test_smooth_witnesses(k: int) -> None:
    """Test that every pair of smooth groups with 4 | k has verifying words."""
    smooth = [spec for spec in all_specs(k) if classify(spec) is GroupKind.SMOOTH]
    for p, q in product(smooth, smooth):
        assert witness_generators(p, q).verify(), f'{q} over {p}'


def test_no_positive_relation() -> None:
    """Test that a polycyclic group cannot express a root on another axis."""
    with pytest.raises(NoPositiveRelation):
        witness_generators(GroupSpec(4, 3, 1, 2), GroupSpec(4, 1, 2, 3))


def test_dagger_free() -> None:
    """Test V† ↦ V^(k-1) while the words still verify."""
    witness = witness_generators(GroupSpec(4, 1, 1, 2), GroupSpec(4, 1, 1, 3)).dagger_free()
    assert witness.entries[1].word == (V_LETTER, R_LETTER, V_LETTER, V_LETTER, V_LETTER)
    assert all(not letter.dagger for entry in witness.entries for letter in entry.word)
    assert witness.verify()


def test_verdict_requires_matching_evidence() -> None:
    """Test that positive answers need a witness and negative answers need an obstruction."""
    obstruction = DegreeObstruction(smaller_degree=8, larger_degree=4, determinant_obstruction=True)
    witness = witness_generators(GroupSpec(8, 3, 1, 3), GroupSpec(4, 3, 1, 3))
    with pytest.raises(ValueError):
        RelationVerdict(Answer.EQUAL, 'theorem1.case3', None)
    with pytest.raises(ValueError):
        RelationVerdict(Answer.SUBGROUP, 'theorem2.divides', obstruction)
    with pytest.raises(ValueError):
        RelationVerdict(Answer.NOT_EQUAL, 'lemma8.field-obstruction', witness)
    with pytest.raises(ValueError):
        RelationVerdict(Answer.UNDETERMINED, OUTSIDE_THEOREMS, obstruction)
    assert RelationVerdict(Answer.NOT_SUBGROUP, 'theorem2.not-divides', obstruction).answer in NEGATIVE_ANSWERS


def test_brute_force_subset_and_equal() -> None:
    """Test positive brute-force answers carry verifying witnesses."""
    subset = brute_force_relation(GroupSpec(4, 3, 1, 2), GroupSpec(4, 3, 1, 3), relation='subgroup')
    assert subset.answer is Answer.SUBGROUP
    assert subset.evidence.verify()

    missing = brute_force_relation(GroupSpec(4, 3, 1, 3), GroupSpec(4, 3, 1, 2), relation='subgroup')
    assert missing.answer is Answer.NOT_SUBGROUP
    assert missing.rule == 'brute-force.missing-element'
    assert missing.evidence.recheck()

    subset = brute_force_relation(GroupSpec(4, 3, 3, 3), GroupSpec(4, 3, 1, 2), relation='subgroup')
    assert subset.answer is Answer.SUBGROUP
    assert subset.rule == 'brute-force.subset'
    assert subset.evidence.verify()

    equal = brute_force_relation(GroupSpec(4, 1, 1, 2), GroupSpec(4, 3, 1, 3))
    assert equal.answer is Answer.EQUAL
    assert equal.rule == 'brute-force.equal'
    assert equal.evidence.verify()


def test_brute_force_missing_element() -> None:
    """Test that a brute-force NotEqual names a recheckable missing element."""
    verdict = brute_force_relation(GroupSpec(4, 3, 1, 2), GroupSpec(4, 1, 2, 3))
    assert verdict.answer is Answer.NOT_EQUAL
    assert isinstance(verdict.evidence, MissingElement)
    assert verdict.evidence.recheck()


def test_brute_force_cap_exceeded() -> None:
    """Test that brute force gives up on infinite groups."""
    verdict = brute_force_relation(GroupSpec(8, 3, 1, 3), GroupSpec(8, 3, 1, 2), cap=500)
    assert verdict.answer is Answer.UNDETERMINED
    assert verdict.rule == 'brute-force.cap-exceeded'


def test_brute_force_rejects_unknown_relation() -> None:
    """Test the relation name check."""
    with pytest.raises(ValueError):
        brute_force_relation(GroupSpec(2, 3, 1, 3), GroupSpec(2, 3, 1, 3), relation='contains')
