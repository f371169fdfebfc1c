from fractions import Fraction
from typing import Annotated, Literal, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, PlainSerializer

from src.application.Cyclotomic import CycloElement
from src.application.FiniteField import GU29Report
from src.application.PauliRootGroups import (
    INFINITE,
    CapExceeded,
    FiniteGroup,
    GroupSpec,
    InfinitenessCertificate,
    Letter,
    PolycyclicNF,
    Word,
    classify,
    is_finite,
    predicted_order,
    structure_label,
)
from src.application.QMat import SIGMA_PM, Mat2, SignedPauliAction
from src.application.Relations import (
    Answer,
    DegreeObstruction,
    FieldObstruction,
    MissingElement,
    OrderGap,
    RelationVerdict,
    Witness,
    WitnessEntry,
)

_INT64 = 2 ** 63


def _int_out(value: int) -> int | str:
    return value if -_INT64 <= value < _INT64 else str(value)


def _int_in(value):
    if isinstance(value, str) and value.lstrip('-').isdigit():
        return int(value)
    return value


# Integers outside the signed 64-bit range travel as decimal strings.
BigInt = Annotated[int, BeforeValidator(_int_in), PlainSerializer(_int_out, when_used='json')]
Order = Union[BigInt, Literal['infinite']]


def _order_out(order: int | float) -> int | str:
    return 'infinite' if order == INFINITE else order


def _order_in(order: int | str) -> int | float:
    return INFINITE if order == 'infinite' else order


# Each coordinate is a [numerator, denominator] pair in lowest terms.
RationalPair = tuple[BigInt, BigInt]


class CycloElementModel(BaseModel):
    order: int
    coeffs: list[RationalPair]

    @classmethod
    def from_domain(cls, x: CycloElement) -> 'CycloElementModel':
        return cls(order=x.order, coeffs=[(c.numerator, c.denominator) for c in x.coeffs])

    def to_domain(self) -> CycloElement:
        return CycloElement(self.order, tuple(Fraction(num, den) for num, den in self.coeffs))


class Mat2Model(BaseModel):
    order: int
    entries: list[list[CycloElementModel]]

    @classmethod
    def from_domain(cls, m: Mat2) -> 'Mat2Model':
        return cls(order=m.order, entries=[[CycloElementModel.from_domain(x) for x in row] for row in m.rows()])

    def to_domain(self) -> Mat2:
        return Mat2(self.order, *(entry.to_domain() for row in self.entries for entry in row))


class GroupSpecModel(BaseModel):
    k: BigInt
    a: int
    b: int
    c: int
    literal: str = ''

    @classmethod
    def from_domain(cls, spec: GroupSpec) -> 'GroupSpecModel':
        return cls(k=spec.k, a=int(spec.a), b=int(spec.b), c=int(spec.c), literal=spec.literal)

    def to_domain(self) -> GroupSpec:
        return GroupSpec(self.k, self.a, self.b, self.c)


def word_to_model(word: Word) -> list[str]:
    return [str(letter) for letter in word]


def word_from_model(letters: list[str]) -> Word:
    return tuple(Letter(text[0], dagger=text.endswith("'")) for text in letters)


class ClassificationModel(BaseModel):
    spec: GroupSpecModel
    kind: str
    finite: bool
    order: Order
    structure: str | None = None

    @classmethod
    def from_domain(cls, spec: GroupSpec) -> 'ClassificationModel':
        finite = is_finite(spec)
        return cls(spec=GroupSpecModel.from_domain(spec), kind=classify(spec).value, finite=finite,
                   order=_order_out(predicted_order(spec)),
                   structure=structure_label(spec) if finite else None)


class FiniteGroupModel(BaseModel):
    status: Literal['Enumerated'] = 'Enumerated'
    spec: GroupSpecModel
    ambient: int
    size: BigInt
    elements: list[Mat2Model]
    words: list[list[str]]

    @classmethod
    def from_domain(cls, group: FiniteGroup) -> 'FiniteGroupModel':
        return cls(spec=GroupSpecModel.from_domain(group.spec), ambient=group.ambient, size=len(group),
                   elements=[Mat2Model.from_domain(m) for m in group.elements],
                   words=[word_to_model(w) for w in group.words])

    def to_domain(self) -> FiniteGroup:
        return FiniteGroup(spec=self.spec.to_domain(), ambient=self.ambient,
                           elements=tuple(m.to_domain() for m in self.elements),
                           words=tuple(word_from_model(w) for w in self.words))


class CapExceededModel(BaseModel):
    status: Literal['CapExceeded'] = 'CapExceeded'
    spec: GroupSpecModel
    cap: BigInt
    ambient: int

    @classmethod
    def from_domain(cls, result: CapExceeded) -> 'CapExceededModel':
        return cls(spec=GroupSpecModel.from_domain(result.spec), cap=result.cap, ambient=result.ambient)

    def to_domain(self) -> CapExceeded:
        return CapExceeded(spec=self.spec.to_domain(), cap=self.cap, ambient=self.ambient)


def enumeration_to_model(result: FiniteGroup | CapExceeded) -> FiniteGroupModel | CapExceededModel:
    if isinstance(result, CapExceeded):
        return CapExceededModel.from_domain(result)
    return FiniteGroupModel.from_domain(result)


class CertificateModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    spec: GroupSpecModel
    trace_squared: CycloElementModel = Field(alias='traceSquared')
    coordinates: list[RationalPair]
    witness_index: int = Field(alias='witnessIndex')

    @classmethod
    def from_domain(cls, certificate: InfinitenessCertificate) -> 'CertificateModel':
        return cls(spec=GroupSpecModel.from_domain(certificate.spec),
                   trace_squared=CycloElementModel.from_domain(certificate.trace_squared),
                   coordinates=[(c.numerator, c.denominator) for c in certificate.coordinates],
                   witness_index=certificate.witness_index)

    def to_domain(self) -> InfinitenessCertificate:
        return InfinitenessCertificate(spec=self.spec.to_domain(), trace_squared=self.trace_squared.to_domain(),
                                       coordinates=tuple(Fraction(num, den) for num, den in self.coordinates),
                                       witness_index=self.witness_index)


class PolycyclicNFModel(BaseModel):
    s: int
    t: int
    u: int

    @classmethod
    def from_domain(cls, nf: PolycyclicNF) -> 'PolycyclicNFModel':
        return cls(s=nf.s, t=nf.t, u=nf.u)

    def to_domain(self) -> PolycyclicNF:
        return PolycyclicNF(self.s, self.t, self.u)


class WitnessEntryModel(BaseModel):
    target_name: str
    target: Mat2Model
    word: list[str]

    @classmethod
    def from_domain(cls, entry: WitnessEntry) -> 'WitnessEntryModel':
        return cls(target_name=entry.target_name, target=Mat2Model.from_domain(entry.target),
                   word=word_to_model(entry.word))

    def to_domain(self) -> WitnessEntry:
        return WitnessEntry(self.target_name, self.target.to_domain(), word_from_model(self.word))


class WitnessModel(BaseModel):
    kind: Literal['Witness'] = 'Witness'
    source: GroupSpecModel
    target: GroupSpecModel
    entries: list[WitnessEntryModel]
    converse: list[WitnessEntryModel] = []

    @classmethod
    def from_domain(cls, witness: Witness) -> 'WitnessModel':
        return cls(source=GroupSpecModel.from_domain(witness.source),
                   target=GroupSpecModel.from_domain(witness.target),
                   entries=[WitnessEntryModel.from_domain(e) for e in witness.entries],
                   converse=[WitnessEntryModel.from_domain(e) for e in witness.converse])

    def to_domain(self) -> Witness:
        return Witness(source=self.source.to_domain(), target=self.target.to_domain(),
                       entries=tuple(e.to_domain() for e in self.entries),
                       converse=tuple(e.to_domain() for e in self.converse))


class OrderGapModel(BaseModel):
    kind: Literal['OrderGap'] = 'OrderGap'
    smaller: GroupSpecModel
    smaller_order: BigInt
    larger: GroupSpecModel
    larger_order: Order
    note: str = ''

    @classmethod
    def from_domain(cls, gap: OrderGap) -> 'OrderGapModel':
        return cls(smaller=GroupSpecModel.from_domain(gap.smaller), smaller_order=gap.smaller_order,
                   larger=GroupSpecModel.from_domain(gap.larger), larger_order=_order_out(gap.larger_order),
                   note=gap.note)

    def to_domain(self) -> OrderGap:
        return OrderGap(smaller=self.smaller.to_domain(), smaller_order=self.smaller_order,
                        larger=self.larger.to_domain(), larger_order=_order_in(self.larger_order),
                        note=self.note)


class FieldObstructionModel(BaseModel):
    kind: Literal['FieldObstruction'] = 'FieldObstruction'
    group: GroupSpecModel
    other: GroupSpecModel
    conjugator: Mat2Model
    frame_generators: list[Mat2Model]
    offending_matrix: Mat2Model
    position: tuple[int, int]
    entry: CycloElementModel
    k: int
    subfield: str = ''

    @classmethod
    def from_domain(cls, obstruction: FieldObstruction) -> 'FieldObstructionModel':
        return cls(group=GroupSpecModel.from_domain(obstruction.group),
                   other=GroupSpecModel.from_domain(obstruction.other),
                   conjugator=Mat2Model.from_domain(obstruction.conjugator),
                   frame_generators=[Mat2Model.from_domain(g) for g in obstruction.frame_generators],
                   offending_matrix=Mat2Model.from_domain(obstruction.offending_matrix),
                   position=obstruction.position,
                   entry=CycloElementModel.from_domain(obstruction.entry),
                   k=obstruction.k,
                   subfield=f'Q(ω_{obstruction.k}, √2)')

    def to_domain(self) -> FieldObstruction:
        return FieldObstruction(group=self.group.to_domain(), other=self.other.to_domain(),
                                conjugator=self.conjugator.to_domain(),
                                frame_generators=tuple(g.to_domain() for g in self.frame_generators),
                                offending_matrix=self.offending_matrix.to_domain(),
                                position=tuple(self.position), entry=self.entry.to_domain(), k=self.k)


class MissingElementModel(BaseModel):
    kind: Literal['MissingElement'] = 'MissingElement'
    matrix: Mat2Model
    present_in: GroupSpecModel
    word: list[str]
    missing_from: GroupSpecModel
    ambient: int
    cap: BigInt

    @classmethod
    def from_domain(cls, missing: MissingElement) -> 'MissingElementModel':
        return cls(matrix=Mat2Model.from_domain(missing.matrix),
                   present_in=GroupSpecModel.from_domain(missing.present_in),
                   word=word_to_model(missing.word),
                   missing_from=GroupSpecModel.from_domain(missing.missing_from),
                   ambient=missing.ambient, cap=missing.cap)

    def to_domain(self) -> MissingElement:
        return MissingElement(matrix=self.matrix.to_domain(), present_in=self.present_in.to_domain(),
                              word=word_from_model(self.word), missing_from=self.missing_from.to_domain(),
                              ambient=self.ambient, cap=self.cap)


class DegreeObstructionModel(BaseModel):
    kind: Literal['DegreeObstruction'] = 'DegreeObstruction'
    smaller_degree: BigInt
    larger_degree: BigInt
    determinant_obstruction: bool
    smaller: GroupSpecModel | None = None
    larger: GroupSpecModel | None = None

    @classmethod
    def from_domain(cls, obstruction: DegreeObstruction) -> 'DegreeObstructionModel':
        return cls(smaller_degree=obstruction.smaller_degree, larger_degree=obstruction.larger_degree,
                   determinant_obstruction=obstruction.determinant_obstruction,
                   smaller=GroupSpecModel.from_domain(obstruction.smaller) if obstruction.smaller else None,
                   larger=GroupSpecModel.from_domain(obstruction.larger) if obstruction.larger else None)

    def to_domain(self) -> DegreeObstruction:
        return DegreeObstruction(smaller_degree=self.smaller_degree, larger_degree=self.larger_degree,
                                 determinant_obstruction=self.determinant_obstruction,
                                 smaller=self.smaller.to_domain() if self.smaller else None,
                                 larger=self.larger.to_domain() if self.larger else None)


EvidenceModel = Annotated[
    Union[WitnessModel, OrderGapModel, FieldObstructionModel, MissingElementModel, DegreeObstructionModel],
    Field(discriminator='kind'),
]

_EVIDENCE_MODELS = {
    Witness: WitnessModel,
    OrderGap: OrderGapModel,
    FieldObstruction: FieldObstructionModel,
    MissingElement: MissingElementModel,
    DegreeObstruction: DegreeObstructionModel,
}


class RelationVerdictModel(BaseModel):
    answer: Literal['Equal', 'NotEqual', 'Subgroup', 'NotSubgroup', 'Undetermined']
    rule: str
    evidence: EvidenceModel | None = None

    @classmethod
    def from_domain(cls, verdict: RelationVerdict) -> 'RelationVerdictModel':
        evidence = None
        if verdict.evidence is not None:
            evidence = _EVIDENCE_MODELS[type(verdict.evidence)].from_domain(verdict.evidence)
        return cls(answer=verdict.answer.value, rule=verdict.rule, evidence=evidence)

    def to_domain(self) -> RelationVerdict:
        evidence = self.evidence.to_domain() if self.evidence is not None else None
        return RelationVerdict(Answer(self.answer), self.rule, evidence)


class GU29ReportModel(BaseModel):
    homomorphism: bool
    injective: bool
    image_size: BigInt
    in_gu29: bool
    sample_size: int

    @classmethod
    def from_domain(cls, report: GU29Report) -> 'GU29ReportModel':
        return cls(homomorphism=report.homomorphism, injective=report.injective, image_size=report.image_size,
                   in_gu29=report.in_gu29, sample_size=report.sample_size)

    def to_domain(self) -> GU29Report:
        return GU29Report(**self.model_dump())


class ActionModel(BaseModel):
    """Image of each signed Pauli matrix under conjugation by the evaluated word."""
    word: str
    matrix: Mat2Model
    action: dict[str, str]

    @classmethod
    def from_domain(cls, word: str, matrix: Mat2, action: SignedPauliAction) -> 'ActionModel':
        return cls(word=word, matrix=Mat2Model.from_domain(matrix),
                   action={str(s): str(image) for s, image in zip(SIGMA_PM, action)})
