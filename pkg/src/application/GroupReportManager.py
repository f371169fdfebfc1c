import logging

import pandas as pd

from src.application.CustomError import NotApplicable
from src.application.PauliRootGroups import (
    CapExceeded,
    GroupKind,
    GroupSpec,
    all_specs,
    classify,
    enumerate_group,
    infiniteness_certificate,
    is_finite,
    predicted_order,
    structure_label,
)
from src.application.Relations import Answer, brute_force_relation, decide_equal
from src.application.ResultsStore import ReportTable, ResultsStore


class GroupReportManager:
    """
    Builds the order table, the equality grid and the certificate table as DataFrames and stores them.

    Attributes:
        results_db (ResultsStore | None): Where tables are persisted; created on first use when not given.
    """

    def __init__(self, results_db: ResultsStore | None = None):
        self.logger = logging.getLogger(__name__)
        self.logger.setLevel('INFO')
        self._results_db = results_db

    @property
    def results_db(self) -> ResultsStore:
        if self._results_db is None:
            self._results_db = ResultsStore()
        return self._results_db

    def _order_specs(self, cyclic_max: int, polycyclic_max: int, smooth_degrees) -> list[GroupSpec]:
        specs = []
        for k in range(1, max(cyclic_max, polycyclic_max) + 1):
            for spec in all_specs(k):
                kind = classify(spec)
                if (kind is GroupKind.CYCLIC and k <= cyclic_max) or (
                        kind is GroupKind.POLYCYCLIC and k <= polycyclic_max):
                    specs.append(spec)
        for k in smooth_degrees:
            specs.extend(spec for spec in all_specs(k) if classify(spec) is GroupKind.SMOOTH)
        return specs

    def order_table(self, cyclic_max: int = 12, polycyclic_max: int = 8, smooth_degrees=(1, 2, 4)) -> pd.DataFrame:
        """
        Predicted against enumerated group orders.

        Returns:
            pd.DataFrame: Columns spec, kind, k, predicted_order, enumerated_order, structure, match.
        """
        rows = []
        for spec in self._order_specs(cyclic_max, polycyclic_max, smooth_degrees):
            if not is_finite(spec):
                self.logger.warning(f'Skipping infinite group {spec.label} in the order table')
                continue
            group = enumerate_group(spec)
            enumerated = None if isinstance(group, CapExceeded) else len(group)
            predicted = predicted_order(spec)
            rows.append({
                'spec': spec.literal,
                'kind': classify(spec).value,
                'k': spec.k,
                'predicted_order': predicted,
                'enumerated_order': enumerated,
                'structure': structure_label(spec),
                'match': enumerated == predicted,
            })
        table = pd.DataFrame(rows)
        self.logger.info(f'Order table: {int(table["match"].sum())} of {len(table)} orders reproduced')
        return table

    def relation_table(self, k: int, cap: int | None = None) -> pd.DataFrame:
        """
        Equality decisions against brute force for all ordered pairs of the twelve specs of degree k.

        Returns:
            pd.DataFrame: Columns p, q, theorem_answer, rule, brute_force_answer, agrees. `agrees` is None
            when brute force is undetermined.
        """
        rows = []
        specs = all_specs(k)
        for p in specs:
            for q in specs:
                verdict = decide_equal(p, q)
                oracle = brute_force_relation(p, q, cap=cap)
                decided = oracle.answer is not Answer.UNDETERMINED
                rows.append({
                    'p': p.literal,
                    'q': q.literal,
                    'theorem_answer': verdict.answer.value,
                    'rule': verdict.rule,
                    'brute_force_answer': oracle.answer.value,
                    'agrees': verdict.answer is oracle.answer if decided else None,
                })
        table = pd.DataFrame(rows)
        disagreements = table[table['agrees'] == False]  # noqa: E712
        if not disagreements.empty:
            self.logger.error(f'{len(disagreements)} equality decisions disagree with brute force at k={k}')
        return table

    def certificate_table(self, degrees=(1, 2, 3, 4, 5, 6, 7, 8, 12)) -> pd.DataFrame:
        """
        One row per smooth spec; uncertified rows keep witness_index at -1.
        """
        rows = []
        for k in degrees:
            for spec in all_specs(k):
                if classify(spec) is not GroupKind.SMOOTH:
                    continue
                try:
                    certificate = infiniteness_certificate(spec)
                except NotApplicable as e:
                    self.logger.info(f'{spec.label} not certified: {e.message}')
                    rows.append({'spec': spec.literal, 'k': k, 'certified': False, 'trace_squared': '',
                                 'coordinates': '', 'witness_index': -1})
                    continue
                rows.append({
                    'spec': spec.literal,
                    'k': k,
                    'certified': True,
                    'trace_squared': str(certificate.trace_squared),
                    'coordinates': ', '.join(str(c) for c in certificate.coordinates),
                    'witness_index': certificate.witness_index,
                })
        return pd.DataFrame(rows)

    def save_report(self, table: ReportTable, data: pd.DataFrame) -> None:
        self.results_db.save_data(table.value, data)

    def read_report(self, table: ReportTable) -> pd.DataFrame:
        return self.results_db.read_data_from_table(table.value)
