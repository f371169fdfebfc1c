import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from src.application.CustomError import CustomError, UsageError
from src.application.FiniteField import verify_gu29_isomorphism
from src.application.GroupReportManager import GroupReportManager
from src.application.PauliRootGroups import (
    CapExceeded,
    enumerate_group,
    infiniteness_certificate,
    polycyclic_nf,
)
from src.application.QMat import evaluate_gate_word, signed_pauli_action
from src.application.Relations import Answer, brute_force_relation, decide_relation, witness_generators
from src.application.ResultsStore import ReportTable, ResultsStore
from src.application.Schemas import (
    ActionModel,
    CertificateModel,
    ClassificationModel,
    GU29ReportModel,
    PolycyclicNFModel,
    RelationVerdictModel,
    WitnessModel,
    enumeration_to_model,
)
from src.application.SpecLiteral import parse_gate_word, parse_spec

EXIT_DECIDED = 0
EXIT_UNDETERMINED = 2

logger = logging.getLogger(__name__)


class _ArgumentParser(argparse.ArgumentParser):
    """Raises UsageError instead of exiting on bad arguments."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _common_options() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument('--cap', type=int, default=None, help='Maximum number of enumerated elements.')
    common.add_argument('--ambient', type=int, default=None, help='Cyclotomic field order for matrix entries.')
    common.add_argument('--json-indent', type=int, default=2, help='Indentation of the JSON output.')
    common.add_argument('--out', type=Path, default=None, help='Write the JSON output to this file.')
    common.add_argument('--verbose', action='store_true', help='Log at INFO level.')
    common.add_argument('--database', type=Path, default=None,
                        help='SQLite file for report tables (defaults to RESULTS_DATABASE).')
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = _ArgumentParser(prog='pauli-root-groups',
                             description='Decide, enumerate and certify Pauli root groups ⟨V_{k,a}, ρ_bc⟩.')
    subparsers = parser.add_subparsers(dest='command', required=True)

    classify_parser = subparsers.add_parser('classify', parents=[common], help='Kind, finiteness, order and structure.')
    classify_parser.add_argument('spec', help='Group literal k:a:bc or an alias such as clifford.')

    enumerate_parser = subparsers.add_parser('enumerate', parents=[common], help='Breadth-first closure with words.')
    enumerate_parser.add_argument('spec')

    for name, help_text in (('equal', 'Decide P = Q.'), ('subgroup', 'Decide P ≤ Q.')):
        relation_parser = subparsers.add_parser(name, parents=[common], help=help_text)
        relation_parser.add_argument('p')
        relation_parser.add_argument('q')
        relation_parser.add_argument('--brute-force', action='store_true',
                                     help='Compare enumerated element sets instead of applying the theorems.')

    witness_parser = subparsers.add_parser('witness', parents=[common],
                                           help='Words over the generators of P for the generators of Q.')
    witness_parser.add_argument('p')
    witness_parser.add_argument('q')
    witness_parser.add_argument('--dagger-free', action='store_true', help="Rewrite V' as V^(k-1).")

    certify_parser = subparsers.add_parser('certify', parents=[common], help='Infiniteness certificate.')
    certify_parser.add_argument('spec')

    normal_form_parser = subparsers.add_parser('normal-form', parents=[common],
                                               help='Exponents (s, t, u) of a gate word in a polycyclic group.')
    normal_form_parser.add_argument('spec')
    normal_form_parser.add_argument('word')

    gu29_parser = subparsers.add_parser('gu29-check', parents=[common], help='Clifford group versus GU(2,9).')
    gu29_parser.add_argument('--sample-size', type=int, default=10000)
    gu29_parser.add_argument('--seed', type=int, default=0)

    action_parser = subparsers.add_parser('action', parents=[common], help='Permutation of the signed Pauli matrices.')
    action_parser.add_argument('word', help="Gate word such as \"H S T'\".")

    report_parser = subparsers.add_parser('report', parents=[common], help='Build and store a report table.')
    report_parser.add_argument('table', choices=['orders', 'relations', 'certificates'])
    report_parser.add_argument('--degree', type=int, default=4, help='Degree of the relation grid.')
    return parser


def _emit(text: str, args: argparse.Namespace) -> None:
    if args.out is not None:
        args.out.write_text(text + '\n', encoding='utf-8')
        logger.info(f'Wrote {args.out}')
    else:
        print(text)


def _dump(model, args: argparse.Namespace) -> str:
    return model.model_dump_json(indent=args.json_indent, by_alias=True)


def _verdict(args: argparse.Namespace) -> int:
    p, q = parse_spec(args.p), parse_spec(args.q)
    if args.brute_force:
        verdict = brute_force_relation(p, q, cap=args.cap, relation=args.command)
    else:
        verdict = decide_relation(p, q, relation=args.command)
    _emit(_dump(RelationVerdictModel.from_domain(verdict), args), args)
    return EXIT_UNDETERMINED if verdict.answer is Answer.UNDETERMINED else EXIT_DECIDED


def _report(args: argparse.Namespace) -> int:
    manager = GroupReportManager(ResultsStore(args.database) if args.database is not None else None)
    if args.table == 'orders':
        table, data = ReportTable.ORDERS, manager.order_table()
    elif args.table == 'relations':
        table, data = ReportTable.RELATIONS, manager.relation_table(args.degree, cap=args.cap)
    else:
        table, data = ReportTable.CERTIFICATES, manager.certificate_table()
    manager.save_report(table, data)
    _emit(data.to_json(orient='records', indent=args.json_indent, force_ascii=False), args)
    return EXIT_DECIDED


def run_command(args: argparse.Namespace) -> int:
    """Executes one parsed command and returns its exit code."""
    if args.command == 'classify':
        _emit(_dump(ClassificationModel.from_domain(parse_spec(args.spec)), args), args)
    elif args.command == 'enumerate':
        result = enumerate_group(parse_spec(args.spec), cap=args.cap, ambient=args.ambient)
        _emit(_dump(enumeration_to_model(result), args), args)
        if isinstance(result, CapExceeded):
            return EXIT_UNDETERMINED
    elif args.command in ('equal', 'subgroup'):
        return _verdict(args)
    elif args.command == 'witness':
        witness = witness_generators(parse_spec(args.p), parse_spec(args.q))
        if args.dagger_free:
            witness = witness.dagger_free()
        _emit(_dump(WitnessModel.from_domain(witness), args), args)
    elif args.command == 'certify':
        _emit(_dump(CertificateModel.from_domain(infiniteness_certificate(parse_spec(args.spec))), args), args)
    elif args.command == 'normal-form':
        spec = parse_spec(args.spec)
        matrix = evaluate_gate_word(parse_gate_word(args.word), ambient=args.ambient or spec.ambient)
        _emit(_dump(PolycyclicNFModel.from_domain(polycyclic_nf(spec, matrix)), args), args)
    elif args.command == 'gu29-check':
        clifford = enumerate_group(parse_spec('clifford'), cap=args.cap)
        if isinstance(clifford, CapExceeded):
            _emit(_dump(enumeration_to_model(clifford), args), args)
            return EXIT_UNDETERMINED
        report = verify_gu29_isomorphism(clifford, sample_size=args.sample_size, seed=args.seed)
        _emit(_dump(GU29ReportModel.from_domain(report), args), args)
    elif args.command == 'action':
        matrix = evaluate_gate_word(parse_gate_word(args.word), ambient=args.ambient)
        _emit(_dump(ActionModel.from_domain(args.word, matrix, signed_pauli_action(matrix)), args), args)
    elif args.command == 'report':
        return _report(args)
    return EXIT_DECIDED


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        return run_command(args)
    except CustomError as e:
        print(str(e), file=sys.stderr)
        return e.error_code


def run() -> None:
    sys.exit(main())


if __name__ == '__main__':
    run()
