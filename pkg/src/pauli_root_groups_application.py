import argparse
import logging
import os
from collections.abc import Sequence
from pathlib import Path

import uvicorn

from src.application.rest.pauli_root_groups_API import DEFAULT_ENUMERATION_CAP
from src.application.ResultsStore import database_path_from_env

APP = 'src.application.rest.pauli_root_groups_API:app'

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='pauli-root-groups-service',
                                     description='Serve the Pauli root group API with uvicorn.')
    parser.add_argument('--host', default='0.0.0.0')
    parser.add_argument('--port', type=int, default=8080)
    parser.add_argument('--database', type=Path, default=None,
                        help='SQLite file for report tables; overrides RESULTS_DATABASE.')
    parser.add_argument('--cap', type=int, default=None,
                        help=f'Default enumeration cap; overrides ENUMERATION_CAP (default {DEFAULT_ENUMERATION_CAP}).')
    parser.add_argument('--log-level', default='INFO', choices=['DEBUG', 'INFO', 'WARNING', 'ERROR'])
    return parser


def configure(args: argparse.Namespace) -> dict:
    """
    Exports the service settings to the environment read by the API lifespan.

    Args:
        args (argparse.Namespace): Parsed launcher arguments.

    Returns:
        dict: Keyword arguments for uvicorn.run.
    """
    if args.database is not None:
        os.environ['RESULTS_DATABASE'] = str(args.database)
    if args.cap is not None:
        os.environ['ENUMERATION_CAP'] = str(args.cap)
    logging.basicConfig(level=args.log_level)
    logger.setLevel(args.log_level)
    logger.info(f'Results database: {database_path_from_env()}, enumeration cap: '
                f'{os.environ.get("ENUMERATION_CAP", DEFAULT_ENUMERATION_CAP)}')
    return {'host': args.host, 'port': args.port, 'log_level': args.log_level.lower()}


def serve(argv: Sequence[str] | None = None) -> None:
    settings = configure(build_parser().parse_args(argv))
    logger.info('Service: \'%s\' started', Path(__file__).stem)
    uvicorn.run(APP, **settings)
    logger.info('Service: \'%s\' shutdown', Path(__file__).stem)


if __name__ == "__main__":
    serve()
