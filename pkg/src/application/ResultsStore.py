import logging
import os
from enum import Enum
from pathlib import Path

import pandas as pd
from sqlalchemy import create_engine, exc, inspect

from src.application.CustomError import ResultsStoreError

DEFAULT_DATABASE = Path('data') / 'results.sqlite'


class ReportTable(Enum):
    ORDERS = 'OrderTable'
    RELATIONS = 'RelationTable'
    CERTIFICATES = 'CertificateTable'


def database_path_from_env() -> Path:
    """RESULTS_DATABASE, falling back to data/results.sqlite under the working directory."""
    return Path(os.getenv('RESULTS_DATABASE', str(Path.cwd() / DEFAULT_DATABASE)))


class ResultsStore:
    """
    Persists report tables in a SQLite database.

    Attributes:
        database_path (Path): Location of the SQLite file; its parent directory is created on demand.

    Methods:
        save_data(table_name: str, data: pd.DataFrame) -> None: Saves a DataFrame, replacing an existing table.
        read_data_from_table(table_name: str) -> pd.DataFrame: Reads a whole table into a DataFrame.
        table_names() -> list[str]: Lists the stored tables.
    """

    def __init__(self, database_path: Path | str | None = None):
        self.logger = logging.getLogger(__name__)
        self.logger.setLevel('INFO')
        self.database_path = Path(database_path) if database_path is not None else database_path_from_env()
        self._create_database()

    def _create_database(self) -> None:
        """
        Creates and validates the database connection.

        Raises:
            ResultsStoreError: If the database connection fails.
        """
        try:
            self.database_path.parent.mkdir(parents=True, exist_ok=True)
            self.engine = create_engine(f'sqlite:///{self.database_path}')
            with self.engine.connect():
                self.logger.info(f'Test connection to database: {self.database_path} successful.')
        except (exc.SQLAlchemyError, OSError) as e:
            raise ResultsStoreError(f'Failed to connect to database: {self.database_path}. Error: {e}') from e

    def read_data_from_table(self, table_name: str) -> pd.DataFrame:
        """
        Raises:
            ResultsStoreError: If the table is missing or the query fails.
        """
        try:
            return pd.read_sql_query(f'SELECT * FROM `{table_name}`', self.engine)
        except (exc.SQLAlchemyError, pd.errors.DatabaseError) as e:
            raise ResultsStoreError(f'Database error while reading data from table {table_name}: {e}') from e

    def save_data(self, table_name: str, data: pd.DataFrame) -> None:
        """
        Saves a DataFrame to a table, replacing it if it already exists.

        Raises:
            ResultsStoreError: If writing fails.
        """
        try:
            data.to_sql(table_name, self.engine, if_exists='replace', index=False)
            self.logger.info(f'Saved {len(data)} rows to table {table_name}')
        except exc.SQLAlchemyError as e:
            raise ResultsStoreError(f'Database error while saving data to table {table_name}: {e}') from e

    def table_names(self) -> list[str]:
        return inspect(self.engine).get_table_names()
