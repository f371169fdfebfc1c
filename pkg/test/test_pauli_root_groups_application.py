from pathlib import Path

import pytest

from src import pauli_root_groups_application as application


@pytest.fixture
def clean_environment(monkeypatch):
    """Fixture to start each launcher test without service variables."""
    for name in ('RESULTS_DATABASE', 'ENUMERATION_CAP'):
        monkeypatch.setenv(name, '')
        monkeypatch.delenv(name)
    yield monkeypatch


def test_configure_exports_settings(clean_environment, tmp_path: Path) -> None:
    """Test that --database and --cap reach the variables the API reads."""
    database = tmp_path / 'service.sqlite'
    args = application.build_parser().parse_args(
        ['--database', str(database), '--cap', '512', '--port', '9000', '--log-level', 'WARNING'])
    settings = application.configure(args)
    assert settings == {'host': '0.0.0.0', 'port': 9000, 'log_level': 'warning'}
    assert application.os.environ['RESULTS_DATABASE'] == str(database)
    assert application.os.environ['ENUMERATION_CAP'] == '512'


def test_configure_keeps_environment(clean_environment) -> None:
    """Test that the environment is left alone without overrides."""
    clean_environment.setenv('ENUMERATION_CAP', '100')
    application.configure(application.build_parser().parse_args([]))
    assert application.os.environ['ENUMERATION_CAP'] == '100'
    assert 'RESULTS_DATABASE' not in application.os.environ


def test_serve_runs_uvicorn(clean_environment) -> None:
    """Test that serve hands the API import path and settings to uvicorn."""
    calls = []
    clean_environment.setattr(application.uvicorn, 'run', lambda app, **kwargs: calls.append((app, kwargs)))
    application.serve(['--port', '8181'])
    assert calls == [(application.APP, {'host': '0.0.0.0', 'port': 8181, 'log_level': 'info'})]
