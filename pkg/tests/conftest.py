import pytest

from liespectra import cli


@pytest.fixture
def run_cli(capsys):
    """Invoke the CLI entry point in-process; returns (exit_code, stdout, stderr)."""

    def invoke(*args):
        code = cli.main([str(a) for a in args])
        captured = capsys.readouterr()
        return code, captured.out, captured.err

    return invoke
