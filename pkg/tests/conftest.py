import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest
from hypothesis import settings

from detmld import cli

settings.register_profile("detmld", deadline=None)
settings.load_profile("detmld")


@pytest.fixture
def run_cli():
    """Invoke the CLI in-process; returns (exit code, stdout, stderr)."""

    def run(args):
        out, err = io.StringIO(), io.StringIO()
        code = 0
        with redirect_stdout(out), redirect_stderr(err):
            try:
                code = cli.main(list(args))
            except SystemExit as exc:
                code = exc.code if isinstance(exc.code, int) else 1
        return code, out.getvalue(), err.getvalue()

    return run


@pytest.fixture
def run_cli_json(run_cli):
    """Invoke the CLI and parse its stdout as JSON, asserting exit code 0."""

    def run(args):
        code, out, err = run_cli(args)
        assert code == 0, f"exit {code}, stderr: {err}"
        return json.loads(out)

    return run
