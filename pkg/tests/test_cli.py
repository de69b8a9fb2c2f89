import json
import subprocess
import sys
from pathlib import Path

import pytest

from relcoh.cli import main
from relcoh.session import parse_session

DATA = Path(__file__).parent / "data"


def run_cli(args, stdin=None):
    proc = subprocess.run(
        [sys.executable, "-m", "relcoh.cli"] + args,
        capture_output=True, text=True, input=stdin, timeout=300,
    )
    return proc


@pytest.mark.parametrize("name", ["golden_qt", "golden_qq"])
def test_golden_report_stream(name):
    proc = run_cli(["run", str(DATA / ("%s.lc" % name))])
    assert proc.returncode == 0, proc.stderr
    expected = (DATA / ("%s.ndjson" % name)).read_text()
    assert proc.stdout == expected
    for line in proc.stdout.splitlines():
        json.loads(line)
    assert "0 error(s)" in proc.stderr


@pytest.mark.parametrize("name", ["golden_qt", "golden_qq"])
def test_golden_scripts_round_trip(name):
    script = (DATA / ("%s.lc" % name)).read_text()
    session = parse_session(script)
    assert parse_session(session.pretty()) == session


def test_stdin_input_and_exit_codes():
    ok = run_cli(["run"], stdin="ring A = QQ; ring R = A[x];"
                               " module M = coker [[x]];"
                               " compute localcoh M i=0..1 window=-2..0;")
    assert ok.returncode == 0
    parse_fail = run_cli(["run"], stdin="ring A = ;")
    assert parse_fail.returncode == 1
    assert "relcoh:" in parse_fail.stderr
    kernel_fail = run_cli(["run"], stdin="ring A = QQ; ring R = A[x];"
                                         " module M = coker [[x]];"
                                         " compute localcoh M i=0..5;")
    assert kernel_fail.returncode == 2


def test_missing_file_is_usage_error():
    proc = run_cli(["run", "/nonexistent/script.lc"])
    assert proc.returncode == 1


def test_window_flag_applies_default():
    proc = run_cli(["run", "--window=-2..0"],
                   stdin="ring A = QQ; ring R = A[x];"
                         " module M = coker [[x]];"
                         " compute localcoh M i=0..1;")
    assert proc.returncode == 0
    report = json.loads(proc.stdout.splitlines()[0])
    assert report["params"]["window"] == [-2, 0]


def test_main_entry_in_process(capsys):
    code = main(["run", str(DATA / "golden_qt.lc")])
    assert code == 0
    out = capsys.readouterr()
    assert out.out == (DATA / "golden_qt.ndjson").read_text()
