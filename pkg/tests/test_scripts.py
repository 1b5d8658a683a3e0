import runpy
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize(
    "name,argv",
    [("cesaro_table.py", ["100", "2"]), ("greedy_certificates.py", ["2000"]), ("fmodel_corpus.py", ["20", "1"])],
)
def test_script_runs(name, argv, monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", [name, *argv])
    try:
        runpy.run_path(str(SCRIPTS / name), run_name="__main__")
    except SystemExit as exc:
        assert exc.code == 0
    assert capsys.readouterr().out.strip()
