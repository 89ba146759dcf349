"""
Tests for settings loading and saved reports.
"""

import sys
from pathlib import Path

import pytest
from pydantic import ValidationError

# Add the repository root to the path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import CONFIG_ENV, Settings, load_settings
from src.models.schemas import GridReport, VerificationCell
from src.storage import ReportManager


def test_defaults_when_file_missing(tmp_path):
    settings = load_settings(tmp_path / "absent.yaml")
    assert settings == Settings()
    assert settings.p_precision == 12
    assert settings.precision_for(4) == 200
    assert settings.precision_for(80) == 320


def test_yaml_values_and_env(tmp_path, monkeypatch):
    config = tmp_path / "custom.yaml"
    config.write_text("q_precision: 60\np_precision: 8\nworkers: 2\noutput_format: json\n")
    monkeypatch.setenv(CONFIG_ENV, str(config))

    settings = load_settings()
    assert settings.q_precision == 60
    assert settings.precision_for(100) == 60
    assert settings.p_precision == 8
    assert settings.workers == 2
    assert settings.output_format == "json"


def test_bad_yaml_falls_back(tmp_path, capsys):
    config = tmp_path / "broken.yaml"
    config.write_text("p_precision: [unclosed\n")
    assert load_settings(config) == Settings()
    assert "⚠️" in capsys.readouterr().err

    config.write_text("p_precision: 0\n")
    assert load_settings(config) == Settings()

    config.write_text("- just\n- a list\n")
    assert load_settings(config) == Settings()


def test_overrides_skip_none():
    settings = Settings()
    assert settings.with_overrides(workers=None) is settings
    updated = settings.with_overrides(workers=3, output_format="csv", q_precision=None)
    assert updated.workers == 3
    assert updated.output_format == "csv"
    assert updated.q_precision is None
    assert settings.workers is None


def test_overrides_are_validated():
    settings = Settings()
    with pytest.raises(ValidationError):
        settings.with_overrides(workers=0)
    with pytest.raises(ValidationError):
        settings.with_overrides(output_format="xml")
    assert settings.with_overrides(p_precision=20).p_precision == 20


def _report(name: str) -> GridReport:
    cell = VerificationCell(p=5, N=1, k=4, character="trivial", case_tag="I", status="PASS")
    return GridReport(name=name, cells=[cell], passed=1)


def test_report_round_trip(tmp_path):
    print("🧪 Testing: saving and loading a grid report")
    manager = ReportManager(tmp_path / "reports")
    path = manager.save_report(_report("Level One p=5"))
    assert path.name == "report.json"
    assert path.parent.name.startswith("level_one_p_5_")

    loaded = manager.load_report("Level One p=5")
    assert loaded is not None
    assert loaded.passed == 1
    assert loaded.cells[0].case_tag == "I"
    assert loaded.success

    listing = manager.list_reports()
    assert len(listing) == 1
    assert listing[0]["passed"] == 1


def test_missing_report(tmp_path):
    manager = ReportManager(tmp_path)
    assert manager.load_report("nothing") is None
    assert manager.list_reports() == []


@pytest.mark.parametrize("name, prefix", [("a/b", "a_b_"), ("Grid Run", "grid_run_")])
def test_run_dir_names(tmp_path, name, prefix):
    run_dir = ReportManager(tmp_path).create_run_dir(name)
    assert run_dir.is_dir()
    assert run_dir.name.startswith(prefix)
