import pytest

from src.settings import Settings, SettingsError, read_settings

KEYS = ("JACOBI_CELLS_LOG_LEVEL", "JACOBI_CELLS_THREADS", "JACOBI_CELLS_VERIFY_BOUND")


@pytest.fixture
def config_file(monkeypatch, tmp_path):
    path = tmp_path / "config"
    monkeypatch.setenv("JACOBI_CELLS_CONFIG", str(path))
    for key in KEYS:
        monkeypatch.delenv(key, raising=False)
    return path


def test_defaults_without_config(config_file):
    assert read_settings() == Settings(log_level="WARNING", threads=1, verify_bound=14)


def test_values_from_file(config_file):
    config_file.write_text(
        "# local overrides\n"
        "JACOBI_CELLS_LOG_LEVEL = debug\n"
        "JACOBI_CELLS_THREADS=4\n"
        "not a setting\n",
        encoding="utf-8",
    )
    settings = read_settings()
    assert settings.log_level == "DEBUG"
    assert settings.threads == 4
    assert settings.verify_bound == 14


def test_environment_wins_over_file(config_file, monkeypatch):
    config_file.write_text("JACOBI_CELLS_VERIFY_BOUND=10\n", encoding="utf-8")
    monkeypatch.setenv("JACOBI_CELLS_VERIFY_BOUND", "12")
    assert read_settings().verify_bound == 12


def test_blank_environment_falls_back_to_file(config_file, monkeypatch):
    config_file.write_text("JACOBI_CELLS_THREADS=3\n", encoding="utf-8")
    monkeypatch.setenv("JACOBI_CELLS_THREADS", "  ")
    assert read_settings().threads == 3


@pytest.mark.parametrize(
    "key, value, message",
    [
        ("JACOBI_CELLS_THREADS", "many", "must be an integer"),
        ("JACOBI_CELLS_THREADS", "0", "at least 1"),
        ("JACOBI_CELLS_VERIFY_BOUND", "-3", "at least 1"),
        ("JACOBI_CELLS_LOG_LEVEL", "loud", "must be one of"),
    ],
)
def test_invalid_values(config_file, monkeypatch, key, value, message):
    monkeypatch.setenv(key, value)
    with pytest.raises(SettingsError, match=message):
        read_settings()
