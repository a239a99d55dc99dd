# tests/test_settings.py
from core import settings as st

def test_missing_file_gives_defaults(tmp_path, monkeypatch):
    monkeypatch.delenv("CONGRUENCE_LAB_CACHE", raising=False)
    s = st.load_settings(str(tmp_path / "nope.json"))
    assert s == st.LabSettings()

def test_save_and_load_round_trip(tmp_path, monkeypatch):
    monkeypatch.delenv("CONGRUENCE_LAB_CACHE", raising=False)
    path = str(tmp_path / "conf" / "settings.json")
    s = st.LabSettings(cache_dir=str(tmp_path / "c"), support_min=40, log_level="INFO")
    st.save_settings(s, path)
    assert st.load_settings(path) == s

def test_invalid_values_fall_back_to_defaults(tmp_path, monkeypatch):
    monkeypatch.delenv("CONGRUENCE_LAB_CACHE", raising=False)
    path = str(tmp_path / "settings.json")
    st.save_settings(st.LabSettings(log_level="LOUD"), path)
    assert st.load_settings(path).log_level == "WARNING"

def test_environment_overrides_the_cache_dir(tmp_path, cache_dir):
    s = st.load_settings(str(tmp_path / "nope.json"))
    assert s.cache_dir == cache_dir
