# tests/test_qseries_cache.py
import json
import os

import pytest

from core.errors import DomainError
from features.forms import controller as fc
from features.qseries import cache

def test_exact_series_survive_a_save_and_load(tmp_path):
    d = fc.delta(12)
    path = cache.save_series(d, str(tmp_path / "delta.json"))
    back = cache.load_series(path)
    assert back == d
    assert back.descriptor.name == "delta"
    assert back.descriptor.weight == 12

def test_exact_coefficients_are_written_as_strings(tmp_path):
    path = cache.save_series(fc.delta(4), str(tmp_path / "d.json"))
    with open(path, encoding="utf-8") as fh:
        rec = json.load(fh)
    assert rec["domain"] == "int"
    assert rec["coefficients"] == ["1", "-24", "252"]
    assert list(rec.keys()) == ["descriptor", "domain", "denom", "valuation", "precision", "coefficients"]

def test_reduced_series_keep_their_modulus(tmp_path):
    f = fc.eta_power(-1, 8, 13)
    back = cache.load_series(cache.save_series(f, str(tmp_path / "eta.json")))
    assert back.modulus == 13
    assert back.denom == 24
    assert back == f

def test_unknown_domain_is_rejected():
    with pytest.raises(DomainError):
        cache.from_record({"domain": "gaussian", "denom": 1, "valuation": 0, "precision": 1, "coefficients": [1]})

def test_cache_path_follows_the_environment(cache_dir):
    path = cache.cache_path("e4*delta")
    assert os.path.dirname(path) == cache_dir
    assert os.path.basename(path) == "e4_delta.json"
