import json

import pytest

from cycloverify.suite import CELLS, CRITERION, ConfigError, SuiteConfig, run_suite


def test_default_config_matches_dataclass():
    assert SuiteConfig.from_toml(None) == SuiteConfig()


def test_criteria_numbered_in_order():
    assert sorted(CRITERION.values()) == list(range(1, len(CELLS) + 1))


def test_unknown_key_rejected():
    with pytest.raises(ConfigError):
        SuiteConfig.from_dict({"grids": {"es_bund": 3}})


def test_bad_toml(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("jobs = [")
    with pytest.raises(ConfigError):
        SuiteConfig.from_toml(bad)


def test_custom_toml(tmp_path):
    path = tmp_path / "small.toml"
    path.write_text("[grids]\nes_bound = 30\nkummer_primes = [3]\n")
    cfg = SuiteConfig.from_toml(path)
    assert cfg.es_bound == 30 and cfg.kummer_primes == (3,)


def test_empty_suite_passes():
    res = run_suite(SuiteConfig(cells=()))
    assert res.passed and res.to_dict()["summary"] == {}


def test_only_filters():
    res = run_suite(SuiteConfig(only=("cnf", "exact-sequence")))
    assert list(res.cells) == ["cnf", "exact-sequence"]


def test_deterministic_without_timing():
    cfg = SuiteConfig(only=("exact-values", "mc-check", "recip"))
    a = json.dumps(run_suite(cfg).to_dict(timing=False), sort_keys=True)
    b = json.dumps(run_suite(cfg).to_dict(timing=False), sort_keys=True)
    assert a == b


@pytest.mark.slow
def test_parallel_matches_serial():
    serial = run_suite(SuiteConfig(only=("cnf", "exact-sequence", "mc-check")))
    para = run_suite(SuiteConfig(only=("cnf", "exact-sequence", "mc-check"), jobs=2))
    assert json.dumps(serial.to_dict(), sort_keys=True) == json.dumps(para.to_dict(), sort_keys=True)
