import json

import pytest

from betalac.config import ENV_PRECISION_BITS, RunConfig, geometric_grid


def test_geometric_grid_shape():
    grid = geometric_grid(100, 10**6, 41)
    assert grid[0] == 100 and grid[-1] == 10**6
    assert grid == sorted(set(grid))
    assert len(grid) >= 30
    assert geometric_grid(5, 5, 3) == [5]
    with pytest.raises(ValueError):
        geometric_grid(10, 5, 3)


def test_bit_schedule_doubles_to_budget():
    cfg = RunConfig(precision_bits=512, start_bits=64)
    assert list(cfg.bit_schedule()) == [64, 128, 256, 512]
    uneven = RunConfig(precision_bits=300, start_bits=64)
    assert list(uneven.bit_schedule()) == [64, 128, 256, 300]


def test_budget_floor_enforced():
    with pytest.raises(ValueError):
        RunConfig(precision_bits=32)
    with pytest.raises(ValueError):
        RunConfig(output_format="xml")


def test_env_var_controls_default(monkeypatch):
    monkeypatch.setenv(ENV_PRECISION_BITS, "2048")
    assert RunConfig().precision_bits == 2048
    monkeypatch.setenv(ENV_PRECISION_BITS, "not a number")
    with pytest.raises(ValueError):
        RunConfig()


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"precision_bits": 4096, "grid_stop": 10**5}))
    cfg = RunConfig.from_json_file(str(path))
    assert cfg.precision_bits == 4096
    assert cfg.default_grid()[-1] == 10**5
    path.write_text(json.dumps({"mystery": 1}))
    with pytest.raises(ValueError):
        RunConfig.from_json_file(str(path))
