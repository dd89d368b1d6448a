import json

import pytest
from click.testing import CliRunner

from mmprover.cli import main
from mmprover.config import Config, load_config


def test_defaults():
    cfg = load_config(env={})
    assert cfg.policy == "baseline" and cfg.port == 8371
    assert cfg.pool_constants == ["0", "1", "2"]


def test_file_values(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"policy": "lm", "endpoint": "http://x:1",
                             "retries": 5, "pool_constants": ["0", "9"],
                             "session_ttl": 10}))
    cfg = load_config(str(p), env={})
    assert cfg.policy == "lm" and cfg.endpoint == "http://x:1"
    assert cfg.retries == 5 and cfg.pool_constants == ["0", "9"]
    assert cfg.session_ttl == 10


def test_env_overrides_file(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"policy": "lm", "port": 9}))
    env = {"MMPROVER_POLICY": "replay", "MMPROVER_PORT": "8123",
           "MMPROVER_SESSION_TTL": "12.5",
           "MMPROVER_POOL_CONSTANTS": "1,2,3"}
    cfg = load_config(str(p), env=env)
    assert cfg.policy == "replay" and cfg.port == 8123
    assert cfg.session_ttl == 12.5
    assert cfg.pool_constants == ["1", "2", "3"]


def test_unknown_keys_rejected(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"nonsense": 1}))
    with pytest.raises(ValueError):
        load_config(str(p), env={})


def test_serve_requires_database_somewhere():
    r = CliRunner().invoke(main, ["serve"], env={"MMPROVER_DATABASE": ""})
    assert r.exit_code == 5
