"""Configuration file + environment overrides for backends and the service.

Schema (JSON, all keys optional)::

    {
      "database": "fixtures/miniset.mm",
      "policy": "replay" | "baseline" | "lm",
      "endpoint": "http://host:port",
      "eot": "<|endoftext|>",
      "retries": 3,
      "pool_constants": ["0", "1", "2"],
      "session_ttl": 3600,
      "max_sessions": 256,
      "host": "127.0.0.1",
      "port": 8371
    }

Environment variables override file values: ``MMPROVER_DATABASE``,
``MMPROVER_POLICY``, ``MMPROVER_ENDPOINT``, ``MMPROVER_SESSION_TTL``,
``MMPROVER_MAX_SESSIONS``, ``MMPROVER_PORT``. Command-line flags, when
given explicitly, override both.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field, fields
from pathlib import Path

_ENV_PREFIX = "MMPROVER_"


@dataclass
class Config:
    database: str | None = None
    policy: str = "baseline"
    endpoint: str | None = None
    eot: str = "<|endoftext|>"
    retries: int = 3
    pool_constants: list[str] = field(default_factory=lambda: ["0", "1", "2"])
    session_ttl: float = 3600.0
    max_sessions: int = 256
    host: str = "127.0.0.1"
    port: int = 8371


def load_config(path: str | None = None, env: dict | None = None) -> Config:
    """File values, then environment overrides, onto the defaults."""
    cfg = Config()
    if path:
        data = json.loads(Path(path).read_text())
        unknown = set(data) - {f.name for f in fields(Config)}
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        for f in fields(Config):
            if f.name in data:
                setattr(cfg, f.name, data[f.name])
    env = os.environ if env is None else env
    for f in fields(Config):
        raw = env.get(_ENV_PREFIX + f.name.upper())
        if raw is None:
            continue
        cur = getattr(cfg, f.name)
        if f.name == "pool_constants":
            setattr(cfg, f.name, [c for c in raw.split(",") if c])
        elif isinstance(cur, float):
            setattr(cfg, f.name, float(raw))
        elif isinstance(cur, int):
            setattr(cfg, f.name, int(raw))
        else:
            setattr(cfg, f.name, raw)
    return cfg
