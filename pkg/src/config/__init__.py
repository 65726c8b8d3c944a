"""
Configuration Management
"""

import os
from functools import lru_cache
from pathlib import Path
from typing import Any, Dict, Optional

import yaml

# Base paths
PROJECT_ROOT = Path(__file__).parent.parent.parent
CONFIG_DIR = PROJECT_ROOT / "config"
TESTS_DIR = PROJECT_ROOT / "tests"
CONFIG_PATH = CONFIG_DIR / "config.yaml"

# Environment
THREADS_ENV_VAR = "LABP_THREADS"


@lru_cache(maxsize=1)
def load_config() -> Dict[str, Any]:
    """Load packaged defaults from config/config.yaml"""
    with open(CONFIG_PATH, 'r') as f:
        return yaml.safe_load(f) or {}


def get_setting(section: str, key: str, default: Any = None) -> Any:
    """Read one setting, falling back to default when absent"""
    return load_config().get(section, {}).get(key, default)


def resolve_threads(flag: Optional[int] = None) -> int:
    """Worker count: explicit flag, then LABP_THREADS, then core count"""
    if flag is not None:
        threads = int(flag)
    elif os.getenv(THREADS_ENV_VAR):
        threads = int(os.environ[THREADS_ENV_VAR])
    else:
        threads = os.cpu_count() or 1
    if threads < 1:
        raise ValueError(f"thread count must be positive, got {threads}")
    return threads


def default_ladder() -> list:
    """Geometric annealing ladder 10^start .. 10^stop"""
    start = int(get_setting('bp_engine', 'ladder_start_exponent', 0))
    stop = int(get_setting('bp_engine', 'ladder_stop_exponent', 8))
    return [10.0 ** k for k in range(start, stop + 1)]


__all__ = [
    'PROJECT_ROOT', 'CONFIG_DIR', 'TESTS_DIR', 'CONFIG_PATH',
    'THREADS_ENV_VAR', 'load_config', 'get_setting',
    'resolve_threads', 'default_ladder'
]
