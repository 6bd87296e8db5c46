# utils/config.py
import os
import logging
from functools import lru_cache
from typing import Any, Dict

import yaml
from dotenv import load_dotenv

from utils.paths import ENV_PATH, PARAMS_PATH

# Load env from root
load_dotenv(ENV_PATH)

# --- FALLBACKS (used when params.yaml lacks a key) ---
DEFAULT_BUDGET = 50_000_000
DEFAULT_MAX_STRANDS = 6
DEFAULT_MAX_WORD_LETTERS = 8


@lru_cache(maxsize=1)
def load_params() -> Dict[str, Any]:
    """Reads params.yaml once per process."""
    if not PARAMS_PATH.exists():
        raise FileNotFoundError(f"params.yaml missing at {PARAMS_PATH}")

    with open(PARAMS_PATH, "r", encoding="utf-8") as f:
        params = yaml.safe_load(f) or {}
    return params


def _limit(key: str, fallback: int) -> int:
    return int(load_params().get("limits", {}).get(key, fallback))


def get_budget() -> int:
    """
    Entry ceiling for bar complexes. BRAUER_BUDGET (env or .env) wins over
    params.yaml.
    """
    raw = os.getenv("BRAUER_BUDGET")
    if raw:
        try:
            value = int(float(raw))
        except ValueError as e:
            raise EnvironmentError(f"❌ BRAUER_BUDGET is not a number: {raw!r}") from e
        if value <= 0:
            raise EnvironmentError(f"❌ BRAUER_BUDGET must be positive, got {value}")
        return value
    return _limit("budget_entries", DEFAULT_BUDGET)


def get_max_strands() -> int:
    return _limit("max_strands", DEFAULT_MAX_STRANDS)


def get_max_word_letters() -> int:
    return _limit("max_word_letters", DEFAULT_MAX_WORD_LETTERS)


def get_defaults() -> Dict[str, Any]:
    return dict(load_params().get("defaults", {}))


def get_suite_params(suite: str) -> Dict[str, Any]:
    return dict(load_params().get("verify", {}).get(suite, {}))


def get_log_level() -> int:
    name = os.getenv("BRAUER_LOG_LEVEL") or load_params().get("logging", {}).get("level", "INFO")
    return getattr(logging, str(name).upper(), logging.INFO)
