from pathlib import Path

# __file__ is: .../brauer-homology/utils/paths.py
# .parent.parent is the project root
BASE_DIR = Path(__file__).resolve().parent.parent

PARAMS_PATH = BASE_DIR / "params.yaml"
ENV_PATH = BASE_DIR / ".env"

DATA_DIR = BASE_DIR / "data"
GOLDEN_DIR = DATA_DIR / "golden"
EXPORT_DIR = DATA_DIR / "exports"
LOG_DIR = BASE_DIR / "logs"


# Helper to ensure a directory exists before returning it
def _ensure(path: Path) -> Path:
    path.mkdir(parents=True, exist_ok=True)
    return path


def get_log_path(name: str) -> Path:
    """Per-component log file under logs/."""
    _ensure(LOG_DIR)
    return LOG_DIR / f"{name}.log"


def get_golden_path(name: str) -> Path:
    return GOLDEN_DIR / f"{name}.json"


def get_export_path(name: str) -> Path:
    """Where `homology --export` drops complexes when no path is given."""
    return _ensure(EXPORT_DIR) / f"{name}.json"
