import io
import logging
import sys
from pathlib import Path
from unittest.mock import patch

import pytest

# --- SETUP PATHS ---
root_dir = Path(__file__).resolve().parent.parent.parent
if str(root_dir) not in sys.path:
    sys.path.append(str(root_dir))

from utils import config
from utils.logger import set_level, setup_logger
from utils.paths import BASE_DIR, get_export_path, get_golden_path, get_log_path


# --- 1. TESTS FOR logger.py ---
class TestLoggerUtils:
    def test_setup_logger_creates_file(self, tmp_path):
        # 1. Setup
        fake_log_file = tmp_path / "logs" / "test.log"

        # 2. Action
        with patch.dict("os.environ", {"BRAUER_LOG_LEVEL": ""}):
            logger = setup_logger(fake_log_file, "brauer_test_logger")

        # 3. Assert
        assert isinstance(logger, logging.Logger)
        assert logger.level == logging.INFO
        assert fake_log_file.parent.exists()
        assert len(logger.handlers) == 2
        assert any(isinstance(h, logging.FileHandler) for h in logger.handlers)

    def test_no_duplicate_handlers(self, tmp_path):
        log_file = tmp_path / "test.log"
        logger = setup_logger(log_file, "brauer_repeat_logger")
        setup_logger(log_file, "brauer_repeat_logger")
        assert len(logger.handlers) == 2

    def test_console_goes_to_given_stream(self, tmp_path):
        stream = io.StringIO()
        logger = setup_logger(tmp_path / "s.log", "brauer_stream_logger", stream=stream)
        logger.info("✅ hello")
        assert "hello" in stream.getvalue()

    def test_set_level_reaches_handlers(self, tmp_path):
        logger = setup_logger(tmp_path / "l.log", "brauer_level_logger")
        set_level(logger, logging.WARNING)
        assert logger.level == logging.WARNING
        assert all(h.level == logging.WARNING for h in logger.handlers)

    def test_level_follows_environment(self, tmp_path):
        with patch.dict("os.environ", {"BRAUER_LOG_LEVEL": "debug"}):
            logger = setup_logger(tmp_path / "d.log", "brauer_env_level_logger")
        assert logger.level == logging.DEBUG
        assert not logger.propagate

    def test_explicit_level_wins(self, tmp_path):
        with patch.dict("os.environ", {"BRAUER_LOG_LEVEL": "DEBUG"}):
            logger = setup_logger(tmp_path / "w.log", "brauer_explicit_level_logger", level=logging.ERROR)
        assert logger.level == logging.ERROR

    def test_console_line_is_short_and_file_line_is_timestamped(self, tmp_path):
        # 1. Setup
        stream = io.StringIO()
        log_file = tmp_path / "f.log"
        logger = setup_logger(log_file, "brauer_format_logger", level=logging.INFO, stream=stream)

        # 2. Action
        logger.warning("⚠️ homology truncated")
        for handler in logger.handlers:
            handler.flush()

        # 3. Assert
        assert stream.getvalue() == "[brauer_format_logger] WARNING ⚠️ homology truncated\n"
        line = log_file.read_text(encoding="utf-8").strip()
        assert line.endswith("| brauer_format_logger | WARNING | ⚠️ homology truncated")
        assert line.count(" | ") == 3


# --- 2. TESTS FOR config.py ---
class TestConfig:
    def test_params_have_sections(self):
        params = config.load_params()
        for key in ("limits", "defaults", "verify", "logging"):
            assert key in params

    def test_budget_from_params(self):
        with patch.dict("os.environ", {"BRAUER_BUDGET": ""}):
            assert config.get_budget() == config.load_params()["limits"]["budget_entries"]

    def test_budget_env_override(self):
        with patch.dict("os.environ", {"BRAUER_BUDGET": "1e3"}):
            assert config.get_budget() == 1000

    @pytest.mark.parametrize("raw", ["lots", "-5"])
    def test_budget_env_invalid(self, raw):
        with patch.dict("os.environ", {"BRAUER_BUDGET": raw}):
            with pytest.raises(EnvironmentError):
                config.get_budget()

    def test_limits_fall_back(self):
        with patch("utils.config.load_params", return_value={}):
            assert config.get_max_strands() == config.DEFAULT_MAX_STRANDS
            assert config.get_max_word_letters() == config.DEFAULT_MAX_WORD_LETTERS

    def test_suite_params(self):
        assert config.get_suite_params("br2")["deltas"] == [0, 2, 3, 5]
        assert config.get_suite_params("no-such-suite") == {}

    def test_log_level_env(self):
        with patch.dict("os.environ", {"BRAUER_LOG_LEVEL": "debug"}):
            assert config.get_log_level() == logging.DEBUG


# --- 3. TESTS FOR paths.py ---
class TestPathUtils:
    def test_base_dir_resolution(self):
        assert (BASE_DIR / "tests").exists()
        assert (BASE_DIR / "params.yaml").exists()

    def test_golden_path(self):
        assert get_golden_path("br2") == BASE_DIR / "data" / "golden" / "br2.json"

    def test_export_dir_is_created(self, tmp_path):
        with patch("utils.paths.EXPORT_DIR", tmp_path / "exports"):
            result = get_export_path("cn")
            assert result.name == "cn.json"
            assert result.parent.exists()

    def test_log_path(self, tmp_path):
        with patch("utils.paths.LOG_DIR", tmp_path / "logs"):
            assert get_log_path("bar") == tmp_path / "logs" / "bar.log"
            assert (tmp_path / "logs").exists()
