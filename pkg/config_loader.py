#!/usr/bin/env python3

import os
import sys
import logging
from logging.handlers import RotatingFileHandler
from typing import Dict, Any, Optional

logger = logging.getLogger(__name__)

ENV_PREFIX = "LUCASWALK_"

# (section, key) -> (environment variable, parser)
ENV_OVERRIDES = {
    ("limits", "max_index"): (ENV_PREFIX + "MAX_INDEX", int),
    ("certify", "scan_margin"): (ENV_PREFIX + "MARGIN", int),
    ("closed_form", "dps"): (ENV_PREFIX + "DPS", int),
    ("logging", "level"): (ENV_PREFIX + "LOG_LEVEL", str),
    ("logging", "log_file"): (ENV_PREFIX + "LOG_FILE", str),
}


class ConfigLoader:
    """Load and manage configuration for lucaswalk.

    Values come from built-in defaults overridden by LUCASWALK_* environment
    variables; command-line flags are applied on top through update().
    """

    def __init__(self, environ: Optional[Dict[str, str]] = None, setup_logging: bool = True):
        """Initialize from an environment mapping (defaults to os.environ)."""
        self.environ = os.environ if environ is None else environ
        self.config = self._load_config()
        self._logging_ready = False
        if setup_logging:
            self._setup_logging()

    def _load_config(self) -> Dict[str, Any]:
        """Start from the defaults and apply environment overrides."""
        config = self._default_config()
        for (section, key), (variable, parse) in ENV_OVERRIDES.items():
            raw = self.environ.get(variable)
            if raw is None or raw == "":
                continue
            try:
                value = parse(raw)
            except ValueError:
                logger.warning(f"Ignoring {variable}={raw!r}: expected {parse.__name__}")
                continue
            if parse is int and value < 1:
                logger.warning(f"Ignoring {variable}={raw!r}: must be positive")
                continue
            config[section][key] = value
        return config

    def _default_config(self) -> Dict[str, Any]:
        """Return default configuration."""
        return {
            "limits": {
                "max_index": 1_000_000
            },
            "certify": {
                "scan_margin": 50
            },
            "closed_form": {
                "dps": 64
            },
            "logging": {
                "level": "WARNING",
                "log_file": None,
                "max_size": 10485760,
                "backup_count": 3
            }
        }

    def _setup_logging(self) -> None:
        """Configure the lucaswalk loggers based on settings."""
        log_config = self.config.get("logging", {})
        log_level = getattr(logging, str(log_config.get("level", "WARNING")).upper(), logging.WARNING)
        formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )

        root_logger = logging.getLogger()
        root_logger.setLevel(log_level)

        # Console handler goes to stderr; stdout is reserved for reports
        ours = [h for h in root_logger.handlers if getattr(h, "_lucaswalk", False)]
        for handler in ours:
            if type(handler) is logging.StreamHandler:
                handler.stream = sys.stderr
        if not ours:
            console_handler = logging.StreamHandler()
            console_handler.setFormatter(formatter)
            console_handler._lucaswalk = True
            root_logger.addHandler(console_handler)

            log_file = log_config.get("log_file")
            if log_file:
                try:
                    log_dir = os.path.dirname(log_file)
                    if log_dir and not os.path.exists(log_dir):
                        os.makedirs(log_dir)
                    handler = RotatingFileHandler(
                        log_file,
                        maxBytes=log_config.get("max_size", 10485760),
                        backupCount=log_config.get("backup_count", 3)
                    )
                    handler.setFormatter(formatter)
                    handler._lucaswalk = True
                    root_logger.addHandler(handler)
                except OSError as e:
                    logger.error(f"Error setting up log file {log_file}: {e}")

        self._logging_ready = True
        logger.debug("Logging initialized")

    def get(self, section: str, key: str, default: Any = None) -> Any:
        """Get a configuration value, with optional default."""
        return self.config.get(section, {}).get(key, default)

    def update(self, section: str, key: str, value: Any) -> None:
        """Update a configuration value."""
        if section not in self.config:
            self.config[section] = {}

        self.config[section][key] = value
        if section == "logging" and key == "level":
            logging.getLogger().setLevel(getattr(logging, str(value).upper(), logging.WARNING))

    @property
    def max_index(self) -> int:
        return int(self.get("limits", "max_index", 1_000_000))

    @property
    def scan_margin(self) -> int:
        return int(self.get("certify", "scan_margin", 50))

    @property
    def dps(self) -> int:
        return int(self.get("closed_form", "dps", 64))


# Global configuration instance (shared across imports)
_global_config: Optional[ConfigLoader] = None


def get_config() -> ConfigLoader:
    """
    Get or create the global configuration instance.

    Returns:
        Shared ConfigLoader instance
    """
    global _global_config

    if _global_config is None:
        _global_config = ConfigLoader()

    return _global_config


def reset_config(environ: Optional[Dict[str, str]] = None) -> ConfigLoader:
    """Rebuild the global configuration from the environment."""
    global _global_config
    _global_config = ConfigLoader(environ)
    return _global_config
