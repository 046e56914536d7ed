"""Configuration loader with YAML support and environment variable substitution."""
import os
import re
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

DEFAULT_CONFIG = Path(__file__).parent.parent / "config" / "stabkit.config.yaml"

_ENV_PATTERN = re.compile(r"\$\{([^:}]+)(?::-(.*?))?\}")


def _coerce(value: str) -> Any:
    """Substituted scalars are re-read as YAML so "10" becomes an int."""
    try:
        return yaml.safe_load(value)
    except yaml.YAMLError:
        return value


class ConfigLoader:
    """Load and manage configuration from YAML files with env var substitution."""

    def __init__(self, config_path: Optional[Path] = None):
        """Initialize config loader.

        Args:
            config_path: Path to config file. If None, uses the packaged defaults.
        """
        load_dotenv()  # Load .env file if present

        self.config_path = Path(config_path) if config_path is not None else DEFAULT_CONFIG
        self._config: Dict[str, Any] = {}

        if self.config_path.exists():
            self.load()

    def load(self) -> Dict[str, Any]:
        """Load configuration from the YAML file.

        Returns:
            Configuration dictionary
        """
        with open(self.config_path, "r", encoding="utf-8") as f:
            raw_config = yaml.safe_load(f) or {}

        self._config = self._substitute_env_vars(raw_config)
        return self._config

    def _substitute_env_vars(self, obj: Any) -> Any:
        """Recursively substitute ${VAR} and ${VAR:-default} references."""
        if isinstance(obj, dict):
            return {k: self._substitute_env_vars(v) for k, v in obj.items()}
        if isinstance(obj, list):
            return [self._substitute_env_vars(item) for item in obj]
        if isinstance(obj, str) and "${" in obj:
            def replace_var(match):
                return os.environ.get(match.group(1), match.group(2) or "")

            substituted = _ENV_PATTERN.sub(replace_var, obj)
            # a value that was a single reference takes the type of its substitution
            if _ENV_PATTERN.fullmatch(obj):
                return _coerce(substituted)
            return substituted
        return obj

    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value by dot-separated key (e.g. "enumeration.budget")."""
        value: Any = self._config
        for k in key.split("."):
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default
        return value

    def set(self, key: str, value: Any) -> None:
        """Set configuration value by dot-separated key."""
        keys = key.split(".")
        config = self._config
        for k in keys[:-1]:
            config = config.setdefault(k, {})
        config[keys[-1]] = value

    @property
    def config(self) -> Dict[str, Any]:
        return self._config


_global_config: Optional[ConfigLoader] = None


def get_config() -> ConfigLoader:
    """Get global configuration instance."""
    global _global_config
    if _global_config is None:
        _global_config = ConfigLoader()
    return _global_config


def reset_config() -> None:
    """Drop the cached instance so the next ``get_config`` rereads file and environment."""
    global _global_config
    _global_config = None
