#!/usr/bin/env python3
"""
Configuration loader for PrecedentCLI tools.

Layers are merged lowest precedence first:
1. Built-in defaults
2. Tool default config (tools/{tool}/config/defaults.toml)
3. User global config (~/.config/precedentcli/config.toml)
4. User tool-specific config (~/.config/precedentcli/{tool}.toml)
5. Project-level config (./.precedentcli.toml)
6. Extra file passed with --config
7. Environment variables (PRECEDENTCLI_{TOOL}_{SECTION}_{KEY})
8. Command line arguments
"""
import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

# TOML support with fallback
try:
    import tomllib  # Python 3.11+
except ImportError:
    try:
        import tomli as tomli_lib  # type: ignore # Fallback for older Python

        tomllib = tomli_lib  # type: ignore
    except ImportError:
        tomllib = None  # type: ignore

CONFIG_DIR_NAME = "precedentcli"
PROJECT_CONFIG_NAME = ".precedentcli.toml"
ENV_PREFIX = "PRECEDENTCLI"

DEFAULT_CONFIG: Dict[str, Any] = {
    "caps": {
        "universe": 16,
        "knowledge": 16,
        "oracle_universe": 8,
        "extension_nodes": 20,
    },
    "oracle": {
        "trials": 200,
        "seed": 0,
    },
    "output": {
        "format": "text",
        "annotate": False,
        "all_defenses": False,
    },
    "logging": {
        "log_level": "INFO",
        "log_to_file": False,
        "output_dir": "",
    },
}

ConfigValue = Union[str, int, float, bool]


class ConfigLoader:
    """Merges the configuration layers of one tool into a nested dict."""

    def __init__(
        self,
        tool_name: str,
        logger: Optional[logging.Logger] = None,
        tool_dir: Optional[Path] = None,
    ) -> None:
        self.tool_name = tool_name
        self.tool_dir = tool_dir
        self.logger = logger or logging.getLogger(tool_name)
        self.config: Dict[str, Any] = {}
        self.config_source: str = "built-in defaults"

    @property
    def env_prefix(self) -> str:
        return f"{ENV_PREFIX}_{self.tool_name.upper().replace('-', '_')}_"

    def load_config(
        self,
        extra_file: Optional[Union[str, Path]] = None,
        cmd_args: Optional[Dict[str, Any]] = None,
    ) -> Dict[str, Any]:
        """
        Merge every configuration layer.

        Args:
            extra_file: Config file given on the command line, above the
                regular files and below the environment
            cmd_args: Dotted keys (``"caps.universe"``) set from flags; None
                values are skipped

        Returns:
            The merged configuration

        Raises:
            FileNotFoundError: if ``extra_file`` does not exist
        """
        config = self._get_default_config()

        files = [path for path, _ in self._get_config_files()]
        if extra_file is not None:
            extra = Path(extra_file).expanduser()
            if not extra.exists():
                raise FileNotFoundError(str(extra))
            files.append(extra)

        if tomllib is None:
            self.logger.warning("TOML support not available")
            self.logger.info("Install tomli for Python < 3.11: pip3 install tomli")
        else:
            for path in files:
                if path.exists():
                    self._merge_file(config, path)

        self._deep_update(config, self._env_overrides(config))
        if cmd_args:
            self._deep_update(config, self._nest(cmd_args))

        self.config = config
        return config

    def _get_config_files(self) -> List[Tuple[Path, str]]:
        """Regular config files, lowest precedence first."""
        config_dir = Path.home() / ".config" / CONFIG_DIR_NAME
        files = []
        if self.tool_dir is not None:
            files.append((self.tool_dir / "config" / "defaults.toml", "Tool defaults"))
        files += [
            (config_dir / "config.toml", "User global config"),
            (config_dir / f"{self.tool_name}.toml", "User tool-specific config"),
            (Path.cwd() / PROJECT_CONFIG_NAME, "Project config"),
        ]
        return files

    def _get_default_config(self) -> Dict[str, Any]:
        return {section: dict(values) for section, values in DEFAULT_CONFIG.items()}

    def _merge_file(self, config: Dict[str, Any], path: Path) -> None:
        """Merge one TOML file; a file that fails to parse is logged and skipped."""
        try:
            with open(path, "rb") as f:
                file_config = tomllib.load(f)
        except (OSError, tomllib.TOMLDecodeError) as e:
            self.logger.error(f"Error loading config from {path}: {e}")
            return
        self._deep_update(config, file_config)
        self.config_source = str(path)
        self.logger.debug(f"Loaded config from {path}")

    def _deep_update(self, base: Dict[str, Any], new: Dict[str, Any]) -> None:
        """Merge ``new`` into ``base`` section by section; ``*_dir`` values expand ``~``."""
        for key, value in new.items():
            if isinstance(value, dict) and isinstance(base.get(key), dict):
                self._deep_update(base[key], value)
                continue
            if isinstance(value, str) and key.endswith("_dir"):
                value = os.path.expanduser(value)
            base[key] = value

    def _env_overrides(self, config: Dict[str, Any]) -> Dict[str, Any]:
        """
        Nested overrides from ``PRECEDENTCLI_<TOOL>_<SECTION>_<KEY>`` variables.

        The first word after the prefix names the section when that section
        exists (CAPS_ORACLE_UNIVERSE -> caps.oracle_universe); other keys nest
        on every underscore.
        """
        overrides: Dict[str, Any] = {}
        for key, value in sorted(os.environ.items()):
            if not key.startswith(self.env_prefix):
                continue
            config_key = key[len(self.env_prefix) :].lower()
            section, _, rest = config_key.partition("_")
            if rest and isinstance(config.get(section), dict):
                dotted = f"{section}.{rest}"
            else:
                dotted = config_key.replace("_", ".")
            self._deep_update(overrides, self._nest({dotted: self._convert_env_value(value)}))
        return overrides

    @staticmethod
    def _nest(flat: Dict[str, Any]) -> Dict[str, Any]:
        """``{"caps.universe": 3}`` -> ``{"caps": {"universe": 3}}``, dropping None values."""
        nested: Dict[str, Any] = {}
        for dotted, value in flat.items():
            if value is None:
                continue
            *sections, leaf = dotted.split(".")
            target = nested
            for section in sections:
                target = target.setdefault(section, {})
            target[leaf] = value
        return nested

    @staticmethod
    def _convert_env_value(value: str) -> ConfigValue:
        """Convert an environment variable string to bool, int, float or str."""
        if value.lower() in ("true", "yes"):
            return True
        if value.lower() in ("false", "no"):
            return False
        try:
            if "." in value:
                return float(value)
            return int(value)
        except ValueError:
            return value
