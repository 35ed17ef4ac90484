"""Settings service for toolkit configuration management."""

import json
import os
import logging
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Union
from dataclasses import dataclass, field, asdict
from threading import Lock

from dotenv import load_dotenv

from ..core.exceptions import ConfigLoadError, ConfigSaveError

logger = logging.getLogger(__name__)


@dataclass
class OracleSettings:
    """Exhaustive truth-table oracle configuration."""
    enumeration_cap: int = 20   # refuse tables above 2^cap assignments
    verify_cap: int = 12        # auto-verify convert/compile up to this n
    workers: int = 1            # threads for table enumeration


@dataclass
class ComplexitySettings:
    """Decision tree search configuration."""
    max_vars: int = 5


@dataclass
class CompileSettings:
    """Compilation configuration."""
    verify: bool = True


@dataclass
class LoggingSettings:
    """Logging configuration."""
    level: str = "WARNING"


@dataclass
class ToolkitSettings:
    """Complete toolkit settings."""
    oracle: OracleSettings = field(default_factory=OracleSettings)
    complexity: ComplexitySettings = field(default_factory=ComplexitySettings)
    compile: CompileSettings = field(default_factory=CompileSettings)
    logging: LoggingSettings = field(default_factory=LoggingSettings)


# Environment variable -> (dot key, converter)
ENV_OVERRIDES: Dict[str, tuple] = {
    "ZSBP_ENUMERATION_CAP": ("oracle.enumeration_cap", int),
    "ZSBP_VERIFY_CAP": ("oracle.verify_cap", int),
    "ZSBP_WORKERS": ("oracle.workers", int),
    "ZSBP_COMPLEXITY_CAP": ("complexity.max_vars", int),
    "ZSBP_LOG_LEVEL": ("logging.level", str.upper),
}


class SettingsService:
    """
    Settings service for the toolkit.

    Handles:
    - Loading/saving settings from JSON file
    - Environment overrides (a .env file is honored)
    - Change notifications

    Usage:
        service = SettingsService()
        service.load()

        cap = service.get("oracle.verify_cap")
        service.set("oracle.workers", 4)
        service.save()
    """

    APP_NAME = "ZsbpToolkit"
    SETTINGS_FILE = "settings.json"

    def __init__(self, settings_path: Optional[Union[str, Path]] = None):
        self._settings = ToolkitSettings()
        self._settings_path = Path(settings_path) if settings_path else self._get_settings_path()
        self._lock = Lock()
        self._change_callbacks: List[Callable[[str, Any], None]] = []

        logger.debug(f"SettingsService initialized. Path: {self._settings_path}")

    @property
    def path(self) -> Path:
        return self._settings_path

    def _get_settings_path(self) -> Path:
        """Get path to settings file."""
        # Windows: %APPDATA%/ZsbpToolkit/settings.json
        if os.name == 'nt':
            base = Path(os.environ.get('APPDATA', Path.home()))
        else:
            # Linux/Mac: ~/.config/ZsbpToolkit/settings.json
            base = Path.home() / '.config'

        return base / self.APP_NAME / self.SETTINGS_FILE

    def load(self, use_env: bool = True) -> bool:
        """
        Load settings from file, then apply environment overrides.

        Returns:
            True if a settings file was read
        """
        with self._lock:
            loaded = False
            if self._settings_path.exists():
                try:
                    with open(self._settings_path, 'r', encoding='utf-8') as f:
                        data = json.load(f)
                    self._settings = self._dict_to_settings(data)
                    loaded = True
                    logger.info("Settings loaded successfully")
                except (OSError, ValueError, TypeError) as e:
                    logger.error(f"Failed to load settings: {e}")
                    raise ConfigLoadError(str(self._settings_path), str(e))
            else:
                logger.debug("No settings file, using defaults")

        if use_env:
            self.apply_env_overrides()
        return loaded

    def apply_env_overrides(self) -> None:
        """Apply ZSBP_* variables from the environment or a .env file."""
        load_dotenv()
        for var, (key, convert) in ENV_OVERRIDES.items():
            raw = os.environ.get(var)
            if raw is None or raw == "":
                continue
            try:
                value = convert(raw.strip())
            except ValueError:
                raise ConfigLoadError(f"${var}", f"bad value {raw!r}")
            self.set(key, value)
            logger.debug(f"Environment override {var} -> {key} = {value}")

    def save(self) -> bool:
        """
        Save settings to file.

        Returns:
            True if saved successfully
        """
        with self._lock:
            try:
                self._settings_path.parent.mkdir(parents=True, exist_ok=True)
                data = asdict(self._settings)

                # Write atomically (temp file + rename)
                temp_path = self._settings_path.with_suffix('.tmp')
                with open(temp_path, 'w', encoding='utf-8') as f:
                    json.dump(data, f, indent=2, ensure_ascii=False)

                temp_path.replace(self._settings_path)
                logger.info("Settings saved successfully")
                return True

            except OSError as e:
                logger.error(f"Failed to save settings: {e}")
                raise ConfigSaveError(str(self._settings_path))

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get setting value by dot-notation key.

        Args:
            key: Setting key like "oracle.verify_cap"
            default: Default value if not found
        """
        with self._lock:
            obj = self._settings
            for part in key.split('.'):
                if hasattr(obj, part):
                    obj = getattr(obj, part)
                else:
                    return default
            return obj

    def set(self, key: str, value: Any) -> None:
        """Set setting value by dot-notation key; unknown keys are ignored."""
        with self._lock:
            parts = key.split('.')
            obj = self._settings

            for part in parts[:-1]:
                if hasattr(obj, part):
                    obj = getattr(obj, part)
                else:
                    return

            if not hasattr(obj, parts[-1]):
                return
            setattr(obj, parts[-1], value)
            logger.debug(f"Setting changed: {key} = {value}")
            callbacks = list(self._change_callbacks)

        for callback in callbacks:
            try:
                callback(key, value)
            except Exception as e:
                logger.error(f"Settings callback error: {e}")

    def get_all(self) -> ToolkitSettings:
        with self._lock:
            return self._settings

    def reset_to_defaults(self) -> None:
        with self._lock:
            self._settings = ToolkitSettings()
            logger.info("Settings reset to defaults")

    def on_change(self, callback: Callable[[str, Any], None]) -> Callable[[], None]:
        """
        Register callback for settings changes.

        Returns:
            Unregister function
        """
        self._change_callbacks.append(callback)

        def unregister():
            if callback in self._change_callbacks:
                self._change_callbacks.remove(callback)

        return unregister

    def _dict_to_settings(self, data: dict) -> ToolkitSettings:
        """Convert dict to ToolkitSettings; missing sections keep defaults."""
        if not isinstance(data, dict):
            raise TypeError("settings root must be an object")
        return ToolkitSettings(
            oracle=OracleSettings(**data.get("oracle", {})),
            complexity=ComplexitySettings(**data.get("complexity", {})),
            compile=CompileSettings(**data.get("compile", {})),
            logging=LoggingSettings(**data.get("logging", {})),
        )
