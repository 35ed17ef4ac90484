"""Services module - settings, oracle verification and benchmarks."""

from .settings_service import SettingsService, ToolkitSettings, OracleSettings
from .verification_service import VerificationService, require_equal
