"""
Settings loaded from congruence.yaml (or the file named by EISCONG_CONFIG).
"""

import os
import sys
from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union

from pydantic import BaseModel, Field

CONFIG_ENV = "EISCONG_CONFIG"
DEFAULT_CONFIG = Path("congruence.yaml")


class Settings(BaseModel):
    """Run-wide defaults; command-line flags override them."""

    q_precision: Optional[int] = Field(
        None, ge=1, description="q-expansion precision Q; None means max(200, 4k)"
    )
    p_precision: int = Field(12, ge=1, description="Exponent M of the adjoined p^M")
    cohomology_m_max: int = Field(8, ge=3, description="Highest finite level tried for H^1")
    workers: Optional[int] = Field(
        None, ge=1, description="Process pool size; None means all cores"
    )
    reports_dir: Path = Field(Path("reports"), description="Root directory for saved reports")
    output_format: Literal["json", "text", "csv"] = Field("text", description="CLI output format")

    def precision_for(self, k: int) -> int:
        return self.q_precision or max(200, 4 * k)

    def with_overrides(self, **overrides: Any) -> "Settings":
        """
        Copy with every non-None override applied and validated.

        Raises:
            ValidationError: If an override violates a field constraint
        """
        updates = {key: value for key, value in overrides.items() if value is not None}
        if not updates:
            return self
        return Settings.model_validate({**self.model_dump(), **updates})


def load_settings(path: Optional[Union[str, Path]] = None) -> Settings:
    """
    Load settings from YAML.

    Args:
        path: Explicit config path; falls back to $EISCONG_CONFIG, then ./congruence.yaml

    Returns:
        Validated Settings (built-in defaults when no usable file is found)
    """
    config_path = Path(path or os.environ.get(CONFIG_ENV) or DEFAULT_CONFIG)
    data: Dict[str, Any] = {}
    try:
        import yaml

        if config_path.exists():
            with open(config_path, "r", encoding="utf-8") as f:
                data = yaml.safe_load(f) or {}
        if not isinstance(data, dict):
            raise ValueError(f"{config_path} must hold a mapping")
        return Settings(**data)
    except Exception as e:
        print(f"⚠️  Error loading config {config_path}: {e}", file=sys.stderr)
    return Settings()
