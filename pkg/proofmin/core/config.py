"""
Search configuration and the named presets.
"""

import json
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator

from ..utils.logger import get_logger
from .exceptions import ConfigurationError

logger = get_logger(__name__)


class SearchMode(str, Enum):
    """Named search presets."""
    OPTIMAL = "optimal"
    SHORT = "short"
    COMPETITION = "competition"


class OrderDirection(str, Enum):
    """Direction of a clause-ordering criterion."""
    ASCENDING = "ascending"
    DESCENDING = "descending"


class SearchConfig(BaseModel):
    """Configuration of one proof minimization run."""
    mode: SearchMode = SearchMode.OPTIMAL
    length_order: OrderDirection = OrderDirection.DESCENDING
    frequency_order: OrderDirection = OrderDirection.DESCENDING
    m_switch: int = 28
    cache_lifetime: int = 100_000
    queue_limit: Optional[int] = None
    branch_width: Optional[int] = None
    seed: int = 0
    dynamic_seeding: bool = True
    time_limit: Optional[float] = None
    node_limit: Optional[int] = None
    smus_time_budget: float = 1.0
    sat_budget: Optional[int] = None
    prune_by_bound: bool = True
    prune_by_dominance: bool = True
    prune_unused: bool = True
    frontier_branching: bool = True
    is_mus: bool = False
    memory_cap_mb: Optional[int] = None
    progress_interval: Optional[float] = Field(default=None)

    model_config = {"extra": "forbid"}

    @field_validator("queue_limit", "branch_width", "node_limit", "sat_budget",
                     "memory_cap_mb")
    @classmethod
    def _positive_count(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value <= 0:
            raise ValueError("must be positive")
        return value

    @field_validator("time_limit", "smus_time_budget", "progress_interval")
    @classmethod
    def _positive_duration(cls, value: Optional[float]) -> Optional[float]:
        if value is not None and value <= 0:
            raise ValueError("must be positive")
        return value

    @field_validator("m_switch", "cache_lifetime")
    @classmethod
    def _non_negative(cls, value: int) -> int:
        if value < 0:
            raise ValueError("must not be negative")
        return value

    @classmethod
    def for_mode(cls, mode: Union[SearchMode, str], **overrides: Any) -> "SearchConfig":
        """
        Build a preset, then apply overrides.

        Optimal orders candidate clauses longest first; Short shortest first.
        Competition is Short with a bounded queue, a branching width of 10,
        static seeding, and no bound or dominance pruning.
        """
        mode = SearchMode(mode)
        values: Dict[str, Any] = {"mode": mode}
        if mode is SearchMode.OPTIMAL:
            values.update(length_order=OrderDirection.DESCENDING,
                          frequency_order=OrderDirection.DESCENDING)
        else:
            values.update(length_order=OrderDirection.ASCENDING,
                          frequency_order=OrderDirection.DESCENDING)
        if mode is SearchMode.COMPETITION:
            values.update(queue_limit=10_000, branch_width=10,
                          prune_by_bound=False, prune_by_dominance=False,
                          dynamic_seeding=False)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def with_overrides(self, **overrides: Any) -> "SearchConfig":
        """Validated copy with the non-None overrides applied."""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return SearchConfig(**data)

    @classmethod
    def from_file(cls, path: Union[str, Path]) -> "SearchConfig":
        """
        Load a preset file (YAML or JSON by suffix).

        A ``mode`` key selects the base preset; the remaining keys override it.
        """
        config_file = Path(path)
        if not config_file.exists():
            raise ConfigurationError(f"Configuration file not found: {path}")
        try:
            with open(config_file, "r") as f:
                if config_file.suffix.lower() in [".yaml", ".yml"]:
                    data = yaml.safe_load(f) or {}
                else:
                    data = json.load(f)
        except (yaml.YAMLError, json.JSONDecodeError) as e:
            raise ConfigurationError(f"Cannot parse {path}: {e}") from e
        if not isinstance(data, dict):
            raise ConfigurationError(f"{path} must hold a mapping")

        mode = data.pop("mode", SearchMode.OPTIMAL)
        try:
            config = cls.for_mode(mode, **data)
        except (ValidationError, ValueError) as e:
            raise ConfigurationError(f"Invalid configuration in {path}: {e}") from e
        logger.info(f"Loaded configuration from: {path}")
        return config

    def save(self, path: Union[str, Path]) -> None:
        """Write the configuration to YAML or JSON by suffix."""
        config_file = Path(path)
        data = self.model_dump(mode="json")
        with open(config_file, "w") as f:
            if config_file.suffix.lower() in [".yaml", ".yml"]:
                yaml.safe_dump(data, f, default_flow_style=False, sort_keys=False)
            else:
                json.dump(data, f, indent=2)
        logger.info(f"Saved configuration to: {path}")
