"""Experiment configuration: the ExperimentConfig record, its validator and the JSON loader."""

import copy
import json
import os
from dataclasses import asdict, dataclass, field, fields
from typing import Any

from src.utils.exceptions import ConfigurationException
from src.utils.logging import get_logger

PRIOR_KINDS = ("uniform", "cover", "point", "optimal")
OUTPUT_FORMATS = ("csv", "json")


class ExperimentConfigValidator:
    """Validates experiment configuration dictionaries."""

    def __init__(self):
        self.known_fields = {f.name for f in fields(ExperimentConfig)}

    def validate_config(self, config_data: dict[str, Any], config_file: str | None = None) -> None:
        """Validate a configuration dictionary.

        Args:
            config_data: Configuration values keyed by ExperimentConfig field
            config_file: Source file, quoted in error messages

        Raises:
            ConfigurationException: If any value is missing, unknown or out of range
        """
        if not isinstance(config_data, dict):
            raise ConfigurationException("experiment", "configuration must be a JSON object", config_file)

        unknown = set(config_data) - self.known_fields
        if unknown:
            raise ConfigurationException("experiment", f"unknown fields {sorted(unknown)}", config_file)

        def fail(message: str) -> None:
            raise ConfigurationException("experiment", message, config_file)

        if "learner" in config_data and (not isinstance(config_data["learner"], str) or not config_data["learner"]):
            fail("'learner' must be a nonempty learner spec")
        for name, minimum in (("n", 2), ("m", 1), ("trials", 1), ("prior_trials", 1), ("workers", 1), ("reps", 1)):
            if name in config_data:
                value = config_data[name]
                if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
                    fail(f"'{name}' must be an integer >= {minimum}, got {value!r}")
        if "n" in config_data and config_data["n"] % 2:
            fail(f"'n' must be even for hard-distribution runs, got {config_data['n']}")
        if "seed" in config_data and (not isinstance(config_data["seed"], int) or config_data["seed"] < 0):
            fail(f"'seed' must be a nonnegative integer, got {config_data['seed']!r}")
        for name in ("gamma", "delta"):
            if name in config_data:
                value = config_data[name]
                if not isinstance(value, (int, float)) or not 0 < value < 1:
                    fail(f"'{name}' must lie in (0, 1), got {value!r}")
        if "kl_constant" in config_data:
            value = config_data["kl_constant"]
            if not isinstance(value, (int, float)) or value <= 0:
                fail(f"'kl_constant' must be positive, got {value!r}")
        if "prior" in config_data:
            kind = str(config_data["prior"]).partition(":")[0]
            if kind not in PRIOR_KINDS:
                fail(f"'prior' must be one of {', '.join(PRIOR_KINDS)}, got {config_data['prior']!r}")
        if "output_format" in config_data and config_data["output_format"] not in OUTPUT_FORMATS:
            fail(f"'output_format' must be one of {', '.join(OUTPUT_FORMATS)}")
        if "n_grid" in config_data:
            self._validate_grid(config_data["n_grid"], config_file)

    def _validate_grid(self, grid: Any, config_file: str | None) -> None:
        if not isinstance(grid, list) or not grid:
            raise ConfigurationException("experiment", "'n_grid' must be a nonempty list", config_file)
        if any(not isinstance(n, int) or n < 2 or n % 2 for n in grid):
            raise ConfigurationException("experiment", f"'n_grid' entries must be even integers >= 2, got {grid}", config_file)
        if any(a >= b for a, b in zip(grid, grid[1:])):
            raise ConfigurationException("experiment", f"'n_grid' must be strictly increasing, got {grid}", config_file)


@dataclass
class ExperimentConfig:
    """Parameters shared by the experiment subcommands."""

    learner: str = "exp:beta=1"
    n: int = 1024
    m: int = 5
    gamma: float = 0.25
    delta: float = 0.05
    trials: int = 1000
    seed: int = 0
    prior: str = "optimal"
    prior_trials: int = 10_000
    kl_constant: float = 1 / 64
    workers: int = 1
    reps: int = 4
    homogeneous_search: bool = False
    n_grid: list[int] = field(default_factory=lambda: [64, 256, 1024, 4096])
    output: str | None = None
    output_format: str = "csv"

    def __post_init__(self):
        self.validate()

    def validate(self) -> None:
        ExperimentConfigValidator().validate_config(self.to_dict())

    def is_valid(self) -> bool:
        try:
            self.validate()
            return True
        except ConfigurationException:
            return False

    def to_dict(self) -> dict[str, Any]:
        return copy.deepcopy(asdict(self))

    @classmethod
    def from_dict(cls, data: dict[str, Any], config_file: str | None = None) -> "ExperimentConfig":
        ExperimentConfigValidator().validate_config(data, config_file)
        return cls(**data)


def merge_config(base: dict[str, Any], override: dict[str, Any]) -> dict[str, Any]:
    """Recursive merge; values from ``override`` win."""
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge_config(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


class ExperimentConfigLoader:
    """Loads, saves and merges experiment configuration files."""

    def __init__(self):
        self.validator = ExperimentConfigValidator()
        self.logger = get_logger("config")

    def load_from_file(self, config_file_path: str) -> dict[str, Any]:
        """Load and validate a JSON configuration file.

        Raises:
            ConfigurationException: If the file is missing, unreadable or invalid
        """
        if not os.path.exists(config_file_path):
            raise ConfigurationException("experiment", "file not found", config_file_path)
        try:
            with open(config_file_path, encoding="utf-8") as file:
                config_data = json.load(file)
        except json.JSONDecodeError as e:
            raise ConfigurationException("experiment", f"invalid JSON: {e}", config_file_path) from e
        except OSError as e:
            raise ConfigurationException("experiment", f"cannot read file: {e}", config_file_path) from e

        self.validator.validate_config(config_data, config_file_path)
        self.logger.info(f"Loaded experiment configuration from {config_file_path}")
        return config_data

    def save_to_file(self, config: ExperimentConfig | dict[str, Any], config_file_path: str) -> None:
        data = config.to_dict() if isinstance(config, ExperimentConfig) else config
        self.validator.validate_config(data, config_file_path)
        try:
            directory = os.path.dirname(config_file_path)
            if directory:
                os.makedirs(directory, exist_ok=True)
            with open(config_file_path, "w", encoding="utf-8") as file:
                json.dump(data, file, indent=2)
        except OSError as e:
            raise ConfigurationException("experiment", f"cannot write file: {e}", config_file_path) from e

    def build(self, cli_values: dict[str, Any], config_file_path: str | None = None) -> ExperimentConfig:
        """Combine CLI values with an optional config file; the file wins on conflicts."""
        values = {key: value for key, value in cli_values.items() if value is not None}
        if config_file_path:
            values = merge_config(values, self.load_from_file(config_file_path))
        return ExperimentConfig.from_dict(values, config_file_path)
