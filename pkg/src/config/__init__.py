"""Experiment configuration with JSON file support."""

from .experiment_config import ExperimentConfig, ExperimentConfigLoader, ExperimentConfigValidator, merge_config

__all__ = ["ExperimentConfig", "ExperimentConfigLoader", "ExperimentConfigValidator", "merge_config"]
