"""
Configuration module: YAML run configurations with one section per concern,
validated against the constructors of the modules they configure.
"""

from .schema import (
    EXPERIMENTS, LOG_LEVELS, SECTIONS, RunConfig,
    GridSection, ModelSection, StepperSection, AnalysisSection,
    ConvergeSection, BenchSection, OutputSection, rung_pairs
)
from .loader import (
    ConfigLoader, ConfigYamlLoader, parse_config, parse_config_text, dump_config, list_builtin_configs
)

__all__ = [
    'EXPERIMENTS',
    'LOG_LEVELS',
    'SECTIONS',
    'RunConfig',
    'GridSection',
    'ModelSection',
    'StepperSection',
    'AnalysisSection',
    'ConvergeSection',
    'BenchSection',
    'OutputSection',
    'rung_pairs',
    'ConfigLoader',
    'ConfigYamlLoader',
    'parse_config',
    'parse_config_text',
    'dump_config',
    'list_builtin_configs'
]
