"""
CLI module: argparse front end dispatching the five experiments, plus the
snapshot, CSV and YAML writers they share.
"""

from .main import COMMANDS, EXIT_OK, EXIT_VALIDATION, EXIT_RUNTIME, main
from .main import cmd_simulate, cmd_wave_speed, cmd_turing, cmd_converge, cmd_bench
from .writers import (
    PAYLOAD_DTYPE, snapshot_header, write_snapshots, read_snapshots, write_csv, read_csv, write_yaml
)

__all__ = [
    'COMMANDS',
    'EXIT_OK',
    'EXIT_VALIDATION',
    'EXIT_RUNTIME',
    'main',
    'cmd_simulate',
    'cmd_wave_speed',
    'cmd_turing',
    'cmd_converge',
    'cmd_bench',
    'PAYLOAD_DTYPE',
    'snapshot_header',
    'write_snapshots',
    'read_snapshots',
    'write_csv',
    'read_csv',
    'write_yaml'
]
