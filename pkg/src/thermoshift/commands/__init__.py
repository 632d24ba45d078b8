"""
CLI subcommands.
"""

from .base import BaseCommand, CommandResult, RunConfig
from .registry import CommandRegistry, get_command_registry

__all__ = [
    "BaseCommand",
    "CommandResult",
    "RunConfig",
    "CommandRegistry",
    "get_command_registry",
]
