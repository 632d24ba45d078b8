"""
Command registry for managing available subcommands.
"""

import numpy as np
import structlog
from pydantic import ValidationError

from ..errors import ThermoshiftError
from .base import BaseCommand, CommandResult, RunConfig

logger = structlog.get_logger()


class CommandRegistry:
    """Registry for managing commands."""

    def __init__(self) -> None:
        self._commands: dict[str, BaseCommand] = {}

    def register(self, command: BaseCommand) -> None:
        """Register a command."""
        self._commands[command.name] = command
        logger.debug("Command registered", command=command.name)

    def unregister(self, name: str) -> None:
        """Unregister a command."""
        if name in self._commands:
            del self._commands[name]
            logger.debug("Command unregistered", command=name)

    def get(self, name: str) -> BaseCommand | None:
        """Get a command by name."""
        return self._commands.get(name)

    def list_commands(self) -> list[str]:
        """List all registered command names."""
        return list(self._commands.keys())

    def execute(self, config: RunConfig) -> CommandResult:
        """Execute the command named by the config."""
        command = self.get(config.command)
        if command is None:
            return CommandResult(
                success=False,
                error=f"Command '{config.command}' not found",
                exit_code=1,
            )

        try:
            logger.info("Executing command", command=config.command)
            result = command.execute(config)
            logger.info("Command executed", command=config.command, success=result.success)
            return result
        except ThermoshiftError as e:
            logger.error(
                "Command failed",
                command=config.command,
                error_type=type(e).__name__,
                error=str(e),
            )
            return CommandResult(success=False, error=str(e), exit_code=e.exit_code)
        except ValidationError as e:
            logger.error("Command input invalid", command=config.command, error=str(e))
            return CommandResult(success=False, error=str(e), exit_code=1)
        except np.linalg.LinAlgError as e:
            logger.error("Linear algebra failure", command=config.command, error=str(e))
            return CommandResult(success=False, error=f"Linear algebra failure: {e}", exit_code=2)
        except Exception as e:
            logger.exception("Command crashed", command=config.command, error=str(e))
            return CommandResult(success=False, error=f"Internal error: {e}", exit_code=1)


_registry: CommandRegistry | None = None


def get_command_registry() -> CommandRegistry:
    """Get or create the global command registry."""
    global _registry

    if _registry is None:
        _registry = CommandRegistry()
        _initialize_default_commands(_registry)

    return _registry


def _initialize_default_commands(registry: CommandRegistry) -> None:
    """Register the built-in subcommands."""
    from .bimodule import BimodulePressureCommand
    from .entropy import EntropyCommand
    from .kms import KMSCommand
    from .pressure import LawsCommand, PressureCommand
    from .transfer import EquilibriumCommand, RPFCommand, VariationalCommand

    for command in (
        EntropyCommand(),
        PressureCommand(),
        RPFCommand(),
        EquilibriumCommand(),
        VariationalCommand(),
        KMSCommand(),
        BimodulePressureCommand(),
        LawsCommand(),
    ):
        registry.register(command)
