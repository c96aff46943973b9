"""
Commands Package
One module per subcommand group; each registers its parsers on the CLI
"""

from . import compare, delay, evaluate, figure, simulate

# Registration order is the order of `tempcorr --help`
COMMAND_MODULES = [evaluate, figure, simulate, compare, delay]

__all__ = ['COMMAND_MODULES']


def register_commands(subparsers):
    for module in COMMAND_MODULES:
        module.add_parsers(subparsers)
