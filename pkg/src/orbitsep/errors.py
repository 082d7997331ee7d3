"""Exception taxonomy shared by the library and the command line tool."""


class OrbitsepError(Exception):
    """Base class for every error orbitsep raises on purpose."""


class ConfigError(OrbitsepError):
    """Invalid configuration or unparseable input (CLI exit code 2)."""


class DimensionError(OrbitsepError):
    """Mismatched signal, group, or matrix dimensions (CLI exit code 3)."""


class DomainError(OrbitsepError):
    """Input outside an operation's mathematical domain (CLI exit code 3)."""


class InternalCheckError(OrbitsepError):
    """A built-in postcondition failed; indicates a bug, not bad input (CLI exit code 4)."""
