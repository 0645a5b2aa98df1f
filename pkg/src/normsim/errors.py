"""Exception types shared across the package."""


class SimulationError(Exception):
    """Base class for all errors raised by normsim."""


class ConfigurationError(SimulationError, ValueError):
    """A scenario, sweep, or generator parameter violates its constraints."""


class ContractViolationError(SimulationError, ValueError):
    """An operation was called with arguments that break its preconditions."""


class ParseError(SimulationError, ValueError):
    """An input document (config file or edge list) could not be parsed."""
