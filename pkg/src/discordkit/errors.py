"""Exception types shared across discordkit."""


class DiscordKitError(Exception):
    """Base class for all discordkit errors."""


class InputError(DiscordKitError, ValueError):
    """Malformed input: wrong shape, non-finite entries, bad labels."""


class DomainError(DiscordKitError, ValueError):
    """Well-formed input outside the mathematical domain of an operation
    (non-PSD state, non-unitary operator, improper rotation, mixed state
    where a purification is required)."""
