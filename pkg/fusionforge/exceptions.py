"""Error hierarchy shared by every FusionForge module."""

from __future__ import annotations


class FusionForgeError(Exception):
    """Base class for all domain errors."""


class CapExceeded(FusionForgeError):
    """A computation grew past a configured size cap."""

    def __init__(self, what: str, cap: int) -> None:
        super().__init__(f"{what} exceeds cap {cap}")
        self.what = what
        self.cap = cap


class NotNormal(FusionForgeError):
    """A subgroup required to be normal is not."""


class NotInjective(FusionForgeError):
    pass


class NotIsomorphism(FusionForgeError):
    pass


class InvalidData(FusionForgeError):
    """Goursat data violating its invariants."""


class NotStronglyClosed(FusionForgeError):
    pass


class NotWeaklyClosed(FusionForgeError):
    pass


class UnequalOrders(FusionForgeError):
    pass


class CatalogError(FusionForgeError):
    """Unknown group name or malformed group/subgroup specifier."""


class CodecError(FusionForgeError):
    """Malformed JSON input."""
