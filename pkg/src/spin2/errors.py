"""Exception hierarchy shared across the package.

Callers that need to map failures onto process exit codes (the command
line front end does) can rely on the split between size-cap failures and
parameter/region failures.
"""


class SpinError(Exception):
    """Base class for all package-specific errors."""


class SizeCapError(SpinError):
    """An exact enumeration was requested beyond the configured cap."""


class UndefinedRatioError(SpinError):
    """An activity ratio z1/z0 was requested at a vertex with z0 = 0."""


class RegionError(SpinError):
    """Parameters lie outside the region a routine is defined on."""


class PoleError(RegionError):
    """A Moebius step or pendant-edge extension hit its pole (z0 = 0)."""


class DegenerateInstanceError(SpinError):
    """Every configuration of a sampling instance has weight zero."""
