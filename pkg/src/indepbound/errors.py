"""Exception hierarchy shared by every module."""

from __future__ import annotations


class IndepboundError(Exception):
    """Base class for all package errors."""


class InputError(IndepboundError, ValueError):
    """Malformed hypergraph, out-of-range vertex id, or bad parameter."""


class CapacityError(IndepboundError):
    """A brute-force routine was asked to exceed its configured cap."""


class UndefinedBoundError(IndepboundError, ValueError):
    """A bound is not defined for the given hypergraph (e.g. log D <= 0)."""


class EmptyLinkError(IndepboundError, ValueError):
    """Link graph requested for a vertex of degree zero."""


class WrongUniformityError(InputError):
    """Operation needs a specific edge size (e.g. graphs only)."""
