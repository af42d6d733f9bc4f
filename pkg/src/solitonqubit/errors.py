"""Exception hierarchy shared across the package.

Two failure families matter to callers: bad inputs (rejected before any
numerics run) and numerical breakdown detected mid-run.  The command line
maps them to distinct exit codes, so keep the split intact when adding new
error types.
"""

from __future__ import annotations


class SolitonQubitError(Exception):
    """Base class for all package errors."""


class ValidationError(SolitonQubitError, ValueError):
    """Invalid parameters or configuration; nothing was computed."""


class KindMismatchError(ValidationError):
    """A soliton of the wrong kind was passed to a kind-specific routine."""


class DegenerateRegimeError(ValidationError):
    """Carrier sits at the focusing/defocusing boundary (b_k g_k = 0)."""


class NumericalError(SolitonQubitError, RuntimeError):
    """Integration failed a runtime sanity check; results are unusable."""


class BlowUpError(NumericalError):
    """A spin deviation reached |alpha| >= 1 during chain evolution."""


class NormDriftError(NumericalError):
    """Two-level state norm drifted beyond the abort threshold."""
