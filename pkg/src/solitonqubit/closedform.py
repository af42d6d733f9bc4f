"""Closed-form transition probabilities for sech and tanh two-level drives.

A two-level system driven by a sech-shaped coupling with constant
detuning maps onto the Rosen-Zener model; driven by a tanh-shaped
coupling it maps onto the exactly solvable tanh model.  The formulas
collected here serve both as oracles for the numerical solver and as the
design rules used to pick couplings for a target flip probability.
Everything is pure and stateless.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .errors import ValidationError

__all__ = [
    "BrightDriveParams",
    "DarkDriveParams",
    "DarkRegime",
    "FastSolitonTerms",
    "classify_dark_regime",
    "dark_fast_pminus",
    "dark_fast_validity",
    "dark_rabi_pminus",
    "dark_resonance_pminus",
    "fast_soliton_terms",
    "onresonance_pminus",
    "rabi_limit_applies",
    "rosen_zener_pminus",
    "target_to_zeromode",
]


@dataclass(frozen=True)
class BrightDriveParams:
    """sech pulse: Omega(t) = omega_b0 sech(t/T), constant detuning delta_b0."""

    omega_b0: float
    delta_b0: float
    T: float

    def __post_init__(self) -> None:
        if not self.T > 0:
            raise ValidationError(f"transit time T must be > 0, got {self.T}")


@dataclass(frozen=True)
class DarkDriveParams:
    """tanh pulse: Omega(t) = omega_d0 tanh(t/T), constant detuning delta_d.

    ``delta_d`` is the constant of the solvable model and enters every
    formula below; ``delta_d0`` keeps the asymptotic detuning of the
    originating drive when the two differ (they are used nearly
    interchangeably in the weak-deviation limit) and defaults to
    ``delta_d``.
    """

    omega_d0: float
    delta_d: float
    T: float
    delta_d0: float | None = None

    def __post_init__(self) -> None:
        if not self.T > 0:
            raise ValidationError(f"width time T must be > 0, got {self.T}")
        if self.delta_d0 is None:
            object.__setattr__(self, "delta_d0", self.delta_d)


def _sech(x: float) -> float:
    return 0.0 if abs(x) > 710.0 else 1.0 / math.cosh(x)


def _ln_cosh(x: float) -> float:
    # |x| - ln 2 + log1p(e^(-2|x|)) without overflow
    ax = abs(x)
    return ax - math.log(2.0) + math.log1p(math.exp(-2.0 * ax))


def rosen_zener_pminus(b: BrightDriveParams) -> float:
    """Final flip probability sin^2(pi W T/2) / cosh^2(pi D T/2).

    Valid when the detuning really is constant over the pulse, i.e. the
    quadratic envelope term in the detuning is negligible against
    delta_b0; the caller is responsible for that regime check.
    """
    num = math.sin(0.5 * math.pi * b.omega_b0 * b.T) ** 2
    return num * _sech(0.5 * math.pi * b.delta_b0 * b.T) ** 2


def onresonance_pminus(omega_b0T: float) -> float:
    """sin^2(pi W T / 2): the zero-detuning limit, set by the pulse area alone."""
    return math.sin(0.5 * math.pi * omega_b0T) ** 2


def target_to_zeromode(xi: float, p: int, sign: int) -> float:
    """Invert the on-resonance formula: the pulse area pi*W*T hitting P = xi.

    Returns sign * 2 arcsin(sqrt(xi)) - 2 p pi.  Any integer p and either
    sign give the same final probability; they select among the branches.
    """
    if not 0.0 <= xi <= 1.0:
        raise ValidationError(f"target probability must lie in [0, 1], got {xi}")
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign}")
    if int(p) != p:
        raise ValidationError(f"branch index p must be an integer, got {p}")
    return sign * 2.0 * math.asin(math.sqrt(xi)) - 2.0 * p * math.pi


@dataclass(frozen=True)
class FastSolitonTerms:
    """Amplitude and phase of the fast-limit probability estimate."""

    p0: float
    chi_fn: Callable[[float], float]


def fast_soliton_terms(d: DarkDriveParams) -> FastSolitonTerms:
    denom = d.omega_d0**2 + d.delta_d**2
    p0 = 0.0 if denom == 0.0 else (2.0 * d.omega_d0 * d.delta_d / denom) ** 2
    return FastSolitonTerms(p0=p0, chi_fn=lambda t: -d.omega_d0 * t)


def dark_fast_pminus(d: DarkDriveParams, t: float) -> float:
    """Leading fast-limit behavior P0 [sin^2(chi/2) + sin^2(chi)/4].

    An asymptotic estimate, not an oracle: it presumes |delta_d T| and
    |omega_d0 T| both small and comparable couplings, and the bracket can
    exceed 1 (supremum 1.25 P0).  The raw value is returned unclamped;
    check :func:`dark_fast_validity` before trusting it.
    """
    terms = fast_soliton_terms(d)
    chi = terms.chi_fn(t)
    return terms.p0 * (math.sin(0.5 * chi) ** 2 + 0.25 * math.sin(chi) ** 2)


def dark_fast_validity(d: DarkDriveParams, lo: float = 0.1) -> tuple[bool, bool]:
    """(detuning small, coupling small): |delta_d T| and |omega_d0 T| vs ``lo``."""
    return (abs(d.delta_d * d.T) <= lo, abs(d.omega_d0 * d.T) <= lo)


def dark_resonance_pminus(d: DarkDriveParams, t: float, t_i: float) -> float:
    """Effective on-resonance flip probability from t_i to t.

    sin^2[(W T / 2) (ln cosh(t/T) - ln cosh(t_i/T))].  Exact for the tanh
    coupling with detuning identically zero, since then the Hamiltonian
    commutes with itself at different times.  A symmetric window
    t = -t_i gives zero: the odd coupling integrates away.
    """
    arg = 0.5 * d.omega_d0 * d.T * (_ln_cosh(t / d.T) - _ln_cosh(t_i / d.T))
    return math.sin(arg) ** 2


def dark_rabi_pminus(d: DarkDriveParams, t: float, t_i: float) -> float:
    """Constant-coupling companion sin^2(W tau / 2), tau = t - t_i."""
    return math.sin(0.5 * d.omega_d0 * (t - t_i)) ** 2


def rabi_limit_applies(d: DarkDriveParams, t: float, t_i: float, factor: float = 1.0) -> bool:
    """Whether the ln-cosh form is within its linear tail on [t_i, t].

    True when both instants sit on the same tail at least ``factor * T``
    from the origin, where ln cosh is linear to within e^(-2|t|/T).
    """
    return t * t_i > 0 and min(abs(t), abs(t_i)) >= factor * d.T


class DarkRegime(enum.Enum):
    FAST = "fast"
    SLOW = "slow"
    WEAK_COUPLING = "weak_coupling"
    LARGE_DETUNING = "large_detuning"
    SMALL_DETUNING = "small_detuning"


def classify_dark_regime(
    d: DarkDriveParams, t: float, hi: float = 10.0, lo: float = 0.1
) -> frozenset[DarkRegime]:
    """Which asymptotic labels hold at time t, by ratio thresholds.

    The defining inequalities: fast |t| >> T, slow |t| << T, weak
    coupling W t^2 << T, small detuning |D T| << 2 W t, large detuning
    |D T| >> 2 sqrt(W T).  The strict orderings are operationalized as
    ratio >= hi and ratio <= lo; several labels can hold at once and
    borderline values earn none.
    """
    if hi <= 1 or not 0 < lo < 1:
        raise ValidationError(f"need hi > 1 and 0 < lo < 1, got hi={hi}, lo={lo}")
    w = abs(d.omega_d0)
    dt_abs = abs(d.delta_d * d.T)
    labels = set()
    if abs(t) >= hi * d.T:
        labels.add(DarkRegime.FAST)
    if abs(t) <= lo * d.T:
        labels.add(DarkRegime.SLOW)
    if w * t**2 <= lo * d.T:
        labels.add(DarkRegime.WEAK_COUPLING)
    if dt_abs <= lo * 2.0 * w * abs(t):
        labels.add(DarkRegime.SMALL_DETUNING)
    if dt_abs >= hi * 2.0 * math.sqrt(w * d.T):
        labels.add(DarkRegime.LARGE_DETUNING)
    return frozenset(labels)
