"""Two-level dynamics of a qubit driven by a passing soliton.

The soliton enters only through two real samplers: the coupling
Omega(t) = -dxy S phi(xq, t) and the detuning
Delta(t) = (mu - nu) H0 - dz S sqrt(1 - phi^2) + omega, where phi is the
real envelope at the qubit site and omega the carrier frequency.  The
effective Hamiltonian in the (C-, C+) basis is

    H(t) = [[-Delta/2, Omega/2], [Omega/2, Delta/2]]

and the Schroedinger equation is integrated in physical time with a
fixed-step classical Runge-Kutta scheme; the reduced-time picture
s(t) = (1/2) integral of Omega and the ratio Theta(s) = Delta/Omega are
kept as validated reparametrizations, never as the solver variable (the
tanh drive's Theta is singular where the coupling vanishes).

Populations and the relative phase arg(C- conj(C+)) are reported; the
global phase removed together with the carrier is not tracked, so the
physical relative phase carries an additional 2*omega*t on top of the
reported one.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .chain import ChainParams, ChainTrace, demodulate_series
from .closedform import target_to_zeromode
from .csvio import write_csv
from .errors import KindMismatchError, NormDriftError, ValidationError
from .solitons import SolitonKind, SolitonSpec

__all__ = [
    "DetuningMode",
    "Drive",
    "DriveSource",
    "ProbabilityTrace",
    "QubitParams",
    "QubitState",
    "TuneResult",
    "coupling",
    "detuning",
    "integrate_tdse",
    "make_drive",
    "pulse_drive",
    "reduced_time",
    "s_infinity",
    "solve_dxy_for_target",
    "stueckelberg",
    "tune_dz",
    "write_drive",
    "write_trace",
]


@dataclass(frozen=True)
class QubitParams:
    """Qubit-chain couplings, magnetic moments, field, and site.

    ``xq`` is the chain site the qubit couples to; non-integer values are
    allowed for analytic drives but chain sampling needs a lattice site.
    """

    dxy: float
    dz: float
    mu: float
    nu: float
    H0: float
    xq: float = 0.0

    def __post_init__(self) -> None:
        for name in ("dxy", "dz", "mu", "nu", "H0", "xq"):
            if not math.isfinite(getattr(self, name)):
                raise ValidationError(f"qubit parameter {name} must be finite")


class DriveSource(enum.Enum):
    ANALYTIC_BRIGHT = "analytic_bright"
    ANALYTIC_DARK = "analytic_dark"
    CHAIN_SAMPLED = "chain_sampled"
    MODEL = "model"


class DetuningMode(enum.Enum):
    EXACT = "exact"
    TAYLOR = "taylor"


@dataclass(frozen=True, eq=False)
class Drive:
    """Scalar samplers Omega(t), Delta(t) plus the metadata to reason about them.

    ``shape`` is "sech" or "tanh" when the coupling is exactly a centred
    analytic pulse of amplitude ``omega_amp`` and width ``T`` (closed-form
    reduced time and Stueckelberg inversion are then available), ``None``
    otherwise.  Chain-sampled drives are only defined on
    [``t_min``, ``t_max``]; sampling outside raises.
    """

    omega_fn: Callable[[float], float]
    delta_fn: Callable[[float], float]
    source: DriveSource
    mode: DetuningMode
    shape: str | None = None
    omega_amp: float | None = None
    delta0: float | None = None
    T: float | None = None
    t_min: float = field(default=-math.inf)
    t_max: float = field(default=math.inf)

    def _check_window(self, t: float) -> None:
        slack = 1e-9 * (1.0 + abs(t))
        if t < self.t_min - slack or t > self.t_max + slack:
            raise ValidationError(
                f"t = {t:.6g} outside the drive window [{self.t_min:.6g}, {self.t_max:.6g}]"
            )

    def omega(self, t: float) -> float:
        self._check_window(t)
        return self.omega_fn(t)

    def delta(self, t: float) -> float:
        self._check_window(t)
        return self.delta_fn(t)


@dataclass(frozen=True)
class QubitState:
    t: float
    cminus: complex
    cplus: complex


@dataclass(frozen=True, eq=False)
class ProbabilityTrace:
    """Populations, drive samples and relative phase on the step grid."""

    times: np.ndarray
    pminus: np.ndarray
    pplus: np.ndarray
    omega: np.ndarray
    delta: np.ndarray
    rel_phase: np.ndarray
    T: float | None = None


@dataclass(frozen=True)
class TuneResult:
    """Split axial coupling dz = dz0 + dz1 at running parameter eta."""

    dz0: float
    dz1: float
    eta: float

    @property
    def dz(self) -> float:
        return self.dz0 + self.dz1


def _sech(x: float) -> float:
    return 0.0 if abs(x) > 710.0 else 1.0 / math.cosh(x)


def _ln_cosh(x: float) -> float:
    ax = abs(x)
    return ax - math.log(2.0) + math.log1p(math.exp(-2.0 * ax))


def coupling(phi, q: QubitParams, S: float):
    """Omega = -dxy S phi for a real envelope value (or array) phi."""
    arr = np.asarray(phi, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise ValidationError("envelope |phi| must not exceed 1")
    out = -q.dxy * S * arr
    return float(out) if out.ndim == 0 else out


def detuning(phi, q: QubitParams, S: float, omega: float, mode: DetuningMode | str = "exact"):
    """Delta = (mu-nu) H0 - dz S sqrt(1 - phi^2) + omega.

    In taylor mode the square root becomes 1 - phi^2/2 (the expansion
    used to map onto the constant-detuning models); exact mode needs
    |phi| <= 1.
    """
    mode = DetuningMode(mode)
    arr = np.asarray(phi, dtype=float)
    const = (q.mu - q.nu) * q.H0 + omega
    if mode is DetuningMode.EXACT:
        if np.any(np.abs(arr) > 1.0):
            raise ValidationError("exact detuning needs |phi| <= 1")
        out = const - q.dz * S * np.sqrt(1.0 - arr**2)
    else:
        out = const - q.dz * S * (1.0 - arr**2 / 2.0)
    return float(out) if out.ndim == 0 else out


def pulse_drive(
    shape: str, omega_amp: float, T: float, delta: float = 0.0
) -> Drive:
    """Bare model drive: a centred sech or tanh pulse with constant detuning."""
    if shape not in ("sech", "tanh"):
        raise ValidationError(f"pulse shape must be 'sech' or 'tanh', got {shape!r}")
    if not T > 0:
        raise ValidationError(f"pulse width T must be > 0, got {T}")
    if shape == "sech":
        omega_fn = lambda t: omega_amp * _sech(t / T)  # noqa: E731
    else:
        omega_fn = lambda t: omega_amp * math.tanh(t / T)  # noqa: E731
    return Drive(
        omega_fn=omega_fn,
        delta_fn=lambda t: delta,
        source=DriveSource.MODEL,
        mode=DetuningMode.EXACT,
        shape=shape,
        omega_amp=omega_amp,
        delta0=delta,
        T=T,
    )


def make_drive(
    spec: SolitonSpec,
    q: QubitParams,
    params: ChainParams,
    source="analytic",
    mode: DetuningMode | str = "exact",
) -> Drive:
    """Build the qubit drive from a soliton, analytically or from a chain run.

    ``source`` is the string ``"analytic"`` (closed-form envelope at the
    qubit site) or a :class:`ChainTrace`, in which case the envelope is
    demodulated from the recorded field at site ``q.xq`` and linearly
    interpolated in time; such a drive is defined on the trace window
    only.
    """
    mode = DetuningMode(mode)
    dconst = (q.mu - q.nu) * q.H0 + spec.omega
    dz_s = q.dz * params.S
    dxy_s = q.dxy * params.S
    delta0 = dconst - dz_s

    if isinstance(source, ChainTrace):
        site = q.xq
        if site != int(site) or not 0 <= int(site) < source.abs2.shape[1]:
            raise ValidationError(
                f"chain sampling needs an integer qubit site in [0, {source.abs2.shape[1]}), "
                f"got xq = {site}"
            )
        times = source.times
        env = demodulate_series(source, int(site), spec.k, spec.omega)

        def ph(t: float) -> float:
            return float(np.interp(t, times, env))

        src = DriveSource.CHAIN_SAMPLED
        shape = None
        omega_amp = None
        t_min, t_max = float(times[0]), float(times[-1])
    elif source == "analytic":
        phi0, L, v, x1 = spec.phi0, spec.L, spec.v, q.xq - spec.x0
        if spec.kind is SolitonKind.BRIGHT:
            def ph(t: float) -> float:
                return phi0 * _sech((x1 - v * t) / L)

            src = DriveSource.ANALYTIC_BRIGHT
            omega_amp = -dxy_s * phi0
        else:
            def ph(t: float) -> float:
                return phi0 * math.tanh((x1 - v * t) / L)

            src = DriveSource.ANALYTIC_DARK
            omega_amp = dxy_s * phi0
        # the closed pulse forms assume the soliton centre crosses the
        # qubit at t = 0; off-centre or static geometries fall back to
        # the generic numeric paths
        centred = spec.T is not None and abs(x1) <= 1e-9 * (1.0 + abs(spec.x0))
        shape = ("sech" if spec.kind is SolitonKind.BRIGHT else "tanh") if centred else None
        if not centred:
            omega_amp = None
        t_min, t_max = -math.inf, math.inf
    else:
        raise ValidationError("drive source must be 'analytic' or a ChainTrace")

    def omega_fn(t: float) -> float:
        return -dxy_s * ph(t)

    if mode is DetuningMode.EXACT:
        def delta_fn(t: float) -> float:
            p = ph(t)
            return dconst - dz_s * math.sqrt(1.0 - p * p)
    else:
        def delta_fn(t: float) -> float:
            p = ph(t)
            return dconst - dz_s * (1.0 - 0.5 * p * p)

    return Drive(
        omega_fn=omega_fn,
        delta_fn=delta_fn,
        source=src,
        mode=mode,
        shape=shape,
        omega_amp=omega_amp,
        delta0=delta0,
        T=spec.T,
        t_min=t_min,
        t_max=t_max,
    )


def _auto_dt(drive: Drive, t_i: float, t_f: float) -> float:
    # step keyed off the fastest frequency present, incl. the pulse rate 1/T
    scale = 0.0
    for t in np.linspace(t_i, t_f, 2001):
        scale = max(scale, abs(drive.omega(float(t))), abs(drive.delta(float(t))))
    if drive.T:
        scale = max(scale, 1.0 / drive.T)
    span = t_f - t_i
    return span / 100.0 if scale <= 0.0 else min(1e-2 / scale, span / 100.0)


def integrate_tdse(
    drive: Drive,
    initial: QubitState | None,
    t_i: float,
    t_f: float,
    dt: float | None = None,
) -> ProbabilityTrace:
    """Integrate the two-level Schroedinger equation from t_i to t_f.

    Fixed-step classical fourth-order Runge-Kutta on the amplitudes; the
    step is rounded so the grid lands exactly on t_f, and every grid
    point is recorded.  ``dt = None`` picks a step with
    max(|Omega|, |Delta|, 1/T) * dt <= 1e-2.  The norm is monitored each
    step and drift beyond 1e-6 aborts.

    ``initial = None`` starts from the qubit pointing up (C- = 0, C+ = 1).
    """
    if not t_f > t_i:
        raise ValidationError(f"need t_f > t_i, got [{t_i}, {t_f}]")
    if initial is None:
        cm, cp = 0.0 + 0.0j, 1.0 + 0.0j
    else:
        cm, cp = complex(initial.cminus), complex(initial.cplus)
        nrm = abs(cm) ** 2 + abs(cp) ** 2
        if abs(nrm - 1.0) > 1e-9:
            raise ValidationError(f"initial state norm {nrm:.12g} is not 1")
    if dt is None:
        dt = _auto_dt(drive, t_i, t_f)
    if not dt > 0:
        raise ValidationError(f"dt must be > 0, got {dt}")
    nsteps = max(1, int(round((t_f - t_i) / dt)))
    h = (t_f - t_i) / nsteps

    times = np.empty(nsteps + 1)
    pm = np.empty(nsteps + 1)
    pp = np.empty(nsteps + 1)
    om = np.empty(nsteps + 1)
    de = np.empty(nsteps + 1)
    rp = np.empty(nsteps + 1)

    def record(i: int, t: float, o: float, d: float) -> None:
        times[i] = t
        pm[i] = cm.real**2 + cm.imag**2
        pp[i] = cp.real**2 + cp.imag**2
        om[i] = o
        de[i] = d
        rp[i] = cmath.phase(cm * cp.conjugate())

    o1, d1 = drive.omega(t_i), drive.delta(t_i)
    record(0, t_i, o1, d1)
    for n in range(nsteps):
        t = t_i + n * h
        o2, d2 = drive.omega(t + 0.5 * h), drive.delta(t + 0.5 * h)
        o3, d3 = drive.omega(t + h), drive.delta(t + h)
        k1m = -0.5j * (-d1 * cm + o1 * cp)
        k1p = -0.5j * (o1 * cm + d1 * cp)
        am, ap = cm + 0.5 * h * k1m, cp + 0.5 * h * k1p
        k2m = -0.5j * (-d2 * am + o2 * ap)
        k2p = -0.5j * (o2 * am + d2 * ap)
        am, ap = cm + 0.5 * h * k2m, cp + 0.5 * h * k2p
        k3m = -0.5j * (-d2 * am + o2 * ap)
        k3p = -0.5j * (o2 * am + d2 * ap)
        am, ap = cm + h * k3m, cp + h * k3p
        k4m = -0.5j * (-d3 * am + o3 * ap)
        k4p = -0.5j * (o3 * am + d3 * ap)
        cm = cm + (h / 6.0) * (k1m + 2.0 * (k2m + k3m) + k4m)
        cp = cp + (h / 6.0) * (k1p + 2.0 * (k2p + k3p) + k4p)
        nrm = cm.real**2 + cm.imag**2 + cp.real**2 + cp.imag**2
        if abs(nrm - 1.0) > 1e-6:
            raise NormDriftError(
                f"norm drift {abs(nrm - 1.0):.3g} at t = {t + h:.6g} exceeds 1e-6; reduce dt"
            )
        record(n + 1, t + h, o3, d3)
        o1, d1 = o3, d3
    return ProbabilityTrace(
        times=times, pminus=pm, pplus=pp, omega=om, delta=de, rel_phase=rp, T=drive.T
    )


def reduced_time(drive: Drive, t: float) -> float:
    """s(t) = (1/2) integral of Omega from 0 to t.

    Closed forms for the centred analytic pulses:
    sech gives W T (arctan e^(t/T) - pi/4), tanh the sign-extended
    sgn(t) (W T / 2) ln cosh(t/T), odd in t and smooth at the origin.
    (The plain half-integral of the tanh pulse would be even in t; the
    sign extension is what keeps t -> s invertible.)  Other drives are
    integrated numerically with a composite Simpson rule.
    """
    if t == 0.0:
        return 0.0
    if drive.shape == "sech":
        if drive.omega_amp == 0.0:
            return 0.0
        x = t / drive.T
        if x < 40.0:
            a = math.atan(math.exp(x))
        else:
            a = math.pi / 2 - (math.exp(-x) if x < 745.0 else 0.0)
        return drive.omega_amp * drive.T * (a - math.pi / 4.0)
    if drive.shape == "tanh":
        return math.copysign(1.0, t) * 0.5 * drive.omega_amp * drive.T * _ln_cosh(t / drive.T)
    n = 2000  # even; smooth or piecewise-linear integrands only
    ts = np.linspace(0.0, t, n + 1)
    vals = np.array([drive.omega(float(u)) for u in ts])
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return 0.5 * float(np.dot(w, vals)) * (t / n) / 3.0


def s_infinity(drive: Drive) -> float:
    """Asymptote of the sech drive's reduced time, W T pi / 4."""
    if drive.shape != "sech":
        raise ValidationError("s_infinity is defined for the sech drive only")
    return drive.omega_amp * drive.T * math.pi / 4.0


def _time_at_reduced(drive: Drive, s: float) -> float:
    if drive.shape == "sech":
        if drive.omega_amp == 0.0:
            raise ValidationError("zero-amplitude drive has no reduced-time inverse")
        x = s / (drive.omega_amp * drive.T)
        if not abs(x) < math.pi / 4.0:
            raise ValidationError(
                f"s = {s:.6g} outside the sech drive's reduced-time range (+-|W| T pi/4)"
            )
        return drive.T * math.log(math.tan(math.pi / 4.0 + x))
    if drive.shape == "tanh":
        if s == 0.0:
            raise ValidationError(
                "the tanh coupling vanishes at s = 0; Theta is singular there"
            )
        if drive.omega_amp == 0.0:
            raise ValidationError("zero-amplitude drive has no reduced-time inverse")
        f = 2.0 * abs(s) / (abs(drive.omega_amp) * drive.T)
        # arccosh(e^f) = f + log1p(sqrt(1 - e^(-2f))), overflow-free
        mag = drive.T * (f + math.log1p(math.sqrt(-math.expm1(-2.0 * f))))
        return math.copysign(mag, s * drive.omega_amp)
    raise ValidationError("closed-form inversion needs an analytic sech or tanh pulse")


def stueckelberg(drive: Drive, s: float) -> float:
    """Theta(s) = Delta(t(s)) / Omega(t(s)) for the analytic pulse drives."""
    t = _time_at_reduced(drive, s)
    om = drive.omega(t)
    if om == 0.0:
        raise ValidationError(f"coupling vanishes at s = {s:.6g}; Theta is singular")
    return drive.delta(t) / om


def tune_dz(
    spec: SolitonSpec, params: ChainParams, q: QubitParams, eta: float
) -> TuneResult:
    """Split dz so the detuning nearly vanishes during the transit.

    dz0 kills the asymptotic detuning exactly; dz1 = (dz0/2)(phi0/eta)^2
    compensates the envelope's quadratic dip during the crossing, with
    the running parameter eta of order one chosen empirically.
    """
    if spec.kind is not SolitonKind.BRIGHT:
        raise KindMismatchError("detuning tuning is defined for the bright drive")
    if not eta > 0:
        raise ValidationError(f"running parameter eta must be > 0, got {eta}")
    dz0 = (spec.omega + (q.mu - q.nu) * q.H0) / params.S
    return TuneResult(dz0=dz0, dz1=0.5 * dz0 * (spec.phi0 / eta) ** 2, eta=eta)


def solve_dxy_for_target(
    xi: float, p: int, sign: int, spec: SolitonSpec, S: float
) -> float:
    """In-plane coupling giving on-resonance final probability xi.

    Inverts the pulse-area relation pi W T = sign 2 arcsin(sqrt(xi)) - 2 p pi
    and then W = -dxy S phi0.
    """
    if spec.kind is not SolitonKind.BRIGHT:
        raise KindMismatchError("target inversion is defined for the bright drive")
    if spec.T is None:
        raise ValidationError("static soliton has no transit time; pick k with sin k != 0")
    zm = target_to_zeromode(xi, p, sign)
    return -zm / (math.pi * spec.T * S * spec.phi0)


def write_trace(trace: ProbabilityTrace, path: str) -> None:
    """CSV with header t_over_T,P_plus,P_minus,Omega_T,Delta_T,rel_phase.

    Times and frequencies are scaled by T when the trace has one,
    otherwise written raw under the same header.
    """
    scale = trace.T if trace.T else 1.0
    rows = zip(
        trace.times / scale,
        trace.pplus,
        trace.pminus,
        trace.omega * scale,
        trace.delta * scale,
        trace.rel_phase,
    )
    write_csv(path, ["t_over_T", "P_plus", "P_minus", "Omega_T", "Delta_T", "rel_phase"], rows)


def write_drive(drive: Drive, times, path: str) -> None:
    """CSV with header t_over_T,Omega_T,Delta_T on the given time grid."""
    scale = drive.T if drive.T else 1.0
    ts = np.asarray(times, dtype=float)
    rows = zip(
        ts / scale,
        [drive.omega(float(t)) * scale for t in ts],
        [drive.delta(float(t)) * scale for t in ts],
    )
    write_csv(path, ["t_over_T", "Omega_T", "Delta_T"], rows)
