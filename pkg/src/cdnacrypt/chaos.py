"""Deterministic keyed stream generators built on four chaotic maps.

The maps are the tangent-delay ellipse reflecting cavity system (TD-ERCS),
the intertwining map, the Chirikov standard map and the nonlinear chaotic
algorithm (NCA).  Each map is exposed two ways: a pure single-step function
(``td_ercs_next`` etc.) operating on immutable state, and a ``ChaosStream``
that owns mutable state, discards a fixed burn-in prefix and hands out raw
orbit values in bulk.  Bytes, bounded indices and permutations are extracted
from raw values by the module-level helpers at the bottom.

Determinism contract: identical parameters give a bit-identical value
sequence, independent of how ``take`` calls are chunked.  Arithmetic is
plain IEEE-754 binary64 with the platform libm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalDegeneracy, RangeError

#: Iterations discarded at the head of every stream before any extraction.
BURN_IN = 1000

#: Scale factor turning a raw orbit value into an integer before reduction.
SCALE = 1e14

_RESCUE_NUDGE = 1e-12


def _rescue(value: float, lo: float, hi: float) -> float:
    """One-shot recovery for an orbit value that left the open (lo, hi).

    Nudges by +1e-12 and wraps back into the interval.  Returns a usable
    in-range value or raises NumericalDegeneracy when nothing sensible is
    left (NaN, or the wrap landed on a boundary).
    """
    if math.isnan(value):
        raise NumericalDegeneracy(f"orbit value is NaN, cannot rescue")
    if math.isinf(value):
        value = lo
    v = lo + (value + _RESCUE_NUDGE - lo) % (hi - lo)
    if not (lo < v < hi):
        raise NumericalDegeneracy(f"rescued value {v!r} still outside ({lo}, {hi})")
    return v


# ---------------------------------------------------------------------------
# Parameter types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TdErcsParams:
    """Seed parameters of the TD-ERCS map: mu in (0,1), x0 in [-1,1],
    alpha in (0,pi), tangent delay m >= 2."""

    mu: float
    x0: float
    alpha: float
    m: int

    def __post_init__(self):
        if not (0.0 < self.mu < 1.0):
            raise RangeError(f"mu must be in (0,1), got {self.mu}")
        if not (-1.0 <= self.x0 <= 1.0):
            raise RangeError(f"x0 must be in [-1,1], got {self.x0}")
        if not (0.0 < self.alpha < math.pi):
            raise RangeError(f"alpha must be in (0,pi), got {self.alpha}")
        if not (isinstance(self.m, int) and self.m >= 2):
            raise RangeError(f"m must be an integer >= 2, got {self.m}")


@dataclass(frozen=True)
class IntertwiningParams:
    """Seed parameters of the intertwining map."""

    lam: float
    a1: float
    a2: float
    a3: float
    x0: float
    y0: float
    z0: float

    def __post_init__(self):
        if not (0.0 <= self.lam <= 3.999):
            raise RangeError(f"lambda must be in [0, 3.999], got {self.lam}")
        if not abs(self.a1) > 33.5:
            raise RangeError(f"|A1| must exceed 33.5, got {self.a1}")
        if not abs(self.a2) > 37.9:
            raise RangeError(f"|A2| must exceed 37.9, got {self.a2}")
        if not abs(self.a3) > 35.7:
            raise RangeError(f"|A3| must exceed 35.7, got {self.a3}")
        for name in ("x0", "y0", "z0"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise RangeError(f"{name} must be in (0,1), got {v}")


@dataclass(frozen=True)
class ChirikovParams:
    """Seed parameters of the Chirikov standard map on [0, n)^2."""

    eta: float
    n: int
    a0: float
    b0: float

    def __post_init__(self):
        if not self.eta > 0.0:
            raise RangeError(f"eta must be > 0, got {self.eta}")
        if not (isinstance(self.n, int) and self.n >= 1):
            raise RangeError(f"n must be a positive integer, got {self.n}")
        for name in ("a0", "b0"):
            v = getattr(self, name)
            if not (0.0 <= v < self.n):
                raise RangeError(f"{name} must be in [0, {self.n}), got {v}")


# (chi, xi) regions where the NCA map is chaotic.
_NCA_REGIONS = (
    ((0.0, 1.4), (5.0, 43.0)),
    ((1.4, 1.5), (9.0, 38.0)),
    ((1.5, 1.57), (3.0, 15.0)),
)


@dataclass(frozen=True)
class NcaParams:
    """Seed parameters of the NCA map; (chi, xi) must fall in one of the
    three admissible regions."""

    c0: float
    chi: float
    xi: float

    def __post_init__(self):
        if not (0.0 < self.c0 < 1.0):
            raise RangeError(f"c0 must be in (0,1), got {self.c0}")
        for (chi_lo, chi_hi), (xi_lo, xi_hi) in _NCA_REGIONS:
            if chi_lo < self.chi <= chi_hi and xi_lo <= self.xi <= xi_hi:
                return
        raise RangeError(
            f"(chi={self.chi}, xi={self.xi}) outside every admissible region"
        )


# ---------------------------------------------------------------------------
# Single-step map functions
# ---------------------------------------------------------------------------

ELLIPSE_TOL = 1e-9


@dataclass(frozen=True)
class TdErcsState:
    """Current TD-ERCS point (x, y), slope k, and the last m (x, y) points
    (newest first) feeding the delayed tangent term."""

    x: float
    y: float
    k: float
    history: tuple  # ((x, y), ...) newest first, length <= m
    n: int = 0  # completed iterations

    def ellipse_residual(self, mu: float) -> float:
        return abs(self.x * self.x + (self.y / mu) ** 2 - 1.0)


def td_ercs_init(params: TdErcsParams) -> TdErcsState:
    """Build the n=0 state from seed parameters.

    If x0 = +-1 the tangent slope k'0 degenerates (y0 = 0); the one-shot
    rescue nudges x0 off the boundary before giving up.
    """
    x0, mu = params.x0, params.mu
    y0 = mu * math.sqrt(1.0 - x0 * x0)
    if y0 == 0.0:
        x0 = _rescue(x0, -1.0, 1.0)
        y0 = mu * math.sqrt(1.0 - x0 * x0)
        if y0 == 0.0:
            raise NumericalDegeneracy("x0 rescue left y0 = 0")
    kp0 = -(x0 / y0) * mu * mu
    t = math.tan(params.alpha)
    k0 = -(t + kp0) / (1.0 - kp0 * t)
    return TdErcsState(x=x0, y=y0, k=k0, history=((x0, y0),), n=0)


def _td_ercs_step(x, y, k, hist, mu, m, n):
    """One TD-ERCS iteration. hist is the (x, y) history newest first.
    Returns (x1, y1, k1, new_hist)."""
    mu2 = mu * mu
    k2 = k * k
    denom = mu2 + k2
    x1 = -(2.0 * k * y + x * (mu2 - k2)) / denom
    y1 = k * (x1 - x) + y
    n1 = n + 1
    # Delayed tangent point: (x_{n-1}, y_{n-1}) while n < m, else (x_{n-m}, y_{n-m}).
    if n1 < m:
        xr, yr = x, y
    else:
        xr, yr = hist[m - 1]
    if yr == 0.0 or not math.isfinite(yr):
        raise NumericalDegeneracy("delayed tangent point has y = 0")
    kp = -(xr / yr) * mu2
    k1 = (2.0 * kp - k + k * kp * kp) / (1.0 + 2.0 * k * kp - kp * kp)
    new_hist = ((x1, y1),) + hist[: m - 1]
    return x1, y1, k1, new_hist


def td_ercs_next(state: TdErcsState, params: TdErcsParams):
    """Advance TD-ERCS one step; returns (new_state, x_n)."""
    if state.ellipse_residual(params.mu) > ELLIPSE_TOL:
        raise RangeError("state violates the ellipse invariant")
    x1, y1, k1, hist = _td_ercs_step(
        state.x, state.y, state.k, state.history, params.mu, params.m, state.n
    )
    if not (math.isfinite(x1) and math.isfinite(y1) and math.isfinite(k1)):
        raise NumericalDegeneracy("non-finite TD-ERCS state")
    return TdErcsState(x1, y1, k1, hist, state.n + 1), x1


@dataclass(frozen=True)
class IntertwiningState:
    x: float
    y: float
    z: float
    n: int = 0


def _intertwining_step(x, y, z, lam, a1, a2, a3):
    x1 = (lam * a1 * y * (1.0 - x) + z) % 1.0
    y1 = ((lam * a2 * y + z) / (1.0 + x1 * x1)) % 1.0
    z1 = (lam * (x1 + y1 + a3) * math.sin(z)) % 1.0
    return x1, y1, z1


def intertwining_next(state: IntertwiningState, params: IntertwiningParams):
    """Advance the intertwining map one step; returns (new_state, (X, Y, Z))."""
    x1, y1, z1 = _intertwining_step(
        state.x, state.y, state.z, params.lam, params.a1, params.a2, params.a3
    )
    return IntertwiningState(x1, y1, z1, state.n + 1), (x1, y1, z1)


@dataclass(frozen=True)
class ChirikovState:
    a: float
    b: float
    n: int = 0


def _chirikov_step(a, b, eta, n_mod):
    # Printed form of the map: A_n feeds both terms of the B update.
    a1 = (a + b) % n_mod
    b1 = (a + eta * math.sin(2.0 * math.pi * a / n_mod)) % n_mod
    return a1, b1


def chirikov_next(state: ChirikovState, params: ChirikovParams):
    """Advance the Chirikov map one step; returns (new_state, (A, B))."""
    a1, b1 = _chirikov_step(state.a, state.b, params.eta, params.n)
    return ChirikovState(a1, b1, state.n + 1), (a1, b1)


@dataclass(frozen=True)
class NcaState:
    c: float
    n: int = 0
    rescued: bool = False


def _nca_coeff(chi: float, xi: float) -> float:
    """C_n-independent prefactor of the NCA update."""
    return (
        (1.0 - xi ** -4.0)
        * (1.0 / math.tan(chi / (1.0 + xi)))
        * (1.0 + 1.0 / xi) ** xi
    )


def _nca_step(c, chi, xi, coeff):
    return coeff * math.tan(chi * c) * (1.0 - c) ** xi


def nca_next(state: NcaState, params: NcaParams):
    """Advance the NCA map one step; returns (new_state, C).

    If the orbit leaves (0,1) it is nudged back once per stream lifetime;
    a second excursion raises NumericalDegeneracy.
    """
    if not (0.0 < state.c < 1.0):
        raise RangeError(f"C must be in (0,1), got {state.c}")
    c1 = _nca_step(state.c, params.chi, params.xi, _nca_coeff(params.chi, params.xi))
    rescued = state.rescued
    if not (0.0 < c1 < 1.0):
        if rescued:
            raise NumericalDegeneracy(f"NCA orbit left (0,1) twice: {c1!r}")
        c1 = _rescue(c1, 0.0, 1.0)
        rescued = True
    return NcaState(c1, state.n + 1, rescued), c1


# ---------------------------------------------------------------------------
# Streams
# ---------------------------------------------------------------------------

class ChaosStream:
    """Single-owner mutable wrapper around one chaotic orbit.

    Subclasses implement ``_generate(count)`` appending at least ``count``
    raw values (whole map iterations only) to ``self._values``.  Burn-in is
    applied at construction; ``iterations`` counts map steps taken,
    including burn-in.
    """

    kind: str = ""
    emit_per_step: int = 1

    def __init__(self, burn_in: int = BURN_IN):
        self._values: list[float] = []
        self.iterations = 0
        if burn_in:
            self._generate(burn_in * self.emit_per_step)
            self._values.clear()

    def _generate(self, count: int) -> None:
        raise NotImplementedError

    def take(self, count: int) -> np.ndarray:
        """Return the next ``count`` raw orbit values as float64."""
        if count < 0:
            raise RangeError("count must be >= 0")
        need = count - len(self._values)
        if need > 0:
            self._generate(need)
        out = np.array(self._values[:count], dtype=np.float64)
        del self._values[:count]
        return out

    def next_raw(self) -> float:
        return float(self.take(1)[0])


class TdErcsStream(ChaosStream):
    """TD-ERCS orbit emitting the x component."""

    kind = "td-ercs"
    emit_per_step = 1

    def __init__(self, params: TdErcsParams, burn_in: int = BURN_IN):
        self.params = params
        s = td_ercs_init(params)
        self._x, self._y, self._k = s.x, s.y, s.k
        self._hist = s.history
        self._n = 0
        super().__init__(burn_in)

    def _generate(self, count: int) -> None:
        x, y, k, hist = self._x, self._y, self._k, self._hist
        mu, m = self.params.mu, self.params.m
        n = self._n
        append = self._values.append
        for _ in range(count):
            x, y, k, hist = _td_ercs_step(x, y, k, hist, mu, m, n)
            n += 1
            append(x)
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(k)):
            raise NumericalDegeneracy("non-finite TD-ERCS state")
        self._x, self._y, self._k, self._hist, self._n = x, y, k, hist, n
        self.iterations = n


class IntertwiningStream(ChaosStream):
    """Intertwining orbit emitting X, Y, Z round-robin."""

    kind = "intertwining"
    emit_per_step = 3

    def __init__(self, params: IntertwiningParams, burn_in: int = BURN_IN):
        self.params = params
        self._x, self._y, self._z = params.x0, params.y0, params.z0
        super().__init__(burn_in)

    def _generate(self, count: int) -> None:
        x, y, z = self._x, self._y, self._z
        lam, a1, a2, a3 = (
            self.params.lam,
            self.params.a1,
            self.params.a2,
            self.params.a3,
        )
        append = self._values.append
        steps = -(-count // 3)
        for _ in range(steps):
            x1 = (lam * a1 * y * (1.0 - x) + z) % 1.0
            y1 = ((lam * a2 * y + z) / (1.0 + x1 * x1)) % 1.0
            z1 = (lam * (x1 + y1 + a3) * math.sin(z)) % 1.0
            x, y, z = x1, y1, z1
            append(x)
            append(y)
            append(z)
        self._x, self._y, self._z = x, y, z
        self.iterations += steps


class ChirikovStream(ChaosStream):
    """Chirikov orbit emitting A, B round-robin."""

    kind = "chirikov"
    emit_per_step = 2

    def __init__(self, params: ChirikovParams, burn_in: int = BURN_IN):
        self.params = params
        self._a, self._b = params.a0, params.b0
        super().__init__(burn_in)

    def _generate(self, count: int) -> None:
        a, b = self._a, self._b
        eta, n_mod = self.params.eta, float(self.params.n)
        two_pi = 2.0 * math.pi
        sin = math.sin
        append = self._values.append
        steps = -(-count // 2)
        for _ in range(steps):
            a1 = (a + b) % n_mod
            b1 = (a + eta * sin(two_pi * a / n_mod)) % n_mod
            a, b = a1, b1
            append(a)
            append(b)
        self._a, self._b = a, b
        self.iterations += steps


class NcaStream(ChaosStream):
    """NCA orbit emitting C."""

    kind = "nca"
    emit_per_step = 1

    def __init__(self, params: NcaParams, burn_in: int = BURN_IN):
        self.params = params
        self._c = params.c0
        self._coeff = _nca_coeff(params.chi, params.xi)
        self._rescued = False
        super().__init__(burn_in)

    def _generate(self, count: int) -> None:
        c = self._c
        chi, xi, coeff = self.params.chi, self.params.xi, self._coeff
        tan = math.tan
        append = self._values.append
        for _ in range(count):
            c = coeff * tan(chi * c) * (1.0 - c) ** xi
            if not (0.0 < c < 1.0):
                if self._rescued:
                    self._c = c
                    raise NumericalDegeneracy(f"NCA orbit left (0,1) twice: {c!r}")
                c = _rescue(c, 0.0, 1.0)
                self._rescued = True
            append(c)
        self._c = c
        self.iterations += count


# ---------------------------------------------------------------------------
# Extraction helpers
# ---------------------------------------------------------------------------

def _scaled_ints(values: np.ndarray) -> np.ndarray:
    """floor(|v| * 1e14) for each raw value, as int64."""
    return np.floor(np.abs(values) * SCALE).astype(np.int64)


def chaotic_bytes(stream: ChaosStream, count: int) -> np.ndarray:
    """Next ``count`` bytes: floor(|v| * 1e14) mod 256 per raw value."""
    return (_scaled_ints(stream.take(count)) % 256).astype(np.uint8)


def chaotic_indices(stream: ChaosStream, count: int, modulus: int) -> np.ndarray:
    """Next ``count`` indices in [0, modulus): floor(|v| * 1e14) mod modulus."""
    if modulus < 1:
        raise RangeError(f"modulus must be >= 1, got {modulus}")
    return (_scaled_ints(stream.take(count)) % modulus).astype(np.int64)


def permutation_from_sequence(seq) -> np.ndarray:
    """Stable ascending argsort of ``seq``: the keyed permutation rule.

    Ties keep original order, so the result is always a bijection on
    0..len(seq)-1.
    """
    arr = np.asarray(seq, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 1:
        raise RangeError("sequence must be 1-D and non-empty")
    if not np.all(np.isfinite(arr)):
        raise RangeError("sequence contains non-finite values")
    return np.argsort(arr, kind="stable")
