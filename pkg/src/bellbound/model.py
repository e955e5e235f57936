"""Domain types for two-valued qubit observables and two-qubit states.

An observable is parameterized as bias * identity + strength * sigma.dir
with strength + |bias| <= 1. States are kept in Fano form (a, b, t):
local Bloch vectors plus the 3x3 spin correlation matrix. The density
matrix is derived on demand, never stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError, InvalidInputError, UnphysicalStateError
from .linalg import hermitian_eigenvalues_4, singular_values

# Minimum admissible eigenvalue of a reconstructed density matrix. Absorbs
# kernel roundoff without admitting meaningfully unphysical states.
PHYSICALITY_EIG_FLOOR = -1e-10

_PAULI = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)
_ID2 = np.eye(2, dtype=complex)
_SIGMA4 = (_ID2,) + _PAULI
# All sixteen sigma_mu (x) sigma_nu products, flattened for a single tensordot.
_KRON16 = np.stack([np.kron(_SIGMA4[mu], _SIGMA4[nu]) for mu in range(4) for nu in range(4)])


def _unit3(v, name: str, tol: float = 1e-6) -> np.ndarray:
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,) or not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} must be a finite 3-vector")
    norm = float(np.sqrt(arr @ arr))
    if abs(norm - 1.0) > tol:
        raise InvalidInputError(f"{name} must be a unit vector (|{name}| = {norm:.6g})")
    return arr / norm


@dataclass(frozen=True, eq=False)
class Observable:
    """Two-valued qubit observable: bias, strength in [0, 1], unit direction."""

    bias: float
    strength: float
    direction: np.ndarray

    def u4(self) -> np.ndarray:
        """The 4-vector (bias, strength * direction)."""
        return np.concatenate(([self.bias], self.strength * self.direction))

    def operator(self) -> np.ndarray:
        """2x2 operator bias * I + strength * sigma . direction."""
        out = self.bias * _ID2.copy()
        for k in range(3):
            out += self.strength * self.direction[k] * _PAULI[k]
        return out

    def to_dict(self) -> dict:
        return {
            "bias": float(self.bias),
            "strength": float(self.strength),
            "direction": [float(c) for c in self.direction],
        }


def make_observable(bias: float, strength: float, direction) -> Observable:
    """Validated observable; directions within 1e-6 of unit norm are renormalized."""
    bias = float(bias)
    strength = float(strength)
    if not (math.isfinite(bias) and math.isfinite(strength)):
        raise InvalidInputError("bias and strength must be finite")
    if strength < 0.0 or strength > 1.0 + 1e-12:
        raise InvalidInputError(f"strength must lie in [0, 1], got {strength}")
    if abs(bias) > 1.0 + 1e-12:
        raise InvalidInputError(f"bias must lie in [-1, 1], got {bias}")
    if strength + abs(bias) > 1.0 + 1e-12:
        raise ConstraintError(
            f"strength + |bias| = {strength + abs(bias):.6g} exceeds 1"
        )
    return Observable(
        bias=max(-1.0, min(1.0, bias)),
        strength=min(strength, 1.0),
        direction=_unit3(direction, "direction"),
    )


def observable_from_dict(data: dict) -> Observable:
    try:
        return make_observable(data.get("bias", 0.0), data["strength"], data["direction"])
    except KeyError as exc:
        raise InvalidInputError(f"observable JSON is missing key {exc}") from exc


@dataclass(frozen=True, eq=False)
class FanoState:
    """Two-qubit state as Bloch vectors a, b and spin correlation matrix t."""

    a: np.ndarray
    b: np.ndarray
    t: np.ndarray

    def theta_matrix(self) -> np.ndarray:
        """4x4 block matrix [[1, b^T], [a, t]]."""
        out = np.empty((4, 4))
        out[0, 0] = 1.0
        out[0, 1:] = self.b
        out[1:, 0] = self.a
        out[1:, 1:] = self.t
        return out

    def density_matrix(self) -> np.ndarray:
        """Reconstructed 4x4 density operator in the Pauli product basis."""
        theta = self.theta_matrix()
        return 0.25 * np.tensordot(theta.ravel(), _KRON16, axes=1)

    def is_tstate(self, tol: float = 1e-10) -> bool:
        return float(np.max(np.abs(self.a))) < tol and float(np.max(np.abs(self.b))) < tol

    def to_dict(self) -> dict:
        return {
            "a": [float(c) for c in self.a],
            "b": [float(c) for c in self.b],
            "t": [[float(c) for c in row] for row in self.t],
        }


def state_from_fano(a, b, t) -> FanoState:
    """Validated Fano state; raises UnphysicalStateError on a bad spectrum."""
    va = np.asarray(a, dtype=float)
    vb = np.asarray(b, dtype=float)
    mt = np.asarray(t, dtype=float)
    if va.shape != (3,) or vb.shape != (3,) or mt.shape != (3, 3):
        raise InvalidInputError("expected 3-vectors a, b and a 3x3 matrix t")
    if not (np.all(np.isfinite(va)) and np.all(np.isfinite(vb)) and np.all(np.isfinite(mt))):
        raise InvalidInputError("state components must be finite")
    if float(va @ va) > 1.0 + 1e-10 or float(vb @ vb) > 1.0 + 1e-10:
        raise UnphysicalStateError("Bloch vector longer than 1")
    if float(np.max(np.abs(mt))) > 1.0 + 1e-12:
        raise UnphysicalStateError("correlation matrix entry outside [-1, 1]")
    state = FanoState(a=va, b=vb, t=mt)
    eig = hermitian_eigenvalues_4(state.density_matrix())
    if eig[-1] < PHYSICALITY_EIG_FLOOR:
        raise UnphysicalStateError(
            f"reconstructed density matrix has eigenvalue {eig[-1]:.3e}"
        )
    return state


def state_from_density(rho) -> FanoState:
    """Fano components of a 4x4 density matrix (trace-normalized input)."""
    dm = np.asarray(rho, dtype=complex)
    if dm.shape != (4, 4):
        raise InvalidInputError("density matrix must be 4x4")
    theta = np.tensordot(_KRON16, dm.T, axes=2).real.reshape(4, 4)
    return state_from_fano(theta[1:, 0], theta[0, 1:], theta[1:, 1:])


def correlation_singular_values(state: FanoState) -> tuple[float, float, float]:
    """Singular values of the spin correlation matrix, descending."""
    s = singular_values(state.t)
    return (float(s[0]), float(s[1]), float(s[2]))


@dataclass(frozen=True, eq=False)
class Scenario:
    """Four observables X, X', Y, Y' (x, xp on side A; y, yp on side B)."""

    x: Observable
    xp: Observable
    y: Observable
    yp: Observable

    @property
    def theta(self) -> float:
        """Angle in [0, pi] between the A-side directions."""
        dot = float(self.x.direction @ self.xp.direction)
        return math.acos(max(-1.0, min(1.0, dot)))

    @property
    def phi(self) -> float:
        """Angle in [0, pi] between the B-side directions."""
        dot = float(self.y.direction @ self.yp.direction)
        return math.acos(max(-1.0, min(1.0, dot)))

    @property
    def strengths(self) -> "StrengthQuad":
        return StrengthQuad(self.x.strength, self.xp.strength, self.y.strength, self.yp.strength)

    @property
    def biases(self) -> tuple[float, float, float, float]:
        return (self.x.bias, self.xp.bias, self.y.bias, self.yp.bias)

    def observables(self) -> tuple[Observable, Observable, Observable, Observable]:
        return (self.x, self.xp, self.y, self.yp)

    def to_dict(self) -> dict:
        return {k: o.to_dict() for k, o in zip(("x", "xp", "y", "yp"), self.observables())}


def scenario_from_dict(data: dict) -> Scenario:
    try:
        return Scenario(
            x=observable_from_dict(data["x"]),
            xp=observable_from_dict(data["xp"]),
            y=observable_from_dict(data["y"]),
            yp=observable_from_dict(data["yp"]),
        )
    except KeyError as exc:
        raise InvalidInputError(f"scenario JSON is missing key {exc}") from exc


@dataclass(frozen=True)
class StrengthQuad:
    """Measurement strengths (sx, sxp, sy, syp), each in [0, 1]."""

    sx: float
    sxp: float
    sy: float
    syp: float

    def __post_init__(self):
        for name, val in zip(("sx", "sxp", "sy", "syp"), self.as_tuple()):
            if not (math.isfinite(val) and -1e-12 <= val <= 1.0 + 1e-12):
                raise InvalidInputError(f"strength {name} must lie in [0, 1], got {val}")

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.sx, self.sxp, self.sy, self.syp)


# ---------------------------------------------------------------------------
# Canonical states


def singlet() -> FanoState:
    """The two-qubit singlet: a = b = 0, t = -identity."""
    return state_from_fano(np.zeros(3), np.zeros(3), -np.eye(3))


def werner(w: float) -> FanoState:
    """Werner state, a singlet mixed with white noise: t = -w * identity."""
    return state_from_fano(np.zeros(3), np.zeros(3), -float(w) * np.eye(3))


def bell_diagonal(t1: float, t2: float, t3: float) -> FanoState:
    """T-state with diagonal correlation matrix diag(t1, t2, t3).

    Physical exactly when (t1, t2, t3) lies in the tetrahedron with
    vertices (-1,-1,-1), (-1,1,1), (1,-1,1), (1,1,-1).
    """
    return state_from_fano(np.zeros(3), np.zeros(3), np.diag([float(t1), float(t2), float(t3)]))


def product_state(a, b) -> FanoState:
    """Product of two single-qubit states with Bloch vectors a and b."""
    va = np.asarray(a, dtype=float)
    vb = np.asarray(b, dtype=float)
    return state_from_fano(va, vb, np.outer(va, vb))


# ---------------------------------------------------------------------------
# Seeded random generators (explicit seed state, no global RNG)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_direction(seed) -> np.ndarray:
    """Unit 3-vector distributed uniformly on the sphere."""
    rng = _rng(seed)
    while True:
        v = rng.standard_normal(3)
        norm = float(np.sqrt(v @ v))
        if norm > 1e-12:
            return v / norm


def random_rotation(seed) -> np.ndarray:
    """Uniform proper rotation from a normalized random quaternion."""
    rng = _rng(seed)
    while True:
        quat = rng.standard_normal(4)
        norm = float(np.sqrt(quat @ quat))
        if norm > 1e-12:
            break
    qw, qx, qy, qz = quat / norm
    return np.array(
        [
            [1 - 2 * (qy * qy + qz * qz), 2 * (qx * qy - qz * qw), 2 * (qx * qz + qy * qw)],
            [2 * (qx * qy + qz * qw), 1 - 2 * (qx * qx + qz * qz), 2 * (qy * qz - qx * qw)],
            [2 * (qx * qz - qy * qw), 2 * (qy * qz + qx * qw), 1 - 2 * (qx * qx + qy * qy)],
        ]
    )


def _bell_tetrahedron_sample(rng: np.random.Generator) -> np.ndarray:
    while True:
        t = rng.uniform(-1.0, 1.0, size=3)
        lams = 0.25 * np.array(
            [
                1.0 - t[0] - t[1] - t[2],
                1.0 - t[0] + t[1] + t[2],
                1.0 + t[0] - t[1] + t[2],
                1.0 + t[0] + t[1] - t[2],
            ]
        )
        if np.all(lams >= 0.0):
            return t


def random_state(seed, kind: str = "general") -> FanoState:
    """Seeded random two-qubit state.

    kind:
      * ``tstate``: diagonal correlations sampled uniformly over the Bell
        tetrahedron, then conjugated by independent random rotations on
        each side (a = b = 0 exactly).
      * ``general``: normalized G @ G^dagger for a complex Gaussian G
        (Ginibre-induced measure).
      * ``pure``: projector onto a normalized complex Gaussian 4-vector.
    """
    rng = _rng(seed)
    if kind == "tstate":
        t = _bell_tetrahedron_sample(rng)
        left = random_rotation(rng)
        right = random_rotation(rng)
        return state_from_fano(np.zeros(3), np.zeros(3), left @ np.diag(t) @ right.T)
    if kind == "general":
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = g @ g.conj().T
        return state_from_density(rho / np.trace(rho).real)
    if kind in ("pure", "two-qubit-pure"):
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi = psi / np.sqrt(np.vdot(psi, psi).real)
        return state_from_density(np.outer(psi, psi.conj()))
    raise InvalidInputError(f"unknown state kind {kind!r}")


def random_observable(seed, fixed_strength: float | None = None, unbiased: bool = False) -> Observable:
    """Seeded random observable with direction uniform on the sphere.

    The strength is uniform in [0, 1] unless fixed; the bias is uniform
    in [-(1 - strength), 1 - strength], or 0 if ``unbiased``.
    """
    rng = _rng(seed)
    direction = random_direction(rng)
    if fixed_strength is None:
        strength = float(rng.uniform(0.0, 1.0))
    else:
        strength = float(fixed_strength)
        if not 0.0 <= strength <= 1.0:
            raise InvalidInputError("fixed_strength must lie in [0, 1]")
    if unbiased:
        bias = 0.0
    else:
        room = 1.0 - strength
        bias = float(rng.uniform(-room, room)) if room > 0.0 else 0.0
    return make_observable(bias, strength, direction)
