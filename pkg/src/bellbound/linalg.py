"""Self-contained fixed-size real linear algebra.

Provides SVD for 2x2/3x3/4x4 real matrices, eigenvalues of complex
Hermitian 4x4 matrices, and orthonormal-frame utilities. The SVD uses a
closed form for 2x2 inputs and one-sided Jacobi sweeps otherwise, so all
results are deterministic functions of the input with no library solver
in the loop. numpy arrays are used as storage only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError

# Convergence controls for the Jacobi sweeps (applied to the input scaled
# to unit max-abs entry, so the thresholds are scale-free).
_GRAM_TOL = 1e-14
_MAX_SWEEPS = 60
_ZERO_COL = 1e-13


@dataclass(frozen=True)
class SvdFactors:
    """Factors u, s, v with m = u @ diag(s) @ v.T, s descending and >= 0."""

    u: np.ndarray
    s: np.ndarray
    v: np.ndarray


@dataclass(frozen=True)
class Frame3:
    """Right-handed orthonormal triple of 3-vectors (e3 = e1 x e2)."""

    e1: np.ndarray
    e2: np.ndarray
    e3: np.ndarray

    def as_matrix(self) -> np.ndarray:
        """Matrix with the frame vectors as columns."""
        return np.column_stack([self.e1, self.e2, self.e3])


def _as_square(m, sizes=(2, 3, 4)) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in sizes:
        raise InvalidInputError(f"expected a square matrix of size {sizes}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError("matrix entries must be finite")
    return a


def _svd_2x2(m: np.ndarray) -> SvdFactors:
    # Exact rotation form: m = R(tl) @ diag(q + r, q - r) @ R(tr).T with
    # q, r built from the symmetric/antisymmetric parts. Stable for tiny
    # second singular values (no squaring of the input).
    a, b = m[0, 0], m[0, 1]
    c, d = m[1, 0], m[1, 1]
    e = 0.5 * (a + d)
    f = 0.5 * (a - d)
    g = 0.5 * (c + b)
    h = 0.5 * (c - b)
    q = math.hypot(e, h)
    r = math.hypot(f, g)
    a1 = math.atan2(g, f)
    a2 = math.atan2(h, e)
    tl = 0.5 * (a1 + a2)
    tr = 0.5 * (a1 - a2)
    u = np.array([[math.cos(tl), -math.sin(tl)], [math.sin(tl), math.cos(tl)]])
    v = np.array([[math.cos(tr), -math.sin(tr)], [math.sin(tr), math.cos(tr)]])
    s1 = q + r
    s2 = q - r
    if s2 < 0.0:
        s2 = -s2
        v = v.copy()
        v[:, 1] = -v[:, 1]
    return SvdFactors(u=u, s=np.array([s1, s2]), v=v)


def _jacobi_svd(m: np.ndarray) -> SvdFactors:
    n = m.shape[0]
    scale = float(np.max(np.abs(m)))
    if scale == 0.0:
        return SvdFactors(u=np.eye(n), s=np.zeros(n), v=np.eye(n))
    a = m / scale
    v = np.eye(n)
    for _ in range(_MAX_SWEEPS):
        rotated = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                gamma = float(a[:, i] @ a[:, j])
                if abs(gamma) < _GRAM_TOL:
                    continue
                rotated = True
                alpha = float(a[:, i] @ a[:, i])
                beta = float(a[:, j] @ a[:, j])
                zeta = (beta - alpha) / (2.0 * gamma)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.hypot(1.0, zeta))
                cth = 1.0 / math.hypot(1.0, t)
                sth = cth * t
                ai = a[:, i].copy()
                a[:, i] = cth * ai - sth * a[:, j]
                a[:, j] = sth * ai + cth * a[:, j]
                vi = v[:, i].copy()
                v[:, i] = cth * vi - sth * v[:, j]
                v[:, j] = sth * vi + cth * v[:, j]
        if not rotated:
            break
    norms = np.sqrt(np.sum(a * a, axis=0))
    # Stable sort keeps prior column order on ties, which pins down the
    # factor matrices for degenerate singular values.
    order = np.argsort(-norms, kind="stable")
    a = a[:, order]
    v = v[:, order]
    norms = norms[order]
    u_cols: list[np.ndarray] = []
    for k in range(n):
        col = a[:, k].copy()
        for prev in u_cols:
            col -= (col @ prev) * prev
        res = float(np.sqrt(col @ col))
        if res > _ZERO_COL:
            u_cols.append(col / res)
        else:
            u_cols.append(_complete_column(u_cols, n))
    u = np.column_stack(u_cols)
    return SvdFactors(u=u, s=norms * scale, v=v)


def _complete_column(existing: list[np.ndarray], n: int) -> np.ndarray:
    for idx in range(n):
        cand = np.zeros(n)
        cand[idx] = 1.0
        for prev in existing:
            cand -= (cand @ prev) * prev
        res = float(np.sqrt(cand @ cand))
        if res > 0.5:
            return cand / res
    raise InvalidInputError("orthonormal completion failed")  # pragma: no cover


def svd(m) -> SvdFactors:
    """Singular value decomposition of a real 2x2, 3x3 or 4x4 matrix.

    Returns factors with ``m = u @ diag(s) @ v.T``, ``s`` sorted in
    decreasing order with all entries >= 0 and ``u``, ``v`` orthogonal
    (possibly with determinant -1). Deterministic for identical input.
    """
    a = _as_square(m)
    if a.shape[0] == 2:
        return _svd_2x2(a)
    return _jacobi_svd(a)


def singular_values(m) -> np.ndarray:
    """Just the singular values of a 2x2/3x3/4x4 real matrix, descending."""
    return svd(m).s


def hermitian_eigenvalues_4(h) -> np.ndarray:
    """Eigenvalues of a complex Hermitian 4x4 matrix, descending.

    Uses cyclic complex Jacobi rotations. The input must be Hermitian to
    within 1e-12 (max-abs of h - h^dagger), otherwise InvalidInputError.
    """
    a = np.asarray(h, dtype=complex)
    if a.shape != (4, 4):
        raise InvalidInputError(f"expected a 4x4 matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise InvalidInputError("matrix entries must be finite")
    if float(np.max(np.abs(a - a.conj().T))) > 1e-12:
        raise InvalidInputError("matrix is not Hermitian within 1e-12")
    a = 0.5 * (a + a.conj().T)
    scale = max(1.0, float(np.max(np.abs(a))))
    tol = 1e-15 * scale
    for _ in range(_MAX_SWEEPS):
        off = 0.0
        for p in range(3):
            for q in range(p + 1, 4):
                apq = a[p, q]
                mag = abs(apq)
                off = max(off, mag)
                if mag <= tol:
                    continue
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(1.0, tau))
                cth = 1.0 / math.hypot(1.0, t)
                sth = cth * t
                rot = np.eye(4, dtype=complex)
                rot[p, p] = cth
                rot[q, q] = cth
                rot[p, q] = sth * phase
                rot[q, p] = -sth * np.conj(phase)
                a = rot.conj().T @ a @ rot
        if off <= tol:
            break
    eig = np.sort(np.real(np.diag(a)))[::-1]
    return eig.copy()


def _check_frame(frame: Frame3, tol: float = 1e-9) -> None:
    vecs = (frame.e1, frame.e2, frame.e3)
    for vec in vecs:
        arr = np.asarray(vec, dtype=float)
        if arr.shape != (3,) or not np.all(np.isfinite(arr)):
            raise InvalidInputError("frame vectors must be finite 3-vectors")
        if abs(float(arr @ arr) - 1.0) > 2.0 * tol:
            raise InvalidInputError("degenerate frame: vector norm differs from 1")
    if abs(float(vecs[0] @ vecs[1])) > tol or abs(float(vecs[0] @ vecs[2])) > tol \
            or abs(float(vecs[1] @ vecs[2])) > tol:
        raise InvalidInputError("degenerate frame: vectors are not orthogonal")
    if float(np.max(np.abs(np.cross(vecs[0], vecs[1]) - vecs[2]))) > 1e-6:
        raise InvalidInputError("degenerate frame: not right-handed")


def rotation_between(src: Frame3, dst: Frame3) -> np.ndarray:
    """Proper rotation R with R @ src.ek = dst.ek for k = 1, 2, 3."""
    _check_frame(src)
    _check_frame(dst)
    return dst.as_matrix() @ src.as_matrix().T


def complete_frame(e1, e2_hint=None) -> Frame3:
    """Extend a unit vector to a right-handed orthonormal frame.

    If ``e2_hint`` is given and not parallel to ``e1``, e2 is the unit
    component of the hint orthogonal to e1. Otherwise e2 comes from
    orthogonalizing the standard basis vector with the smallest
    |component| along e1, which makes the completion deterministic.
    """
    v1 = np.asarray(e1, dtype=float)
    if v1.shape != (3,) or not np.all(np.isfinite(v1)):
        raise InvalidInputError("e1 must be a finite 3-vector")
    norm1 = float(np.sqrt(v1 @ v1))
    if abs(norm1 - 1.0) > 1e-10:
        raise InvalidInputError("e1 must be a unit vector within 1e-10")
    v1 = v1 / norm1
    v2 = None
    if e2_hint is not None:
        hint = np.asarray(e2_hint, dtype=float)
        if hint.shape != (3,) or not np.all(np.isfinite(hint)):
            raise InvalidInputError("e2_hint must be a finite 3-vector")
        ortho = hint - (hint @ v1) * v1
        res = float(np.sqrt(ortho @ ortho))
        if res > 1e-8:
            v2 = ortho / res
    if v2 is None:
        idx = int(np.argmin(np.abs(v1)))
        basis = np.zeros(3)
        basis[idx] = 1.0
        ortho = basis - (basis @ v1) * v1
        v2 = ortho / float(np.sqrt(ortho @ ortho))
    v3 = np.cross(v1, v2)
    v3 = v3 / float(np.sqrt(v3 @ v3))
    return Frame3(e1=v1, e2=v2, e3=v3)


def axis_angle_to_matrix(w) -> np.ndarray:
    """Rotation matrix for an axis-angle 3-vector (angle = |w|)."""
    vec = np.asarray(w, dtype=float)
    angle = float(np.sqrt(vec @ vec))
    if angle < 1e-300:
        return np.eye(3)
    k = vec / angle
    kmat = np.array([[0.0, -k[2], k[1]], [k[2], 0.0, -k[0]], [-k[1], k[0], 0.0]])
    return np.eye(3) + math.sin(angle) * kmat + (1.0 - math.cos(angle)) * (kmat @ kmat)


def matrix_to_axis_angle(rot) -> np.ndarray:
    """Axis-angle 3-vector of a proper rotation matrix (inverse of above)."""
    r = np.asarray(rot, dtype=float)
    skew = np.array([r[2, 1] - r[1, 2], r[0, 2] - r[2, 0], r[1, 0] - r[0, 1]])
    sin_ang = 0.5 * float(np.sqrt(skew @ skew))
    cos_ang = 0.5 * (float(np.trace(r)) - 1.0)
    angle = math.atan2(sin_ang, cos_ang)
    if angle < 1e-12:
        return np.zeros(3)
    if sin_ang > 1e-7:
        axis = skew / (2.0 * sin_ang)
        return axis * angle
    # Near pi the skew part vanishes; recover the axis from (R + I) / 2,
    # whose columns are all proportional to it.
    b = 0.5 * (r + np.eye(3))
    k = int(np.argmax(np.diag(b)))
    axis = b[:, k] / math.sqrt(max(b[k, k], 1e-300))
    axis = axis / float(np.sqrt(axis @ axis))
    return axis * angle
