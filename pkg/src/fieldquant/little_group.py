"""The little group of a light-like vector and its isomorphism with E(2).

For a light-like ``k`` with ``k0 > 0`` the adapted frame is ``(k, e1, e2, n)``
with ``e1, e2`` the images of the x and y axes under the rotation taking
the z axis to the direction of ``k``, and ``n = (k0, -k_vec) / k0^2``.  Then
``k.n = 2``, ``e_i.e_j = -delta_ij`` and every other product vanishes.

The points ``x(y) = n/2 + y1 e1 + y2 e2 + (1 + |y|^2)/2 k`` lie on the
unit hyperboloid inside the plane ``k.x = 1`` and satisfy
``x(y).x(y') = 1 + |y - y'|^2 / 2``.  A Euclidean motion ``g`` of the
``y`` plane therefore fixes a unique Lorentz matrix by sending four
non-concyclic points ``x(y_i)`` to ``x(g y_i)``; that matrix fixes ``k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError
from .exact_linalg import inverse as exact_inverse
from .exact_linalg import matmul as exact_matmul
from .scalars import as_fraction

__all__ = [
    "G",
    "E2Element",
    "compose",
    "frame",
    "exact_frame",
    "e2_to_little",
    "e2_to_little_exact",
    "little_to_e2",
    "lorentz_residual",
    "random_e2",
    "random_little",
    "spiral_basis_matrix",
    "SubspaceSpec",
    "standard_subspace",
    "span_residual",
    "subspace_invariance_check",
    "orbit_span",
    "adapted_form",
    "block_triangular_residual",
]

G = np.diag([1.0, -1.0, -1.0, -1.0])

# Non-concyclic reference points in the Euclidean plane.
_REF_POINTS = ((0, 0), (1, 0), (0, 1), (-1, -1))


@dataclass(frozen=True)
class E2Element:
    """Motion ``y -> R(phi) y + (alpha, beta)`` of the Euclidean plane."""

    phi: float = 0.0
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        for name in ("phi", "alpha", "beta"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    def apply(self, y: Sequence[float]) -> tuple[float, float]:
        c, s = math.cos(self.phi), math.sin(self.phi)
        return (c * y[0] - s * y[1] + self.alpha, s * y[0] + c * y[1] + self.beta)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.phi, self.alpha, self.beta)

    def distance(self, other: "E2Element") -> float:
        """Max-abs difference of parameters, angles compared modulo 2 pi."""
        dphi = math.remainder(self.phi - other.phi, 2 * math.pi)
        return max(abs(dphi), abs(self.alpha - other.alpha), abs(self.beta - other.beta))


def compose(g1: E2Element, g2: E2Element) -> E2Element:
    """``g1 o g2`` (apply ``g2`` first)."""
    tx, ty = E2Element(g1.phi).apply((g2.alpha, g2.beta))
    phi = math.remainder(g1.phi + g2.phi, 2 * math.pi)
    return E2Element(phi, tx + g1.alpha, ty + g1.beta)


# --------------------------------------------------------------------------
# frames
# --------------------------------------------------------------------------


def _rotation_to(khat: Sequence, one, zero):
    """Rotation taking the z axis to ``khat`` (Rodrigues; rational for rational input)."""
    x, y, z = khat
    if z == -one:
        return [[one, zero, zero], [zero, -one, zero], [zero, zero, -one]]
    # v = z_axis x khat = (-y, x, 0), c = z
    K = [[zero, zero, x], [zero, zero, y], [-x, -y, zero]]
    K2 = [[sum(K[i][m] * K[m][j] for m in range(3)) for j in range(3)] for i in range(3)]
    f = one / (one + z)
    return [[(one if i == j else zero) + K[i][j] + K2[i][j] * f for j in range(3)] for i in range(3)]


def _frame_generic(k, one, zero):
    k0 = k[0]
    R = _rotation_to([k[1] / k0, k[2] / k0, k[3] / k0], one, zero)
    e1 = [zero, R[0][0], R[1][0], R[2][0]]
    e2 = [zero, R[0][1], R[1][1], R[2][1]]
    n = [one / k0, -k[1] / (k0 * k0), -k[2] / (k0 * k0), -k[3] / (k0 * k0)]
    return list(k), e1, e2, n


def _check_k_float(k) -> np.ndarray:
    if hasattr(k, "k"):
        k = k.k
    k = np.asarray([float(x) for x in k], dtype=float)
    if k.shape != (4,):
        raise DomainError("momentum needs 4 components")
    if not k[0] > 0:
        raise DomainError("k0 must be positive")
    if abs(k @ G @ k) > 1e-12 * k[0] ** 2:
        raise DomainError(f"{k} is not light-like")
    return k


def frame(k) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Adapted frame ``(k, e1, e2, n)`` as float arrays."""
    k = _check_k_float(k)
    kk, e1, e2, n = _frame_generic(list(k), 1.0, 0.0)
    return tuple(np.asarray(v, dtype=float) for v in (kk, e1, e2, n))


def exact_frame(k) -> tuple[list, list, list, list]:
    """Adapted frame with Fraction entries (needs a rational light-like ``k``)."""
    if hasattr(k, "k"):
        k = k.k
    k = [as_fraction(x) for x in k]
    if k[0] <= 0 or k[0] ** 2 - k[1] ** 2 - k[2] ** 2 - k[3] ** 2:
        raise DomainError(f"{k} is not a future light-like vector")
    return _frame_generic(k, Fraction(1), Fraction(0))


def _point(y, frame_vecs, one):
    kk, e1, e2, n = frame_vecs
    c = (one + y[0] * y[0] + y[1] * y[1]) / 2
    return [n[m] / 2 + y[0] * e1[m] + y[1] * e2[m] + c * kk[m] for m in range(4)]


def e2_to_little(g: E2Element, k=(1, 0, 0, 1)) -> np.ndarray:
    """Lorentz matrix fixing ``k`` that induces the motion ``g``."""
    fr = frame(k)
    X = np.column_stack([_point(y, fr, 1.0) for y in _REF_POINTS])
    Xp = np.column_stack([_point(g.apply(y), fr, 1.0) for y in _REF_POINTS])
    return Xp @ np.linalg.inv(X)


def e2_to_little_exact(cos, sin, alpha, beta, k=(1, 0, 0, 1)) -> list[list[Fraction]]:
    """Exact version for a rational rotation ``(cos, sin)`` with ``cos^2 + sin^2 = 1``."""
    c, s, a, b = (as_fraction(x) for x in (cos, sin, alpha, beta))
    if c * c + s * s != 1:
        raise DomainError("(cos, sin) is not on the unit circle")
    fr = exact_frame(k)
    one = Fraction(1)
    pts = [tuple(map(Fraction, y)) for y in _REF_POINTS]
    moved = [(c * y[0] - s * y[1] + a, s * y[0] + c * y[1] + b) for y in pts]
    X = [list(r) for r in zip(*[_point(y, fr, one) for y in pts])]
    Xp = [list(r) for r in zip(*[_point(y, fr, one) for y in moved])]
    return exact_matmul(Xp, exact_inverse(X))


def lorentz_residual(L) -> float:
    L = np.asarray(L, dtype=float)
    return float(np.max(np.abs(L.T @ G @ L - G)))


def little_to_e2(L, k=(1, 0, 0, 1), tol: float = 1e-8) -> E2Element:
    """Euclidean motion induced on the plane ``k.x = 1`` modulo ``k``."""
    L = np.asarray(L, dtype=float)
    kk, e1, e2, n = frame(k)
    scale = max(1.0, float(np.max(np.abs(L))))
    if np.max(np.abs(L @ kk - kk)) > tol * scale * kk[0]:
        raise DomainError("matrix does not fix k")
    o = L @ _point((0.0, 0.0), (kk, e1, e2, n), 1.0)
    Le1 = L @ e1
    # e_i . x(y) = -y_i, and e_i . (L e1) = -R_i1
    alpha = -float(e1 @ G @ o)
    beta = -float(e2 @ G @ o)
    phi = math.atan2(-float(e2 @ G @ Le1), -float(e1 @ G @ Le1))
    return E2Element(phi, alpha, beta)


def random_e2(rng: np.random.Generator, scale: float = 1.0) -> E2Element:
    phi = float(rng.uniform(-math.pi, math.pi))
    alpha, beta = (float(x) for x in rng.normal(0.0, scale, size=2))
    return E2Element(phi, alpha, beta)


def random_little(k=(1, 0, 0, 1), count: int = 1, seed: int = 0) -> list[tuple[E2Element, np.ndarray]]:
    """``count`` seeded random group elements with their matrices."""
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        g = random_e2(rng)
        out.append((g, e2_to_little(g, k)))
    return out


# --------------------------------------------------------------------------
# factor space and subspaces
# --------------------------------------------------------------------------


def spiral_basis_matrix(L, k=(1, 0, 0, 1), tol: float = 1e-8) -> np.ndarray:
    """Action on ``M_perp / M_par`` in the basis ``e(+-1) = (e1 +- i e2) / sqrt 2``."""
    little_to_e2(L, k, tol)  # validates that L fixes k
    L = np.asarray(L, dtype=float)
    _, e1, e2, _ = frame(k)
    E = (e1, e2)
    R = np.array([[-(E[i] @ G @ L @ E[j]) for j in range(2)] for i in range(2)])
    U = np.array([[1, 1], [1j, -1j]]) / math.sqrt(2)
    return np.linalg.solve(U, R @ U)


@dataclass(frozen=True)
class SubspaceSpec:
    tag: str
    basis: tuple

    def __post_init__(self):
        if self.tag not in ("Mpar", "Mperp", "Mplus1", "Mminus1", "Custom"):
            raise ValueError(f"unknown subspace tag {self.tag!r}")
        B = self.matrix()
        if np.linalg.matrix_rank(B, tol=1e-10 * max(1.0, np.abs(B).max())) != B.shape[1]:
            raise ValueError("basis vectors are linearly dependent")

    def matrix(self) -> np.ndarray:
        return np.column_stack([np.asarray(v, dtype=complex) for v in self.basis])


def standard_subspace(tag: str, k=(1, 0, 0, 1)) -> SubspaceSpec:
    kk, e1, e2, _ = frame(k)
    ep = (e1 + 1j * e2) / math.sqrt(2)
    em = (e1 - 1j * e2) / math.sqrt(2)
    table = {
        "Mpar": (kk,),
        "Mperp": (kk, e1, e2),
        "Mplus1": (kk, ep),
        "Mminus1": (kk, em),
    }
    if tag not in table:
        raise ValueError(f"no standard subspace {tag!r}")
    return SubspaceSpec(tag, table[tag])


def span_residual(vectors: np.ndarray, basis: np.ndarray) -> float:
    """Relative least-squares residual of ``vectors`` (columns) against ``span(basis)``."""
    Q, _ = np.linalg.qr(basis)
    r = vectors - Q @ (Q.conj().T @ vectors)
    return float(np.linalg.norm(r) / max(np.linalg.norm(vectors), 1e-300))


def subspace_invariance_check(L, S: SubspaceSpec, tol: float = 1e-9) -> tuple[bool, float]:
    B = S.matrix()
    res = span_residual(np.asarray(L, dtype=complex) @ B, B)
    return res <= tol, res


def orbit_span(v, k=(1, 0, 0, 1), samples: int = 20, seed: int = 0, tol: float = 1e-8) -> int:
    """Numerical rank of ``{v} u {L_i v}`` over seeded random group elements."""
    if samples < 20:
        raise ValueError("use at least 20 samples")
    v = np.asarray(v, dtype=complex)
    cols = [v] + [L @ v for _, L in random_little(k, samples, seed)]
    M = np.column_stack(cols)
    s = np.linalg.svd(M, compute_uv=False)
    if s[0] == 0:
        return 0
    return int(np.sum(s > tol * s[0]))


def adapted_form(L, k=(1, 0, 0, 1)) -> np.ndarray:
    """``L`` expressed in the basis ``(k, e1, e2, n)``."""
    F = np.column_stack(frame(k))
    return np.linalg.solve(F, np.asarray(L, dtype=float) @ F)


def block_triangular_residual(L, k=(1, 0, 0, 1)) -> float:
    """Deviation from the pattern: first column ``(1,0,0,0)``, last row ``(0,0,0,1)``."""
    A = adapted_form(L, k)
    ref = np.array([1.0, 0.0, 0.0, 0.0])
    return float(max(np.max(np.abs(A[:, 0] - ref)), np.max(np.abs(A[3, :] - ref[::-1]))))
