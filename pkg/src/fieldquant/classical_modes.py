"""Mode-truncated classical fields: symplectic form, brackets, generators.

A field state is a list of positive-frequency amplitudes ``a(k)`` (scalar
field) or ``a_mu(k)`` (vector potential in Feynman gauge) on a finite set of
mass-shell momenta with positive quadrature weights.  Negative-frequency
amplitudes are implicit through ``a(-k) = conj(a(k))``.

Amplitudes are unit-normalized per mode: the bracket of a mode with its own
conjugate is ``{a, a*} = -i`` (scalar) and ``{a_mu, a_nu*} = +i g_mu_nu``
(vector).  Weights enter only in integrated quantities (symplectic form,
energy-momentum, scalar products).  All arithmetic is exact unless an
eigenvalue problem is involved.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from scipy import linalg as sla

from .ccr_core import SlotSpace
from .errors import ConfigurationError, DomainError, PreconditionError, UnsupportedObservable
from .scalars import CQ, I, ZERO, as_cq, as_fraction

__all__ = [
    "METRIC",
    "minkowski",
    "Mode",
    "ModeSet",
    "cubic_stencil",
    "FieldState",
    "CurrentModes",
    "LinearObservable",
    "amplitude",
    "bracket_tensor",
    "symplectic_eval",
    "poisson_bracket",
    "shift_flow",
    "time_flow",
    "generator",
    "energy_momentum",
    "radiated_field",
    "lorentz_residuals",
    "gauge_project",
    "frequency_split",
    "hilbert_inner",
    "inner_equivalence",
    "QuadraticLagrangian1D",
    "lagrangian_1d_symplectic",
    "oscillator_generator",
    "electrostatic_split",
]

METRIC = (1, -1, -1, -1)


def minkowski(a: Sequence, b: Sequence):
    """Bilinear ``a.b`` with metric diag(+1, -1, -1, -1); no conjugation."""
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]


@dataclass(frozen=True)
class Mode:
    k: tuple
    w: Fraction = Fraction(1)

    def __post_init__(self):
        if len(self.k) != 4:
            raise ValueError("momentum must have 4 components")
        object.__setattr__(self, "k", tuple(as_fraction(x) for x in self.k))
        object.__setattr__(self, "w", as_fraction(self.w))


@dataclass(frozen=True)
class ModeSet:
    """Discretized positive mass shell for one field kind."""

    field: str
    modes: tuple
    mass: Fraction = Fraction(0)

    def __post_init__(self):
        if self.field not in ("scalar", "em"):
            raise ValueError(f"unknown field kind {self.field!r}")
        modes = tuple(m if isinstance(m, Mode) else Mode(*m) for m in self.modes)
        object.__setattr__(self, "modes", modes)
        object.__setattr__(self, "mass", as_fraction(self.mass))
        if self.field == "em" and self.mass != 0:
            raise ValueError("the vector field is massless")
        if self.mass < 0:
            raise ValueError("mass must be non-negative")
        for m in modes:
            if m.k[0] <= 0:
                raise ValueError(f"mode {m.k} is not positive-frequency")
            if minkowski(m.k, m.k) != self.mass**2:
                raise ValueError(f"mode {m.k} is off the mass shell m={self.mass}")
            if m.w <= 0:
                raise ValueError("weights must be positive")

    @property
    def ncomp(self) -> int:
        return 1 if self.field == "scalar" else 4

    def __len__(self):
        return len(self.modes)

    def slot(self, mode: int, comp: int = 0) -> int:
        return mode * self.ncomp + comp

    def slot_space(self) -> SlotSpace:
        if self.field == "scalar":
            labels = tuple(f"k{i}" for i in range(len(self.modes)))
        else:
            labels = tuple(f"k{i}.{mu}" for i in range(len(self.modes)) for mu in range(4))
        return SlotSpace(labels)

    def reversed_mode(self, i: int) -> int:
        """Index of the mode with opposite spatial momentum (itself if absent)."""
        k = self.modes[i].k
        target = (k[0], -k[1], -k[2], -k[3])
        for j, m in enumerate(self.modes):
            if m.k == target:
                return j
        return i

    def partner_slots(self) -> list[int]:
        return [self.slot(self.reversed_mode(i), c) for i in range(len(self.modes)) for c in range(self.ncomp)]


def cubic_stencil(field: str = "em") -> ModeSet:
    """Six light-like momenta (1, +-e_i) with unit weights."""
    ks = []
    for axis in (1, 2, 3):
        for s in (1, -1):
            k = [1, 0, 0, 0]
            k[axis] = s
            ks.append(Mode(tuple(k)))
    return ModeSet(field, tuple(ks))


def _amp_tuple(values, ncomp: int) -> tuple:
    if ncomp == 1:
        bare_pair = isinstance(values, (list, tuple)) and len(values) == 2 and not isinstance(values[0], (list, tuple, CQ))
        if bare_pair or not isinstance(values, (list, tuple)):
            values = [values]
    vals = tuple(as_cq(v) for v in values)
    if len(vals) != ncomp:
        raise ValueError(f"expected {ncomp} components, got {len(vals)}")
    return vals


@dataclass(frozen=True)
class FieldState:
    """Positive-frequency amplitudes, one tuple of ``ncomp`` CQ per mode."""

    modes: ModeSet
    amplitudes: tuple

    def __post_init__(self):
        if len(self.amplitudes) != len(self.modes):
            raise ConfigurationError("one amplitude entry per mode is required")
        amps = tuple(_amp_tuple(a, self.modes.ncomp) for a in self.amplitudes)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def zero(cls, modes: ModeSet) -> "FieldState":
        return cls(modes, tuple((ZERO,) * modes.ncomp for _ in modes.modes))

    def __add__(self, other: "FieldState") -> "FieldState":
        _same_modes(self.modes, other.modes)
        return FieldState(self.modes, tuple(tuple(x + y for x, y in zip(a, b)) for a, b in zip(self.amplitudes, other.amplitudes)))

    def __sub__(self, other: "FieldState") -> "FieldState":
        return self + other.scale(-1)

    def scale(self, lam) -> "FieldState":
        lam = as_cq(lam)
        return FieldState(self.modes, tuple(tuple(lam * x for x in a) for a in self.amplitudes))

    __rmul__ = scale


@dataclass(frozen=True)
class CurrentModes:
    """Fourier components of a current on the positive-frequency modes."""

    modes: ModeSet
    currents: tuple

    def __post_init__(self):
        if self.modes.field != "em":
            raise ConfigurationError("currents couple to the vector field")
        if len(self.currents) != len(self.modes):
            raise ConfigurationError("one current entry per mode is required")
        object.__setattr__(self, "currents", tuple(_amp_tuple(j, 4) for j in self.currents))


def _same_modes(a: ModeSet, b: ModeSet):
    if a != b:
        raise ConfigurationError("states live on different mode sets")


# --------------------------------------------------------------------------
# linear observables and Poisson brackets
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class LinearObservable:
    """``sum coef * a_comp(k_mode)`` or ``coef * conj(a_comp(k_mode))``.

    Keys are ``(mode, comp, conj)`` triples.
    """

    terms: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, c in dict(self.terms).items():
            mode, comp, conj = key
            c = as_cq(c)
            if c:
                clean[(int(mode), int(comp), bool(conj))] = c
        object.__setattr__(self, "terms", clean)

    def __add__(self, other: "LinearObservable") -> "LinearObservable":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return LinearObservable(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, lam) -> "LinearObservable":
        lam = as_cq(lam)
        return LinearObservable({k: lam * c for k, c in self.terms.items()})

    __rmul__ = scale

    def __eq__(self, other):
        if isinstance(other, LinearObservable):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def conj(self) -> "LinearObservable":
        return LinearObservable({(m, c, not cj): v.conj() for (m, c, cj), v in self.terms.items()})

    def evaluate(self, state: FieldState) -> CQ:
        total = ZERO
        for (m, c, cj), v in self.terms.items():
            a = state.amplitudes[m][c]
            total = total + v * (a.conj() if cj else a)
        return total


def amplitude(mode: int, comp: int = 0, conj: bool = False, coef=1) -> LinearObservable:
    """The observable ``a_comp(k_mode)`` (or its conjugate)."""
    return LinearObservable({(mode, comp, conj): coef})


def _base_tensor(field: str):
    # {a_i, a_j*} = i * B_ij for one unit-normalized mode
    if field == "scalar":
        return ((-1,),)
    return tuple(tuple(METRIC[i] if i == j else 0 for j in range(4)) for i in range(4))


def _basis_bracket(x, y, modes: ModeSet, weighted: bool) -> CQ:
    (m1, c1, cj1), (m2, c2, cj2) = x, y
    if m1 != m2 or cj1 == cj2:
        return ZERO
    base = _base_tensor(modes.field)
    if not cj1:
        val = I * base[c1][c2]
    else:
        val = -I * base[c2][c1]
    if weighted:
        val = val / modes.modes[m1].w
    return val


def poisson_bracket(f, g, modes: ModeSet, weighted: bool = False) -> CQ:
    """Bracket of two linear observables; bilinear and antisymmetric.

    With ``weighted=True`` the bracket is the inverse of
    :func:`symplectic_eval` including quadrature weights (a factor ``1/w``
    per mode); the default is the unit-normalized per-mode bracket.
    """
    if not isinstance(f, LinearObservable) or not isinstance(g, LinearObservable):
        raise UnsupportedObservable("only linear observables have constant brackets")
    ncomp = modes.ncomp
    for key in list(f.terms) + list(g.terms):
        if not (0 <= key[0] < len(modes) and 0 <= key[1] < ncomp):
            raise ConfigurationError(f"observable term {key} outside the mode set")
    total = ZERO
    for x, cx in f.terms.items():
        for y, cy in g.terms.items():
            b = _basis_bracket(x, y, modes, weighted)
            if b:
                total = total + cx * cy * b
    return total


def bracket_tensor(modes: ModeSet, sign: int = +1) -> list[list[CQ]]:
    """Field-oscillator tensor ``B_ij(sign * k)`` read back from the brackets.

    ``{a_i(+1), a_j(-1)} = i B_ij(+1)`` and ``{a_i(-1), a_j(+1)} = -i B_ij(-1)``.
    """
    n = modes.ncomp
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if sign > 0:
                row.append(-I * poisson_bracket(amplitude(0, i), amplitude(0, j, True), modes))
            else:
                row.append(I * poisson_bracket(amplitude(0, i, True), amplitude(0, j), modes))
        out.append(row)
    return out


def frequency_split(obs: LinearObservable) -> tuple[LinearObservable, LinearObservable]:
    """Split into the ``a(k)`` part (+) and the ``a*(k)`` part (-)."""
    plus = {k: v for k, v in obs.terms.items() if not k[2]}
    minus = {k: v for k, v in obs.terms.items() if k[2]}
    return LinearObservable(plus), LinearObservable(minus)


# --------------------------------------------------------------------------
# symplectic form, flows, generators
# --------------------------------------------------------------------------


def _real(x: CQ) -> Fraction:
    if x.im:
        raise ArithmeticError(f"expected a real value, got {x}")
    return x.re


def symplectic_eval(c: FieldState, d: FieldState) -> Fraction:
    """``omega(c, d)``; scalar ``sum w i(a*_c a_d - a*_d a_c)``, vector with ``-g``."""
    _same_modes(c.modes, d.modes)
    modes = c.modes
    total = ZERO
    for m, ac, ad in zip(modes.modes, c.amplitudes, d.amplitudes):
        if modes.field == "scalar":
            s = ac[0].conj() * ad[0] - ad[0].conj() * ac[0]
        else:
            s = ZERO
            for mu in range(4):
                s = s - METRIC[mu] * (ac[mu].conj() * ad[mu] - ad[mu].conj() * ac[mu])
        total = total + m.w * I * s
    return _real(total)


def shift_flow(c: FieldState, nu: int) -> FieldState:
    """Velocity of the Hamiltonian flow generated by ``P_nu``: ``-i k_nu a``."""
    amps = []
    for m, a in zip(c.modes.modes, c.amplitudes):
        f = -I * m.k[nu]
        amps.append(tuple(f * x for x in a))
    return FieldState(c.modes, tuple(amps))


def time_flow(c: FieldState) -> FieldState:
    return shift_flow(c, 0)


def generator(c: FieldState, dc: FieldState) -> Fraction:
    """Generator of a linear flow with velocity ``dc`` at ``c``: ``omega(c, dc)/2``."""
    return symplectic_eval(c, dc) / 2


def energy_momentum(c: FieldState) -> tuple:
    """``P_nu``; scalar ``sum w k_nu |a|^2``, vector ``-sum w k_nu a*.a`` (Minkowski)."""
    P = [Fraction(0)] * 4
    for m, a in zip(c.modes.modes, c.amplitudes):
        if c.modes.field == "scalar":
            q = a[0].abs2()
        else:
            q = -sum((METRIC[mu] * a[mu].abs2() for mu in range(4)), Fraction(0))
        for nu in range(4):
            P[nu] += m.w * m.k[nu] * q
    return tuple(P)


def lorentz_residuals(state_or_current) -> list[CQ]:
    """Per-mode ``k.a`` (or ``k.J``), Minkowski contraction."""
    if isinstance(state_or_current, CurrentModes):
        rows = state_or_current.currents
    else:
        rows = state_or_current.amplitudes
    return [minkowski(m.k, v) for m, v in zip(state_or_current.modes.modes, rows)]


def radiated_field(J: CurrentModes) -> tuple[FieldState, bool]:
    """Radiated field ``a_mu = i J_mu`` and whether the current is conserved."""
    amps = tuple(tuple(I * x for x in j) for j in J.currents)
    ok = all(not r for r in lorentz_residuals(J))
    return FieldState(J.modes, amps), ok


def gauge_project(c: FieldState) -> FieldState:
    """Canonical representative of ``a ~ a + i k lambda`` with no ``k`` component.

    The component along ``k`` is measured against ``n = (k0, -k)``, which
    satisfies ``k.n = 2 k0^2``; for Lorentz-conforming ``a`` the result is
    transverse.
    """
    if c.modes.field != "em":
        raise ConfigurationError("gauge projection applies to the vector field")
    out = []
    for m, a in zip(c.modes.modes, c.amplitudes):
        k = m.k
        if minkowski(k, a):
            raise PreconditionError(f"Lorentz condition violated on mode {k}")
        n = (k[0], -k[1], -k[2], -k[3])
        alpha = minkowski(n, a) / minkowski(n, k)
        out.append(tuple(a[mu] - alpha * k[mu] for mu in range(4)))
    return FieldState(c.modes, tuple(out))


# --------------------------------------------------------------------------
# positive-definite scalar products on the vector field
# --------------------------------------------------------------------------


def _check_pd(M, name="M") -> np.ndarray:
    M = np.array([[complex(x) for x in row] for row in M], dtype=complex)
    if M.shape != (4, 4):
        raise DomainError(f"{name} must be 4x4")
    if np.max(np.abs(M - M.conj().T)) > 1e-12:
        raise DomainError(f"{name} is not Hermitian")
    if np.linalg.eigvalsh(M).min() <= 1e-12:
        raise DomainError(f"{name} is not positive-definite")
    return M


def hilbert_inner(c: FieldState, d: FieldState, M) -> complex:
    """``sum_modes w M_nr conj(a_n^c) a_r^d`` for a positive-definite Hermitian ``M``."""
    _same_modes(c.modes, d.modes)
    if c.modes.field != "em":
        raise ConfigurationError("hilbert_inner is defined on the vector field")
    M = _check_pd(M)
    total = 0j
    for m, ac, ad in zip(c.modes.modes, c.amplitudes, d.amplitudes):
        x = np.array([complex(v) for v in ac])
        y = np.array([complex(v) for v in ad])
        total += float(m.w) * complex(x.conj() @ M @ y)
    return total


def inner_equivalence(M1, M2) -> float:
    """Largest ``eps`` with ``eps (z,z)_2 <= (z,z)_1`` and ``eps (z,z)_1 <= (z,z)_2``.

    The ratio ``(z,z)_1 / (z,z)_2`` ranges over the generalized eigenvalues
    of the pencil ``(M1, M2)``, so ``eps = min(lambda_min, 1/lambda_max)``.
    """
    A = _check_pd(M1, "M1")
    B = _check_pd(M2, "M2")
    lam = sla.eigh(A, B, eigvals_only=True)
    return float(min(lam.min(), 1.0 / lam.max()))


# --------------------------------------------------------------------------
# one-dimensional Lagrangians, oscillator, electrostatics
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticLagrangian1D:
    """``L = a/2 phidot^2 + b phi phidot - c/2 phi^2``."""

    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_fraction(getattr(self, name)))
        if self.a == 0:
            raise DomainError("a must be nonzero")

    def momentum(self, phi, phidot) -> Fraction:
        return self.a * phidot + self.b * phi


def lagrangian_1d_symplectic(L: QuadraticLagrangian1D, c: Sequence, d: Sequence) -> Fraction:
    """``omega(c, d) = p_c phi_d - p_d phi_c`` for states ``(phi, phidot)``."""
    phi_c, dphi_c = (as_fraction(x) for x in c)
    phi_d, dphi_d = (as_fraction(x) for x in d)
    return L.momentum(phi_c, dphi_c) * phi_d - L.momentum(phi_d, dphi_d) * phi_c


def oscillator_generator(m, phi, phidot) -> Fraction:
    """Time-shift generator of ``L = phidot^2/2 - m^2 phi^2/2`` from ``omega = dphidot ^ dphi``.

    The flow velocity at ``(phi, phidot)`` is ``(phidot, -m^2 phi)``.
    """
    m, phi, phidot = as_fraction(m), as_fraction(phi), as_fraction(phidot)
    L = QuadraticLagrangian1D(1, 0, m * m)
    return lagrangian_1d_symplectic(L, (phi, phidot), (phidot, -m * m * phi)) / 2


def electrostatic_split(q: Sequence, phi: Sequence) -> tuple[Fraction, Fraction, Fraction]:
    """``(E_full, E_charges, E_field) = (1/2, 1, -1/2) * sum q phi``."""
    if len(q) != len(phi):
        raise ValueError("charges and potentials differ in length")
    s = sum((as_fraction(a) * as_fraction(b) for a, b in zip(q, phi)), Fraction(0))
    return s / 2, s, -s / 2
