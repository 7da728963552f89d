"""Twisted character lattices of maximal tori in ramified unitary groups and
their decomposition into elemental factors."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import IntMatrix, fixed_sublattice
from .errors import DomainError
from .weyl_signed import SignedPermutation, is_elliptic

__all__ = [
    "GaloisLattice",
    "Factor",
    "ElementalDecomposition",
    "basis_labels",
    "build_twisted_lattice",
    "is_anisotropic",
    "elemental_decomposition",
    "neron_component_order",
    "tbar_orders",
]


def basis_labels(n: int) -> tuple[int, ...]:
    """Character labels in basis order: -m..-1, then 0 when n is odd, then 1..m."""
    m = n // 2
    middle = (0,) if n % 2 else ()
    return tuple(range(-m, 0)) + middle + tuple(range(1, m + 1))


def _check_rank(n: int, omega: SignedPermutation) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if omega.m != n // 2:
        raise ValueError(f"rank mismatch: n={n} needs rank {n // 2}, got {omega.m}")


@dataclass(frozen=True)
class GaloisLattice:
    n: int
    omega: SignedPermutation
    labels: tuple[int, ...]
    tau_action: IntMatrix
    frob_action: IntMatrix

    @property
    def rank(self) -> int:
        return self.n

    def position(self, label: int) -> int:
        return self.labels.index(label)


def build_twisted_lattice(n: int, omega: SignedPermutation) -> GaloisLattice:
    """Character lattice with tau acting by chi_i -> -chi_{-i} and Frobenius by
    the label permutation of ``omega``. Matrix columns are images of basis vectors."""
    _check_rank(n, omega)
    labels = basis_labels(n)
    pos = {lab: k for k, lab in enumerate(labels)}
    tau = [[0] * n for _ in range(n)]
    frob = [[0] * n for _ in range(n)]
    for lab in labels:
        tau[pos[-lab]][pos[lab]] = -1
        frob[pos[omega(lab) if lab else 0]][pos[lab]] = 1
    return GaloisLattice(
        n=n,
        omega=omega,
        labels=labels,
        tau_action=IntMatrix.from_rows(tau, cols=n),
        frob_action=IntMatrix.from_rows(frob, cols=n),
    )


def is_anisotropic(lat: GaloisLattice) -> bool:
    return fixed_sublattice([lat.tau_action, lat.frob_action]).cols == 0


@dataclass(frozen=True)
class Factor:
    """One elemental factor: s = 2r for a negative r-cycle, or s = 1 (r = 0) for U1."""

    s: int
    r: int
    cycle: tuple[int, ...]

    @property
    def is_u1(self) -> bool:
        return self.s == 1


@dataclass(frozen=True)
class ElementalDecomposition:
    n: int
    factors: tuple[Factor, ...]

    @property
    def has_u1(self) -> bool:
        return any(f.is_u1 for f in self.factors)

    @property
    def j(self) -> int:
        return len(self.factors)

    @property
    def even_factors(self) -> tuple[Factor, ...]:
        return tuple(f for f in self.factors if not f.is_u1)


def elemental_decomposition(n: int, omega: SignedPermutation) -> ElementalDecomposition:
    _check_rank(n, omega)
    if not is_elliptic(omega):
        raise DomainError("torus not anisotropic: omega has a positive cycle")
    factors = [Factor(2 * len(members), len(members), members) for members, _ in omega.signed_cycles()]
    factors.sort(key=lambda f: min(f.cycle))
    if n % 2:
        factors.append(Factor(1, 0, ()))
    return ElementalDecomposition(n, tuple(factors))


def neron_component_order(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return 2 if n % 2 else 1


def tbar_orders(dec: ElementalDecomposition, q: int) -> list[int]:
    """Order of the residue-field torus of each factor: q^r + 1, and 1 for U1."""
    return [1 if f.is_u1 else q**f.r + 1 for f in dec.factors]
