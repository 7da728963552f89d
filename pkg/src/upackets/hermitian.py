"""Hermitian spaces over a ramified quadratic extension, tracked through
discriminant classes in the two-element group K^x / Nm E^x.

A class is a single bit: the exponent of a fixed non-square unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .algebra import prime_power
from .tori import ElementalDecomposition

__all__ = [
    "FieldParams",
    "DiscClass",
    "HermitianSpace",
    "EmbeddingChoice",
    "disc_mul",
    "minus_one_class",
    "classify_space",
    "disc_V_s_kappa",
    "disc_of_embedding",
    "is_quasi_split_embedding",
    "embedding_choices",
]


@dataclass(frozen=True)
class FieldParams:
    q: int

    def __post_init__(self) -> None:
        p, _ = prime_power(self.q)
        if p == 2:
            raise ValueError("residue field size must be odd")

    @property
    def q_mod_4(self) -> int:
        return self.q % 4


@dataclass(frozen=True)
class DiscClass:
    bit: int

    def __post_init__(self) -> None:
        if self.bit not in (0, 1):
            raise ValueError("discriminant bit must be 0 or 1")

    def __mul__(self, other: "DiscClass") -> "DiscClass":
        return disc_mul(self, other)


def disc_mul(a: DiscClass, b: DiscClass) -> DiscClass:
    return DiscClass((a.bit + b.bit) % 2)


def minus_one_class(fp: FieldParams) -> DiscClass:
    """-1 is a norm exactly when q = 1 mod 4."""
    return DiscClass(((fp.q - 1) // 2) % 2)


@dataclass(frozen=True)
class HermitianSpace:
    n: int
    disc: DiscClass
    label: str
    quasi_split: bool

    @property
    def group_label(self) -> str:
        # Both odd-dimensional spaces of a given dimension share one unitary group.
        if self.n % 2:
            return f"U_{self.n}"
        return f"U_{self.n}" if self.quasi_split else f"U'_{self.n}"


def classify_space(n: int, d: DiscClass, fp: FieldParams) -> HermitianSpace:
    """Isometry class of the n-dimensional space with discriminant ``d``."""
    if n < 1:
        raise ValueError("dimension must be positive")
    m = n // 2
    if n % 2:
        hyp = "Hyp^%d+" % m if m else ""
        return HermitianSpace(n, d, f"{hyp}L({d.bit})", quasi_split=True)
    hyp_disc = (m * minus_one_class(fp).bit) % 2
    if d.bit == hyp_disc:
        return HermitianSpace(n, d, f"Hyp^{m}", quasi_split=True)
    label = "Ani" if m == 1 else f"Hyp^{m - 1}+Ani"
    return HermitianSpace(n, d, label, quasi_split=False)


def disc_V_s_kappa(r: int, v_parity: int, fp: FieldParams) -> DiscClass:
    if r < 1:
        raise ValueError("r must be positive")
    if v_parity not in (0, 1):
        raise ValueError("valuation parity must be 0 or 1")
    return DiscClass((v_parity + r * ((fp.q - 1) // 2)) % 2)


@dataclass(frozen=True)
class EmbeddingChoice:
    """Class data for the scalars defining the Hermitian form on each factor.

    ``parity`` has one valuation-parity bit per even-dimensional factor;
    ``u1_class`` is the unit-class bit of the one-dimensional factor, or None
    when there is no such factor.
    """

    parity: tuple[int, ...]
    u1_class: int | None = None

    def __post_init__(self) -> None:
        if any(b not in (0, 1) for b in self.parity):
            raise ValueError("parity bits must be 0 or 1")
        if self.u1_class not in (None, 0, 1):
            raise ValueError("u1_class must be 0, 1 or None")

    def bits(self) -> tuple[int, ...]:
        return self.parity + (() if self.u1_class is None else (self.u1_class,))

    def check(self, dec: ElementalDecomposition) -> None:
        if len(self.parity) != len(dec.even_factors):
            raise ValueError("parity length does not match the decomposition")
        if (self.u1_class is not None) != dec.has_u1:
            raise ValueError("u1_class must be given exactly when n is odd")


def is_quasi_split_embedding(choice: EmbeddingChoice, n: int) -> bool:
    if n % 2:
        return True
    return sum(choice.parity) % 2 == 0


def embedding_choices(dec: ElementalDecomposition) -> Iterator[EmbeddingChoice]:
    """All 2^j choices, ordered lexicographically by their bit vector."""
    k = len(dec.even_factors)
    for bits in product((0, 1), repeat=dec.j):
        yield EmbeddingChoice(tuple(bits[:k]), bits[k] if dec.has_u1 else None)


def disc_of_embedding(dec: ElementalDecomposition, choice: EmbeddingChoice, fp: FieldParams) -> DiscClass:
    """Discriminant of the orthogonal sum of the factor spaces. The
    one-dimensional factor contributes its unit class."""
    choice.check(dec)
    d = DiscClass(0)
    for f, nu in zip(dec.even_factors, choice.parity):
        d = d * disc_V_s_kappa(f.r, nu, fp)
    if choice.u1_class is not None:
        d = d * DiscClass(choice.u1_class)
    return d
