"""Tame Langlands parameters, the restricted root datum and alcove on the dual
side, stabilizers, regularity and depth-zero character data.

Coordinates: y = (y_1, ..., y_m) are the values of a tau-fixed real cocharacter
on chi_1, ..., chi_m. The coordinate on chi_{-i} is -y_i and, for odd n, the
coordinate on chi_0 is 0.

Frobenius compatibility: the torus part of the Frobenius image is taken to be
trivial, so conjugation by Frobenius sends y to omega.y and the relation
Fr t Fr^-1 = t^q becomes (q - omega) y in Z^m.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product
from math import lcm
from typing import Iterable, Sequence

from .algebra import IntMatrix, coinvariant_torsion, lattice_contains, smith_normal_form
from .errors import DomainError
from .tori import (
    ElementalDecomposition,
    GaloisLattice,
    basis_labels,
    build_twisted_lattice,
    elemental_decomposition,
)
from .weyl_signed import SignedPermutation, all_elements, identity, is_elliptic

__all__ = [
    "TameParameter",
    "AffineFunctional",
    "RestrictedRootDatum",
    "ValidationReport",
    "CharacterData",
    "restricted_root_datum",
    "in_closed_alcove",
    "in_open_alcove",
    "projected_lattice",
    "w_stabilizer",
    "frobenius_compatible",
    "validate",
    "construct_torus",
    "compute_A_phi",
    "character_data",
    "general_position_group",
    "is_general_position",
    "compatible_alcove_points",
    "regular_points",
]

Vector = tuple[Fraction, ...]


@dataclass(frozen=True)
class TameParameter:
    n: int
    omega: SignedPermutation
    y: Vector
    u1: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.n, int) or self.n < 2:
            raise ValueError("n must be an integer >= 2")
        if self.omega.m != self.n // 2:
            raise ValueError(f"omega has rank {self.omega.m}, expected {self.n // 2}")
        if len(self.y) != self.n // 2:
            raise ValueError(f"y has length {len(self.y)}, expected {self.n // 2}")
        if any(isinstance(v, float) for v in self.y):
            raise TypeError("floating point coordinates are not accepted")
        try:
            ys = tuple(Fraction(v) for v in self.y)
        except (TypeError, ValueError):
            raise ValueError("y entries must be rationals") from None
        object.__setattr__(self, "y", ys)
        if self.u1 not in (0, 1):
            raise ValueError("u1 must be 0 or 1")
        if self.u1 and self.n % 2 == 0:
            raise ValueError("u1 is only meaningful for odd n")

    @property
    def m(self) -> int:
        return self.n // 2


@dataclass(frozen=True)
class AffineFunctional:
    """y -> const + coeffs . y"""

    coeffs: Vector
    const: Fraction = Fraction(0)

    def __call__(self, y: Sequence[Fraction]) -> Fraction:
        return self.const + sum((c * v for c, v in zip(self.coeffs, y)), Fraction(0))


@dataclass(frozen=True)
class RestrictedRootDatum:
    n: int
    roots: tuple[Vector, ...]
    simples: tuple[Vector, ...]
    highest: Vector
    walls: tuple[AffineFunctional, ...]

    @property
    def m(self) -> int:
        return self.n // 2


def _restrict(label: int, m: int) -> list[Fraction]:
    """The functional x_label restricted to the tau-fixed subspace."""
    v = [Fraction(0)] * m
    if label:
        v[abs(label) - 1] = Fraction(1 if label > 0 else -1)
    return v


def _height(root: Vector, simples: Sequence[Vector]) -> Fraction:
    # Simple roots are linearly independent; solve by exact elimination.
    m = len(root)
    rows = [[s[i] for s in simples] + [root[i]] for i in range(m)]
    k = len(simples)
    r = 0
    for col in range(k):
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        pv = rows[r][col]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return sum((rows[i][k] for i in range(r)), Fraction(0))


@lru_cache(maxsize=None)
def restricted_root_datum(n: int) -> RestrictedRootDatum:
    """Fold the roots e_a - e_b of GL_n by tau(e_a - e_b) = e_{-b} - e_{-a} and
    sum over each class. A root is positive when a > b in the basis order."""
    if not isinstance(n, int) or n < 2:
        raise ValueError("n must be an integer >= 2")
    m = n // 2
    labels = basis_labels(n)
    classes: dict[frozenset, tuple[int, int]] = {}
    for a in labels:
        for b in labels:
            if a != b:
                classes.setdefault(frozenset({(a, b), (-b, -a)}), (a, b))
    restricted: dict[Vector, bool] = {}
    for cls, (a, b) in classes.items():
        total = [Fraction(0)] * m
        for c, d in cls:
            total = [t + x - z for t, x, z in zip(total, _restrict(c, m), _restrict(d, m))]
        # a > b and -b > -a agree, so positivity is well defined on classes.
        restricted[tuple(total)] = a > b
    roots = tuple(sorted(restricted))
    positive = [r for r, pos in restricted.items() if pos]
    pos_set = set(positive)
    simples = []
    for r in positive:
        decomposable = any(
            tuple(x - y for x, y in zip(r, s)) in pos_set for s in positive if s != r
        )
        if not decomposable:
            simples.append(r)
    simples.sort(key=lambda r: [abs(x) for x in reversed(r)])
    highest = max(positive, key=lambda r: (_height(r, simples), r))
    walls = tuple(AffineFunctional(s) for s in simples) + (
        AffineFunctional(tuple(-x for x in highest), Fraction(1)),
    )
    return RestrictedRootDatum(n, roots, tuple(simples), highest, walls)


def in_closed_alcove(datum: RestrictedRootDatum, y: Sequence[Fraction]) -> bool:
    return all(w(y) >= 0 for w in datum.walls)


def in_open_alcove(datum: RestrictedRootDatum, y: Sequence[Fraction]) -> bool:
    return all(w(y) > 0 for w in datum.walls)


@lru_cache(maxsize=None)
def projected_lattice(n: int) -> tuple[tuple[int, ...], ...]:
    """Generators of the projection of Z^n onto the tau-fixed subspace, in
    y-coordinates scaled by the returned common denominator (first entry)."""
    lat = build_twisted_lattice(n, identity(n // 2))
    m = n // 2
    gens = []
    for k in range(n):
        e = [0] * n
        e[k] = 1
        te = lat.tau_action.apply(e)
        # (e + tau e)/2 restricted to the coordinates chi_1..chi_m
        half = [Fraction(a + b, 2) for a, b in zip(e, te)]
        gens.append(tuple(half[lat.position(i)] for i in range(1, m + 1)))
    den = lcm(*(v.denominator for g in gens for v in g)) if gens else 1
    return (den,) + tuple(tuple(int(v * den) for v in g) for g in gens)


def _in_projected_lattice(n: int, vec: Sequence[Fraction]) -> bool:
    den, *gens = projected_lattice(n)
    scaled = [v * den for v in vec]
    if any(v.denominator != 1 for v in scaled):
        return False
    return lattice_contains(gens, [int(v) for v in scaled])


def w_stabilizer(P: TameParameter) -> list[SignedPermutation]:
    """All w in the finite Weyl group with w.y - y in the projected lattice."""
    datum = restricted_root_datum(P.n)
    if not in_closed_alcove(datum, P.y):
        raise ValueError("y lies outside the closed alcove")
    out = []
    for w in all_elements(P.m):
        wy = w.act_on_vector(P.y)
        if _in_projected_lattice(P.n, [a - b for a, b in zip(wy, P.y)]):
            out.append(w)
    return out


def frobenius_compatible(P: TameParameter, q: int) -> bool:
    wy = P.omega.act_on_vector(P.y)
    return all((q * a - b).denominator == 1 for a, b in zip(P.y, wy))


@dataclass(frozen=True)
class ValidationReport:
    tame: bool
    discrete: bool
    regular: bool
    in_alcove: bool
    frobenius_compatible: bool | None = None
    diagnostics: tuple[str, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return self.tame and self.discrete and self.regular and self.frobenius_compatible is not False


def validate(P: TameParameter, q: int | None = None) -> ValidationReport:
    """Check discreteness, regularity and, when q is given, compatibility of y
    with Frobenius."""
    diags = []
    discrete = is_elliptic(P.omega)
    if not discrete:
        diags.append(f"not discrete: omega {P.omega} has a positive cycle")
    datum = restricted_root_datum(P.n)
    in_alcove = in_closed_alcove(datum, P.y)
    if not in_alcove:
        bad = [i for i, w in enumerate(datum.walls) if w(P.y) < 0]
        diags.append(f"y violates alcove inequalities {bad}")
        regular = False
    else:
        stab = w_stabilizer(P)
        regular = len(stab) == 1
        if not regular:
            diags.append(f"not regular: stabilizer of y has order {len(stab)}")
    compat = None
    if q is not None:
        compat = frobenius_compatible(P, q)
        if not compat:
            diags.append(f"y incompatible with q={q}: (q - omega) y is not integral")
    return ValidationReport(True, discrete, regular, in_alcove, compat, tuple(diags))


def construct_torus(P: TameParameter) -> GaloisLattice:
    if not is_elliptic(P.omega):
        raise DomainError("parameter is not discrete")
    return build_twisted_lattice(P.n, P.omega)


def compute_A_phi(P: TameParameter) -> list[int]:
    lat = construct_torus(P)
    return coinvariant_torsion([lat.tau_action, lat.frob_action])


@dataclass(frozen=True)
class CharacterData:
    exponents: tuple[int, ...]
    moduli: tuple[int, ...]
    u1_bit: int | None = None


def character_data(P: TameParameter, q: int) -> CharacterData:
    """Depth-zero exponents, one per even factor.

    On a negative r-cycle with minimum index a, compatibility with Frobenius
    forces y on the whole cycle to be determined by y_a, and (q^r + 1) y_a is
    an integer. The exponent is e = (q^r + 1) y_a mod (q^r + 1), which
    identifies the finite group of admissible y on the cycle with Z/(q^r + 1).
    """
    dec = elemental_decomposition(P.n, P.omega)
    if not frobenius_compatible(P, q):
        raise ValueError("y incompatible with q")
    exps, mods = [], []
    for f in dec.even_factors:
        d = q**f.r + 1
        val = d * P.y[f.cycle[0] - 1]
        if val.denominator != 1:
            raise ValueError("y incompatible with q")
        exps.append(int(val) % d)
        mods.append(d)
    return CharacterData(tuple(exps), tuple(mods), P.u1 if P.n % 2 else None)


def _twist_fixes(e: int, d: int, r: int, q: int) -> bool:
    return any((pow(q, t, d) * e - e) % d == 0 for t in range(1, 2 * r))


def is_general_position(cd: CharacterData, dec: ElementalDecomposition, q: int) -> bool:
    """No nontrivial element of the residual Weyl group fixes the exponents.

    The group acts by q-power twists on each factor (2r of them, inversion
    included) and by swapping factors of equal size. A fixed point exists iff
    some factor is fixed by a nontrivial twist or two equal-size factors lie
    in the same twist orbit.
    """
    factors = dec.even_factors
    if len(cd.exponents) != len(factors):
        raise ValueError("character data does not match the decomposition")
    for f, e in zip(factors, cd.exponents):
        if _twist_fixes(e, q**f.r + 1, f.r, q):
            return False
    for (f1, e1), (f2, e2) in combinations(zip(factors, cd.exponents), 2):
        if f1.r == f2.r:
            d = q**f1.r + 1
            if any((pow(q, t, d) * e1 - e2) % d == 0 for t in range(2 * f1.r)):
                return False
    return True


def general_position_group(dec: ElementalDecomposition, q: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Explicit list of group elements (perm, twists): factor i is sent to
    slot perm[i] after multiplying by q^twists[i]. Identity first."""
    factors = dec.even_factors
    k = len(factors)
    out = []
    for perm in permutations(range(k)):
        if any(factors[i].r != factors[perm[i]].r for i in range(k)):
            continue
        for tw in product(*(range(2 * f.r) for f in factors)):
            out.append((perm, tw))
    out.sort(key=lambda g: (g[0] != tuple(range(k)), any(g[1]), g))
    return out


def compatible_alcove_points(n: int, omega: SignedPermutation, q: int) -> list[Vector]:
    """All y in the closed alcove with (q - omega) y integral, sorted."""
    m = n // 2
    A = IntMatrix.from_rows(
        [[q * int(i == j) - omega.y_matrix[i][j] for j in range(m)] for i in range(m)], cols=m
    )
    snf = smith_normal_form(A)
    diag = snf.diagonal
    if any(d == 0 for d in diag):
        raise DomainError("q - omega is singular")
    datum = restricted_root_datum(n)
    seen = set()
    for ks in product(*(range(d) for d in diag)):
        z = [Fraction(k, d) for k, d in zip(ks, diag)]
        y = tuple((sum((snf.V[i, j] * z[j] for j in range(m)), Fraction(0))) % 1 for i in range(m))
        if in_closed_alcove(datum, y):
            seen.add(y)
    return sorted(seen)


def regular_points(n: int, omega: SignedPermutation, q: int) -> Iterable[Vector]:
    for y in compatible_alcove_points(n, omega, q):
        if validate(TameParameter(n, omega, y)).regular:
            yield y
