"""Lattice model of the building: the vertex fixed by an anisotropic torus and
the reductive quotient of its stabilizer.

Each factor of the decomposition carries a lattice chain pi^b O. Under the
factor's Hermitian form, the dual of pi^b O is pi^(c - v - b) O, where v is the
canonical valuation representative of the defining scalar and c is the
valuation of the scalar the form divides by (1 for even factors, 2 for the
one-dimensional factor). A lattice is admissible for the vertex when
Lambda contains its dual and the dual contains pi*Lambda; this forces
gap = c - v - 2b into {0, 1}. Gap 0 (self-dual) contributes to the orthogonal
part of the reduction and gap 1 to the symplectic part.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from itertools import product
from pathlib import Path

from .hermitian import EmbeddingChoice, is_quasi_split_embedding
from .tori import ElementalDecomposition, Factor

__all__ = [
    "VertexLattice",
    "ReductionType",
    "FixtureError",
    "factor_valuations",
    "fixed_vertex",
    "brute_force_fixed_lattices",
    "reduction_type",
    "center_in_identity",
    "load_fixture",
    "appendix_table",
]

# Canonical even valuation of the one-dimensional factor's scalar; with it the
# form value is a unit.
U1_VALUATION = 2


@dataclass(frozen=True)
class VertexLattice:
    b: tuple[int, ...]
    gaps: tuple[int, ...]


@dataclass(frozen=True, order=True)
class ReductionType:
    l: int  # noqa: E741
    m_red: int
    orth_split: bool
    stab_component_order: int = 2

    @property
    def key(self) -> tuple[int, int, bool]:
        return (self.l, self.m_red, self.orth_split)

    @property
    def label(self) -> str:
        parts = []
        if self.l:
            parts.append(f"Sp_{self.l}")
        if self.m_red:
            prime = "" if (self.orth_split or self.m_red % 2) else "'"
            parts.append(f"O{prime}_{self.m_red}")
        return " x ".join(parts) or "trivial"


def factor_valuations(dec: ElementalDecomposition, choice: EmbeddingChoice) -> list[tuple[Factor, int, int]]:
    """(factor, c, v) per factor in decomposition order."""
    choice.check(dec)
    out = []
    parity = iter(choice.parity)
    for f in dec.factors:
        if f.is_u1:
            out.append((f, 2, U1_VALUATION))
        else:
            out.append((f, 1, next(parity)))
    return out


def fixed_vertex(dec: ElementalDecomposition, choice: EmbeddingChoice) -> VertexLattice:
    bs, gaps = [], []
    for _, c, v in factor_valuations(dec, choice):
        b = (c - v) // 2
        bs.append(b)
        gaps.append(c - v - 2 * b)
    return VertexLattice(tuple(bs), tuple(gaps))


def _dual_exponent(b: int, c: int, v: int, search: int) -> int:
    # smallest t with val(pairing of pi^b O against pi^t O) = b + t + v - c >= 0
    for t in range(-search, search + 1):
        if b + t + v - c >= 0:
            return t
    raise RuntimeError("dual exponent outside search range")


def brute_force_fixed_lattices(
    dec: ElementalDecomposition, choice: EmbeddingChoice, window: int
) -> list[VertexLattice]:
    """Every b in [-window, window]^j whose lattice satisfies
    Lambda >= dual >= pi*Lambda factor by factor. Test oracle."""
    vals = factor_valuations(dec, choice)
    search = 4 * window + 8
    span = range(-window, window + 1)
    # the lattice conditions are factorwise, so dual exponents are tabulated once per factor
    duals = [{b: _dual_exponent(b, c, v, search) for b in span} for _, c, v in vals]
    found = []
    for b in product(span, repeat=len(vals)):
        ts = [table[bi] for table, bi in zip(duals, b)]
        if all(bi <= t <= bi + 1 for bi, t in zip(b, ts)):
            found.append(VertexLattice(tuple(b), tuple(t - bi for bi, t in zip(b, ts))))
    return found


def reduction_type(dec: ElementalDecomposition, choice: EmbeddingChoice, n: int) -> ReductionType:
    if dec.n != n:
        raise ValueError("decomposition dimension does not match n")
    vertex = fixed_vertex(dec, choice)
    l = sum(f.s for f, gap in zip(dec.factors, vertex.gaps) if gap == 1)  # noqa: E741
    m_red = n - l
    return ReductionType(
        l=l,
        m_red=m_red,
        orth_split=is_quasi_split_embedding(choice, n),
        stab_component_order=1 if m_red == 0 else 2,
    )


def center_in_identity(n: int) -> bool:
    if n < 1:
        raise ValueError("n must be positive")
    return n % 2 == 0


class FixtureError(ValueError):
    pass


@lru_cache(maxsize=1)
def _default_fixture_text() -> str:
    return resources.files("upackets").joinpath("data/appendix_a.txt").read_text(encoding="utf-8")


def load_fixture(source: str | Path | None = None) -> dict[tuple[int, bool], list[ReductionType]]:
    """Parse a reduction table. ``source`` is a file or a directory holding
    ``appendix_a.txt``; None reads the packaged copy."""
    if source is None:
        text, name = _default_fixture_text(), "appendix_a.txt"
    else:
        path = Path(source)
        if path.is_dir():
            path = path / "appendix_a.txt"
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise FixtureError(f"cannot read fixture {path}: {exc}") from exc
        name = str(path)
    table: dict[tuple[int, bool], list[ReductionType]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        where = f"{name}:{lineno}"
        if len(fields) != 5:
            raise FixtureError(f"{where}: expected 5 fields, got {len(fields)}")
        n_s, form, l_s, m_s, orth = fields
        try:
            n, l, m_red = int(n_s), int(l_s), int(m_s)  # noqa: E741
        except ValueError:
            raise FixtureError(f"{where}: non-integer dimension") from None
        if form not in ("qs", "nqs"):
            raise FixtureError(f"{where}: form must be qs or nqs, got {form!r}")
        if orth not in ("split", "nonsplit"):
            raise FixtureError(f"{where}: orth must be split or nonsplit, got {orth!r}")
        if l < 0 or m_red < 0 or l % 2 or l + m_red != n:
            raise FixtureError(f"{where}: need even l >= 0 and l + m_red = n")
        if n % 2 and form == "nqs":
            raise FixtureError(f"{where}: odd n has no separate non-quasi-split table")
        table.setdefault((n, form == "qs"), []).append(
            ReductionType(l, m_red, orth == "split", 1 if m_red == 0 else 2)
        )
    if not table:
        raise FixtureError(f"{name}: no records")
    return table


def appendix_table(n: int, quasi_split: bool, fixtures: str | Path | None = None) -> list[ReductionType]:
    """Tabulated vertex reductions for the given form. Odd n has a single
    group up to isomorphism, so both flags return the quasi-split table."""
    if n < 2:
        raise ValueError("tables start at n = 2")
    table = load_fixture(fixtures)
    key = (n, True if n % 2 else quasi_split)
    if key not in table:
        raise ValueError(f"no tabulated reductions for n={n}")
    return list(table[key])
