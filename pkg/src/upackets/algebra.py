"""Exact integer linear algebra: Smith form, fixed and coinvariant lattices,
integer partitions and orders of finite classical groups.

Everything here works over Python ints; nothing ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

__all__ = [
    "IntMatrix",
    "SmithForm",
    "GroupOrder",
    "smith_normal_form",
    "hermite_basis",
    "fixed_sublattice",
    "coinvariant_torsion",
    "lattice_contains",
    "rank",
    "partitions",
    "partition_count",
    "prime_power",
    "classical_group_order",
]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix stored row by row."""

    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entry count does not match declared shape")
        for row in self.entries:
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"matrix entries must be int, got {type(x).__name__}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        data = tuple(tuple(r) for r in rows)
        ncols = cols if cols is not None else (len(data[0]) if data else 0)
        return cls(len(data), ncols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> "IntMatrix":
        return cls.from_rows([[c[i] for c in columns] for i in range(rows)], cols=len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], cols=cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_rows([self.column(j) for j in range(self.cols)], cols=self.rows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        return IntMatrix.from_rows(
            [[sum(a * b for a, b in zip(row, c)) for c in cols] for row in self.entries],
            cols=other.cols,
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix.from_rows(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], cols=self.cols
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._same_shape(other)
        return IntMatrix.from_rows(
            [[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], cols=self.cols
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix.from_rows([[-a for a in r] for r in self.entries], cols=self.cols)

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.cols:
            raise ValueError("vector length does not match matrix")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square():
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return 1
        a = [list(r) for r in self.entries]
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def _same_shape(self, other: "IntMatrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")


@dataclass(frozen=True)
class SmithForm:
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.D[i, i] for i in range(min(self.D.rows, self.D.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


@dataclass(frozen=True)
class GroupOrder:
    total: int
    p_prime_part: int
    p_part: int


def _identity_rows(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A: IntMatrix) -> SmithForm:
    """Return unimodular U, V and diagonal D with U @ A @ V == D.

    The diagonal is nonnegative and each entry divides the next.
    """
    r, c = A.shape
    d = [list(row) for row in A.entries]
    u = _identity_rows(r)
    v = _identity_rows(c)

    def swap_rows(i: int, j: int) -> None:
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst: int, src: int, k: int) -> None:
        # row_dst += k * row_src
        d[dst] = [a + k * b for a, b in zip(d[dst], d[src])]
        u[dst] = [a + k * b for a, b in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, k: int) -> None:
        for row in d:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(r, c)):
        while True:
            pivot = None
            for i in range(t, r):
                for j in range(t, c):
                    if d[i][j] != 0 and (pivot is None or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            p = d[t][t]
            dirty = False
            for i in range(t + 1, r):
                if d[i][t]:
                    add_row(i, t, -(d[i][t] // p))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, c):
                if d[t][j]:
                    add_col(j, t, -(d[t][j] // p))
                    dirty = dirty or d[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, r) for j in range(t + 1, c) if d[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
    return SmithForm(
        U=IntMatrix.from_rows(u, cols=r),
        D=IntMatrix.from_rows(d, cols=c),
        V=IntMatrix.from_rows(v, cols=c),
    )


def rank(A: IntMatrix) -> int:
    return smith_normal_form(A).rank


def hermite_basis(vectors: Iterable[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Canonical (row Hermite normal form) basis of the lattice spanned by ``vectors``.

    Two families span the same lattice iff their Hermite bases agree.
    """
    rows = [list(v) for v in vectors if any(v)]
    for v in rows:
        if len(v) != dim:
            raise ValueError("vector length does not match dimension")
    basis: list[list[int]] = []
    col = 0
    while rows and col < dim:
        live = [v for v in rows if v[col] != 0]
        rest = [v for v in rows if v[col] == 0]
        if not live:
            col += 1
            continue
        # Euclid on the column until a single row holds the gcd.
        while len(live) > 1:
            live.sort(key=lambda v: abs(v[col]))
            head = live[0]
            nxt = []
            for v in live[1:]:
                k = v[col] // head[col]
                w = [a - k * b for a, b in zip(v, head)]
                (nxt if w[col] else rest).append(w)
            live = [head] + nxt
        head = live[0]
        if head[col] < 0:
            head = [-a for a in head]
        basis.append(head)
        rows = [v for v in rest if any(v)]
        col += 1
    # Reduce entries above each pivot.
    pivots = [next(j for j, a in enumerate(b) if a) for b in basis]
    for i, pc in enumerate(pivots):
        for h in range(i):
            k = basis[h][pc] // basis[i][pc]
            if k:
                basis[h] = [a - k * b for a, b in zip(basis[h], basis[i])]
    return [tuple(b) for b in basis]


def _check_square_family(mats: Sequence[IntMatrix]) -> int:
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].rows
    for M in mats:
        if M.shape != (n, n):
            raise ValueError(f"dimension mismatch: expected {n}x{n}, got {M.rows}x{M.cols}")
    return n


def fixed_sublattice(mats: Sequence[IntMatrix]) -> IntMatrix:
    """Basis (as columns) of the vectors fixed by every matrix in ``mats``.

    The result is saturated and returned in canonical Hermite form.
    """
    n = _check_square_family(mats)
    identity = IntMatrix.identity(n)
    stacked = [row for M in mats for row in (M - identity).entries]
    snf = smith_normal_form(IntMatrix.from_rows(stacked, cols=n))
    kernel = [snf.V.column(j) for j in range(snf.rank, n)]
    basis = hermite_basis(kernel, n)
    return IntMatrix.from_columns(basis, rows=n) if basis else IntMatrix.zeros(n, 0)


def coinvariant_torsion(mats: Sequence[IntMatrix]) -> list[int]:
    """Elementary divisors > 1 of Z^n modulo the span of all (M - I)v."""
    n = _check_square_family(mats)
    identity = IntMatrix.identity(n)
    blocks = [M - identity for M in mats]
    rows = [sum((list(B.entries[i]) for B in blocks), []) for i in range(n)]
    snf = smith_normal_form(IntMatrix.from_rows(rows, cols=n * len(mats)))
    return [x for x in snf.diagonal if x > 1]


def lattice_contains(generators: Sequence[Sequence[int]], vector: Sequence[int]) -> bool:
    """Whether ``vector`` lies in the Z-span of ``generators``."""
    dim = len(vector)
    if not any(vector):
        return True
    gens = [list(g) for g in generators]
    if not gens:
        return False
    A = IntMatrix.from_columns(gens, rows=dim)
    snf = smith_normal_form(A)
    # A x = v  <=>  D (V^-1 x) = U v
    w = snf.U.apply(vector)
    diag = snf.diagonal
    for i, wi in enumerate(w):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if wi != 0:
                return False
        elif wi % di:
            return False
    return True


def partitions(m: int) -> list[tuple[int, ...]]:
    """All partitions of ``m`` as weakly decreasing tuples, in lexicographically
    decreasing order. ``partitions(0) == [()]``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    out: list[tuple[int, ...]] = []

    def rec(remaining: int, cap: int, prefix: tuple[int, ...]) -> None:
        if remaining == 0:
            out.append(prefix)
            return
        for part in range(min(remaining, cap), 0, -1):
            rec(remaining - part, part, prefix + (part,))

    rec(m, m, ())
    return out


def partition_count(m: int) -> int:
    """Partition number via Euler's pentagonal recurrence (independent of ``partitions``)."""
    p = [1] + [0] * m
    for k in range(1, m + 1):
        total, j = 0, 1
        while True:
            g1 = j * (3 * j - 1) // 2
            if g1 > k:
                break
            sign = 1 if j % 2 else -1
            total += sign * p[k - g1]
            g2 = j * (3 * j + 1) // 2
            if g2 <= k:
                total += sign * p[k - g2]
            j += 1
        p[k] = total
    return p[m]


def prime_power(q: int) -> tuple[int, int]:
    """Return (p, f) with q == p**f, or raise ValueError."""
    if not isinstance(q, int) or isinstance(q, bool) or q < 2:
        raise ValueError(f"{q!r} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    f, rest = 0, q
    while rest % p == 0:
        rest //= p
        f += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, f


def _split_order(total: int, p: int) -> GroupOrder:
    p_part = 1
    rest = total
    while rest % p == 0:
        rest //= p
        p_part *= p
    return GroupOrder(total=total, p_prime_part=rest, p_part=p_part)


def classical_group_order(kind: str, dim: int, q: int, split: bool = True) -> GroupOrder:
    """Order of Sp, SO or O over the field with ``q`` elements (q odd).

    ``kind`` is one of ``"symplectic"``, ``"special_orthogonal"``, ``"orthogonal"``.
    ``split`` chooses between the plus and minus type in even orthogonal dimension
    and is ignored otherwise.
    """
    if kind not in ("symplectic", "special_orthogonal", "orthogonal"):
        raise ValueError(f"unknown group kind {kind!r}")
    if dim < 0:
        raise ValueError("dimension must be nonnegative")
    p, _ = prime_power(q)
    if p == 2:
        raise ValueError("q must be odd")

    def sp(a: int) -> int:
        return q ** (a * a) * prod(q ** (2 * i) - 1 for i in range(1, a + 1))

    if kind == "symplectic":
        if dim % 2:
            raise ValueError("symplectic groups need even dimension")
        return _split_order(sp(dim // 2), p)

    if dim <= 1:
        so = 1
    elif dim % 2:
        so = sp(dim // 2)
    else:
        a = dim // 2
        eps = 1 if split else -1
        so = q ** (a * (a - 1)) * (q**a - eps) * prod(q ** (2 * i) - 1 for i in range(1, a))
    total = 2 * so if (kind == "orthogonal" and dim >= 1) else so
    return _split_order(total, p)
