"""0/1 matrices, divisions, corners, grid and mixed minors, pattern constants."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import InputError, ResourceLimitError


@dataclass(frozen=True, eq=False)
class BitMatrix:
    """An m x n 0/1 matrix stored as a read-only ``uint8`` array."""

    bits: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.bits, dtype=np.uint8)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InputError(f"matrix must be 2-dimensional and non-empty, got shape {arr.shape}")
        if arr.size and arr.max() > 1:
            raise InputError("matrix entries must be 0 or 1")
        arr.setflags(write=False)
        object.__setattr__(self, "bits", arr)

    @classmethod
    def from_rows(cls, rows) -> "BitMatrix":
        return cls(np.array(rows, dtype=np.uint8))

    @property
    def m(self) -> int:
        return self.bits.shape[0]

    @property
    def n(self) -> int:
        return self.bits.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.bits.shape

    def tolist(self) -> list[list[int]]:
        return self.bits.tolist()

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.bits.T)

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self):
        return hash((self.shape, self.bits.tobytes()))

    def __repr__(self):
        return f"BitMatrix({self.tolist()})"


@dataclass(frozen=True)
class Division:
    """Row and column boundaries. ``row_cuts`` = [0, ..., m] with k + 1 entries."""

    row_cuts: tuple[int, ...]
    col_cuts: tuple[int, ...]

    def __post_init__(self):
        for cuts in (self.row_cuts, self.col_cuts):
            if len(cuts) < 2 or cuts[0] != 0 or any(b <= a for a, b in zip(cuts, cuts[1:])):
                raise InputError(f"cuts must start at 0 and be strictly increasing: {cuts}")

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_cuts) - 1, len(self.col_cuts) - 1

    def zones(self):
        for i in range(len(self.row_cuts) - 1):
            for j in range(len(self.col_cuts) - 1):
                yield (range(self.row_cuts[i], self.row_cuts[i + 1]),
                       range(self.col_cuts[j], self.col_cuts[j + 1]))

    def to_json(self) -> dict:
        # boundaries exclude the leading 0 and trailing size, matching "cut points"
        return {"rowCuts": list(self.row_cuts[1:-1]), "colCuts": list(self.col_cuts[1:-1])}

    @classmethod
    def from_json(cls, data: dict, m: int, n: int) -> "Division":
        return cls((0, *data["rowCuts"], m), (0, *data["colCuts"], n))


class SubmatrixKind(NamedTuple):
    vertical: bool
    horizontal: bool
    mixed: bool
    corner: bool


class MinorResult(NamedTuple):
    t: int
    witness: Division | None
    exact: bool


class ColumnBound(NamedTuple):
    p: int
    pairs: list[int]
    column_bound: int
    distinct: int
    ok: bool


# ------------------------------------------------------------------ files ---

def parse_matrix(text: str) -> BitMatrix:
    """Parse the ``m n`` header followed by m lines of n characters in {0,1}."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise InputError("line 1: empty matrix file")
    head = lines[0].split()
    if len(head) != 2 or not all(h.isdigit() for h in head):
        raise InputError(f"line 1: expected 'm n', got {lines[0]!r}")
    m, n = int(head[0]), int(head[1])
    if m < 1 or n < 1:
        raise InputError("line 1: dimensions must be positive")
    if len(lines) - 1 != m:
        raise InputError(f"expected {m} matrix rows, found {len(lines) - 1}")
    rows = []
    for lineno, ln in enumerate(lines[1:], start=2):
        row = ln.replace(" ", "")
        if len(row) != n or set(row) - {"0", "1"}:
            raise InputError(f"line {lineno}: expected {n} characters from {{0,1}}")
        rows.append([int(ch) for ch in row])
    return BitMatrix.from_rows(rows)


def format_matrix(mat: BitMatrix) -> str:
    body = "\n".join("".join(str(int(x)) for x in row) for row in mat.bits)
    return f"{mat.m} {mat.n}\n{body}\n"


# --------------------------------------------------------- classification ---

def classify_submatrix(mat: BitMatrix, rows: range, cols: range) -> SubmatrixKind:
    if not rows or not cols:
        raise InputError("submatrix ranges must be non-empty")
    if rows.start < 0 or cols.start < 0 or rows.stop > mat.m or cols.stop > mat.n:
        raise InputError(f"submatrix {rows}x{cols} out of range for shape {mat.shape}")
    sub = mat.bits[rows.start:rows.stop, cols.start:cols.stop]
    if sub.size <= 64:  # numpy call overhead dominates on tiny windows
        lists = sub.tolist()
        vertical = all(r == lists[0] for r in lists)
        horizontal = all(r.count(r[0]) == len(r) for r in lists)
    else:
        vertical = bool((sub == sub[0]).all())
        horizontal = bool((sub == sub[:, :1]).all())
    mixed = not vertical and not horizontal
    return SubmatrixKind(vertical, horizontal, mixed, mixed and sub.shape == (2, 2))


def corner_matrix(mat: BitMatrix) -> BitMatrix:
    """Indicator of the 2x2 windows of ``mat`` that are corners."""
    if mat.m < 2 or mat.n < 2:
        raise InputError(f"corner matrix needs at least 2 rows and 2 columns, got {mat.shape}")
    return BitMatrix(kernels.corner_matrix(mat.bits))


# ----------------------------------------------------------------- minors ---

EXACT_MAX_COMBOS = 2_000_000


def _max_minor(ind: np.ndarray, m: int, n: int, shrink: int, cap: int | None,
               upper: int, max_combos: int) -> MinorResult:
    transposed = m > n
    if transposed:
        ind = ind.T
        m, n = n, m
    p = kernels.prefix_sums(np.ascontiguousarray(ind))
    if p[-1, -1] == 0:
        return MinorResult(0, None, True)
    limit = upper if cap is None else min(cap, upper)
    best, witness, exact = 0, None, True
    for t in range(1, limit + 1):
        if math.comb(m - 1, t - 1) > max_combos:
            exact = False
            break
        found, rc, cc = kernels.find_minor(p, m, n, shrink, t)
        if not found:
            break
        best, witness = t, (tuple(int(x) for x in rc), tuple(int(x) for x in cc))
    if not exact:
        # lower-bound mode: balanced row division, greedy columns
        for t in range(best + 1, limit + 1):
            cuts = [round(i * m / t) for i in range(t + 1)]
            if len(set(cuts)) != t + 1:
                break
            cc = kernels.greedy_rows_for(p, m, n, shrink, t, cuts)
            if cc is None:
                break
            best, witness = t, (tuple(cuts), tuple(int(x) for x in cc))
    if witness is None:
        return MinorResult(best, None, exact)
    rows, cols = witness
    if transposed:
        rows, cols = cols, rows
    return MinorResult(best, Division(rows, cols), exact)


def max_grid_minor(mat: BitMatrix, cap: int | None = None,
                   max_combos: int = EXACT_MAX_COMBOS) -> MinorResult:
    """Largest t <= cap such that some (t, t)-division has a 1 in every zone.

    The result is flagged ``exact=False`` when the row-division enumeration
    would exceed ``max_combos``; ``t`` is then a lower bound.
    """
    return _max_minor(mat.bits, mat.m, mat.n, 0, cap, min(mat.m, mat.n), max_combos)


def max_mixed_minor(mat: BitMatrix, cap: int | None = None,
                    max_combos: int = EXACT_MAX_COMBOS) -> MinorResult:
    """Largest t <= cap such that some (t, t)-division has only mixed zones.

    A zone is mixed iff it contains a corner, so the search runs on the corner
    matrix with the zone shrunk by one row and one column.
    """
    if mat.m < 2 or mat.n < 2:
        return MinorResult(0, None, True)
    ind = kernels.corner_matrix(mat.bits)
    return _max_minor(ind, mat.m, mat.n, 1, cap, min(mat.m, mat.n) // 2, max_combos)


def has_zone_property(mat: BitMatrix, division: Division, mixed: bool) -> bool:
    """Direct check of a witness, zone by zone (independent of the search)."""
    for rows, cols in division.zones():
        if mixed:
            if not classify_submatrix(mat, rows, cols).mixed:
                return False
        elif not mat.bits[rows.start:rows.stop, cols.start:cols.stop].any():
            return False
    return True


# -------------------------------------------------------- column counting ---

def corner_row_pairs(mat: BitMatrix) -> ColumnBound:
    """Row pairs that carry corners, and the distinct-columns bound 2^(p+1)."""
    if mat.m < 2:
        raise InputError("corner_row_pairs needs at least 2 rows")
    if mat.n >= 2:
        pairs = [int(i) for i in np.flatnonzero(kernels.corner_matrix(mat.bits).any(axis=1))]
    else:
        pairs = []
    p = len(pairs)
    distinct = len({col.tobytes() for col in mat.bits.T})
    bound = 2 ** (p + 1)
    return ColumnBound(p, pairs, bound, distinct, distinct <= bound)


def column_bound_sweep(m: int, n: int):
    """Check the distinct-columns bound on every m x n 0/1 matrix.

    Returns (violations, max_distinct, max_p, histogram_of_p).
    """
    if m < 2 or n < 1 or m * n > 24:
        raise InputError(f"sweep supports 2 <= m and m*n <= 24, got {m}x{n}")
    v, d, p, hist = kernels.column_bound_sweep(m, n)
    return int(v), int(d), int(p), [int(x) for x in hist]


# ---------------------------------------------------------------- constants --

@dataclass(frozen=True)
class Pow2Multiple:
    """The exact integer ``coeff * 2**exp``, kept symbolic.

    Exponents in this module reach 10**12 and beyond, so the value is never
    materialised; comparisons against plain integers stay exact.
    """

    exp: int
    coeff: int = 1

    def __post_init__(self):
        if self.coeff < 1 or self.exp < 0:
            raise ValueError("coeff must be >= 1 and exp >= 0")

    def __mul__(self, k: int) -> "Pow2Multiple":
        if not isinstance(k, int) or k < 1:
            return NotImplemented
        return Pow2Multiple(self.exp, self.coeff * k)

    __rmul__ = __mul__

    def log2(self) -> float:
        return self.exp + math.log2(self.coeff)

    def bounds(self, x: int) -> bool:
        """True iff x <= coeff * 2**exp."""
        if x <= 0:
            return True
        if x.bit_length() <= self.exp:
            return True
        # here exp < bit_length(x), so the shift is small
        return x <= self.coeff << self.exp

    def __ge__(self, x):
        if isinstance(x, int):
            return self.bounds(x)
        return NotImplemented

    def __gt__(self, x):
        if isinstance(x, int):
            return self.bounds(x + 1)
        return NotImplemented

    def to_int(self, max_bits: int = 1 << 20) -> int:
        if self.exp > max_bits:
            raise ResourceLimitError(f"2^{self.exp} is too large to materialise")
        return self.coeff << self.exp

    def __str__(self):
        return f"2^{self.exp}" if self.coeff == 1 else f"{self.coeff}*2^{self.exp}"


def mt_constant(t: int, variant: str = "classic") -> int:
    """Marcus-Tardos constant c_t.

    ``classic``: 2 t^4 binom(t^2, t). ``ck``: ceiling of 8/3 (t+1)^2 2^(4t).
    """
    if not isinstance(t, int) or t <= 0:
        raise InputError(f"t must be a positive integer, got {t!r}")
    if variant == "classic":
        return 2 * t ** 4 * math.comb(t * t, t)
    if variant == "ck":
        value = Fraction(8, 3) * (t + 1) ** 2 * 2 ** (4 * t)
        return math.ceil(value)
    raise InputError(f"unknown variant {variant!r}; use 'classic' or 'ck'")


@dataclass(frozen=True)
class PatternConstants:
    t: int
    variant: str = "classic"
    mt_classic: int = field(init=False)
    mt_ck: int = field(init=False)
    n_t: Pow2Multiple = field(init=False)
    k_t: int = field(init=False)
    m_t: Pow2Multiple = field(init=False)

    def __post_init__(self):
        if self.t < 0:
            raise InputError("t must be non-negative")
        c = lambda s: mt_constant(s, self.variant)  # noqa: E731
        set_ = object.__setattr__
        set_(self, "mt_classic", mt_constant(max(self.t, 1), "classic"))
        set_(self, "mt_ck", mt_constant(max(self.t, 1), "ck"))
        set_(self, "n_t", Pow2Multiple(c(4 * self.t + 4)))
        c2t = c(2 * self.t) if self.t > 0 else 0
        set_(self, "k_t", 4 * c2t + 4 * self.t)
        set_(self, "m_t", Pow2Multiple(c2t + 1))

    def c(self, s: int) -> int:
        return mt_constant(s, self.variant)

    def to_json(self) -> dict:
        return {
            "t": self.t,
            "variant": self.variant,
            "mtClassic": self.mt_classic,
            "mtCK": self.mt_ck,
            "nT": str(self.n_t),
            "kT": self.k_t,
            "mT": str(self.m_t),
        }
