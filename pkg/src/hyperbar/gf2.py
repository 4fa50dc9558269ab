"""Linear algebra over GF(2) on int-packed bit vectors.

Vectors are Python ints: bit ``i`` is the coefficient of basis element ``i``.
Addition is XOR, so every operation here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


def low_bit(x: int) -> int:
    """Index of the least significant set bit (``x`` must be nonzero)."""
    return (x & -x).bit_length() - 1


def support_of(x: int) -> list[int]:
    out = []
    while x:
        b = x & -x
        out.append(b.bit_length() - 1)
        x ^= b
    return out


@dataclass(frozen=True)
class BitVector:
    basis_size: int
    bits: int = 0

    def __post_init__(self):
        if self.basis_size < 0:
            raise ValueError("basis_size must be non-negative")
        if self.bits < 0 or self.bits >> self.basis_size:
            raise ValueError("support index outside basis")

    @classmethod
    def from_support(cls, basis_size: int, support: Iterable[int]) -> "BitVector":
        bits = 0
        for i in support:
            bits ^= 1 << i
        return cls(basis_size, bits)

    @property
    def support(self) -> list[int]:
        return support_of(self.bits)

    def __add__(self, other: "BitVector") -> "BitVector":
        if other.basis_size != self.basis_size:
            raise ValueError("basis size mismatch")
        return BitVector(self.basis_size, self.bits ^ other.bits)

    def __bool__(self):
        return self.bits != 0


@dataclass(frozen=True)
class BitMatrix:
    """Column-major matrix; ``columns[j]`` holds column ``j`` as an int over ``rows`` bits."""

    rows: int
    cols: int
    columns: tuple[int, ...]

    def __post_init__(self):
        if len(self.columns) != self.cols:
            raise ValueError("column count mismatch")
        for c in self.columns:
            if c < 0 or c >> self.rows:
                raise ValueError("column entry outside row range")

    @classmethod
    def from_columns(cls, rows: int, columns: Sequence[int | BitVector]) -> "BitMatrix":
        cols = tuple(c.bits if isinstance(c, BitVector) else int(c) for c in columns)
        return cls(rows, len(cols), cols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return (self.columns[j] >> i) & 1

    def column(self, j: int) -> BitVector:
        return BitVector(self.rows, self.columns[j])

    def apply(self, x: int | BitVector) -> int:
        """Image ``Mx`` of a domain vector."""
        if isinstance(x, BitVector):
            x = x.bits
        y = 0
        for j in support_of(x):
            y ^= self.columns[j]
        return y


def _echelon(vectors: Iterable[int]) -> tuple[int, ...]:
    """Reduced echelon basis of the span, sorted by increasing pivot (low bit)."""
    pivots: dict[int, int] = {}
    for v in vectors:
        for p, b in pivots.items():
            if (v >> p) & 1:
                v ^= b
        if not v:
            continue
        p = low_bit(v)
        for q in pivots:
            if (pivots[q] >> p) & 1:
                pivots[q] ^= v
        pivots[p] = v
    return tuple(pivots[p] for p in sorted(pivots))


@dataclass(frozen=True)
class Subspace:
    """Subspace of GF(2)^ambient_size in canonical reduced echelon form.

    Each basis vector's pivot is its lowest set bit; pivots increase along the
    basis and no other basis vector has a 1 at a pivot position.  Equal
    subspaces therefore compare equal.
    """

    ambient_size: int
    basis: tuple[int, ...] = ()

    @classmethod
    def span(cls, ambient_size: int, vectors: Iterable[int | BitVector]) -> "Subspace":
        ints = []
        for v in vectors:
            b = v.bits if isinstance(v, BitVector) else int(v)
            if b < 0 or b >> ambient_size:
                raise ValueError("vector outside ambient space")
            ints.append(b)
        return cls(ambient_size, _echelon(ints))

    @classmethod
    def zero(cls, ambient_size: int) -> "Subspace":
        return cls(ambient_size, ())

    @classmethod
    def full(cls, ambient_size: int) -> "Subspace":
        return cls(ambient_size, tuple(1 << i for i in range(ambient_size)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.ambient_size, b) for b in self.basis]

    def reduce(self, v: int) -> int:
        for b in self.basis:
            if (v >> low_bit(b)) & 1:
                v ^= b
        return v

    def __contains__(self, v: int | BitVector) -> bool:
        if isinstance(v, BitVector):
            v = v.bits
        return self.reduce(v) == 0

    def issubspace(self, other: "Subspace") -> bool:
        return all(b in other for b in self.basis)


def _kernel_combos(columns: Sequence[int]) -> list[int]:
    """Kernel of the column list as combination bitsets over column indices."""
    pivots: dict[int, tuple[int, int]] = {}
    kernel = []
    for j, col in enumerate(columns):
        combo = 1 << j
        while col:
            p = low_bit(col)
            hit = pivots.get(p)
            if hit is None:
                pivots[p] = (col, combo)
                break
            col ^= hit[0]
            combo ^= hit[1]
        else:
            kernel.append(combo)
    return kernel


def rank(m: BitMatrix) -> int:
    return len(_echelon(m.columns))


def kernel_basis(m: BitMatrix) -> Subspace:
    return Subspace(m.cols, _echelon(_kernel_combos(m.columns)))


def image_space(m: BitMatrix, domain: Subspace | None = None) -> Subspace:
    """Image of ``domain`` (whole domain by default) under ``m``."""
    if domain is None:
        return Subspace(m.rows, _echelon(m.columns))
    if domain.ambient_size != m.cols:
        raise ValueError("domain dimension mismatch")
    return Subspace(m.rows, _echelon(m.apply(b) for b in domain.basis))


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_size != b.ambient_size:
        raise ValueError(
            f"ambient mismatch: {a.ambient_size} != {b.ambient_size}")


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace(a.ambient_size, _echelon(a.basis + b.basis))


def subspace_intersection(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    k = len(a.basis)
    mask = (1 << k) - 1
    out = []
    for combo in _kernel_combos(a.basis + b.basis):
        v = 0
        for i in support_of(combo & mask):
            v ^= a.basis[i]
        out.append(v)
    return Subspace(a.ambient_size, _echelon(out))


def preimage_space(m: BitMatrix, s: Subspace) -> Subspace:
    """Basis of ``{x : m x in s}``."""
    if s.ambient_size != m.rows:
        raise ValueError(
            f"dimension mismatch: subspace lives in {s.ambient_size}, matrix has {m.rows} rows")
    mask = (1 << m.cols) - 1
    combos = _kernel_combos(m.columns + s.basis)
    return Subspace(m.cols, _echelon(c & mask for c in combos))


def restrict(m: BitMatrix, domain: Subspace) -> BitMatrix:
    """Matrix of ``m`` applied to the basis of ``domain`` (columns = basis vectors)."""
    if domain.ambient_size != m.cols:
        raise ValueError("domain dimension mismatch")
    return BitMatrix.from_columns(m.rows, [m.apply(b) for b in domain.basis])
