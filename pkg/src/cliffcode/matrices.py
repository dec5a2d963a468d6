"""Sparse square matrices over exact cyclotomic numbers.

Matrices are immutable; only nonzero entries are stored, so monomial
matrices (one entry per row, the common case for error groups built from
clock/shift generators) multiply in linear time.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .cyclo import CycNum, ONE, Rational

Row = tuple[tuple[int, CycNum], ...]


class CycMatrix:
    __slots__ = ("n", "rows", "_key", "_hash")

    def __init__(self, n: int, rows: tuple[Row, ...]):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_key", None)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("CycMatrix is immutable")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def from_entries(n: int, entries: Mapping[tuple[int, int], CycNum]) -> "CycMatrix":
        rows: list[list[tuple[int, CycNum]]] = [[] for _ in range(n)]
        for (i, j), v in entries.items():
            if not v.is_zero():
                rows[i].append((j, v))
        return CycMatrix(n, tuple(tuple(sorted(r)) for r in rows))

    @staticmethod
    def from_dense(cells: Iterable[Iterable]) -> "CycMatrix":
        dense = [list(r) for r in cells]
        n = len(dense)
        entries = {}
        for i, row in enumerate(dense):
            if len(row) != n:
                raise ValueError("matrix must be square")
            for j, v in enumerate(row):
                if isinstance(v, (int, Fraction)):
                    v = CycNum.from_rational(v)
                if not v.is_zero():
                    entries[(i, j)] = v
        return CycMatrix.from_entries(n, entries)

    @staticmethod
    def identity(n: int) -> "CycMatrix":
        return CycMatrix(n, tuple(((i, ONE),) for i in range(n)))

    @staticmethod
    def zeros(n: int) -> "CycMatrix":
        return CycMatrix(n, tuple(() for _ in range(n)))

    # -- structure -----------------------------------------------------------

    def entry(self, i: int, j: int) -> CycNum:
        for c, v in self.rows[i]:
            if c == j:
                return v
        from .cyclo import ZERO
        return ZERO

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def entries(self) -> Iterable[tuple[int, int, CycNum]]:
        for i, row in enumerate(self.rows):
            for j, v in row:
                yield i, j, v

    def key(self):
        """Canonical hashable encoding (row-major nonzeros)."""
        k = self._key
        if k is None:
            k = (self.n, tuple((i, j, v.conductor, v._items)
                               for i, j, v in self.entries()))
            object.__setattr__(self, "_key", k)
        return k

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(self.key())
            object.__setattr__(self, "_hash", h)
        return h

    # -- algebra ---------------------------------------------------------------

    def __matmul__(self, other: "CycMatrix") -> "CycMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        orows = other.rows
        out: list[Row] = []
        for row in self.rows:
            if len(row) == 1:
                k, a = row[0]
                if a.is_one():
                    out.append(orows[k])
                else:
                    out.append(tuple((j, a * b) for j, b in orows[k]))
                continue
            acc: dict[int, CycNum] = {}
            for k, a in row:
                for j, b in orows[k]:
                    prev = acc.get(j)
                    acc[j] = a * b if prev is None else prev + a * b
            out.append(tuple(sorted((j, v) for j, v in acc.items() if not v.is_zero())))
        return CycMatrix(self.n, tuple(out))

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        out: list[Row] = []
        for ra, rb in zip(self.rows, other.rows):
            acc = dict(ra)
            for j, v in rb:
                prev = acc.get(j)
                acc[j] = v if prev is None else prev + v
            out.append(tuple(sorted((j, v) for j, v in acc.items() if not v.is_zero())))
        return CycMatrix(self.n, tuple(out))

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return self + other.scaled(-1)

    def scaled(self, c) -> "CycMatrix":
        if isinstance(c, (int, Fraction)):
            c = CycNum.from_rational(c)
        if c.is_zero():
            return CycMatrix.zeros(self.n)
        return CycMatrix(self.n, tuple(
            tuple((j, c * v) for j, v in row) for row in self.rows))

    def dagger(self) -> "CycMatrix":
        """Conjugate transpose."""
        entries = {(j, i): v.conj() for i, j, v in self.entries()}
        return CycMatrix.from_entries(self.n, entries)

    def trace(self) -> CycNum:
        t = None
        for i, row in enumerate(self.rows):
            for j, v in row:
                if j == i:
                    t = v if t is None else t + v
        from .cyclo import ZERO
        return ZERO if t is None else t

    def trace_product(self, other: "CycMatrix") -> CycNum:
        """tr(self @ other) without forming the product."""
        from .cyclo import ZERO
        t = ZERO
        for i, j, v in self.entries():
            w = other.entry(j, i)
            if not w.is_zero():
                t = t + v * w
        return t

    def kron(self, other: "CycMatrix") -> "CycMatrix":
        n = self.n * other.n
        entries = {}
        for i, j, a in self.entries():
            for k, l, b in other.entries():
                entries[(i * other.n + k, j * other.n + l)] = a * b
        return CycMatrix.from_entries(n, entries)

    # -- predicates -------------------------------------------------------------

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def is_identity(self) -> bool:
        return self == CycMatrix.identity(self.n)

    def is_scalar(self) -> CycNum | None:
        """The scalar c if this equals c*I (c may be zero), else None."""
        from .cyclo import ZERO
        if self.is_zero():
            return ZERO
        c = self.entry(0, 0)
        if c.is_zero():
            return None
        return c if self == CycMatrix.identity(self.n).scaled(c) else None

    def is_hermitian(self) -> bool:
        return self == self.dagger()

    def is_unitary(self) -> bool:
        return (self @ self.dagger()).is_identity()

    def scalar_multiple_of(self, other: "CycMatrix") -> bool:
        """True iff self == lambda * other for some scalar (lambda=0 allowed).

        Decided exactly by cross-multiplication, so no field inversion is
        ever needed.
        """
        if self.is_zero():
            return True
        ref = None
        for i, j, v in other.entries():
            ref = (i, j, v)
            break
        if ref is None:
            return False  # other == 0 but self != 0
        i0, j0, b0 = ref
        a0 = self.entry(i0, j0)
        seen = set()
        for i, j, a in self.entries():
            seen.add((i, j))
            if not (a * b0 == a0 * other.entry(i, j)):
                return False
        for i, j, b in other.entries():
            if (i, j) not in seen and not (a0 * b).is_zero():
                return False
        return True

    # -- numeric image ------------------------------------------------------------

    def embed(self) -> np.ndarray:
        out = np.zeros((self.n, self.n), dtype=np.complex128)
        for i, j, v in self.entries():
            out[i, j] = v.embed()
        return out

    def __repr__(self) -> str:
        return f"CycMatrix({self.n}x{self.n}, nnz={self.nnz()})"
