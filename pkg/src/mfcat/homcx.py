"""Hom complexes between matrix factorizations and their cohomology.

Hom(P, Q) is flattened into two free modules:

    even = Hom(P0, Q0) + Hom(P1, Q1)      odd = Hom(P0, Q1) + Hom(P1, Q0)

and each block is vectorized column-major (source index outer, target index
inner), so ``vec(A f B) = (B^T kron A) vec(f)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .curved import CurvatureMismatch, CurvedMap, MatrixFactorization
from .groebner import (
    ComplexError,
    FreeModuleMap,
    ModulePresentation,
    homology,
    lift,
    q_dimension,
    syzygies,
)
from .poly import Polynomial, Ring, RingMismatch


class NotCocycle(ValueError):
    pass


@dataclass(frozen=True)
class Z2Complex:
    """Free modules A^even, A^odd with d_even: even -> odd and d_odd: odd -> even."""

    ring: Ring
    even_rank: int
    odd_rank: int
    d_even: FreeModuleMap
    d_odd: FreeModuleMap

    def __post_init__(self):
        if self.d_even.shape != (self.odd_rank, self.even_rank):
            raise ValueError(f"d_even has shape {self.d_even.shape}, expected {(self.odd_rank, self.even_rank)}")
        if self.d_odd.shape != (self.even_rank, self.odd_rank):
            raise ValueError(f"d_odd has shape {self.d_odd.shape}, expected {(self.even_rank, self.odd_rank)}")

    def check(self) -> None:
        """Raise ComplexError unless both composites vanish."""
        for name, prod in (("d_odd*d_even", self.d_odd @ self.d_even), ("d_even*d_odd", self.d_even @ self.d_odd)):
            bad = prod.nonzero_entry()
            if bad is not None:
                raise ComplexError(f"{name} is nonzero at entry {bad[:2]}: {bad[2]}")

    def homology(self) -> "ExtResult":
        even = homology(self.d_odd, self.d_even)
        odd = homology(self.d_even, self.d_odd)
        return ExtResult(even, odd)

    def differential(self, parity: int) -> FreeModuleMap:
        return self.d_even if parity % 2 == 0 else self.d_odd

    def rank(self, parity: int) -> int:
        return self.even_rank if parity % 2 == 0 else self.odd_rank


@dataclass
class ExtResult:
    even: ModulePresentation
    odd: ModulePresentation
    _dims: tuple | None = field(default=None, repr=False)

    @property
    def dims(self) -> tuple:
        if self._dims is None:
            self._dims = (q_dimension(self.even), q_dimension(self.odd))
        return self._dims

    @property
    def total(self):
        return self.dims[0] + self.dims[1]

    def report(self) -> dict:
        return {
            "dims": [dim_to_json(d) for d in self.dims],
            "presentations": {
                "even": {"generators": self.even.generators, "relations": self.even.relations.cols},
                "odd": {"generators": self.odd.generators, "relations": self.odd.relations.cols},
            },
        }


def dim_to_json(d):
    return "infinite" if d == math.inf else int(d)


class HomComplex(Z2Complex):
    """The Hom complex of two factorizations with equal curvature."""

    def __init__(self, source: MatrixFactorization, target: MatrixFactorization):
        if source.ring != target.ring:
            raise RingMismatch("factorizations live over different rings")
        if source.W != target.W:
            raise CurvatureMismatch("hom_complex", (0, 0), source.W, target.W)
        ring = source.ring
        se, so = source.ranks
        te, to = target.ranks
        I = FreeModuleMap.identity
        p1, p0 = source.p1, source.p0
        q1, q0 = target.p1, target.p0
        # even -> odd; rows (Hom(P0,Q1), Hom(P1,Q0)), columns (Hom(P0,Q0), Hom(P1,Q1))
        d_even = FreeModuleMap.block(ring, [
            [I(ring, se).kron(q0), -(p0.transpose().kron(I(ring, to)))],
            [-(p1.transpose().kron(I(ring, te))), I(ring, so).kron(q1)],
        ])
        # odd -> even; rows (Hom(P0,Q0), Hom(P1,Q1)), columns (Hom(P0,Q1), Hom(P1,Q0))
        d_odd = FreeModuleMap.block(ring, [
            [I(ring, se).kron(q1), p0.transpose().kron(I(ring, te))],
            [p1.transpose().kron(I(ring, to)), I(ring, so).kron(q0)],
        ])
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        super().__init__(ring, te * se + to * so, to * se + te * so, d_even, d_odd)

    # layouts: list of (offset, rows, cols, source piece, target piece)
    def _layout(self, parity: int):
        se, so = self.source.ranks
        te, to = self.target.ranks
        if parity % 2 == 0:
            return [(0, te, se, 0, 0), (te * se, to, so, 1, 1)]
        return [(0, to, se, 0, 1), (to * se, te, so, 1, 0)]

    def to_vector(self, f: CurvedMap) -> list[Polynomial]:
        if f.source != self.source or f.target != self.target:
            raise ValueError("map does not belong to this Hom complex")
        f0, f1 = f.blocks()
        vec = []
        for blk, (_, rows, cols, _, _) in zip((f0, f1), self._layout(f.parity)):
            for j in range(cols):
                for i in range(rows):
                    vec.append(blk[i, j])
        return vec

    def from_vector(self, vec: Sequence[Polynomial], parity: int) -> CurvedMap:
        if len(vec) != self.rank(parity):
            raise ValueError("vector has the wrong length")
        ring = self.ring
        blocks = []
        for off, rows, cols, _, _ in self._layout(parity):
            blocks.append(FreeModuleMap(ring, rows, cols,
                                        [[ring(vec[off + j * rows + i]) for j in range(cols)] for i in range(rows)]))
        return CurvedMap.from_blocks(self.source, self.target, parity, blocks[0], blocks[1])

    def is_cocycle(self, f: CurvedMap) -> bool:
        return f.is_closed()

    def is_coboundary(self, f: CurvedMap) -> bool:
        """True when f = d g for some g of the opposite parity."""
        d_prev = self.differential(f.parity + 1)
        if d_prev.cols == 0:
            return all(not a for a in self.to_vector(f))
        return lift(d_prev, self.to_vector(f)) is not None

    def ext(self) -> ExtResult:
        return self.homology()

    def cocycle_basis(self, parity: int) -> list[CurvedMap]:
        """Cocycles representing the generators of the Ext presentation."""
        K = syzygies(self.differential(parity))
        return [self.from_vector(c, parity) for c in K.columns()]


def hom_complex(P: MatrixFactorization, Q: MatrixFactorization) -> HomComplex:
    return HomComplex(P, Q)


def ext(P: MatrixFactorization, Q: MatrixFactorization) -> ExtResult:
    """Presentations of Ext^even(P, Q) and Ext^odd(P, Q)."""
    return HomComplex(P, Q).homology()


def ext_dims(P: MatrixFactorization, Q: MatrixFactorization) -> tuple:
    return ext(P, Q).dims


def compose(a: CurvedMap, b: CurvedMap) -> CurvedMap:
    """a o b for cocycles b: P -> Q and a: Q -> R."""
    for name, f in (("a", a), ("b", b)):
        if not f.is_closed():
            raise NotCocycle(f"{name} is not a cocycle")
    return a.compose(b)


def same_class(f: CurvedMap, g: CurvedMap) -> bool:
    """True when f - g is a coboundary."""
    if f.parity != g.parity:
        return False
    H = HomComplex(f.source, f.target)
    return H.is_coboundary(f + g.scale(-1))
