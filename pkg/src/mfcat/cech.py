"""Cech globalization over a cover of Spec A by basic opens D(f_1), ..., D(f_k).

Sections over an intersection U_S = D(f_S), f_S = prod_{i in S} f_i, are
modelled by numerators with a bounded denominator: ``a`` stands for
``a / f_S^N``.  Restriction from S' to S = S' + {j} is then multiplication by
``f_j^N``, and the whole Cech double complex is a complex of finite free
A-modules.  Because the f_i generate the unit ideal, the Cech direction is
a truncated Koszul complex on (f_1^N, ..., f_k^N), which resolves A; the
bounded model is therefore quasi-isomorphic to the full Cech complex of
localizations, for every N >= 1.

Per-chart cohomology over the honest localized rings A[t]/(t f_S - 1) is
computed alongside as a diagnostic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .curved import CurvatureMismatch, MatrixFactorization
from .groebner import FreeModuleMap, lift
from .homcx import ExtResult, HomComplex, Z2Complex, dim_to_json
from .poly import Polynomial, Ring, RingMismatch, embed, localize

Index = tuple[int, ...]


class NotACover(ValueError):
    pass


class IncompatibleRestrictions(ValueError):
    pass


@dataclass(frozen=True)
class CechCover:
    ambient: Ring
    denominators: tuple[Polynomial, ...]

    def __post_init__(self):
        dens = tuple(self.ambient(f) for f in self.denominators)
        object.__setattr__(self, "denominators", dens)
        if not dens:
            raise NotACover("a cover needs at least one denominator")

    @classmethod
    def of(cls, ring: Ring, denominators: Sequence) -> "CechCover":
        return cls(ring, tuple(ring(f) for f in denominators))

    @property
    def size(self) -> int:
        return len(self.denominators)

    def certificate(self) -> list[Polynomial] | None:
        """g with sum g_i f_i = 1, or None."""
        row = FreeModuleMap.from_rows(self.ambient, [list(self.denominators)])
        return lift(row, [self.ambient.one()])

    def validate(self) -> list[Polynomial]:
        cert = self.certificate()
        if cert is None:
            raise NotACover(f"({', '.join(map(str, self.denominators))}) is not the unit ideal")
        return cert

    def intersections(self) -> list[Index]:
        """Nonempty index sets, ordered by size then lexicographically."""
        k = self.size
        return [S for q in range(1, k + 1) for S in itertools.combinations(range(k), q)]

    def denominator(self, S: Index) -> Polynomial:
        out = self.ambient.one()
        for i in S:
            out = out * self.denominators[i]
        return out

    def local_ring(self, S: Index) -> tuple[Ring, Polynomial]:
        return localize(self.ambient, self.denominator(S), name="t_" + "_".join(map(str, S)))

    def permuted(self, order: Sequence[int]) -> "CechCover":
        return CechCover(self.ambient, tuple(self.denominators[i] for i in order))


def validate(cover: CechCover) -> list[Polynomial]:
    return cover.validate()


@dataclass
class CechResult:
    total: ExtResult
    charts: dict = field(default_factory=dict)
    power: int = 1

    @property
    def dims(self) -> tuple:
        return self.total.dims

    def report(self) -> dict:
        out = self.total.report()
        out["denominator_power"] = self.power
        if self.charts:
            out["charts"] = {",".join(map(str, S)): [dim_to_json(d) for d in dims] for S, dims in self.charts.items()}
        return out


Charts = Mapping[Index, Z2Complex]
Restrictions = Mapping[tuple[Index, Index], tuple[FreeModuleMap, FreeModuleMap]]


def sheafify(cx: Z2Complex, cover: CechCover, power: int = 1) -> tuple[dict, dict]:
    """Charts and restriction maps of a global complex in the bounded-denominator model."""
    if power < 1:
        raise ValueError("denominator power must be at least 1")
    charts = {S: cx for S in cover.intersections()}
    restrictions = {}
    for S in cover.intersections():
        for m in range(len(S)):
            Sp = S[:m] + S[m + 1:]
            if not Sp:
                continue
            f = cover.denominators[S[m]] ** power
            restrictions[(Sp, S)] = (FreeModuleMap.scalar(cx.ring, cx.even_rank, f),
                                     FreeModuleMap.scalar(cx.ring, cx.odd_rank, f))
    return charts, restrictions


def check_restrictions(charts: Charts, restrictions: Restrictions, cover: CechCover) -> None:
    """Restrictions must be chain maps and compose consistently along every path."""
    for S in cover.intersections():
        if S not in charts:
            raise IncompatibleRestrictions(f"missing chart for {S}")
    for (Sp, S), (r_even, r_odd) in restrictions.items():
        src, dst = charts[Sp], charts[S]
        if (r_even.shape != (dst.even_rank, src.even_rank) or r_odd.shape != (dst.odd_rank, src.odd_rank)):
            raise IncompatibleRestrictions(f"restriction {Sp}->{S} has the wrong shape")
        for name, lhs, rhs in (
            ("even", dst.d_even @ r_even, r_odd @ src.d_even),
            ("odd", dst.d_odd @ r_odd, r_even @ src.d_odd),
        ):
            if (lhs - rhs).nonzero_entry() is not None:
                raise IncompatibleRestrictions(f"restriction {Sp}->{S} does not commute with d_{name}")
    for S in cover.intersections():
        for m in range(len(S)):
            Sp = S[:m] + S[m + 1:]
            if Sp and (Sp, S) not in restrictions:
                raise IncompatibleRestrictions(f"missing restriction {Sp}->{S}")
        if len(S) < 3:
            continue
        # every path S'' -> S' -> S with |S''| = |S| - 2 must agree
        for a, b in itertools.combinations(range(len(S)), 2):
            Spp = tuple(x for k, x in enumerate(S) if k not in (a, b))
            via = []
            for drop in (a, b):
                Sp = tuple(x for k, x in enumerate(S) if k != drop)
                r1 = restrictions[(Spp, Sp)]
                r2 = restrictions[(Sp, S)]
                via.append((r2[0] @ r1[0], r2[1] @ r1[1]))
            for par in (0, 1):
                if (via[0][par] - via[1][par]).nonzero_entry() is not None:
                    raise IncompatibleRestrictions(f"restrictions {Spp}->{S} depend on the path")


def cech_total(charts: Charts, restrictions: Restrictions, cover: CechCover) -> Z2Complex:
    """Total complex D = delta + (-1)^p d, graded by (Cech degree + internal parity) mod 2."""
    check_restrictions(charts, restrictions, cover)
    ring = cover.ambient
    inter = cover.intersections()
    # summands of total parity t: (S, internal parity) with (|S|-1 + parity) % 2 == t
    summands = {t: [(S, (t - (len(S) - 1)) % 2) for S in inter] for t in (0, 1)}
    offsets = {}
    sizes = {}
    for t in (0, 1):
        off = 0
        for S, par in summands[t]:
            offsets[(t, S)] = off
            off += charts[S].rank(par)
        sizes[t] = off

    def total_differential(t: int) -> FreeModuleMap:
        rows, cols = sizes[1 - t], sizes[t]
        entries = [[ring.zero()] * cols for _ in range(rows)]

        def place(block: FreeModuleMap, r0: int, c0: int, sign: int) -> None:
            for i in range(block.rows):
                for j in range(block.cols):
                    a = block[i, j]
                    if a:
                        entries[r0 + i][c0 + j] = entries[r0 + i][c0 + j] + (a if sign > 0 else -a)

        for S, par in summands[t]:
            c0 = offsets[(t, S)]
            p = len(S) - 1
            # internal differential, same chart
            place(charts[S].differential(par), offsets[(1 - t, S)], c0, (-1) ** p)
            # Cech differential to every S + {j}
            for j in range(cover.size):
                if j in S:
                    continue
                big = tuple(sorted(S + (j,)))
                m = big.index(j)
                r = restrictions[(S, big)][par]
                place(r, offsets[(1 - t, big)], c0, (-1) ** m)
        return FreeModuleMap(ring, rows, cols, entries)

    return Z2Complex(ring, sizes[0], sizes[1], total_differential(0), total_differential(1))


def cech_hyper(charts: Charts, restrictions: Restrictions, cover: CechCover) -> CechResult:
    """Hypercohomology of a complex of sheaves given chart by chart."""
    cover.validate()
    T = cech_total(charts, restrictions, cover)
    T.check()
    return CechResult(T.homology())


def localize_complex(cx: Z2Complex, cover: CechCover, S: Index) -> Z2Complex:
    """The same complex over A[t_S]/(t_S f_S - 1)."""
    R, _ = cover.local_ring(S)

    def up(M: FreeModuleMap) -> FreeModuleMap:
        return M.map_entries(lambda a: embed(a, R), R)

    return Z2Complex(R, cx.even_rank, cx.odd_rank, up(cx.d_even), up(cx.d_odd))


def chart_cohomology(cx: Z2Complex, cover: CechCover) -> dict:
    return {S: localize_complex(cx, cover, S).homology().dims for S in cover.intersections()}


def cech_ext(P: MatrixFactorization, Q: MatrixFactorization, cover: CechCover,
             power: int = 1, local: bool = True) -> CechResult:
    """Ext(P, Q) through the Cech total complex of Hom(P, Q) over the cover."""
    if P.ring != cover.ambient or Q.ring != cover.ambient:
        raise RingMismatch("factorizations must live over the cover's ambient ring")
    if P.W != Q.W:
        raise CurvatureMismatch("cech_ext", (0, 0), P.W, Q.W)
    cover.validate()
    H = HomComplex(P, Q)
    charts, restrictions = sheafify(H, cover, power)
    result = cech_hyper(charts, restrictions, cover)
    result.power = power
    if local:
        result.charts = chart_cohomology(H, cover)
    return result
