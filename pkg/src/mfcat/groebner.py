"""Buchberger's algorithm for submodules of free modules over QQ[x]/I.

Module elements are sparse dicts ``(position, exponents) -> Fraction``.
The module order is position-over-term: a smaller position index wins,
ties are broken by the ring's monomial order.  Ring relations are added
to every component automatically, so everything here works over quotient
and localized rings alike.

Kernels and lifts share one computation: the columns of ``M`` are stacked
on top of an identity block and a Groebner basis is taken.  Elements whose
top part vanishes generate the syzygies; reducing ``(v, 0)`` leaves
``(0, -u)`` exactly when ``M u = v``.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .poly import Monomial, Polynomial, Ring, RingMismatch

log = logging.getLogger(__name__)

Term = tuple[int, Monomial]
Vector = dict[Term, Fraction]

DEFAULT_BUDGET = 200_000
INFINITE = math.inf

_budget = DEFAULT_BUDGET


class BudgetExceeded(RuntimeError):
    """Raised when a Groebner computation exceeds the reduction budget."""


class ComplexError(ValueError):
    """d_out o d_in is not zero."""


def set_budget(pairs: int) -> None:
    """Set the global S-pair reduction budget (per basis computation)."""
    global _budget
    if pairs <= 0:
        raise ValueError("budget must be positive")
    _budget = pairs


def get_budget() -> int:
    return _budget


# -- matrices ----------------------------------------------------------------

class FreeModuleMap:
    """A ``rows x cols`` matrix of polynomials, i.e. a map A^cols -> A^rows."""

    __slots__ = ("ring", "rows", "cols", "entries", "_hash")

    def __init__(self, ring: Ring, rows: int, cols: int, entries: Sequence[Sequence] | None = None):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        if entries is None:
            entries = [[ring.zero()] * cols for _ in range(rows)]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"entries do not have shape {rows}x{cols}")
        self.entries = tuple(tuple(ring(e) for e in row) for row in entries)
        self._hash = None

    @classmethod
    def from_rows(cls, ring: Ring, rows: Sequence[Sequence]) -> "FreeModuleMap":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return cls(ring, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, ring: Ring, columns: Sequence[Sequence], rows: int) -> "FreeModuleMap":
        cols = [list(c) for c in columns]
        entries = [[cols[j][i] for j in range(len(cols))] for i in range(rows)]
        return cls(ring, rows, len(cols), entries)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "FreeModuleMap":
        return cls.scalar(ring, n, ring.one())

    @classmethod
    def scalar(cls, ring: Ring, n: int, value) -> "FreeModuleMap":
        value = ring(value)
        return cls(ring, n, n, [[value if i == j else ring.zero() for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, ring: Ring, rows: int, cols: int) -> "FreeModuleMap":
        return cls(ring, rows, cols)

    @classmethod
    def block(cls, ring: Ring, blocks: Sequence[Sequence["FreeModuleMap"]]) -> "FreeModuleMap":
        """Assemble a block matrix; every block in a block-row shares its row count."""
        entries: list[list[Polynomial]] = []
        for brow in blocks:
            h = brow[0].rows
            if any(b.rows != h for b in brow):
                raise ValueError("block row heights differ")
            for i in range(h):
                entries.append([e for b in brow for e in b.entries[i]])
        ncols = sum(b.cols for b in blocks[0]) if blocks else 0
        return cls(ring, len(entries), ncols, entries)

    def __getitem__(self, ij) -> Polynomial:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> list[Polynomial]:
        return [self.entries[i][j] for i in range(self.rows)]

    def columns(self) -> list[list[Polynomial]]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> "FreeModuleMap":
        return FreeModuleMap(self.ring, self.cols, self.rows,
                             [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    T = property(transpose)

    def __matmul__(self, other: "FreeModuleMap") -> "FreeModuleMap":
        if other.ring != self.ring:
            raise RingMismatch("matrices over different rings")
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        zero = self.ring.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return FreeModuleMap(self.ring, self.rows, other.cols, out)

    def __add__(self, other: "FreeModuleMap") -> "FreeModuleMap":
        if other.shape != self.shape:
            raise ValueError("shape mismatch")
        return FreeModuleMap(self.ring, self.rows, self.cols,
                             [[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)])

    def __sub__(self, other: "FreeModuleMap") -> "FreeModuleMap":
        return self + (-other)

    def __neg__(self) -> "FreeModuleMap":
        return FreeModuleMap(self.ring, self.rows, self.cols, [[-a for a in r] for r in self.entries])

    def scale(self, p) -> "FreeModuleMap":
        p = self.ring(p)
        return FreeModuleMap(self.ring, self.rows, self.cols, [[p * a for a in r] for r in self.entries])

    def kron(self, other: "FreeModuleMap") -> "FreeModuleMap":
        """Kronecker product; row index i*other.rows + k."""
        out = []
        for i in range(self.rows):
            for k in range(other.rows):
                out.append([self.entries[i][j] * other.entries[k][l]
                            for j in range(self.cols) for l in range(other.cols)])
        return FreeModuleMap(self.ring, self.rows * other.rows, self.cols * other.cols, out)

    def map_entries(self, fn, ring: Ring | None = None) -> "FreeModuleMap":
        ring = ring or self.ring
        return FreeModuleMap(ring, self.rows, self.cols, [[fn(a) for a in r] for r in self.entries])

    def is_zero(self) -> bool:
        return all(not a for r in self.entries for a in r)

    def nonzero_entry(self) -> tuple[int, int, Polynomial] | None:
        """First entry that is nonzero modulo the ring relations."""
        for i, r in enumerate(self.entries):
            for j, a in enumerate(r):
                if a and not reduce_poly(a).is_zero():
                    return i, j, a
        return None

    def __eq__(self, other) -> bool:
        return (isinstance(other, FreeModuleMap) and self.ring == other.ring
                and self.shape == other.shape and self.entries == other.entries)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, self.rows, self.cols, self.entries))
        return self._hash

    def to_literals(self) -> list[list[str]]:
        return [[str(a) for a in r] for r in self.entries]

    def __repr__(self) -> str:
        return f"FreeModuleMap({self.rows}x{self.cols}, {self.to_literals()})"


@dataclass(frozen=True)
class ModulePresentation:
    """coker(relations: A^r -> A^generators)."""

    ring: Ring
    generators: int
    relations: FreeModuleMap

    def __post_init__(self):
        if self.relations.rows != self.generators:
            raise ValueError("relations must have one row per generator")

    def q_dimension(self):
        return q_dimension(self)

    def reduce_at_origin(self) -> "ModulePresentation":
        """Tensor with QQ = A/(all variables): append x_i * e_p for every p."""
        return self.add_relations([[g if p == q else self.ring.zero() for q in range(self.generators)]
                                   for g in self.ring.gens() for p in range(self.generators)])

    def add_relations(self, columns: Sequence[Sequence[Polynomial]]) -> "ModulePresentation":
        cols = self.relations.columns() + [list(c) for c in columns]
        return ModulePresentation(self.ring, self.generators,
                                  FreeModuleMap.from_columns(self.ring, cols, self.generators))

    def over(self, ring: Ring) -> "ModulePresentation":
        """Same matrix read over another ring on the same variables."""
        if ring.variables != self.ring.variables:
            raise RingMismatch("rings must share variables")
        rel = self.relations.map_entries(lambda a: Polynomial(ring, a.terms), ring)
        return ModulePresentation(ring, self.generators, rel)

    def groebner(self) -> "GroebnerBasis":
        return groebner([column_vector(c) for c in self.relations.columns()], self.ring, self.generators)

    def annihilator(self) -> "GroebnerBasis":
        return annihilator(self)


# -- vector helpers ------------------------------------------------------------

def column_vector(col: Sequence[Polynomial], offset: int = 0) -> Vector:
    v: Vector = {}
    for i, p in enumerate(col):
        for m, c in p.terms.items():
            v[(i + offset, m)] = c
    return v


def vector_column(v: Vector, ring: Ring, rows: int, offset: int = 0) -> list[Polynomial]:
    parts: list[dict] = [{} for _ in range(rows)]
    for (p, m), c in v.items():
        parts[p - offset][m] = c
    return [Polynomial(ring, t) for t in parts]


def _heap_key(ring: Ring):
    hk = ring.heap_key
    return lambda t: (t[0],) + hk(t[1])


def _lead(v: Vector, key) -> Term:
    return min(v, key=key)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


# -- Groebner bases ----------------------------------------------------------

class GroebnerBasis:
    """A reduced Groebner basis of a submodule of A^rank."""

    def __init__(self, ring: Ring, rank: int, elements: list[Vector]):
        self.ring = ring
        self.rank = rank
        self.elements = elements
        self._key = _heap_key(ring)
        self.leads = [_lead(g, self._key) for g in elements]
        self._by_pos: dict[int, list[tuple[Monomial, int]]] = {}
        for idx, (p, m) in enumerate(self.leads):
            self._by_pos.setdefault(p, []).append((m, idx))

    def __len__(self) -> int:
        return len(self.elements)

    def reduce(self, v: Vector) -> Vector:
        return _reduce(v, self.elements, self.leads, self._by_pos, self._key)

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def is_unit(self) -> bool:
        """True when the basis generates the whole free module."""
        zero = (0,) * self.ring.ngens
        return all(any(m == zero for m, _ in self._by_pos.get(p, ())) for p in range(self.rank))

    def lead_monomials(self, position: int) -> list[Monomial]:
        return [m for m, _ in self._by_pos.get(position, ())]

    def polynomials(self) -> list[Polynomial]:
        """Elements of an ideal basis (rank 1) as polynomials."""
        return [vector_column(g, self.ring, self.rank)[0] for g in self.elements] if self.rank == 1 else []

    def columns(self) -> list[list[Polynomial]]:
        return [vector_column(g, self.ring, self.rank) for g in self.elements]

    def signature(self) -> tuple:
        """Hashable exact content, used for determinism checks."""
        return tuple(tuple(sorted(g.items())) for g in self.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroebnerBasis) and self.ring == other.ring and self.signature() == other.signature()

    def __hash__(self) -> int:
        return hash(self.signature())


def _reduce(f: Vector, basis: list[Vector], leads: list[Term], by_pos, key, full: bool = True) -> Vector:
    """Normal form of f against monic basis elements."""
    f = dict(f)
    heap = [(key(t), t) for t in f]
    heapq.heapify(heap)
    rem: Vector = {}
    while heap:
        _, t = heapq.heappop(heap)
        c = f.get(t)
        if c is None:
            continue
        pos, m = t
        reducer = None
        for lm, idx in by_pos.get(pos, ()):
            if _divides(lm, m):
                reducer = idx
                break
        if reducer is None:
            rem[t] = c
            del f[t]
            if not full:
                rem.update(f)
                return rem
            continue
        shift = tuple(a - b for a, b in zip(m, leads[reducer][1]))
        for (p, e), gc in basis[reducer].items():
            term = (p, tuple(a + b for a, b in zip(e, shift)))
            old = f.get(term)
            new = (old or 0) - c * gc
            if new:
                if old is None:
                    heapq.heappush(heap, (key(term), term))
                f[term] = new
            elif old is not None:
                del f[term]
    return rem


@lru_cache(maxsize=256)
def relation_basis(ring: Ring) -> GroebnerBasis:
    """Groebner basis of the ring's defining ideal (in the free ring)."""
    gens = [{(0, m): c for m, c in rel} for rel in ring.relations]
    return _buchberger(gens, ring.free, 1, [], _budget)


def reduce_poly(p: Polynomial) -> Polynomial:
    """Normal form of p modulo the relations of its ring."""
    if not p.ring.relations:
        return p
    G = relation_basis(p.ring)
    v = G.reduce({(0, m): c for m, c in p.terms.items()})
    return Polynomial(p.ring, {m: c for (_, m), c in v.items()})


def groebner(generators: Iterable[Vector], ring: Ring, rank: int, budget: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule of (A/I)^rank spanned by ``generators``.

    The ring relations I are appended in every component.
    """
    gens = [dict(g) for g in generators if g]
    for g in gens:
        for p, _ in g:
            if not 0 <= p < rank:
                raise ValueError(f"position {p} outside free module of rank {rank}")
    seeded: list[Vector] = []
    if ring.relations:
        R = relation_basis(ring)
        for p in range(rank):
            for g in R.elements:
                seeded.append({(p, m): c for (_, m), c in g.items()})
    return _buchberger(gens, ring, rank, seeded, budget or _budget)


def _monic(v: Vector, key) -> Vector:
    c = v[_lead(v, key)]
    if c == 1:
        return v
    inv = 1 / c
    return {t: a * inv for t, a in v.items()}


def _sugar(v: Vector) -> int:
    return max(sum(m) for _, m in v)


def _buchberger(gens: list[Vector], ring: Ring, rank: int, seeded: list[Vector], budget: int) -> GroebnerBasis:
    """Buchberger with the normal selection strategy and the chain criterion.

    ``seeded`` is a list already known to be a Groebner basis of what it
    spans (the ring relations); pairs inside it are not formed.
    """
    key = _heap_key(ring)
    basis: list[Vector] = []
    leads: list[Term] = []
    sugars: list[int] = []
    by_pos: dict[int, list[tuple[Monomial, int]]] = {}
    pairs: list[tuple[int, int, int, int]] = []  # (sugar, lcm degree, i, j)
    pending: set[tuple[int, int]] = set()
    n_seeded = 0

    def add(v: Vector, sugar: int, seeded_elt: bool = False) -> None:
        v = _monic(v, key)
        idx = len(basis)
        lt = _lead(v, key)
        for j, (p, m) in enumerate(leads):
            if p != lt[0] or (seeded_elt and j < n_seeded):
                continue
            lcm = tuple(max(a, b) for a, b in zip(m, lt[1]))
            dl = sum(lcm)
            s = max(sugars[j] + dl - sum(m), sugar + dl - sum(lt[1]))
            heapq.heappush(pairs, (s, dl, j, idx))
            pending.add((j, idx))
        basis.append(v)
        leads.append(lt)
        sugars.append(sugar)
        by_pos.setdefault(lt[0], []).append((lt[1], idx))

    for v in seeded:
        add(v, _sugar(v), seeded_elt=True)
        n_seeded += 1
    for v in gens:
        r = _reduce(v, basis, leads, by_pos, key)
        if r:
            add(r, _sugar(v))

    reductions = 0
    while pairs:
        s, _, i, j = heapq.heappop(pairs)
        pending.discard((i, j))
        pos, mi = leads[i]
        mj = leads[j][1]
        lcm = tuple(max(a, b) for a, b in zip(mi, mj))
        if _chain_criterion(i, j, pos, lcm, leads, pending):
            continue
        reductions += 1
        if reductions > budget:
            raise BudgetExceeded(
                f"Groebner computation exceeded the budget of {budget} S-pair reductions "
                f"(basis size {len(basis)}, {len(pairs)} pairs pending, rank {rank}, ring {ring})")
        spoly = _spoly(basis[i], mi, basis[j], mj, lcm)
        r = _reduce(spoly, basis, leads, by_pos, key)
        if log.isEnabledFor(logging.DEBUG):
            log.debug("pair (%d,%d) pos=%d lcm=%s sugar=%d -> %s", i, j, pos, lcm, s,
                      "0" if not r else f"new lead {_lead(r, key)}")
        if r:
            add(r, s)

    return GroebnerBasis(ring, rank, _interreduce(basis, leads, key))


def _chain_criterion(i, j, pos, lcm, leads, pending) -> bool:
    for k, (p, m) in enumerate(leads):
        if k == i or k == j or p != pos:
            continue
        if not _divides(m, lcm):
            continue
        if (min(i, k), max(i, k)) in pending or (min(j, k), max(j, k)) in pending:
            continue
        return True
    return False


def _spoly(f: Vector, mf: Monomial, g: Vector, mg: Monomial, lcm: Monomial) -> Vector:
    sf = tuple(a - b for a, b in zip(lcm, mf))
    sg = tuple(a - b for a, b in zip(lcm, mg))
    out: Vector = {}
    for (p, e), c in f.items():
        out[(p, tuple(a + b for a, b in zip(e, sf)))] = c
    for (p, e), c in g.items():
        t = (p, tuple(a + b for a, b in zip(e, sg)))
        v = out.get(t, 0) - c
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _interreduce(basis: list[Vector], leads: list[Term], key) -> list[Vector]:
    keep = []
    for i, (p, m) in enumerate(leads):
        redundant = False
        for j, (q, n) in enumerate(leads):
            if j != i and q == p and _divides(n, m) and (n != m or j < i):
                redundant = True
                break
        if not redundant:
            keep.append(i)
    elems = [basis[i] for i in keep]
    lds = [leads[i] for i in keep]
    out = []
    for k, g in enumerate(elems):
        others = elems[:k] + elems[k + 1:]
        olds = lds[:k] + lds[k + 1:]
        by_pos: dict[int, list] = {}
        for idx, (p, m) in enumerate(olds):
            by_pos.setdefault(p, []).append((m, idx))
        lt = lds[k]
        tail = {t: c for t, c in g.items() if t != lt}
        r = _reduce(tail, others, olds, by_pos, key)
        r[lt] = g[lt]
        out.append(_monic(r, key))
    out.sort(key=lambda v: key(_lead(v, key)))
    return out


def is_groebner(G: GroebnerBasis) -> bool:
    """Check that every S-pair of G reduces to zero."""
    for i, j in itertools.combinations(range(len(G)), 2):
        (p, mi), (q, mj) = G.leads[i], G.leads[j]
        if p != q:
            continue
        lcm = tuple(max(a, b) for a, b in zip(mi, mj))
        if G.reduce(_spoly(G.elements[i], mi, G.elements[j], mj, lcm)):
            return False
    return True


def normal_form(v: Vector | Sequence[Polynomial], G: GroebnerBasis):
    """Unique remainder of v modulo G (same representation as the input)."""
    if isinstance(v, dict):
        return G.reduce(v)
    return vector_column(G.reduce(column_vector(v)), G.ring, G.rank)


# -- kernels, lifts, homology ---------------------------------------------

class _Augmented:
    """Groebner basis of the columns of [M; I] over A/I."""

    def __init__(self, M: FreeModuleMap):
        self.M = M
        m, n = M.rows, M.cols
        gens = []
        for j in range(n):
            v = column_vector(M.column(j))
            v[(m + j, (0,) * M.ring.ngens)] = Fraction(1)
            gens.append(v)
        self.G = groebner(gens, M.ring, m + n)

    def kernel_columns(self) -> list[list[Polynomial]]:
        M = self.M
        m, n = M.rows, M.cols
        cols = []
        for g, (p, _) in zip(self.G.elements, self.G.leads):
            if p < m:
                continue
            col = vector_column(g, M.ring, n, offset=m)
            if M.ring.relations:
                col = [reduce_poly(a) for a in col]
                if all(a.is_zero() for a in col):
                    continue
            cols.append(col)
        return cols

    def lift(self, v: Sequence[Polynomial]) -> list[Polynomial] | None:
        M = self.M
        r = self.G.reduce(column_vector(v))
        if any(p < M.rows for p, _ in r):
            return None
        u = vector_column(r, M.ring, M.cols, offset=M.rows)
        u = [-a for a in u]
        if M.ring.relations:
            u = [reduce_poly(a) for a in u]
        return u


@lru_cache(maxsize=512)
def _augmented(M: FreeModuleMap) -> _Augmented:
    return _Augmented(M)


def syzygies(M: FreeModuleMap) -> FreeModuleMap:
    """Generators of ker(M: A^cols -> A^rows), as the columns of a matrix."""
    if M.cols == 0:
        return FreeModuleMap.zero(M.ring, 0, 0)
    if M.rows == 0:
        return FreeModuleMap.identity(M.ring, M.cols)
    cols = _augmented(M).kernel_columns()
    return FreeModuleMap.from_columns(M.ring, cols, M.cols)


def lift(M: FreeModuleMap, v: Sequence[Polynomial]) -> list[Polynomial] | None:
    """Solve M u = v exactly (modulo ring relations); None when no solution exists."""
    v = [M.ring(a) for a in v]
    if len(v) != M.rows:
        raise ValueError(f"right-hand side has length {len(v)}, expected {M.rows}")
    if M.cols == 0:
        return [] if all(reduce_poly(a).is_zero() for a in v) else None
    return _augmented(M).lift(v)


def lift_matrix(M: FreeModuleMap, V: FreeModuleMap) -> FreeModuleMap | None:
    """Solve M U = V column by column."""
    cols = []
    for c in V.columns():
        u = lift(M, c)
        if u is None:
            return None
        cols.append(u)
    return FreeModuleMap.from_columns(M.ring, cols, M.cols)


def homology(d_in: FreeModuleMap, d_out: FreeModuleMap) -> ModulePresentation:
    """Presentation of ker(d_out) / im(d_in).

    Generators are the syzygy columns of d_out; relations are the columns of
    d_in rewritten in those generators together with the syzygies among the
    generators themselves.
    """
    ring = d_out.ring
    if d_in.ring != ring:
        raise RingMismatch("d_in and d_out live over different rings")
    if d_in.rows != d_out.cols:
        raise ValueError(f"d_in has {d_in.rows} rows but d_out has {d_out.cols} columns")
    if d_in.cols and d_out.rows:
        bad = (d_out @ d_in).nonzero_entry()
        if bad is not None:
            i, j, a = bad
            raise ComplexError(f"d_out o d_in is nonzero at entry ({i}, {j}): {a}")
    K = syzygies(d_out)
    k = K.cols
    if k == 0:
        return ModulePresentation(ring, 0, FreeModuleMap.zero(ring, 0, 0))
    rel_cols = []
    for c in d_in.columns():
        if all(reduce_poly(a).is_zero() for a in c):
            continue
        u = lift(K, c)
        if u is None:
            raise ComplexError("image of d_in is not contained in ker(d_out)")
        rel_cols.append(u)
    rel_cols.extend(syzygies(K).columns())
    return ModulePresentation(ring, k, FreeModuleMap.from_columns(ring, rel_cols, k))


def q_dimension(M: ModulePresentation):
    """dim over QQ of coker(relations), or INFINITE."""
    if M.generators == 0:
        return 0
    G = M.groebner()
    total = 0
    for p in range(M.generators):
        d = count_standard_monomials(G.lead_monomials(p), M.ring.ngens)
        if d == INFINITE:
            return INFINITE
        total += d
    return total


def count_standard_monomials(leads: list[Monomial], n: int):
    """Number of monomials outside the monomial ideal generated by ``leads``."""
    if any(not any(m) for m in leads):
        return 0
    bounds = []
    for i in range(n):
        pure = [m[i] for m in leads if m[i] and all(a == 0 for k, a in enumerate(m) if k != i)]
        if not pure:
            return INFINITE
        bounds.append(min(pure))
    return _count(tuple(leads), tuple(bounds))


def _count(leads: tuple[Monomial, ...], bounds: tuple[int, ...]) -> int:
    # split on the last variable: sum over its exponent of counts in the rest
    n = len(bounds)
    if n == 0:
        return 0 if leads else 1
    total = 0
    for a in range(bounds[-1]):
        sub = tuple(m[:-1] for m in leads if m[-1] <= a)
        if any(not any(s) for s in sub):
            continue
        total += _count(_minimalize(sub), bounds[:-1])
    return total


def _minimalize(leads: tuple[Monomial, ...]) -> tuple[Monomial, ...]:
    uniq = sorted(set(leads), key=sum)
    out: list[Monomial] = []
    for m in uniq:
        if not any(_divides(o, m) for o in out):
            out.append(m)
    return tuple(out)


def standard_monomials(leads: list[Monomial], n: int) -> list[Monomial]:
    """Explicit list of standard monomials (finite staircases only)."""
    if count_standard_monomials(leads, n) == INFINITE:
        raise ValueError("staircase is infinite")
    if any(not any(m) for m in leads):
        return []
    bounds = [min(m[i] for m in leads if m[i] and sum(m) == m[i]) for i in range(n)]
    return [e for e in itertools.product(*(range(b) for b in bounds))
            if not any(_divides(m, e) for m in leads)]


def annihilator(M: ModulePresentation) -> GroebnerBasis:
    """Groebner basis of Ann(M), the intersection of the annihilators of the generators."""
    ring = M.ring
    k = M.generators
    R = M.relations
    # a * (1,...,1) in each diagonal copy must lie in im(R); stack one copy of R per generator
    ones_cols = []
    col = []
    for p in range(k):
        col.extend([ring.one() if q == p else ring.zero() for q in range(k)])
    ones_cols.append(col)
    blocks = []
    for p in range(k):
        for c in R.columns():
            v = [ring.zero()] * (k * k)
            v[p * k:(p + 1) * k] = c
            blocks.append(v)
    big = FreeModuleMap.from_columns(ring, ones_cols + blocks, k * k)
    S = syzygies(big)
    gens = [{(0, m): c for m, c in S[0, j].terms.items()} for j in range(S.cols)]
    return groebner(gens, ring, 1)
