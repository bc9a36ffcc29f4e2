"""Matrix factorizations: Z/2-graded curved complexes of free modules.

A factorization ``P = (p1: P1 -> P0, p0: P0 -> P1)`` over a ring A with
curvature W satisfies ``p1 p0 = W`` and ``p0 p1 = W``.  Sign conventions:

* ``shift`` swaps the pieces and negates both maps;
* ``dual`` sends (p1, p0) to (p1^T, -p0^T) with the ranks swapped, so it is
  an exact involution landing on curvature -W;
* ``external_tensor`` puts P0Q0, P1Q1 in even degree and P0Q1, P1Q0 in odd
  degree with differential ``dP x 1 + (-1)^{|a|} 1 x dQ``.
"""

from __future__ import annotations

from typing import Sequence

from .groebner import FreeModuleMap, ModulePresentation, reduce_poly
from .poly import Polynomial, Ring, RingMismatch, product_ring, variable_split


class CurvatureMismatch(ValueError):
    def __init__(self, where: str, entry: tuple[int, int], expected: Polynomial, found: Polynomial):
        self.where = where
        self.entry = entry
        self.expected = expected
        self.found = found
        super().__init__(f"{where} at entry {entry}: expected {expected}, found {found}")


class NotClosed(ValueError):
    pass


def _check_square(prod: FreeModuleMap, W: Polynomial, where: str) -> None:
    zero = W.ring.zero()
    for i in range(prod.rows):
        for j in range(prod.cols):
            expected = W if i == j else zero
            if not reduce_poly(prod[i, j] - expected).is_zero():
                raise CurvatureMismatch(where, (i, j), expected, prod[i, j])


class MatrixFactorization:
    """A pair of matrices (p1, p0) with both composites equal to W * id."""

    def __init__(self, p1: FreeModuleMap, p0: FreeModuleMap, W: Polynomial, check: bool = True):
        ring = W.ring
        if p1.ring != ring or p0.ring != ring:
            raise RingMismatch("p1, p0 and W must share a ring")
        if p1.rows != p0.cols or p1.cols != p0.rows:
            raise ValueError(f"incompatible shapes p1 {p1.shape}, p0 {p0.shape}")
        self.ring = ring
        self.W = W
        self.p1 = p1
        self.p0 = p0
        if check:
            self.verify()

    @classmethod
    def from_literals(cls, ring: Ring, W, p1: Sequence[Sequence], p0: Sequence[Sequence], check: bool = True):
        W = ring(W)
        m1 = _matrix(ring, p1, len(p0[0]) if p0 else 0, len(p0))
        m0 = _matrix(ring, p0, m1.cols, m1.rows)
        return cls(m1, m0, W, check)

    @property
    def rank_even(self) -> int:
        return self.p1.rows

    @property
    def rank_odd(self) -> int:
        return self.p1.cols

    @property
    def ranks(self) -> tuple[int, int]:
        return (self.rank_even, self.rank_odd)

    def verify(self) -> bool:
        """Raise CurvatureMismatch unless both composites equal W * id."""
        _check_square(self.p1 @ self.p0, self.W, "p1*p0")
        _check_square(self.p0 @ self.p1, self.W, "p0*p1")
        return True

    def differential(self) -> FreeModuleMap:
        """The odd endomorphism [[0, p1], [p0, 0]] on P0 + P1."""
        e, o = self.ranks
        return FreeModuleMap.block(self.ring, [
            [FreeModuleMap.zero(self.ring, e, e), self.p1],
            [self.p0, FreeModuleMap.zero(self.ring, o, o)],
        ])

    def identity(self) -> "CurvedMap":
        return CurvedMap(self, self, 0, FreeModuleMap.identity(self.ring, self.rank_even + self.rank_odd))

    def __eq__(self, other) -> bool:
        return (isinstance(other, MatrixFactorization) and self.W == other.W
                and self.p1 == other.p1 and self.p0 == other.p0)

    def __hash__(self) -> int:
        return hash((self.W, self.p1, self.p0))

    def __repr__(self) -> str:
        return f"MatrixFactorization(W={self.W}, ranks={self.ranks}, p1={self.p1.to_literals()}, p0={self.p0.to_literals()})"

    def to_json(self) -> dict:
        return {
            "ring": ring_to_json(self.ring),
            "W": str(self.W),
            "p1": self.p1.to_literals(),
            "p0": self.p0.to_literals(),
            "ranks": [self.rank_even, self.rank_odd],
        }

    @classmethod
    def from_json(cls, data: dict, check: bool = True) -> "MatrixFactorization":
        ring = ring_from_json(data["ring"])
        e, o = data.get("ranks", (len(data["p1"]), len(data["p0"])))
        W = ring(data["W"])
        p1 = _matrix(ring, data["p1"], e, o)
        p0 = _matrix(ring, data["p0"], o, e)
        return cls(p1, p0, W, check)


def _matrix(ring: Ring, rows: Sequence[Sequence], nrows: int, ncols: int) -> FreeModuleMap:
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise ValueError(f"matrix literal does not have shape {nrows}x{ncols}")
    return FreeModuleMap(ring, nrows, ncols, [[ring(a) for a in r] for r in rows])


def ring_to_json(ring: Ring) -> dict:
    return {
        "vars": list(ring.variables),
        "relations": [str(p) for p in ring.relation_polys()],
        "order": ring.order,
    }


def ring_from_json(data: dict) -> Ring:
    return Ring.of(data["vars"], data.get("relations", []), data.get("order", "grevlex"))


class CurvedMap:
    """A homogeneous map between factorizations, stored as one block matrix.

    ``matrix`` maps P0 + P1 to Q0 + Q1; for an even map the off-diagonal
    blocks vanish, for an odd map the diagonal blocks do.
    """

    def __init__(self, source: MatrixFactorization, target: MatrixFactorization, parity: int, matrix: FreeModuleMap):
        if source.ring != target.ring:
            raise RingMismatch("source and target live over different rings")
        if source.W != target.W:
            raise CurvatureMismatch("hom", (0, 0), source.W, target.W)
        se, so = source.ranks
        te, to = target.ranks
        if matrix.shape != (te + to, se + so):
            raise ValueError(f"map matrix has shape {matrix.shape}, expected {(te + to, se + so)}")
        parity %= 2
        for i in range(te + to):
            for j in range(se + so):
                if matrix[i, j] and ((i >= te) != (j >= se)) != bool(parity):
                    raise ValueError(f"entry ({i}, {j}) violates parity {parity}")
        self.source = source
        self.target = target
        self.parity = parity
        self.matrix = matrix

    @classmethod
    def from_blocks(cls, source, target, parity: int, f0: FreeModuleMap, f1: FreeModuleMap) -> "CurvedMap":
        """f0 is the block on P0, f1 the block on P1."""
        ring = source.ring
        se, so = source.ranks
        te, to = target.ranks
        z = FreeModuleMap.zero
        if parity % 2 == 0:
            M = FreeModuleMap.block(ring, [[f0, z(ring, te, so)], [z(ring, to, se), f1]])
        else:
            M = FreeModuleMap.block(ring, [[z(ring, te, se), f1], [f0, z(ring, to, so)]])
        return cls(source, target, parity, M)

    def blocks(self) -> tuple[FreeModuleMap, FreeModuleMap]:
        """(block on P0, block on P1)."""
        se, so = self.source.ranks
        te, to = self.target.ranks
        rows0 = range(te) if self.parity == 0 else range(te, te + to)
        rows1 = range(te, te + to) if self.parity == 0 else range(te)
        ring = self.source.ring
        f0 = FreeModuleMap(ring, len(rows0), se, [[self.matrix[i, j] for j in range(se)] for i in rows0])
        f1 = FreeModuleMap(ring, len(rows1), so, [[self.matrix[i, j] for j in range(se, se + so)] for i in rows1])
        return f0, f1

    def differential(self) -> "CurvedMap":
        """d f = q o f - (-1)^|f| f o p."""
        sign = -1 if self.parity == 0 else 1
        M = self.target.differential() @ self.matrix + (self.matrix @ self.source.differential()).scale(sign)
        return CurvedMap(self.source, self.target, self.parity + 1, M)

    def is_closed(self) -> bool:
        return self.differential().matrix.nonzero_entry() is None

    def compose(self, other: "CurvedMap") -> "CurvedMap":
        """self o other."""
        if other.target != self.source:
            raise ValueError("maps are not composable")
        return CurvedMap(other.source, self.target, self.parity + other.parity, self.matrix @ other.matrix)

    def __add__(self, other: "CurvedMap") -> "CurvedMap":
        if (other.source, other.target, other.parity) != (self.source, self.target, self.parity):
            raise ValueError("maps live in different Hom spaces")
        return CurvedMap(self.source, self.target, self.parity, self.matrix + other.matrix)

    def scale(self, c) -> "CurvedMap":
        return CurvedMap(self.source, self.target, self.parity, self.matrix.scale(c))

    def __eq__(self, other) -> bool:
        return (isinstance(other, CurvedMap) and self.parity == other.parity
                and self.source == other.source and self.target == other.target
                and self.matrix == other.matrix)

    def __repr__(self) -> str:
        return f"CurvedMap(parity={self.parity}, {self.matrix.to_literals()})"


# -- constructions ---------------------------------------------------------

def verify(P: MatrixFactorization) -> bool:
    return P.verify()


def shift(P: MatrixFactorization) -> MatrixFactorization:
    """P[1]: the pieces swap and both maps change sign."""
    return MatrixFactorization(-P.p0, -P.p1, P.W, check=False)


def direct_sum(P: MatrixFactorization, Q: MatrixFactorization) -> MatrixFactorization:
    if P.ring != Q.ring or P.W != Q.W:
        raise CurvatureMismatch("direct_sum", (0, 0), P.W, Q.W)
    return MatrixFactorization(_diag(P.p1, Q.p1), _diag(P.p0, Q.p0), P.W, check=False)


def _diag(a: FreeModuleMap, b: FreeModuleMap) -> FreeModuleMap:
    ring = a.ring
    entries = [list(r) + [ring.zero()] * b.cols for r in a.entries]
    entries += [[ring.zero()] * a.cols + list(r) for r in b.entries]
    return FreeModuleMap(ring, a.rows + b.rows, a.cols + b.cols, entries)


def cone(f: CurvedMap) -> MatrixFactorization:
    """Cone of a closed even map f: P -> Q, i.e. Q + P[1] with the map f glued in."""
    if f.parity != 0:
        raise ValueError("cone needs an even map")
    if not f.is_closed():
        raise NotClosed("the map is not closed in the Hom complex")
    P, Q = f.source, f.target
    ring = P.ring
    f0, f1 = f.blocks()
    z = FreeModuleMap.zero
    c1 = FreeModuleMap.block(ring, [[Q.p1, f0], [z(ring, P.rank_odd, Q.rank_odd), -P.p0]])
    c0 = FreeModuleMap.block(ring, [[Q.p0, f1], [z(ring, P.rank_even, Q.rank_even), -P.p1]])
    return MatrixFactorization(c1, c0, P.W)


def dual(P: MatrixFactorization) -> MatrixFactorization:
    """Hom(P, A) as a factorization of -W, with the pieces swapped."""
    return MatrixFactorization(P.p1.transpose(), -P.p0.transpose(), -P.W, check=False)


def external_tensor(P: MatrixFactorization, Q: MatrixFactorization, ring: Ring | None = None) -> MatrixFactorization:
    """P (x) Q over the product ring; curvature pi_1^* W_P + pi_2^* W_Q."""
    if ring is None:
        ring = product_ring(P.ring, Q.ring)
    elif ring.ngens != P.ring.ngens + Q.ring.ngens:
        raise RingMismatch("target ring must have one variable per factor variable")
    n1 = P.ring.ngens

    def left(M: FreeModuleMap) -> FreeModuleMap:
        return M.map_entries(lambda a: variable_split(a, ring, "first_factor"), ring)

    def right(M: FreeModuleMap) -> FreeModuleMap:
        return M.map_entries(lambda a: variable_split(a, ring, "second_factor", offset=n1), ring)

    p1, p0 = left(P.p1), left(P.p0)
    q1, q0 = right(Q.p1), right(Q.p0)
    I = FreeModuleMap.identity
    Pe, Po = P.ranks
    Qe, Qo = Q.ranks
    # even = (P0Q0, P1Q1), odd = (P0Q1, P1Q0)
    t1 = FreeModuleMap.block(ring, [
        [I(ring, Pe).kron(q1), p1.kron(I(ring, Qe))],
        [p0.kron(I(ring, Qo)), -I(ring, Po).kron(q0)],
    ])
    t0 = FreeModuleMap.block(ring, [
        [I(ring, Pe).kron(q0), p1.kron(I(ring, Qo))],
        [p0.kron(I(ring, Qe)), -I(ring, Po).kron(q1)],
    ])
    W = variable_split(P.W, ring, "first_factor") + variable_split(Q.W, ring, "second_factor", offset=n1)
    return MatrixFactorization(t1, t0, W)


def cokernel(P: MatrixFactorization) -> ModulePresentation:
    """coker(p1) as a module over A/(W)."""
    quotient = P.ring.with_relations([P.W])
    return ModulePresentation(quotient, P.rank_even, P.p1.map_entries(lambda a: Polynomial(quotient, a.terms), quotient))


def zero_object(ring: Ring, W: Polynomial) -> MatrixFactorization:
    return MatrixFactorization(FreeModuleMap.zero(ring, 0, 0), FreeModuleMap.zero(ring, 0, 0), W)
