"""Building factorizations from modules on the zero fiber.

* ``stabilize``: a length-one resolution 0 -> Q1 -> Q0 -> F -> 0 of a module
  killed by W gives the factorization (q1, q0) with q0 the homotopy W = q1 q0.
* ``koszul_stab``: the exterior-algebra factorization of the residue field.
* ``diagonal_mf``: the Koszul factorization of W(x) - W(x') on the sequence
  x_i - x'_i, which stabilizes the diagonal.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .curved import MatrixFactorization, cokernel
from .groebner import FreeModuleMap, ModulePresentation, lift_matrix
from .poly import Polynomial, Ring, product_ring, variable_decompose, variable_split


class LiftFailed(ValueError):
    pass


class PresentationMismatch(ValueError):
    pass


def exterior_basis(n: int) -> tuple[list[tuple[int, ...]], list[tuple[int, ...]]]:
    """Subsets of range(n) of even and of odd size, ordered by (size, lex)."""
    even, odd = [], []
    for q in range(n + 1):
        (even if q % 2 == 0 else odd).extend(combinations(range(n), q))
    return even, odd


def contract(i: int, S: tuple[int, ...]):
    """iota_i(e_S) as (sign, S minus i), or None."""
    if i not in S:
        return None
    j = S.index(i)
    return (-1) ** j, S[:j] + S[j + 1:]


def wedge(i: int, S: tuple[int, ...]):
    """e_i ^ e_S as (sign, S plus i), or None."""
    if i in S:
        return None
    before = sum(1 for s in S if s < i)
    return (-1) ** before, tuple(sorted(S + (i,)))


def koszul_mf(ring: Ring, W: Polynomial, contract_by: Sequence[Polynomial], wedge_by: Sequence[Polynomial]) -> MatrixFactorization:
    """Factorization sum_i a_i iota_i + b_i e_i^ on the exterior algebra.

    Needs sum a_i b_i = W.  P0 is the even part, P1 the odd part, so
    coker(p1) is A/(a_1, ..., a_n) in the bottom exterior degree.
    """
    n = len(contract_by)
    if len(wedge_by) != n:
        raise ValueError("need as many wedge coefficients as contraction coefficients")
    even, odd = exterior_basis(n)

    def matrix(src: list, dst: list) -> FreeModuleMap:
        index = {S: k for k, S in enumerate(dst)}
        entries = [[ring.zero() for _ in src] for _ in dst]
        for col, S in enumerate(src):
            for i in range(n):
                for op, coeff in ((contract, contract_by[i]), (wedge, wedge_by[i])):
                    if not coeff:
                        continue
                    hit = op(i, S)
                    if hit is None:
                        continue
                    sign, T = hit
                    row = index[T]
                    entries[row][col] = entries[row][col] + coeff.scale(sign)
        return FreeModuleMap(ring, len(dst), len(src), entries)

    return MatrixFactorization(matrix(odd, even), matrix(even, odd), W)


def koszul_stab(W: Polynomial) -> MatrixFactorization:
    """Koszul stabilization of the residue field at the origin."""
    ring = W.ring
    parts = dict(variable_decompose(W))
    ws = [parts.get(i, ring.zero()) for i in range(ring.ngens)]
    return koszul_mf(ring, W, ring.gens(), ws)


def difference_quotients(W: Polynomial, ring: Ring | None = None) -> tuple[Ring, Polynomial, list[Polynomial]]:
    """(ring, W~, [W_1, ..., W_n]) with W~ = W(x) - W(x') = sum (x_i - x'_i) W_i.

    Step i replaces x_i by x'_i with x'_1..x'_{i-1} already substituted.
    """
    base = W.ring
    n = base.ngens
    if ring is None:
        ring = product_ring(base)
    quotients: list[dict] = [{} for _ in range(n)]
    for e, c in W.terms.items():
        for i in range(n):
            k = e[i]
            if not k:
                continue
            # (x_i^k - x'_i^k) / (x_i - x'_i) = sum_j x_i^j x'_i^(k-1-j)
            for j in range(k):
                left = [0] * n
                right = [0] * n
                for a in range(n):
                    if a < i:
                        right[a] = e[a]
                    elif a > i:
                        left[a] = e[a]
                left[i] = j
                right[i] = k - 1 - j
                m = tuple(left) + tuple(right)
                s = quotients[i].get(m, Fraction(0)) + c
                if s:
                    quotients[i][m] = s
                else:
                    quotients[i].pop(m, None)
    Ws = [Polynomial(ring, q) for q in quotients]
    Wt = variable_split(W, ring, "first_factor") - variable_split(W, ring, "second_factor")
    return ring, Wt, Ws


def diagonal_mf(W: Polynomial) -> MatrixFactorization:
    """Finite-rank factorization of W(x) - W(x') whose cokernel is the diagonal."""
    if W.constant_term():
        raise ValueError("W must vanish at the origin")
    ring, Wt, Ws = difference_quotients(W)
    n = W.ring.ngens
    diffs = [ring.gen(i) - ring.gen(n + i) for i in range(n)]
    return koszul_mf(ring, Wt, diffs, Ws)


def stabilize(F: ModulePresentation, q1: FreeModuleMap, W: Polynomial | None = None) -> MatrixFactorization:
    """Factorization (q1, q0) from a resolution 0 -> A^r --q1--> A^r -> F -> 0.

    ``F`` is a module over A/(W); ``q1`` is a square matrix over A whose
    cokernel, read over A/(W), must present the same submodule as F.
    """
    ring = q1.ring
    if W is None:
        rels = F.ring.relation_polys()
        if len(rels) != 1:
            raise ValueError("pass W explicitly when the module's ring does not have exactly one relation")
        W = Polynomial(ring, rels[0].terms)
    W = ring(W) if not isinstance(W, Polynomial) else Polynomial(ring, W.terms)
    if q1.rows != q1.cols:
        raise ValueError("q1 must be square (an injective map between free modules of equal rank)")
    if F.generators != q1.rows:
        raise PresentationMismatch(f"F has {F.generators} generators but q1 has {q1.rows} rows")
    quotient = ring.with_relations([W])
    ours = ModulePresentation(quotient, q1.rows, q1.map_entries(lambda a: Polynomial(quotient, a.terms), quotient))
    theirs = F.over(quotient) if F.ring != quotient else F
    if ours.groebner() != theirs.groebner():
        raise PresentationMismatch("coker(q1) over A/(W) does not match the given module")
    q0 = lift_matrix(q1, FreeModuleMap.scalar(ring, q1.rows, W))
    if q0 is None:
        raise LiftFailed("W * id does not factor through q1: F is not killed by W or q1 is not a resolution")
    return MatrixFactorization(q1, q0, W)


def stabilize_cyclic(W: Polynomial, generators: Sequence[Polynomial]) -> MatrixFactorization:
    """Stabilize A/(f) for a single generator f dividing W."""
    if len(generators) != 1:
        raise ValueError("only principal ideals have a length-one resolution by a 1x1 matrix")
    ring = W.ring
    q1 = FreeModuleMap.from_rows(ring, [[generators[0]]])
    quotient = ring.with_relations([W])
    F = ModulePresentation(quotient, 1, q1.map_entries(lambda a: Polynomial(quotient, a.terms), quotient))
    return stabilize(F, q1, W)


__all__ = [
    "LiftFailed",
    "PresentationMismatch",
    "cokernel",
    "contract",
    "diagonal_mf",
    "difference_quotients",
    "exterior_basis",
    "koszul_mf",
    "koszul_stab",
    "stabilize",
    "stabilize_cyclic",
    "wedge",
]
