"""Hochschild (co)homology of MF(A, W) computed two independent ways.

Polyvector route: the complex of polyvector fields with differential
[W, -], which on A^n is contraction with dW (a Koszul complex on the
partials).  Forms route, for homology: (Omega^*, dW ^ -).  Diagonal route:
End of the stabilized diagonal over A (x) A with curvature W(x) - W(x').
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .cech import CechCover, cech_hyper, sheafify
from .curved import MatrixFactorization
from .groebner import FreeModuleMap, ModulePresentation, q_dimension
from .homcx import ExtResult, Z2Complex, dim_to_json, ext
from .poly import Polynomial, gradient
from .stabilization import contract, diagonal_mf, exterior_basis, wedge


def _exterior_operator(W: Polynomial, op) -> Z2Complex:
    ring = W.ring
    n = ring.ngens
    dW = gradient(W)
    even, odd = exterior_basis(n)

    def matrix(src, dst) -> FreeModuleMap:
        index = {S: k for k, S in enumerate(dst)}
        entries = [[ring.zero() for _ in src] for _ in dst]
        for col, S in enumerate(src):
            for i in range(n):
                hit = op(i, S)
                if hit is None or not dW[i]:
                    continue
                sign, T = hit
                entries[index[T]][col] = entries[index[T]][col] + dW[i].scale(sign)
        return FreeModuleMap(ring, len(dst), len(src), entries)

    return Z2Complex(ring, len(even), len(odd), matrix(even, odd), matrix(odd, even))


def polyvector_complex(W: Polynomial) -> Z2Complex:
    """Lambda^q T with contraction by dW; Lambda^q sits in parity q mod 2."""
    return _exterior_operator(W, contract)


def forms_complex(W: Polynomial) -> Z2Complex:
    """Omega^q with dW ^ -; Omega^q sits in parity q mod 2."""
    return _exterior_operator(W, wedge)


def jacobian_presentation(W: Polynomial) -> ModulePresentation:
    ring = W.ring
    return ModulePresentation(ring, 1, FreeModuleMap.from_rows(ring, [gradient(W)]))


def milnor_number(W: Polynomial):
    """dim_QQ of QQ[x]/(dW), by counting standard monomials."""
    return q_dimension(jacobian_presentation(W))


@dataclass
class HHResult:
    route: str
    result: ExtResult
    charts: dict = field(default_factory=dict)

    @property
    def dims(self) -> tuple:
        return self.result.dims

    def report(self) -> dict:
        out = self.result.report()
        out["route"] = self.route
        return out


def _hyper(cx: Z2Complex, cover: CechCover | None, route: str) -> HHResult:
    cx.check()
    if cover is None or (cover.size == 1 and cover.denominators[0] == cover.ambient.one()):
        return HHResult(route, cx.homology())
    charts, restrictions = sheafify(cx, cover)
    return HHResult(route + "+cech", cech_hyper(charts, restrictions, cover).total)


def hh_cohomology(W: Polynomial, cover: CechCover | None = None) -> HHResult:
    """Hypercohomology of (Lambda^* T, [W, -])."""
    return _hyper(polyvector_complex(W), cover, "polyvector")


def hh_homology(W: Polynomial, cover: CechCover | None = None) -> HHResult:
    """Hypercohomology of (Omega^*, dW ^ -)."""
    return _hyper(forms_complex(W), cover, "forms")


def hh_via_diagonal(W: Polynomial) -> HHResult:
    """End of the stabilized diagonal over the product ring."""
    D = diagonal_mf(W)
    return HHResult("diagonal", ext(D, D))


@dataclass
class CompareReport:
    W: str
    mu: object
    polyvector: tuple
    diagonal: tuple
    passed: bool
    timings: dict
    details: dict = field(default_factory=dict)

    def payload(self) -> dict:
        out = {
            "W": self.W,
            "mu": dim_to_json(self.mu),
            "polyvector": [dim_to_json(d) for d in self.polyvector],
            "diagonal": [dim_to_json(d) for d in self.diagonal],
            "pass": self.passed,
        }
        out.update(self.details)
        return out


def compare_hh(W: Polynomial, cover: CechCover | None = None) -> CompareReport:
    """Both routes to HH^*(MF(A, W)); passes when the per-parity dimensions agree."""
    timings = {}
    t = time.perf_counter()
    poly = hh_cohomology(W, cover)
    timings["polyvector"] = time.perf_counter() - t
    t = time.perf_counter()
    diag = hh_via_diagonal(W)
    timings["diagonal"] = time.perf_counter() - t
    t = time.perf_counter()
    mu = milnor_number(W)
    timings["milnor"] = time.perf_counter() - t
    passed = tuple(poly.dims) == tuple(diag.dims)
    details = {}
    if not passed:
        details = {"polyvector_presentations": _presentations(poly.result),
                   "diagonal_presentations": _presentations(diag.result)}
    return CompareReport(str(W), mu, poly.dims, diag.dims, passed, timings, details)


def _presentations(r: ExtResult) -> dict:
    return {
        "even": {"generators": r.even.generators, "relations": r.even.relations.to_literals()},
        "odd": {"generators": r.odd.generators, "relations": r.odd.relations.to_literals()},
    }


@dataclass
class CYReport:
    n: int
    forward: tuple
    backward: tuple
    checks: list
    passed: bool

    def payload(self) -> dict:
        return {
            "n": self.n,
            "ext_PQ": [dim_to_json(d) for d in self.forward],
            "ext_QP": [dim_to_json(d) for d in self.backward],
            "checks": self.checks,
            "pass": self.passed,
        }


def cy_symmetry_check(P: MatrixFactorization, Q: MatrixFactorization, n: int | None = None) -> CYReport:
    """dim Ext^i(P, Q) == dim Ext^{i+n}(Q, P) for i in {0, 1}."""
    if n is None:
        n = P.ring.ngens
    fwd = ext(P, Q).dims
    bwd = ext(Q, P).dims
    checks = []
    for i in (0, 1):
        j = (i + n) % 2
        checks.append({"i": i, "j": j, "lhs": dim_to_json(fwd[i]), "rhs": dim_to_json(bwd[j]), "ok": fwd[i] == bwd[j]})
    return CYReport(n, fwd, bwd, checks, all(c["ok"] for c in checks))
