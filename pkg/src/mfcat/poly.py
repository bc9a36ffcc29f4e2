"""Exact multivariate polynomials over QQ and the rings they live in.

A polynomial is an immutable map ``exponent tuple -> Fraction`` tied to a
:class:`Ring`.  Rings carry an ordered list of variable names, an optional
list of relations (quotients and localizations are both expressed this way,
``A_f = A[t]/(t*f - 1)``) and a monomial order.

Arithmetic is always carried out in the free polynomial ring; reduction
modulo the relations is the job of :mod:`mfcat.groebner`.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Monomial = tuple[int, ...]
Terms = dict[Monomial, Fraction]

ORDERS = ("grevlex", "lex")


class RingMismatch(ValueError):
    pass


class ParseError(ValueError):
    pass


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and rational strings; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        if not re.fullmatch(r"\s*-?\d+(\s*/\s*\d+)?\s*", value):
            raise ParseError(f"not a rational literal: {value!r}")
        return Fraction(value.replace(" ", ""))
    raise TypeError(f"unsupported coefficient {value!r} (only exact rationals)")


def grevlex_key(e: Monomial):
    return (sum(e), tuple(-a for a in reversed(e)))


def lex_key(e: Monomial):
    return e


def grevlex_heap_key(e: Monomial):
    # ascending order of this key == descending grevlex
    return (-sum(e),) + tuple(reversed(e))


def lex_heap_key(e: Monomial):
    return tuple(-a for a in e)


@dataclass(frozen=True)
class Ring:
    """QQ[variables] / (relations) with a fixed monomial order.

    ``relations`` is stored as a tuple of frozen term tuples so that rings
    hash and compare by value.
    """

    variables: tuple[str, ...]
    relations: tuple[tuple[tuple[Monomial, Fraction], ...], ...] = ()
    order: str = "grevlex"
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"duplicate variable names in {self.variables}")
        for name in self.variables:
            if not _IDENT.fullmatch(name):
                raise ValueError(f"bad variable name {name!r}")
        if self.order not in ORDERS:
            raise ValueError(f"unknown monomial order {self.order!r}")
        n = len(self.variables)
        rels = []
        for rel in self.relations:
            if isinstance(rel, Polynomial):
                if rel.ring.variables != self.variables:
                    raise RingMismatch("relation lives in a different ring")
                rel = rel.terms
            items = tuple(sorted((tuple(m), as_rational(c)) for m, c in dict(rel).items() if c))
            if any(len(m) != n for m, _ in items):
                raise ValueError("relation arity does not match the variables")
            if items:
                rels.append(items)
        object.__setattr__(self, "relations", tuple(rels))
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.variables)})

    @classmethod
    def of(cls, variables: Iterable[str] | str, relations: Sequence = (), order: str = "grevlex") -> "Ring":
        """Build a ring, parsing string relations against the variables."""
        if isinstance(variables, str):
            variables = [v.strip() for v in variables.split(",") if v.strip()]
        base = cls(tuple(variables), (), order)
        rels = [parse_polynomial(r, base) if isinstance(r, str) else r for r in relations]
        return cls(tuple(variables), tuple(rels), order)

    @property
    def ngens(self) -> int:
        return len(self.variables)

    @property
    def free(self) -> "Ring":
        """The same variables without relations."""
        return Ring(self.variables, (), self.order)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r} in ring {self.variables}") from None

    def key(self, e: Monomial):
        return grevlex_key(e) if self.order == "grevlex" else lex_key(e)

    def heap_key(self, e: Monomial):
        return grevlex_heap_key(e) if self.order == "grevlex" else lex_heap_key(e)

    def relation_polys(self) -> list["Polynomial"]:
        return [Polynomial(self.free, dict(r)) for r in self.relations]

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = as_rational(c)
        return Polynomial(self, {(0,) * self.ngens: c} if c else {})

    def gen(self, i: int | str) -> "Polynomial":
        if isinstance(i, str):
            i = self.index(i)
        e = [0] * self.ngens
        e[i] = 1
        return Polynomial(self, {tuple(e): Fraction(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.ngens)]

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatch(f"{value.ring} is not {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        return self.const(value)

    def with_relations(self, extra: Sequence["Polynomial"]) -> "Ring":
        rels = list(self.relation_polys())
        for p in extra:
            if p.ring.variables != self.variables:
                raise RingMismatch("relation lives in a different ring")
            rels.append(Polynomial(self.free, p.terms))
        return Ring(self.variables, tuple(rels), self.order)

    def __str__(self) -> str:
        base = f"QQ[{', '.join(self.variables)}]"
        if self.relations:
            rels = ", ".join(str(p) for p in self.relation_polys())
            base += f"/({rels})"
        return base


class Polynomial:
    """Immutable polynomial with exact rational coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: Mapping[Monomial, Fraction] | None = None):
        self.ring = ring
        self.terms: Terms = {m: c for m, c in (terms or {}).items() if c}
        self._hash = None

    # -- basic structure -------------------------------------------------
    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * self.ring.ngens, Fraction(0))

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        """Terms in decreasing monomial order (the canonical form)."""
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial | None:
        if not self.terms:
            return None
        return max(self.terms, key=self.ring.key)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == ({(0,) * self.ring.ngens: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    # -- arithmetic ------------------------------------------------------
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatch(f"cannot combine {self.ring} and {other.ring}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.ring.const(other)
        raise TypeError(f"cannot combine polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return Polynomial(self.ring, mul_terms(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = as_rational(c)
        return Polynomial(self.ring, {m: c * v for m, v in self.terms.items()})

    def arith(self, other: "Polynomial", op: str) -> "Polynomial":
        if not isinstance(other, Polynomial) or other.ring != self.ring:
            raise RingMismatch("operands must share a ring")
        if op == "add":
            return self + other
        if op == "sub":
            return self - other
        if op == "mul":
            return self * other
        raise ValueError(f"unknown op {op!r}")

    def diff(self, var: int | str) -> "Polynomial":
        return partial_derivative(self, var)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        vals = [as_rational(v) for v in point]
        for m, c in self.terms.items():
            t = c
            for v, a in zip(vals, m):
                if a:
                    t *= v**a
            total += t
        return total

    def substitute(self, images: Sequence["Polynomial"], target: Ring) -> "Polynomial":
        """Ring map sending variable i to ``images[i]`` (polynomials in target)."""
        if len(images) != self.ring.ngens:
            raise ValueError("need one image per variable")
        out = target.zero()
        powers: dict[tuple[int, int], Polynomial] = {}
        for m, c in self.sorted_terms():
            t = target.const(c)
            for i, a in enumerate(m):
                if a:
                    if (i, a) not in powers:
                        powers[(i, a)] = images[i] ** a
                    t = t * powers[(i, a)]
            out = out + t
        return out

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            mono = "*".join(
                (v if a == 1 else f"{v}^{a}") for v, a in zip(self.ring.variables, m) if a
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def mul_terms(a: Mapping[Monomial, Fraction], b: Mapping[Monomial, Fraction]) -> Terms:
    out: Terms = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(m, 0) + ca * cb
            if s:
                out[m] = s
            else:
                out.pop(m, None)
    return out


# -- operations ------------------------------------------------------------

def arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    return a.arith(b, op)


def partial_derivative(p: Polynomial, var: int | str) -> Polynomial:
    i = p.ring.index(var) if isinstance(var, str) else var
    if not 0 <= i < p.ring.ngens:
        raise IndexError(f"variable index {i} out of range")
    out: Terms = {}
    for m, c in p.terms.items():
        if m[i]:
            e = list(m)
            e[i] -= 1
            out[tuple(e)] = c * m[i]
    return Polynomial(p.ring, out)


def gradient(p: Polynomial) -> list[Polynomial]:
    return [partial_derivative(p, i) for i in range(p.ring.ngens)]


def product_ring(ring: Ring, other: Ring | None = None) -> Ring:
    """Ring on two disjoint blocks of variables.

    With ``other`` omitted the second block is a primed copy of ``ring``
    (``x -> x'``), which is the ring of ``X x X`` used for the diagonal.
    Relations of both factors are carried over.
    """
    if other is None:
        second = tuple(v + "'" for v in ring.variables)
        other = Ring(second, tuple(dict(r) for r in ring.relations), ring.order)
    clash = set(ring.variables) & set(other.variables)
    if clash:
        raise RingMismatch(f"variable collision: {sorted(clash)}")
    n1, n2 = ring.ngens, other.ngens
    rels = [{m + (0,) * n2: c for m, c in r} for r in ring.relations]
    rels += [{(0,) * n1 + m: c for m, c in r} for r in other.relations]
    return Ring(ring.variables + other.variables, tuple(rels), ring.order)


def variable_split(p: Polynomial, target: Ring, which: str = "first_factor", offset: int | None = None) -> Polynomial:
    """Pull ``p`` back along one projection of a product ring.

    ``first_factor`` places variable i at index i, ``second_factor`` at
    ``n + i`` (n = arity of p's ring) unless ``offset`` overrides it.
    """
    n = p.ring.ngens
    if which == "first_factor":
        shift = 0 if offset is None else offset
    elif which == "second_factor":
        shift = n if offset is None else offset
    else:
        raise ValueError(f"which must be first_factor or second_factor, not {which!r}")
    if shift + n > target.ngens:
        raise RingMismatch(f"target ring of arity {target.ngens} cannot hold block [{shift}, {shift + n})")
    pad_after = target.ngens - shift - n
    return Polynomial(target, {(0,) * shift + m + (0,) * pad_after: c for m, c in p.terms.items()})


def divide_by_variable(p: Polynomial, i: int) -> tuple[Polynomial, Polynomial]:
    """Split p = x_i * q + r with no term of r divisible by x_i."""
    q: Terms = {}
    r: Terms = {}
    for m, c in p.terms.items():
        if m[i]:
            e = list(m)
            e[i] -= 1
            q[tuple(e)] = c
        else:
            r[m] = c
    return Polynomial(p.ring, q), Polynomial(p.ring, r)


def variable_decompose(W: Polynomial) -> list[tuple[int, Polynomial]]:
    """Write W = sum x_i * w_i by dividing by x_1, then x_2 on the remainder, ...

    Only nonzero quotients are returned.
    """
    if W.constant_term():
        raise ValueError(f"W has nonzero constant term {W.constant_term()}")
    out = []
    rest = W
    for i in range(W.ring.ngens):
        q, rest = divide_by_variable(rest, i)
        if q:
            out.append((i, q))
    assert rest.is_zero()
    return out


def localize(ring: Ring, f: Polynomial, name: str | None = None) -> tuple[Ring, Polynomial]:
    """Return (A[t]/(t*f - 1), t) for the basic open D(f)."""
    if f.ring.variables != ring.variables:
        raise RingMismatch("denominator lives in a different ring")
    if name is None:
        k = 0
        while f"t{k}" in ring.variables:
            k += 1
        name = f"t{k}"
    big = Ring(ring.variables + (name,), (), ring.order)
    lifted = [variable_split(Polynomial(ring.free, dict(r)), big.free) for r in ring.relations]
    t = big.free.gen(name)
    rel = t * variable_split(Polynomial(ring.free, f.terms), big.free) - 1
    out = Ring(big.variables, tuple(p.terms for p in lifted + [rel]), ring.order)
    return out, out.gen(name)


def embed(p: Polynomial, target: Ring) -> Polynomial:
    """Include p into a ring whose variable list extends p's (by name)."""
    idx = [target.index(v) for v in p.ring.variables]
    out: Terms = {}
    for m, c in p.terms.items():
        e = [0] * target.ngens
        for j, a in zip(idx, m):
            e[j] = a
        out[tuple(e)] = c
    return Polynomial(target, out)


# -- literal parser ----------------------------------------------------------

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*'*")
_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*'*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
    return tokens


class _Parser:
    # expr := term (('+'|'-') term)* ; term := unary (('*'|'/') unary)*
    # unary := '-' unary | '+' unary | power ; power := atom ('^' int)?

    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring.free
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, v = self.take()
        if v != value:
            raise ParseError(f"expected {value!r} in {self.text!r}")

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial literal")
        p = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            _, op = self.take()
            q = self.unary()
            if op == "*":
                p = p * q
            else:
                if not q.is_constant() or q.is_zero():
                    raise ParseError(f"division only by nonzero constants in {self.text!r}")
                p = p.scale(1 / q.constant_term())
        return p

    def unary(self) -> Polynomial:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, v = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            base = base ** int(v)
        return base

    def atom(self) -> Polynomial:
        kind, v = self.take()
        if kind == "num":
            return self.ring.const(int(v))
        if kind == "name":
            if v not in self.ring.variables:
                raise ParseError(f"unknown variable {v!r} (ring has {list(self.ring.variables)})")
            return self.ring.gen(v)
        if v == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {v!r} in {self.text!r}")


def parse_polynomial(text: str, ring: Ring) -> Polynomial:
    """Parse a literal such as ``"x^3 - 3/2*x*y + (y+1)^2"`` in ``ring``."""
    p = _Parser(text, ring).parse()
    return Polynomial(ring, p.terms)
