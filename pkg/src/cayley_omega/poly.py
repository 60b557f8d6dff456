"""Sparse multivariate polynomials over the integers in the indeterminates x[i,j].

A monomial is a tuple of ``((row, col), exponent)`` pairs sorted by variable,
with no zero exponents.  A polynomial maps monomials to nonzero ``int``
coefficients.  Instances are immutable; every operation returns a new value.

Terms are listed in lexicographic order on exponent vectors, variables ordered
by ``(row, col)``, largest first.  The constant term always comes last.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Tuple

VarId = Tuple[int, int]
Monomial = Tuple[Tuple[VarId, int], ...]

ONE_MONOMIAL: Monomial = ()

_SENTINEL = (float("inf"), float("inf"), 0)


class MissingVariableError(KeyError):
    """Raised by :meth:`Polynomial.evaluate` when the point lacks a variable."""


def monomial_key(mono: Monomial) -> tuple:
    """Sort key that puts lexicographically larger monomials first."""
    return tuple((i, j, -e) for (i, j), e in mono) + (_SENTINEL,)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_divide(a: Monomial, b: Monomial) -> Monomial | None:
    """Return ``a / b`` or ``None`` when ``b`` does not divide ``a``."""
    exps = dict(a)
    for v, e in b:
        left = exps.get(v, 0) - e
        if left < 0:
            return None
        if left:
            exps[v] = left
        else:
            del exps[v]
    return tuple(sorted(exps.items()))


def make_monomial(exponents: Mapping[VarId, int] | Iterable[Tuple[VarId, int]]) -> Monomial:
    items = exponents.items() if isinstance(exponents, Mapping) else exponents
    exps: dict[VarId, int] = {}
    for (i, j), e in items:
        if i < 1 or j < 1:
            raise ValueError(f"variable indices must be positive, got x[{i},{j}]")
        if e < 0:
            raise ValueError(f"negative exponent {e} for x[{i},{j}]")
        exps[(i, j)] = exps.get((i, j), 0) + e
    return tuple(sorted((v, e) for v, e in exps.items() if e))


class Polynomial:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean: dict[Monomial, int] = {}
        if terms:
            for mono, c in terms.items():
                mono = make_monomial(mono)
                c = clean.get(mono, 0) + int(c)
                if c:
                    clean[mono] = c
                else:
                    clean.pop(mono, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict[Monomial, int]) -> "Polynomial":
        # terms must already be canonical
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: int) -> "Polynomial":
        return cls._wrap({ONE_MONOMIAL: int(c)} if c else {})

    @classmethod
    def var(cls, i: int, j: int) -> "Polynomial":
        return cls._wrap({make_monomial([((i, j), 1)]): 1})

    @classmethod
    def term(cls, coeff: int, mono: Monomial) -> "Polynomial":
        return cls._wrap({mono: int(coeff)} if coeff else {})

    # -- inspection --

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Monomial) -> int:
        return self._terms.get(mono, 0)

    def monomials(self) -> list[Monomial]:
        return sorted(self._terms, key=monomial_key)

    def terms(self) -> Iterator[Tuple[Monomial, int]]:
        """Yield ``(monomial, coefficient)`` in canonical order."""
        for mono in self.monomials():
            yield mono, self._terms[mono]

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(sum(e for _, e in mono) for mono in self._terms)

    def variables(self) -> set[VarId]:
        return {v for mono in self._terms for v, _ in mono}

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    # -- arithmetic --

    def __neg__(self) -> "Polynomial":
        return Polynomial._wrap({m: -c for m, c in self._terms.items()})

    def __add__(self, other: "Polynomial | int") -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            c = out.get(m, 0) + c
            if c:
                out[m] = c
            else:
                del out[m]
        return Polynomial._wrap(out)

    __radd__ = __add__

    def __sub__(self, other: "Polynomial | int") -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "Polynomial":
        return Polynomial.const(other) - self

    def __mul__(self, other: "Polynomial | int") -> "Polynomial":
        if isinstance(other, int):
            if not other:
                return Polynomial()
            return Polynomial._wrap({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict[Monomial, int] = {}
        theirs = list(other._terms.items())
        for ma, ca in self._terms.items():
            for mb, cb in theirs:
                m = mono_mul(ma, mb)
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial._wrap({m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative powers are not polynomials")
        result = Polynomial.const(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    # -- calculus and evaluation --

    def partial_derivative(self, v: VarId) -> "Polynomial":
        out: dict[Monomial, int] = {}
        for mono, c in self._terms.items():
            exps = dict(mono)
            e = exps.get(v)
            if not e:
                continue
            if e == 1:
                del exps[v]
            else:
                exps[v] = e - 1
            m = tuple(sorted(exps.items()))
            out[m] = out.get(m, 0) + c * e
        return Polynomial._wrap({m: c for m, c in out.items() if c})

    def evaluate(self, point: Mapping[VarId, int]) -> int:
        total = 0
        for mono, c in self._terms.items():
            value = c
            for v, e in mono:
                try:
                    value *= point[v] ** e
                except KeyError:
                    raise MissingVariableError(f"no value for x[{v[0]},{v[1]}]") from None
            total += value
        return total


def add(p: Polynomial, q: Polynomial) -> Polynomial:
    return p + q


def mul(p: Polynomial, q: Polynomial) -> Polynomial:
    return p * q


def partial_derivative(p: Polynomial, v: VarId) -> Polynomial:
    return p.partial_derivative(v)


def evaluate(p: Polynomial, point: Mapping[VarId, int]) -> int:
    return p.evaluate(point)


def first_difference(p: Polynomial, q: Polynomial) -> Tuple[Monomial, int, int] | None:
    """First monomial (canonical order) where ``p`` and ``q`` disagree."""
    diff = p - q
    if diff.is_zero():
        return None
    mono = diff.monomials()[0]
    return mono, p.coefficient(mono), q.coefficient(mono)


# -- text format: ``c*x[i,j]^e*...`` terms joined by `` + `` --


def format_monomial(mono: Monomial) -> str:
    return "*".join(f"x[{i},{j}]" + (f"^{e}" if e != 1 else "") for (i, j), e in mono)


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for mono, c in p.terms():
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(format_monomial(mono))
        elif c == -1:
            parts.append("-" + format_monomial(mono))
        else:
            parts.append(f"{c}*{format_monomial(mono)}")
    return " + ".join(parts)


_FACTOR = re.compile(r"x\[(\d+),(\d+)\](?:\^(\d+))?\Z")
_COEFF = re.compile(r"-?\d+\Z")


def _parse_term(text: str) -> Tuple[Monomial, int]:
    coeff = 1
    factors = text.split("*")
    head = factors[0]
    if _COEFF.match(head):
        coeff = int(head)
        factors = factors[1:]
        if not factors:
            return ONE_MONOMIAL, coeff
    elif head.startswith("-"):
        coeff = -1
        factors[0] = head[1:]
    exps: list[Tuple[VarId, int]] = []
    for f in factors:
        m = _FACTOR.match(f)
        if m is None:
            raise ValueError(f"malformed factor {f!r} in term {text!r}")
        exps.append(((int(m[1]), int(m[2])), int(m[3] or 1)))
    return make_monomial(exps), coeff


def parse_polynomial(text: str) -> Polynomial:
    text = text.strip()
    if text == "0":
        return Polynomial()
    if not text:
        raise ValueError("empty polynomial text")
    terms: dict[Monomial, int] = {}
    for chunk in text.split(" + "):
        mono, c = _parse_term(chunk.strip())
        terms[mono] = terms.get(mono, 0) + c
    return Polynomial(terms)
