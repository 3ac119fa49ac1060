"""Exact multivariate Laurent polynomials over the rationals.

A :class:`LaurentPolynomial` is an immutable map from integer exponent
vectors to nonzero :class:`fractions.Fraction` coefficients.  Exponent
vectors are dense tuples keyed by an explicit tuple of variable names (the
registry); binary operations take the union of the two registries.

Equality and hashing only look at the variables that actually occur, so
``x`` built over ``("x",)`` equals ``x`` built over ``("x", "y")``.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "LaurentPolynomial",
    "NotDivisibleError",
    "SubstitutionError",
    "symbols",
    "exact_divide",
    "substitute",
]

Exponent = tuple[int, ...]
Scalar = Union[int, Fraction]


class NotDivisibleError(ArithmeticError):
    """Raised when a quotient is not a Laurent polynomial."""


class SubstitutionError(ValueError):
    """Raised when a pole would be evaluated at a non-invertible value."""


def _int_terms(terms: Mapping[Exponent, Fraction]) -> dict | None:
    """Integer view of the coefficients, or ``None`` if some are not integers."""
    out = {}
    for e, c in terms.items():
        if c.denominator != 1:
            return None
        out[e] = c.numerator
    return out


def _to_fractions(terms: Mapping[Exponent, int]) -> dict[Exponent, Fraction]:
    return {e: Fraction(c) for e, c in terms.items() if c}


def _coerce_scalar(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    raise TypeError(f"coefficients must be rational, got {type(c).__name__}")


class LaurentPolynomial:
    """Immutable Laurent polynomial with rational coefficients.

    Parameters
    ----------
    terms : mapping
        Exponent tuple (one entry per variable) to coefficient.  Zero
        coefficients are dropped.
    variables : sequence of str
        Variable names, fixing the meaning of each exponent slot.
    """

    __slots__ = ("_vars", "_terms", "_key")

    def __init__(
        self,
        terms: Mapping[Exponent, Scalar] | None = None,
        variables: Sequence[str] = (),
    ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError(f"duplicate variable names in {variables}")
        n = len(variables)
        clean: dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != n:
                raise ValueError(f"exponent {exp} does not match {n} variables")
            c = _coerce_scalar(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self._vars = variables
        self._terms = clean
        self._key = None

    # -- constructors -------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict[Exponent, Fraction], variables: tuple[str, ...]):
        # trusted fast path: terms already clean
        obj = cls.__new__(cls)
        obj._vars = variables
        obj._terms = terms
        obj._key = None
        return obj

    @classmethod
    def constant(cls, c: Scalar, variables: Sequence[str] = ()) -> "LaurentPolynomial":
        variables = tuple(variables)
        return cls({(0,) * len(variables): c}, variables)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str] | None = None) -> "LaurentPolynomial":
        variables = (name,) if variables is None else tuple(variables)
        exp = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise ValueError(f"{name!r} not among {variables}")
        return cls({exp: 1}, variables)

    @classmethod
    def monomial(
        cls, exponents: Mapping[str, int], coeff: Scalar = 1, variables: Sequence[str] | None = None
    ) -> "LaurentPolynomial":
        if variables is None:
            variables = tuple(exponents)
        variables = tuple(variables)
        missing = set(exponents) - set(variables)
        if missing:
            raise ValueError(f"variables {sorted(missing)} not in registry")
        exp = tuple(exponents.get(v, 0) for v in variables)
        return cls({exp: coeff}, variables)

    # -- basic accessors ------------------------------------------------
    @property
    def variables(self) -> tuple[str, ...]:
        return self._vars

    @property
    def terms(self) -> dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_polynomial(self) -> bool:
        return all(e >= 0 for exp in self._terms for e in exp)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self._terms.values()), Fraction(0))

    def occurring_variables(self) -> tuple[str, ...]:
        used = [False] * len(self._vars)
        for exp in self._terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for v, u in zip(self._vars, used) if u)

    def min_exponents(self) -> dict[str, int]:
        """Per-variable minimum exponent over all terms (0 for the zero polynomial)."""
        if not self._terms:
            return {v: 0 for v in self._vars}
        mins = [min(col) for col in zip(*self._terms)] if self._vars else []
        return dict(zip(self._vars, mins))

    def degree_in(self, var: str) -> int:
        i = self._vars.index(var)
        return max((exp[i] for exp in self._terms), default=0)

    # -- registry alignment ---------------------------------------------
    def with_variables(self, variables: Sequence[str]) -> "LaurentPolynomial":
        """Re-express over a (super)set of variables."""
        variables = tuple(variables)
        if variables == self._vars:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        missing = [v for v in self.occurring_variables() if v not in pos]
        if missing:
            raise ValueError(f"variables {missing} occur but are missing from {variables}")
        index = [pos.get(v) for v in self._vars]
        out: dict[Exponent, Fraction] = {}
        n = len(variables)
        for exp, c in self._terms.items():
            new = [0] * n
            for i, e in zip(index, exp):
                if i is not None:
                    new[i] = e
            out[tuple(new)] = c
        return LaurentPolynomial._raw(out, variables)

    def _align(self, other: "LaurentPolynomial"):
        if self._vars == other._vars:
            return self, other
        seen = set(self._vars)
        union = self._vars + tuple(v for v in other._vars if v not in seen)
        return self.with_variables(union), other.with_variables(union)

    def _lift(self, other) -> "LaurentPolynomial":
        if isinstance(other, LaurentPolynomial):
            return other
        return LaurentPolynomial.constant(_coerce_scalar(other), self._vars)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self._align(other)
        out = dict(a._terms)
        for exp, c in b._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return LaurentPolynomial._raw(out, a._vars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial._raw({e: -c for e, c in self._terms.items()}, self._vars)

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        a, b = self._align(other)
        ia, ib = _int_terms(a._terms), _int_terms(b._terms)
        integral = ia is not None and ib is not None
        ta, tb = (ia, ib) if integral else (a._terms, b._terms)
        out: dict = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return LaurentPolynomial._raw(_to_fractions(out) if integral else {e: c for e, c in out.items() if c}, a._vars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise NotDivisibleError("only monomials have Laurent inverses")
            (exp, c), = self._terms.items()
            return LaurentPolynomial._raw(
                {tuple(k * e for e in exp): 1 / c ** (-k)}, self._vars
            )
        result = LaurentPolynomial.constant(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, LaurentPolynomial):
            return exact_divide(self, other)
        try:
            c = _coerce_scalar(other)
        except TypeError:
            return NotImplemented
        if not c:
            raise ZeroDivisionError("division by zero")
        return LaurentPolynomial._raw({e: v / c for e, v in self._terms.items()}, self._vars)

    def shift(self, exponents: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial with the given exponent vector."""
        exponents = tuple(exponents)
        return LaurentPolynomial._raw(
            {tuple(x + y for x, y in zip(e, exponents)): c for e, c in self._terms.items()},
            self._vars,
        )

    def diff(self, var: str) -> "LaurentPolynomial":
        """Formal partial derivative with respect to ``var``."""
        if var not in self._vars:
            return LaurentPolynomial._raw({}, self._vars)
        i = self._vars.index(var)
        out = {}
        for exp, c in self._terms.items():
            if exp[i]:
                new = exp[:i] + (exp[i] - 1,) + exp[i + 1 :]
                out[new] = c * exp[i]
        return LaurentPolynomial._raw(out, self._vars)

    # -- comparison -------------------------------------------------------
    def _sparse_key(self):
        if self._key is None:
            self._key = frozenset(
                (tuple((v, e) for v, e in zip(self._vars, exp) if e), c)
                for exp, c in self._terms.items()
            )
        return self._key

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            if self._vars == other._vars:
                return self._terms == other._terms
            return self._sparse_key() == other._sparse_key()
        try:
            c = _coerce_scalar(other)
        except TypeError:
            return NotImplemented
        return self == LaurentPolynomial.constant(c, self._vars)

    def __hash__(self):
        return hash(self._sparse_key())

    # -- rendering ----------------------------------------------------------
    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded-lex order: total degree descending, then lex descending."""
        return sorted(self._terms.items(), key=lambda t: (-sum(t[0]), tuple(-e for e in t[0])))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            factors = []
            for v, e in zip(self._vars, exp):
                if e == 1:
                    factors.append(v)
                elif e:
                    factors.append(f"{v}^{e}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPolynomial({str(self)!r})"

    # -- evaluation ---------------------------------------------------------
    def substitute(self, bindings: Mapping[str, "LaurentPolynomial | Scalar"]) -> "LaurentPolynomial":
        return substitute(self, bindings)

    def __call__(self, **bindings) -> "LaurentPolynomial":
        return substitute(self, bindings)


def symbols(names: str | Iterable[str]) -> tuple[LaurentPolynomial, ...]:
    """Variables sharing one registry, e.g. ``x, y = symbols("x y")``."""
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    names = tuple(names)
    return tuple(LaurentPolynomial.variable(v, names) for v in names)


def exact_divide(a: LaurentPolynomial, b: LaurentPolynomial) -> LaurentPolynomial:
    """Return ``q`` with ``a == b * q``, or raise :class:`NotDivisibleError`.

    Monomial content is split off both operands first; the remaining
    polynomials are divided by lex leading terms, which is exact because a
    polynomial with no monomial factor divides ``a`` in the Laurent ring iff
    it divides the monomial-free part of ``a`` in the polynomial ring.
    """
    if not isinstance(b, LaurentPolynomial):
        b = a._lift(b)
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    a, b = a._align(b)
    n = len(a._vars)
    if a.is_zero():
        return a
    if b.is_monomial():
        (eb, cb), = b._terms.items()
        return LaurentPolynomial._raw(
            {tuple(x - y for x, y in zip(e, eb)): c / cb for e, c in a._terms.items()}, a._vars
        )
    amin = tuple(min(col) for col in zip(*a._terms)) if n else ()
    bmin = tuple(min(col) for col in zip(*b._terms)) if n else ()
    a0 = a.shift(tuple(-e for e in amin))
    b0 = b.shift(tuple(-e for e in bmin))
    lead_e = max(b0._terms)
    ia, ib = _int_terms(a0._terms), _int_terms(b0._terms)
    # integer arithmetic stays exact when the leading coefficient is a unit
    integral = ia is not None and ib is not None and ib[lead_e] in (1, -1)
    rem = dict(ia if integral else a0._terms)
    bterms = list((ib if integral else b0._terms).items())
    lead_c = ib[lead_e] if integral else b0._terms[lead_e]
    # max-heap of exponents; stale entries are skipped on pop
    heap = [tuple(-x for x in e) for e in rem]
    heapq.heapify(heap)
    quot: dict = {}
    while rem:
        e = tuple(-x for x in heapq.heappop(heap))
        if e not in rem:
            continue
        d = tuple(x - y for x, y in zip(e, lead_e))
        if any(x < 0 for x in d):
            raise NotDivisibleError(f"{a} is not divisible by {b}")
        c = rem[e] * lead_c if integral else rem[e] / lead_c
        quot[d] = c
        for eb, cb in bterms:
            key = tuple(x + y for x, y in zip(eb, d))
            old = rem.get(key)
            s = (0 if old is None else old) - c * cb
            if s:
                rem[key] = s
                if old is None:
                    heapq.heappush(heap, tuple(-x for x in key))
            elif old is not None:
                del rem[key]
    shift = tuple(x - y for x, y in zip(amin, bmin))
    return LaurentPolynomial._raw(_to_fractions(quot) if integral else quot, a._vars).shift(shift)


def _is_invertible(value) -> bool:
    if isinstance(value, LaurentPolynomial):
        return value.is_monomial()
    return bool(value)


def substitute(
    f: LaurentPolynomial, bindings: Mapping[str, "LaurentPolynomial | Scalar"]
) -> LaurentPolynomial:
    """Replace variables by rationals or Laurent polynomials, exactly.

    Variables with a negative exponent somewhere in ``f`` must be bound to
    an invertible value (a nonzero rational or a unit monomial).
    """
    bound = [v for v in f.variables if v in bindings]
    if not bound:
        return f
    mins = f.min_exponents()
    for v in bound:
        if mins[v] < 0 and not _is_invertible(bindings[v]):
            raise SubstitutionError(f"variable {v!r} appears with negative exponent but is bound to {bindings[v]}")
    free = tuple(v for v in f.variables if v not in bindings)
    free_idx = [f.variables.index(v) for v in free]
    bound_idx = [(f.variables.index(v), v) for v in bound]
    values = {}
    for v in bound:
        val = bindings[v]
        values[v] = val if isinstance(val, LaurentPolynomial) else LaurentPolynomial.constant(val)
    cache: dict[tuple[str, int], LaurentPolynomial] = {}

    def power(v: str, e: int) -> LaurentPolynomial:
        if (v, e) not in cache:
            cache[(v, e)] = values[v] ** e
        return cache[(v, e)]

    # group by the bound part of the exponent to share work
    groups: dict[Exponent, dict[Exponent, Fraction]] = {}
    for exp, c in f.items():
        bkey = tuple(exp[i] for i, _ in bound_idx)
        fkey = tuple(exp[i] for i in free_idx)
        groups.setdefault(bkey, {})[fkey] = c
    result = LaurentPolynomial.constant(0, free)
    for bkey, rest in groups.items():
        factor = LaurentPolynomial.constant(1, free)
        for (_, v), e in zip(bound_idx, bkey):
            if e:
                factor = factor * power(v, e)
        result = result + factor * LaurentPolynomial._raw(rest, free)
    return result
