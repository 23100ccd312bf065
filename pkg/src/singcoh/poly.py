"""Sparse multivariate polynomials over exact rationals, with a parser.

Terms are stored as {exponent tuple: Fraction} over an alphabetically sorted
variable tuple, so equal polynomials over different declared variable sets
still compare equal.  Printing uses graded lex order (total degree first,
then exponents) and round-trips through ``parse_polynomial``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from .errors import DomainError, ParseError

__all__ = ["Polynomial", "parse_polynomial"]

Rat = Union[int, Fraction]


class Polynomial:
    """Immutable polynomial with Fraction coefficients; no floats anywhere."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Iterable[str], terms: Mapping[tuple[int, ...], Rat]):
        vs = tuple(sorted(set(vars)))
        clean: dict[tuple[int, ...], Fraction] = {}
        for expo, coeff in terms.items():
            c = Fraction(coeff)
            if c == 0:
                continue
            if len(expo) != len(vs):
                raise DomainError("exponent tuple does not match variable count")
            clean[tuple(expo)] = c
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, *_):
        raise AttributeError("Polynomial is immutable")

    # -- constructors ----------------------------------------------------
    @staticmethod
    def zero(vars: Iterable[str] = ()) -> "Polynomial":
        return Polynomial(vars, {})

    @staticmethod
    def constant(value: Rat, vars: Iterable[str] = ()) -> "Polynomial":
        vs = tuple(sorted(set(vars)))
        return Polynomial(vs, {(0,) * len(vs): Fraction(value)})

    @staticmethod
    def variable(name: str, vars: Iterable[str] | None = None) -> "Polynomial":
        vs = tuple(sorted(set(vars))) if vars is not None else (name,)
        if name not in vs:
            raise DomainError(f"variable {name!r} not among {vs}")
        expo = tuple(1 if v == name else 0 for v in vs)
        return Polynomial(vs, {expo: Fraction(1)})

    # -- structure --------------------------------------------------------
    def support(self) -> dict[tuple[tuple[str, int], ...], Fraction]:
        """Variable-name keyed view; canonical across variable universes."""
        out = {}
        for expo, coeff in self.terms.items():
            key = tuple((v, k) for v, k in zip(self.vars, expo) if k)
            out[key] = coeff
        return out

    def variables_used(self) -> set[str]:
        used = set()
        for expo in self.terms:
            for v, k in zip(self.vars, expo):
                if k:
                    used.add(v)
        return used

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        zero = (0,) * len(self.vars)
        return self.terms.get(zero, Fraction(0))

    def as_constant(self) -> Fraction | None:
        """The value if the polynomial is constant, else None."""
        if not self.terms:
            return Fraction(0)
        if len(self.terms) == 1:
            (expo, coeff), = self.terms.items()
            if not any(expo):
                return coeff
        return None

    def as_scaled_variable(self) -> tuple[str, Fraction] | None:
        """(name, c) if the polynomial is exactly c * one variable, else None."""
        if len(self.terms) != 1:
            return None
        (expo, coeff), = self.terms.items()
        if sum(expo) != 1:
            return None
        name = self.vars[expo.index(1)]
        return name, coeff

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(sum(expo) for expo in self.terms)

    def linear_part(self) -> dict[str, Fraction]:
        out = {}
        for expo, coeff in self.terms.items():
            if sum(expo) == 1:
                out[self.vars[expo.index(1)]] = coeff
        return out

    # -- arithmetic -------------------------------------------------------
    def _aligned(self, other: "Polynomial") -> tuple[tuple[str, ...], dict, dict]:
        if self.vars == other.vars:
            return self.vars, self.terms, other.terms
        vs = tuple(sorted(set(self.vars) | set(other.vars)))
        return vs, _remap(self, vs), _remap(other, vs)

    def __add__(self, other):
        other = _coerce(other)
        vs, a, b = self._aligned(other)
        out = dict(a)
        for expo, coeff in b.items():
            out[expo] = out.get(expo, Fraction(0)) + coeff
        return Polynomial(vs, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        vs, a, b = self._aligned(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                key = tuple(i + j for i, j in zip(e1, e2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return Polynomial(vs, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise DomainError("polynomial power must be a non-negative integer")
        result = Polynomial.constant(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.as_constant() == Fraction(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.support() == other.support()

    def __hash__(self):
        if self._hash is None:
            h = hash(frozenset(self.support().items()))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # -- substitution -----------------------------------------------------
    def substitute(self, assignment: Mapping[str, Union[Rat, "Polynomial"]]) -> "Polynomial":
        """Replace variables by rationals or polynomials; others stay symbolic."""
        for name in assignment:
            if name not in self.vars:
                raise DomainError(f"cannot substitute unknown variable {name!r}")
        target_vars = set(self.vars) - set(assignment)
        for value in assignment.values():
            if isinstance(value, Polynomial):
                target_vars |= set(value.vars)
        result = Polynomial.zero(target_vars)
        for expo, coeff in self.terms.items():
            term = Polynomial.constant(coeff, target_vars)
            for v, k in zip(self.vars, expo):
                if not k:
                    continue
                value = assignment.get(v)
                if value is None:
                    term = term * Polynomial.variable(v, target_vars) ** k
                elif isinstance(value, Polynomial):
                    term = term * value ** k
                else:
                    term = term * Fraction(value) ** k
            result = result + term
        return result

    # -- exact division (used by fraction-free elimination) ---------------
    def exact_divide(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient self / divisor when the division is exact; raises otherwise."""
        if divisor.is_zero:
            raise DomainError("division by the zero polynomial")
        vs, num, den = self._aligned(divisor)
        remainder = dict(num)
        quotient: dict[tuple[int, ...], Fraction] = {}
        lead_d = _leading(den)
        while remainder:
            lead_r = _leading(remainder)
            qe = tuple(i - j for i, j in zip(lead_r, lead_d))
            if any(k < 0 for k in qe):
                raise DomainError("polynomial division is not exact")
            qc = remainder[lead_r] / den[lead_d]
            quotient[qe] = quotient.get(qe, Fraction(0)) + qc
            for e2, c2 in den.items():
                key = tuple(i + j for i, j in zip(qe, e2))
                val = remainder.get(key, Fraction(0)) - qc * c2
                if val:
                    remainder[key] = val
                else:
                    remainder.pop(key, None)
        return Polynomial(vs, quotient)

    # -- printing ----------------------------------------------------------
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)
        pieces = []
        for expo, coeff in items:
            factors = []
            for v, k in zip(self.vars, expo):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            mag = abs(coeff)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([_frac_str(mag)] + factors)
            else:
                body = _frac_str(mag)
            pieces.append(("-" if coeff < 0 else "+", body))
        sign, body = pieces[0]
        out = body if sign == "+" else "-" + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self})"


def _coerce(value) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    if isinstance(value, (int, Fraction)):
        return Polynomial.constant(value)
    raise TypeError(f"cannot use {type(value).__name__} as a polynomial")


def _remap(p: Polynomial, vs: tuple[str, ...]) -> dict[tuple[int, ...], Fraction]:
    index = {v: i for i, v in enumerate(vs)}
    out = {}
    for expo, coeff in p.terms.items():
        key = [0] * len(vs)
        for v, k in zip(p.vars, expo):
            key[index[v]] = k
        out[tuple(key)] = coeff
    return out


def _grlex_key(expo: tuple[int, ...]):
    return (sum(expo), expo)


def _leading(terms: dict[tuple[int, ...], Fraction]) -> tuple[int, ...]:
    return max(terms, key=_grlex_key)


def _frac_str(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


# --------------------------------------------------------------------------
# parser: +, -, *, ^ (also **), integer/rational literals, names, parentheses
# --------------------------------------------------------------------------

class _Tok:
    def __init__(self, kind, value, pos):
        self.kind = kind
        self.value = value
        self.pos = pos


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            num = int(text[i:j])
            # rational literal a/b, no spaces inside
            if j < n and text[j] == "/":
                k = j + 1
                if k >= n or not text[k].isdigit():
                    raise ParseError("expected digits after '/' in rational literal", j)
                end = k
                while end < n and text[end].isdigit():
                    end += 1
                den = int(text[k:end])
                if den == 0:
                    raise ParseError("zero denominator in rational literal", k)
                toks.append(_Tok("num", Fraction(num, den), i))
                i = end
            else:
                toks.append(_Tok("num", Fraction(num), i))
                i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(_Tok("name", text[i:j], i))
            i = j
            continue
        if ch == "*":
            if i + 1 < n and text[i + 1] == "*":
                toks.append(_Tok("^", "**", i))
                i += 2
            else:
                toks.append(_Tok("*", "*", i))
                i += 1
            continue
        if ch in "+-^()":
            toks.append(_Tok(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(_Tok("end", None, n))
    return toks


class _Parser:
    def __init__(self, toks: list[_Tok], variables: tuple[str, ...]):
        self.toks = toks
        self.i = 0
        self.variables = variables

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self, kind: str) -> _Tok:
        tok = self.toks[self.i]
        if tok.kind != kind:
            raise ParseError(f"expected {kind}, found {tok.value!r}", tok.pos)
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        p = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise ParseError(f"unexpected trailing {tok.value!r}", tok.pos)
        return p

    def expr(self) -> Polynomial:
        if self.peek().kind in "+-":
            sign = -1 if self.take(self.peek().kind).kind == "-" else 1
            p = self.term() * sign
        else:
            p = self.term()
        while self.peek().kind in "+-":
            op = self.take(self.peek().kind).kind
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self) -> Polynomial:
        p = self.factor()
        while self.peek().kind == "*":
            self.take("*")
            p = p * self.factor()
        return p

    def factor(self) -> Polynomial:
        p = self.atom()
        while self.peek().kind == "^":
            tok = self.take("^")
            exp = self.peek()
            if exp.kind != "num" or exp.value.denominator != 1 or exp.value < 0:
                raise ParseError("exponent must be a non-negative integer", exp.pos)
            self.take("num")
            p = p ** int(exp.value)
        return p

    def atom(self) -> Polynomial:
        tok = self.peek()
        if tok.kind == "num":
            self.take("num")
            return Polynomial.constant(tok.value, self.variables)
        if tok.kind == "name":
            self.take("name")
            if tok.value not in self.variables:
                raise ParseError(f"unknown symbol {tok.value!r}", tok.pos)
            return Polynomial.variable(tok.value, self.variables)
        if tok.kind == "(":
            self.take("(")
            p = self.expr()
            self.take(")")
            return p
        if tok.kind in "+-":
            self.take(tok.kind)
            p = self.atom()
            return -p if tok.kind == "-" else p
        raise ParseError(f"unexpected {tok.value!r}", tok.pos)


def parse_polynomial(text: str, variables: Iterable[str]) -> Polynomial:
    """Parse an expression over the declared variables; exact rationals only."""
    vs = tuple(sorted(set(variables)))
    return _Parser(_tokenize(text), vs).parse()
