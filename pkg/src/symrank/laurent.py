"""Exact arithmetic for Laurent polynomials in one variable ``L``.

Every class computed by this package lives in the ring Z[L, L^-1]:
coefficients are Python's arbitrary-precision integers, exponents may be
negative, and nothing is ever rounded or truncated. The only division
offered is *exact* division -- a formula that looks rational must clear
its denominator completely or the operation fails loudly.

Values are sparse: a term map from exponent to coefficient that never
stores a zero coefficient, so two polynomials are equal iff their maps
are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping


class DivisionByZero(ZeroDivisionError):
    """Division by the zero polynomial."""


class NonzeroRemainder(ArithmeticError):
    """Exact division failed: no quotient exists in Z[L, L^-1]."""


class ZeroBase(ZeroDivisionError):
    """Evaluation at 0 of a polynomial with negative exponents."""


class LaurentPolynomial:
    """A sparse Laurent polynomial in L with integer coefficients.

    Instances are immutable; every operation returns a new polynomial.
    Integers coerce on either side of the arithmetic operators.

    >>> (L - 1) * (L + 1)
    LaurentPolynomial('L^2 - 1')
    >>> monomial(1, 1) * monomial(1, -1)
    LaurentPolynomial('1')
    >>> (L**3 - L**2).div_exact(L - 1)
    LaurentPolynomial('L^2')
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        cleaned: dict[int, int] = {}
        if terms:
            for exp, coeff in terms.items():
                if coeff != 0:
                    cleaned[int(exp)] = int(coeff)
        self._terms = cleaned

    def terms(self) -> dict[int, int]:
        """A copy of the exponent -> coefficient map (zero-free)."""
        return dict(self._terms)

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def degree_range(self) -> tuple[int, int] | None:
        """The (lowest, highest) exponent carrying a nonzero coefficient.

        Returns ``None`` for the zero polynomial.

        >>> (5 * monomial(1, -2) + L).degree_range()
        (-2, 1)
        """
        if not self._terms:
            return None
        return (min(self._terms), max(self._terms))

    # -- ring operations ------------------------------------------------

    def __add__(self, other: int | LaurentPolynomial) -> LaurentPolynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for exp, coeff in other._terms.items():
            out[exp] = out.get(exp, 0) + coeff
        return LaurentPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPolynomial:
        return LaurentPolynomial({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: int | LaurentPolynomial) -> LaurentPolynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int | LaurentPolynomial) -> LaurentPolynomial:
        return (-self) + other

    def __mul__(self, other: int | LaurentPolynomial) -> LaurentPolynomial:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPolynomial:
        if n < 0:
            raise ValueError("negative powers are not defined; build L^-k via monomial")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def div_exact(self, divisor: int | LaurentPolynomial) -> LaurentPolynomial:
        """The unique r with r * divisor == self, if one exists in Z[L, L^-1].

        Raises :class:`NonzeroRemainder` when no exact quotient exists
        (including quotients that would need fractional coefficients) and
        :class:`DivisionByZero` when the divisor is zero. Remainders are
        an error, never a truncation.
        """
        divisor = _coerce(divisor)
        if divisor is NotImplemented:
            raise TypeError("divisor must be an integer or LaurentPolynomial")
        if divisor.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero():
            return ZERO
        # Shift both operands down to ordinary polynomials with nonzero
        # constant term; any Laurent quotient then shows up as an ordinary
        # quotient times a power of L.
        plo, phi = self.degree_range()
        qlo, qhi = divisor.degree_range()
        num = [0] * (phi - plo + 1)
        for e, c in self._terms.items():
            num[e - plo] = c
        den = [0] * (qhi - qlo + 1)
        for e, c in divisor._terms.items():
            den[e - qlo] = c
        dden = len(den) - 1
        lead = den[dden]
        quot: dict[int, int] = {}
        top = len(num) - 1
        while True:
            while top >= 0 and num[top] == 0:
                top -= 1
            if top < 0:
                break
            if top < dden:
                raise NonzeroRemainder(f"{self} is not divisible by {divisor}")
            q, r = divmod(num[top], lead)
            if r != 0:
                raise NonzeroRemainder(f"{self} is not divisible by {divisor}")
            shift = top - dden
            quot[shift + plo - qlo] = q
            for i, c in enumerate(den):
                num[shift + i] -= q * c
        return LaurentPolynomial(quot)

    def eval_int(self, x: int) -> int | Fraction:
        """Exact evaluation at the integer ``x``.

        Returns an ``int`` when the polynomial has no negative exponents,
        otherwise an exact ``Fraction``. Evaluating a polynomial with
        negative exponents at 0 raises :class:`ZeroBase`.
        """
        if not self._terms:
            return 0
        lo = min(self._terms)
        if x == 0:
            if lo < 0:
                raise ZeroBase("cannot evaluate negative exponents at 0")
            return self._terms.get(0, 0)
        if lo >= 0:
            return sum(c * x**e for e, c in self._terms.items())
        return sum(Fraction(c) * Fraction(x) ** e for e, c in self._terms.items())

    # -- comparisons and rendering ---------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = monomial(other, 0)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPolynomial('{self}')"

    def __str__(self) -> str:
        """Canonical text form: terms in decreasing exponent order.

        >>> str(L**5 - L**2)
        'L^5 - L^2'
        >>> str(ZERO)
        '0'
        """
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exp in sorted(self._terms, reverse=True):
            c = self._terms[exp]
            mag = abs(c)
            if exp == 0:
                body = str(mag)
            else:
                var = "L" if exp == 1 else f"L^{exp}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def latex(self) -> str:
        """LaTeX form in descending powers, e.g. ``L^{5} - L^{2}``."""
        if not self._terms:
            return "0"
        parts: list[str] = []
        for exp in sorted(self._terms, reverse=True):
            c = self._terms[exp]
            mag = abs(c)
            if exp == 0:
                body = str(mag)
            else:
                var = "L" if exp == 1 else f"L^{{{exp}}}"
                body = var if mag == 1 else f"{mag}{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" + {body}" if c > 0 else f" - {body}")
        return "".join(parts)

    def to_json_dict(self) -> dict[str, str]:
        """JSON form: decimal exponent strings to decimal coefficient strings."""
        return {str(e): str(self._terms[e]) for e in sorted(self._terms, reverse=True)}

    @classmethod
    def from_json_dict(cls, data: Mapping[str, str]) -> LaurentPolynomial:
        return cls({int(e): int(c) for e, c in data.items()})


def _coerce(value: object) -> LaurentPolynomial:
    if isinstance(value, LaurentPolynomial):
        return value
    if isinstance(value, int):
        return LaurentPolynomial({0: value})
    return NotImplemented


def monomial(coeff: int, exp: int) -> LaurentPolynomial:
    """The single-term polynomial ``coeff * L^exp`` (zero if coeff is 0)."""
    return LaurentPolynomial({exp: coeff})


ZERO = LaurentPolynomial()
ONE = monomial(1, 0)
#: The class of the affine line; point counting substitutes L = q.
L = monomial(1, 1)
