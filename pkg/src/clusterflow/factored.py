"""Factored field values: exact arithmetic that never computes a gcd.

Seed mutation is multiplicative except for a single sum per exchange, so a
value is kept as

    coeff * (monomial in the flat variables) * prod_k base_k ^ e_k

with canonical polynomial bases (per-variable minimum exponent zero, content
one, deterministic sign) and integer exponents of either sign.  Products,
quotients, and powers are exponent bookkeeping.  Addition extracts the common
factor, expands the two small cofactors, and registers the resulting sum as a
new base; the Laurent-phenomenon cancellations are recovered by exact
division of the new base against the denominator bases, so no polynomial gcd
is ever needed.  Equality and zero tests go through subtraction, which is
exact by the same route.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .algebra import (
    LaurentPoly,
    Mono,
    RatFunc,
    mono,
    mono_div,
    mono_inv,
    mono_mul,
    mono_pow,
    try_exact_div,
)

_MONO_ONE: Mono = ()


def _split(p: LaurentPoly) -> tuple[Fraction, Mono, LaurentPoly | None]:
    """Write a nonzero Laurent polynomial as coeff * monomial * base with the
    base canonical (min exponents zero, content one, reference coefficient
    positive), or base None when p is a monomial."""
    shift = p.min_exponents()
    q = p.mul_mono(mono_inv(shift))
    c = q.content()
    ref = min(q.terms)
    if q.terms[ref] < 0:
        c = -c
    if c != 1:
        q = q.scale(Fraction(1) / c)
    if q.is_one():
        return c, shift, None
    return c, shift, q


def _expand(coeff: Fraction, m: Mono, pows: Mapping[LaurentPoly, int]) -> LaurentPoly:
    out = LaurentPoly.monomial(m, coeff)
    for p, e in pows.items():
        out = out * p**e
    return out


class Factored:
    """A nonzero rational function in factored form (or zero as coeff 0)."""

    __slots__ = ("coeff", "mono", "powers")

    def __init__(
        self,
        coeff: Fraction = Fraction(0),
        m: Mono = _MONO_ONE,
        powers: Mapping[LaurentPoly, int] | None = None,
    ):
        self.coeff = Fraction(coeff)
        if self.coeff == 0:
            self.mono: Mono = _MONO_ONE
            self.powers: dict[LaurentPoly, int] = {}
        else:
            self.mono = m
            self.powers = {p: e for p, e in (powers or {}).items() if e}

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero() -> "Factored":
        return Factored()

    @staticmethod
    def one() -> "Factored":
        return Factored(Fraction(1))

    @staticmethod
    def constant(c) -> "Factored":
        return Factored(Fraction(c))

    @staticmethod
    def variable(v: int, e: int = 1) -> "Factored":
        return Factored(Fraction(1), mono({v: e}) if e else _MONO_ONE)

    @staticmethod
    def from_poly(p: LaurentPoly) -> "Factored":
        if p.is_zero():
            return Factored.zero()
        c, shift, base = _split(p)
        return Factored(c, shift, {base: 1} if base is not None else None)

    @staticmethod
    def from_ratfunc(r: RatFunc) -> "Factored":
        return Factored.from_poly(r.num) / Factored.from_poly(r.den)

    # -- predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.coeff == 0

    def is_one(self) -> bool:
        return self.coeff == 1 and not self.mono and not self.powers

    def is_constant(self) -> bool:
        if self.coeff == 0:
            return True
        return not self.mono and not self.powers

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.coeff

    # -- multiplicative arithmetic ----------------------------------------

    def __mul__(self, other: "Factored") -> "Factored":
        if not isinstance(other, Factored):
            return NotImplemented
        if self.coeff == 0 or other.coeff == 0:
            return Factored.zero()
        powers = dict(self.powers)
        for p, e in other.powers.items():
            ne = powers.get(p, 0) + e
            if ne:
                powers[p] = ne
            else:
                powers.pop(p, None)
        return Factored(
            self.coeff * other.coeff, mono_mul(self.mono, other.mono), powers
        )

    def __pow__(self, n: int) -> "Factored":
        if n == 0:
            return Factored.one()
        if self.coeff == 0:
            if n < 0:
                raise ZeroDivisionError("inverse of zero")
            return Factored.zero()
        return Factored(
            self.coeff**n,
            mono_pow(self.mono, n),
            {p: e * n for p, e in self.powers.items()},
        )

    def inverse(self) -> "Factored":
        return self**-1

    def __truediv__(self, other: "Factored") -> "Factored":
        if not isinstance(other, Factored):
            return NotImplemented
        return self * other**-1

    def __neg__(self) -> "Factored":
        return Factored(-self.coeff, self.mono, self.powers)

    # -- additive arithmetic ----------------------------------------------

    def __add__(self, other: "Factored") -> "Factored":
        if not isinstance(other, Factored):
            return NotImplemented
        if self.coeff == 0:
            return other
        if other.coeff == 0:
            return self
        da, db = dict(self.mono), dict(other.mono)
        cm = mono({v: min(da.get(v, 0), db.get(v, 0)) for v in set(da) | set(db)})
        keys = set(self.powers) | set(other.powers)
        cpow: dict[LaurentPoly, int] = {}
        for p in keys:
            e = min(self.powers.get(p, 0), other.powers.get(p, 0))
            if e:
                cpow[p] = e
        pa = _expand(
            self.coeff,
            mono_div(self.mono, cm),
            {p: self.powers.get(p, 0) - cpow.get(p, 0) for p in keys},
        )
        pb = _expand(
            other.coeff,
            mono_div(other.mono, cm),
            {p: other.powers.get(p, 0) - cpow.get(p, 0) for p in keys},
        )
        s = pa + pb
        if s.is_zero():
            return Factored.zero()
        c, shift, base = _split(s)
        m = mono_mul(cm, shift)
        powers = dict(cpow)
        # cancel the fresh base against denominator bases by exact division;
        # this is where the Laurent phenomenon keeps factored forms small
        while base is not None:
            if base in powers:
                ne = powers[base] + 1
                if ne:
                    powers[base] = ne
                else:
                    del powers[base]
                base = None
                break
            divided = False
            for p, e in powers.items():
                if e < 0:
                    q = try_exact_div(base, p)
                    if q is not None:
                        ne = e + 1
                        if ne:
                            powers[p] = ne
                        else:
                            del powers[p]
                        cq, sq, base = _split(q)
                        c *= cq
                        m = mono_mul(m, sq)
                        divided = True
                        break
            if not divided:
                powers[base] = powers.get(base, 0) + 1
                if powers[base] == 0:
                    del powers[base]
                base = None
        return Factored(c, m, powers)

    def __sub__(self, other: "Factored") -> "Factored":
        return self + (-other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Factored):
            return NotImplemented
        if self.coeff == 0 or other.coeff == 0:
            return self.coeff == other.coeff
        if (
            self.coeff == other.coeff
            and self.mono == other.mono
            and self.powers == other.powers
        ):
            return True
        return (self - other).is_zero()

    __hash__ = None  # factored forms are mutable-by-convention containers

    # -- interop ------------------------------------------------------------

    def expand(self) -> RatFunc:
        """The value as a canonical rational function (this does reduce)."""
        if self.coeff == 0:
            return RatFunc.zero()
        num_pows = {p: e for p, e in self.powers.items() if e > 0}
        den_pows = {p: -e for p, e in self.powers.items() if e < 0}
        mnum = {v: e for v, e in self.mono if e > 0}
        mden = {v: -e for v, e in self.mono if e < 0}
        num = _expand(self.coeff, mono(mnum), num_pows)
        den = _expand(Fraction(1), mono(mden), den_pows)
        return RatFunc(num, den)

    def __repr__(self):
        parts = [str(self.coeff)]
        if self.mono:
            parts.append(f"x^{dict(self.mono)}")
        for p, e in self.powers.items():
            parts.append(f"({len(p.terms)}-term)^{e}")
        return "Factored(" + " * ".join(parts) + ")"
