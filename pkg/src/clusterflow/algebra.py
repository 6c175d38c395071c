"""Exact sparse Laurent-polynomial and rational-function arithmetic over Q.

A monomial is a sorted tuple of (variable index, exponent) pairs with no zero
exponents; exponents may be negative (Laurent).  Variable indices are plain
integers and may be negative.  A Laurent polynomial maps monomials to Fraction
coefficients, with no zero coefficients stored, so equality is structural.

Rational functions are reduced num/den pairs.  Reduction uses multivariate
polynomial GCD (content / primitive-part recursion with a primitive
pseudo-remainder sequence); the denominator is kept as a primitive true
polynomial with positive leading coefficient, and collapses to 1 whenever the
quotient is itself a Laurent polynomial.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Mapping

Mono = tuple[tuple[int, int], ...]

MONO_ONE: Mono = ()


def _term_limit() -> int:
    return int(os.environ.get("CLUSTERFLOW_MAX_TERMS", "200000"))


class TermLimitExceeded(RuntimeError):
    """Raised when a polynomial grows past CLUSTERFLOW_MAX_TERMS terms."""


class DivisionFails(Exception):
    """Signal value: exact Laurent division does not produce a polynomial."""


def mono(pairs: Mapping[int, int] | Iterable[tuple[int, int]]) -> Mono:
    items = pairs.items() if isinstance(pairs, Mapping) else pairs
    return tuple(sorted((v, e) for v, e in items if e != 0))


def mono_mul(a: Mono, b: Mono) -> Mono:
    if not a:
        return b
    if not b:
        return a
    # merge of two sorted pair tuples
    out = []
    i = j = 0
    la, lb = len(a), len(b)
    while i < la and j < lb:
        pa, pb = a[i], b[j]
        va, vb = pa[0], pb[0]
        if va == vb:
            e = pa[1] + pb[1]
            if e:
                out.append((va, e))
            i += 1
            j += 1
        elif va < vb:
            out.append(pa)
            i += 1
        else:
            out.append(pb)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def mono_div(a: Mono, b: Mono) -> Mono:
    return mono_mul(a, mono_inv(b))


def mono_inv(a: Mono) -> Mono:
    return tuple((v, -e) for v, e in a)


def mono_pow(a: Mono, n: int) -> Mono:
    if n == 0:
        return MONO_ONE
    return tuple((v, e * n) for v, e in a)


def _intify(c):
    """Store integral coefficients as plain ints (ints satisfy the Rational
    protocol, hash like equal Fractions, and multiply much faster)."""
    return c.numerator if c.denominator == 1 else c


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(
        math.gcd(a.numerator, b.numerator),
        (a.denominator * b.denominator) // math.gcd(a.denominator, b.denominator),
    )


class LaurentPoly:
    """Sparse Laurent polynomial with Fraction coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Mono, Fraction] | None = None):
        self.terms: dict[Mono, Fraction] = {
            m: c for m, c in (terms or {}).items() if c != 0
        }
        if len(self.terms) > _term_limit():
            raise TermLimitExceeded(f"{len(self.terms)} terms")
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def constant(c) -> "LaurentPoly":
        c = _intify(Fraction(c))
        return LaurentPoly({MONO_ONE: c}) if c else LaurentPoly()

    @staticmethod
    def variable(v: int, e: int = 1) -> "LaurentPoly":
        if e == 0:
            return LaurentPoly.one()
        return LaurentPoly({((v, e),): 1})

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly.constant(1)

    @staticmethod
    def monomial(m: Mono, c=1) -> "LaurentPoly":
        return LaurentPoly({m: _intify(Fraction(c))})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {MONO_ONE: Fraction(1)}

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and MONO_ONE in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.terms.get(MONO_ONE, Fraction(0))

    def constant_term(self) -> Fraction:
        return self.terms.get(MONO_ONE, Fraction(0))

    def variables(self) -> set[int]:
        out: set[int] = set()
        for m in self.terms:
            out.update(v for v, _ in m)
        return out

    def is_polynomial(self) -> bool:
        return all(e >= 0 for m in self.terms for _, e in m)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms:
            return other
        if not other.terms:
            return self
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                nc = prev + c
                if nc:
                    out[m] = nc
                else:
                    del out[m]
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.terms or not other.terms:
            return LaurentPoly()
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Mono, Fraction] = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = mono_mul(m1, m2)
                prev = out.get(m)
                if prev is None:
                    out[m] = c1 * c2
                else:
                    nc = prev + c1 * c2
                    if nc:
                        out[m] = nc
                    else:
                        del out[m]
        return LaurentPoly(out)

    def scale(self, c) -> "LaurentPoly":
        c = _intify(Fraction(c))
        if not c:
            return LaurentPoly()
        if c == 1:
            return self
        if isinstance(c, int):
            return LaurentPoly({m: cc * c for m, cc in self.terms.items()})
        return LaurentPoly({m: _intify(cc * c) for m, cc in self.terms.items()})

    def mul_mono(self, m: Mono, c=1) -> "LaurentPoly":
        c = _intify(Fraction(c))
        if c == 1:
            return LaurentPoly({mono_mul(mm, m): cc for mm, cc in self.terms.items()})
        if isinstance(c, int):
            return LaurentPoly(
                {mono_mul(mm, m): cc * c for mm, cc in self.terms.items()}
            )
        return LaurentPoly(
            {mono_mul(mm, m): _intify(cc * c) for mm, cc in self.terms.items()}
        )

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a polynomial; use RatFunc")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus ----------------------------------------------------------

    def derivative(self, v: int) -> "LaurentPoly":
        out: dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            d = dict(m)
            e = d.get(v, 0)
            if e == 0:
                continue
            if e == 1:
                d.pop(v)
            else:
                d[v] = e - 1
            nm = tuple(sorted(d.items()))
            nc = out.get(nm, Fraction(0)) + c * e
            if nc:
                out[nm] = nc
            else:
                out.pop(nm, None)
        return LaurentPoly(out)

    # -- structure ---------------------------------------------------------

    def min_exponents(self) -> Mono:
        """Per-variable minimum exponent over all terms (the monomial content)."""
        if not self.terms:
            return MONO_ONE
        mins: dict[int, int] = {}
        counts: dict[int, int] = {}
        n = 0
        for m in self.terms:
            n += 1
            for v, e in m:
                if v in mins:
                    if e < mins[v]:
                        mins[v] = e
                    counts[v] += 1
                else:
                    mins[v] = e
                    counts[v] = 1
        # a variable missing from some term has exponent 0 there
        return mono(
            {v: (e if counts[v] == n else min(e, 0)) for v, e in mins.items()}
        )

    def content(self) -> Fraction:
        """gcd of the coefficients (positive), 0 for the zero polynomial."""
        c = Fraction(0)
        for coeff in self.terms.values():
            c = _frac_gcd(c, abs(coeff))
            if c == 1:
                break
        return c

    def leading(self, order: "_MonoOrder") -> tuple[Mono, Fraction]:
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def substitute(self, values: Mapping[int, "RatFunc"]) -> "RatFunc":
        """Evaluate with some variables replaced by rational functions."""
        total = RatFunc.zero()
        pw: dict[tuple[int, int], RatFunc] = {}

        def power(v: int, e: int) -> RatFunc:
            key = (v, e)
            if key not in pw:
                pw[key] = values[v] ** e
            return pw[key]

        for m, c in self.terms.items():
            leftover: dict[int, int] = {}
            factor = RatFunc.constant(c)
            for v, e in m:
                if v in values:
                    factor = factor * power(v, e)
                else:
                    leftover[v] = e
            if leftover:
                factor = factor * RatFunc.from_poly(
                    LaurentPoly.monomial(mono(leftover))
                )
            total = total + factor
        return total

    # -- display / io ------------------------------------------------------

    def __repr__(self):
        return f"LaurentPoly({format_poly(self)})"

    def to_json(self) -> list[dict]:
        out = []
        for m in sorted(self.terms, key=lambda mm: (len(mm), mm)):
            out.append(
                {
                    "coeff": format_fraction(self.terms[m]),
                    "exps": {str(v): e for v, e in m},
                }
            )
        return out

    @staticmethod
    def from_json(data: list[dict]) -> "LaurentPoly":
        terms: dict[Mono, Fraction] = {}
        for t in data:
            m = mono({int(v): int(e) for v, e in t["exps"].items()})
            terms[m] = terms.get(m, Fraction(0)) + parse_fraction(t["coeff"])
        return LaurentPoly(terms)


class _MonoOrder:
    """Graded-lex monomial order over a fixed variable list (positive exponents)."""

    def __init__(self, variables: Iterable[int]):
        self.vars = sorted(set(variables))

    def key(self, m: Mono):
        d = dict(m)
        vec = tuple(d.get(v, 0) for v in self.vars)
        return (sum(vec), vec)


def exact_div_laurent(n: LaurentPoly, d: LaurentPoly) -> LaurentPoly:
    """Return q with q*d == n exactly, or raise DivisionFails.

    Works in the Laurent ring: monomial factors are units, so both operands are
    first shifted to true polynomials and the quotient is shifted back.  The
    remainder is kept as a dict with a lazily-deleted max-heap of monomials,
    so each cancellation step costs O(|d| log terms) instead of a full scan.
    """
    import heapq

    if d.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if n.is_zero():
        return LaurentPoly.zero()
    shift_n = n.min_exponents()
    shift_d = d.min_exponents()
    np = n.mul_mono(mono_inv(shift_n))
    dp = d.mul_mono(mono_inv(shift_d))
    vars_ = sorted(np.variables() | dp.variables())
    keycache: dict[Mono, tuple] = {}

    def nkey(m: Mono):
        # negated graded-lex key, so the heap minimum is the leading monomial
        k = keycache.get(m)
        if k is None:
            dd = dict(m)
            vec = tuple(-dd.get(v, 0) for v in vars_)
            k = (sum(vec), vec)
            keycache[m] = k
        return k

    lm_d = min(dp.terms, key=nkey)
    lc_d = dp.terms[lm_d]
    lm_d_dict = dict(lm_d)
    d_items = list(dp.terms.items())
    rem = dict(np.terms)
    heap = [(nkey(m), m) for m in rem]
    heapq.heapify(heap)
    q: dict[Mono, Fraction] = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = rem.get(m)
        if not c:
            continue
        dm = dict(m)
        if any(dm.get(v, 0) < e for v, e in lm_d_dict.items()):
            raise DivisionFails()
        qm = mono_div(m, lm_d)
        if isinstance(c, int) and isinstance(lc_d, int):
            qc = c // lc_d if c % lc_d == 0 else Fraction(c, lc_d)
        else:
            qc = _intify(Fraction(c) / Fraction(lc_d))
        q[qm] = qc
        for m2, c2 in d_items:
            mm = mono_mul(qm, m2)
            prev = rem.get(mm)
            if prev is None:
                rem[mm] = -qc * c2
                heapq.heappush(heap, (nkey(mm), mm))
            else:
                nc = prev - qc * c2
                if nc:
                    rem[mm] = nc
                else:
                    del rem[mm]
    if any(rem.values()):
        raise DivisionFails()
    return LaurentPoly(q).mul_mono(mono_div(shift_n, shift_d))


def try_exact_div(n: LaurentPoly, d: LaurentPoly) -> LaurentPoly | None:
    try:
        return exact_div_laurent(n, d)
    except DivisionFails:
        return None


# ---------------------------------------------------------------------------
# Multivariate GCD (content / primitive-part recursion, primitive PRS)
# ---------------------------------------------------------------------------


def _coeffs_in(p: LaurentPoly, v: int) -> dict[int, LaurentPoly]:
    """Split p (a true polynomial) by the degree of v."""
    out: dict[int, dict[Mono, Fraction]] = {}
    for m, c in p.terms.items():
        d = dict(m)
        e = d.pop(v, 0)
        out.setdefault(e, {})[tuple(sorted(d.items()))] = c
    return {e: LaurentPoly(t) for e, t in out.items()}


def _from_coeffs(coeffs: Mapping[int, LaurentPoly], v: int) -> LaurentPoly:
    terms: dict[Mono, Fraction] = {}
    for e, p in coeffs.items():
        for m, c in p.terms.items():
            nm = mono_mul(m, ((v, e),) if e else MONO_ONE)
            terms[nm] = terms.get(nm, Fraction(0)) + c
    return LaurentPoly(terms)


def _poly_content_pp(p: LaurentPoly, v: int) -> tuple[LaurentPoly, "list[LaurentPoly]"]:
    """Content (gcd of v-coefficients) and dense primitive coefficient list."""
    coeffs = _coeffs_in(p, v)
    deg = max(coeffs)
    cont = LaurentPoly.zero()
    for c in coeffs.values():
        cont = poly_gcd(cont, c)
        if cont.is_one():
            break
    dense = []
    for e in range(deg + 1):
        ce = coeffs.get(e, LaurentPoly.zero())
        dense.append(ce if cont.is_one() else exact_div_laurent(ce, cont) if not ce.is_zero() else ce)
    return cont, dense


def _dense_degree(a: list[LaurentPoly]) -> int:
    for i in range(len(a) - 1, -1, -1):
        if not a[i].is_zero():
            return i
    return -1


def _dense_prem(a: list[LaurentPoly], b: list[LaurentPoly]) -> list[LaurentPoly]:
    """Pseudo-remainder of dense coefficient lists (main variable implicit)."""
    da, db = _dense_degree(a), _dense_degree(b)
    lb = b[db]
    r = list(a)
    while True:
        dr = _dense_degree(r)
        if dr < db:
            return r[: max(dr + 1, 0)]
        lr = r[dr]
        r = [c * lb for c in r]
        for i in range(db + 1):
            r[dr - db + i] = r[dr - db + i] - lr * b[i]
        r = r[:dr]  # leading term cancelled
        if not r:
            return []


def _dense_scalar_primitive(a: list[LaurentPoly]) -> list[LaurentPoly]:
    """Divide out the common scalar content so coefficients stay coprime ints;
    without this the pseudo-remainder loop compounds huge fractions."""
    c = Fraction(0)
    for p in a:
        for coeff in p.terms.values():
            c = _frac_gcd(c, abs(coeff))
    if not c or c == 1:
        return a
    inv = 1 / c
    return [p.scale(inv) if not p.is_zero() else p for p in a]


def _dense_primitive(a: list[LaurentPoly]) -> list[LaurentPoly]:
    a = _dense_scalar_primitive(a)
    cont = LaurentPoly.zero()
    for c in a:
        cont = poly_gcd(cont, c)
        if cont.is_one():
            return a
    if cont.is_zero() or cont.is_one():
        return a
    return [exact_div_laurent(c, cont) if not c.is_zero() else c for c in a]


def _canonical_unit(p: LaurentPoly) -> LaurentPoly:
    """Scale so coefficients are coprime integers with positive leading coeff."""
    if p.is_zero():
        return p
    c = p.content()
    order = _MonoOrder(p.variables())
    _, lc = p.leading(order)
    if lc < 0:
        c = -c
    return p.scale(1 / c)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """GCD of two true polynomials, canonically normalized (1 for coprime)."""
    if a.is_zero():
        return _canonical_unit(b)
    if b.is_zero():
        return _canonical_unit(a)
    if a.is_constant() or b.is_constant():
        return LaurentPoly.one()
    common = a.variables() & b.variables()
    if not common:
        return LaurentPoly.one()
    a = _canonical_unit(a)
    b = _canonical_unit(b)
    # main variable: smallest combined degree keeps the PRS short
    def vdeg(p: LaurentPoly, v: int) -> int:
        return max(dict(m).get(v, 0) for m in p.terms)

    v = min(common, key=lambda w: vdeg(a, w) + vdeg(b, w))
    cont_a, pa = _poly_content_pp(a, v)
    cont_b, pb = _poly_content_pp(b, v)
    cont = poly_gcd(cont_a, cont_b)
    if _dense_degree(pa) < _dense_degree(pb):
        pa, pb = pb, pa
    while True:
        r = _dense_prem(pa, pb)
        if _dense_degree(r) < 0:
            break
        pa, pb = pb, _dense_primitive(r)
    g = _dense_primitive(pb)
    result = _from_coeffs({e: c for e, c in enumerate(g)}, v)
    if not cont.is_one():
        result = result * cont
    return _canonical_unit(result)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RatFunc:
    """Reduced rational function num/den with LaurentPoly parts.

    Canonical form: den is a primitive true polynomial (coprime integer
    coefficients, positive leading coefficient, min exponent 0 per variable,
    no common factor with num); all monomial units live in num.  Hence den is
    1 exactly when the value is a Laurent polynomial, and equality is
    structural.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, _reduced: bool = False):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "RatFunc":
        return RatFunc(LaurentPoly.zero(), LaurentPoly.one(), _reduced=True)

    @staticmethod
    def one() -> "RatFunc":
        return RatFunc(LaurentPoly.one(), LaurentPoly.one(), _reduced=True)

    @staticmethod
    def constant(c) -> "RatFunc":
        return RatFunc(LaurentPoly.constant(c), LaurentPoly.one(), _reduced=True)

    @staticmethod
    def variable(v: int, e: int = 1) -> "RatFunc":
        return RatFunc(LaurentPoly.variable(v, e), LaurentPoly.one(), _reduced=True)

    @staticmethod
    def from_poly(p: LaurentPoly) -> "RatFunc":
        return RatFunc(p, LaurentPoly.one(), _reduced=True)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_one()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.constant_value()

    def variables(self) -> set[int]:
        return self.num.variables() | self.den.variables()

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero() or other.is_zero():
            return RatFunc.zero()
        # cross-cancel before the full reduction to limit growth
        n1, d2 = _reduce(self.num, other.den)
        n2, d1 = _reduce(other.num, self.den)
        return RatFunc(n1 * n2, d1 * d2)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return self * other.inverse()

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __pow__(self, n: int) -> "RatFunc":
        if n == 0:
            return RatFunc.one()
        if n < 0:
            return self.inverse() ** (-n)
        result = RatFunc.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        # canonical forms are unique, but cross-multiplying is cheap insurance
        if self.num == other.num and self.den == other.den:
            return True
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self, v: int) -> "RatFunc":
        """Exact partial derivative by the quotient rule."""
        dn = self.num.derivative(v)
        if self.den.is_one():
            return RatFunc(dn, LaurentPoly.one())
        dd = self.den.derivative(v)
        return RatFunc(dn * self.den - self.num * dd, self.den * self.den)

    def substitute(self, values: Mapping[int, "RatFunc"]) -> "RatFunc":
        return self.num.substitute(values) / self.den.substitute(values)

    # -- display / io ------------------------------------------------------

    def __repr__(self):
        if self.den.is_one():
            return f"RatFunc({format_poly(self.num)})"
        return f"RatFunc(({format_poly(self.num)})/({format_poly(self.den)}))"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @staticmethod
    def from_json(data: dict) -> "RatFunc":
        return RatFunc(
            LaurentPoly.from_json(data["num"]), LaurentPoly.from_json(data["den"])
        )


def _reduce(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Reduce a num/den pair to the canonical form described on RatFunc."""
    if num.is_zero():
        return LaurentPoly.zero(), LaurentPoly.one()
    shift_n = num.min_exponents()
    shift_d = den.min_exponents()
    np = num.mul_mono(mono_inv(shift_n))
    dp = den.mul_mono(mono_inv(shift_d))
    if not dp.is_constant():
        g = poly_gcd(np, dp)
        if not g.is_one():
            np = exact_div_laurent(np, g)
            dp = exact_div_laurent(dp, g)
    # scalar normalization: den primitive with positive leading coefficient
    c = dp.content()
    _, lc = dp.leading(_MonoOrder(dp.variables()))
    if lc < 0:
        c = -c
    dp = dp.scale(1 / c)
    np = np.scale(1 / c)
    np = np.mul_mono(mono_div(shift_n, shift_d))
    if dp.is_one():
        return np, LaurentPoly.one()
    return np, dp


# ---------------------------------------------------------------------------
# Semifields
# ---------------------------------------------------------------------------


class SemifieldTag(Enum):
    UNIVERSAL = "universal"
    TROPICAL = "tropical"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class TropPoint:
    """A tropical-semifield element: an exponent vector on coefficient variables."""

    exps: tuple[tuple[int, int], ...]

    @staticmethod
    def make(exps: Mapping[int, int] | Iterable[tuple[int, int]]) -> "TropPoint":
        return TropPoint(mono(exps))

    @staticmethod
    def unit() -> "TropPoint":
        return TropPoint(MONO_ONE)

    @staticmethod
    def generator(v: int) -> "TropPoint":
        return TropPoint(((v, 1),))

    def exponent(self, v: int) -> int:
        return dict(self.exps).get(v, 0)

    def __mul__(self, other: "TropPoint") -> "TropPoint":
        return TropPoint(mono_mul(self.exps, other.exps))

    def inverse(self) -> "TropPoint":
        return TropPoint(mono_inv(self.exps))

    def __pow__(self, n: int) -> "TropPoint":
        return TropPoint(mono_pow(self.exps, n))

    def oplus(self, other: "TropPoint") -> "TropPoint":
        """Tropical addition: componentwise minimum of exponents."""
        vs = {v for v, _ in self.exps} | {v for v, _ in other.exps}
        a, b = dict(self.exps), dict(other.exps)
        return TropPoint(mono({v: min(a.get(v, 0), b.get(v, 0)) for v in vs}))

    def positive_part(self) -> "TropPoint":
        return TropPoint(mono({v: max(e, 0) for v, e in self.exps}))

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly.monomial(self.exps)

    def to_ratfunc(self) -> RatFunc:
        return RatFunc.from_poly(self.to_laurent())


class TrivialUnit:
    """The single element of the trivial semifield."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "1"

    def __eq__(self, other):
        return isinstance(other, TrivialUnit)

    def __hash__(self):
        return hash(TrivialUnit)


def semifield_sum(tag: SemifieldTag, a, b):
    """a (+) b in the semifield selected by tag."""
    if tag is SemifieldTag.UNIVERSAL:
        # RatFunc or any other exact field value type with the same interface
        if type(a) is not type(b) or not hasattr(a, "__add__"):
            raise TypeError("universal semifield elements must share a field type")
        return a + b
    if tag is SemifieldTag.TROPICAL:
        if not isinstance(a, TropPoint) or not isinstance(b, TropPoint):
            raise TypeError("tropical semifield elements must be TropPoint")
        return a.oplus(b)
    if tag is SemifieldTag.TRIVIAL:
        if not isinstance(a, TrivialUnit) or not isinstance(b, TrivialUnit):
            raise TypeError("trivial semifield elements must be TrivialUnit")
        return TrivialUnit()
    raise ValueError(f"unknown semifield tag {tag!r}")


# ---------------------------------------------------------------------------
# Variable namespaces: cluster index i <-> x-variable, coefficient <-> y-variable
# ---------------------------------------------------------------------------


def xvar(i: int) -> int:
    """Flat variable id of the cluster variable at index i."""
    return 2 * i


def yvar(i: int) -> int:
    """Flat variable id of the coefficient variable at index i."""
    return 2 * i + 1


def var_kind(v: int) -> tuple[str, int]:
    """Inverse of xvar/yvar: ('x'|'y', cluster index)."""
    if v % 2 == 0:
        return "x", v // 2
    return "y", (v - 1) // 2


# ---------------------------------------------------------------------------
# Formatting and parsing
# ---------------------------------------------------------------------------


def format_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def parse_fraction(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    text = str(s).strip()
    if any(ch in text for ch in ".eE"):
        raise ValueError(f"not an exact rational (use p/q): {text!r}")
    return Fraction(text)


def var_name(v: int) -> str:
    kind, i = var_kind(v)
    return f"{kind}{i}"


def format_poly(p: LaurentPoly, name=var_name) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for m in sorted(p.terms, key=lambda mm: (sum(e for _, e in mm), mm)):
        c = p.terms[m]
        factors = [
            name(v) + (f"^{e}" if e != 1 else "") for v, e in m
        ]
        body = "*".join(factors)
        if not body:
            parts.append(format_fraction(c))
        elif c == 1:
            parts.append(body)
        elif c == -1:
            parts.append(f"-{body}")
        else:
            parts.append(f"{format_fraction(c)}*{body}")
    out = " + ".join(parts).replace("+ -", "- ")
    return out


def format_ratfunc(f: RatFunc, name=var_name) -> str:
    if f.den.is_one():
        return format_poly(f.num, name)
    return f"({format_poly(f.num, name)})/({format_poly(f.den, name)})"


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
