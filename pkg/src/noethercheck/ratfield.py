"""Sparse multivariate Laurent polynomials and rational functions over a
cyclotomic coefficient field, with simultaneous substitution and exact
equality testing.

Fractions are never reduced to lowest terms (no multivariate gcd); equality
is decided by cross-multiplication, which is exact regardless of
representative. A lightweight normalization (cancel a common monomial
factor and the common rational content, and fold monomial denominators
into the numerator) is applied after substitutions to control growth.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, Mapping

from .cyclotomic import CycElem, CycField
from .errors import SubstitutionError

Exponents = tuple[int, ...]
CoeffMap = Callable[[CycElem], CycElem]


@dataclass(frozen=True)
class VarSpace:
    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")

    @property
    def nvars(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def __str__(self) -> str:
        return "(" + ", ".join(self.names) + ")"


class LaurentPoly:
    """Finite map from integer exponent vectors (entries may be negative)
    to nonzero coefficients."""

    __slots__ = ("space", "field", "terms")

    def __init__(self, space: VarSpace, field: CycField, terms: Mapping[Exponents, CycElem]):
        self.space = space
        self.field = field
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(space: VarSpace, field: CycField) -> "LaurentPoly":
        return LaurentPoly(space, field, {})

    @staticmethod
    def const(space: VarSpace, field: CycField, c: CycElem) -> "LaurentPoly":
        return LaurentPoly(space, field, {(0,) * space.nvars: c})

    @staticmethod
    def variable(space: VarSpace, field: CycField, name: str) -> "LaurentPoly":
        exps = [0] * space.nvars
        exps[space.index(name)] = 1
        return LaurentPoly(space, field, {tuple(exps): field.one})

    # -- ring operations ---------------------------------------------------

    def _check(self, other: "LaurentPoly"):
        if other.space != self.space or other.field != self.field:
            raise ValueError("operands live in different spaces or fields")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            out[e] = c if s is None else s + c
        return LaurentPoly(self.space, self.field, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.space, self.field, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out: dict[Exponents, CycElem] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                out[e] = c if s is None else s + c
        return LaurentPoly(self.space, self.field, out)

    def scale(self, c: CycElem) -> "LaurentPoly":
        if c.is_zero():
            return LaurentPoly.zero(self.space, self.field)
        return LaurentPoly(self.space, self.field, {e: c * v for e, v in self.terms.items()})

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("negative power of a non-monomial polynomial")
            ((e, c),) = self.terms.items()
            return LaurentPoly(
                self.space, self.field, {tuple(k * x for x in e): c**k}
            )
        result = LaurentPoly.const(self.space, self.field, self.field.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def monomial_parts(self) -> tuple[CycElem, Exponents]:
        if not self.is_monomial():
            raise ValueError("not a monomial")
        ((e, c),) = self.terms.items()
        return c, e

    def map_coeffs(self, fn: CoeffMap) -> "LaurentPoly":
        return LaurentPoly(self.space, self.field, {e: fn(c) for e, c in self.terms.items()})

    def min_exponents(self) -> Exponents | None:
        if not self.terms:
            return None
        mins = None
        for e in self.terms:
            mins = e if mins is None else tuple(min(a, b) for a, b in zip(mins, e))
        return mins

    def shift(self, delta: Exponents) -> "LaurentPoly":
        return LaurentPoly(
            self.space, self.field,
            {tuple(a + d for a, d in zip(e, delta)): c for e, c in self.terms.items()},
        )

    def total_degree_bound(self) -> int:
        """Bound on the total degree after clearing denominators: sum of
        absolute exponent values, maximized over terms."""
        return max((sum(abs(x) for x in e) for e in self.terms), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and other.space == self.space
            and other.terms == self.terms
        )

    def __hash__(self):
        raise TypeError("LaurentPoly is not hashable")

    def canonical_str(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            vars_part = "*".join(
                f"{name}^{x}" if x != 1 else name
                for name, x in zip(self.space.names, e)
                if x != 0
            )
            coeff = str(c)
            if " " in coeff or "+" in coeff.strip("-"):
                coeff = f"({coeff})"
            if not vars_part:
                parts.append(coeff)
            elif coeff == "1":
                parts.append(vars_part)
            elif coeff == "-1":
                parts.append(f"-{vars_part}")
            else:
                parts.append(f"{coeff}*{vars_part}")
        return " + ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.canonical_str()})"


class RatFunc:
    """A fraction of Laurent polynomials; den is never zero."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num._check(den)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_poly(p: LaurentPoly) -> "RatFunc":
        return RatFunc(p, LaurentPoly.const(p.space, p.field, p.field.one))

    @staticmethod
    def const(space: VarSpace, field: CycField, c) -> "RatFunc":
        if not isinstance(c, CycElem):
            c = field.from_rational(c)
        return RatFunc.from_poly(LaurentPoly.const(space, field, c))

    @staticmethod
    def variable(space: VarSpace, field: CycField, name: str) -> "RatFunc":
        return RatFunc.from_poly(LaurentPoly.variable(space, field, name))

    @staticmethod
    def zero(space: VarSpace, field: CycField) -> "RatFunc":
        return RatFunc.from_poly(LaurentPoly.zero(space, field))

    # -- field operations --------------------------------------------------

    @property
    def space(self) -> VarSpace:
        return self.num.space

    @property
    def field(self) -> CycField:
        return self.num.field

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, LaurentPoly):
            return RatFunc.from_poly(other)
        return RatFunc.const(self.space, self.field, other)

    def __add__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) - self

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __mul__(self, other) -> "RatFunc":
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self._coerce(other) * self.inverse()

    def inverse(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.num**k, self.den**k)

    # -- predicates and equality -------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def equals(self, other) -> bool:
        """Exact equality as rational functions, by cross-multiplication."""
        o = self._coerce(other)
        return (self.num * o.den - o.num * self.den).is_zero()

    def is_monomial(self) -> bool:
        return self.num.is_monomial() and self.den.is_monomial()

    def monomial_parts(self) -> tuple[CycElem, Exponents]:
        """(coefficient, exponent vector) for a monomial fraction."""
        cn, en = self.num.monomial_parts()
        cd, ed = self.den.monomial_parts()
        return cn / cd, tuple(a - b for a, b in zip(en, ed))

    # -- substitution and normalization --------------------------------------

    def substitute(
        self,
        images: Mapping[str, "RatFunc"],
        coeff_map: CoeffMap | None = None,
    ) -> "RatFunc":
        """Simultaneous substitution of every variable that appears; images
        must share one target space. Coefficients pass through coeff_map
        (the Galois part of a semilinear map) when given."""
        used = [
            name
            for idx, name in enumerate(self.space.names)
            if any(e[idx] for e in list(self.num.terms) + list(self.den.terms))
        ]
        missing = [name for name in used if name not in images]
        if missing:
            raise SubstitutionError(f"no image for variable(s) {missing}")
        some = next(iter(images.values()), None)
        if some is None:
            if used:
                raise SubstitutionError("empty image map")
            target_space, target_field = self.space, self.field
        else:
            target_space, target_field = some.space, some.field
        for name, img in images.items():
            if img.den.is_zero():
                raise SubstitutionError(f"image of {name} has zero denominator")

        def subst_poly(poly: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
            """Return (numerator, common denominator): every term shares one
            denominator so term accumulation never compounds fractions."""
            one = LaurentPoly.const(target_space, target_field, target_field.one)
            if poly.is_zero():
                return LaurentPoly.zero(target_space, target_field), one
            pos = [0] * self.space.nvars
            neg = [0] * self.space.nvars
            for exps in poly.terms:
                for i, e in enumerate(exps):
                    if e > 0:
                        pos[i] = max(pos[i], e)
                    elif e < 0:
                        neg[i] = max(neg[i], -e)
            used_idx = [i for i in range(self.space.nvars) if pos[i] or neg[i]]
            img_at = {i: images[self.space.names[i]].normalized() for i in used_idx}
            denom = one
            for i in used_idx:
                if pos[i]:
                    denom = denom * img_at[i].den ** pos[i]
                if neg[i]:
                    denom = denom * img_at[i].num ** neg[i]
            total = LaurentPoly.zero(target_space, target_field)
            for exps, c in poly.terms.items():
                cc = coeff_map(c) if coeff_map is not None else c
                term = LaurentPoly.const(target_space, target_field, cc)
                for i in used_idx:
                    e = exps[i]
                    if e >= 0:
                        if e:
                            term = term * img_at[i].num ** e
                        if pos[i] - e:
                            term = term * img_at[i].den ** (pos[i] - e)
                        if neg[i]:
                            term = term * img_at[i].num ** neg[i]
                    else:
                        term = term * img_at[i].den ** (pos[i] - e)
                        if neg[i] + e:
                            term = term * img_at[i].num ** (neg[i] + e)
                total = total + term
            return total, denom

        num_n, num_d = subst_poly(self.num)
        den_n, den_d = subst_poly(self.den)
        if den_n.is_zero():
            raise SubstitutionError("substitution sends the denominator to zero")
        return RatFunc(num_n * den_d, num_d * den_n).normalized()

    def normalized(self) -> "RatFunc":
        num, den = self.num, self.den
        if num.is_zero():
            return RatFunc.zero(self.space, self.field)
        # fold a monomial denominator into the numerator
        if den.is_monomial():
            c, e = den.monomial_parts()
            num = num.shift(tuple(-x for x in e)).scale(c.inverse())
            den = LaurentPoly.const(self.space, self.field, self.field.one)
        # cancel the common monomial factor
        mins_n = num.min_exponents()
        mins_d = den.min_exponents()
        mins = tuple(min(a, b) for a, b in zip(mins_n, mins_d))
        if any(mins):
            delta = tuple(-x for x in mins)
            num, den = num.shift(delta), den.shift(delta)
        # divide out the common rational content
        fracs = [
            f
            for poly in (num, den)
            for c in poly.terms.values()
            for f in c.coeffs
            if f
        ]
        if fracs:
            g = Fraction(
                gcd(*(abs(f.numerator) for f in fracs)),
                lcm(*(f.denominator for f in fracs)),
            )
            if g != 1:
                scalar = self.field.from_rational(1 / g)
                num, den = num.scale(scalar), den.scale(scalar)
        return RatFunc(num, den)

    def map_coeffs(self, fn: CoeffMap) -> "RatFunc":
        return RatFunc(self.num.map_coeffs(fn), self.den.map_coeffs(fn))

    def total_degree_bound(self) -> int:
        return self.num.total_degree_bound() + self.den.total_degree_bound()

    def has_rational_coeffs(self) -> bool:
        return all(
            c.is_rational() for poly in (self.num, self.den) for c in poly.terms.values()
        )

    def canonical_str(self) -> str:
        f = self.normalized()
        n = f.num.canonical_str()
        if f.den.is_monomial():
            c, e = f.den.monomial_parts()
            if c.is_one() and not any(e):
                return n
        return f"({n})/({f.den.canonical_str()})"

    def __repr__(self):
        return f"RatFunc({self.canonical_str()})"


@dataclass(frozen=True)
class FuncField:
    """A rational function field: a variable space over a cyclotomic
    coefficient field, with convenience constructors."""

    space: VarSpace
    field: CycField

    @staticmethod
    def make(names: Iterable[str], field: CycField) -> "FuncField":
        return FuncField(VarSpace(tuple(names)), field)

    def var(self, name: str) -> RatFunc:
        return RatFunc.variable(self.space, self.field, name)

    def const(self, c) -> RatFunc:
        return RatFunc.const(self.space, self.field, c)

    def zeta(self, power: int = 1) -> RatFunc:
        return self.const(self.field.zeta(power))

    def zero(self) -> RatFunc:
        return RatFunc.zero(self.space, self.field)

    def one(self) -> RatFunc:
        return self.const(1)

    def monomial(self, exps: Mapping[str, int], coeff=1) -> RatFunc:
        vec = [0] * self.space.nvars
        for name, e in exps.items():
            vec[self.space.index(name)] = e
        c = coeff if isinstance(coeff, CycElem) else self.field.from_rational(coeff)
        return RatFunc.from_poly(LaurentPoly(self.space, self.field, {tuple(vec): c}))
