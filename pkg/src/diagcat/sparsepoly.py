"""Sparse multivariate polynomials over an exact field.

Terms map exponent tuples to nonzero coefficients. Instances are treated as
immutable; all operations return new polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .field import ExactField


@dataclass(frozen=True)
class SparsePoly:
    field: ExactField
    nvars: int
    terms: tuple = dc_field(default=())  # sorted ((exps, coeff), ...)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e, _ in self.terms)

    def coeff(self, exps: tuple):
        for e, c in self.terms:
            if e == exps:
                return c
        return self.field.zero()

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __add__(self, other: SparsePoly) -> SparsePoly:
        d = dict(self.terms)
        z = self.field.zero()
        for e, c in other.terms:
            s = self.field.add(d.get(e, z), c)
            if s == z:
                d.pop(e, None)
            else:
                d[e] = s
        return from_dict(self.field, self.nvars, d)

    def __neg__(self) -> SparsePoly:
        return SparsePoly(
            self.field,
            self.nvars,
            tuple((e, self.field.neg(c)) for e, c in self.terms),
        )

    def __sub__(self, other: SparsePoly) -> SparsePoly:
        return self + (-other)

    def __mul__(self, other: SparsePoly) -> SparsePoly:
        f = self.field
        z = f.zero()
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                s = f.add(d.get(e, z), f.mul(c1, c2))
                if s == z:
                    d.pop(e, None)
                else:
                    d[e] = s
        return from_dict(f, self.nvars, d)

    def scale(self, lam) -> SparsePoly:
        f = self.field
        lam = f.of(lam)
        if lam == f.zero():
            return SparsePoly(f, self.nvars, ())
        return SparsePoly(
            f, self.nvars, tuple((e, f.mul(lam, c)) for e, c in self.terms)
        )

    def pow(self, k: int) -> SparsePoly:
        out = constant(self.field, self.nvars, self.field.one())
        for _ in range(k):
            out = out * self
        return out

    def evaluate(self, values):
        f = self.field
        acc = f.zero()
        for e, c in self.terms:
            t = c
            for i, k in enumerate(e):
                if k:
                    t = f.mul(t, _pow(f, values[i], k))
            acc = f.add(acc, t)
        return acc

    def map_exponents(self, fn) -> SparsePoly:
        d: dict = {}
        f = self.field
        z = f.zero()
        for e, c in self.terms:
            e2 = fn(e)
            s = f.add(d.get(e2, z), c)
            if s == z:
                d.pop(e2, None)
            else:
                d[e2] = s
        return from_dict(f, self.nvars, d)


def _pow(field: ExactField, x, k: int):
    out = field.one()
    for _ in range(k):
        out = field.mul(out, x)
    return out


def from_dict(field: ExactField, nvars: int, d: dict) -> SparsePoly:
    z = field.zero()
    items = tuple(sorted((e, c) for e, c in d.items() if c != z))
    return SparsePoly(field, nvars, items)


def zero(field: ExactField, nvars: int) -> SparsePoly:
    return SparsePoly(field, nvars, ())


def constant(field: ExactField, nvars: int, c) -> SparsePoly:
    c = field.of(c)
    if c == field.zero():
        return zero(field, nvars)
    return SparsePoly(field, nvars, (((0,) * nvars, c),))


def variable(field: ExactField, nvars: int, i: int) -> SparsePoly:
    e = [0] * nvars
    e[i] = 1
    return SparsePoly(field, nvars, ((tuple(e), field.one()),))


def monomial(field: ExactField, nvars: int, exps, c=1) -> SparsePoly:
    c = field.of(c)
    if c == field.zero():
        return zero(field, nvars)
    return SparsePoly(field, nvars, ((tuple(exps), c),))


def monomials_up_to(nvars: int, d: int) -> list[tuple]:
    """All exponent tuples of total degree <= d, graded then lex."""
    out: list[tuple] = []

    def rec(prefix, left, vars_left):
        if vars_left == 1:
            out.append(prefix + (left,))
            return
        for k in range(left + 1):
            rec(prefix + (k,), left - k, vars_left - 1)

    result = []
    for total in range(d + 1):
        out = []
        if nvars == 0:
            if total == 0:
                result.append(())
            continue
        rec((), total, nvars)
        # only tuples of exact total degree `total`
        result.extend(e for e in out if sum(e) == total)
    return result
