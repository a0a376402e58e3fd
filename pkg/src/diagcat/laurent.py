"""The coordinate ring of GL_n as k[Z, W] modulo ZW = WZ = I.

Ring elements are stored as polynomial representatives in the 2n^2 matrix
variables Z[i,j] and W[i,j]; the degree of an element means the total degree
of the stored representative, and membership in the degree filtration is a
statement about the existence of some representative, decided against the
relation ideal with a cofactor degree cap.

Ideals always implicitly contain the relation ideal. Membership answers are
exact: `member` carries expandable cofactor witnesses, `not_member_up_to(D)`
means no cofactor representation with degrees <= D exists (definitive only
beyond the Hermann bound, so the cap is always reported), and refutation
points, when found, upgrade a negative answer to a definitive one.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache

from . import sparsepoly as sp
from .abelian import FgAbelianGroup, GroupElement, relation_lattice
from .field import ExactField
from . import field as fieldmod
from .sparsepoly import SparsePoly


# ---------------------------------------------------------------------------
# Elements


def z_index(n: int, i: int, j: int) -> int:
    """0-based variable index of Z[i+1, j+1]."""
    return i * n + j


def w_index(n: int, i: int, j: int) -> int:
    return n * n + i * n + j


@dataclass(frozen=True)
class LaurentElement:
    n: int
    poly: SparsePoly

    @property
    def field(self) -> ExactField:
        return self.poly.field

    def degree(self) -> int:
        return self.poly.degree()

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __add__(self, other: LaurentElement) -> LaurentElement:
        self._check(other)
        return LaurentElement(self.n, self.poly + other.poly)

    def __sub__(self, other: LaurentElement) -> LaurentElement:
        self._check(other)
        return LaurentElement(self.n, self.poly - other.poly)

    def __mul__(self, other: LaurentElement) -> LaurentElement:
        self._check(other)
        return LaurentElement(self.n, self.poly * other.poly)

    def __neg__(self) -> LaurentElement:
        return LaurentElement(self.n, -self.poly)

    def scale(self, lam) -> LaurentElement:
        return LaurentElement(self.n, self.poly.scale(lam))

    def _check(self, other: LaurentElement):
        if self.n != other.n:
            raise ValueError("matrix sizes differ")
        if self.field != other.field:
            raise ValueError("coefficient fields differ")

    def __str__(self) -> str:
        return format_element(self)


def lau_zero(field: ExactField, n: int) -> LaurentElement:
    return LaurentElement(n, sp.zero(field, 2 * n * n))


def lau_const(field: ExactField, n: int, c) -> LaurentElement:
    return LaurentElement(n, sp.constant(field, 2 * n * n, c))


def z_var(field: ExactField, n: int, i: int, j: int) -> LaurentElement:
    return LaurentElement(n, sp.variable(field, 2 * n * n, z_index(n, i, j)))


def w_var(field: ExactField, n: int, i: int, j: int) -> LaurentElement:
    return LaurentElement(n, sp.variable(field, 2 * n * n, w_index(n, i, j)))


def lau_monomial(field: ExactField, n: int, exps, c=1) -> LaurentElement:
    return LaurentElement(n, sp.monomial(field, 2 * n * n, exps, c))


def antipode(f: LaurentElement) -> LaurentElement:
    """Swap Z <-> W on representatives; an involution preserving degree."""
    nn = f.n * f.n

    def swap(e):
        return tuple(e[nn:]) + tuple(e[:nn])

    return LaurentElement(f.n, f.poly.map_exponents(swap))


def evaluate_at_point(f: LaurentElement, zmat, wmat):
    """Value at a point of GL_n given as the pair (g, g^{-1})."""
    values = []
    n = f.n
    for i in range(n):
        values.extend(zmat[i])
    for i in range(n):
        values.extend(wmat[i])
    return f.poly.evaluate(values)


# ---------------------------------------------------------------------------
# Text format: Z[1,1]^2 - Z[2,2], W[1,2], 3, 1/2*Z[1,1]


_TOKEN = re.compile(
    r"\s*(?:(?P<var>[ZW])\[(?P<i>\d+),(?P<j>\d+)\](?:\^(?P<pow>\d+))?"
    r"|(?P<num>\d+(?:/\d+)?)|(?P<op>[+\-*]))"
)


def parse_element(field: ExactField, n: int, text: str) -> LaurentElement:
    from fractions import Fraction

    pos = 0
    result = lau_zero(field, n)
    sign = 1
    current: LaurentElement | None = None
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        if m.group("op"):
            op = m.group("op")
            if op == "*":
                continue
            if current is not None:
                result = result + current.scale(sign)
            current = None
            sign = 1 if op == "+" else -1
            continue
        if m.group("num"):
            factor = lau_const(field, n, field.of(Fraction(m.group("num"))))
        else:
            i, j = int(m.group("i")) - 1, int(m.group("j")) - 1
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"index out of range in {m.group(0)!r}")
            v = z_var(field, n, i, j) if m.group("var") == "Z" else w_var(field, n, i, j)
            k = int(m.group("pow") or 1)
            factor = v
            for _ in range(k - 1):
                factor = factor * v
        current = factor if current is None else current * factor
    if current is not None:
        result = result + current.scale(sign)
    return result


def _format_monomial(n: int, exps) -> str:
    parts = []
    nn = n * n
    for idx, e in enumerate(exps):
        if e == 0:
            continue
        if idx < nn:
            name = f"Z[{idx // n + 1},{idx % n + 1}]"
        else:
            k = idx - nn
            name = f"W[{k // n + 1},{k % n + 1}]"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_element(f: LaurentElement) -> str:
    if f.is_zero():
        return "0"
    terms = sorted(f.poly.terms, key=lambda t: (-sum(t[0]), t[0]))
    out = []
    for e, c in terms:
        mono = _format_monomial(f.n, e)
        if not mono:
            s = str(c)
        elif c == f.field.one():
            s = mono
        elif c == f.field.neg(f.field.one()) and f.field.p is None:
            s = f"-{mono}"
        else:
            s = f"{c}*{mono}"
        if out and not s.startswith("-"):
            out.append("+ " + s)
        elif out:
            out.append("- " + s[1:])
        else:
            out.append(s)
    return " ".join(out)


# ---------------------------------------------------------------------------
# Comultiplication


@dataclass(frozen=True)
class TensorSquareElement:
    """An element of the tensor square of the coordinate ring."""

    n: int
    field: ExactField
    terms: tuple  # sorted (((expsL, expsR), coeff), ...)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: TensorSquareElement) -> TensorSquareElement:
        d = dict(self.terms)
        z = self.field.zero()
        for e, c in other.terms:
            s = self.field.add(d.get(e, z), c)
            if s == z:
                d.pop(e, None)
            else:
                d[e] = s
        return _ts_from_dict(self.field, self.n, d)

    def __mul__(self, other: TensorSquareElement) -> TensorSquareElement:
        f = self.field
        z = f.zero()
        d: dict = {}
        for (l1, r1), c1 in self.terms:
            for (l2, r2), c2 in other.terms:
                key = (
                    tuple(a + b for a, b in zip(l1, l2)),
                    tuple(a + b for a, b in zip(r1, r2)),
                )
                s = f.add(d.get(key, z), f.mul(c1, c2))
                if s == z:
                    d.pop(key, None)
                else:
                    d[key] = s
        return _ts_from_dict(f, self.n, d)

    def max_bidegree(self) -> tuple[int, int]:
        if not self.terms:
            return (-1, -1)
        return (
            max(sum(l) for (l, _r), _ in self.terms),
            max(sum(r) for (_l, r), _ in self.terms),
        )


def _ts_from_dict(field, n, d) -> TensorSquareElement:
    z = field.zero()
    return TensorSquareElement(
        n, field, tuple(sorted((k, c) for k, c in d.items() if c != z))
    )


def _ts_const(field, n, c) -> TensorSquareElement:
    zero_e = (0,) * (2 * n * n)
    c = field.of(c)
    if c == field.zero():
        return TensorSquareElement(n, field, ())
    return TensorSquareElement(n, field, (((zero_e, zero_e), c),))


def comultiply(f: LaurentElement) -> TensorSquareElement:
    """Substitute Z[i,j] -> sum_l Z[i,l] (x) Z[l,j] and
    W[i,j] -> sum_l W[l,j] (x) W[i,l]."""
    n = f.n
    k = f.field
    nn = n * n
    zero_e = (0,) * (2 * nn)

    def delta_of_var(idx: int) -> TensorSquareElement:
        d = {}
        if idx < nn:
            i, j = idx // n, idx % n
            for l in range(n):
                le = list(zero_e)
                re = list(zero_e)
                le[z_index(n, i, l)] = 1
                re[z_index(n, l, j)] = 1
                d[(tuple(le), tuple(re))] = k.one()
        else:
            i, j = (idx - nn) // n, (idx - nn) % n
            for l in range(n):
                le = list(zero_e)
                re = list(zero_e)
                le[w_index(n, l, j)] = 1
                re[w_index(n, i, l)] = 1
                d[(tuple(le), tuple(re))] = k.one()
        return _ts_from_dict(k, n, d)

    out = TensorSquareElement(n, k, ())
    for exps, coeff in f.poly.terms:
        term = _ts_const(k, n, coeff)
        for idx, e in enumerate(exps):
            if e == 0:
                continue
            dv = delta_of_var(idx)
            for _ in range(e):
                term = term * dv
        out = out + term
    return out


# ---------------------------------------------------------------------------
# Ideals


@dataclass(frozen=True)
class LaurentIdeal:
    field: ExactField
    n: int
    generators: tuple[LaurentElement, ...]
    name: str = ""

    def with_generators(self, gens) -> LaurentIdeal:
        return LaurentIdeal(self.field, self.n, tuple(gens), self.name)


def relation_generators(field: ExactField, n: int) -> list[LaurentElement]:
    """Entries of ZW - I and WZ - I."""
    gens = []
    for i in range(n):
        for j in range(n):
            acc = lau_zero(field, n)
            for l in range(n):
                acc = acc + z_var(field, n, i, l) * w_var(field, n, l, j)
            if i == j:
                acc = acc - lau_const(field, n, 1)
            gens.append(acc)
    for i in range(n):
        for j in range(n):
            acc = lau_zero(field, n)
            for l in range(n):
                acc = acc + w_var(field, n, i, l) * z_var(field, n, l, j)
            if i == j:
                acc = acc - lau_const(field, n, 1)
            gens.append(acc)
    return gens


def hermann_bound(d: int, n: int) -> int:
    """Cofactor degree bound (2d)^(2^v) with v = 2n^2 ring variables."""
    v = 2 * n * n
    return (2 * max(d, 1)) ** (2**v)


@dataclass(frozen=True)
class SubgroupPresentation:
    """A closed subgroup of GL_n presented by an ideal of k[Z, W].

    `weights` is set when the group is presented as the image of a
    diagonalizable group acting with the given characters; it enables exact
    degree-slice computation.
    """

    field: ExactField
    n: int
    ideal: LaurentIdeal
    weights: tuple[GroupElement, ...] | None = None
    name: str = ""


# ---------------------------------------------------------------------------
# Membership


@dataclass(frozen=True)
class MembershipResult:
    status: str  # 'member' | 'not_member_up_to' | 'unknown'
    cap: int
    cofactors: tuple | None = None  # ((generator, cofactor), ...) when member
    refutation_point: tuple | None = None  # (zmat, wmat) witnessing f(pt) != 0
    definitive: bool = False

    @property
    def is_member(self) -> bool:
        return self.status == "member"


def verify_membership_witness(f: LaurentElement, result: MembershipResult) -> bool:
    if not result.is_member or result.cofactors is None:
        return False
    acc = lau_zero(f.field, f.n)
    for g, h in result.cofactors:
        acc = acc + g * h
    return acc.poly == f.poly


def _offdiag_indices(n: int) -> list[int]:
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                out.append(z_index(n, i, j))
                out.append(w_index(n, i, j))
    return out


def _is_single_variable(f: LaurentElement) -> int | None:
    if len(f.poly.terms) != 1:
        return None
    e, c = f.poly.terms[0]
    if c != f.field.one() or sum(e) != 1:
        return None
    return e.index(1)


def _diagonal_split(I: LaurentIdeal):
    """If the ideal contains every off-diagonal variable as a generator and
    all other generators are supported on diagonal variables, return
    (offdiag_gens_by_index, diagonal_gens); otherwise None."""
    n = I.n
    off_needed = set(_offdiag_indices(n))
    off_gens: dict[int, LaurentElement] = {}
    diag_gens: list[LaurentElement] = []
    diag_vars = set(z_index(n, i, i) for i in range(n)) | set(
        w_index(n, i, i) for i in range(n)
    )
    for g in I.generators:
        idx = _is_single_variable(g)
        if idx is not None and idx in off_needed:
            off_gens[idx] = g
            continue
        if all(
            all(e[k] == 0 for k in range(len(e)) if k not in diag_vars)
            for e, _ in g.poly.terms
        ):
            diag_gens.append(g)
            continue
        return None
    if set(off_gens) != off_needed and n > 1:
        return None
    return off_gens, diag_gens


def _to_diag_poly(field, n, f: LaurentElement) -> SparsePoly:
    """Project onto the 2n diagonal variables (z_11..z_nn, w_11..w_nn)."""
    d: dict = {}
    z = field.zero()
    for e, c in f.poly.terms:
        if any(
            e[k] != 0
            for k in range(2 * n * n)
            if k not in [z_index(n, i, i) for i in range(n)]
            and k not in [w_index(n, i, i) for i in range(n)]
        ):
            continue
        key = tuple(e[z_index(n, i, i)] for i in range(n)) + tuple(
            e[w_index(n, i, i)] for i in range(n)
        )
        s = field.add(d.get(key, z), c)
        if s == z:
            d.pop(key, None)
        else:
            d[key] = s
    return sp.from_dict(field, 2 * n, d)


def _from_diag_poly(field, n, p: SparsePoly) -> LaurentElement:
    d = {}
    for e, c in p.terms:
        big = [0] * (2 * n * n)
        for i in range(n):
            big[z_index(n, i, i)] = e[i]
            big[w_index(n, i, i)] = e[n + i]
        d[tuple(big)] = c
    return LaurentElement(n, sp.from_dict(field, 2 * n * n, d))


def _solve_cofactors(field, gens: list[SparsePoly], f: SparsePoly, cap: int):
    """Solve f = sum h_i g_i with deg h_i <= cap in a small polynomial ring.
    Returns list of cofactor SparsePolys or None."""
    if not gens:
        return None if not f.is_zero() else []
    nvars = gens[0].nvars
    cof_monos = sp.monomials_up_to(nvars, cap)
    columns = []  # (gen_index, monomial_exps, product poly)
    for gi, g in enumerate(gens):
        for m in cof_monos:
            prod = sp.monomial(field, nvars, m) * g
            columns.append((gi, m, prod))
    row_monos: dict[tuple, int] = {}
    for _, _, prod in columns:
        for e, _ in prod.terms:
            row_monos.setdefault(e, len(row_monos))
    for e, _ in f.terms:
        row_monos.setdefault(e, len(row_monos))
    nrows = len(row_monos)
    mat = [[field.zero()] * len(columns) for _ in range(nrows)]
    for ci, (_, _, prod) in enumerate(columns):
        for e, c in prod.terms:
            mat[row_monos[e]][ci] = c
    rhs = [field.zero()] * nrows
    for e, c in f.terms:
        rhs[row_monos[e]] = c
    sol = fieldmod.solve_linear(field, mat, rhs)
    if sol is None:
        return None
    cofs = [sp.zero(field, nvars) for _ in gens]
    for (gi, m, _), x in zip(columns, sol):
        if x != field.zero():
            cofs[gi] = cofs[gi] + sp.monomial(field, nvars, m, x)
    return cofs


def _solve_work_estimate(nvars: int, ngens: int, cap: int, max_deg: int) -> int:
    cols = len(sp.monomials_up_to(nvars, cap)) * ngens
    rows = len(sp.monomials_up_to(nvars, cap + max_deg))
    return rows * cols * min(rows, cols)


def _work_budget(field: ExactField) -> int:
    # rational pivoting is an order of magnitude slower than mod-p ints
    return 4 * 10**7 if field.p is None else 4 * 10**8


def ideal_membership(
    f: LaurentElement, I: LaurentIdeal, cofactor_degree_cap: int
) -> MembershipResult:
    """Decide f = sum h_i g_i (deg h_i <= cap) with the relation ideal
    included among the generators; `member` carries expandable witnesses."""
    if f.n != I.n:
        raise ValueError("inconsistent matrix sizes")
    field = I.field
    n = I.n
    cap = cofactor_degree_cap
    if cap < 0:
        raise ValueError("cofactor degree cap must be >= 0")
    if f.is_zero():
        return MembershipResult("member", cap, ())

    split = _diagonal_split(I)
    if split is not None:
        return _diagonal_membership(f, I, split, cap)

    gens = list(I.generators) + relation_generators(field, n)
    max_deg = max([g.degree() for g in gens] + [f.degree()])
    if _solve_work_estimate(2 * n * n, len(gens), cap, max_deg) > _work_budget(field):
        return MembershipResult("unknown", cap)
    cofs = _solve_cofactors(field, [g.poly for g in gens], f.poly, cap)
    if cofs is None:
        return _negative_result(f, I, cap)
    pairs = tuple(
        (g, LaurentElement(n, h)) for g, h in zip(gens, cofs) if not h.is_zero()
    )
    return MembershipResult("member", cap, pairs)


def _diagonal_membership(f, I, split, cap) -> MembershipResult:
    """Fast path when the presentation contains every off-diagonal variable:
    work in the 2n diagonal variables with relations z_i w_i = 1, then lift
    the witness back to the full ring."""
    field, n = I.field, I.n
    off_gens, diag_gens = split
    off_cof: dict[int, LaurentElement] = {}

    def add_off(idx: int, cof: LaurentElement):
        if idx in off_cof:
            off_cof[idx] = off_cof[idx] + cof
        else:
            off_cof[idx] = cof

    # peel off-diagonal-supported terms of f
    diag_part_terms = {}
    off_positions = _offdiag_indices(n)
    for e, c in f.poly.terms:
        hit = None
        for idx in off_positions:
            if e[idx] > 0:
                hit = idx
                break
        if hit is None:
            diag_part_terms[e] = c
            continue
        reduced = list(e)
        reduced[hit] -= 1
        add_off(hit, lau_monomial(field, n, reduced, c))
    f_diag = LaurentElement(n, sp.from_dict(field, 2 * n * n, diag_part_terms))

    # diagonal ring: vars z_1..z_n, w_1..w_n; relations z_i w_i - 1
    dring_gens = [_to_diag_poly(field, n, g) for g in diag_gens]
    rel_polys = []
    for i in range(n):
        e = [0] * (2 * n)
        e[i] = 1
        e[n + i] = 1
        rel = sp.monomial(field, 2 * n, e) - sp.constant(field, 2 * n, 1)
        rel_polys.append(rel)
    all_gens = dring_gens + rel_polys
    max_deg = max([g.degree() for g in all_gens if not g.is_zero()] + [f.degree()], default=0)
    if _solve_work_estimate(2 * n, len(all_gens), cap, max_deg) > _work_budget(field):
        return MembershipResult("unknown", cap)
    cofs = _solve_cofactors(field, all_gens, _to_diag_poly(field, n, f_diag), cap)
    if cofs is None:
        return _negative_result(f, I, cap)

    pairs = []
    for g, h in zip(diag_gens, cofs[: len(diag_gens)]):
        if not h.is_zero():
            pairs.append((g, _from_diag_poly(field, n, h)))
    # z_i w_i - 1 = (ZW - I)_ii - sum_{l != i} Z[i,l] W[l,i]
    rels = relation_generators(field, n)
    for i, h in enumerate(cofs[len(diag_gens) :]):
        if h.is_zero():
            continue
        hfull = _from_diag_poly(field, n, h)
        pairs.append((rels[i * n + i], hfull))
        for l in range(n):
            if l == i:
                continue
            add_off(
                z_index(n, i, l),
                (hfull * w_var(field, n, l, i)).scale(field.neg(field.one())),
            )
    for idx, cof in off_cof.items():
        if not cof.is_zero():
            pairs.append((off_gens[idx], cof))
    result = MembershipResult("member", cap, tuple(pairs))
    assert verify_membership_witness(f, result), "witness lifting failed"
    return result


def _negative_result(f, I, cap) -> MembershipResult:
    pt = find_refutation_point(f, I)
    return MembershipResult(
        "not_member_up_to", cap, None, pt, definitive=pt is not None
    )


def ideal_membership_ascending(
    f: LaurentElement, I: LaurentIdeal, max_cap: int
) -> MembershipResult:
    """Try small caps, then a refutation point (a definitive negative that
    short-circuits large solves), then the remaining caps up to max_cap."""
    last = None
    for cap in range(min(1, max_cap) + 1):
        last = ideal_membership(f, I, cap)
        if last.is_member:
            return last
    if last is not None and last.definitive:
        return last
    pt = find_refutation_point(f, I)
    if pt is not None:
        return MembershipResult("not_member_up_to", max_cap, None, pt, True)
    for cap in range(2, max_cap + 1):
        last = ideal_membership(f, I, cap)
        if last.is_member:
            return last
    return last if last is not None else ideal_membership(f, I, max_cap)


# ---------------------------------------------------------------------------
# Points and refutation certificates


def matrix_inverse_exact(field, m):
    try:
        return fieldmod.inverse(field, m)
    except ValueError:
        return None


def candidate_points(field: ExactField, n: int):
    """Deterministic stream of invertible matrices (as (g, g^{-1}) pairs):
    diagonal grids first, then, over small finite fields, all of GL_n."""
    if field.is_finite:
        diag_entries = field.units()
    else:
        from fractions import Fraction

        diag_entries = [
            Fraction(1),
            Fraction(-1),
            Fraction(2),
            Fraction(-2),
            Fraction(3),
            Fraction(1, 2),
            Fraction(5),
        ]
    for diag in itertools.product(diag_entries, repeat=n):
        g = [
            [diag[i] if i == j else field.zero() for j in range(n)]
            for i in range(n)
        ]
        ginv = [
            [field.inv(diag[i]) if i == j else field.zero() for j in range(n)]
            for i in range(n)
        ]
        yield g, ginv
    # elementary transvections and permutation matrices reach coordinates a
    # diagonal grid cannot refute
    one = field.one()
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            g = [[one if a == b else field.zero() for b in range(n)] for a in range(n)]
            g[i][j] = one
            ginv = matrix_inverse_exact(field, g)
            if ginv is not None:
                yield g, ginv
    for perm in itertools.permutations(range(n)):
        g = [
            [one if perm[a] == b else field.zero() for b in range(n)]
            for a in range(n)
        ]
        ginv = matrix_inverse_exact(field, g)
        yield g, ginv
    if field.is_finite and n <= 2 and field.p <= 7:
        elems = field.elements()
        for entries in itertools.product(elems, repeat=n * n):
            g = [list(entries[i * n : (i + 1) * n]) for i in range(n)]
            ginv = matrix_inverse_exact(field, g)
            if ginv is not None:
                yield g, ginv


@lru_cache(maxsize=32)
def _point_list(field: ExactField, n: int, limit: int = 3000):
    out = []
    for pt in candidate_points(field, n):
        out.append(
            (tuple(tuple(row) for row in pt[0]), tuple(tuple(row) for row in pt[1]))
        )
        if len(out) >= limit:
            break
    return tuple(out)


def find_refutation_point(f: LaurentElement, I: LaurentIdeal):
    """A point killing every generator but not f; certifies non-membership."""
    field = I.field
    z = field.zero()
    for g, ginv in _point_list(field, I.n):
        if evaluate_at_point(f, g, ginv) == z:
            continue
        if all(evaluate_at_point(h, g, ginv) == z for h in I.generators):
            return g, ginv
    return None


# ---------------------------------------------------------------------------
# Degree truncations


@dataclass(frozen=True)
class TruncationResult:
    basis: tuple[LaurentElement, ...]
    complete: bool
    d: int
    cap: int
    generators: tuple[LaurentElement, ...] = ()  # pruned set, same ideal

    def generating_set(self) -> tuple[LaurentElement, ...]:
        return self.generators if self.generators else self.basis


def _prune_generators(gens) -> tuple[LaurentElement, ...]:
    """Drop monomial multiples of single-variable generators: whenever a kept
    generator is one variable, other generators lose every monomial divisible
    by it (the dropped part is a multiple of the kept generator)."""
    gens = sorted((g for g in gens if not g.is_zero()), key=lambda g: g.degree())
    single_vars: list[int] = []
    kept: list[LaurentElement] = []
    seen = set()
    for g in gens:
        field = g.field
        terms = {
            e: c
            for e, c in g.poly.terms
            if not any(e[v] > 0 for v in single_vars)
        }
        if not terms:
            continue
        reduced = LaurentElement(g.n, sp.from_dict(field, 2 * g.n * g.n, terms))
        key = reduced.poly.terms
        neg_key = (-reduced).poly.terms
        if key in seen or neg_key in seen:
            continue
        seen.add(key)
        idx = _is_single_variable(reduced)
        if idx is not None:
            single_vars.append(idx)
        kept.append(reduced)
    return tuple(kept)


def truncated_ideal_part(I: LaurentIdeal, d: int, work_cap: int) -> TruncationResult:
    """A basis of a subspace of (I + relations) intersected with the
    degree <= d slice: the span of monomial multiples m*g of degree <= cap,
    cut down by exact row reduction. Complete only beyond the Hermann bound."""
    if d < 0 or work_cap < d:
        raise ValueError("need 0 <= d <= work_cap")
    field, n = I.field, I.n
    nvars = 2 * n * n
    gens = list(I.generators) + relation_generators(field, n)
    monos = sp.monomials_up_to(nvars, work_cap)
    mono_index = {}
    high = [e for e in monos if sum(e) > d]
    low = [e for e in monos if sum(e) <= d]
    for e in high + low:
        mono_index[e] = len(mono_index)
    rows = []
    for g in gens:
        if g.is_zero():
            continue
        gd = g.degree()
        for m in monos:
            if sum(m) + gd > work_cap:
                continue
            prod = sp.monomial(field, nvars, m) * g.poly
            row = [field.zero()] * len(mono_index)
            for e, c in prod.terms:
                row[mono_index[e]] = c
            rows.append(row)
    if not rows:
        return TruncationResult((), False, d, work_cap)
    red, _piv = fieldmod.rref(field, rows)
    nhigh = len(high)
    zero = field.zero()
    basis = []
    for row in red:
        if all(x == zero for x in row):
            continue
        if any(x != zero for x in row[:nhigh]):
            continue
        terms = {}
        for e, idx in mono_index.items():
            if row[idx] != zero:
                terms[e] = row[idx]
        basis.append(LaurentElement(n, sp.from_dict(field, nvars, terms)))
    complete = work_cap >= hermann_bound(max(d, 1), n)
    return TruncationResult(
        tuple(basis), complete, d, work_cap, _prune_generators(basis)
    )


def character_slice(
    field: ExactField, weights, d: int
) -> tuple[LaurentElement, ...]:
    """Exact basis of I(G) intersected with the degree <= d slice, for G the
    image of the diagonalizable group acting by the given weights: the kernel
    of the evaluation of monomials in the group algebra of A."""
    weights = list(weights)
    n = len(weights)
    nvars = 2 * n * n
    monos = sp.monomials_up_to(nvars, d)
    images: list[GroupElement | None] = []
    offsets = _offdiag_indices(n)
    for e in monos:
        if any(e[idx] > 0 for idx in offsets):
            images.append(None)  # maps to zero in the group algebra
            continue
        acc = weights[0].group.zero()
        for i in range(n):
            zc = e[z_index(n, i, i)]
            wc = e[w_index(n, i, i)]
            if zc:
                acc = acc + weights[i].scale(zc)
            if wc:
                acc = acc + weights[i].scale(-wc)
        images.append(acc)
    cols: dict[GroupElement, int] = {}
    for img in images:
        if img is not None and img not in cols:
            cols[img] = len(cols)
    mat = [[field.zero()] * len(cols) for _ in monos]
    one = field.one()
    for r, img in enumerate(images):
        if img is not None:
            mat[r][cols[img]] = one
    null = fieldmod.kernel(field, fieldmod.transpose(mat))
    basis = []
    for v in null:
        terms = {}
        for e, c in zip(monos, v):
            if c != field.zero():
                terms[e] = c
        basis.append(LaurentElement(n, sp.from_dict(field, nvars, terms)))
    return tuple(basis)


def character_slice_generators(
    field: ExactField, weights, d: int
) -> tuple[LaurentElement, ...]:
    """A small generating set of the ideal generated by the exact degree <= d
    slice: the off-diagonal variables (for d >= 1) plus the kernel of the
    character evaluation restricted to diagonal monomials of degree <= d.
    Generates the same ideal as the full slice."""
    weights = list(weights)
    n = len(weights)
    gens: list[LaurentElement] = []
    if d >= 1:
        for i in range(n):
            for j in range(n):
                if i != j:
                    gens.append(z_var(field, n, i, j))
                    gens.append(w_var(field, n, i, j))
    # diagonal monomials only, in the small 2n-variable ring
    diag_monos = sp.monomials_up_to(2 * n, d)
    images = []
    for e in diag_monos:
        acc = weights[0].group.zero()
        for i in range(n):
            if e[i]:
                acc = acc + weights[i].scale(e[i])
            if e[n + i]:
                acc = acc + weights[i].scale(-e[n + i])
        images.append(acc)
    cols: dict[GroupElement, int] = {}
    for img in images:
        if img not in cols:
            cols[img] = len(cols)
    mat = [[field.zero()] * len(cols) for _ in diag_monos]
    one = field.one()
    for r, img in enumerate(images):
        mat[r][cols[img]] = one
    null = fieldmod.kernel(field, fieldmod.transpose(mat))
    for v in null:
        terms = {}
        for e, c in zip(diag_monos, v):
            if c != field.zero():
                terms[e] = c
        gens.append(_from_diag_poly(field, n, sp.from_dict(field, 2 * n, terms)))
    return tuple(g for g in gens if not g.is_zero())


def presentation_truncation(
    G: SubgroupPresentation, d: int, work_cap: int
) -> TruncationResult:
    """Degree <= d slice of I(G). Exact (complete) when weight data is
    attached; otherwise the generator-multiple lower bound."""
    if G.weights is not None:
        basis = character_slice(G.field, G.weights, d)
        gens = character_slice_generators(G.field, G.weights, d)
        return TruncationResult(basis, True, d, work_cap, gens)
    return truncated_ideal_part(G.ideal, d, work_cap)


# ---------------------------------------------------------------------------
# Diagonalizable images


def _balanced_binomial(field: ExactField, n: int, row: list[int]) -> LaurentElement:
    """Binomial of a relation-lattice row, in the lowest-degree form: a
    single-coordinate relation c is split Z^ceil(c/2) - W^floor(c/2); general
    rows use prod Z^{u+} - prod Z^{u-}."""
    support = [i for i, u in enumerate(row) if u != 0]
    if len(support) == 1 and abs(row[support[0]]) >= 2:
        i = support[0]
        c = abs(row[i])
        hi, lo = (c + 1) // 2, c // 2
        e1 = [0] * (2 * n * n)
        e1[z_index(n, i, i)] = hi
        e2 = [0] * (2 * n * n)
        e2[w_index(n, i, i)] = lo
        return lau_monomial(field, n, e1) - lau_monomial(field, n, e2)
    e1 = [0] * (2 * n * n)
    e2 = [0] * (2 * n * n)
    for i, u in enumerate(row):
        if u > 0:
            e1[z_index(n, i, i)] = u
        elif u < 0:
            e2[z_index(n, i, i)] = -u
    return lau_monomial(field, n, e1) - lau_monomial(field, n, e2)


def diagonalizable_image_ideal(
    field: ExactField, weights, name: str = ""
) -> SubgroupPresentation:
    """Presentation of the image of the diagonalizable group acting
    diagonally with the given characters."""
    weights = tuple(weights)
    if not weights:
        raise ValueError("need at least one weight")
    n = len(weights)
    gens: list[LaurentElement] = []
    for i in range(n):
        for j in range(n):
            if i != j:
                gens.append(z_var(field, n, i, j))
                gens.append(w_var(field, n, i, j))
    for i in range(n):
        for j in range(i + 1, n):
            if weights[i] == weights[j]:
                gens.append(z_var(field, n, i, i) - z_var(field, n, j, j))
                gens.append(w_var(field, n, i, i) - w_var(field, n, j, j))
    distinct: list[GroupElement] = []
    positions: list[int] = []
    for i, w in enumerate(weights):
        if w not in distinct:
            distinct.append(w)
            positions.append(i)
    for row in relation_lattice(distinct):
        full = [0] * n
        for val, pos in zip(row, positions):
            full[pos] = val
        g = _balanced_binomial(field, n, full)
        if not g.is_zero():
            gens.append(g)
    ideal = LaurentIdeal(field, n, tuple(gens), name)
    return SubgroupPresentation(field, n, ideal, weights, name)


def image_points(field: ExactField, group: FgAbelianGroup, weights):
    """All F_p-points of the image: diag(chi(a_1), ..., chi(a_n)) over all
    characters chi; requires finite A with exponent dividing p - 1."""
    from .diagrep import all_characters

    weights = list(weights)
    n = len(weights)
    pts = []
    for chi in all_characters(field, group):
        vals = [chi.value(w) for w in weights]
        g = [
            [vals[i] if i == j else field.zero() for j in range(n)]
            for i in range(n)
        ]
        ginv = [
            [field.inv(vals[i]) if i == j else field.zero() for j in range(n)]
            for i in range(n)
        ]
        pts.append((g, ginv))
    return pts


# ---------------------------------------------------------------------------
# Catalog


def catalog(field: ExactField) -> dict[str, SubgroupPresentation]:
    """Small study catalog of diagonalizable subgroups."""
    from .abelian import parse_group

    Z = parse_group("Z")
    out = {}
    out["trivial-gl1"] = diagonalizable_image_ideal(
        field, [Z.element([0])], "trivial-gl1"
    )
    for p in (2, 3, 4, 5):
        Zp = parse_group(f"Z/{p}")
        out[f"mu{p}"] = diagonalizable_image_ideal(
            field, [Zp.element([1])], f"mu{p}"
        )
    out["gm-gl1"] = diagonalizable_image_ideal(field, [Z.element([1])], "gm-gl1")
    out["torus-t-t2-gl2"] = diagonalizable_image_ideal(
        field, [Z.element([1]), Z.element([2])], "torus-t-t2-gl2"
    )
    Z2 = parse_group("Z^2")
    out["diagonal-torus-gl2"] = diagonalizable_image_ideal(
        field, [Z2.element([1, 0]), Z2.element([0, 1])], "diagonal-torus-gl2"
    )
    return out
