"""Shape polynomials, canonical bases, stabilizer polynomials and the
defining-degree machinery.

A shape polynomial P in N[X,Y] turns a vector space V into P(V, V*) by
substituting tensor products for multiplication and direct sums for addition.
The canonical basis of P(V, V*) is built from an ordered basis of V by a
fixed recursion (terms in graded order, X factors before Y factors, row-major
tensor expansion), and the GL_n action on it is a matrix of ring elements of
degree at most deg P. For an r-dimensional subspace spanned by the columns of
u A, stability under a group element g is the vanishing of the (s-r) x r
lower-left block of T~^{-1} B(g) T~, where T~ extends A by unit vectors in
the non-pivot rows.

Degrees of definition are computed by ascending the chain of truncation
groups, with two-way membership witnesses at the winning degree and point
refutation certificates below it.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass

from . import field as fieldmod
from . import laurent as la
from . import sparsepoly as sp
from .diagrep import BaseObject, basis_weights
from .field import ExactField
from .laurent import (
    LaurentElement,
    LaurentIdeal,
    SubgroupPresentation,
    TruncationResult,
)


# ---------------------------------------------------------------------------
# Shape polynomials


@dataclass(frozen=True)
class ShapePolynomial:
    """Element of N[X,Y]; terms ((a, b), coeff) sorted by (a+b, -a)."""

    terms: tuple[tuple[tuple[int, int], int], ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("shape polynomial must be nonzero")
        for (a, b), c in self.terms:
            if a < 0 or b < 0 or c <= 0:
                raise ValueError("coefficients must be positive, exponents >= 0")

    @property
    def degree(self) -> int:
        return max(a + b for (a, b), _ in self.terms)

    def dimension(self, n: int) -> int:
        return sum(c * n**a * n**b for (a, b), c in self.terms)

    def __str__(self) -> str:
        parts = []
        for (a, b), c in self.terms:
            factors = []
            if c != 1 or (a == 0 and b == 0):
                factors.append(str(c))
            if a:
                factors.append("X" if a == 1 else f"X^{a}")
            if b:
                factors.append("Y" if b == 1 else f"Y^{b}")
            parts.append("*".join(factors))
        return " + ".join(parts)


def _term_key(ab):
    a, b = ab
    return (a + b, -a)


def shape_polynomial(term_map: dict) -> ShapePolynomial:
    items = [((a, b), c) for (a, b), c in term_map.items() if c]
    items.sort(key=lambda t: _term_key(t[0]))
    return ShapePolynomial(tuple(items))


_SHAPE_TOKEN = re.compile(r"\s*(?:(?P<var>[XY])(?:\^(?P<pow>\d+))?|(?P<num>\d+)|(?P<op>[+*]))")


def parse_shape(text: str) -> ShapePolynomial:
    """Parse shape polynomials like `X*Y + 1` or `3*X^2*Y + X`."""
    terms: dict = {}
    pos = 0
    coeff, a, b = 1, 0, 0
    started = False

    def flush():
        nonlocal coeff, a, b, started
        if started:
            terms[(a, b)] = terms.get((a, b), 0) + coeff
        coeff, a, b = 1, 0, 0
        started = False

    while pos < len(text):
        m = _SHAPE_TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"cannot parse shape polynomial at {text[pos:]!r}")
        pos = m.end()
        if m.group("op") == "+":
            flush()
        elif m.group("op") == "*":
            continue
        elif m.group("num"):
            coeff *= int(m.group("num"))
            started = True
        else:
            k = int(m.group("pow") or 1)
            if m.group("var") == "X":
                a += k
            else:
                b += k
            started = True
    flush()
    if not terms:
        raise ValueError("empty shape polynomial")
    return shape_polynomial(terms)


def pd_polynomial(n: int, d: int) -> ShapePolynomial:
    """The universal shape polynomial whose evaluation covers the degree <= d
    slice of the coordinate ring of GL_n."""
    if n < 1 or d < 0:
        raise ValueError("need n >= 1 and d >= 0")
    terms = {}
    for a in range(d + 1):
        for b in range(d + 1 - a):
            terms[(a, b)] = math.comb(a + n - 1, a) * math.comb(b + n - 1, b)
    return shape_polynomial(terms)


# ---------------------------------------------------------------------------
# Canonical bases


@dataclass(frozen=True)
class CanonicalLabel:
    """One canonical basis vector of P(V, V*): a term of P, a copy index
    within its coefficient, and the tensor word of basis indices."""

    term: tuple[int, int]
    copy: int
    vfactors: tuple[int, ...]
    dualfactors: tuple[int, ...]

    def __str__(self) -> str:
        parts = [f"v{i + 1}" for i in self.vfactors]
        parts += [f"v{j + 1}*" for j in self.dualfactors]
        word = "(x)".join(parts) if parts else "1"
        return f"{word}[{self.term[0]},{self.term[1]};{self.copy}]"


def canonical_basis(P: ShapePolynomial, n: int) -> list[CanonicalLabel]:
    out = []
    for (a, b), c in P.terms:
        for copy in range(c):
            for vf in itertools.product(range(n), repeat=a):
                for df in itertools.product(range(n), repeat=b):
                    out.append(CanonicalLabel((a, b), copy, vf, df))
    return out


def label_weight(label: CanonicalLabel, weights):
    """Weight of a canonical label under a diagonal action with the given
    basis weights; dual factors contribute negatively."""
    acc = weights[0].group.zero()
    for i in label.vfactors:
        acc = acc + weights[i]
    for j in label.dualfactors:
        acc = acc - weights[j]
    return acc


# ---------------------------------------------------------------------------
# Action matrices


def _kron(field: ExactField, mats):
    """Kronecker product of numeric matrices (row-major index order)."""
    out = [[field.one()]]
    for m in mats:
        rows = len(m)
        cols = len(m[0]) if rows else 0
        new = [
            [field.zero()] * (len(out[0]) * cols)
            for _ in range(len(out) * rows)
        ]
        for i0, row0 in enumerate(out):
            for j0, x in enumerate(row0):
                if x == field.zero():
                    continue
                for i1 in range(rows):
                    for j1 in range(cols):
                        y = m[i1][j1]
                        if y == field.zero():
                            continue
                        new[i0 * rows + i1][j0 * cols + j1] = field.mul(x, y)
        out = new
    return out


def _kron_laurent(field: ExactField, n: int, mats):
    out = [[la.lau_const(field, n, 1)]]
    for m in mats:
        rows = len(m)
        cols = len(m[0])
        new = [
            [la.lau_zero(field, n) for _ in range(len(out[0]) * cols)]
            for _ in range(len(out) * rows)
        ]
        for i0, row0 in enumerate(out):
            for j0, x in enumerate(row0):
                if x.is_zero():
                    continue
                for i1 in range(rows):
                    for j1 in range(cols):
                        y = m[i1][j1]
                        if y.is_zero():
                            continue
                        new[i0 * rows + i1][j0 * cols + j1] = x * y
        out = new
    return out


def action_matrix(field: ExactField, P: ShapePolynomial, n: int):
    """s x s matrix over the coordinate ring: block diagonal over terms and
    copies; on V the block is Z, on V* it is W^T, tensor factors Kronecker."""
    zm = [[la.z_var(field, n, i, j) for j in range(n)] for i in range(n)]
    wt = [[la.w_var(field, n, j, i) for j in range(n)] for i in range(n)]
    blocks = []
    for (a, b), c in P.terms:
        block = _kron_laurent(field, n, [zm] * a + [wt] * b)
        for _ in range(c):
            blocks.append(block)
    s = sum(len(b) for b in blocks)
    out = [[la.lau_zero(field, n) for _ in range(s)] for _ in range(s)]
    at = 0
    for block in blocks:
        k = len(block)
        for i in range(k):
            for j in range(k):
                out[at + i][at + j] = block[i][j]
        at += k
    return out


def point_action_matrix(field: ExactField, P: ShapePolynomial, n: int, g, ginv):
    """The action matrix evaluated at a concrete point (g, g^{-1})."""
    gt = fieldmod.transpose(ginv)
    blocks = []
    for (a, b), c in P.terms:
        block = _kron(field, [g] * a + [gt] * b)
        for _ in range(c):
            blocks.append(block)
    s = sum(len(b) for b in blocks)
    out = fieldmod.zeros(field, s, s)
    at = 0
    for block in blocks:
        k = len(block)
        for i in range(k):
            for j in range(k):
                out[at + i][at + j] = block[i][j]
        at += k
    return out


# ---------------------------------------------------------------------------
# Stabilizer polynomials


@dataclass(frozen=True)
class StabilizerProblem:
    shape: ShapePolynomial
    n: int
    pivot_rows: tuple[int, ...]  # 1-based, increasing
    matrix: tuple  # s x r over the field, columns spanning the subspace
    field: ExactField

    def __post_init__(self):
        s = self.shape.dimension(self.n)
        r = len(self.matrix[0]) if self.matrix else 0
        if not (1 <= r <= s):
            raise ValueError("need 1 <= r <= s")
        if len(self.matrix) != s:
            raise ValueError(f"matrix must have s = {s} rows")
        if list(self.pivot_rows) != sorted(set(self.pivot_rows)) or len(
            self.pivot_rows
        ) != r:
            raise ValueError("pivot rows must be r strictly increasing indices")
        minor = [
            [self.matrix[i - 1][j] for j in range(r)] for i in self.pivot_rows
        ]
        if fieldmod.det(self.field, minor) == self.field.zero():
            raise ValueError("pivot minor is singular")


def _extend_matrix(field: ExactField, A, pivot_rows_1based):
    """T~ = [A | E] with E the unit vectors in the non-pivot rows."""
    s = len(A)
    r = len(A[0])
    pivots = set(i - 1 for i in pivot_rows_1based)
    nonpivot = [i for i in range(s) if i not in pivots]
    t = [[field.zero()] * s for _ in range(s)]
    for i in range(s):
        for j in range(r):
            t[i][j] = A[i][j]
    for col, row in enumerate(nonpivot):
        t[row][r + col] = field.one()
    return t


def stabilizer_polys(prob: StabilizerProblem) -> list[LaurentElement]:
    """The (s-r)*r entries whose common vanishing is exactly the stabilizer
    of the subspace, each of degree <= deg(shape)."""
    field, n = prob.field, prob.n
    A = [list(row) for row in prob.matrix]
    s = len(A)
    r = len(A[0])
    tmat = _extend_matrix(field, A, prob.pivot_rows)
    tinv = fieldmod.inverse(field, tmat)
    B = action_matrix(field, prob.shape, n)
    # M = tinv * B * tmat over the ring
    left = [
        [
            _scalar_combo(field, n, [tinv[i][k] for k in range(s)], [B[k][j] for k in range(s)])
            for j in range(s)
        ]
        for i in range(s)
    ]
    out = []
    for i in range(r, s):
        for j in range(r):
            acc = la.lau_zero(field, n)
            for k in range(s):
                if tmat[k][j] != field.zero():
                    acc = acc + left[i][k].scale(tmat[k][j])
            out.append(acc)
    return out


def _scalar_combo(field, n, scalars, elements) -> LaurentElement:
    acc = la.lau_zero(field, n)
    for c, e in zip(scalars, elements):
        if c != field.zero() and not e.is_zero():
            acc = acc + e.scale(c)
    return acc


def point_stabilizes(field: ExactField, P: ShapePolynomial, n: int, g, ginv, A) -> bool:
    """Brute-force oracle: does g map the column span of u A into itself?"""
    M = point_action_matrix(field, P, n, g, ginv)
    MA = fieldmod.mat_mul(field, M, A)
    base_rank = fieldmod.rank(field, A)
    joint = [rowa + rowm for rowa, rowm in zip(A, MA)]
    return fieldmod.rank(field, joint) == base_rank


# ---------------------------------------------------------------------------
# Symbolic mode (entries of the subspace matrix as indeterminates)


@dataclass(frozen=True)
class SymbolicStabilizer:
    n: int
    s: int
    r: int
    pivot_rows: tuple[int, ...]
    det: sp.SparsePoly  # det(T~) in the T variables
    numerators: tuple[sp.SparsePoly, ...]  # det * Q_i, in T and Z/W variables

    def specialize(self, field: ExactField, A) -> list[LaurentElement]:
        """Evaluate the T variables at a concrete matrix; returns the Q_i."""
        n, s, r = self.n, self.s, self.r
        nT = s * r
        assign = {}
        for i in range(s):
            for j in range(r):
                assign[i * r + j] = field.of(A[i][j])
        detval = _substitute(field, self.det, assign, nT, n)
        if detval == field.zero():
            raise ValueError("pivot minor is singular at this specialization")
        dinv = field.inv(detval)
        out = []
        for num in self.numerators:
            lau = _substitute_to_laurent(field, num, assign, nT, n)
            out.append(lau.scale(dinv))
        return out


def _substitute(field, poly, assign, nT, n):
    acc = field.zero()
    for e, c in poly.terms:
        t = field.of(c)
        for idx in range(nT):
            for _ in range(e[idx]):
                t = field.mul(t, assign[idx])
        acc = field.add(acc, t)
    return acc


def _substitute_to_laurent(field, poly, assign, nT, n) -> LaurentElement:
    d: dict = {}
    z = field.zero()
    for e, c in poly.terms:
        t = field.of(c)
        for idx in range(nT):
            for _ in range(e[idx]):
                t = field.mul(t, assign[idx])
        if t == z:
            continue
        rest = tuple(e[nT:])
        s0 = field.add(d.get(rest, z), t)
        if s0 == z:
            d.pop(rest, None)
        else:
            d[rest] = s0
    return LaurentElement(n, sp.from_dict(field, 2 * n * n, d))


def _poly_matmul(mats_a, mats_b):
    s = len(mats_a)
    cols = len(mats_b[0])
    inner = len(mats_b)
    zero = None
    out = []
    for i in range(s):
        row = []
        for j in range(cols):
            acc = None
            for k in range(inner):
                prod = mats_a[i][k] * mats_b[k][j]
                acc = prod if acc is None else acc + prod
            row.append(acc)
        out.append(row)
    return out


def _adjugate(field, m, nvars):
    """Adjugate of a small matrix of polynomials by cofactor expansion."""
    s = len(m)

    def minor_det(rows, cols):
        if not rows:
            return sp.constant(field, nvars, 1)
        i = rows[0]
        acc = None
        for pos, j in enumerate(cols):
            sub = minor_det(rows[1:], cols[:pos] + cols[pos + 1 :])
            term = m[i][j] * sub
            if pos % 2 == 1:
                term = term.scale(field.neg(field.one()))
            acc = term if acc is None else acc + term
        return acc

    full_rows = list(range(s))
    adj = [[None] * s for _ in range(s)]
    for i in range(s):
        for j in range(s):
            rows = [r for r in full_rows if r != i]
            cols = [c for c in full_rows if c != j]
            c0 = minor_det(rows, cols)
            if (i + j) % 2 == 1:
                c0 = c0.scale(field.neg(field.one()))
            adj[j][i] = c0  # transpose of the cofactor matrix
    det = minor_det(full_rows, full_rows)
    return adj, det


MAX_SYMBOLIC_DIMENSION = 6


def stabilizer_polys_symbolic(
    field: ExactField, P: ShapePolynomial, n: int, r: int, pivot_rows
) -> SymbolicStabilizer:
    """Stabilizer polynomials with the subspace matrix symbolic; tractable
    only for small spaces (s <= 6)."""
    s = P.dimension(n)
    if s > MAX_SYMBOLIC_DIMENSION:
        raise ValueError(
            f"symbolic mode supports dimension <= {MAX_SYMBOLIC_DIMENSION}, got {s}"
        )
    pivot_rows = tuple(pivot_rows)
    nT = s * r
    nvars = nT + 2 * n * n

    def tvar(i, j):
        return sp.variable(field, nvars, i * r + j)

    def zero():
        return sp.zero(field, nvars)

    pivots = set(i - 1 for i in pivot_rows)
    nonpivot = [i for i in range(s) if i not in pivots]
    tmat = [[zero() for _ in range(s)] for _ in range(s)]
    for i in range(s):
        for j in range(r):
            tmat[i][j] = tvar(i, j)
    for col, row in enumerate(nonpivot):
        tmat[row][r + col] = sp.constant(field, nvars, 1)

    # embed the action matrix into the big variable ring
    B_small = action_matrix(field, P, n)
    B = [
        [
            _shift_vars(field, e.poly, nT, nvars)
            for e in row
        ]
        for row in B_small
    ]
    adj, det = _adjugate(field, tmat, nvars)
    M = _poly_matmul(_poly_matmul(adj, B), tmat)
    numerators = []
    for i in range(r, s):
        for j in range(r):
            numerators.append(M[i][j])
    return SymbolicStabilizer(n, s, r, pivot_rows, det, tuple(numerators))


def _shift_vars(field, poly, offset, nvars):
    d = {}
    for e, c in poly.terms:
        d[(0,) * offset + tuple(e)] = c
    return sp.from_dict(field, nvars, d)


# ---------------------------------------------------------------------------
# Stability of subspaces


def is_stable(
    field: ExactField,
    b: BaseObject,
    P: ShapePolynomial,
    A,
    presentation: SubgroupPresentation | None = None,
    membership_cap: int = 4,
):
    """Is the subspace spanned by the columns of u A stable under the image
    group of b (diagonalizable fast path), or under a presented group (via
    stabilizer polynomials and capped ideal membership)?"""
    A = [list(row) for row in A]
    r = len(A[0])
    if fieldmod.rank(field, A) != r:
        raise ValueError("columns of the subspace matrix must be independent")
    if presentation is None:
        n = b.dimension
        labels = canonical_basis(P, n)
        if len(labels) != len(A):
            raise ValueError("matrix rows must match the canonical basis")
        weights = basis_weights(b)
        wts = [label_weight(lab, weights) for lab in labels]
        classes = sorted(set(w.coords for w in wts))
        for cls in classes:
            mask = [1 if w.coords == cls else 0 for w in wts]
            for col in range(r):
                proj = [
                    A[i][col] if mask[i] else field.zero() for i in range(len(A))
                ]
                if fieldmod.solve_linear(field, A, proj) is None:
                    return False
        return True
    # general route: all stabilizer polynomials lie in the presented ideal
    s = len(A)
    pivots = _choose_pivots(field, A)
    prob = StabilizerProblem(P, presentation.n, tuple(pivots), _as_tuple(A), field)
    qs = stabilizer_polys(prob)
    for q in qs:
        res = la.ideal_membership_ascending(q, presentation.ideal, membership_cap)
        if not res.is_member:
            if res.definitive:
                return False
            return None  # unknown at cap
    return True


def _choose_pivots(field, A):
    red, pivcols = fieldmod.rref(field, fieldmod.transpose(A))
    return [c + 1 for c in pivcols]


def _as_tuple(A):
    return tuple(tuple(row) for row in A)


# ---------------------------------------------------------------------------
# Truncation chain and the defining degree


def group_le_d(
    G: SubgroupPresentation, d: int, work_cap: int
) -> tuple[SubgroupPresentation, TruncationResult]:
    """The subgroup cut out by the ideal generated by the degree <= d slice."""
    trunc = la.presentation_truncation(G, d, work_cap)
    ideal = LaurentIdeal(G.field, G.n, trunc.generating_set(), f"{G.name}<=deg{d}")
    pres = SubgroupPresentation(G.field, G.n, ideal, None, f"{G.name}<=deg{d}")
    return pres, trunc


@dataclass(frozen=True)
class DegreeRefutation:
    d: int
    generator: LaurentElement
    point: tuple | None  # point of the truncation group where the generator fails
    definitive: bool


@dataclass(frozen=True)
class DefiningDegreeResult:
    status: str  # 'found' | 'exceeds' | 'unknown'
    degree: int | None
    witnesses: tuple  # ((generator, MembershipResult), ...) at the found degree
    refutations: tuple[DegreeRefutation, ...]
    minimality_certified: bool
    slices_exact: bool
    cap: int

    def witness_ok(self) -> bool:
        return all(
            la.verify_membership_witness(g, res) for g, res in self.witnesses
        )


def defining_degree(
    G: SubgroupPresentation, d_max: int, work_cap: int
) -> DefiningDegreeResult:
    """Smallest d <= d_max with I(G_{<= d}) containing every presented
    generator, certified by membership witnesses; smaller degrees carry
    refutation evidence (definitive when the slice is exact and a point
    certificate was found)."""
    refutations: list[DegreeRefutation] = []
    slices_exact = G.weights is not None
    saw_unknown = False
    for d in range(d_max + 1):
        pres, trunc = group_le_d(G, d, work_cap)
        witnesses = []
        failed = None
        for g in G.ideal.generators:
            res = la.ideal_membership_ascending(g, pres.ideal, work_cap)
            if res.is_member:
                witnesses.append((g, res))
            else:
                failed = (g, res)
                break
        if failed is None:
            minimal = slices_exact and all(r.definitive for r in refutations)
            return DefiningDegreeResult(
                "found",
                d,
                tuple(witnesses),
                tuple(refutations),
                minimal,
                slices_exact,
                work_cap,
            )
        g, res = failed
        if res.status == "unknown":
            saw_unknown = True
        refutations.append(
            DegreeRefutation(
                d, g, res.refutation_point, res.definitive and trunc.complete
            )
        )
    status = "unknown" if saw_unknown else "exceeds"
    return DefiningDegreeResult(
        status, None, (), tuple(refutations), False, slices_exact, work_cap
    )


@dataclass(frozen=True)
class DegreesEqualResult:
    status: str  # 'equal' | 'not_equal' | 'unknown'
    d: int
    d_prime: int
    witnesses: tuple
    failing: LaurentElement | None = None
    refutation_point: tuple | None = None


def degrees_equal_check(
    G: SubgroupPresentation, d: int, d_prime: int, work_cap: int
) -> DegreesEqualResult:
    """Are the degree-d and degree-d' truncation groups equal? Decided by
    membership of the d'-slice generators in the ideal of the d-slice."""
    if d > d_prime:
        raise ValueError("need d <= d'")
    if d == d_prime:
        return DegreesEqualResult("equal", d, d_prime, ())
    pres_d, _ = group_le_d(G, d, work_cap)
    _, trunc_hi = group_le_d(G, d_prime, work_cap)
    witnesses = []
    for g in trunc_hi.basis:
        res = la.ideal_membership_ascending(g, pres_d.ideal, work_cap)
        if res.is_member:
            witnesses.append((g, res))
            continue
        if res.definitive:
            return DegreesEqualResult(
                "not_equal", d, d_prime, tuple(witnesses), g, res.refutation_point
            )
        return DegreesEqualResult("unknown", d, d_prime, tuple(witnesses), g)
    return DegreesEqualResult("equal", d, d_prime, tuple(witnesses))
