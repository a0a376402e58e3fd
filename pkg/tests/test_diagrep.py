import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diagcat import abelian as ab
from diagcat import diagrep as dr
from diagcat import field as fm
from diagcat.field import ExactField, QQ
from diagcat.paren import enumerate_shapes

Z = ab.parse_group("Z")
Z4 = ab.parse_group("Z/4")
Z6 = ab.parse_group("Z/6")
F5 = ExactField(5)
F7 = ExactField(7)


def _irr(group, *coords):
    return dr.irreducible(group, [group.element([c]) for c in coords])


def test_make_irreducible():
    unit = _irr(Z, 0)
    assert unit == dr.unit_object(Z)
    assert unit.sort == (1, 1)
    b = _irr(Z, 1, 2)
    assert b.sort == (1, 2)
    rep = _irr(Z, 1, 1)
    assert rep.sort == (1, 2)
    assert dr.isotypic_multiplicity(rep, Z.element([1])) == 2
    assert dr.is_tensor_irreducible(rep)
    assert not dr.is_tensor_irreducible(dr.tensor_obj(rep, rep))
    assert not dr.is_tensor_irreducible(dr.ZERO)
    with pytest.raises(ValueError):
        dr.irreducible(Z, [])


def test_tensor_objects():
    b = _irr(Z, 1)
    c = _irr(Z, 2)
    t = dr.tensor_obj(b, c)
    assert t.sort == (2, 1)
    assert [x.weight for x in dr.ordered_basis(t)] == [Z.element([3])]
    assert dr.tensor_obj(_irr(Z, 1, 2), _irr(Z, 0)).sort == (2, 2)
    assert dr.tensor_obj(b, dr.ZERO) == dr.ZERO
    assert dr.tensor_obj(dr.ZERO, c) == dr.ZERO
    with pytest.raises(ValueError):
        dr.tensor_obj(b, _irr(Z4, 1))


def test_tensor_factorize_round_trip():
    b = dr.tensor_obj(dr.tensor_obj(_irr(Z, 1), _irr(Z, 2)), _irr(Z, 3))
    tree = dr.tensor_factorize(b)
    (l, r), leaf3 = tree
    assert l == _irr(Z, 1) and r == _irr(Z, 2) and leaf3 == _irr(Z, 3)
    assert dr.retensor(tree) == b
    single = _irr(Z, 5)
    assert dr.tensor_factorize(single) == single
    with pytest.raises(ValueError):
        dr.tensor_factorize(dr.ZERO)

    rng = random.Random(7)
    elems = [Z4.element([k]) for k in range(4)]
    for _ in range(100):
        parts = [
            dr.irreducible(Z4, rng.choices(elems, k=rng.randint(1, 2)))
            for _ in range(rng.randint(1, 4))
        ]
        obj = parts[0]
        for p in parts[1:]:
            if rng.random() < 0.5:
                obj = dr.tensor_obj(obj, p)
            else:
                obj = dr.tensor_obj(p, obj)
        assert dr.retensor(dr.tensor_factorize(obj)) == obj


def test_ordered_basis_lex():
    b = _irr(Z, 1, 2)
    assert [t.elements for t in dr.ordered_basis(b)] == [
        (Z.element([1]),),
        (Z.element([2]),),
    ]
    t = dr.tensor_obj(_irr(Z, 1, 2), _irr(Z, 0, 5))
    got = [tuple(e.coords[0] for e in x.elements) for x in dr.ordered_basis(t)]
    assert got == [(1, 0), (1, 5), (2, 0), (2, 5)]
    rep = _irr(Z, 1, 1)
    slots = dr.ordered_basis(rep)
    assert len(slots) == 2 and slots[0] != slots[1]
    assert slots[0].weight == slots[1].weight


def test_isotypic_multiplicity():
    assert dr.isotypic_multiplicity(_irr(Z, 1, 2), Z.element([1])) == 1
    sq = dr.tensor_obj(_irr(Z, 1), _irr(Z, 1))
    assert dr.isotypic_multiplicity(sq, Z.element([2])) == 1
    t = dr.tensor_obj(_irr(Z, 0, 1), _irr(Z, 0, 1))
    assert dr.isotypic_multiplicity(t, Z.element([1])) == 2
    assert dr.isotypic_multiplicity(dr.ZERO, Z.element([0])) == 0


def test_hom_space_dimensions():
    assert dr.hom_dimension(_irr(Z, 1), _irr(Z, 2)) == 0
    a, b = Z.element([1]), Z.element([2])
    src = dr.irreducible(Z, [a, a])
    tgt = dr.irreducible(Z, [a, b])
    # m_src(a)=2, m_tgt(a)=1, m_tgt(b)=1 but m_src(b)=0: 2*1 + 0*1 = 2
    assert dr.hom_dimension(src, tgt) == 2
    hs = dr.hom_space(F5, src, tgt)
    assert hs.dim == 2 and len(hs.basis) == 2
    zero_space = dr.hom_space(F5, src, dr.ZERO)
    assert zero_space.dim == 0 and zero_space.basis == ()
    # identity lies in Hom(b, b)
    ident = dr.identity_morphism(F5, src)
    assert dr.hom_dimension(src, src) >= 1
    assert dr.apply_morphism(ident, dr.basis_vector(F5, src, 1)) == dr.basis_vector(
        F5, src, 1
    )


def test_compose():
    b = _irr(Z, 1, 2)
    hs = dr.hom_space(F5, b, b)
    f = dr.add_morphisms(hs.basis[0], dr.scale_morphism(3, hs.basis[1]))
    ident = dr.identity_morphism(F5, b)
    assert dr.compose(ident, f) == f
    assert dr.compose(f, ident) == f

    # weight-disjoint morphisms compose to zero
    c = _irr(Z, 7)
    z1 = dr.zero_morphism(F5, b, c)
    z2 = dr.zero_morphism(F5, c, b)
    assert dr.compose(z2, z1).is_zero_morphism()

    rng = random.Random(3)
    for _ in range(30):
        f = _random_morphism(rng, F5, b, b)
        g = _random_morphism(rng, F5, b, b)
        v = dr.vector(F5, b, [rng.randint(0, 4) for _ in range(b.dimension)])
        # apply-map oracle: (g o f)(v) = g(f(v))
        assert dr.apply_morphism(dr.compose(g, f), v) == dr.apply_morphism(
            g, dr.apply_morphism(f, v)
        )


def _random_morphism(rng, field, src, tgt):
    hs = dr.hom_space(field, src, tgt)
    out = dr.zero_morphism(field, src, tgt)
    for e in hs.basis:
        out = dr.add_morphisms(out, dr.scale_morphism(rng.randint(0, 4), e))
    return out


def _equivariant_dim_bruteforce(field, group, src, tgt):
    """Count matrix entries allowed by every point of D(A)(F_q)."""
    chars = dr.all_characters(field, group)
    src_w = dr.basis_weights(src)
    tgt_w = dr.basis_weights(tgt)
    dim = 0
    for wi in tgt_w:
        for wj in src_w:
            if all(chi.value(wi) == chi.value(wj) for chi in chars):
                dim += 1
    return dim


def test_hom_dimension_matches_equivariance_oracle():
    rng = random.Random(11)
    elems = [Z6.element([k]) for k in range(6)]
    for _ in range(40):
        objs = []
        for _ in range(2):
            leaves = [
                dr.irreducible(Z6, rng.choices(elems, k=rng.randint(1, 3)))
                for _ in range(rng.randint(1, 2))
            ]
            obj = leaves[0]
            for leaf in leaves[1:]:
                obj = dr.tensor_obj(obj, leaf)
            objs.append(obj)
        src, tgt = objs
        assert dr.hom_dimension(src, tgt) == _equivariant_dim_bruteforce(
            F7, Z6, src, tgt
        )


def test_dual_examples():
    dd = dr.dual_data(QQ, _irr(Z, 1, 2))
    assert dd.dual == _irr(Z, -1, -2)
    unit = dr.unit_object(Z)
    dd0 = dr.dual_data(QQ, unit)
    assert dd0.dual == unit
    with pytest.raises(ValueError):
        dr.dual_data(QQ, dr.ZERO)


def test_snake_identities():
    for field in (F5, QQ):
        for b in [
            _irr(Z, 0),
            _irr(Z, 1, 2),
            _irr(Z4, 1, 1, 3),
            dr.tensor_obj(_irr(Z, 1), _irr(Z, -1, 2)),
        ]:
            s1, s2 = dr.snake_composites(field, b)
            assert s1 == dr.identity_morphism(field, b)
            assert s2 == dr.identity_morphism(field, dr.dual_data(field, b).dual)


def test_double_dual_weights():
    for b in [_irr(Z, 1, 2), dr.tensor_obj(_irr(Z4, 1), _irr(Z4, 2, 3))]:
        dd = dr.dual_data(QQ, b)
        ddd = dr.dual_data(QQ, dd.dual)
        assert dr.isotypic_weights(ddd.dual) == dr.isotypic_weights(
            dr.normalized_object(b)
        )


def test_direct_sum():
    s = dr.direct_sum_data(QQ, _irr(Z, 1), _irr(Z, 2))
    assert s.total == _irr(Z, 1, 2)
    s2 = dr.direct_sum_data(QQ, _irr(Z, 1), _irr(Z, 1))
    assert s2.total == _irr(Z, 1, 1)

    rng = random.Random(5)
    elems = [Z4.element([k]) for k in range(4)]
    for field in (F5, QQ):
        for _ in range(25):
            b = dr.irreducible(Z4, rng.choices(elems, k=rng.randint(1, 3)))
            c = dr.irreducible(Z4, rng.choices(elems, k=rng.randint(1, 3)))
            data = dr.direct_sum_data(field, b, c)
            idd = dr.identity_morphism(field, data.total)
            assert (
                dr.add_morphisms(
                    dr.compose(data.inj1, data.proj1),
                    dr.compose(data.inj2, data.proj2),
                )
                == idd
            )
            assert dr.compose(data.proj1, data.inj1) == dr.identity_morphism(field, b)
            assert dr.compose(data.proj2, data.inj2) == dr.identity_morphism(field, c)
            assert dr.compose(data.proj2, data.inj1).is_zero_morphism()
            assert dr.compose(data.proj1, data.inj2).is_zero_morphism()


def test_kernel_cokernel():
    b = _irr(Z, 1, 2)
    u, inc = dr.kernel_of(F5, dr.identity_morphism(F5, b))
    assert u.is_zero and inc.is_zero_morphism()

    c = _irr(Z, 0, 5)
    u, inc = dr.kernel_of(F5, dr.zero_morphism(F5, b, c))
    assert u == dr.normalized_object(b)

    rng = random.Random(9)
    elems = [Z4.element([k]) for k in range(4)]
    for _ in range(30):
        src = dr.irreducible(Z4, rng.choices(elems, k=rng.randint(1, 3)))
        tgt = dr.irreducible(Z4, rng.choices(elems, k=rng.randint(1, 3)))
        f = _random_morphism(rng, F5, src, tgt)
        dense = dr.dense_matrix(f)
        r = fm.rank(F5, dense)
        u, inc = dr.kernel_of(F5, f)
        assert u.dimension == src.dimension - r  # rank-nullity, rref oracle
        if not u.is_zero:
            assert dr.compose(f, inc).is_zero_morphism()
            assert fm.rank(F5, dr.dense_matrix(inc)) == u.dimension
        w, proj = dr.cokernel_of(F5, f)
        assert w.dimension == tgt.dimension - r
        if not w.is_zero:
            assert dr.compose(proj, f).is_zero_morphism()
            assert fm.rank(F5, dr.dense_matrix(proj)) == w.dimension


def test_normalize():
    assert dr.normalized_object(dr.tensor_obj(_irr(Z, 1), _irr(Z, 2))) == _irr(Z, 3)
    assert dr.normalized_object(dr.tensor_obj(_irr(Z, 1, 2), _irr(Z, 0))) == _irr(
        Z, 1, 2
    )
    t = dr.tensor_obj(_irr(Z, 0, 1), _irr(Z, 0, 1))
    assert dr.normalized_object(t) == _irr(Z, 0, 1, 1, 2)
    c, iso = dr.normalize_to_irreducible(F5, t)
    assert c == _irr(Z, 0, 1, 1, 2)
    assert fm.rank(F5, dr.dense_matrix(iso)) == t.dimension
    # normalizing twice is stable
    c2, _ = dr.normalize_to_irreducible(F5, c)
    assert c2 == c


def test_unique_tensor_factorization_property():
    rng = random.Random(13)
    elems = [Z4.element([k]) for k in range(4)]

    def random_object():
        leaves = [
            dr.irreducible(Z4, rng.choices(elems, k=rng.randint(1, 2)))
            for _ in range(rng.randint(1, 2))
        ]
        obj = leaves[0]
        for leaf in leaves[1:]:
            obj = dr.tensor_obj(obj, leaf)
        return obj

    objs = [random_object() for _ in range(60)]
    seen = {}
    for b in objs:
        for c in objs:
            t = dr.tensor_obj(b, c)
            if t in seen:
                assert seen[t] == (b, c)
            seen[t] = (b, c)


def test_character_extraction():
    one = dr.char_object(Z, Z.element([1]))
    two = dr.char_object(Z, Z.element([2]))
    assert dr.char_sum(one, two) == dr.char_object(Z, Z.element([3]))
    three4 = dr.char_object(Z4, Z4.element([3]))
    assert dr.char_sum(three4, three4) == dr.char_object(Z4, Z4.element([2]))

    assert dr.character_group_check(Z6, Z6.elements()).ok
    G = ab.parse_group("Z + Z/2")
    import itertools

    elems = [G.element([a, b]) for a, b in itertools.product(range(-3, 4), range(2))]
    assert dr.character_group_check(G, elems).ok


def test_all_characters():
    chars = dr.all_characters(F7, Z6)
    assert len(chars) == 6
    gen = Z6.element([1])
    assert sorted(c.value(gen) for c in chars) == [1, 2, 3, 4, 5, 6]
    with pytest.raises(ValueError):
        dr.all_characters(F5, Z6)  # 6 does not divide 4


def test_object_text_round_trip():
    b = dr.tensor_obj(dr.tensor_obj(_irr(Z, 1, 2), _irr(Z, 0)), _irr(Z, 5))
    text = dr.format_object(b)
    assert text == "( ( {1 2} {0} ) {5} )"
    assert dr.parse_object(Z, text) == b
    assert dr.parse_object(Z, "0") == dr.ZERO
    G = ab.parse_group("Z^2")
    c = dr.irreducible(G, [G.element([1, 0]), G.element([0, 1])])
    assert dr.parse_object(G, dr.format_object(c)) == c
    with pytest.raises(ValueError):
        dr.parse_object(Z, "( {1} ")


def _multisets(group, max_size=2):
    elems = sorted(group.elements(), key=lambda e: e.coords)
    return st.lists(st.sampled_from(elems), min_size=1, max_size=max_size).map(
        lambda xs: dr.weight_multiset(group, xs)
    )


def _objects(group, max_len=3):
    return st.lists(_multisets(group), min_size=1, max_size=max_len).flatmap(
        lambda leaves: st.sampled_from(
            [
                dr.BaseObject(shape, tuple(leaves))
                for shape in enumerate_shapes(len(leaves))
            ]
        )
    )


@settings(max_examples=60, deadline=None)
@given(_objects(ab.parse_group("Z/4")))
def test_normalize_idempotent_property(b):
    c, iso = dr.normalize_to_irreducible(F5, b)
    assert dr.is_tensor_irreducible(c)
    assert dr.isotypic_weights(c) == dr.isotypic_weights(b)
    assert fm.rank(F5, dr.dense_matrix(iso)) == b.dimension
    c2, _ = dr.normalize_to_irreducible(F5, c)
    assert c2 == c


@settings(max_examples=60, deadline=None)
@given(_objects(ab.parse_group("Z/4"), max_len=2), _objects(ab.parse_group("Z/4"), max_len=2))
def test_tensor_length_additive_property(b, c):
    t = dr.tensor_obj(b, c)
    assert t.tensor_length == b.tensor_length + c.tensor_length
    assert t.dimension == b.dimension * c.dimension
    tree = dr.tensor_factorize(t)
    assert dr.retensor(tree) == t


def test_enumerate_objects_counts():
    objs = dr.enumerate_objects(ab.parse_group("Z/2"), 2, 2)
    # m=1: multisets of size 1 (2) and 2 (3); m=2 sizes (1,1): 4,
    # sizes (1,2) and (2,1): 2*3 each
    assert len(objs) == 2 + 3 + 4 + 6 + 6
    assert len(set(objs)) == len(objs)
    assert all(b.dimension <= 2 and b.tensor_length <= 2 for b in objs)
