import random

import pytest

from diagcat import abelian as ab
from diagcat import diagrep as dr
from diagcat import skeleton as sk
from diagcat.field import ExactField

F5 = ExactField(5)
Z4 = ab.parse_group("Z/4")


def _provider():
    return sk.DiagonalizableProvider(F5, Z4, max_size=2)


def test_closure_basics():
    labels = _provider().labels()
    x = sk.closure_leaf(labels[0])
    y = sk.closure_leaf(labels[1])
    t = sk.closure_tensor(x, y)
    assert sk.tensor_length(t) == 2
    assert not sk.is_tensor_irreducible(t)
    assert sk.is_tensor_irreducible(x)
    assert not sk.is_tensor_irreducible(sk.ZERO_CLOSURE)
    assert sk.closure_tensor(x, sk.ZERO_CLOSURE) == sk.ZERO_CLOSURE
    with pytest.raises(ValueError):
        sk.tensor_length(sk.ZERO_CLOSURE)


def test_tensor_injective_on_objects():
    labels = _provider().labels()
    rng = random.Random(2)

    def random_obj():
        x = sk.closure_leaf(rng.choice(labels))
        for _ in range(rng.randint(0, 2)):
            if rng.random() < 0.5:
                x = sk.closure_tensor(x, sk.closure_leaf(rng.choice(labels)))
            else:
                x = sk.closure_tensor(sk.closure_leaf(rng.choice(labels)), x)
        return x

    objs = [random_obj() for _ in range(40)]
    seen = {}
    for a in objs:
        for b in objs:
            t = sk.closure_tensor(a, b)
            if t in seen:
                assert seen[t] == (a, b)
            seen[t] = (a, b)
            assert sk.tensor_length(t) == sk.tensor_length(a) + sk.tensor_length(b)


def test_factorize_round_trip():
    labels = _provider().labels()
    a = sk.closure_leaf(labels[0])
    b = sk.closure_leaf(labels[1])
    c = sk.closure_leaf(labels[2])
    x = sk.closure_tensor(sk.closure_tensor(a, b), c)
    tree = sk.closure_factorize(x)
    assert sk.closure_retensor(tree) == x
    (l, r), leaf = tree
    assert l == a and r == b and leaf == c
    with pytest.raises(ValueError):
        sk.closure_factorize(sk.ZERO_CLOSURE)


def test_no_two_labels_isomorphic():
    prov = _provider()
    labels = prov.labels()
    for i, l1 in enumerate(labels):
        for l2 in labels[i + 1 :]:
            assert not prov.isomorphism_exists(
                sk.closure_leaf(l1), sk.closure_leaf(l2)
            )


def test_provider_matches_model():
    prov = _provider()
    labels = prov.labels()
    x = sk.closure_tensor(sk.closure_leaf(labels[1]), sk.closure_leaf(labels[2]))
    b = prov.evaluate(x)
    assert isinstance(b, dr.BaseObject)
    assert b.tensor_length == 2
    hom = prov.hom_basis(x, x)
    assert len(hom) == dr.hom_dimension(b, b)


def test_pentagon():
    """(Phi (x) id) o Phi o (id (x) Phi) = Phi o Phi on four factors."""
    prov = _provider()
    labels = prov.labels()
    w, x, y, z = (sk.closure_leaf(labels[i]) for i in (1, 2, 3, 4))
    bw, bx, by, bz = (prov.evaluate(v) for v in (w, x, y, z))

    import diagcat.field as fieldmod

    idw = dr.identity_morphism(F5, bw)
    idz = dr.identity_morphism(F5, bz)
    # route 1: w(x(y z)) -> w((x y)z) -> (w(x y))z -> ((w x)y)z
    r1 = dr.compose(
        dr.tensor_hom(dr.associator(F5, bw, bx, by), idz),
        dr.compose(
            dr.associator(F5, bw, dr.tensor_obj(bx, by), bz),
            dr.tensor_hom(idw, dr.associator(F5, bx, by, bz)),
        ),
    )
    # route 2: w(x(y z)) -> (w x)(y z) -> ((w x)y)z
    r2 = dr.compose(
        dr.associator(F5, dr.tensor_obj(bw, bx), by, bz),
        dr.associator(F5, bw, bx, dr.tensor_obj(by, bz)),
    )
    assert r1.source == r2.source and r1.target == r2.target
    assert dr.dense_matrix(r1) == dr.dense_matrix(r2)
    assert fieldmod.rank(F5, dr.dense_matrix(r1)) == r1.source.dimension
