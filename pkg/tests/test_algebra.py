import itertools
import json

import numpy as np
import pytest

from conftest import naive_rank_mod_p
from frobhh.algebra import (
    AlgebraError,
    algebra_from_spec,
    algebra_from_structure,
    algebra_product,
    algebra_tensor,
    algebra_to_spec,
    finite_field_algebra,
    frobenius_power,
    ideal_closure,
    is_ideal,
    load_algebra,
    psi,
    radical,
    truncated_poly,
)
from frobhh.fq import field_make, matmul
from frobhh.zoo import zoo, zoo_algebra


def _naive_mul(a, u, v):
    p, d = a.p, a.dim
    out = [0] * d
    for i in range(d):
        for j in range(d):
            if u[i] and v[j]:
                for c in range(d):
                    out[c] = (out[c] + u[i] * v[j] * int(a.mul[i, j, c])) % p
    return out


def _naive_pow(a, u, e):
    out = [int(x) for x in a.unit]
    for _ in range(e):
        out = _naive_mul(a, out, u)
    return out


def _brute_psi_dim(a, n):
    """d - dim span{r (x - x^(p^n))} over all elements r, x."""
    p, d = a.p, a.dim
    elems = [list(t) for t in itertools.product(range(p), repeat=d)]
    gens = []
    for x in elems:
        g = [(xi - yi) % p for xi, yi in zip(x, _naive_pow(a, x, p**n))]
        if any(g):
            gens.extend(_naive_mul(a, r, g) for r in elems)
    return d - (naive_rank_mod_p(gens, p) if gens else 0)


BRUTE = ["f2_x2", "f2_x4", "f3_x3", "f2_xy", "f4", "f8", "f9"]


@pytest.mark.parametrize("name", BRUTE)
@pytest.mark.parametrize("n", [1, 2, 3])
def test_psi_against_brute_force(name, n):
    a = zoo_algebra(name)
    assert psi(a, n).quotient_dim == _brute_psi_dim(a, n)


def test_psi_of_f4_coefficient_algebra():
    a = zoo_algebra("f4_x2")
    assert a.restrict().dim == 4
    assert [psi(a, n).quotient_dim for n in (1, 2, 3, 4)] == [0, 2, 0, 2]


@pytest.mark.parametrize("p,d", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_psi_of_finite_fields(p, d):
    a = finite_field_algebra(p, d)
    assert [psi(a, n).quotient_dim for n in range(1, 7)] == [d if n % d == 0 else 0 for n in range(1, 7)]


@pytest.mark.parametrize("name", ["f2_x4", "f2_xy", "f4", "f9", "f4_x2"])
def test_psi_ideal_and_quotient_identity(name):
    a = zoo_algebra(name)
    for n in (1, 2, 3):
        q = psi(a, n)
        if q.ideal_basis.shape[0]:
            assert is_ideal(q.source, q.ideal_basis)
        if q.quotient_dim:
            qa = q.algebra()
            assert np.array_equal(frobenius_power(qa, n), np.eye(qa.dim, dtype=np.uint8))
            # the projection is a ring map
            proj = q.projection()
            for i in range(q.source.dim):
                for j in range(q.source.dim):
                    lhs = matmul(qa.field, proj, q.source.mul[i, j][:, None])[:, 0]
                    rhs = qa.multiply(proj[:, i], proj[:, j])
                    assert np.array_equal(lhs, rhs)


@pytest.mark.parametrize("name", ["f2_x4", "f3_x3", "f4", "f8", "f4_x2"])
def test_frobenius_powers(name):
    a = zoo_algebra(name)
    ap = a.restrict()
    one = frobenius_power(a, 1)
    for i in range(ap.dim):
        assert one[:, i].tolist() == _naive_pow(ap, ap.basis_vector(i).tolist(), ap.p)
    for m, n in ((1, 1), (1, 2), (2, 3)):
        lhs = frobenius_power(a, m + n)
        rhs = matmul(ap.field, frobenius_power(a, m), frobenius_power(a, n))
        assert np.array_equal(lhs, rhs)
    assert np.array_equal(frobenius_power(a, 0), np.eye(ap.dim, dtype=np.uint8))


def test_radical_by_enumeration():
    for name, want in (("f2_x4", 3), ("f3_x3", 2), ("f2_xy", 3), ("f4", 0), ("f4_x2", 2)):
        a = zoo_algebra(name)
        assert radical(a).shape[0] == want
    a = zoo_algebra("f2_x4")
    nil = [x for x in itertools.product(range(2), repeat=4) if not any(_naive_pow(a, list(x), 4))]
    assert len(nil) == 2 ** radical(a).shape[0]


def test_validation_errors():
    f2 = field_make(2)
    with pytest.raises(AlgebraError, match="commutativity"):
        algebra_from_structure(f2, [[[1, 0], [0, 1]], [[0, 0], [0, 0]]], [1, 0])
    with pytest.raises(AlgebraError, match="unit"):
        algebra_from_structure(f2, [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [1, 0])
    with pytest.raises(AlgebraError, match="0..1"):
        algebra_from_structure(f2, [[[2]]], [1])
    # commutative with unit but (x x) y != x (x y)
    mul = np.zeros((3, 3, 3), dtype=int)
    for i in range(3):
        mul[0, i, i] = mul[i, 0, i] = 1
    mul[1, 1, 2] = 1
    mul[1, 2, 1] = mul[2, 1, 1] = 1
    with pytest.raises(AlgebraError, match="associativity"):
        algebra_from_structure(f2, mul, [1, 0, 0])


def test_truncated_poly_shape():
    a = truncated_poly(field_make(2), [2, 2])
    assert a.dim == 4 and a.name == "F2[x1,x2]/(x1^2,x2^2)"
    b = truncated_poly(field_make(3), [3])
    x = b.basis_vector(1)
    assert b.power(x, 2).tolist() == [0, 0, 1]
    assert not b.power(x, 3).any()


def test_tensor_and_product():
    a, b = zoo_algebra("f2_x2"), zoo_algebra("f4")
    t = algebra_tensor(a, b)
    assert t.dim == 4 and t.scalar_card == 4
    assert psi(t, 2).quotient_dim == 2
    pr = algebra_product(a, b)
    assert pr.dim == 4 and pr.scalar_card == 2
    assert psi(pr, 2).quotient_dim == 1 + 2


def test_spec_roundtrip(tmp_path):
    for a in zoo():
        spec = algebra_to_spec(a)
        b = algebra_from_spec(json.loads(json.dumps(spec)))
        assert b.same_as(a) and b.scalar_card == a.scalar_card and b.name == a.name
    path = tmp_path / "a.json"
    path.write_text(json.dumps({"constructor": "truncated_poly", "p": 3, "exponents": [3]}))
    assert load_algebra(path).same_as(zoo_algebra("f3_x3"))
    with pytest.raises(AlgebraError):
        algebra_from_spec({"constructor": "nope"})
    with pytest.raises(AlgebraError):
        algebra_from_spec({"p": 2, "dim": 2, "unit": [1, 0], "mul": [[1]]})


def test_ideal_closure():
    a = zoo_algebra("f2_x4")
    x2 = np.array([[0, 0, 1, 0]], dtype=np.uint8)
    ideal = ideal_closure(a, x2)
    assert ideal.shape[0] == 2 and is_ideal(a, ideal)
    assert not is_ideal(a, np.array([[0, 1, 0, 0]], dtype=np.uint8))
