import itertools

import numpy as np
import pytest

from frobhh.algebra import algebra_from_structure, algebra_product
from frobhh.fq import field_make
from frobhh.simplicial import (
    CosimplicialSet,
    SimplicialError,
    TruncatedSimplicialRing,
    constant_simplicial_ring,
    cosimplicial_violations,
    cycle_basis,
    cycle_is_boundary,
    function_simplicial_ring,
    lemma21_witness,
    matrix_ring,
    moore_basis,
    moore_homotopy,
    power_identity_check,
    sample_lemma21,
    simplex_cosimplicial,
    simplicial_from_spec,
    simplicial_validate,
    square_zero_circle,
    standard_cosimplicial,
)
from frobhh.zoo import zoo_algebra

F2, F4 = field_make(2), field_make(2, 2)


def _field_ring(f):
    return algebra_from_structure(f, [[[1]]], [1], name=f"F{f.card}")


def test_constant_ring():
    r = zoo_algebra("f2_x2")
    s = constant_simplicial_ring(r, 4)
    assert simplicial_validate(s) == []
    rep = moore_homotopy(s)
    assert rep.pi == [2, 0, 0, 0]


def test_broken_face_detected():
    s = constant_simplicial_ring(_field_ring(F2), 3)
    faces = list(s.faces)
    faces[2] = (faces[2][0] * 0,) + faces[2][1:]
    broken = TruncatedSimplicialRing(s.field, s.levels, tuple(faces), s.degens)
    assert simplicial_validate(broken)


def test_standard_preset_by_hand():
    s = function_simplicial_ring(standard_cosimplicial(3), _field_ring(F2))
    assert s.levels[2].dim == 3
    # d0 restricts along 0 -> 1, d1 along 0 -> 0
    assert s.face(1, 0).tolist() == [[0, 1]]
    assert s.face(1, 1).tolist() == [[1, 0]]
    assert simplicial_validate(s) == []
    # N_1 = {f : f(0) = 0} and d0 maps it onto level 0, so pi_0 = 0
    assert moore_homotopy(s).pi == [0, 0, 0]


@pytest.mark.parametrize("ring", [_field_ring(F2), _field_ring(F4), zoo_algebra("f2_x2"), matrix_ring(F2, 2)])
def test_simplex_preset_rings(ring):
    s = function_simplicial_ring(simplex_cosimplicial(2, 3), ring)
    assert simplicial_validate(s) == []
    assert moore_homotopy(s).pi == [0, 0, 0]
    assert cycle_basis(s, 1).shape[1] > 0


def test_circle_homotopy():
    s = square_zero_circle(F2, 4)
    assert simplicial_validate(s) == []
    # F in degree 0 and the reduced homology of the circle
    assert moore_homotopy(s).pi == [1, 1, 0, 0]
    assert not power_identity_check(s.levels[1], 2)


def test_cosimplicial_validation():
    y = standard_cosimplicial(2)
    assert cosimplicial_violations(y) == []
    bad = CosimplicialSet(y.sizes, ((), ((0,), (0,)), y.cofaces[2]), y.codegeneracies)
    assert cosimplicial_violations(bad)
    with pytest.raises(SimplicialError):
        function_simplicial_ring(bad, _field_ring(F2))


def _brute_power(ring, m):
    rp = ring.restrict()
    for x in itertools.product(range(rp.p), repeat=rp.dim):
        x = np.array(x, dtype=np.uint8)
        if not np.array_equal(rp.power(x, m), x):
            return False
    return True


def test_power_identity():
    f2, f4 = _field_ring(F2), _field_ring(F4)
    assert power_identity_check(f2, 2) and power_identity_check(f4, 4)
    assert not power_identity_check(f4, 2)
    assert not power_identity_check(zoo_algebra("f2_x2"), 2)
    assert power_identity_check(algebra_product(f2, f2), 2)
    for ring in (f4, zoo_algebra("f2_x2"), zoo_algebra("f4"), algebra_product(f2, f2), zoo_algebra("f3_x3")):
        for m in (2, 3, 4, 8, 9):
            assert power_identity_check(ring, m) == _brute_power(ring, m)
    assert not power_identity_check(matrix_ring(F2, 2), 2)
    with pytest.raises(ValueError):
        power_identity_check(zoo_algebra("f2_x2"), 3, limit=2)


@pytest.mark.parametrize("ring", [_field_ring(F2), _field_ring(F4), matrix_ring(F2, 2)])
def test_lemma21_random(ring):
    s = function_simplicial_ring(simplex_cosimplicial(2, 3), ring)
    rng = np.random.default_rng(3)
    for n in (1, 2):
        rep = sample_lemma21(s, n, 30, rng)
        assert rep["failed"] == 0 and rep["passed"] == 30


def test_lemma21_edge_cases():
    s = function_simplicial_ring(simplex_cosimplicial(2, 3), _field_ring(F2))
    dim1 = s.levels[1].dim
    z, rep = lemma21_witness(s, 1, np.zeros(dim1), np.zeros(dim1))
    assert not z.any() and rep["ok"]
    normal = moore_basis(s, 1)
    cycles = cycle_basis(s, 1)
    non_cycle = next(normal[:, j] for j in range(normal.shape[1])
                     if s.apply(s.face(1, 0), normal[:, j]).any())
    with pytest.raises(SimplicialError, match="cycle"):
        lemma21_witness(s, 1, non_cycle, cycles[:, 0])
    with pytest.raises(SimplicialError, match="d1"):
        lemma21_witness(s, 1, np.ones(dim1, dtype=np.uint8), cycles[:, 0])
    with pytest.raises(SimplicialError):
        lemma21_witness(s, 3, np.zeros(s.levels[3].dim), np.zeros(s.levels[3].dim))


def test_cycle_is_boundary():
    s = function_simplicial_ring(simplex_cosimplicial(2, 3), _field_ring(F4))
    cycles = cycle_basis(s, 1)
    for j in range(cycles.shape[1]):
        assert cycle_is_boundary(s, 1, cycles[:, j], 4)


def test_moore_truncation_error():
    with pytest.raises(SimplicialError):
        moore_homotopy(square_zero_circle(F2, 3), up_to=3)


def test_specs():
    s = simplicial_from_spec({"ring": "zoo:f4", "cosimplicial": {"preset": "simplex", "k": 1, "L": 3}})
    assert simplicial_validate(s) == []
    s = simplicial_from_spec({"ring": {"constructor": "matrix", "p": 2, "size": 2},
                              "cosimplicial": {"preset": "constant", "L": 2}})
    assert moore_homotopy(s).pi == [4, 0]
    y = standard_cosimplicial(2)
    explicit = {"ring": {"constructor": "finite_field", "p": 2, "d": 1},
                "cosimplicial": {"sizes": list(y.sizes), "cofaces": [list(map(list, c)) for c in y.cofaces[1:]],
                                 "codegeneracies": [list(map(list, c)) for c in y.codegeneracies]}}
    assert simplicial_validate(simplicial_from_spec(explicit)) == []
    with pytest.raises(SimplicialError):
        simplicial_from_spec({"cosimplicial": {"preset": "standard", "L": 2}})
