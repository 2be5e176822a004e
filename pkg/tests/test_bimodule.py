import numpy as np
import pytest

from frobhh.algebra import frobenius_power
from frobhh.bimodule import (
    Bimodule,
    LeftModule,
    ModuleError,
    phi_twist,
    psi_module,
    quotient_module,
    regular_bimodule,
    regular_module,
    residue_module,
)
from frobhh.fq import matmul
from frobhh.zoo import zoo_algebra


def test_phi_zero_is_regular():
    a = zoo_algebra("f2_x4")
    b, r = phi_twist(a, None, 0), regular_bimodule(a)
    assert all(np.array_equal(x, y) for x, y in zip(b.right_act, r.right_act))


@pytest.mark.parametrize("name", ["f2_x2", "f3_x3", "f4", "f4_x2", "f9"])
def test_phi_right_action_is_frobenius(name):
    a = zoo_algebra(name)
    for n in (1, 2):
        b = phi_twist(a, None, n)
        ap = a.restrict()
        frob = frobenius_power(ap, n)
        for i in range(ap.dim):
            # m . b_i = b_i^{p^n} m, i.e. left multiplication by F^n(b_i)
            want = ap.mult_matrix(frob[:, i])
            assert np.array_equal(b.right_act[i], want)


def test_bimodule_rejects_noncommuting_actions():
    a = zoo_algebra("f2_x2")
    m = regular_module(a)
    bad = (np.eye(2, dtype=np.uint8), np.array([[0, 0], [1, 1]], dtype=np.uint8))
    with pytest.raises(ModuleError):
        Bimodule(a, 2, m.act, bad)


def test_left_module_rejects_bad_action():
    a = zoo_algebra("f2_x2")
    with pytest.raises(ModuleError, match="identity"):
        LeftModule(a, 1, (np.zeros((1, 1), dtype=np.uint8), np.zeros((1, 1), dtype=np.uint8)))
    with pytest.raises(ModuleError, match="composite"):
        # x acting invertibly while x^2 = 0
        LeftModule(a, 1, (np.ones((1, 1), dtype=np.uint8), np.ones((1, 1), dtype=np.uint8)))


def test_small_modules():
    a = zoo_algebra("f2_x4")
    assert residue_module(a).dim == 1
    assert quotient_module(a, np.array([[0, 0, 1, 0]], dtype=np.uint8)).dim == 2
    assert psi_module(a, 2).dim == 1
    f4 = zoo_algebra("f4_x2")
    assert residue_module(f4).dim == 2
    assert regular_module(f4).restrict().dim == 4


def test_restricted_twist_commutes():
    a = zoo_algebra("f4_x2")
    b = phi_twist(a, residue_module(a), 2)
    f = b.algebra.field
    for l in b.left_act:
        for r in b.right_act:
            assert np.array_equal(matmul(f, l, r), matmul(f, r, l))
