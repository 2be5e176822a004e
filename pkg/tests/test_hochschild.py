import numpy as np
import pytest

from conftest import naive_rank_mod_p
from frobhh.bar import tor_via_bar
from frobhh.bimodule import phi_twist, regular_bimodule, regular_module, residue_module
from frobhh.hochschild import (
    CapExceeded,
    chain_dims,
    hh_cochain_complex,
    hh_cohomology,
    hh_complex,
    hh_homology,
    kunneth_check,
    max_truncation,
    step1_poly,
    twisted_homology,
)
from frobhh.zoo import CORE, zoo_algebra


def _periodic(b, m, p, N, cohomology=False):
    """H_* or H^* of k[x]/(x^m) with coefficients b from the 2-periodic resolution.

    Every term is a copy of b; the maps alternate between L - R and
    sum_{i+j=m-1} L^i R^j, where L, R are the left and right actions of x.
    """
    L = b.left_act[1].astype(np.int64)
    R = b.right_act[1].astype(np.int64)
    dim = b.dim
    odd = (L - R) % p
    even = np.zeros((dim, dim), dtype=np.int64)
    for i in range(m):
        even += np.linalg.matrix_power(L, i) @ np.linalg.matrix_power(R, m - 1 - i)
    even %= p
    # chain: d_k for k >= 1 is odd if k odd else even; cochain delta^k is odd if k even
    def rk(mat):
        return naive_rank_mod_p(mat.tolist(), p)
    out = []
    for k in range(N):
        if cohomology:
            outgoing = rk(odd if k % 2 == 0 else even)
            incoming = rk(odd if (k - 1) % 2 == 0 else even) if k else 0
        else:
            outgoing = rk(odd if k % 2 == 1 else even) if k else 0
            incoming = rk(odd if (k + 1) % 2 == 1 else even)
        out.append(dim - outgoing - incoming)
    return out


ONE_VAR = [("f2_x2", 2), ("f2_x4", 4), ("f3_x3", 3)]


@pytest.mark.parametrize("name,m", ONE_VAR)
@pytest.mark.parametrize("n", [0, 1, 2, 3])
@pytest.mark.parametrize("module", ["regular", "residue"])
def test_homology_matches_periodic_resolution(name, m, n, module):
    a = zoo_algebra(name)
    mod = regular_module(a) if module == "regular" else residue_module(a)
    b = phi_twist(a, mod, n)
    assert hh_homology(a, b, 6).dims == _periodic(b, m, a.p, 6)
    assert hh_cohomology(a, b, 6).dims == _periodic(b, m, a.p, 6, cohomology=True)


def test_known_untwisted_values():
    # k[x]/(x^m): H_0 = m; H_i = m when p | m, else m - 1
    assert hh_homology(zoo_algebra("f2_x2"), regular_bimodule(zoo_algebra("f2_x2")), 8).dims == [2] * 8
    f3 = zoo_algebra("f3_x3")
    assert hh_homology(f3, regular_bimodule(f3), 5).dims == [3] * 5


@pytest.mark.parametrize("name", ["f2_x2", "f3_x3", "f2_xy", "f4_x2", "f9"])
def test_square_zero_and_normalized_agree(name):
    a = zoo_algebra(name)
    for b in (regular_bimodule(a), phi_twist(a, None, 2), phi_twist(a, residue_module(a), 1)):
        N = 4
        full = hh_complex(a, b, N, normalized=False)
        norm = hh_complex(a, b, N, normalized=True)
        assert full.square_zero_failures() == [] and norm.square_zero_failures() == []
        assert hh_cochain_complex(a, b, N).square_zero_failures() == []
        assert hh_homology(a, b, N, normalized=False).dims == hh_homology(a, b, N).dims
        assert hh_cohomology(a, b, N, normalized=False).dims == hh_cohomology(a, b, N).dims


def test_twisted_vanishing_small_cases():
    for name in CORE:
        a = zoo_algebra(name)
        rep = twisted_homology(a, 2, 4)
        assert rep.vanishes_above_zero()


def test_finite_field_cohomology():
    f4 = zoo_algebra("f4")
    assert hh_cohomology(f4, phi_twist(f4, None, 2), 5).dims == [2, 0, 0, 0, 0]
    assert hh_cohomology(f4, phi_twist(f4, None, 1), 5).dims == [0] * 5


@pytest.mark.parametrize("name,module,n", [
    ("f2_x2", "residue", 1), ("f2_x4", "residue", 2), ("f3_x3", "regular", 2),
    ("f2_xy", "residue", 2), ("f4_x2", "residue", 3), ("f8", "regular", 3),
])
def test_homology_equals_bar_tor(name, module, n):
    a = zoo_algebra(name)
    m = regular_module(a) if module == "regular" else residue_module(a)
    assert hh_homology(a, phi_twist(a, m, n), 4).dims == tor_via_bar(a, m, n, 4)
    assert tor_via_bar(a, m, n, 4, normalized=False) == tor_via_bar(a, m, n, 4)


def test_truncation_and_cap():
    assert max_truncation(2, 1, 5_000_000) == 16
    assert max_truncation(4, 3, 5_000_000) == 6
    assert max_truncation(3, 2, 5_000_000) == 10
    assert chain_dims(2, 3, 2) == [2, 6, 18]
    a = zoo_algebra("f2_xy")
    with pytest.raises(CapExceeded, match="maximal admissible N is 6"):
        hh_homology(a, phi_twist(a, None, 2), 8)
    assert twisted_homology(a, 2, cap=2000).N == 2


def test_cap_env(monkeypatch):
    monkeypatch.setenv("FROBHH_ENTRY_CAP", "2000")
    assert twisted_homology(zoo_algebra("f2_xy"), 2).N == 2


def test_report_shape():
    rep = twisted_homology(zoo_algebra("f2_x2"), 1, 3)
    d = rep.as_dict(stable=True)
    assert d["degrees"] == [{"i": 0, "dim": 1}, {"i": 1, "dim": 0}, {"i": 2, "dim": 0}]
    assert "ms_per_degree" not in d and "ms_per_degree" in rep.as_dict()
    assert rep.caveats == ["n=1 lies outside the stated range n>1"]


def test_step1():
    assert step1_poly(2, 2, 64) == (4, 0)
    assert step1_poly(3, 1, 64) == (3, 0)
    assert step1_poly(2, 1, 4) == (2, 0)
    assert step1_poly(2, 1, 3) == (2, 0)
    with pytest.raises(ValueError):
        step1_poly(2, 2, 4)


def test_kunneth():
    rep = kunneth_check(zoo_algebra("f4"), zoo_algebra("f2_x2"), 2)
    assert rep["pass"] and rep["degrees"][0]["tensor"] == 2
    rep = kunneth_check(zoo_algebra("f2_x2"), zoo_algebra("f2_x2"), 1, 4)
    assert rep["pass"]


def _f2_field_algebra():
    from frobhh.algebra import algebra_from_structure
    from frobhh.fq import field_make

    return algebra_from_structure(field_make(2), [[[1]]], [1], name="F2")


def test_prime_field_trivial_complex():
    f2 = _f2_field_algebra()
    b = regular_bimodule(f2)
    cx = hh_complex(f2, b, 6, normalized=False)
    assert cx.dims == [1] * 7
    # every face is the identity, so the boundary out of degree i is (i + 1) id over F_2
    assert [int(cx.dense(i).sum()) for i in range(6)] == [0, 1, 0, 1, 0, 1]
    assert hh_homology(f2, b, 6, normalized=False).dims[:6] == [1, 0, 0, 0, 0, 0]
    assert hh_cohomology(f2, b, 3).dims[:3] == [1, 0, 0]


def test_full_chain_dims_and_degenerate_truncation():
    a = zoo_algebra("f2_x2")
    assert hh_complex(a, phi_twist(a, None, 1), 3).dims == [2, 4, 8, 16]
    cx = hh_complex(a, phi_twist(a, None, 1), 0)
    assert cx.dims == [2] and cx.boundaries == []


def test_twisted_h0_cohomology_by_enumeration():
    # H^0(A, Phi^1(A)) = {m : a m = m . a = a^2 m for all a}
    a = zoo_algebra("f2_x2")
    b = phi_twist(a, None, 1)
    fixed = 0
    for m in ([0, 0], [1, 0], [0, 1], [1, 1]):
        mv = np.array(m)
        if all(np.array_equal(b.left_act[i] @ mv % 2, b.right_act[i] @ mv % 2) for i in range(2)):
            fixed += 1
    assert 2 ** hh_cohomology(a, b, 6).dims[0] == fixed == 2


@pytest.mark.parametrize("name", ["f2_x2", "f2_x4", "f3_x3", "f2_xy"])
@pytest.mark.parametrize("n", [1, 2])
def test_self_dual_modules_match_homology(name, n):
    # residue field and self-injective A are self-dual, so Ext and Tor have equal dims
    a = zoo_algebra(name)
    for mod in (residue_module(a), regular_module(a)):
        b = phi_twist(a, mod, n)
        assert hh_cohomology(a, b, 4).dims == hh_homology(a, b, 4).dims


def test_self_injective_cohomology_vanishes():
    for name in ("f2_x2", "f2_x4", "f3_x3", "f4", "f9", "f4_x2"):
        a = zoo_algebra(name)
        assert all(d == 0 for d in hh_cohomology(a, phi_twist(a, None, 2), 5).dims[1:])


def test_bar_trivial_cases():
    f4 = zoo_algebra("f4")
    assert tor_via_bar(f4, regular_module(f4), 1, 4) == [0, 0, 0, 0]
    a = zoo_algebra("f2_x4")
    assert tor_via_bar(a, regular_module(a), 2, 4) == [1, 0, 0, 0]


def test_kunneth_prime_field():
    f2 = _f2_field_algebra()
    rep = kunneth_check(f2, f2, 1, 3)
    assert rep["pass"] and rep["degrees"][0]["tensor"] == 1
