import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from tlat import (Chain, CycleError, DuplicateLabel, FiniteLattice, NotALattice, NotDistributive,
                  Poset, UnknownElement, birkhoff_decompose, build_poset, check_laws, is_lattice,
                  join_irreducibles, sublattice_closure)
from tlat.lattices import boolean_lattice, chain_lattice, m3, n5, random_lattice, small_lattices
from tlat.poset import decompositions, is_distributive


def test_build_poset_closes_transitively():
    p = build_poset("abc", [("a", "b"), ("b", "c")])
    assert p.le("a", "c")
    assert not p.le("c", "a")
    assert p.hasse_edges() == [(0, 1), (1, 2)]


def test_cycle_reports_witness_pair():
    with pytest.raises(CycleError) as e:
        build_poset("ab", [("a", "b"), ("b", "a")])
    assert set(e.value.witness) == {"a", "b"}


def test_duplicate_and_unknown_labels():
    with pytest.raises(DuplicateLabel):
        build_poset("aa")
    with pytest.raises(UnknownElement):
        build_poset("ab", [("a", "z")])


def test_bounds_are_validated():
    with pytest.raises(ValueError):
        build_poset("ab", [], bottom="a")
    p = build_poset("ab", [("a", "b")], bottom="a", top="b")
    assert (p.bottom, p.top) == (0, 1)


def test_try_meet_join_on_antichain():
    p = build_poset("ab")
    assert p.try_meet("a", "b") is None and p.try_join("a", "b") is None
    assert p.try_meet("a", "a") == "a"


def test_with_bounds_adds_fresh_elements():
    q = build_poset("ab").with_bounds()
    ok, L = is_lattice(q)
    assert ok and L.join("a", "b") == "1" and L.meet("a", "b") == "0"


def test_chain_validation():
    p = chain_lattice(4).poset
    Chain(p, ("1", "c2", "c1", "0"), descending=True, extended=True)
    with pytest.raises(ValueError):
        Chain(p, ("c1", "c2"), descending=True)
    with pytest.raises(ValueError):
        Chain(p, ("c1", "c2"), extended=True)
    with pytest.raises(ValueError):
        Chain(p, (), extended=True)


def test_lattice_rejects_wrong_tables():
    L = chain_lattice(3)
    bad = L.M.copy()
    bad[0, 1] = bad[1, 0] = 1
    with pytest.raises(NotALattice):
        FiniteLattice(L.poset, bad, L.J)
    with pytest.raises(NotALattice):
        FiniteLattice(build_poset("ab"))


def test_n5_laws_and_witness():
    rep = check_laws(n5())
    assert rep.postulates_hold and rep.compar
    assert not rep.modular and not rep.distributive
    assert rep.witnesses["modular"] == ("a", "b", "c")
    assert rep.n5 is not None and rep.m3 is None


def test_m3_is_modular_not_distributive():
    rep = check_laws(m3())
    assert rep.modular and not rep.distributive
    assert rep.m3 is not None and rep.n5 is None


def test_boolean_lattice_is_distributive():
    rep = check_laws(boolean_lattice(3))
    assert rep.distributive and rep.modular and rep.dis1 and rep.dis2


@pytest.mark.parametrize("n", range(1, 8))
def test_law_flags_agree_with_brute_force(n):
    for L in small_lattices(n):
        rep = check_laws(L)
        M, J, leq = L.M.tolist(), L.J.tolist(), L.leq.tolist()
        assert rep.modular == oracles.is_modular(M, J, leq)
        assert rep.distributive == oracles.is_distributive(M, J)
        # a lattice is distributive iff it contains neither N5 nor M3
        assert rep.distributive == (rep.n5 is None and rep.m3 is None)
        # modular iff no N5
        assert rep.modular == (rep.n5 is None)


@pytest.mark.parametrize("n", range(2, 8))
def test_join_irreducibles_match_brute_force(n):
    for L in small_lattices(n):
        got = [L.index(x) for x in join_irreducibles(L)]
        assert got == oracles.join_irreducibles(L.M.tolist(), L.J.tolist(), L.leq.tolist(), L.bottom)


def test_birkhoff_on_boolean_lattice():
    L = boolean_lattice(3)
    assert birkhoff_decompose(L, "{1,2,3}") == ("{1}", "{2}", "{3}")
    assert birkhoff_decompose(L, "{}") == ()


def test_birkhoff_refuses_non_distributive():
    with pytest.raises(NotDistributive) as e:
        birkhoff_decompose(m3(), "1")
    assert e.value.witness is not None


def test_m3_top_has_several_decompositions():
    assert len(decompositions(m3(), "1")) == 3


def test_sublattice_closure():
    L = boolean_lattice(3)
    S = sublattice_closure(L, ["{1}", "{2}"])
    assert sorted(S.elements) == sorted(["{}", "{1}", "{2}", "{1,2}", "{1,2,3}"])


@given(seed=st.integers(0, 10**6))
def test_random_lattice_tables_are_glb_lub(seed):
    L = random_lattice(np.random.default_rng(seed))
    leq = L.leq.tolist()
    n = len(L)
    for x in range(n):
        for y in range(n):
            assert L.M[x, y] == oracles.glb(leq, x, y)
            assert L.J[x, y] == oracles.lub(leq, x, y)
    assert is_distributive(L) == oracles.is_distributive(L.M.tolist(), L.J.tolist())


@given(seed=st.integers(0, 10**6))
def test_restrict_and_relabel_roundtrip(seed):
    L = random_lattice(np.random.default_rng(seed))
    R = L.relabel([f"x{i}" for i in range(len(L))])
    assert np.array_equal(R.M, L.M)
    S = L.restrict(range(len(L)))
    assert np.array_equal(S.J, L.J)


def test_poset_rejects_non_transitive_matrix():
    leq = np.eye(3, dtype=bool)
    leq[0, 1] = leq[1, 2] = True
    with pytest.raises(ValueError):
        Poset("abc", leq)
