import numpy as np
import pytest

from tlat import (ChainPair, DepthExceeded, NotStabilized, build_poset, build_U_staged,
                  enumerate_lattice, psi)
from tlat.chains import lattice_size
from tlat.universal import verify_axioms


def chains_U(n, m, **kw):
    cp = ChainPair(n, m)
    pairs = cp.cross_pairs()
    return cp, build_U_staged(cp.generator_poset(), pairs, pairs, **kw)


@pytest.mark.parametrize("n,m", [(1, 1), (1, 2), (2, 2), (2, 3)])
def test_two_chains_stabilize_to_grid(n, m):
    cp, U = chains_U(n, m)
    assert U.stabilized and len(U) == lattice_size(cp)
    ps = psi(U)
    assert ps.isomorphism and ps.failure is None
    assert verify_axioms(U).ok
    assert len(enumerate_lattice(cp)) == len(U)


def test_stage_counts():
    assert chains_U(1, 1)[1].stage == 1
    assert chains_U(2, 2)[1].stage == 2


def test_single_chain_is_already_closed():
    P = build_poset("ab", [("a", "b")])
    U = build_U_staged(P)
    assert U.stabilized and U.stage == 0 and len(U) == 4


def test_no_consistencies_exceeds_depth():
    cp = ChainPair(2, 2)
    with pytest.raises(DepthExceeded) as e:
        build_U_staged(cp.generator_poset(), max_depth=4)
    part = e.value.partial
    assert part is not None and not part.stabilized
    with pytest.raises(NotStabilized):
        part.structure()
    with pytest.raises(NotStabilized):
        psi(part)


def test_report_shape():
    _, U = chains_U(1, 1)
    rep = U.report()
    assert rep["stabilized"] and rep["size"] == 6
    assert [h["stage"] for h in rep["stages"]] == list(range(U.stage + 1))
    assert rep["stages"][-1]["missing"] == 0


def test_psi_image_is_order_preserving():
    _, U = chains_U(2, 2)
    ps = psi(U)
    D = ps.target
    img = ps.image
    assert (U.lattice.leq == D.leq[np.ix_(img, img)]).all()


def test_partial_generators():
    # chain a < b, with c consistent to both
    P = build_poset("abc", [("a", "b")])
    pairs = [("a", "c"), ("b", "c")]
    U = build_U_staged(P, pairs, pairs)
    assert U.stabilized and len(U) == 10 and psi(U).isomorphism
