from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ftdesigns import design as ds
from ftdesigns import group as gr
from ftdesigns import linalg as la
from ftdesigns.constructions import build, ex_sem1dim_subfield, ex_tensor
from ftdesigns.errors import CapExceeded, NotTwoDesign, ParameterMismatch, PreconditionViolated, TrivialBlock


@pytest.fixture(scope="module")
def line1():
    return build("table1-1")


def _as_sets(D):
    pts = oracles.vectors(D.p, D.d)
    return {frozenset(pts[i] for i in row) for row in D.blocks.tolist()}


def test_table1_line1_against_brute_force(line1):
    D = line1.design()
    pts = oracles.vectors(5, 2)
    base = [pts[i] for i in line1.base_block]
    elems = [g.tolist() for g in line1.group.elements]
    brute = oracles.affine_design(5, 2, elems, base)
    assert _as_sets(D) == brute
    assert oracles.design_params(brute, 25) == (25, 4, 16, 100, 2)
    assert oracles.flag_transitive(5, 2, elems, brute)
    assert ds.flag_transitive_zero_check(line1.group, line1.base_block, 5)


def test_small_three_point_design_against_brute_force():
    inst = build("sem1dim-3pts-7-1-1-GL1")
    D = inst.design()
    elems = [g.tolist() for g in inst.group.elements]
    pts = oracles.vectors(7, 1)
    brute = oracles.affine_design(7, 1, elems, [pts[i] for i in inst.base_block])
    assert oracles.design_params(brute, 7) == (7, 3, 6, 14, 2)
    assert ds.verify_parameters(D).as_tuple() == (7, 3, 6, 14, 2)


def test_pairs_and_orbit_methods_agree(line1):
    D = line1.design()
    a = ds.verify_parameters(D, method="pairs")
    b = ds.verify_parameters(D, method="orbit")
    assert a == b and a.identities_hold()
    assert ds.lambda_by_orbit_formula(line1.group, line1.base_block, 5) == {
        rep: Fraction(2) for rep, _ in gr.orbits_on_nonzero(line1.group).orbits}


def test_not_a_two_design_gives_witness():
    # the diagonal group acting on a three point block is not 2-transitive on pairs
    G = gr.closure([np.array([[2, 0], [0, 1]]), np.array([[1, 0], [0, 2]])], 3)
    D = ds.design_from_base_block(3, 2, G, (0, 1, 3))
    with pytest.raises(NotTwoDesign) as err:
        ds.verify_parameters(D, method="pairs")
    assert err.value.witness is not None


def test_design_errors(line1):
    G = line1.group
    with pytest.raises(PreconditionViolated):
        ds.design_from_base_block(5, 2, G, (1, 2, 3))
    with pytest.raises(TrivialBlock):
        ds.design_from_base_block(5, 2, G, (0, 1))
    with pytest.raises(CapExceeded):
        ds.design_from_base_block(5, 2, G, line1.base_block, cap=50)


def test_block_shape_cases():
    hyp = build("hyperbolic")
    rep = ds.block_shape(hyp.base_block, 3, 4)
    assert (rep.t, rep.shape, rep.cici_index) == (1, "two_coset_k_eq_2p^t", 16)
    hall = build("hall")
    rep = ds.block_shape(hall.base_block, 3, 4)
    assert (rep.t, rep.shape, rep.cici_index) == (2, "subspace_k_eq_p^t", 20)
    rep = ds.block_shape(build("table1-1").base_block, 5, 2)
    assert rep.shape == "semiregular_k_divides_r" and rep.index_integral


def test_cici_index_values():
    assert ds.cici_index(3, 4, 6, 1) == 16
    assert ds.cici_index(3, 4, 9, 2) == 20
    assert ds.cici_index(2, 4, 4, 0) == Fraction(5, 2)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10**6))
def test_fingerprint_is_invariant_under_relabeling(seed):
    # relabel the points by a random element of GL_3(2) x GL_2(2) acting on V_6(2)
    inst = ex_tensor(1)
    D = inst.design()
    rng = np.random.default_rng(seed)
    while True:
        A = rng.integers(0, 2, size=(6, 6))
        if la.mat_det(A, 2):
            break
    perm = la.point_permutation(A, 2)
    blocks = np.unique(np.sort(perm[D.blocks], axis=1), axis=0)
    D2 = ds.Design(2, 6, blocks, tuple(sorted(perm[list(D.base_block)].tolist())), None, [])
    assert ds.fingerprint(D).intrinsic() == ds.fingerprint(D2).intrinsic()


def test_tensor_designs_differ():
    D1, D2 = ex_tensor(1).design(), ex_tensor(2).design()
    f1, f2 = ds.fingerprint(D1), ds.fingerprint(D2)
    assert f1.intersection_profile == f2.intersection_profile
    assert f1.derived_walks != f2.derived_walks
    assert ds.fingerprints_differ(D1, D2)
    with pytest.raises(ParameterMismatch):
        ds.fingerprints_differ(D1, build("table1-1").design())


def test_blocks_field_structure():
    D = ex_sem1dim_subfield(3, 4, 1, 2).design()
    assert ds.blocks_field_structure(D, 2)
    assert ds.blocks_field_structure(D, 1)
    assert not ds.blocks_field_structure(build("hyperbolic").design(), 1)


def test_dump_round_trip(line1):
    text = line1.design().dump()
    head, *rows = text.strip().splitlines()
    assert head.split() == ["25", "100", "16", "4", "2"]
    assert len(rows) == 100
