import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from ftdesigns import group as gr
from ftdesigns import linalg as la
from ftdesigns.constructions import sl2_5, sl2_9
from ftdesigns.errors import CapExceeded, ParseError, SingularMatrix, UnboundLabel

# GL_2(3) from a Singer cycle and a reflection
SINGER_9 = la.companion_matrix([2, 2, 1], 3)     # x^2 + 2x + 2, primitive over GF(3)
REFLECT = np.array([[1, 0], [0, 2]])


def test_gl2_3_order_and_brute_force():
    G = gr.closure([SINGER_9, REFLECT], 3)
    assert G.order == 48
    brute = oracles.brute_closure([SINGER_9.tolist(), REFLECT.tolist()], 3)
    assert {tuple(map(tuple, g.tolist())) for g in G.elements} == brute


def test_gl3_2_order():
    C = la.companion_matrix([1, 1, 0, 1], 2)
    T = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert gr.closure([C, T], 2).order == 168


def test_sl2_9_and_sl2_5_orders():
    assert sl2_9().order == 720
    X = sl2_5()
    assert X.order == 120
    assert all(g in sl2_9() for g in X.gen_matrices)


def test_closure_cap_and_singular():
    with pytest.raises(CapExceeded):
        gr.closure([SINGER_9, REFLECT], 3, cap=10)
    with pytest.raises(SingularMatrix):
        gr.closure([np.array([[1, 1], [1, 1]])], 3)


def test_orbits_on_nonzero():
    singer = gr.closure([SINGER_9], 3)
    assert gr.orbits_on_nonzero(singer).lengths == [8]
    assert gr.is_transitive_on_nonzero(singer)
    diag = gr.closure([REFLECT], 3)
    assert gr.orbits_on_nonzero(diag).lengths == [1, 1, 2, 2, 2]


def test_orbit_actions_agree():
    G = gr.closure([SINGER_9, REFLECT], 3)
    assert gr.orbit(G, [1, 0]) == list(range(1, 9))
    line = la.span([[1, 0]], 3)
    assert len(gr.orbit(G, line, action="subspace")) == 4
    assert len(gr.orbit(G, (0, 1, 2), action="set")) == 4


def test_sl2_5_subspace_orbits():
    X = sl2_5()
    assert gr.orbits_on_subspaces(X, 2).lengths == [5, 5, 5, 5, 10, 20, 20, 30, 30]
    # -1 lies in X, so each point orbit is half a vector orbit
    points = gr.orbits_on_subspaces(X, 1).lengths
    assert [2 * n for n in points] == gr.orbits_on_nonzero(X).lengths


def test_setwise_stabilizer_orbit_stabilizer():
    G = gr.closure([SINGER_9, REFLECT], 3)
    for S in [(0, 1, 2), (0, 1, 3), (1, 3)]:
        H = gr.setwise_stabilizer(G, S)
        assert H.order * len(gr.orbit(G, S, action="set")) == G.order
        for g in H.elements:
            img = sorted(la.point_permutation(g, 3)[list(S)].tolist())
            assert tuple(img) == S


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(["a", "b", "(ab)", "a^2", "b^-1", "(ba)^3"]), min_size=1, max_size=5))
def test_word_eval_left_to_right(parts):
    a, b = SINGER_9, REFLECT
    word = "".join(parts)
    expect = la.identity(2)
    table = {"a": a, "b": b, "(ab)": a @ b, "a^2": a @ a, "b^-1": la.mat_inv(b, 3),
             "(ba)^3": la.mat_pow(b @ a % 3, 3, 3)}
    for x in parts:
        expect = expect @ table[x] % 3
    assert np.array_equal(gr.word_eval(word, {"a": a, "b": b}, 3), expect)


def test_word_eval_errors():
    with pytest.raises(UnboundLabel):
        gr.word_eval("ac", {"a": SINGER_9}, 3)
    with pytest.raises(ParseError):
        gr.word_eval("(a", {"a": SINGER_9}, 3)
    with pytest.raises(ParseError):
        gr.word_eval("a^", {"a": SINGER_9}, 3)


def test_json_roundtrip():
    G = gr.closure([("a", SINGER_9), ("b", REFLECT)], 3)
    H = gr.group_from_json(json.dumps(G.to_json()))
    assert H.order == 48 and set(H.keys) == set(G.keys)
    with pytest.raises(ParseError):
        gr.group_from_json({"dim": 2})


def test_group_json_over_extension_field():
    # multiplication by a primitive element of GF(4) on V_1(4), entries as element indices
    obj = {"field": {"p": 2, "d": 2}, "dim": 1, "generators": [{"label": "w", "matrix": [[1]]}]}
    G = gr.group_from_json(obj)
    assert G.order == 3 and G.dim == 2
