import os
import random
import subprocess
import sys
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from conftest import IBIP, TWO_D, UNIMODULAR, fx
from ehrchow import chow, ehrhart, geometry, regularity as rg, triangulation as tr
from ehrchow.chow import PreconditionError
from oracles import chow_dim, monomials, sympy_rank


def witness(name):
    return rg.find_regularity_witness(fx(name).triangulation)


@pytest.mark.parametrize("name", UNIMODULAR)
def test_dims_equal_delta(name):
    T = fx(name).triangulation
    dims = chow.chow_dims(T)
    delta = ehrhart.delta_vector(T.polytope)
    assert dims[:T.dim + 1] == delta
    assert dims[T.dim + 1] == 0
    assert dims[:T.dim + 1] == fx(name).expected["chow_dims"]


@pytest.mark.parametrize("name", ["SEG2", *TWO_D, "SIMPLEX_3"])
def test_dims_match_sympy_oracle(name):
    T = fx(name).triangulation
    assert chow.chow_dims(T, T.dim + 1) == tuple(chow_dim(T, i) for i in range(T.dim + 2))


@pytest.mark.slow
def test_cube_flag_dims_match_sympy_oracle():
    T = fx("CUBE_FLAG_3").triangulation
    assert chow.chow_dims(T, 2) == tuple(chow_dim(T, i) for i in range(3))


@pytest.mark.parametrize("name", UNIMODULAR + ["NONREGULAR"])
def test_sr_dimension_against_enumeration(name):
    T = fx(name).triangulation
    for i in range(T.dim + 3):
        assert chow.sr_dimension(T, i) == len(monomials(T, i))
        if i <= T.dim + 1:
            assert chow.quotient_of(T).basis(i) == sorted(monomials(T, i))


@pytest.mark.parametrize("name", UNIMODULAR)
def test_hilbert_series_bookkeeping(name):
    T = fx(name).triangulation
    t = sympy.symbols("t")
    h = tr.h_vector(T, full=True)
    top = T.dim + 3
    series = sympy.series(sum(c * t ** k for k, c in enumerate(h)) / (1 - t) ** (T.dim + 1), t, 0, top + 1)
    poly = sympy.Poly(series.removeO(), t)
    assert [chow.sr_dimension(T, i) for i in range(top + 1)] == \
        [int(poly.coeff_monomial(t ** i)) for i in range(top + 1)]


@pytest.mark.parametrize("name", ["SEG2", "SQ2STAR", "RECT32", "GRID2UNI"])
def test_generators_act_as_zero(name):
    T = fx(name).triangulation
    for i in range(T.dim + 1):
        assert chow.generators_act_as_zero(T, i)


def test_seg2_multiplication():
    T = fx("SEG2").triangulation
    form = chow.class_of_weight(T, {0: 1, 1: 0, 2: 1})
    assert form == {0: 1, 1: 0, 2: 1}
    m = chow.multiplication_map(T, form, 0)
    assert m.matrix.shape == (1, 1) and not m.matrix.is_zero()


def test_sq2star_square_of_witness_class():
    T = fx("SQ2STAR").triangulation
    form = chow.class_of_weight(T, witness("SQ2STAR"))
    assert len(form) == 9
    comp = chow.multiplication_map(T, form, 1) @ chow.multiplication_map(T, form, 0)
    assert comp.rank() == 1
    assert comp.source_degree == 0 and comp.target_degree == 2


def random_form(T, data):
    return {v: Fraction(data.draw(st.integers(-3, 3))) for v in T.vertices}


@given(st.data())
def test_multiplication_commutes(data):
    T = fx("RECT32").triangulation
    a, b = random_form(T, data), random_form(T, data)
    ab = chow.multiplication_map(T, b, 1) @ chow.multiplication_map(T, a, 0)
    ba = chow.multiplication_map(T, a, 1) @ chow.multiplication_map(T, b, 0)
    assert ab.matrix == ba.matrix


@given(st.data())
def test_adding_j_element_keeps_map(data):
    T = fx("RECT32").triangulation
    form = random_form(T, data)
    gens = chow.standard_generators(T)
    shifted = dict(form)
    for g in gens:
        c = data.draw(st.integers(-2, 2))
        for v in T.vertices:
            shifted[v] += c * g[v]
    for i in range(T.dim):
        assert chow.multiplication_map(T, form, i).matrix == chow.multiplication_map(T, shifted, i).matrix


def test_affine_shift_of_weights_changes_class_by_j():
    T = fx("SQ2STAR").triangulation
    w = witness("SQ2STAR")
    w2 = rg.add_affine(T, w, (2, -1), 5)
    a, b = chow.class_of_weight(T, w), chow.class_of_weight(T, w2)
    Q = chow.quotient_of(T)
    diff = {(v,): b[v] - a[v] for v in T.vertices}
    assert Q.in_j(1, diff)
    assert any(Q.reduce(1, {(v,): a[v] for v in T.vertices}))


def test_f0_acts_as_zero():
    T = fx("RECT32").triangulation
    f0 = chow.standard_generators(T)[0]
    for i in range(3):
        assert chow.multiplication_map(T, f0, i).matrix.is_zero()


def test_identity_pullback():
    T = fx("SEG2").triangulation
    pb = chow.pullback(T, T)
    for i in range(2):
        n = chow.quotient_of(T).dim(i)
        assert pb.degree_map(i).matrix == chow.RationalMatrix.identity(n)


def test_segment_into_bottom_edge():
    S, T = fx("SEG2").triangulation, fx("RECT32").triangulation
    pb = chow.pullback(S, T, [[1], [0]], [0, 0])
    assert pb.generators_land_in_j()
    assert pb.gen_map == {T.index[(0, 0)]: 0, T.index[(1, 0)]: 1, T.index[(2, 0)]: 2}
    m = pb.degree_map(1)
    assert m.matrix.shape == (1, 9) and m.rank() == 1


def test_pullback_preconditions():
    S = fx("SEG2").triangulation
    with pytest.raises(PreconditionError):
        chow.pullback(S, fx("GRID2UNI").triangulation, [[1], [-1]], [0, 2])
    with pytest.raises(PreconditionError):
        chow.pullback(S, fx("RECT32").triangulation, [[0], [0]], [0, 0])
    with pytest.raises(PreconditionError):
        chow.pullback(S, fx("RECT32").triangulation, [[2], [0]], [0, 0])
    with pytest.raises(PreconditionError):
        chow.pullback(S, fx("RECT32").triangulation)


@given(st.data())
def test_pullback_is_ring_map(data):
    T = fx("RECT32").triangulation
    S = tr.closed_star(T, T.index[(2, 1)])
    pb = chow.pullback(S, T)
    Qb, Qs = chow.quotient_of(T), chow.quotient_of(S)
    x = [data.draw(st.integers(-3, 3)) for _ in range(Qb.dim(1))]
    y = [data.draw(st.integers(-3, 3)) for _ in range(Qb.dim(1))]
    prod = Qb.multiply_elements(1, x, 1, y)
    left = pb.degree_map(2).matrix.apply(prod)
    right = Qs.multiply_elements(1, pb.degree_map(1).matrix.apply(x), 1, pb.degree_map(1).matrix.apply(y))
    assert left == right


@pytest.mark.parametrize("name", ["SQ2STAR", "RECT32", "SEG2"])
def test_covering_injective(name):
    T = fx(name).triangulation
    for i in range(T.dim + 1):
        m = chow.covering_map(T, i)
        assert sympy_rank([list(r) for r in m.rows]) == chow.quotient_of(T).dim(i) == m.rank()
        assert chow.injectivity_into_covering_check(T, i)


def test_rect32_covering_shape():
    m = chow.covering_map(fx("RECT32").triangulation, 1)
    assert m.shape == (10, 9) and m.rank() == 9


@pytest.mark.parametrize("name", ["SEG2", "SQ2STAR", "RECT32"])
def test_cech_exact(name):
    T = fx(name).triangulation
    for i in range(T.dim + 1):
        c = chow.cech_complex(T, i)
        assert c.exact and c.squares_to_zero()
        assert list(c.ranks) == [sympy_rank([list(r) for r in m.rows]) for m in c.differentials]


def test_rect32_cech_bookkeeping():
    T = fx("RECT32").triangulation
    c = chow.cech_complex(T, 1)
    assert c.dims == (9, 10, 1) and c.ranks == (9, 1)
    assert chow.cech_exactness_check(T, 2)


def test_cech_region_failure_reported():
    T = fx("EDGE_ONLY_OVERLAP").triangulation
    with pytest.raises(chow.ChowError):
        chow.cech_complex(T, 1, check_preconditions=False)
    with pytest.raises(PreconditionError):
        chow.cech_complex(T, 1)


def test_covering_preconditions():
    with pytest.raises(PreconditionError):
        chow.injectivity_into_covering_check(fx("GRID2UNI").triangulation, 1)
    with pytest.raises(PreconditionError):
        chow.injectivity_into_covering_check(fx("NONREGULAR").triangulation, 1)
    T = fx("SQ2STAR").triangulation
    with pytest.raises(PreconditionError):
        chow.injectivity_into_covering_check(T, 1, witness={v: 0 for v in T.vertices})


@pytest.mark.parametrize("name", IBIP)
def test_lefschetz_and_monotonicity(name):
    T = fx(name).triangulation
    w = witness(name)
    delta = ehrhart.delta_vector(T.polytope)
    for k in range(1, (T.dim + 1) // 2 + 1):
        assert chow.lefschetz_check(T, w, k)
        e = chow.lefschetz_entry(T, w, k)
        assert delta[e.source_degree] <= delta[e.target_degree]
    assert ehrhart.increasing_to_middle(delta)
    assert ehrhart.is_unimodal(delta)


def test_lefschetz_degrees():
    T = fx("CUBE_FLAG_3").triangulation
    table = chow.lefschetz_table(T, witness("CUBE_FLAG_3"))
    assert [(e.source_degree, e.target_degree, e.power) for e in table.values()] == [(1, 2, 1), (0, 3, 3)]


def test_lefschetz_preconditions():
    T = fx("SQ2STAR").triangulation
    w = witness("SQ2STAR")
    with pytest.raises(PreconditionError):
        chow.lefschetz_check(T, w, 2)
    with pytest.raises(PreconditionError):
        chow.lefschetz_check(T, {v: 0 for v in T.vertices}, 1)


def test_non_witness_class_can_fail():
    # f_0 is zero in A^1, so its powers kill A^0
    T = fx("SQ2STAR").triangulation
    f0 = chow.standard_generators(T)[0]
    assert chow.power_map(T, f0, 0, 2).rank() == 0


def test_embedding_examples():
    assert chow.embedding_invariance_check(fx("SEG2").triangulation, [[1], [1]], [0, 0])
    assert chow.embedding_invariance_check(fx("SQ1").triangulation, [[1, 0], [0, 1], [0, 0]], [0, 0, 0])
    with pytest.raises(PreconditionError):
        chow.embed(fx("SEG2").triangulation, [[2]], [0])


@pytest.mark.parametrize("name", ["SEG2", "SQ1", "SQ2STAR", "RECT32"])
def test_random_embeddings(name):
    T = fx(name).triangulation
    rng = random.Random(name)
    n = T.ambient_dim
    for _ in range(3):
        a = geometry.random_saturated_embedding(n, n + 2, rng)
        shift = [rng.randint(-3, 3) for _ in range(n + 2)]
        E = chow.embed(T, a, shift)
        assert chow.chow_dims(E) == chow.chow_dims(T)
        assert chow.pullback(T, E, a, shift).degree_map(1).rank() == chow.quotient_of(T).dim(1)


def test_graded_quotient_interface():
    T = fx("RECT32").triangulation
    Q = chow.build_graded_quotient(T, 3)
    assert Q.top_degree >= 3
    assert Q.dim(1) + Q.jslice_rank(1) == chow.sr_dimension(T, 1)
    assert Q.coordinates(0) == [()]
    x = [1] + [0] * (Q.dim(1) - 1)
    assert Q.reduce(1, Q.lift(1, x)) == tuple(Fraction(v) for v in x)
    with pytest.raises(ValueError):
        chow.build_graded_quotient(T, 1)


def test_quotient_identical_under_fallback_backend():
    code = ("from ehrchow import chow, corpus, kernels;"
            "T = corpus.fixture('RECT32').triangulation;"
            "Q = chow.quotient_of(T);"
            "print(kernels.BACKEND, [Q.coordinates(i) for i in range(4)], Q.jslice_rows(2))")
    outs = {}
    for flag in ("", "1"):
        env = dict(os.environ)
        env.pop("EHRCHOW_PURE_PYTHON", None)
        if flag:
            env["EHRCHOW_PURE_PYTHON"] = flag
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        backend, rest = res.stdout.split(" ", 1)
        outs[backend] = rest
    assert "python" in outs
    assert len(set(outs.values())) == 1
