from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from ssetforge.operators import (
    Operator,
    all_degeneracies,
    all_faces,
    all_operators,
    compose,
    degeneracy_from_repeats,
    ez_factor,
    face_from_image,
    face_restriction,
    format_operator,
    identity,
    join_faces,
    make_degen,
    make_face,
    make_vertex,
    parse_operator,
    run_collapse,
    section,
)


def operators(max_rank=4):
    return st.tuples(
        st.integers(0, max_rank), st.integers(0, max_rank)
    ).flatmap(
        lambda mn: st.lists(
            st.integers(0, mn[1]), min_size=mn[0] + 1, max_size=mn[0] + 1
        ).map(lambda vals: Operator(mn[1], tuple(sorted(vals))))
    )


def test_generators():
    assert make_face(1, 2).values == (0, 2)
    assert make_degen(0, 1).values == (0, 0, 1)
    assert make_degen(0, 1).src == 2 and make_degen(0, 1).dst == 1
    assert make_vertex(2, 3).values == (2,)
    assert identity(2).values == (0, 1, 2)
    with pytest.raises(ValueError):
        make_face(0, 0)
    with pytest.raises(ValueError):
        make_vertex(3, 2)
    with pytest.raises(ValueError):
        Operator(2, (1, 0))
    with pytest.raises(ValueError):
        Operator(2, (0, 3))


def test_compose_example():
    # vertex 0 into [1], then the face of [2] omitting 2: lands on vertex 1? no:
    # (delta_2 o delta_0)(0) = delta_2(1) = 1, so the composite is vertex 1 of [2].
    left = make_face(0, 1)
    right = make_face(2, 2)
    assert compose(left, right) == make_vertex(1, 2)
    with pytest.raises(ValueError):
        compose(make_face(0, 2), make_face(0, 2))


def test_ez_factor_example():
    op = Operator(2, (0, 0, 2))
    face_part, degen_part = ez_factor(op)
    assert face_part == face_from_image({0, 2}, 2)
    assert degen_part == make_degen(0, 1)
    assert compose(degen_part, face_part) == op


def test_ez_factor_unique_exhaustive():
    # brute-force uniqueness of the epi-mono factorization for ranks <= 5
    for src in range(5):
        for dst in range(5):
            faces = {k: list(all_faces(dst)) for k in [0]}[0]
            for op in all_operators(src, dst):
                hits = [
                    (mu, tau)
                    for mu in faces
                    for tau in all_degeneracies(src, mu.src)
                    if compose(tau, mu) == op
                ]
                assert len(hits) == 1
                assert hits[0] == ez_factor(op)


def test_simplicial_identities():
    # double faces: delta_j o delta_i == delta_i o delta_{j-1} for i < j
    for n in range(2, 6):
        for j in range(n + 1):
            for i in range(j):
                assert compose(make_face(i, n - 1), make_face(j, n)) == compose(
                    make_face(j - 1, n - 1), make_face(i, n)
                )
    # double degeneracies: sigma_j o sigma_i == sigma_i o sigma_{j+1} for i <= j
    for n in range(1, 6):
        for j in range(n):
            for i in range(j + 1):
                assert compose(make_degen(i, n), make_degen(j, n - 1)) == compose(
                    make_degen(j + 1, n), make_degen(i, n - 1)
                )
    # mixed: sigma_j o delta_i
    for n in range(1, 6):
        for i in range(n + 1):
            for j in range(n):
                lhs = compose(make_face(i, n), make_degen(j, n - 1))
                if i == j or i == j + 1:
                    assert lhs == identity(n - 1)
                elif i < j:
                    assert lhs == compose(make_degen(j - 1, n - 2), make_face(i, n - 1))
                else:
                    assert lhs == compose(make_degen(j, n - 2), make_face(i - 1, n - 1))


def chained_operator_triples():
    def build(draw_data):
        ranks, raw = draw_data
        ops = []
        for k in range(3):
            lo = ranks[k] + 1
            vals = tuple(sorted(v % (ranks[k + 1] + 1) for v in raw[k][:lo]))
            ops.append(Operator(ranks[k + 1], vals))
        return tuple(ops)

    return st.tuples(
        st.tuples(*(st.integers(0, 4) for _ in range(4))),
        st.tuples(*(st.lists(st.integers(0, 100), min_size=5, max_size=5) for _ in range(3))),
    ).map(build)


@given(chained_operator_triples())
def test_compose_associative(ops):
    a, b, c = ops
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


def test_join_faces_lub_exhaustive():
    for n in range(5):
        faces = list(all_faces(n))
        for mu in faces:
            for nu in faces:
                j = join_faces(mu, nu)
                mu_img, nu_img, j_img = set(mu.values), set(nu.values), set(j.values)
                assert mu_img <= j_img and nu_img <= j_img
                for other in faces:
                    if mu_img <= set(other.values) and nu_img <= set(other.values):
                        assert j_img <= set(other.values)


def test_join_example():
    assert join_faces(face_from_image({0, 1}, 2), face_from_image({1, 2}, 2)) == identity(2)


def test_section_and_restriction():
    for src in range(1, 5):
        for dst in range(src + 1):
            for tau in all_degeneracies(src, dst):
                assert compose(section(tau), tau) == identity(dst)
    mu = face_from_image({0, 2, 3}, 3)
    nu = face_from_image({0, 3}, 3)
    rho = face_restriction(mu, nu)
    assert compose(rho, mu) == nu
    with pytest.raises(ValueError):
        face_restriction(nu, mu)


def test_run_collapse():
    out, op = run_collapse(("a", "a", "b", "b", "b", "c"))
    assert out == ("a", "b", "c")
    assert op.values == (0, 0, 1, 1, 1, 2)
    assert tuple(out[op(i)] for i in range(op.src + 1)) == ("a", "a", "b", "b", "b", "c")
    out, op = run_collapse((5,))
    assert out == (5,) and op == identity(0)


def test_text_roundtrip():
    samples = [
        make_face(1, 3),
        identity(2),
        make_degen(0, 2),
        make_vertex(1, 4),
        Operator(3, (0, 0, 2, 2, 3)),
        Operator(2, (1, 1)),
    ]
    for op in samples:
        assert parse_operator(format_operator(op)) == op
    assert format_operator(make_face(2, 2)) == "face 2 {0,1}"
    assert format_operator(make_degen(1, 1)) == "degen 2 {1}"
    assert parse_operator("op 2 3 (0 0 2)") == Operator(3, (0, 0, 2))
    with pytest.raises(ValueError):
        parse_operator("face 2 {0,3}")
    with pytest.raises(ValueError):
        parse_operator("frob 1 {}")


def test_degeneracy_enumeration_counts():
    # surjections [src] ->> [dst] biject with repeat-position subsets
    for src in range(6):
        for dst in range(src + 1):
            got = list(all_degeneracies(src, dst))
            assert len(got) == len(set(got))
            from math import comb

            assert len(got) == comb(src, src - dst)
