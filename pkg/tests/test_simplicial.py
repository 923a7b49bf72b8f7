from __future__ import annotations

import pytest

from ssetforge.operators import (
    Operator,
    all_operators,
    compose,
    identity,
    make_degen,
    make_vertex,
)
from ssetforge.simplicial import (
    Cell,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    boundary,
    compose_maps,
    find_isomorphism,
    generate,
    identity_map,
    is_isomorphic,
    representing_map,
    simplex_map,
    standard_simplex,
)


def circle() -> SimplicialSet:
    # one vertex, one edge with both ends attached to it
    return SimplicialSet({0: Cell(0, ()), 1: Cell(1, ((0, identity(0)), (0, identity(0))))})


def sphere2() -> SimplicialSet:
    # one vertex, one 2-cell with all faces the degenerate edge
    collapse = Operator(0, (0, 0))
    return SimplicialSet({0: Cell(0, ()), 1: Cell(2, ((0, collapse),) * 3)})


def test_standard_simplex_structure():
    for n in range(4):
        delta = standard_simplex(n)
        assert len(delta.cells) == 2 ** (n + 1) - 1
        assert delta.dim == n
        assert delta.is_nonsingular()
        top = delta.cell_ids(n)[0]
        assert delta.vertices(delta.simplex(top)) == tuple(delta.cell_ids(0))


def test_boundary_counts():
    assert len(boundary(1).cells) == 2
    assert len(boundary(2).cells) == 6
    assert len(boundary(3).cells) == 14
    assert boundary(3).dim == 2


def test_validation_errors():
    with pytest.raises(ValueError, match="missing cell"):
        SimplicialSet({0: Cell(1, ((1, identity(0)), (0, identity(0))))})
    with pytest.raises(ValueError, match="stores"):
        SimplicialSet({0: Cell(1, ())})
    with pytest.raises(ValueError, match="not surjective"):
        bad = Operator(1, (0,))
        SimplicialSet({0: Cell(0, ()), 1: Cell(1, ((0, identity(0)),) * 2), 2: Cell(1, ((1, bad), (1, bad)))})
    # a 2-cell whose edge endpoints cannot close up
    delta1 = standard_simplex(1)
    with pytest.raises(ValueError, match="face identities"):
        SimplicialSet(
            {
                0: Cell(0, ()),
                1: Cell(0, ()),
                2: Cell(0, ()),
                3: Cell(1, ((1, identity(0)), (0, identity(0)))),
                4: Cell(1, ((2, identity(0)), (1, identity(0)))),
                5: Cell(1, ((0, identity(0)), (2, identity(0)))),
                # faces 0,1,2 of a triangle must satisfy d0 d0 == d0 d1 etc.
                6: Cell(2, ((3, identity(1)), (4, identity(1)), (5, identity(1)))),
            }
        )


def test_eval_on_circle():
    x = circle()
    e = x.simplex(1)
    assert x.eval(e, make_vertex(0, 1)) == x.eval(e, make_vertex(1, 1)) == x.simplex(0)
    assert x.vertices(e) == (0, 0)
    assert not x.is_embedded(e)
    assert not x.is_nonsingular()
    # a degenerate 2-simplex on the edge, then its faces
    s = Simplex(1, make_degen(0, 1))
    assert x.face(s, 0) == e
    assert x.face(s, 1) == e
    assert x.face(s, 2) == Simplex(0, Operator(0, (0, 0)))


def test_eval_contravariant_exhaustive():
    spaces = [standard_simplex(2), circle(), sphere2()]
    for x in spaces:
        for cid in x.cells:
            s = x.simplex(cid)
            d = s.degree
            for mid in range(3):
                for alpha in all_operators(mid, d):
                    t = x.eval(s, alpha)
                    for low in range(mid + 1):
                        for beta in all_operators(low, mid):
                            assert x.eval(t, beta) == x.eval(s, compose(beta, alpha))


def test_simplices_enumeration():
    x = standard_simplex(1)
    assert x.nsimplices(0) == 2
    assert x.nsimplices(1) == 3
    assert x.nsimplices(2) == 4
    assert sphere2().nsimplices(2) == 2


def test_siblings():
    x = sphere2()
    # the 2-cell and the doubly degenerate vertex share their vertex sequence
    a = x.simplex(1)
    b = Simplex(0, Operator(0, (0, 0, 0)))
    assert x.are_siblings(a, b)
    assert not x.is_embedded(a)


def test_generate_two_edges():
    delta = standard_simplex(2)
    edges = delta.cell_ids(1)[:2]
    sub, incl = generate(delta, edges)
    assert len(sub.cell_ids(0)) == 3
    assert len(sub.cell_ids(1)) == 2
    assert len(sub.cell_ids(2)) == 0
    assert incl.is_degreewise_injective()
    assert not incl.is_degreewise_surjective()


def test_representing_map():
    x = sphere2()
    f = representing_map(x, 1)
    assert f.source.same_presentation(standard_simplex(2))
    assert f.apply(f.source.simplex(f.source.cell_ids(2)[0])) == x.simplex(1)
    assert f.is_degreewise_surjective()
    assert not f.is_degreewise_injective()


def test_map_validation():
    delta1 = standard_simplex(1)
    x = circle()
    # both vertices to the point, edge to the edge
    good = SimplicialMap(delta1, x, {0: x.simplex(0), 1: x.simplex(0), 2: x.simplex(1)})
    assert good.apply(delta1.simplex(2)) == x.simplex(1)
    with pytest.raises(ValueError, match="no assignment"):
        SimplicialMap(delta1, x, {0: x.simplex(0), 1: x.simplex(0)})
    with pytest.raises(ValueError, match="wrong degree"):
        SimplicialMap(delta1, x, {0: x.simplex(0), 1: x.simplex(0), 2: x.simplex(0)})
    # edge sent to a degenerate edge while endpoints differ
    delta_pair = standard_simplex(1)
    with pytest.raises(ValueError, match="not simplicial"):
        SimplicialMap(
            delta_pair,
            standard_simplex(1),
            {
                0: standard_simplex(1).simplex(0),
                1: standard_simplex(1).simplex(1),
                2: Simplex(0, Operator(0, (0, 0))),
            },
        )


def test_identity_and_compose():
    x = standard_simplex(2)
    i = identity_map(x)
    assert i.is_isomorphism()
    f = representing_map(sphere2(), 1)
    g = compose_maps(identity_map(f.source), f)
    assert g.assignment == f.assignment


def test_degreewise_checks_above_dim():
    # collapsing map stays non-injective when probed above the dimension
    x = standard_simplex(1)
    pt = standard_simplex(0)
    f = SimplicialMap(x, pt, {cid: Simplex(0, Operator(0, (0,) * (x.cells[cid].dim + 1))) for cid in x.cells})
    assert not f.is_degreewise_injective()
    assert not f.is_degreewise_injective(up_to=x.dim + 3)
    assert f.is_degreewise_surjective()


def test_isomorphism_search():
    a = standard_simplex(2)
    relabeled = SimplicialSet(
        {cid + 7: Cell(c.dim, tuple((t + 7, op) for t, op in c.faces)) for cid, c in a.cells.items()}
    )
    iso = find_isomorphism(a, relabeled)
    assert iso is not None
    assert all(relabeled.cells[iso[c]].dim == a.cells[c].dim for c in a.cells)
    assert not is_isomorphic(a, boundary(2))
    assert is_isomorphic(circle(), circle())
    assert not is_isomorphic(circle(), sphere2())
    # same cell counts per dimension but different attachments
    two_loops = SimplicialSet(
        {
            0: Cell(0, ()),
            1: Cell(0, ()),
            2: Cell(1, ((0, identity(0)), (0, identity(0)))),
            3: Cell(1, ((1, identity(0)), (1, identity(0)))),
        }
    )
    interval_pair = SimplicialSet(
        {
            0: Cell(0, ()),
            1: Cell(0, ()),
            2: Cell(1, ((1, identity(0)), (0, identity(0)))),
            3: Cell(1, ((1, identity(0)), (0, identity(0)))),
        }
    )
    assert not is_isomorphic(two_loops, interval_pair)


def test_simplex_map_of_degenerate_simplex():
    x = standard_simplex(1)
    s = Simplex(2, make_degen(0, 1))  # the edge, degenerated to degree 2
    f = simplex_map(x, s)
    assert f.source.same_presentation(standard_simplex(2))
    assert f.apply(f.source.simplex(f.source.cell_ids(2)[0])) == s
