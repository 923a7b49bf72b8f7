from ssetforge.colimits import (
    congruence_from_pairs,
    is_regular,
    product,
    pushout,
    quotient,
)
from ssetforge.operators import Operator, identity, make_face
from ssetforge.posets import barratt, barratt_map
from ssetforge.simplicial import (
    Cell,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    boundary,
    compose_maps,
    is_isomorphic,
    representing_map,
    simplex_map,
    standard_simplex,
)
from ssetforge.subdivision import b_nat, chains_to_top, last_vertex, sd, sd_map, sd_skeletal


def counts(space):
    return tuple(len(space.cell_ids(d)) for d in range(space.dim + 1))


def circle():
    delta1 = standard_simplex(1)
    cong = congruence_from_pairs(delta1, [(delta1.simplex(0), delta1.simplex(1))])
    return quotient(delta1, cong)


def sphere2():
    collapse = Operator(0, (0, 0))
    return SimplicialSet({0: Cell(0, ()), 1: Cell(2, ((0, collapse),) * 3)})


def test_chain_counts():
    assert [len(chains_to_top(n)) for n in range(4)] == [1, 3, 13, 75]


def test_sd_standard_simplex_is_barratt():
    for n in range(4):
        sdn = sd(standard_simplex(n))
        assert is_isomorphic(sdn, barratt(standard_simplex(n)))
    assert counts(sd(standard_simplex(2))) == (7, 12, 6)
    assert len(sd(standard_simplex(3)).cells) == 149


def test_sd_vertices_are_cells():
    for space in (standard_simplex(2), boundary(3), circle().space, sphere2()):
        sds = sd(space)
        assert len(sds.cell_ids(0)) == len(space.cells)


def test_sd_circle():
    sds = sd(circle().space)
    assert counts(sds) == (2, 2)
    assert sds.is_nonsingular()
    edges = sds.cell_ids(1)
    assert sds.vertices(sds.simplex(edges[0])) == sds.vertices(sds.simplex(edges[1]))


def test_sd_empty():
    assert sd(SimplicialSet({})).cells == {}


def test_sd_collapsed_sphere():
    sds = sd(sphere2())
    assert counts(sds) == (2, 6, 6)
    assert not sds.is_nonsingular()
    assert is_regular(sds)


def test_sd_is_regular():
    cases = [circle().space, sphere2(), standard_simplex(2)]
    for space in cases:
        assert is_regular(sd(space))


def test_sd_map_of_representing_map():
    circ = circle().space
    delta1 = standard_simplex(1)
    f = representing_map(circ, 1)
    lifted = sd_map(f)
    assert lifted.is_degreewise_surjective()
    assert not lifted.is_degreewise_injective()
    assert sd_map(SimplicialMap(delta1, delta1, {c: delta1.simplex(c) for c in delta1.cells})).is_isomorphism()


def test_sd_map_embeds_face():
    delta3 = standard_simplex(3)
    last = simplex_map(delta3, delta3.simplex(10))
    assert delta3.labels[10] == make_face(3, 3)
    lifted = sd_map(last)
    assert lifted.is_degreewise_injective()


def test_sd_map_functorial():
    delta2 = standard_simplex(2)
    circ = circle().space
    to_circle = representing_map(circ, 1)
    squash = simplex_map(standard_simplex(1), Simplex(2, Operator(1, (0, 0, 1))), source=delta2)
    sd2, sd1, sdc = sd(delta2), sd(standard_simplex(1)), sd(circ)
    one = sd_map(compose_maps(squash, to_circle), sd2, sdc)
    two = compose_maps(sd_map(squash, sd2, sd1), sd_map(to_circle, sd1, sdc))
    assert one == two


def test_b_nat_iso_for_nonsingular():
    for n in range(3):
        assert b_nat(standard_simplex(n)).is_isomorphism()
    assert b_nat(boundary(2)).is_isomorphism()


def test_b_nat_circle():
    circ = circle().space
    b = b_nat(circ)
    assert b.is_degreewise_surjective()
    assert not b.is_isomorphism()
    zero = [b.assignment[c] for c in b.source.cell_ids(0)]
    assert len(set(zero)) == 2
    ones = {b.assignment[c].cell for c in b.source.cell_ids(1)}
    assert len(ones) == 1


def test_b_nat_surjective_for_singular():
    assert b_nat(sphere2()).is_degreewise_surjective()


def test_b_naturality_square():
    circ = circle().space
    f = representing_map(circ, 1)
    delta1 = standard_simplex(1)
    sd1, sdc = sd(delta1), sd(circ)
    b1, bc = barratt(delta1), barratt(circ)
    left = compose_maps(sd_map(f, sd1, sdc), b_nat(circ, bc, sdc))
    right = compose_maps(b_nat(delta1, b1, sd1), barratt_map(f, b1, bc))
    assert left == right


def test_last_vertex_edge_patterns():
    delta1 = standard_simplex(1)
    sd1 = sd(delta1)
    d = last_vertex(delta1, sd1)
    by_label = {sd1.labels[c]: d.assignment[c] for c in sd1.cell_ids(1)}
    e0 = Operator(1, (0,))
    e1 = Operator(1, (1,))
    assert by_label[(2, (e0, identity(1)))] == Simplex(2, identity(1))
    assert by_label[(2, (e1, identity(1)))] == Simplex(1, Operator(0, (0, 0)))


def test_last_vertex_point_and_naturality():
    point = standard_simplex(0)
    assert last_vertex(point).is_isomorphism()
    circ = circle().space
    f = representing_map(circ, 1)
    delta1 = standard_simplex(1)
    sd1, sdc = sd(delta1), sd(circ)
    left = compose_maps(sd_map(f, sd1, sdc), last_vertex(circ, sdc))
    right = compose_maps(last_vertex(delta1, sd1), f)
    assert left == right


def test_skeletal_oracle():
    delta2 = standard_simplex(2)
    glued = pushout(
        simplex_map(delta2, delta2.simplex(5)),
        simplex_map(delta2, delta2.simplex(3)),
    ).space
    square = product(standard_simplex(1), standard_simplex(1)).space
    cases = [
        standard_simplex(2),
        boundary(2),
        circle().space,
        sphere2(),
        glued,
        square,
    ]
    for space in cases:
        assert is_isomorphic(sd(space), sd_skeletal(space))
