"""Backwards mapping cylinders of monotone maps, and their reduction.

The topological cylinder T glues the prism NP x Delta[1] onto NR along
the end at level 0; the reduced cylinder M is the nerve of the poset
pushout (P x [1]) u_P R.  A reduction map cr : T -> M compares the two,
and factoring cr through the desingularization of T gives the canonical
map dcr : DT -> M out of the universal non-singular quotient.
"""

from __future__ import annotations

from dataclasses import dataclass

from .colimits import ProductResult, PushoutResult, product, pushout
from .desingularize import (
    Certificate,
    DesingResult,
    desingularize,
    factor_through_quotient,
)
from .operators import Operator, identity, make_vertex, run_collapse
from .posets import (
    FinPoset,
    MonotoneMap,
    PosetPushout,
    chain_poset,
    compose_monotone,
    cylinder_end,
    nerve,
    nerve_map,
    poset_pushout,
    product_poset,
    sharp_map,
    singleton_poset,
)
from .simplicial import (
    Simplex,
    SimplicialMap,
    SimplicialSet,
    compose_maps,
    generate,
    simplex_map,
    standard_simplex,
)


# -- degreewise diagnostics ---------------------------------------------------


def injective_in_degree(f: SimplicialMap, q: int) -> bool:
    seen: set[Simplex] = set()
    for s in f.source.simplices(q):
        t = f.apply(s)
        if t in seen:
            return False
        seen.add(t)
    return True


def surjective_in_degree(f: SimplicialMap, q: int) -> bool:
    hit = {f.apply(s) for s in f.source.simplices(q)}
    return all(t in hit for t in f.target.simplices(q))


def embedded_sibling_pairs(space: SimplicialSet, q: int) -> list[tuple[int, int]]:
    """Pairs of distinct embedded q-cells that share their whole vertex row."""
    cells = [c for c in space.cell_ids(q) if space.is_embedded(space.simplex(c))]
    out = []
    for i, a in enumerate(cells):
        for b in cells[i + 1 :]:
            if space.are_siblings(space.simplex(a), space.simplex(b)):
                out.append((a, b))
    return out


def identifies_embedded_siblings(f: SimplicialMap, q: int) -> bool:
    return all(
        f.apply(f.source.simplex(a)) == f.apply(f.source.simplex(b))
        for a, b in embedded_sibling_pairs(f.source, q)
    )


# -- the two cylinders --------------------------------------------------------


@dataclass
class CylinderBundle:
    phi: MonotoneMap
    space: SimplicialSet  # T, the glued prism
    reduced: SimplicialSet  # M, a poset nerve
    reduction: SimplicialMap  # cr : T -> M
    front: SimplicialMap  # NR -> T, the glued-in target
    back: SimplicialMap  # NP -> T, the free end at level 1
    reduced_front: SimplicialMap
    reduced_back: SimplicialMap
    poset: PosetPushout


def _constant(vertex_cell: int, q: int) -> Simplex:
    return Simplex(vertex_cell, Operator(0, (0,) * (q + 1)))


def _end_inclusion(pr: ProductResult, level: int) -> SimplicialMap:
    base = pr.first.target
    interval = pr.second.target
    vcell = next(c for c, lab in interval.labels.items() if lab == make_vertex(level, 1))
    asg = {
        cid: pr.pair(base.simplex(cid), _constant(vcell, cell.dim))
        for cid, cell in base.cells.items()
    }
    return SimplicialMap(base, pr.space, asg)


def _prism_row(pr: ProductResult, cid: int) -> tuple:
    """Vertex row of a prism cell, as (base element, interval level) pairs."""
    base = pr.first.target
    interval = pr.second.target
    row = []
    for v in pr.space.vertices(pr.space.simplex(cid)):
        sx, sy = pr.space.labels[v]
        row.append((base.labels[sx.cell][0], interval.labels[sy.cell].values[0]))
    return tuple(row)


def _chain_simplex(ids: dict, row: tuple) -> Simplex:
    collapsed, degen = run_collapse(row)
    return Simplex(ids[collapsed], degen)


def cylinder_reduction(phi: MonotoneMap) -> CylinderBundle:
    p, r = phi.source, phi.target
    np_, nr = nerve(p), nerve(r)
    pr = product(np_, standard_simplex(1))
    i0 = _end_inclusion(pr, 0)
    i1 = _end_inclusion(pr, 1)
    po = pushout(i0, nerve_map(phi, np_, nr))

    cyl = product_poset(p, chain_poset(1))
    v = poset_pushout(cylinder_end(p, cyl, 0), phi)
    m = nerve(v.poset)
    mids = {lab: cid for cid, lab in m.labels.items()}
    prism_to_m = SimplicialMap(
        pr.space,
        m,
        {
            cid: _chain_simplex(
                mids, tuple(v.leg_ambient(pe) for pe in _prism_row(pr, cid))
            )
            for cid in pr.space.cells
        },
    )
    reduced_front = nerve_map(v.leg_other, nr, m)
    bundle = CylinderBundle(
        phi=phi,
        space=po.space,
        reduced=m,
        reduction=po.mediator(prism_to_m, reduced_front),
        front=po.right,
        back=compose_maps(i1, po.left),
        reduced_front=reduced_front,
        reduced_back=nerve_map(
            compose_monotone(cylinder_end(p, cyl, 1), v.leg_ambient), np_, m
        ),
        poset=v,
    )
    _check_bundle(bundle)
    return bundle


def _check_bundle(b: CylinderBundle) -> None:
    if compose_maps(b.front, b.reduction) != b.reduced_front:
        raise RuntimeError("reduction disagrees with the target-side leg")
    if compose_maps(b.back, b.reduction) != b.reduced_back:
        raise RuntimeError("reduction disagrees with the free-end leg")
    if not (injective_in_degree(b.reduction, 0) and surjective_in_degree(b.reduction, 0)):
        raise RuntimeError("reduction is not bijective on vertices")
    if not b.reduced.is_nonsingular():
        raise RuntimeError("reduced cylinder is not non-singular")


def topological_cylinder(
    phi: MonotoneMap,
) -> tuple[SimplicialSet, SimplicialMap, SimplicialMap]:
    """The glued prism with its front (target-side) and back inclusions."""
    b = cylinder_reduction(phi)
    return b.space, b.front, b.back


def reduced_cylinder(phi: MonotoneMap) -> SimplicialSet:
    cyl = product_poset(phi.source, chain_poset(1))
    return nerve(poset_pushout(cylinder_end(phi.source, cyl, 0), phi).poset)


# -- comparison out of the desingularized cylinder ----------------------------


def desingularized_comparison(
    comp: SimplicialMap, *, oracle_bound: int = 10
) -> tuple[SimplicialMap, DesingResult]:
    """Factor a map to a non-singular target through D of its source."""
    res = desingularize(comp.source, oracle_bound=oracle_bound)
    if res.certificate is Certificate.UNCERTIFIED:
        raise RuntimeError("desingularization of the source did not certify")
    return factor_through_quotient(res.eta, comp), res


def dcr(
    phi: MonotoneMap,
    *,
    oracle_bound: int = 10,
    bundle: CylinderBundle | None = None,
) -> tuple[SimplicialMap, DesingResult]:
    """The unique map DT -> M composing with eta to the reduction map."""
    b = cylinder_reduction(phi) if bundle is None else bundle
    return desingularized_comparison(b.reduction, oracle_bound=oracle_bound)


def representing_sharp(space: SimplicialSet, s: Simplex) -> MonotoneMap:
    """Sharp of the representing map of s, corestricted to what s generates."""
    sub, inc = generate(space, [s.cell])
    back = {t.cell: c for c, t in inc.assignment.items()}
    f = simplex_map(sub, Simplex(back[s.cell], s.degen))
    return sharp_map(f)


def pushout_comparison(
    k: MonotoneMap, phi: MonotoneMap, *, require_dwyer: bool = True
) -> tuple[PushoutResult, PosetPushout, SimplicialMap]:
    """Nerve-level pushout along an embedding, against the poset pushout.

    Returns the simplicial pushout of NQ <- NP -> NR, the poset pushout
    Q u_P R, and the comparison map from the former onto the nerve of the
    latter.  The cylinder is the case k : P -> P x [1], up to the prism
    presentation of the product nerve.
    """
    np_ = nerve(k.source)
    nq = nerve(k.target)
    nr = nerve(phi.target)
    po = pushout(nerve_map(k, np_, nq), nerve_map(phi, np_, nr))
    v = poset_pushout(k, phi, require_dwyer=require_dwyer)
    nv = nerve(v.poset)
    comp = po.mediator(
        nerve_map(v.leg_ambient, nq, nv), nerve_map(v.leg_other, nr, nv)
    )
    return po, v, comp


# -- cones --------------------------------------------------------------------


def as_poset_nerve(space: SimplicialSet) -> tuple[FinPoset, SimplicialMap]:
    """Recover P with N(P) isomorphic to the input, or raise ValueError.

    Vertices become elements, edges the order relation; the input is a
    poset nerve exactly when cells correspond bijectively to nonempty
    chains through their vertex rows.
    """
    for cid in space.cells:
        if not space.is_embedded(space.simplex(cid)):
            raise ValueError("a cell with repeated vertices is no nerve cell")
    edges = [tuple(space.vertices(space.simplex(c))) for c in space.cell_ids(1)]
    try:
        p = FinPoset(space.cell_ids(0), edges, close=True)
    except ValueError as exc:
        raise ValueError("edge relation is not antisymmetric") from exc
    rows: dict[tuple, int] = {}
    for cid in space.cells:
        row = tuple(space.vertices(space.simplex(cid)))
        if row in rows:
            raise ValueError("two cells share a vertex row")
        rows[row] = cid
    n = nerve(p)
    if len(rows) != len(n.cells):
        raise ValueError("cells and chains do not match up")
    asg = {}
    for cid, chain in n.labels.items():
        if chain not in rows:
            raise ValueError(f"no cell realizes the chain {chain}")
        asg[cid] = Simplex(rows[chain], identity(len(chain) - 1))
    iso = SimplicialMap(n, space, asg)
    if not iso.is_isomorphism():
        raise ValueError("chain correspondence is not an isomorphism")
    return p, iso


def cone(space: SimplicialSet) -> SimplicialSet:
    """Glue an apex above a poset nerve: the cylinder of the terminal map."""
    p, _ = as_poset_nerve(space)
    apex = singleton_poset("apex")
    terminal = MonotoneMap(p, apex, {e: "apex" for e in p.elements})
    return cylinder_reduction(terminal).space
