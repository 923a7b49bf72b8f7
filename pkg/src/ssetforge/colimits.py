"""Congruences, quotients, pushouts, products, and regularity.

A congruence is an operator-closed equivalence relation on the simplices
of degree at most dim(X).  Closure only needs the elementary faces and
degeneracies of each merged pair: any operator between degrees under the
bound factors through intermediate degrees under the bound.  Quotients
identify the classes containing no degenerate simplex as the cells of
the quotient complex; every other class reduces to a degeneration of a
lower cell class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .operators import (
    Operator,
    compose,
    degeneracy_from_repeats,
    identity,
    make_degen,
    make_face,
    section,
)
from .simplicial import (
    Cell,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    compose_maps,
    generate,
    simplex_key,
    simplex_map,
    standard_simplex,
)


class Congruence:
    """Union-find over simplices of degree <= dim, closed under operators."""

    def __init__(self, space: SimplicialSet):
        self.space = space
        self.degree_bound = max(space.dim, 0)
        self._parent: dict[Simplex, Simplex] = {}
        self._size: dict[Simplex, int] = {}
        self._members0: dict[Simplex, list[Simplex]] = {}
        self._events: list[tuple[Simplex, ...]] = []

    def find(self, s: Simplex) -> Simplex:
        if s not in self._parent:
            self._parent[s] = s
            self._size[s] = 1
            if s.degree == 0:
                self._members0[s] = [s]
            return s
        while self._parent[s] != s:
            self._parent[s] = self._parent[self._parent[s]]
            s = self._parent[s]
        return s

    def together(self, s: Simplex, t: Simplex) -> bool:
        return self.find(s) == self.find(t)

    def merge(self, s: Simplex, t: Simplex) -> None:
        """Merge two simplices of equal degree and close under all operators."""
        if s.degree != t.degree:
            raise ValueError("cannot merge simplices of different degrees")
        work = [(s, t)]
        while work:
            a, b = work.pop()
            ra, rb = self.find(a), self.find(b)
            if ra == rb:
                continue
            if self._size[ra] < self._size[rb]:
                ra, rb = rb, ra
            self._parent[rb] = ra
            self._size[ra] += self._size[rb]
            q = a.degree
            if q == 0:
                lost = self._members0.pop(rb)
                self._members0[ra].extend(lost)
                self._events.append(tuple(lost))
            if q >= 1:
                for i in range(q + 1):
                    op = make_face(i, q)
                    work.append((self.space.eval(a, op), self.space.eval(b, op)))
            if q < self.degree_bound:
                for i in range(q + 1):
                    op = make_degen(i, q)
                    work.append((self.space.eval(a, op), self.space.eval(b, op)))

    def pop_events(self) -> list[tuple[Simplex, ...]]:
        """Batches of degree-0 simplices whose class just changed."""
        out, self._events = self._events, []
        return out

    def classes(self) -> dict[Simplex, list[Simplex]]:
        """All simplices of degree <= bound grouped by class, scan order kept."""
        out: dict[Simplex, list[Simplex]] = {}
        for q in range(self.degree_bound + 1):
            for s in self.space.simplices(q):
                out.setdefault(self.find(s), []).append(s)
        return out

    def canonical(self) -> frozenset[frozenset[Simplex]]:
        return frozenset(
            frozenset(members) for members in self.classes().values() if len(members) > 1
        )

    def copy(self) -> "Congruence":
        other = Congruence.__new__(Congruence)
        other.space = self.space
        other.degree_bound = self.degree_bound
        other._parent = dict(self._parent)
        other._size = dict(self._size)
        other._members0 = {k: list(v) for k, v in self._members0.items()}
        other._events = []
        return other


def refines(fine: Congruence, coarse: Congruence) -> bool:
    """True when every class of ``fine`` lies inside a class of ``coarse``."""
    for members in fine.classes().values():
        roots = {coarse.find(m) for m in members}
        if len(roots) > 1:
            return False
    return True


def congruence_from_pairs(
    space: SimplicialSet, pairs: Iterable[tuple[Simplex, Simplex]]
) -> Congruence:
    cong = Congruence(space)
    for s, t in pairs:
        cong.merge(s, t)
    return cong


def kernel_congruence(f: SimplicialMap) -> Congruence:
    cong = Congruence(f.source)
    for q in range(f.source.dim + 1):
        fibers: dict[Simplex, Simplex] = {}
        for s in f.source.simplices(q):
            img = f.apply(s)
            if img in fibers:
                cong.merge(fibers[img], s)
            else:
                fibers[img] = s
    return cong


@dataclass
class QuotientResult:
    space: SimplicialSet
    projection: SimplicialMap
    cell_members: dict[int, tuple[int, ...]]


def quotient(space: SimplicialSet, cong: Congruence) -> QuotientResult:
    classes = cong.classes()
    is_cell = {
        root: all(not m.is_degenerate for m in members)
        for root, members in classes.items()
    }
    new_id: dict[Simplex, int] = {}
    for root in classes:
        if is_cell[root]:
            new_id[root] = len(new_id)

    memo: dict[Simplex, Simplex] = {}

    def normal_form(root: Simplex) -> Simplex:
        got = memo.get(root)
        if got is not None:
            return got
        if is_cell[root]:
            out = Simplex(new_id[root], identity(root.degree))
        else:
            rep = min(
                (m for m in classes[root] if m.is_degenerate), key=simplex_key
            )
            base = normal_form(cong.find(Simplex(rep.cell, identity(rep.degen.dst))))
            out = Simplex(base.cell, compose(rep.degen, base.degen))
        memo[root] = out
        return out

    cells: dict[int, Cell] = {}
    labels: dict[int, object] = {}
    for root, members in classes.items():
        if not is_cell[root]:
            continue
        q = root.degree
        rep = members[0]
        faces = []
        for i in range(q + 1 if q else 0):
            fs = normal_form(cong.find(space.eval(rep, make_face(i, q))))
            faces.append((fs.cell, fs.degen))
        cells[new_id[root]] = Cell(q, tuple(faces))
        labels[new_id[root]] = tuple(m.cell for m in members)
    qspace = SimplicialSet(cells, labels)
    projection = SimplicialMap(
        space,
        qspace,
        {cid: normal_form(cong.find(space.simplex(cid))) for cid in space.cells},
    )
    members_of = {cid: tuple(label) for cid, label in labels.items()}
    return QuotientResult(qspace, projection, members_of)


def disjoint_union(
    x: SimplicialSet, y: SimplicialSet
) -> tuple[SimplicialSet, SimplicialMap, SimplicialMap]:
    xmap = {cid: i for i, cid in enumerate(sorted(x.cells))}
    off = len(xmap)
    ymap = {cid: off + i for i, cid in enumerate(sorted(y.cells))}
    cells: dict[int, Cell] = {}
    for cid, c in x.cells.items():
        cells[xmap[cid]] = Cell(c.dim, tuple((xmap[t], op) for t, op in c.faces))
    for cid, c in y.cells.items():
        cells[ymap[cid]] = Cell(c.dim, tuple((ymap[t], op) for t, op in c.faces))
    z = SimplicialSet(cells)
    inl = SimplicialMap(x, z, {c: Simplex(xmap[c], identity(x.cells[c].dim)) for c in x.cells}, check=False)
    inr = SimplicialMap(y, z, {c: Simplex(ymap[c], identity(y.cells[c].dim)) for c in y.cells}, check=False)
    return z, inl, inr


class PushoutResult:
    """Pushout of f: A -> X along g: A -> Y, with its universal property."""

    def __init__(self, f: SimplicialMap, g: SimplicialMap):
        if f.source is not g.source and not f.source.same_presentation(g.source):
            raise ValueError("pushout legs must share their source")
        self._f, self._g = f, g
        z, inl, inr = disjoint_union(f.target, g.target)
        self._inv: dict[int, tuple[str, int]] = {}
        for cid, s in inl.assignment.items():
            self._inv[s.cell] = ("x", cid)
        for cid, s in inr.assignment.items():
            self._inv[s.cell] = ("y", cid)
        cong = Congruence(z)
        for aid in sorted(f.source.cells):
            a = f.source.simplex(aid)
            cong.merge(inl.apply(f.apply(a)), inr.apply(g.apply(a)))
        q = quotient(z, cong)
        self.space = q.space
        self.cell_members = q.cell_members
        self.left = compose_maps(inl, q.projection)
        self.right = compose_maps(inr, q.projection)

    def mediator(self, u: SimplicialMap, v: SimplicialMap) -> SimplicialMap:
        """The unique map out of the pushout restricting to u and v."""
        if u.target is not v.target:
            raise ValueError("mediator targets differ")
        for aid in self._f.source.cells:
            a = self._f.source.simplex(aid)
            if u.apply(self._f.apply(a)) != v.apply(self._g.apply(a)):
                raise ValueError(f"maps do not agree on cell {aid} of the gluing source")
        asg: dict[int, Simplex] = {}
        for pid, members in self.cell_members.items():
            values = set()
            for zc in members:
                side, orig = self._inv[zc]
                values.add(u.assignment[orig] if side == "x" else v.assignment[orig])
            if len(values) != 1:
                raise RuntimeError(f"mediator ill-defined on quotient cell {pid}")
            asg[pid] = values.pop()
        return SimplicialMap(self.space, u.target, asg)


def pushout(f: SimplicialMap, g: SimplicialMap) -> PushoutResult:
    return PushoutResult(f, g)


@dataclass
class ProductResult:
    space: SimplicialSet
    first: SimplicialMap
    second: SimplicialMap
    index: dict[tuple[Simplex, Simplex], int]

    def pair(self, sx: Simplex, sy: Simplex) -> Simplex:
        """The unique simplex whose two projections are the given pair."""
        if sx.degree != sy.degree:
            raise ValueError("pair components must have equal degree")
        bx, by, rho = _strip_common(self.first.target, self.second.target, sx, sy)
        return Simplex(self.index[(bx, by)], rho)


def _strip_common(
    x: SimplicialSet, y: SimplicialSet, sx: Simplex, sy: Simplex
) -> tuple[Simplex, Simplex, Operator]:
    """Split off the common degeneracy of a pair of equal-degree simplices."""
    acc = identity(sx.degree)
    while True:
        common = sorted(set(sx.degen.repeats()) & set(sy.degen.repeats()))
        if not common:
            return sx, sy, acc
        rho = degeneracy_from_repeats(common, sx.degree)
        lift = section(rho)
        sx = Simplex(sx.cell, compose(lift, sx.degen))
        sy = Simplex(sy.cell, compose(lift, sy.degen))
        acc = compose(acc, rho)


def product(x: SimplicialSet, y: SimplicialSet) -> ProductResult:
    """Cells are the jointly non-degenerate pairs of simplices."""
    ids: dict[tuple[Simplex, Simplex], int] = {}
    for q in range(x.dim + y.dim + 1):
        for sx in x.simplices(q):
            rx = set(sx.degen.repeats())
            for sy in y.simplices(q):
                if rx & set(sy.degen.repeats()):
                    continue
                ids[(sx, sy)] = len(ids)
    cells: dict[int, Cell] = {}
    labels: dict[int, object] = {}
    for (sx, sy), cid in ids.items():
        q = sx.degree
        faces = []
        for i in range(q + 1 if q else 0):
            ax = x.eval(sx, make_face(i, q))
            ay = y.eval(sy, make_face(i, q))
            bx, by, rho = _strip_common(x, y, ax, ay)
            faces.append((ids[(bx, by)], rho))
        cells[cid] = Cell(q, tuple(faces))
        labels[cid] = (sx, sy)
    space = SimplicialSet(cells, labels)
    first = SimplicialMap(space, x, {cid: sx for (sx, _), cid in ids.items()})
    second = SimplicialMap(space, y, {cid: sy for (_, sy), cid in ids.items()})
    return ProductResult(space, first, second, ids)


def collapse_subcomplex(space: SimplicialSet, seeds: Iterable[int]) -> QuotientResult:
    """Quotient collapsing the subcomplex generated by the seeds to a vertex."""
    sub, _ = generate(space, seeds)
    if not sub.cells:
        raise ValueError("cannot collapse an empty subcomplex")
    base = sub.cell_ids(0)[0]
    cong = Congruence(space)
    for cid in sub.cell_ids():
        d = sub.cells[cid].dim
        cong.merge(space.simplex(cid), Simplex(base, Operator(0, (0,) * (d + 1))))
    return quotient(space, cong)


# -- regularity ------------------------------------------------------------


def regularity_witness(space: SimplicialSet) -> int | None:
    """A cell whose last-face attachment fails to glue injectively, if any.

    A complex is regular when for every cell y of dimension d the canonical
    map out of the pushout of the d-simplex and the subcomplex generated by
    the last face of y is degreewise injective.
    """
    deltas: dict[int, SimplicialSet] = {}
    for cid in sorted(space.cells):
        d = space.cells[cid].dim
        if d == 0:
            continue
        dn = deltas.setdefault(d, standard_simplex(d))
        dn1 = deltas.setdefault(d - 1, standard_simplex(d - 1))
        top = space.simplex(cid)
        last = space.face(top, d)
        sub, incl = generate(space, [last.cell])
        top_dn = dn.simplex(dn.cell_ids(d)[0])
        to_delta = simplex_map(dn, dn.eval(top_dn, make_face(d, d)), source=dn1)
        to_sub = simplex_map(sub, last, source=dn1)
        po = pushout(to_delta, to_sub)
        canonical = po.mediator(simplex_map(space, top, source=dn), incl)
        if not canonical.is_degreewise_injective():
            return cid
    return None


def is_regular(space: SimplicialSet) -> bool:
    return regularity_witness(space) is None
