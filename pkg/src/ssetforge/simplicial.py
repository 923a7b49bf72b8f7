"""Finite simplicial sets presented by their non-degenerate simplices.

A simplicial set is a table of cells.  A cell of dimension d >= 1 stores
d+1 codimension-1 faces, each as a pair (target cell, degeneracy): the
normal form of that face under the unique face-after-degeneracy
factorization of operators.  A general simplex is a pair
(cell, degeneracy operator), and all operator actions are computed by
factoring through the stored tables, so the presentation is closed under
the whole simplex category once the face-of-face identities hold.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from .operators import (
    Operator,
    all_degeneracies,
    all_faces,
    compose,
    ez_factor,
    identity,
    make_face,
    make_vertex,
)


@dataclass(frozen=True)
class Simplex:
    """A simplex in EZ normal form: a cell and a degeneracy onto its rank."""

    cell: int
    degen: Operator

    @property
    def degree(self) -> int:
        return self.degen.src

    @property
    def is_degenerate(self) -> bool:
        return not self.degen.is_identity


def simplex_key(s: Simplex) -> tuple:
    return (s.degree, s.cell, s.degen.values)


@dataclass(frozen=True)
class Cell:
    dim: int
    faces: tuple[tuple[int, Operator], ...]


class SimplicialSet:
    """Cell table with validated face-of-face identities.

    ``cells`` maps integer ids to Cell records; ``labels`` optionally maps
    ids to construction data (chains, carrier pairs, ...) and is not part
    of the presentation.
    """

    def __init__(self, cells: dict[int, Cell], labels: dict[int, object] | None = None):
        self.cells = dict(cells)
        self.labels = dict(labels or {})
        self._face_cache: dict[tuple[int, Operator], Simplex] = {}
        self._vertex_cache: dict[int, tuple[int, ...]] = {}
        self._validate()

    # -- validation -----------------------------------------------------

    def _validate(self) -> None:
        for cid, cell in self.cells.items():
            if not isinstance(cid, int):
                raise ValueError(f"cell ids must be integers, got {cid!r}")
            if cell.dim < 0:
                raise ValueError(f"cell {cid} has negative dimension")
            expected = 0 if cell.dim == 0 else cell.dim + 1
            if len(cell.faces) != expected:
                raise ValueError(
                    f"cell {cid} of dimension {cell.dim} stores {len(cell.faces)} faces"
                )
            for i, (target, op) in enumerate(cell.faces):
                if target not in self.cells:
                    raise ValueError(f"cell {cid} face {i} targets missing cell {target}")
                if not op.is_degeneracy:
                    raise ValueError(f"cell {cid} face {i} operator {op} is not surjective")
                if op.src != cell.dim - 1 or op.dst != self.cells[target].dim:
                    raise ValueError(f"cell {cid} face {i} has mismatched ranks")
        for cid, cell in self.cells.items():
            if cell.dim < 2:
                continue
            for j in range(cell.dim + 1):
                fj = Simplex(*cell.faces[j])
                for i in range(j):
                    fi = Simplex(*cell.faces[i])
                    a = self.eval(fj, make_face(i, cell.dim - 1))
                    b = self.eval(fi, make_face(j - 1, cell.dim - 1))
                    if a != b:
                        raise ValueError(
                            f"face identities fail at cell {cid}: "
                            f"faces ({i},{j}) give {a} vs {b}"
                        )

    # -- basic structure -------------------------------------------------

    @property
    def dim(self) -> int:
        return max((c.dim for c in self.cells.values()), default=-1)

    def cell_ids(self, dim: int | None = None) -> list[int]:
        if dim is None:
            return sorted(self.cells)
        return sorted(cid for cid, c in self.cells.items() if c.dim == dim)

    def simplex(self, cid: int) -> Simplex:
        return Simplex(cid, identity(self.cells[cid].dim))

    def simplices(self, degree: int) -> Iterator[Simplex]:
        for cid in sorted(self.cells):
            d = self.cells[cid].dim
            if d <= degree:
                for op in all_degeneracies(degree, d):
                    yield Simplex(cid, op)

    def nsimplices(self, degree: int) -> int:
        return sum(1 for _ in self.simplices(degree))

    # -- operator action -------------------------------------------------

    def _cell_face(self, cid: int, mu: Operator) -> Simplex:
        # mu must be a face operator into [dim cid]
        if mu.is_identity:
            return Simplex(cid, identity(mu.dst))
        key = (cid, mu)
        hit = self._face_cache.get(key)
        if hit is not None:
            return hit
        missing = set(range(mu.dst + 1)) - set(mu.values)
        i = max(missing)
        rest = Operator(mu.dst - 1, tuple(v if v < i else v - 1 for v in mu.values))
        target, sigma = self.cells[cid].faces[i]
        out = self.eval(Simplex(target, sigma), rest)
        self._face_cache[key] = out
        return out

    def eval(self, s: Simplex, op: Operator) -> Simplex:
        """The simplex s.op, renormalized; op must land in [degree of s]."""
        if op.dst != s.degree:
            raise ValueError(f"operator {op} does not land in [{s.degree}]")
        mu, tau = ez_factor(compose(op, s.degen))
        z = self._cell_face(s.cell, mu)
        return Simplex(z.cell, compose(tau, z.degen))

    def face(self, s: Simplex, i: int) -> Simplex:
        return self.eval(s, make_face(i, s.degree))

    def _cell_vertices(self, cid: int) -> tuple[int, ...]:
        got = self._vertex_cache.get(cid)
        if got is None:
            d = self.cells[cid].dim
            got = tuple(self._cell_face(cid, make_vertex(j, d)).cell for j in range(d + 1))
            self._vertex_cache[cid] = got
        return got

    def vertices(self, s: Simplex) -> tuple[int, ...]:
        base = self._cell_vertices(s.cell)
        return tuple(base[v] for v in s.degen.values)

    # -- predicates --------------------------------------------------------

    def is_embedded(self, s: Simplex) -> bool:
        vs = self.vertices(s)
        return len(set(vs)) == len(vs)

    def are_siblings(self, s: Simplex, t: Simplex) -> bool:
        return s.degree == t.degree and self.vertices(s) == self.vertices(t)

    def is_nonsingular(self) -> bool:
        return all(self.is_embedded(self.simplex(cid)) for cid in self.cells)

    def same_presentation(self, other: "SimplicialSet") -> bool:
        return self.cells == other.cells


class SimplicialMap:
    """A map of simplicial sets, stored on cells, validated on faces."""

    def __init__(
        self,
        source: SimplicialSet,
        target: SimplicialSet,
        assignment: dict[int, Simplex],
        check: bool = True,
    ):
        self.source = source
        self.target = target
        self.assignment = dict(assignment)
        if check:
            self._validate()

    def _validate(self) -> None:
        for cid, cell in self.source.cells.items():
            s = self.assignment.get(cid)
            if s is None:
                raise ValueError(f"no assignment for cell {cid}")
            if s.cell not in self.target.cells:
                raise ValueError(f"cell {cid} sent to missing cell {s.cell}")
            if s.degree != cell.dim or s.degen.dst != self.target.cells[s.cell].dim:
                raise ValueError(f"cell {cid} sent to simplex of wrong degree")
        for cid, cell in self.source.cells.items():
            for i in range(cell.dim + 1 if cell.dim else 0):
                got = self.target.eval(self.assignment[cid], make_face(i, cell.dim))
                want = self.apply(Simplex(*cell.faces[i]))
                if got != want:
                    raise ValueError(
                        f"assignment not simplicial at cell {cid}, face {i}: "
                        f"{got} vs {want}"
                    )

    def apply(self, s: Simplex) -> Simplex:
        return self.target.eval(self.assignment[s.cell], s.degen)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SimplicialMap)
            and self.source is other.source
            and self.target is other.target
            and self.assignment == other.assignment
        )

    def __hash__(self):  # pragma: no cover - maps are not meant to be hashed
        return id(self)

    def is_degreewise_injective(self, up_to: int | None = None) -> bool:
        top = self.source.dim if up_to is None else up_to
        for q in range(top + 1):
            seen: set[Simplex] = set()
            count = 0
            for s in self.source.simplices(q):
                seen.add(self.apply(s))
                count += 1
            if len(seen) != count:
                return False
        return True

    def is_degreewise_surjective(self) -> bool:
        # enough to hit every cell of the target in its own degree
        hit: dict[int, set[Simplex]] = {}
        for tid, tcell in self.target.cells.items():
            hit.setdefault(tcell.dim, set()).add(Simplex(tid, identity(tcell.dim)))
        for q, wanted in sorted(hit.items()):
            found = set()
            for s in self.source.simplices(q):
                img = self.apply(s)
                if img in wanted:
                    found.add(img)
            if found != wanted:
                return False
        return True

    def is_isomorphism(self) -> bool:
        if len(self.assignment) != len(self.target.cells):
            return False
        cells_hit = set()
        for s in self.assignment.values():
            if s.is_degenerate:
                return False
            cells_hit.add(s.cell)
        return len(cells_hit) == len(self.target.cells)


def identity_map(space: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(space, space, {cid: space.simplex(cid) for cid in space.cells}, check=False)


def compose_maps(first: SimplicialMap, second: SimplicialMap) -> SimplicialMap:
    if first.target is not second.source and not first.target.same_presentation(second.source):
        raise ValueError("maps do not chain")
    asg = {cid: second.apply(s) for cid, s in first.assignment.items()}
    return SimplicialMap(first.source, second.target, asg, check=False)


# -- standard complexes and subcomplexes ---------------------------------


def standard_simplex(n: int) -> SimplicialSet:
    """The n-simplex; cells are labeled by their face operators into [n]."""
    ids: dict[tuple[int, ...], int] = {}
    for mu in all_faces(n):
        ids[mu.values] = len(ids)
    cells: dict[int, Cell] = {}
    labels: dict[int, object] = {}
    for vals, cid in ids.items():
        d = len(vals) - 1
        faces = tuple(
            (ids[vals[:i] + vals[i + 1 :]], identity(d - 1)) for i in range(d + 1)
        ) if d else ()
        cells[cid] = Cell(d, faces)
        labels[cid] = Operator(n, vals)
    return SimplicialSet(cells, labels)


def generate(space: SimplicialSet, seeds: Iterable[int]) -> tuple[SimplicialSet, SimplicialMap]:
    """Smallest subcomplex containing the seed cells, with its inclusion."""
    keep: set[int] = set()
    stack = [cid for cid in seeds]
    while stack:
        cid = stack.pop()
        if cid in keep:
            continue
        if cid not in space.cells:
            raise ValueError(f"unknown cell {cid}")
        keep.add(cid)
        stack.extend(t for t, _ in space.cells[cid].faces)
    sub = SimplicialSet(
        {cid: space.cells[cid] for cid in sorted(keep)},
        {cid: space.labels[cid] for cid in sorted(keep) if cid in space.labels},
    )
    incl = SimplicialMap(sub, space, {cid: space.simplex(cid) for cid in sub.cells}, check=False)
    return sub, incl


def boundary(n: int) -> SimplicialSet:
    delta = standard_simplex(n)
    top = delta.cell_ids(n)[0]
    proper = [cid for cid in delta.cells if cid != top]
    return generate(delta, proper)[0]


def simplex_map(
    target: SimplicialSet, s: Simplex, source: SimplicialSet | None = None
) -> SimplicialMap:
    """The map out of the standard simplex representing the simplex s."""
    delta = standard_simplex(s.degree) if source is None else source
    asg = {cid: target.eval(s, delta.labels[cid]) for cid in delta.cells}
    return SimplicialMap(delta, target, asg, check=False)


def representing_map(space: SimplicialSet, cid: int) -> SimplicialMap:
    return simplex_map(space, space.simplex(cid))


# -- structural isomorphism ------------------------------------------------


def _refine_signatures(space: SimplicialSet) -> dict[int, int]:
    sig = {cid: hash((c.dim,)) for cid, c in space.cells.items()}
    while True:
        nxt = {
            cid: hash((sig[cid], tuple((sig[t], op) for t, op in c.faces)))
            for cid, c in space.cells.items()
        }
        if len(set(nxt.values())) == len(set(sig.values())):
            return nxt
        sig = nxt


def find_isomorphism(x: SimplicialSet, y: SimplicialSet) -> dict[int, int] | None:
    """A dimension- and face-table-preserving cell bijection, if one exists."""
    if len(x.cells) != len(y.cells):
        return None
    sx, sy = _refine_signatures(x), _refine_signatures(y)
    from collections import Counter

    if Counter(sx.values()) != Counter(sy.values()):
        return None
    by_sig: dict[int, list[int]] = {}
    for cid, s in sy.items():
        by_sig.setdefault(s, []).append(cid)
    order = sorted(x.cells, key=lambda c: (x.cells[c].dim, len(by_sig[sx[c]]), c))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def fits(cid: int, tid: int) -> bool:
        if x.cells[cid].dim != y.cells[tid].dim:
            return False
        xf, yf = x.cells[cid].faces, y.cells[tid].faces
        for (xt, xop), (yt, yop) in zip(xf, yf):
            if xop != yop:
                return False
            if xt in mapping and mapping[xt] != yt:
                return False
        return True

    def extend(k: int) -> bool:
        if k == len(order):
            return True
        cid = order[k]
        for tid in by_sig[sx[cid]]:
            if tid in used or not fits(cid, tid):
                continue
            mapping[cid] = tid
            used.add(tid)
            if extend(k + 1):
                return True
            del mapping[cid]
            used.discard(tid)
        return False

    return mapping if extend(0) else None


def is_isomorphic(x: SimplicialSet, y: SimplicialSet) -> bool:
    return find_isomorphism(x, y) is not None
