"""Finite posets, their nerves, and the cell poset of a simplicial set.

The nerve of a poset has one cell per nonempty strict chain.  The cell
poset (``sharp``) of a simplicial set orders cells by the face relation:
y <= x when y is the non-degenerate part of some face of x.  Pushouts of
posets along injective sieve or cosieve embeddings are computed as the
transitive closure of the images of both legs; antisymmetry of the
result is asserted, never repaired.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import permutations
from typing import Hashable, Iterable

import networkx as nx

from .operators import Operator, all_faces, identity, make_vertex, run_collapse
from .simplicial import Cell, Simplex, SimplicialMap, SimplicialSet


class FinPoset:
    def __init__(
        self,
        elements: Iterable[Hashable],
        relations: Iterable[tuple[Hashable, Hashable]] = (),
        *,
        close: bool = True,
    ):
        self.elements = tuple(dict.fromkeys(elements))
        known = set(self.elements)
        pairs = set()
        for a, b in relations:
            if a not in known or b not in known:
                raise ValueError(f"relation {(a, b)} mentions unknown elements")
            if a != b:
                pairs.add((a, b))
        if close:
            g = nx.DiGraph()
            g.add_nodes_from(self.elements)
            g.add_edges_from(pairs)
            pairs = set(nx.transitive_closure(g, reflexive=False).edges())
        else:
            for a, b in list(pairs):
                for c, d in list(pairs):
                    if b == c and (a, d) not in pairs and a != d:
                        raise ValueError(f"relation not transitive at {(a, b, d)}")
        for a, b in pairs:
            if (b, a) in pairs:
                raise ValueError(f"not antisymmetric: {a!r} and {b!r} are equivalent")
        self._lt = frozenset(pairs)
        self._index = {e: i for i, e in enumerate(self.elements)}
        self._up: dict[Hashable, tuple] = {}
        for e in self.elements:
            self._up[e] = tuple(f for f in self.elements if (e, f) in self._lt)

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, e: Hashable) -> bool:
        return e in self._index

    def lt(self, a: Hashable, b: Hashable) -> bool:
        return (a, b) in self._lt

    def leq(self, a: Hashable, b: Hashable) -> bool:
        return a == b or (a, b) in self._lt

    def up(self, a: Hashable) -> tuple:
        return self._up[a]

    def down(self, a: Hashable) -> tuple:
        return tuple(e for e in self.elements if (e, a) in self._lt)

    def strict_pairs(self) -> frozenset:
        return self._lt

    def covers(self) -> list[tuple[Hashable, Hashable]]:
        out = []
        for a, b in sorted(self._lt, key=lambda p: (self._index[p[0]], self._index[p[1]])):
            if not any(self.lt(a, c) and self.lt(c, b) for c in self.elements):
                out.append((a, b))
        return out

    def chains(self) -> list[tuple]:
        """All nonempty strict chains, shortest first, lexicographic within length."""
        n = len(self.elements)
        up_idx = {
            i: [self._index[f] for f in self._up[self.elements[i]]] for i in range(n)
        }
        out: list[tuple[int, ...]] = []
        level: list[tuple[int, ...]] = [(i,) for i in range(n)]
        while level:
            out.extend(level)
            level = [c + (j,) for c in level for j in up_idx[c[-1]]]
        return [tuple(self.elements[i] for i in c) for c in out]

    def same_as(self, other: "FinPoset") -> bool:
        return self.elements == other.elements and self._lt == other._lt


class MonotoneMap:
    def __init__(self, source: FinPoset, target: FinPoset, mapping: dict, check: bool = True):
        self.source = source
        self.target = target
        self.mapping = dict(mapping)
        if check:
            for e in source.elements:
                if e not in self.mapping:
                    raise ValueError(f"no value for {e!r}")
                if self.mapping[e] not in target:
                    raise ValueError(f"{e!r} sent outside the target poset")
            for a, b in source.strict_pairs():
                if not target.leq(self.mapping[a], self.mapping[b]):
                    raise ValueError(f"not monotone on {a!r} < {b!r}")

    def __call__(self, e: Hashable) -> Hashable:
        return self.mapping[e]

    def is_injective(self) -> bool:
        return len(set(self.mapping.values())) == len(self.mapping)


def identity_monotone(p: FinPoset) -> MonotoneMap:
    return MonotoneMap(p, p, {e: e for e in p.elements}, check=False)


def compose_monotone(first: MonotoneMap, second: MonotoneMap) -> MonotoneMap:
    return MonotoneMap(
        first.source, second.target, {e: second(first(e)) for e in first.source.elements}, check=False
    )


def chain_poset(n: int) -> FinPoset:
    return FinPoset(range(n + 1), [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)], close=False)


def singleton_poset(label: Hashable = 0) -> FinPoset:
    return FinPoset([label])


def product_poset(p: FinPoset, q: FinPoset) -> FinPoset:
    elements = [(a, b) for a in p.elements for b in q.elements]
    rel = [
        ((a, b), (c, d))
        for (a, b) in elements
        for (c, d) in elements
        if (a, b) != (c, d) and p.leq(a, c) and q.leq(b, d)
    ]
    return FinPoset(elements, rel, close=False)


def full_subposet(p: FinPoset, subset: Iterable[Hashable]) -> FinPoset:
    keep = set(subset)
    elems = [e for e in p.elements if e in keep]
    rel = [(a, b) for (a, b) in p.strict_pairs() if a in keep and b in keep]
    return FinPoset(elems, rel, close=False)


def down_closure(p: FinPoset, subset: Iterable[Hashable]) -> set:
    out = set(subset)
    for e in list(out):
        out.update(p.down(e))
    return out


def up_closure(p: FinPoset, subset: Iterable[Hashable]) -> set:
    out = set(subset)
    for e in list(out):
        out.update(p.up(e))
    return out


def is_sieve(p: FinPoset, subset: Iterable[Hashable]) -> bool:
    sub = set(subset)
    return down_closure(p, sub) == sub


def is_cosieve(p: FinPoset, subset: Iterable[Hashable]) -> bool:
    sub = set(subset)
    return up_closure(p, sub) == sub


# -- nerves -----------------------------------------------------------------


def nerve(p: FinPoset) -> SimplicialSet:
    """One cell per nonempty strict chain; faces drop chain entries."""
    chains = p.chains()
    ids = {c: i for i, c in enumerate(chains)}
    cells: dict[int, Cell] = {}
    labels: dict[int, object] = {}
    for c, cid in ids.items():
        d = len(c) - 1
        faces = tuple(
            (ids[c[:i] + c[i + 1 :]], identity(d - 1)) for i in range(d + 1)
        ) if d else ()
        cells[cid] = Cell(d, faces)
        labels[cid] = c
    return SimplicialSet(cells, labels)


def nerve_map(
    phi: MonotoneMap,
    source_nerve: SimplicialSet | None = None,
    target_nerve: SimplicialSet | None = None,
) -> SimplicialMap:
    np_ = nerve(phi.source) if source_nerve is None else source_nerve
    nq = nerve(phi.target) if target_nerve is None else target_nerve
    target_ids = {label: cid for cid, label in nq.labels.items()}
    asg: dict[int, Simplex] = {}
    for cid, chain in np_.labels.items():
        image = tuple(phi(x) for x in chain)
        collapsed, degen = run_collapse(image)
        asg[cid] = Simplex(target_ids[collapsed], degen)
    return SimplicialMap(np_, nq, asg)


# -- the cell poset ----------------------------------------------------------


def sharp(space: SimplicialSet) -> FinPoset:
    """Cells ordered by the face relation."""
    rel = [
        (target, cid)
        for cid, cell in space.cells.items()
        for target, _ in cell.faces
        if target != cid
    ]
    return FinPoset(sorted(space.cells), rel, close=True)


def sharp_map(f: SimplicialMap, sharp_source: FinPoset | None = None, sharp_target: FinPoset | None = None) -> MonotoneMap:
    src = sharp(f.source) if sharp_source is None else sharp_source
    dst = sharp(f.target) if sharp_target is None else sharp_target
    return MonotoneMap(src, dst, {cid: s.cell for cid, s in f.assignment.items()})


def barratt(space: SimplicialSet) -> SimplicialSet:
    return nerve(sharp(space))


def barratt_map(
    f: SimplicialMap,
    source_barratt: SimplicialSet | None = None,
    target_barratt: SimplicialSet | None = None,
) -> SimplicialMap:
    return nerve_map(sharp_map(f), source_barratt, target_barratt)


# -- Dwyer embeddings and pushouts -------------------------------------------


@dataclass
class DwyerWitness:
    cosieve: tuple
    retraction: MonotoneMap


def is_dwyer(k: MonotoneMap) -> DwyerWitness | None:
    """A witness that k is an injective sieve embedding admitting a
    cosieve W containing the image on which the image is a reflective
    sieve: each w in W has a maximum element of {p : k(p) <= w}."""
    p, q = k.source, k.target
    image = [k(e) for e in p.elements]
    if len(set(image)) != len(image) or not is_sieve(q, image):
        return None
    if not all(p.leq(a, b) == q.leq(k(a), k(b)) for a in p.elements for b in p.elements):
        return None
    base = up_closure(q, image)
    rest = [e for e in q.elements if e not in base]
    candidates = []
    for bits in range(2 ** len(rest)):
        s = {rest[i] for i in range(len(rest)) if bits >> i & 1}
        if all(set(q.down(e)) <= s for e in s):
            candidates.append(s)
    candidates.sort(key=len, reverse=True)
    for s in candidates:
        w_elems = [e for e in q.elements if e not in s]
        mapping = {}
        ok = True
        for w in w_elems:
            below = [e for e in p.elements if q.leq(k(e), w)]
            tops = [m for m in below if all(p.leq(b, m) for b in below)]
            if not tops:
                ok = False
                break
            mapping[w] = tops[0]
        if not ok:
            continue
        w_poset = full_subposet(q, w_elems)
        try:
            retraction = MonotoneMap(w_poset, p, mapping)
        except ValueError:
            continue
        if all(
            q.leq(k(e), w) == p.leq(e, retraction(w))
            for e in p.elements
            for w in w_elems
        ):
            return DwyerWitness(tuple(w_elems), retraction)
    return None


class PosetPushout:
    """Pushout of k: P -> Q along phi: P -> R over an embedded sieve/cosieve."""

    def __init__(self, k: MonotoneMap, phi: MonotoneMap, *, require_dwyer: bool = True):
        if k.source is not phi.source and not k.source.same_as(phi.source):
            raise ValueError("pushout legs must share their source")
        self._k, self._phi = k, phi
        q, r = k.target, phi.target
        image = {k(e): e for e in k.source.elements}
        if len(image) != len(k.source.elements):
            raise ValueError("pushout requires an injective embedding leg")
        if require_dwyer:
            if is_dwyer(k) is None:
                raise ValueError("embedding leg admits no cosieve retraction witness")
        elif not (is_sieve(q, image) or is_cosieve(q, image)):
            raise ValueError("embedding leg is neither a sieve nor a cosieve")

        def send(x):
            return ("r", phi(image[x])) if x in image else ("q", x)

        elements = [("r", y) for y in r.elements]
        elements += [("q", x) for x in q.elements if x not in image]
        rel = [(send(a), send(b)) for a, b in q.strict_pairs()]
        rel += [(("r", a), ("r", b)) for a, b in r.strict_pairs()]
        self.poset = FinPoset(elements, rel, close=True)
        self.leg_ambient = MonotoneMap(q, self.poset, {x: send(x) for x in q.elements})
        self.leg_other = MonotoneMap(r, self.poset, {y: ("r", y) for y in r.elements})

    def mediator(self, u: MonotoneMap, v: MonotoneMap) -> MonotoneMap:
        if u.target is not v.target:
            raise ValueError("mediator targets differ")
        for e in self._k.source.elements:
            if u(self._k(e)) != v(self._phi(e)):
                raise ValueError(f"maps do not agree on {e!r}")
        mapping = {}
        for tag, x in self.poset.elements:
            mapping[(tag, x)] = v(x) if tag == "r" else u(x)
        return MonotoneMap(self.poset, u.target, mapping)


def poset_pushout(k: MonotoneMap, phi: MonotoneMap, *, require_dwyer: bool = True) -> PosetPushout:
    return PosetPushout(k, phi, require_dwyer=require_dwyer)


def join(p: FinPoset, a: Hashable, b: Hashable):
    """Least upper bound, or None when there is none."""
    ups = [e for e in p.elements if p.leq(a, e) and p.leq(b, e)]
    for e in ups:
        if all(p.leq(e, other) for other in ups):
            return e
    return None


# -- comparison maps into the face poset of the standard simplex -------------


def face_poset(n: int) -> FinPoset:
    """All face operators into [n], ordered by image containment."""
    elems = list(all_faces(n))
    rel = [
        (a, b)
        for a in elems
        for b in elems
        if a != b and set(a.values) < set(b.values)
    ]
    return FinPoset(elems, rel, close=False)


def cylinder_end(p: FinPoset, cyl: FinPoset, level: int) -> MonotoneMap:
    return MonotoneMap(p, cyl, {e: (e, level) for e in p.elements})


def psi(n: int) -> MonotoneMap:
    """The comparison embedding of the cylinder on the face poset of [n-1]
    into the face poset of [n]: level 0 pastes onto the last face, level 1
    adds the last vertex."""
    if n < 1:
        raise ValueError("psi needs n >= 1")
    src = product_poset(face_poset(n - 1), chain_poset(1))
    dst = face_poset(n)
    mapping = {}
    for mu, level in src.elements:
        if level == 0:
            mapping[(mu, level)] = Operator(n, mu.values)
        else:
            mapping[(mu, level)] = Operator(n, mu.values + (n,))
    return MonotoneMap(src, dst, mapping)


def omega(n: int) -> MonotoneMap:
    """The cone-flavored companion of psi: level 0 collapses to the last
    vertex, level 1 agrees with psi."""
    if n < 1:
        raise ValueError("omega needs n >= 1")
    src = product_poset(face_poset(n - 1), chain_poset(1))
    dst = face_poset(n)
    mapping = {}
    for mu, level in src.elements:
        if level == 0:
            mapping[(mu, level)] = make_vertex(n, n)
        else:
            mapping[(mu, level)] = Operator(n, mu.values + (n,))
    return MonotoneMap(src, dst, mapping)


# -- isomorphism and enumeration ---------------------------------------------


def find_poset_isomorphism(p: FinPoset, q: FinPoset) -> dict | None:
    if len(p) != len(q):
        return None

    def signatures(poset):
        sig = {e: (len(poset.down(e)), len(poset.up(e))) for e in poset.elements}
        for _ in range(len(poset)):
            nxt = {
                e: (
                    sig[e],
                    tuple(sorted(sig[d] for d in poset.down(e))),
                    tuple(sorted(sig[u] for u in poset.up(e))),
                )
                for e in poset.elements
            }
            if len(set(nxt.values())) == len(set(sig.values())):
                return nxt
            sig = nxt
        return sig

    sp, sq = signatures(p), signatures(q)
    if Counter(sp.values()) != Counter(sq.values()):
        return None
    pool: dict[int, list] = {}
    for e, s in sq.items():
        pool.setdefault(s, []).append(e)
    order = sorted(p.elements, key=lambda e: (len(pool[sp[e]]), p._index[e]))
    mapping: dict = {}
    used: set = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        a = order[i]
        for b in pool[sp[a]]:
            if b in used:
                continue
            if any(p.lt(a, c) != q.lt(b, mapping[c]) or p.lt(c, a) != q.lt(mapping[c], b) for c in mapping):
                continue
            mapping[a] = b
            used.add(b)
            if extend(i + 1):
                return True
            del mapping[a]
            used.discard(b)
        return False

    return mapping if extend(0) else None


def is_poset_isomorphic(p: FinPoset, q: FinPoset) -> bool:
    return find_poset_isomorphism(p, q) is not None


def all_posets(max_size: int) -> list[FinPoset]:
    """All posets with at most max_size elements, one per isomorphism class."""

    def canonical(n, rel):
        best = None
        for perm in permutations(range(n)):
            cand = tuple(sorted((perm[a], perm[b]) for a, b in rel))
            if best is None or cand < best:
                best = cand
        return best

    out: list[FinPoset] = [FinPoset([])]
    layer: list[frozenset] = [frozenset()]
    for n in range(1, max_size + 1):
        seen = set()
        nxt = []
        for rel in layer:
            down_of = {i: {a for a, b in rel if b == i} for i in range(n - 1)}
            for bits in range(2 ** (n - 1)):
                s = {i for i in range(n - 1) if bits >> i & 1}
                if any(not down_of[i] <= s for i in s):
                    continue
                new = rel | {(i, n - 1) for i in s}
                canon = canonical(n, new)
                if canon in seen:
                    continue
                seen.add(canon)
                nxt.append(frozenset(new))
        layer = nxt
        out.extend(FinPoset(range(n), rel, close=False) for rel in layer)
    return out
