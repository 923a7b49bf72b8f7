"""Operators of the simplex category: weakly monotone maps [m] -> [n].

An operator is stored as its destination rank together with the tuple of
its values, so the source rank is ``len(values) - 1``.  Injective
operators are called faces, surjective ones degeneracies; every operator
factors uniquely as a face after a degeneracy (``ez_factor``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Iterator, Sequence


@dataclass(frozen=True)
class Operator:
    """A weakly monotone map [src] -> [dst] with src = len(values) - 1."""

    dst: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.dst < 0:
            raise ValueError(f"negative destination rank {self.dst}")
        if not self.values:
            raise ValueError("operator needs at least one value (source rank >= 0)")
        if any(a > b for a, b in zip(self.values, self.values[1:])):
            raise ValueError(f"values not weakly increasing: {self.values}")
        if self.values[0] < 0 or self.values[-1] > self.dst:
            raise ValueError(f"values {self.values} out of range for [{self.dst}]")

    @property
    def src(self) -> int:
        return len(self.values) - 1

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def is_face(self) -> bool:
        # injective == strictly increasing
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    @property
    def is_degeneracy(self) -> bool:
        # surjective onto [dst]
        return len(set(self.values)) == self.dst + 1

    @property
    def is_identity(self) -> bool:
        return self.dst == self.src and self.is_face

    def image(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.values)))

    def repeats(self) -> tuple[int, ...]:
        """Positions i with values[i] == values[i+1]; determines a degeneracy."""
        return tuple(i for i in range(self.src) if self.values[i] == self.values[i + 1])


def identity(n: int) -> Operator:
    return Operator(n, tuple(range(n + 1)))


def make_face(i: int, n: int) -> Operator:
    """The face [n-1] -> [n] whose image omits i.  Requires n >= 1."""
    if n < 1 or not 0 <= i <= n:
        raise ValueError(f"no face operator omitting {i} into [{n}]")
    return Operator(n, tuple(j for j in range(n + 1) if j != i))


def make_degen(i: int, n: int) -> Operator:
    """The degeneracy [n+1] -> [n] hitting i twice."""
    if not 0 <= i <= n:
        raise ValueError(f"no degeneracy repeating {i} onto [{n}]")
    return Operator(n, tuple(j if j <= i else j - 1 for j in range(n + 2)))


def make_vertex(j: int, n: int) -> Operator:
    """The vertex inclusion [0] -> [n] with value j."""
    if not 0 <= j <= n:
        raise ValueError(f"no vertex {j} in [{n}]")
    return Operator(n, (j,))


def compose(first: Operator, second: Operator) -> Operator:
    """The composite applying ``first`` and then ``second`` (second o first)."""
    if first.dst != second.src:
        raise ValueError(f"ranks do not match: {first} then {second}")
    return Operator(second.dst, tuple(second.values[v] for v in first.values))


def ez_factor(op: Operator) -> tuple[Operator, Operator]:
    """Unique (face, degeneracy) pair with op == face o degeneracy."""
    img = op.image()
    index = {v: k for k, v in enumerate(img)}
    face_part = Operator(op.dst, img)
    degen_part = Operator(len(img) - 1, tuple(index[v] for v in op.values))
    return face_part, degen_part


def join_faces(mu: Operator, nu: Operator) -> Operator:
    """Least face containing both images; the join in the face lattice of [n]."""
    if mu.dst != nu.dst:
        raise ValueError("faces of different simplices have no join")
    if not mu.is_face or not nu.is_face:
        raise ValueError("join_faces expects face operators")
    return Operator(mu.dst, tuple(sorted(set(mu.values) | set(nu.values))))


def face_from_image(image: Iterable[int], n: int) -> Operator:
    return Operator(n, tuple(sorted(set(image))))


def degeneracy_from_repeats(repeats: Iterable[int], src: int) -> Operator:
    """Surjection out of [src] collapsing i and i+1 for each listed position i."""
    reps = set(repeats)
    if not all(0 <= i < src for i in reps):
        raise ValueError(f"repeat positions {sorted(reps)} out of range for [{src}]")
    vals = [0]
    for j in range(src):
        vals.append(vals[-1] if j in reps else vals[-1] + 1)
    return Operator(vals[-1], tuple(vals))


def section(op: Operator) -> Operator:
    """First-preimage section s of a surjection: compose(s, op) is the identity."""
    firsts: dict[int, int] = {}
    for j, v in enumerate(op.values):
        firsts.setdefault(v, j)
    if len(firsts) != op.dst + 1:
        raise ValueError(f"{op} is not surjective")
    return Operator(op.src, tuple(firsts[v] for v in range(op.dst + 1)))


def face_restriction(mu: Operator, nu: Operator) -> Operator:
    """The face rho with compose(rho, mu) == nu, for faces with im(nu) in im(mu)."""
    index = {v: k for k, v in enumerate(mu.values)}
    try:
        return Operator(mu.src, tuple(index[v] for v in nu.values))
    except KeyError:
        raise ValueError(f"image of {nu} not contained in image of {mu}") from None


def run_collapse(seq: Sequence) -> tuple[tuple, Operator]:
    """Collapse equal adjacent entries; return (distinct runs, run degeneracy).

    The degeneracy sends position j to the index of the run containing j,
    so the original sequence is the run sequence precomposed with it.
    """
    reps = tuple(i for i in range(len(seq) - 1) if seq[i] == seq[i + 1])
    out = tuple(v for i, v in enumerate(seq) if i == 0 or seq[i - 1] != v)
    return out, degeneracy_from_repeats(reps, len(seq) - 1)


def all_operators(src: int, dst: int) -> Iterator[Operator]:
    for vals in combinations_with_replacement(range(dst + 1), src + 1):
        yield Operator(dst, vals)


def all_faces(n: int) -> Iterator[Operator]:
    """All face operators into [n] (nonempty subsets of [n]), by size then image."""
    for size in range(1, n + 2):
        for img in combinations(range(n + 1), size):
            yield Operator(n, img)


def all_degeneracies(src: int, dst: int) -> Iterator[Operator]:
    if src < dst:
        return
    for reps in combinations(range(src), src - dst):
        yield degeneracy_from_repeats(reps, src)


# Text encoding: `face n {i0,i1,...}` by image, `degen m {j0,...}` by repeat
# positions, `op m n (v0 v1 ...)` in general.  Injective operators print in
# face form, other surjections in degen form.

_FACE_RE = re.compile(r"^face (\d+) \{([0-9,]*)\}$")
_DEGEN_RE = re.compile(r"^degen (\d+) \{([0-9,]*)\}$")
_OP_RE = re.compile(r"^op (\d+) (\d+) \(([0-9 ]*)\)$")


def format_operator(op: Operator) -> str:
    if op.is_face:
        return f"face {op.dst} {{{','.join(map(str, op.values))}}}"
    if op.is_degeneracy:
        return f"degen {op.src} {{{','.join(map(str, op.repeats()))}}}"
    return f"op {op.src} {op.dst} ({' '.join(map(str, op.values))})"


def parse_operator(text: str) -> Operator:
    text = text.strip()
    m = _FACE_RE.match(text)
    if m:
        n = int(m.group(1))
        img = [int(v) for v in m.group(2).split(",") if v != ""]
        op = face_from_image(img, n)
        if sorted(img) != list(op.values):
            raise ValueError(f"face image not strictly increasing: {text!r}")
        return op
    m = _DEGEN_RE.match(text)
    if m:
        src = int(m.group(1))
        reps = [int(v) for v in m.group(2).split(",") if v != ""]
        return degeneracy_from_repeats(reps, src)
    m = _OP_RE.match(text)
    if m:
        dst = int(m.group(2))
        vals = tuple(int(v) for v in m.group(3).split())
        if len(vals) != int(m.group(1)) + 1:
            raise ValueError(f"source rank mismatch in {text!r}")
        return Operator(dst, vals)
    raise ValueError(f"cannot parse operator {text!r}")
