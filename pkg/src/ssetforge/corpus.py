"""Deterministic corpus of small simplicial sets for verification runs.

Builtins cover the standard simplices, their boundaries, the quotient
spheres, the face-collapse quotients, and the nerves behind the two
counterexamples.  Random members are quotients of disjoint unions of
standard simplices along same-degree cell identifications; the Kan
subdivisions of everything small enough supply the guaranteed-regular
population.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .colimits import (
    collapse_subcomplex,
    congruence_from_pairs,
    disjoint_union,
    is_regular,
    product,
    pushout,
    quotient,
)
from .operators import identity
from .posets import FinPoset, nerve
from .simplicial import (
    Simplex,
    SimplicialSet,
    boundary,
    simplex_map,
    standard_simplex,
)
from .subdivision import chains_to_top, sd


@dataclass
class CorpusEntry:
    name: str
    space: SimplicialSet
    provenance: str  # builtin | random-quotient | sd-image
    regular: bool


@dataclass
class Corpus:
    seed: int
    entries: list[CorpusEntry]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def regular_entries(self) -> list[CorpusEntry]:
        return [e for e in self.entries if e.regular]


def sphere(n: int) -> SimplicialSet:
    """The standard simplex with its whole boundary collapsed."""
    d = standard_simplex(n)
    rim = [c for c in d.cells if d.cells[c].dim == n - 1]
    return collapse_subcomplex(d, rim).space


def sd_size(space: SimplicialSet) -> int:
    """Cell count of sd(space), without building it."""
    return sum(len(chains_to_top(cell.dim)) for cell in space.cells.values())


def _builtins() -> list[tuple[str, SimplicialSet]]:
    d2 = standard_simplex(2)
    glued = pushout(
        simplex_map(d2, d2.simplex(5)),
        simplex_map(d2, d2.simplex(3)),
    ).space
    square = product(standard_simplex(1), standard_simplex(1)).space
    wedge = FinPoset("abc", [("a", "b"), ("a", "c")])
    chain3 = FinPoset(["a2", "b2", "c2"], [("a2", "b2"), ("b2", "c2")])
    out = [(f"delta-{n}", standard_simplex(n)) for n in range(4)]
    out += [(f"boundary-{n}", boundary(n)) for n in (1, 2, 3)]
    out += [(f"sphere-{n}", sphere(n)) for n in (1, 2, 3)]
    out += [
        ("triangle-last-edge-collapse", collapse_subcomplex(d2, [3]).space),
        ("triangle-middle-edge-collapse", collapse_subcomplex(d2, [4]).space),
        ("tetra-last-face-collapse", collapse_subcomplex(standard_simplex(3), [10]).space),
        ("two-triangles", glued),
        ("square", square),
        ("wedge-nerve", nerve(wedge)),
        ("three-chain-nerve", nerve(chain3)),
    ]
    return out


def _random_quotient(rng: random.Random) -> SimplicialSet:
    parts = [standard_simplex(rng.randint(1, 3)) for _ in range(rng.randint(2, 4))]
    space = parts[0]
    for nxt in parts[1:]:
        space, _, _ = disjoint_union(space, nxt)
    pairs = []
    for _ in range(rng.randint(1, 3)):
        degs = sorted({c.dim for c in space.cells.values() if c.dim < space.dim})
        q = rng.choice(degs)
        a, b = rng.sample(space.cell_ids(q), 2)
        pairs.append((Simplex(a, identity(q)), Simplex(b, identity(q))))
    return quotient(space, congruence_from_pairs(space, pairs)).space


def save_corpus(corpus: Corpus, directory) -> None:
    """One .sset file per member plus a manifest naming them all."""
    from pathlib import Path

    from .textio import format_sset

    root = Path(directory)
    root.mkdir(parents=True, exist_ok=True)
    lines = ["# corpus manifest", f"seed {corpus.seed}"]
    for entry in corpus:
        fname = f"{entry.name}.sset"
        (root / fname).write_text(format_sset(entry.space))
        flag = "regular" if entry.regular else "singular"
        lines.append(f"member {entry.name} {entry.provenance} {flag} {fname}")
    (root / "manifest.txt").write_text("\n".join(lines) + "\n")


def load_corpus(directory) -> Corpus:
    from pathlib import Path

    from .textio import parse_sset

    root = Path(directory)
    seed = 0
    entries: list[CorpusEntry] = []
    for raw in (root / "manifest.txt").read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "seed":
            seed = int(tokens[1])
        elif tokens[0] == "member":
            _, name, provenance, flag, fname = tokens
            space = parse_sset((root / fname).read_text())
            entries.append(CorpusEntry(name, space, provenance, flag == "regular"))
        else:
            raise ValueError(f"unknown manifest line: {raw!r}")
    return Corpus(seed, entries)


def gen_corpus(seed: int = 0, random_count: int = 12, sd_cap: int = 200) -> Corpus:
    entries = [
        CorpusEntry(name, space, "builtin", is_regular(space))
        for name, space in _builtins()
    ]
    for i in range(random_count):
        rng = random.Random(seed * 1000003 + i)
        space = _random_quotient(rng)
        entries.append(
            CorpusEntry(f"random-{i}", space, "random-quotient", is_regular(space))
        )
    for entry in list(entries):
        if sd_size(entry.space) > sd_cap:
            continue
        image = sd(entry.space)
        if not is_regular(image):
            raise RuntimeError(f"subdivision of {entry.name} is not regular")
        entries.append(CorpusEntry(f"sd-{entry.name}", image, "sd-image", True))
    return Corpus(seed, entries)
