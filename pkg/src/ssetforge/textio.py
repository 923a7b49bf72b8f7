"""Line-oriented text formats for the four kinds of artifact we exchange.

A simplicial set is a list of `cell` lines; a face entry is written as
`<target>{j,...}` where the braces hold the repeat set of the attached
degeneracy, which together with the declared dimensions pins the
operator down.  Maps inline their source and target between
`begin`/`end` fences followed by `send` lines.  Posets list `el` and
`lt` lines; monotone maps mirror the simplicial layout.  `#` comments
and blank lines are ignored everywhere.
"""

from __future__ import annotations

import re

from .operators import Operator, degeneracy_from_repeats
from .posets import FinPoset, MonotoneMap
from .simplicial import Cell, Simplex, SimplicialMap, SimplicialSet

_FACE_TOKEN = re.compile(r"(\d+)\{([0-9,]*)\}$")
_PLAIN = re.compile(r"[A-Za-z0-9_.:+'-]+$")


def _rows(text: str) -> list[list[str]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def _simplex_token(cell: int, degen: Operator) -> str:
    return f"{cell}{{{','.join(str(j) for j in degen.repeats())}}}"


def _parse_simplex_token(tok: str) -> tuple[int, tuple[int, ...]]:
    m = _FACE_TOKEN.match(tok)
    if not m:
        raise ValueError(f"bad simplex token {tok!r}")
    reps = tuple(int(x) for x in m.group(2).split(",")) if m.group(2) else ()
    return int(m.group(1)), reps


# -- simplicial sets ----------------------------------------------------------


def format_sset(space: SimplicialSet) -> str:
    lines = []
    for cid in sorted(space.cells):
        cell = space.cells[cid]
        toks = [_simplex_token(t, d) for t, d in cell.faces]
        lines.append(" ".join(["cell", str(cid), str(cell.dim), *toks]))
    return "\n".join(lines) + "\n"


def parse_sset(text: str) -> SimplicialSet:
    cells: dict[int, Cell] = {}
    for row in _rows(text):
        if row[0] != "cell":
            raise ValueError(f"unexpected line {' '.join(row)!r}")
        cid, dim = int(row[1]), int(row[2])
        toks = row[3:]
        if len(toks) != (dim + 1 if dim else 0):
            raise ValueError(f"cell {cid} needs {dim + 1} faces, got {len(toks)}")
        faces = []
        for tok in toks:
            target, reps = _parse_simplex_token(tok)
            faces.append((target, degeneracy_from_repeats(reps, dim - 1)))
        if cid in cells:
            raise ValueError(f"cell {cid} declared twice")
        cells[cid] = Cell(dim, tuple(faces))
    return SimplicialSet(cells)


# -- simplicial maps ----------------------------------------------------------


def _sections(rows: list[list[str]]) -> tuple[dict[str, list[list[str]]], list[list[str]]]:
    blocks: dict[str, list[list[str]]] = {}
    loose: list[list[str]] = []
    current: str | None = None
    for row in rows:
        if row[0] == "begin":
            if current is not None:
                raise ValueError("nested begin")
            current = row[1]
            blocks[current] = []
        elif row[0] == "end":
            if current is None:
                raise ValueError("end without begin")
            current = None
        elif current is not None:
            blocks[current].append(row)
        else:
            loose.append(row)
    if current is not None:
        raise ValueError(f"unterminated section {current!r}")
    return blocks, loose


def _unrows(rows: list[list[str]]) -> str:
    return "\n".join(" ".join(r) for r in rows) + "\n"


def format_smap(f: SimplicialMap) -> str:
    out = ["begin source", format_sset(f.source).rstrip(), "end"]
    out += ["begin target", format_sset(f.target).rstrip(), "end"]
    for cid in sorted(f.assignment):
        s = f.assignment[cid]
        out.append(f"send {cid} {_simplex_token(s.cell, s.degen)}")
    return "\n".join(out) + "\n"


def parse_smap(text: str) -> SimplicialMap:
    blocks, loose = _sections(_rows(text))
    if "source" not in blocks or "target" not in blocks:
        raise ValueError("map needs source and target sections")
    source = parse_sset(_unrows(blocks["source"]))
    target = parse_sset(_unrows(blocks["target"]))
    asg: dict[int, Simplex] = {}
    for row in loose:
        if row[0] != "send" or len(row) != 3:
            raise ValueError(f"unexpected line {' '.join(row)!r}")
        cid = int(row[1])
        tcell, reps = _parse_simplex_token(row[2])
        degree = source.cells[cid].dim
        asg[cid] = Simplex(tcell, degeneracy_from_repeats(reps, degree))
    return SimplicialMap(source, target, asg)


# -- posets and monotone maps -------------------------------------------------


def _element_tokens(p: FinPoset) -> dict:
    names = [str(e) for e in p.elements]
    if len(set(names)) == len(names) and all(_PLAIN.match(n) for n in names):
        return dict(zip(p.elements, names))
    return {e: f"e{i}" for i, e in enumerate(p.elements)}


def format_poset(p: FinPoset) -> str:
    toks = _element_tokens(p)
    lines = [f"el {toks[e]}" for e in p.elements]
    lines += sorted(f"lt {toks[a]} {toks[b]}" for a, b in p.strict_pairs())
    return "\n".join(lines) + "\n"


def parse_poset(text: str) -> FinPoset:
    elements: list[str] = []
    pairs: list[tuple[str, str]] = []
    for row in _rows(text):
        if row[0] == "el" and len(row) == 2:
            elements.append(row[1])
        elif row[0] == "lt" and len(row) == 3:
            pairs.append((row[1], row[2]))
        else:
            raise ValueError(f"unexpected line {' '.join(row)!r}")
    return FinPoset(elements, pairs, close=True)


def format_pmap(phi: MonotoneMap) -> str:
    stoks = _element_tokens(phi.source)
    ttoks = _element_tokens(phi.target)
    out = ["begin source", format_poset(phi.source).rstrip(), "end"]
    out += ["begin target", format_poset(phi.target).rstrip(), "end"]
    out += [f"send {stoks[e]} {ttoks[phi(e)]}" for e in phi.source.elements]
    return "\n".join(out) + "\n"


def parse_pmap(text: str) -> MonotoneMap:
    blocks, loose = _sections(_rows(text))
    if "source" not in blocks or "target" not in blocks:
        raise ValueError("map needs source and target sections")
    source = parse_poset(_unrows(blocks["source"]))
    target = parse_poset(_unrows(blocks["target"]))
    mapping = {}
    for row in loose:
        if row[0] != "send" or len(row) != 3:
            raise ValueError(f"unexpected line {' '.join(row)!r}")
        mapping[row[1]] = row[2]
    return MonotoneMap(source, target, mapping)
