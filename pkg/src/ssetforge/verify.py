"""Verification campaigns: the main comparison, both counterexamples, the
supporting lemma battery, and the cylinder suite.

Each campaign returns a Report, a list of named pass/fail cases with
key-value details.  Reports render as a stable text tree so that two
runs under the same seed diff cleanly; timings are carried but left out
of the rendering unless asked for.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .colimits import (
    collapse_subcomplex,
    disjoint_union,
    congruence_from_pairs,
    is_regular,
    kernel_congruence,
    product,
    pushout,
    quotient,
)
from .corpus import Corpus, sd_size
from .cylinders import (
    cylinder_reduction,
    dcr,
    desingularized_comparison,
    embedded_sibling_pairs,
    identifies_embedded_siblings,
    injective_in_degree,
    pushout_comparison,
    representing_sharp,
    surjective_in_degree,
)
from .desingularize import (
    Certificate,
    desingularize,
    oracle_desingularize,
    zipper_desingularize,
)
from .operators import Operator, all_faces, identity
from .posets import (
    FinPoset,
    MonotoneMap,
    all_posets,
    chain_poset,
    compose_monotone,
    cylinder_end,
    face_poset,
    full_subposet,
    is_cosieve,
    is_dwyer,
    make_vertex,
    nerve,
    nerve_map,
    poset_pushout,
    product_poset,
    psi,
    sharp_map,
    singleton_poset,
)
from .simplicial import (
    Simplex,
    SimplicialSet,
    boundary,
    generate,
    is_isomorphic,
    standard_simplex,
)
from .subdivision import b_nat, sd, t_nat


# -- reports -------------------------------------------------------------------


@dataclass
class CaseResult:
    name: str
    outcome: str  # pass | fail | skip
    details: tuple[tuple[str, str], ...] = ()
    seconds: float = 0.0


@dataclass
class Report:
    title: str
    cases: list[CaseResult] = field(default_factory=list)

    def add(self, name: str, ok: bool, skip: bool = False, **details) -> None:
        outcome = "skip" if skip else ("pass" if ok else "fail")
        pairs = tuple((k, str(v)) for k, v in sorted(details.items()))
        self.cases.append(CaseResult(name, outcome, pairs))

    def count(self, outcome: str) -> int:
        return sum(1 for c in self.cases if c.outcome == outcome)

    @property
    def ok(self) -> bool:
        return self.count("fail") == 0


def format_report(report: Report, timings: bool = False) -> str:
    lines = [f"report {report.title}"]
    for c in sorted(report.cases, key=lambda c: c.name):
        lines.append(f"  {c.name}: {c.outcome}")
        for k, v in c.details:
            lines.append(f"    {k} = {v}")
        if timings and c.seconds:
            lines.append(f"    seconds = {c.seconds:.2f}")
    lines.append(
        f"  summary: {report.count('pass')} pass,"
        f" {report.count('fail')} fail, {report.count('skip')} skip"
    )
    return "\n".join(lines) + "\n"


def merge_reports(title: str, reports: list[Report]) -> Report:
    merged = Report(title)
    for r in reports:
        merged.cases.extend(r.cases)
    return merged


def _timed(report: Report, name: str, ok: bool, started: float, **details) -> None:
    report.add(name, ok, **details)
    report.cases[-1].seconds = time.time() - started


# -- the main comparison --------------------------------------------------------


def verify_main_theorem(corpus: Corpus) -> Report:
    """For every regular member the desingularized subdivision maps
    isomorphically onto the nerve of the cell poset."""
    report = Report("main-theorem")
    for entry in corpus:
        if not entry.regular:
            continue
        started = time.time()
        x = entry.space
        sds = sd(x)
        res = desingularize(sds)
        if res.certificate is Certificate.UNCERTIFIED:
            _timed(report, f"main/{entry.name}", False, started,
                   certificate=res.certificate.value, cells=len(sds.cells))
            continue
        t = t_nat(x, desing=res, sd_space=sds)
        _timed(
            report, f"main/{entry.name}", t.is_isomorphism(), started,
            certificate=res.certificate.value,
            sd_cells=len(sds.cells),
            barratt_cells=len(t.target.cells),
        )
    return report


def verify_second_subdivision(corpus: Corpus, sd_cap: int = 200) -> Report:
    """For arbitrary members the same comparison holds one subdivision up:
    the double subdivision desingularizes onto the nerve of the cell poset
    of the single subdivision."""
    report = Report("second-subdivision")
    by_name = {e.name: e for e in corpus}
    for entry in corpus:
        if entry.provenance == "sd-image" or sd_size(entry.space) > sd_cap:
            continue
        started = time.time()
        image = by_name.get(f"sd-{entry.name}")
        y = image.space if image is not None else sd(entry.space)
        sds = sd(y)
        res = desingularize(sds)
        if res.certificate is Certificate.UNCERTIFIED:
            _timed(report, f"corollary/{entry.name}", False, started,
                   certificate=res.certificate.value)
            continue
        t = t_nat(y, desing=res, sd_space=sds)
        _timed(
            report, f"corollary/{entry.name}", t.is_isomorphism(), started,
            regular_input=entry.regular,
            sd2_cells=len(sds.cells),
        )
    return report


# -- the two counterexamples ----------------------------------------------------


def _wedge_to_chain() -> MonotoneMap:
    p = FinPoset("abc", [("a", "b"), ("a", "c")])
    r = FinPoset(["a2", "b2", "c2"], [("a2", "b2"), ("b2", "c2")])
    return MonotoneMap(p, r, {"a": "a2", "b": "b2", "c": "c2"})


def run_counterexamples() -> Report:
    report = Report("counterexamples")

    bundle = cylinder_reduction(_wedge_to_chain())
    report.add(
        "nonsurjective-reduction/dimensions",
        bundle.space.dim == 2 and bundle.reduced.dim == 3,
        topological_dim=bundle.space.dim,
        reduced_dim=bundle.reduced.dim,
    )
    report.add(
        "nonsurjective-reduction/degree-3",
        not surjective_in_degree(bundle.reduction, 3),
    )

    interval = standard_simplex(1)
    phi = sharp_map(collapse_subcomplex(interval, [0, 1]).projection)
    b91 = cylinder_reduction(phi)
    g, res = dcr(phi, bundle=b91)
    siblings = embedded_sibling_pairs(res.quotient, 2)
    report.add(
        "noninjective-dcr/sibling-pair",
        len(siblings) == 1,
        pairs=len(siblings),
        certificate=res.certificate.value,
    )
    report.add(
        "noninjective-dcr/degrees",
        injective_in_degree(g, 0)
        and not injective_in_degree(g, 1)
        and not injective_in_degree(g, 2),
        degree0=injective_in_degree(g, 0),
        degree1=injective_in_degree(g, 1),
        degree2=injective_in_degree(g, 2),
    )
    return report


# -- cylinders of representing maps ---------------------------------------------


def verify_dcr_suite(
    corpus: Corpus, max_cells: int = 15, all_simplex_cells: int = 8
) -> Report:
    """For each simplex of each regular member, the cylinder of the sharp of
    its corestricted representing map reduces by an isomorphism.

    Every cell is tested on members up to max_cells; degenerate simplices
    (through the member's dimension) join in on members small enough that
    the deep cylinders stay cheap."""
    report = Report("dcr-suite")
    pairs = 0
    for entry in corpus:
        if not entry.regular or len(entry.space.cells) > max_cells:
            continue
        x = entry.space
        degenerate_too = len(x.cells) <= all_simplex_cells
        for q in range(x.dim + 1):
            for y in x.simplices(q):
                if y.is_degenerate and not degenerate_too:
                    continue
                started = time.time()
                phi = representing_sharp(x, y)
                bundle = cylinder_reduction(phi)
                g, res = dcr(phi, bundle=bundle)
                criterion = all(
                    injective_in_degree(g, p) == identifies_embedded_siblings(res.eta, p)
                    for p in range(1, bundle.space.dim + 1)
                )
                tag = f"cell-{y.cell}"
                if y.is_degenerate:
                    tag += "-s" + "-".join(str(r) for r in y.degen.repeats())
                _timed(
                    report, f"dcr/{entry.name}/{tag}",
                    g.is_isomorphism() and criterion, started,
                    certificate=res.certificate.value,
                    sibling_criterion=criterion,
                )
                pairs += 1
    report.add("dcr/pair-count", pairs >= 100, pairs=pairs)
    return report


# -- the lemma battery -----------------------------------------------------------


def _covering_face_pairs(n: int) -> list[tuple[Operator, Operator]]:
    faces = list(all_faces(n))
    out = []
    full = set(range(n + 1))
    for mu, nu in itertools.combinations(faces, 2):
        a, b = set(mu.values), set(nu.values)
        if a | b == full and not a <= b and not b <= a:
            out.append((mu, nu))
    return out


def _check_face_cancellation(x: SimplicialSet) -> bool:
    """Distinct faces that keep the last vertex have distinct carriers."""
    for cid, cell in x.cells.items():
        n = cell.dim
        seen: dict[int, Operator] = {}
        for mu in all_faces(n):
            if n not in mu.values:
                continue
            carrier = x.eval(x.simplex(cid), mu).cell
            if carrier in seen:
                return False
            seen[carrier] = mu
        # mixed pairs: one side missing the last vertex
        for mu in all_faces(n):
            if n in mu.values:
                continue
            carrier = x.eval(x.simplex(cid), mu).cell
            if carrier in seen and seen[carrier] != mu:
                return False
    return True


def _check_deflation(x: SimplicialSet, degenerate_cap: int = 40) -> tuple[bool, int]:
    """Covering face pairs with equal carriers force deflated simplices."""
    checked = 0
    for cid, cell in x.cells.items():
        for mu, nu in _covering_face_pairs(cell.dim):
            checked += 1
            if x.eval(x.simplex(cid), mu).cell == x.eval(x.simplex(cid), nu).cell:
                return False, checked  # a non-degenerate simplex cannot deflate
    if len(x.cells) <= degenerate_cap:
        for q in range(1, x.dim + 2):
            for y in x.simplices(q):
                if not y.is_degenerate:
                    continue
                for mu, nu in _covering_face_pairs(q):
                    checked += 1
                    a, b = x.eval(y, mu), x.eval(y, nu)
                    if a.cell == b.cell and y.cell != a.cell:
                        return False, checked
    return True, checked


def _small_quotients() -> list[SimplicialSet]:
    """A deterministic family of at most-ten-cell quotients."""
    bases = [
        standard_simplex(1),
        standard_simplex(2),
        boundary(2),
        disjoint_union(standard_simplex(1), standard_simplex(1))[0],
        disjoint_union(standard_simplex(1), standard_simplex(2))[0],
    ]
    out: list[SimplicialSet] = []
    for base in bases:
        merges = []
        for q in (0, 1):
            cells = base.cell_ids(q)
            merges += [[(a, b)] for a, b in itertools.combinations(cells, 2)]
        vs = base.cell_ids(0)
        merges += [
            [p, r]
            for p, r in itertools.combinations(itertools.combinations(vs, 2), 2)
        ]
        for pairing in merges:
            pairs = [
                (
                    Simplex(a, identity(base.cells[a].dim)),
                    Simplex(b, identity(base.cells[b].dim)),
                )
                for a, b in pairing
            ]
            space = quotient(base, congruence_from_pairs(base, pairs)).space
            if len(space.cells) <= 10:
                out.append(space)
    return out


def _dwyer_triples() -> list[tuple[str, MonotoneMap, MonotoneMap, MonotoneMap]]:
    """Factorized last-face embeddings with assorted maps out of the source."""
    triples = []
    for n in (1, 2):
        p = face_poset(n - 1)
        w = product_poset(p, chain_poset(1))
        i0 = cylinder_end(p, w, 0)
        k = compose_monotone(i0, psi(n))
        targets = [
            MonotoneMap(p, p, {e: e for e in p.elements}),
            MonotoneMap(p, singleton_poset("z"), {e: "z" for e in p.elements}),
            MonotoneMap(
                p,
                chain_poset(1),
                {e: (0 if len(e.values) == 1 else 1) for e in p.elements},
            ),
        ]
        for j, phi in enumerate(targets):
            triples.append((f"last-face-{n}-{j}", i0, k, phi))
    return triples


def verify_lemma_suite(corpus: Corpus, seed: int = 0) -> Report:
    report = Report("lemma-suite")
    rng = random.Random(seed)
    members = list(corpus)
    regulars = [e for e in members if e.regular]

    # subdivision lands in the regular class
    for entry in members:
        if sd_size(entry.space) > 200:
            continue
        image = sd(entry.space)
        report.add(f"sd-regular/{entry.name}", is_regular(image))

    # subcomplexes of regular members stay regular
    for i in range(50):
        entry = rng.choice(regulars)
        cells = sorted(entry.space.cells)
        seeds = rng.sample(cells, rng.randint(1, min(3, len(cells))))
        sub, _ = generate(entry.space, seeds)
        report.add(f"subcomplex-regular/{i}", is_regular(sub), member=entry.name)

    # binary products of small regular members stay regular
    small = [e for e in regulars if len(e.space.cells) <= 12]
    for i in range(15):
        a, b = rng.choice(small), rng.choice(small)
        pr = product(a.space, b.space).space
        report.add(
            f"product-regular/{i}", is_regular(pr), left=a.name, right=b.name
        )

    # the nerve comparison is an isomorphism exactly on non-singular members
    for entry in members:
        if len(entry.space.cells) > 80:
            continue
        iso = b_nat(entry.space).is_isomorphism()
        report.add(
            f"bnat-iso-iff-nonsingular/{entry.name}",
            iso == entry.space.is_nonsingular(),
            iso=iso,
        )

    # subdivision vertices match cells
    for entry in members:
        if sd_size(entry.space) > 200:
            continue
        image = sd(entry.space)
        report.add(
            f"sd-vertices/{entry.name}",
            len(image.cell_ids(0)) == len(entry.space.cells),
        )

    # face cancellation and deflation on the regular population
    for entry in regulars:
        report.add(f"face-cancellation/{entry.name}", _check_face_cancellation(entry.space))
        ok, checked = _check_deflation(entry.space)
        report.add(f"deflation/{entry.name}", ok, pairs_checked=checked)

    # cones desingularize to the reduced cone, exhaustively in small posets
    for i, p in enumerate(all_posets(5)):
        apex = singleton_poset("apex")
        phi = MonotoneMap(p, apex, {e: "apex" for e in p.elements})
        bundle = cylinder_reduction(phi)
        g, res = dcr(phi, bundle=bundle)
        report.add(
            f"cone/{i}",
            g.is_isomorphism(),
            elements=len(p),
            certificate=res.certificate.value,
        )

    # zipper agrees with the oracle wherever both apply
    agreed = 0
    for i, space in enumerate(_small_quotients()):
        z = zipper_desingularize(space)
        if z.certificate is not Certificate.ZIPPER:
            report.add(f"oracle-agreement/{i}", True, skip=True, cells=len(space.cells))
            continue
        o = oracle_desingularize(space, bound=10)
        same = (
            kernel_congruence(z.eta).canonical()
            == kernel_congruence(o.eta).canonical()
        )
        report.add(f"oracle-agreement/{i}", same, cells=len(space.cells))
        agreed += 1
    report.add("oracle-agreement/count", agreed >= 50, certified_cases=agreed)

    # prisms of nerves against nerves of cylinders
    for name, p in [
        ("chain-2", chain_poset(2)),
        ("wedge", FinPoset("abc", [("a", "b"), ("a", "c")])),
        ("faces-1", face_poset(1)),
    ]:
        prism = product(nerve(p), standard_simplex(1)).space
        report.add(
            f"prism-nerve/{name}",
            is_isomorphic(prism, nerve(product_poset(p, chain_poset(1)))),
        )

    # last-face embeddings really are Dwyer maps, and their pushouts are posets
    for name, i0, k, phi in _dwyer_triples():
        witness = is_dwyer(k)
        ok = witness is not None
        if ok:
            try:
                poset_pushout(k, phi)
                poset_pushout(i0, phi, require_dwyer=False)
            except ValueError:
                ok = False
        report.add(f"dwyer-pushout-poset/{name}", ok)

    # extending a pushout from the cosieve to the whole target is cocartesian
    for name, i0, k, phi in _dwyer_triples():
        report.add(f"cosieve-extension/{name}", _cosieve_extension_square(k, phi))

    # if the cosieve-level comparison is an isomorphism, so is the full one
    for name, i0, k, phi in _dwyer_triples():
        _, _, comp_w = pushout_comparison(i0, phi)
        gw, _ = desingularized_comparison(comp_w)
        _, _, comp_q = pushout_comparison(k, phi)
        gq, _ = desingularized_comparison(comp_q)
        antecedent = gw.is_isomorphism()
        consequent = gq.is_isomorphism()
        report.add(
            f"dwyer-implication/{name}",
            (not antecedent) or consequent,
            antecedent=antecedent,
            consequent=consequent,
        )

    # the cosieve covering the last face misses exactly the last vertex
    for n in (1, 2, 3):
        ps = psi(n)
        image = {ps(e) for e in ps.source.elements}
        missing = set(ps.target.elements) - image
        report.add(
            f"psi-image/{n}",
            missing == {make_vertex(n, n)} and is_cosieve(ps.target, image),
        )
    return report


def _cosieve_extension_square(k: MonotoneMap, phi: MonotoneMap) -> bool:
    """Pushing out along the rest of the target reproduces the full pushout."""
    witness = is_dwyer(k)
    if witness is None:
        return False
    p, q = k.source, k.target
    w = full_subposet(q, witness.cosieve)
    into_w = MonotoneMap(p, w, {e: k(e) for e in p.elements})
    j = MonotoneMap(w, q, {e: e for e in w.elements})
    small = poset_pushout(into_w, phi, require_dwyer=False)
    big = poset_pushout(k, phi)
    nw, nq = nerve(w), nerve(q)
    nsmall, nbig = nerve(small.poset), nerve(big.poset)
    po = pushout(
        nerve_map(j, nw, nq),
        nerve_map(small.leg_ambient, nw, nsmall),
    )
    glue = MonotoneMap(
        small.poset,
        big.poset,
        {e: (big.leg_ambient(e[1]) if e[0] == "q" else big.leg_other(e[1]))
         for e in small.poset.elements},
    )
    mediator = po.mediator(
        nerve_map(big.leg_ambient, nq, nbig), nerve_map(glue, nsmall, nbig)
    )
    return mediator.is_isomorphism()
