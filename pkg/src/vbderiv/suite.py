"""Fixture library, structural validation and the seeded property battery."""

from __future__ import annotations

import math
import random
from importlib import resources
from pathlib import Path

from .algebroid import Connection, FrameAlgebroid, check_anchor_compat, check_flatness, check_jacobi
from .config import SuiteConfig
from .defcomplex import DefCochain, differential, is_algebroid_derivation
from .im import (
    check_decomposition,
    check_im_triple,
    compose_linear,
    decompose_linear,
    decomposition_differential,
    im_section_pde_check,
    internal_derivation,
    round_trip_verdict,
    theorem_equivalence_suite,
)
from .report import Report, failed, passed
from .sampling import (
    equivalence_candidates,
    perturb_triple,
    random_cochain,
    random_decomposition,
    random_derivation,
    random_im_triple,
    random_linear_cochain,
    random_section,
)
from .specfile import ResolutionError, SpecDocument
from .vb import (
    SplitVB,
    build_trivial_core,
    classify_cochain_linearity,
    corollary_c_check,
    euler_derivation,
    fat_cochain_on_total,
    inspect_linearity,
    validate_vb_axioms,
)


def fixture_dir() -> Path:
    return Path(str(resources.files("vbderiv") / "fixtures"))


def fixture_names(include_broken: bool = False) -> list:
    names = sorted(p.stem for p in fixture_dir().glob("*.alg"))
    return [n for n in names if include_broken or not n.startswith("broken_")]


def resolve_path(name: str) -> Path:
    """A path on disk, or a shipped fixture matched by basename."""
    p = Path(name)
    if p.exists():
        return p
    stem = p.name[:-4] if p.name.endswith(".alg") else p.name
    shipped = fixture_dir() / f"{stem}.alg"
    if shipped.exists():
        return shipped
    raise FileNotFoundError(name)


def load_fixture(name: str) -> SpecDocument:
    return SpecDocument.from_file(resolve_path(name))


def _prefixed(prefix: str, reports) -> list:
    return [Report(f"{prefix}/{r.check}", r.status, r.witness) for r in reports]


# ---------------------------------------------------------------------------
# structural validation
# ---------------------------------------------------------------------------


def validate_document(doc: SpecDocument) -> list:
    reports = []
    for name in doc.names():
        obj = doc.get(name)
        if isinstance(obj, FrameAlgebroid):
            reports += _prefixed(name, [check_jacobi(obj), check_anchor_compat(obj)])
        elif isinstance(obj, Connection):
            reports += _prefixed(name, [check_flatness(obj.algebroid, obj)])
        elif isinstance(obj, SplitVB):
            reports += _prefixed(name, [validate_vb_axioms(obj), check_jacobi(obj.total),
                                        check_anchor_compat(obj.total)])
    return reports


def check_im_target(doc: SpecDocument, name: str) -> list:
    block = doc.block(name)
    if block.kind == "triple":
        W = doc.get(block.ref, ("vb",), block.line, 1)
        return check_im_triple(W, doc.get(name))
    if block.kind == "imsection":
        nabla = doc.imsection_connection(name)
        return im_section_pde_check(nabla.algebroid, nabla, doc.get(name))
    raise ResolutionError(f"{name!r} has kind {block.kind}, expected triple or imsection", block.line, 1)


# ---------------------------------------------------------------------------
# property battery
# ---------------------------------------------------------------------------


def _rng(seed: int, *labels) -> random.Random:
    return random.Random(":".join([str(seed)] + [str(s) for s in labels]))


def _outcome(check: str, witness: str) -> Report:
    return failed(check, witness) if witness else passed(check)


def d_squared_check(rng: random.Random, A: FrameAlgebroid, count: int, limits) -> Report:
    """d(d(c)) = 0 on random cochains of degree 0, 1, 2."""
    for i in range(count):
        c = random_cochain(rng, A, i % 3, max_degree=3)
        dd = differential(differential(c, limits), limits)
        if not dd.is_zero():
            return failed("d-squared", f"sample {i}: {dd.describe().splitlines()[0]}")
    return passed("d-squared")


def cocycle_candidates(rng: random.Random, A: FrameAlgebroid, count: int, extra=()) -> list:
    """Internal derivations of frame elements, then random and perturbed degree-1 cochains."""
    out = [differential(DefCochain.from_section(A, A.basis(i))) for i in range(A.rank)]
    out += list(extra)
    while len(out) < count:
        mode = len(out) % 3
        internal = differential(DefCochain.from_section(A, random_section(rng, A, 1, 0.3)))
        if mode == 0:
            out.append(internal)
        elif mode == 1:
            out.append(DefCochain.from_derivation(A, random_derivation(rng, A.rank, A.chart, 1, 0.5)))
        else:
            out.append(internal + random_cochain(rng, A, 1, 1, 0.8))
    return out[:max(count, A.rank + len(extra))]


def cocycle_check(candidates) -> Report:
    for i, c in enumerate(candidates):
        der = is_algebroid_derivation(c).passed
        closed = differential(c).is_zero()
        if der != closed:
            return failed("cocycle", f"candidate {i}: derivation={der} closed={closed}")
    return passed("cocycle")


def euler_eigen_check(W: SplitVB) -> Report:
    """Euler derivation is 0 on linear generators and -1 on core generators."""
    E = euler_derivation(W)
    T = W.total
    for i in range(T.rank):
        got = E.apply(T.basis(i))
        want = T.basis(i).scale(-1) if W.is_core_index(i) else T.zero_section()
        if got != want:
            return failed("euler-eigen", f"{T.frame[i]}: {T.format_section(got)}")
    return passed("euler-eigen")


def linearity_samples(rng: random.Random, W: SplitVB, count: int) -> list:
    T = W.total
    out = []
    for i in range(count):
        degree = i % 3
        mode = (i // 3) % 3
        c = random_linear_cochain(rng, W, degree)
        if mode == 1:
            c = random_cochain(rng, T, degree, 2, 0.6)
        elif mode == 2 and T.rank:
            # one stray monomial in one value
            bump = random_section(rng, T, 2, 0.7)
            values = dict(c.values)
            key = tuple(sorted(rng.sample(range(T.rank), degree))) if degree <= T.rank else None
            if key is not None:
                values[key] = c.value(key) + bump
                c = DefCochain(T, degree, values, c.symbols)
        out.append(c)
    return out


def linearity_check(W: SplitVB, samples) -> Report:
    for i, c in enumerate(samples):
        a = classify_cochain_linearity(W, c).linear
        b = inspect_linearity(W, c).linear
        if a != b:
            return failed("linearity", f"sample {i}: euler={a} inspection={b}")
    return passed("linearity")


def internal_coboundary_check(W: SplitVB) -> Report:
    F = W.fat
    for i in range(F.rank):
        s = F.basis(i)
        if internal_derivation(W, s) != differential(fat_cochain_on_total(W, DefCochain.from_section(F, s))):
            return failed("internal-coboundary", F.frame[i])
    return passed("internal-coboundary")


def shape_clause_check(rng: random.Random, W: SplitVB, samples: int = 3) -> Report:
    """Shape clauses on differentials of fat 0-cochains and linear 1-cochains."""
    F = W.fat
    cochains = [fat_cochain_on_total(W, DefCochain.from_section(F, F.basis(i))) for i in range(F.rank)]
    cochains += [fat_cochain_on_total(W, DefCochain.from_section(F, random_section(rng, F, 1, 0.3)))
                 for _ in range(samples)]
    cochains += [random_linear_cochain(rng, W, 1) for _ in range(samples)]
    for j, c in enumerate(cochains):
        for r in corollary_c_check(W, differential(c)):
            if not r.passed:
                return failed("shape-clauses", f"cochain {j}: {r.check}: {r.witness}")
    return passed("shape-clauses")


def round_trip_candidates(rng: random.Random, W: SplitVB, per_side: int, max_attempts: int = 10):
    """Internal plus Euler triples, and perturbations of them that fail the triple conditions."""
    good = [random_im_triple(rng, W) for _ in range(per_side)]
    bad = []
    for _ in range(max_attempts * per_side):
        if len(bad) >= per_side:
            break
        t = perturb_triple(rng, W, rng.choice(good))
        if not all(r.passed for r in check_im_triple(W, t)):
            bad.append(t)
    return good, bad


def round_trip_check(W: SplitVB, good, bad, per_side: int) -> Report:
    npass = nfail = 0
    for i, t in enumerate(good + bad):
        ok = all(r.passed for r in check_im_triple(W, t))
        recon = round_trip_verdict(W, t).passed
        if ok != recon:
            return failed("round-trip", f"candidate {i}: conditions={ok} reconstruction={recon}")
        npass += ok
        nfail += not ok
    if npass < per_side or nfail < per_side:
        return failed("round-trip", f"only {npass} passing and {nfail} failing candidates")
    return passed("round-trip")


def decomposition_check(rng: random.Random, W: SplitVB, count: int) -> Report:
    for i in range(count):
        degree = i % 3
        c = compose_linear(W, random_decomposition(rng, W, degree))
        dec = decompose_linear(W, c)
        where = f"sample {i} (degree {degree})"
        if compose_linear(W, dec) != c:
            return failed("decomposition", f"{where}: compose(decompose(c)) != c")
        if decompose_linear(W, compose_linear(W, dec)) != dec:
            return failed("decomposition", f"{where}: decompose(compose(dec)) != dec")
        for r in check_decomposition(W, dec):
            if not r.passed:
                return failed("decomposition", f"{where}: {r.check}: {r.witness}")
        if decompose_linear(W, differential(c)) != decomposition_differential(W, dec):
            return failed("decomposition", f"{where}: transported differential differs")
    return passed("decomposition")


def flat_jacobi_check(nabla: Connection) -> Report:
    """Flatness agrees with Jacobi of the unchecked action presentation."""
    A = nabla.algebroid
    flat = check_flatness(A, nabla).passed
    jac = check_jacobi(build_trivial_core(A, nabla, check=False).total).passed
    return _outcome("flat-jacobi", "" if flat == jac else f"flat={flat} jacobi={jac}")


def suite_fixture(name: str, config: SuiteConfig, d2_count: int) -> list:
    doc = load_fixture(name)
    seed = config.seed
    reports = _prefixed(name, validate_document(doc))
    for block in doc.names():
        obj = doc.get(block)
        prefix = f"{name}/{block}"
        rng = _rng(seed, name, block)
        if isinstance(obj, FrameAlgebroid):
            rs = [d_squared_check(rng, obj, d2_count, config.limits),
                  cocycle_check(cocycle_candidates(rng, obj, config.cocycle_candidates))]
        elif isinstance(obj, Connection):
            rs = [flat_jacobi_check(obj)]
            if check_flatness(obj.algebroid, obj).passed:
                cands = equivalence_candidates(rng, obj.algebroid, obj, config.equivalence_candidates)
                rs.append(theorem_equivalence_suite(obj.algebroid, obj, cands))
        elif isinstance(obj, SplitVB):
            T = obj.total
            extra = [DefCochain.from_derivation(T, euler_derivation(obj))]
            good, bad = round_trip_candidates(rng, obj, config.round_trip_candidates)
            rs = [
                d_squared_check(rng, T, d2_count, config.limits),
                cocycle_check(cocycle_candidates(rng, T, config.cocycle_candidates, extra)),
                euler_eigen_check(obj),
                linearity_check(obj, linearity_samples(rng, obj, config.linearity_samples)),
                internal_coboundary_check(obj),
                shape_clause_check(rng, obj),
                round_trip_check(obj, good, bad, config.round_trip_candidates),
                decomposition_check(rng, obj, 12),
            ]
        else:
            continue
        reports += _prefixed(prefix, rs)
    return reports


def count_algebroids(names) -> int:
    total = 0
    for name in names:
        doc = load_fixture(name)
        total += len(doc.names("algebroid")) + len(doc.names("vb"))
    return total


def run_suite(config: SuiteConfig) -> list:
    names = list(config.fixtures) or fixture_names()
    for n in names:
        resolve_path(n)
    d2_count = max(1, math.ceil(config.random_cochains / max(1, count_algebroids(names))))
    reports = []
    for name in names:
        reports += suite_fixture(name, config, d2_count)
    return reports
