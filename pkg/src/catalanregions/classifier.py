"""Full census of dominant regions: good/bad maximal antichains, propagation
below good maximal antichains, LP resolution of the survivors, boundedness,
the bijection criterion and the generalized Catalan comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .feasibility import bounded, int_c, region_status, witness_sign_type
from .rootposet import RootPoset
from .rootsystem import build


@dataclass
class MaximalAntichainVerdict:
    antichain: tuple
    good: bool
    int_c_witness: tuple | None = None
    degenerate: bool = False


@dataclass
class GeneralizedCatalan:
    exponents: list
    coxeter_number: int
    cat: int
    cat_positive: int


def catalan_numbers(family, m=None):
    """Generalized Catalan numbers from the exponents and Coxeter number."""
    if family == "H3":
        exps, h = [1, 5, 9], 10
    elif family == "H4":
        exps, h = [1, 11, 19, 29], 30
    elif family == "I2":
        if m is None or m < 2:
            raise ValueError("I2 needs m >= 2")
        exps, h = [1, m - 1], m
    else:
        raise ValueError(f"unknown family {family!r}")
    num = den = 1
    pnum = pden = 1
    for e in exps:
        num *= h + e + 1
        den *= e + 1
        pnum *= h + e - 1
        pden *= e + 1
    if num % den or pnum % pden:
        raise ArithmeticError("Catalan products did not come out integral")
    return GeneralizedCatalan(exps, h, num // den, pnum // pden)


@dataclass
class ClassificationReport:
    spec: object
    field_backend: str
    antichain_total: int
    by_size: dict
    maximal_total: int
    good_count: int
    bad_count: int
    propagated_nonempty: int
    lp_resolved: int
    verdicts: list                  # RegionVerdict per antichain, canonical order
    maximal_verdicts: list
    empty_list: list                # antichains of the empty regions
    region_count: int
    bounded_count: int
    catalan: GeneralizedCatalan
    bijection_holds: bool
    bijection_bad_witnesses: list
    degenerate_flags: list = field(default_factory=list)


def classify_maximal(poset):
    """Tag every inclusion-maximal antichain good/bad via Int_C feasibility."""
    out = []
    for a in poset.maximal_antichains():
        res = int_c(poset, a)
        out.append(MaximalAntichainVerdict(
            a,
            good=res.status == "Feasible",
            int_c_witness=res.witness,
            degenerate=res.status == "Degenerate"))
    return out


def bijection_criterion(poset):
    """Int_C over all nonempty antichains; the bijection holds iff none fails."""
    bad = []
    degenerate = []
    for a in poset.antichains():
        if not a:
            continue
        res = int_c(poset, a)
        if res.status == "Infeasible":
            bad.append(a)
        elif res.status == "Degenerate":
            degenerate.append(a)
    return {"holds": not bad, "bad_witnesses": bad, "degenerate": degenerate}


def classify_all(poset, threads=1):
    """Run the whole census for one root poset."""
    rs = poset.system
    antichains = poset.antichains()
    ideals = {a: poset.ideal(a) for a in antichains}

    maximal_verdicts = classify_maximal(poset)
    good_count = sum(1 for v in maximal_verdicts if v.good)

    # a good maximal antichain M certifies the regions of the increasing
    # sets I(M) minus any subset of M; record their generating antichains
    propagated = set()
    for v in maximal_verdicts:
        if not v.good:
            continue
        full = ideals[v.antichain]
        members = list(v.antichain)
        for k in range(len(members) + 1):
            for drop in combinations(members, k):
                propagated.add(poset.minimals(full - set(drop)))

    degenerate_flags = [
        {"antichain": list(v.antichain), "where": "int_c"}
        for v in maximal_verdicts if v.degenerate]

    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=threads) as pool:
            raw = list(pool.map(lambda a: region_status(poset, a), antichains))
    else:
        raw = [region_status(poset, a) for a in antichains]

    verdicts = []
    empty_list = []
    for a, verdict in zip(antichains, raw):
        verdict.method = "Propagated" if a in propagated else "LP"
        if verdict.status == "NonEmpty":
            if a in propagated and verdict.witness is None:
                raise AssertionError("propagated region without witness")
            verdict.bounded = bounded(poset, a)
        elif verdict.status == "Empty":
            if a in propagated:
                raise AssertionError(
                    f"propagation marked {a} nonempty but the LP disagrees")
            empty_list.append(a)
        else:
            degenerate_flags.append({"antichain": list(a), "where": "region"})
        verdicts.append(verdict)

    by_size = {}
    for a in antichains:
        by_size[len(a)] = by_size.get(len(a), 0) + 1

    region_count = sum(1 for v in verdicts if v.status == "NonEmpty")
    bounded_count = sum(1 for v in verdicts if v.status == "NonEmpty" and v.bounded)

    crit = bijection_criterion(poset)
    if crit["holds"] != (not empty_list):
        raise AssertionError(
            "bijection criterion disagrees with the region census")

    spec = rs.spec
    return ClassificationReport(
        spec=spec,
        field_backend=rs.field,
        antichain_total=len(antichains),
        by_size=by_size,
        maximal_total=len(maximal_verdicts),
        good_count=good_count,
        bad_count=len(maximal_verdicts) - good_count,
        propagated_nonempty=len(propagated),
        lp_resolved=len(antichains) - len(propagated),
        verdicts=verdicts,
        maximal_verdicts=maximal_verdicts,
        empty_list=empty_list,
        region_count=region_count,
        bounded_count=bounded_count,
        catalan=catalan_numbers(spec.family, spec.m),
        bijection_holds=crit["holds"],
        bijection_bad_witnesses=crit["bad_witnesses"],
        degenerate_flags=degenerate_flags
        + [{"antichain": list(a), "where": "int_c"} for a in crit["degenerate"]],
    )


def classify_system(spec, threads=1):
    return classify_all(RootPoset(build(spec)), threads=threads)


def sweep_ratio(m, ratios=None):
    """Classify I2(m) (even m) across a grid of root-length ratios.

    Returns one row per ratio with counts and a degeneracy marker; rows where
    the region count changes against the previous ratio are flagged.
    """
    from .rootsystem import OddRatioNotOne, SystemSpec

    if m % 2:
        raise OddRatioNotOne("ratio sweeps need even m")
    if ratios is None:
        ratios = default_ratio_grid(m)
    rows = []
    prev = None
    for label, ratio in ratios:
        report = classify_system(SystemSpec("I2", m, ratio))
        row = {
            "ratio": label,
            "region_count": report.region_count,
            "bounded_count": report.bounded_count,
            "degenerate": bool(report.degenerate_flags),
            "count_change": prev is not None and report.region_count != prev,
        }
        prev = report.region_count
        rows.append(row)
    return rows


def default_ratio_grid(m):
    """Critical ratios sin(k pi/m)/sin(l pi/m) plus midpoints between them."""
    from .rootsystem import SystemSpec, _resolve_ratio
    from .exactfield import Approx, as_mpf

    crit = {}
    for k in range(1, m // 2 + 1):
        for l in range(1, m // 2 + 1):
            r = _resolve_ratio(SystemSpec("I2", m, ("sin", k, l)))
            crit[float(as_mpf(r))] = (f"sin({k})/sin({l})", r)
    ordered = [crit[v] for v in sorted(crit)]
    grid = []
    for idx, (label, r) in enumerate(ordered):
        if idx:
            _, prev_r = ordered[idx - 1]
            mid = (as_mpf(prev_r) + as_mpf(r)) / 2
            grid.append((f"midpoint_{idx}", Approx(mid)))
        grid.append((label, r))
    last = as_mpf(ordered[-1][1])
    grid.append(("beyond_max", Approx(last + 1)))
    return grid


def sign_type_consistency(poset, verdicts):
    """Check that every witness reads back exactly its antichain's ideal."""
    for v in verdicts:
        if v.status != "NonEmpty" or v.witness is None:
            continue
        if witness_sign_type(poset, v.witness) != poset.ideal(v.antichain):
            return False
    return True
