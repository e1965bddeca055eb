"""Exact linear feasibility over an ordered field.

The engine decides systems mixing equalities and *strict* inequalities by
maximising a uniform slack t (capped at 1): the open polyhedron is nonempty
iff the optimum t* is positive.  On failure the simplex duals give a Farkas
certificate; for empty dominant regions a second LP searches for the more
readable root-order certificate (a convex comparison between the two
antichains bounding the region).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exactfield import is_zero, near_tie, sgn
from .rootsystem import evaluate


class DimensionMismatch(ValueError):
    pass


class EmptyAntichain(ValueError):
    pass


# ---------------------------------------------------------------------------
# core simplex: max c.x  s.t.  A x <= b,  x >= 0
# ---------------------------------------------------------------------------

def lp_max(n, objective, rows, zero, one):
    """Dense exact simplex with Bland's anti-cycling rule.

    rows: list of (coeffs, rhs) meaning coeffs . x <= rhs.
    Returns (status, x, duals, optimum); status is "optimal" or "unbounded".
    Duals are for the rows as given (nonnegative at optimality).
    """
    m = len(rows)
    for coeffs, _ in rows:
        if len(coeffs) != n:
            raise DimensionMismatch("row length != n")

    nslack = m
    art_of_row = {}
    ncols = n + nslack  # artificials appended below
    tab = []
    flipped = []
    for i, (coeffs, rhs) in enumerate(rows):
        neg = sgn(rhs) < 0
        flipped.append(neg)
        row = [(-c if neg else c) for c in coeffs]
        row += [(-one if neg else one) if j == i else zero for j in range(nslack)]
        row.append(-rhs if neg else rhs)
        tab.append(row)
    basis = []
    for i in range(m):
        if flipped[i]:
            art_of_row[i] = ncols
            for r in range(m):
                tab[r].insert(len(tab[r]) - 1, one if r == i else zero)
            basis.append(ncols)
            ncols += 1
        else:
            basis.append(n + i)

    total = ncols

    def pivot(r, c):
        prow = tab[r]
        inv = one / prow[c]
        tab[r] = prow = [v * inv for v in prow]
        for k in range(m):
            if k == r:
                continue
            f = tab[k][c]
            if is_zero(f):
                continue
            tab[k] = [a - f * b for a, b in zip(tab[k], prow)]
        basis[r] = c

    def run_phase(cost, banned):
        # cost: full-length objective vector (maximisation)
        while True:
            # reduced costs r_j = cost_j - y . A_j with y = cost_basis . B^-1
            red = list(cost)
            for i, bi in enumerate(basis):
                cb = cost[bi]
                if is_zero(cb):
                    continue
                row = tab[i]
                red = [rj - cb * row[j] for j, rj in enumerate(red)]
            enter = -1
            for j in range(total):
                if j in banned or j in basis:
                    continue
                if sgn(red[j]) > 0:
                    enter = j
                    break
            if enter < 0:
                return "optimal", red
            leave = -1
            best = None
            for i in range(m):
                a = tab[i][enter]
                if sgn(a) > 0:
                    ratio = tab[i][-1] / a
                    if best is None or sgn(ratio - best) < 0 or (
                            is_zero(ratio - best) and basis[i] < basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                return "unbounded", red
            pivot(leave, enter)

    arts = set(art_of_row.values())
    if arts:
        cost1 = [zero] * total
        for a in arts:
            cost1[a] = -one
        status, red = run_phase(cost1, banned=set())
        infeas = sum((tab[i][-1] for i in range(m) if basis[i] in arts), zero)
        if not is_zero(infeas):
            # even the weak system is empty; the phase-1 duals certify it
            # (lambda >= 0, lambda^T A >= 0, lambda^T b = -infeas < 0)
            duals = [zero - red[n + i] for i in range(m)]
            return "infeasible", None, duals, None
        # drive remaining zero-valued artificials out of the basis
        for i in range(m):
            if basis[i] in arts:
                for j in range(total):
                    if j not in arts and not is_zero(tab[i][j]):
                        pivot(i, j)
                        break

    cost2 = [zero] * total
    for j, cj in enumerate(objective):
        cost2[j] = cj
    status, red = run_phase(cost2, banned=arts)
    if status == "unbounded":
        return "unbounded", None, None, None

    x = [zero] * n
    for i, bi in enumerate(basis):
        if bi < n:
            x[bi] = tab[i][-1]
    # multiplier on row i (as given) is -reduced_cost(slack_i), for flipped
    # rows included: the slack column carries the flip sign already
    duals = [zero - red[n + i] for i in range(m)]
    opt = sum((cj * x[j] for j, cj in enumerate(objective)), zero)
    return "optimal", x, duals, opt


# ---------------------------------------------------------------------------
# strict systems via the uniform-slack LP
# ---------------------------------------------------------------------------

@dataclass
class LinearSystem:
    n: int
    equalities: list = field(default_factory=list)   # (coeffs, rhs)
    strict_ge: list = field(default_factory=list)    # coeffs . x >  rhs
    strict_le: list = field(default_factory=list)    # coeffs . x <  rhs


@dataclass
class FeasibilityResult:
    status: str                  # "Feasible" | "Infeasible" | "Degenerate"
    witness: tuple | None = None
    farkas: dict | None = None   # {"ge": [...], "le": [...], "eq": [...]}
    slack: object | None = None  # achieved uniform margin t*


def solve(sys, zero, one):
    """Decide a strict/equality system over an ordered field.

    Free variables are split into positive and negative parts; a uniform
    margin t (capped at 1) is maximised over the strict constraints.
    """
    n = sys.n
    nv = 2 * n + 1  # p, q, t
    t_col = 2 * n

    def xrow(a, tcoef):
        if len(a) != n:
            raise DimensionMismatch("constraint length != n")
        return list(a) + [zero - ai for ai in a] + [tcoef]

    rows = []
    kinds = []
    for a, b in sys.strict_ge:
        rows.append(([zero - v for v in xrow(a, zero - one)[:nv - 1]] + [one], zero - b))
        kinds.append("ge")
    for a, b in sys.strict_le:
        rows.append((xrow(a, one), b))
        kinds.append("le")
    for a, b in sys.equalities:
        rows.append((xrow(a, zero), b))
        kinds.append("eq+")
        rows.append(([zero - v for v in xrow(a, zero)], zero - b))
        kinds.append("eq-")
    rows.append(([zero] * t_col + [one], one))
    kinds.append("cap")

    objective = [zero] * nv
    objective[t_col] = one
    status, x, duals, opt = lp_max(nv, objective, rows, zero, one)
    if status == "unbounded":  # t is capped, so never reached
        raise RuntimeError("slack LP unbounded")

    # opt is None when even the weak (closed) system is empty
    t_star = opt
    if t_star is not None:
        if near_tie(t_star):
            return FeasibilityResult("Degenerate", slack=t_star)
        if sgn(t_star) > 0:
            witness = tuple(x[i] - x[n + i] for i in range(n))
            return FeasibilityResult("Feasible", witness=witness, slack=t_star)

    # aggregate with weights lam_ge on (a.x > b), lam_le on (a.x < b) and a
    # signed mu on each equality cancels x and leaves 0 > c0 >= 0
    lam_ge, lam_le, mu = [], [], []
    for kind, y in zip(kinds, duals):
        if kind == "ge":
            lam_ge.append(y)
        elif kind == "le":
            lam_le.append(y)
        elif kind == "eq+":
            mu.append(zero - y)
        elif kind == "eq-":
            mu[-1] = mu[-1] + y
    cert = {"ge": lam_ge, "le": lam_le, "eq": mu, "t_star": t_star}
    check_farkas(sys, cert, zero)
    return FeasibilityResult("Infeasible", farkas=cert, slack=t_star)


def check_farkas(sys, cert, zero):
    """Re-substitute a Farkas certificate; raises if it does not refute the system."""
    n = sys.n
    combo = [zero] * n
    c0 = zero
    strict_mass = zero
    for (a, b), lam in zip(sys.strict_ge, cert["ge"]):
        if sgn(lam) < 0:
            raise AssertionError("negative multiplier")
        combo = [ci + lam * ai for ci, ai in zip(combo, a)]
        c0 = c0 + lam * b
        strict_mass = strict_mass + lam
    for (a, b), lam in zip(sys.strict_le, cert["le"]):
        if sgn(lam) < 0:
            raise AssertionError("negative multiplier")
        combo = [ci - lam * ai for ci, ai in zip(combo, a)]
        c0 = c0 - lam * b
        strict_mass = strict_mass + lam
    for (a, b), m in zip(sys.equalities, cert["eq"]):
        combo = [ci + m * ai for ci, ai in zip(combo, a)]
        c0 = c0 + m * b
    if any(not is_zero(ci) for ci in combo):
        raise AssertionError("certificate does not cancel the variables")
    # combination reads: 0 = combo . x  >=/> c0 while c0 >= 0 (strict part > 0)
    if sgn(c0) < 0:
        raise AssertionError("certificate constant is negative")
    if is_zero(strict_mass) and is_zero(c0):
        raise AssertionError("certificate refutes nothing")
    return True


# ---------------------------------------------------------------------------
# region-level operations
# ---------------------------------------------------------------------------

@dataclass
class OrderCertificate:
    lower: list      # (root index, convex weight) over I_min
    upper: list      # (root index, convex weight) over I^c_max

    def to_json(self):
        from .exactfield import scalar_to_json
        return {
            "kind": "order",
            "lower": [[i, scalar_to_json(w)] for i, w in self.lower],
            "upper": [[i, scalar_to_json(w)] for i, w in self.upper],
        }


@dataclass
class RegionVerdict:
    antichain: tuple
    status: str               # "NonEmpty" | "Empty" | "Degenerate"
    witness: tuple | None = None
    certificate: object = None  # OrderCertificate or farkas dict
    bounded: bool | None = None
    method: str = "LP"        # "Propagated" | "LP"
    slack: object | None = None


def _chamber_rows(rs):
    zero, one = rs.zero, rs.one
    n = rs.rank
    return [(tuple(one if j == i else zero for j in range(n)), zero)
            for i in range(n)]


def int_c(poset, antichain):
    """Feasibility of {(v|beta) = 1 for beta in antichain} inside the chamber."""
    if not antichain:
        raise EmptyAntichain("int_c needs a nonempty antichain")
    rs = poset.system
    sys = LinearSystem(
        rs.rank,
        equalities=[(rs.positives[i].coeffs, rs.one) for i in antichain],
        strict_ge=_chamber_rows(rs),
    )
    return solve(sys, rs.zero, rs.one)


def region_system(poset, antichain):
    rs = poset.system
    icmax = poset.complement_maximals(poset.ideal(antichain))
    sys = LinearSystem(
        rs.rank,
        strict_ge=[(rs.positives[i].coeffs, rs.one) for i in antichain]
        + _chamber_rows(rs),
        strict_le=[(rs.positives[i].coeffs, rs.one) for i in icmax],
    )
    return sys, icmax


def region_status(poset, antichain):
    """Decide emptiness of the dominant region of an antichain (maybe empty)."""
    rs = poset.system
    sys, icmax = region_system(poset, antichain)
    res = solve(sys, rs.zero, rs.one)
    verdict = RegionVerdict(tuple(antichain), "NonEmpty")
    if res.status == "Feasible":
        verdict.witness = res.witness
        verdict.slack = res.slack
    elif res.status == "Degenerate":
        verdict.status = "Degenerate"
        verdict.slack = res.slack
    else:
        verdict.status = "Empty"
        cert = order_certificate(poset, tuple(antichain), icmax)
        verdict.certificate = cert if cert is not None else res.farkas
    return verdict


def order_certificate(poset, imin, icmax):
    """Convex weights with sum(d*gamma) - sum(c*beta) in the nonneg cone, if any.

    Such a comparison sum(c*beta) < sum(d*gamma) in the root order refutes the
    region directly: any interior point would evaluate above 1 on the left
    and below 1 on the right.
    """
    if not imin or not icmax:
        return None
    rs = poset.system
    zero, one = rs.zero, rs.one
    k, l = len(imin), len(icmax)
    nv = k + l
    lower_roots = [rs.positives[i].coeffs for i in imin]
    upper_roots = [rs.positives[i].coeffs for i in icmax]

    rows = []
    # convex weights: sum c = 1, sum d = 1 (as pairs of <= rows)
    for idx in (range(k), range(k, nv)):
        sel = [one if j in idx else zero for j in range(nv)]
        rows.append((sel, one))
        rows.append(([zero - s for s in sel], zero - one))
    # componentwise sum(d*gamma) - sum(c*beta) >= 0
    diff_rows = []
    for s in range(rs.rank):
        coeffs = [lower_roots[j][s] for j in range(k)] + \
                 [zero - upper_roots[j][s] for j in range(l)]
        diff_rows.append(coeffs)
        rows.append((coeffs, zero))
    objective = [zero] * nv
    for coeffs in diff_rows:
        objective = [o - c for o, c in zip(objective, coeffs)]

    status, x, _, opt = lp_max(nv, objective, rows, zero, one)
    if status != "optimal" or sgn(opt) <= 0:
        return None
    lower = [(i, x[j]) for j, i in enumerate(imin) if not is_zero(x[j])]
    upper = [(i, x[k + j]) for j, i in enumerate(icmax) if not is_zero(x[k + j])]
    return OrderCertificate(lower, upper)


def check_order_certificate(poset, cert):
    """Independent verification of a convex root-order comparison."""
    rs = poset.system
    zero = rs.zero
    for _, w in cert.lower + cert.upper:
        if sgn(w) < 0:
            return False
    for weights in (cert.lower, cert.upper):
        if not is_zero(sum((w for _, w in weights), zero) - rs.one):
            return False
    diff = [zero] * rs.rank
    for i, w in cert.upper:
        diff = [d + w * c for d, c in zip(diff, rs.positives[i].coeffs)]
    for i, w in cert.lower:
        diff = [d - w * c for d, c in zip(diff, rs.positives[i].coeffs)]
    return all(sgn(d) >= 0 for d in diff) and any(sgn(d) > 0 for d in diff)


def bounded(poset, antichain):
    """True iff the region's recession cone inside the chamber is trivial."""
    rs = poset.system
    zero, one = rs.zero, rs.one
    n = rs.rank
    icmax = poset.complement_maximals(poset.ideal(antichain))
    rows = []
    for i in icmax:
        rows.append((rs.positives[i].coeffs, zero))
    rows.append(([one] * n, one))
    objective = [one] * n
    status, _, _, opt = lp_max(n, objective, rows, zero, one)
    if status == "unbounded":
        return False
    return sgn(opt) == 0


def witness_sign_type(poset, witness):
    """Increasing set read off a chamber point: roots with (v|beta) > 1."""
    rs = poset.system
    return frozenset(
        i for i, r in enumerate(rs.positives)
        if sgn(evaluate(witness, r) - rs.one) > 0)
