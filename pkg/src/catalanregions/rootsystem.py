"""Root system construction for H3, H4 and the dihedral family I2(m).

Everything is expressed in simple-root coordinates; a point of the dominant
chamber is a vector of fundamental-weight coordinates, so pairing a point
with a root is a plain dot product.
"""

from __future__ import annotations

from dataclasses import dataclass
import functools
import re

import mpmath

from .exactfield import (
    Approx,
    Q,
    QuadExt,
    field_tag,
    is_zero,
    one_like,
    scalar_to_json,
    sgn,
    sqrt2,
    sqrt3,
    tau,
    zero_like,
)

CLOSURE_CAP = 10_000


class OddRatioNotOne(ValueError):
    """I2(m) with odd m has a single root orbit, so the ratio must be 1."""


class NonPositiveRatio(ValueError):
    pass


class ClosureOverflow(RuntimeError):
    """Reflection closure exceeded the cap; the Gram matrix is not valid."""


@dataclass(frozen=True)
class SystemSpec:
    family: str                 # "H3" | "H4" | "I2"
    m: int | None = None        # I2 only
    ratio: object = 1           # scalar, or ("sin", k, l) resolved at build
    force_approx: bool = False

    def label(self):
        if self.family != "I2":
            return self.family
        r = self.ratio
        if isinstance(r, tuple):
            return f"I2:{self.m}:r=sin({r[1]})/sin({r[2]})"
        if r == 1:
            return f"I2:{self.m}"
        return f"I2:{self.m}:r={r}"


_SIN_RE = re.compile(r"^sin\((\d+)\)/sin\((\d+)\)$")


def parse_spec(text, force_approx=False):
    """Parse "H3" | "H4" | "I2:<m>" | "I2:<m>:r=<decimal>" | "I2:<m>:r=sin(k)/sin(l)"."""
    if text in ("H3", "H4"):
        return SystemSpec(text, force_approx=force_approx)
    parts = text.split(":")
    if parts[0] != "I2" or len(parts) not in (2, 3):
        raise ValueError(f"bad system spec {text!r}")
    m = int(parts[1])
    if m < 2:
        raise ValueError("I2(m) requires m >= 2")
    ratio = 1
    if len(parts) == 3:
        if not parts[2].startswith("r="):
            raise ValueError(f"bad ratio clause {parts[2]!r}")
        body = parts[2][2:]
        sin_match = _SIN_RE.match(body)
        if sin_match:
            ratio = ("sin", int(sin_match.group(1)), int(sin_match.group(2)))
        else:
            ratio = Q(body)
    return SystemSpec("I2", m, ratio, force_approx)


def _exact_sines(m):
    """sin(k*pi/m) for 1 <= k <= m/2 in a single quadratic field, if one exists."""
    if m == 2:
        return {1: Q(1)}
    if m == 3:
        return None  # odd: ratio is forced to 1 anyway
    if m == 4:
        return {1: sqrt2(0, Q(1, 2)), 2: sqrt2(1, 0)}
    if m == 6:
        return {1: sqrt3(Q(1, 2), 0), 2: sqrt3(0, Q(1, 2)), 3: sqrt3(1, 0)}
    return None


def _resolve_ratio(spec):
    """Turn the ratio field into a concrete scalar (exact when the field allows)."""
    r = spec.ratio
    if isinstance(r, tuple):
        _, k, l = r
        sines = None if spec.force_approx else _exact_sines(spec.m)
        if sines is not None and k in sines and l in sines:
            return sines[k] / sines[l]
        with mpmath.workdps(60):
            return Approx(mpmath.sin(k * mpmath.pi / spec.m) /
                          mpmath.sin(l * mpmath.pi / spec.m))
    return r


def _cos_pi_over(m):
    """Exact cos(pi/m) where a quadratic field suffices, else None."""
    return {
        2: Q(0),
        3: Q(1, 2),
        4: sqrt2(0, Q(1, 2)),
        5: tau(0, Q(1, 2)),
        6: sqrt3(0, Q(1, 2)),
    }.get(m)


@dataclass(frozen=True)
class Root:
    index: int          # position in the canonical ordering, 0-based
    coeffs: tuple       # coordinates in the simple-root basis
    norm2: object
    orbit: int          # index of a simple root in the same reflection orbit

    def to_json(self):
        return {
            "index": self.index,
            "coeffs": [scalar_to_json(c) for c in self.coeffs],
            "norm2": scalar_to_json(self.norm2),
        }


class RootSystem:
    """Positive roots, Gram matrix and evaluation pairing for one system."""

    def __init__(self, spec, gram, positives, field):
        self.spec = spec
        self.gram = gram
        self.positives = positives
        self.field = field          # field tag string
        self.rank = len(gram)
        self.zero = zero_like(gram[0][0])
        self.one = one_like(gram[0][0])

    def inner(self, u, w):
        """Bilinear form u^T G w on simple-root coordinate vectors."""
        if len(u) != self.rank or len(w) != self.rank:
            raise ValueError("dimension mismatch")
        acc = self.zero
        for i, ui in enumerate(u):
            if is_zero(ui):
                continue
            row = self.gram[i]
            for j, wj in enumerate(w):
                acc = acc + ui * row[j] * wj
        return acc

    def reflect(self, i, coeffs):
        """Apply the simple reflection s_{alpha_i} to a coefficient vector."""
        pair = self.zero
        for j, cj in enumerate(coeffs):
            pair = pair + cj * self.gram[j][i]
        coef = 2 * pair / self.gram[i][i]
        out = list(coeffs)
        out[i] = out[i] - coef
        return tuple(out)

    def weight_basis(self):
        """Rows are the fundamental weights in simple-root coordinates (G^-1)."""
        return _mat_inverse(self.gram, self.zero, self.one)

    def roots_to_json(self):
        return [r.to_json() for r in self.positives]


def evaluate(x, root):
    """(v | beta) for v given in weight coordinates: a plain dot product."""
    coeffs = root.coeffs if isinstance(root, Root) else root
    if len(x) != len(coeffs):
        raise ValueError("dimension mismatch")
    acc = None
    for xi, ci in zip(x, coeffs):
        term = xi * ci
        acc = term if acc is None else acc + term
    return acc


def _mat_inverse(g, zero, one):
    n = len(g)
    aug = [list(g[i]) + [one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if not is_zero(aug[r][col]))
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = one / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and not is_zero(aug[r][col]):
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [tuple(row[n:]) for row in aug]


def _coeff_cmp(a, b):
    ha = hb = None
    for x in a:
        ha = x if ha is None else ha + x
    for x in b:
        hb = x if hb is None else hb + x
    s = sgn(ha - hb)
    if s:
        return s
    for x, y in zip(a, b):
        s = sgn(x - y)
        if s:
            return s
    return 0


def _gram_matrix(spec):
    """Gram matrix plus the field tag of its entries."""
    if spec.family in ("H3", "H4"):
        n = 3 if spec.family == "H3" else 4
        if spec.force_approx:
            one, half = Approx(1), Approx(Q(1, 2))
            cos5 = Approx(mpmath.cos(mpmath.pi / 5))
            zero = Approx(0)
        else:
            one, half = tau(1, 0), tau(Q(1, 2), 0)
            cos5 = tau(0, Q(1, 2))
            zero = tau(0, 0)
        g = [[zero] * n for _ in range(n)]
        for i in range(n):
            g[i][i] = one
        g[0][1] = g[1][0] = -cos5
        for i in range(1, n - 1):
            g[i][i + 1] = g[i + 1][i] = -half
        return [tuple(row) for row in g], field_tag(one)

    m = spec.m
    r = _resolve_ratio(spec)
    if isinstance(r, tuple):
        raise ValueError("unresolved ratio token")
    if m % 2 == 1 and not is_zero(r - one_like(r)):
        raise OddRatioNotOne(f"I2({m}) with odd m requires ratio 1")
    if sgn(r) <= 0:
        raise NonPositiveRatio("root-length ratio must be positive")

    cos = None if spec.force_approx else _cos_pi_over(m)
    if cos is not None and not isinstance(r, Approx):
        if isinstance(r, QuadExt) and isinstance(cos, QuadExt) and r.rel != cos.rel:
            cos = None  # incompatible quadratic fields -> approx backend
        if cos is not None:
            if isinstance(cos, QuadExt):
                one = one_like(cos)
            elif isinstance(r, QuadExt):
                one = one_like(r)
            else:
                one = Q(1)
            rr = one * r
            cc = one * cos
            off = -(rr * cc)
            return [(one, off), (off, rr * rr)], field_tag(one)

    with mpmath.workdps(60):
        ra = r if isinstance(r, Approx) else Approx(r) if not isinstance(r, QuadExt) \
            else Approx(r.mpf())
        ca = Approx(mpmath.cos(mpmath.pi / m))
    one = Approx(1)
    off = -(ra * ca)
    return [(one, off), (off, ra * ra)], "approx"


class _SeenSet:
    """Dedup container for coefficient vectors; tolerance-based under approx."""

    def __init__(self, approx):
        self.approx = approx
        self.exact = set()
        self.items = []

    def add(self, coeffs):
        """Insert; returns True if new."""
        if not self.approx:
            if coeffs in self.exact:
                return False
            self.exact.add(coeffs)
            self.items.append(coeffs)
            return True
        for other in self.items:
            if all(is_zero(a - b) for a, b in zip(coeffs, other)):
                return False
        self.items.append(coeffs)
        return True


def build(spec):
    """Construct the root system by reflection closure of the simple roots."""
    gram, field = _gram_matrix(spec)
    n = len(gram)
    zero = zero_like(gram[0][0])
    one = one_like(gram[0][0])

    rs = RootSystem(spec, gram, (), field)
    simples = [tuple(one if j == i else zero for j in range(n)) for i in range(n)]

    seen = _SeenSet(field == "approx")
    frontier = list(simples)
    for s in simples:
        seen.add(s)
    while frontier:
        nxt = []
        for coeffs in frontier:
            for i in range(n):
                image = rs.reflect(i, coeffs)
                if seen.add(image):
                    nxt.append(image)
            if len(seen.items) > CLOSURE_CAP:
                raise ClosureOverflow("reflection closure exceeded cap")
        frontier = nxt

    positives = [c for c in seen.items
                 if all(sgn(x) >= 0 for x in c) and any(sgn(x) > 0 for x in c)]

    positives.sort(key=functools.cmp_to_key(_coeff_cmp))

    expected = {"H3": 15, "H4": 60}.get(spec.family, spec.m)
    if len(positives) != expected:
        raise ClosureOverflow(
            f"closure produced {len(positives)} positive roots, expected {expected}")

    orbit_of = _orbits(rs, simples, positives)
    roots = tuple(
        Root(i, c, rs.inner(c, c), orbit_of[i]) for i, c in enumerate(positives))
    rs.positives = roots
    return rs


def _orbits(rs, simples, positives):
    """Map canonical root position -> smallest simple index in its orbit."""
    n = len(simples)

    def pos_rep(coeffs):
        if all(sgn(x) <= 0 for x in coeffs):
            coeffs = tuple(zero_like(x) - x for x in coeffs)
        return coeffs

    def find(coeffs):
        for k, p in enumerate(positives):
            if all(is_zero(a - b) for a, b in zip(coeffs, p)):
                return k
        raise KeyError("root not found")

    orbit = [None] * len(positives)
    for si in range(n):
        start = find(simples[si])
        if orbit[start] is not None:
            continue
        stack = [start]
        orbit[start] = si
        while stack:
            k = stack.pop()
            for i in range(n):
                img = find(pos_rep(rs.reflect(i, positives[k])))
                if orbit[img] is None:
                    orbit[img] = si
                    stack.append(img)
    return orbit
