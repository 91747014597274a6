"""Fan of a weighted blowup and exact minimal log discrepancies.

Conventions used throughout the package:

* Weights a = (a_1, ..., a_n) are coprime positive integers, sorted
  ascending, n >= 2. The ray through a subdivides the first orthant into n
  maximal cones.
* Cone indices are 1-based. Cone i omits the basis vector e_i; its
  generators are a together with every e_j, j != i. A nonzero vector v of
  the orthant lies in cone i exactly when i minimises v_j / a_j.
* psi is the piecewise-linear function on the orthant that is linear on
  each maximal cone and takes the value 1 on every ray generator (each e_i
  and a). On cone i, with T = sum(a),

      psi(v) = (a_i * sum(v) - v_i * (T - 1)) / a_i.

  The minimal log discrepancy of the blowup is the minimum of psi over
  nonzero lattice points, and the sublevel set {psi <= s} is the convex
  hull of 0, the points s*e_j and s*a.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd

from .exact_lattice import (
    DEFAULT_ENUMERATION_CAP,
    BudgetExceeded,
    ceil_div,
    format_rational,
    gcd_all,
    require_same_dimension,
)

POSITION_INTERIOR = "relative-interior"
POSITION_RAY = "ray"
POSITION_FACE = "coordinate-face"
POSITION_WALL = "cone-wall"

CLASS_TERMINAL = "terminal"
CLASS_CANONICAL = "canonical"
CLASS_KLT = "klt-with-mld"
CLASS_NOT_LC = "not-lc-flag"  # reserved: psi > 0 on the orthant, so never emitted


@dataclass(frozen=True)
class WeightVector:
    """Coprime ascending weights defining the blowup."""

    entries: tuple[int, ...]

    def __post_init__(self):
        e = tuple(self.entries)
        object.__setattr__(self, "entries", e)
        if len(e) < 2:
            raise ValueError("need at least two weights")
        for x in e:
            if not isinstance(x, int) or isinstance(x, bool) or x < 1:
                raise ValueError(f"weights must be positive integers, got {x!r}")
        if any(e[i] > e[i + 1] for i in range(len(e) - 1)):
            raise ValueError(f"weights must be sorted ascending: {e}")
        if gcd_all(e) != 1:
            raise ValueError(f"weights must be coprime: {e}")

    @property
    def n(self) -> int:
        return len(self.entries)

    @property
    def total(self) -> int:
        return sum(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class MaxCone:
    """Maximal cone of the fan, named by the basis vector it omits (1-based)."""

    weights: WeightVector
    omitted_axis: int

    def __post_init__(self):
        if not 1 <= self.omitted_axis <= self.weights.n:
            raise ValueError(f"cone index out of range: {self.omitted_axis}")

    def generators(self) -> tuple[tuple[int, ...], ...]:
        """The weight ray followed by every basis vector except the omitted one."""
        n = self.weights.n
        gens = [self.weights.entries]
        for j in range(n):
            if j != self.omitted_axis - 1:
                gens.append(tuple(1 if k == j else 0 for k in range(n)))
        return tuple(gens)

    def contains(self, v) -> bool:
        """Whether v lies in the closed cone: v_j * a_i >= a_j * v_i for all j != i."""
        require_same_dimension(self.weights.n, v)
        ent = self.weights.entries
        i = self.omitted_axis - 1
        return all(v[j] * ent[i] >= ent[j] * v[i] for j in range(self.weights.n) if j != i)

    def contains_relative_interior(self, v) -> bool:
        require_same_dimension(self.weights.n, v)
        ent = self.weights.entries
        i = self.omitted_axis - 1
        if v[i] <= 0:
            return False
        return all(v[j] * ent[i] > ent[j] * v[i] for j in range(self.weights.n) if j != i)

    @property
    def smooth(self) -> bool:
        """Generators form a lattice basis; their determinant is +-a_i."""
        return self.weights.entries[self.omitted_axis - 1] == 1


def max_cones(a: WeightVector) -> tuple[MaxCone, ...]:
    """The n maximal cones subdividing the first orthant."""
    return tuple(MaxCone(a, i) for i in range(1, a.n + 1))


@dataclass(frozen=True)
class BarycentricCoords:
    """Coordinates of a vector in one maximal cone: v = ray_coeff * a + sum(axis_coeffs[j] * e_j).

    axis_coeffs has full length n; the entry at the cone's omitted axis is
    always 0 since e_i is not a generator of cone i. All coefficients are
    nonnegative exactly when the vector lies in the cone, and their sum is
    psi(v) whenever it does.
    """

    cone: int
    ray_coeff: Fraction
    axis_coeffs: tuple[Fraction, ...]

    def value(self) -> Fraction:
        return self.ray_coeff + sum(self.axis_coeffs)

    def in_cone(self) -> bool:
        return self.ray_coeff >= 0 and all(c >= 0 for c in self.axis_coeffs)

    def reconstruct(self, a: WeightVector) -> tuple[Fraction, ...]:
        return tuple(self.ray_coeff * aj + cj for aj, cj in zip(a.entries, self.axis_coeffs))


@dataclass(frozen=True)
class ConeLocation:
    cones: tuple[int, ...]
    position: str


@dataclass(frozen=True)
class MldReport:
    """Result of a global mld search.

    classification is one of "terminal", "canonical", "klt-with-mld"
    (CLASS_NOT_LC is reserved and never produced for these fans).
    """

    weights: WeightVector
    value: Fraction
    achieved_at: tuple[int, ...]
    cone: int
    classification: str
    points_scanned: int

    def to_json_dict(self) -> dict:
        return {
            "weights": list(self.weights.entries),
            "mld": format_rational(self.value),
            "achieved_at": list(self.achieved_at),
            "cone": self.cone,
            "points_scanned": self.points_scanned,
            "classification": self.classification,
        }


def _check_vector(a: WeightVector, v) -> None:
    require_same_dimension(a.n, v)
    nonzero = False
    for c in v:
        if c < 0:
            raise ValueError(f"coordinates must be nonnegative: {tuple(v)}")
        if c != 0:
            nonzero = True
    if not nonzero:
        raise ValueError("the zero vector has no log discrepancy")


def argmin_cones(a: WeightVector, v) -> tuple[int, ...]:
    """All 1-based i minimising v_i / a_i, i.e. the maximal cones containing v."""
    ent = a.entries
    best = [1]
    bi = 0
    for j in range(1, len(ent)):
        lhs = v[j] * ent[bi]
        rhs = v[bi] * ent[j]
        if lhs < rhs:
            best = [j + 1]
            bi = j
        elif lhs == rhs:
            best.append(j + 1)
    return tuple(best)


def barycentric(a: WeightVector, v, cone: int) -> BarycentricCoords:
    """Solve v = ray_coeff * a + sum axis_coeffs[j] * e_j for the given cone.

    Defined for any nonnegative nonzero v; coefficients are negative when v
    is outside the cone.
    """
    _check_vector(a, v)
    if not 1 <= cone <= a.n:
        raise ValueError(f"cone index out of range: {cone}")
    i = cone - 1
    lam0 = Fraction(v[i]) / a.entries[i]
    axis = [Fraction(v[j]) - a.entries[j] * lam0 for j in range(a.n)]
    axis[i] = Fraction(0)
    return BarycentricCoords(cone, lam0, tuple(axis))


def locate_cone(a: WeightVector, v) -> ConeLocation:
    """Containing cones of v plus a position classification.

    Positions: "relative-interior" of a single maximal cone, "ray" (v is a
    positive multiple of a), "coordinate-face" (some coordinate vanishes),
    or "cone-wall" (on a wall between maximal cones, possible for n >= 3).
    """
    _check_vector(a, v)
    cones = argmin_cones(a, v)
    if len(cones) == a.n:
        position = POSITION_RAY
    elif any(c == 0 for c in v):
        position = POSITION_FACE
    elif len(cones) == 1:
        position = POSITION_INTERIOR
    else:
        position = POSITION_WALL
    return ConeLocation(cones, position)


def psi_value(a: WeightVector, v) -> Fraction:
    """Exact value of the log-discrepancy function at a nonnegative nonzero v."""
    _check_vector(a, v)
    ent = a.entries
    bi = 0
    for j in range(1, len(ent)):
        if v[j] * ent[bi] < v[bi] * ent[j]:
            bi = j
    total = sum(v)
    return Fraction(ent[bi] * total - v[bi] * (a.total - 1), ent[bi])


def is_smooth_cone(a: WeightVector, cone: int) -> bool:
    """Whether cone i is generated by a lattice basis, i.e. a_i = 1."""
    return MaxCone(a, cone).smooth


def estimate_region_points(a: WeightVector, scale) -> int:
    """Cheap conservative estimate of the lattice points of {psi <= scale}.

    Volume term scale^n * sum(a) / n! plus a surface correction.
    """
    s = Fraction(scale)
    n = a.n
    total = a.total
    vol = s**n * total / factorial(n)
    surf = s ** (n - 1) * n * total / factorial(n - 1)
    return int(vol + surf) + n + 2


def _facet_rows(a: WeightVector, sn: int, sd: int):
    # integer rows (c, b) standing for c.x + b >= 0: the n scaled facet forms
    # a_i*sd*F_i plus the coordinate bounds x_j >= 0
    n = a.n
    T = a.total
    rows = []
    for i in range(n):
        c = [-a.entries[i] * sd] * n
        c[i] = (T - a.entries[i] - 1) * sd
        rows.append((tuple(c), a.entries[i] * sn))
    for j in range(n):
        c = [0] * n
        c[j] = 1
        rows.append((tuple(c), 0))
    return rows


def _normalized(rows):
    out = set()
    for c, b in rows:
        if not any(c):
            # the region contains the origin, so eliminations cannot produce
            # an infeasible constant row
            assert b >= 0
            continue
        g = gcd(*(abs(x) for x in c), abs(b))
        out.add((tuple(x // g for x in c), b // g))
    return sorted(out)


def _eliminate_last(rows, m):
    # Fourier-Motzkin step: project away variable m exactly
    lowers, uppers, keep = [], [], []
    for row in rows:
        cm = row[0][m]
        if cm > 0:
            lowers.append(row)
        elif cm < 0:
            uppers.append(row)
        else:
            keep.append(row)
    new = list(keep)
    for lc, lb in lowers:
        for uc, ub in uppers:
            sl, su = -uc[m], lc[m]
            new.append(
                (tuple(lj * sl + uj * su for lj, uj in zip(lc, uc)), lb * sl + ub * su)
            )
    return new


# Fourier-Motzkin can blow up doubly exponentially; past this many rows a
# level falls back to valid but looser truncated bounds (n >= 6 territory)
_FM_ROW_CAP = 4000


def _truncated_level(a: WeightVector, sn: int, sd: int, k: int, base):
    # valid bounds for x_0..x_k: rows whose dropped tail coefficients are all
    # nonpositive (so dropping them weakens the row), plus the hull bound
    n = a.n
    rows = []
    for c, b in base:
        if all(cj <= 0 for cj in c[k + 1 :]):
            rows.append((c[: k + 1] + (0,) * (n - k - 1), b))
    hull = [0] * n
    hull[k] = -sd
    rows.append((tuple(hull), sn * a.entries[k]))
    return _normalized(rows)


def _projection_tower(a: WeightVector, sn: int, sd: int):
    # systems[k] constrains x_0..x_k; bounds for x_k given a fixed prefix are
    # read off the rows with nonzero k-th coefficient
    n = a.n
    base = _normalized(_facet_rows(a, sn, sd))
    systems = [None] * n
    systems[n - 1] = base
    exact = True
    for m in range(n - 1, 0, -1):
        if exact:
            rows = systems[m]
            lowers = sum(1 for c, _ in rows if c[m] > 0)
            uppers = sum(1 for c, _ in rows if c[m] < 0)
            if len(rows) + lowers * uppers <= _FM_ROW_CAP:
                systems[m - 1] = _normalized(_eliminate_last(rows, m))
                continue
            exact = False
        systems[m - 1] = _truncated_level(a, sn, sd, m - 1, base)
    split = []
    for k in range(n):
        level = [(c[k], c[:k], b) for c, b in systems[k] if c[k] != 0]
        split.append(level)
    return split


def iter_region_points(a: WeightVector, scale, *, include_origin: bool = False):
    """Yield every lattice point of {psi <= scale} in lexicographic order.

    Slices along the first coordinate; the bounds at every level come from
    the exact Fourier-Motzkin projections of the sublevel polytope, so the
    recursion only ever visits prefixes that extend to a member and every
    yielded point is a member. The caller is responsible for budget checks.
    """
    s = Fraction(scale)
    if s <= 0:
        raise ValueError("scale must be positive")
    levels = _projection_tower(a, s.numerator, s.denominator)
    n = a.n

    def bounds(prefix, k):
        lo, hi = 0, None
        for ck, head, b in levels[k]:
            val = b
            for cj, pj in zip(head, prefix):
                val += cj * pj
            if ck > 0:
                bound = ceil_div(-val, ck)
                if bound > lo:
                    lo = bound
            else:
                bound = val // -ck
                if hi is None or bound < hi:
                    hi = bound
        return lo, hi

    def rec(prefix):
        k = len(prefix)
        lo, hi = bounds(prefix, k)
        if hi is None or lo > hi:
            return
        if k == n - 1:
            for y in range(lo, hi + 1):
                yield prefix + (y,)
            return
        for t in range(lo, hi + 1):
            yield from rec(prefix + (t,))

    for v in rec(()):
        if include_origin or any(v):
            yield v


def _is_fan_ray_point(v, ent) -> bool:
    # on a 1-dimensional cone of the fan: a coordinate axis or the ray through a
    nonzero = [j for j, c in enumerate(v) if c]
    if len(nonzero) == 1:
        return True
    j0 = nonzero[0]
    return all(v[j] * ent[j0] == v[j0] * ent[j] for j in nonzero[1:])


def mld_global(a: WeightVector, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> MldReport:
    """Minimum of psi over all nonzero lattice points of the first orthant.

    Since psi(e_1) = 1 the search is confined to {psi <= 1}. The achieving
    vector is the lexicographically smallest minimiser.
    """
    if enumeration_cap < 1:
        raise ValueError("enumeration cap must be positive")
    est = estimate_region_points(a, 1)
    if est > enumeration_cap:
        raise BudgetExceeded(est, enumeration_cap, "mld enumeration")
    ent = a.entries
    n = a.n
    T1 = a.total - 1
    best_num = best_den = None
    best_v = None
    off_ray = False
    scanned = 0
    for v in iter_region_points(a, 1):
        scanned += 1
        bi = 0
        for j in range(1, n):
            if v[j] * ent[bi] < v[bi] * ent[j]:
                bi = j
        num = ent[bi] * sum(v) - v[bi] * T1
        den = ent[bi]
        if best_num is None or num * best_den < best_num * den:
            best_num, best_den, best_v = num, den, v
        if not off_ray and not _is_fan_ray_point(v, ent):
            off_ray = True
    value = Fraction(best_num, best_den)
    if value < 1:
        classification = CLASS_KLT
    elif off_ray:
        classification = CLASS_CANONICAL
    else:
        classification = CLASS_TERMINAL
    cone = argmin_cones(a, best_v)[0]
    return MldReport(a, value, best_v, cone, classification, scanned)


def mld_at_fixed_point(a: WeightVector, cone: int, enumeration_cap: int = DEFAULT_ENUMERATION_CAP) -> Fraction:
    """Infimum of psi over lattice points interior to the given maximal cone.

    This is the mld at the torus-fixed point of that cone. The point
    a + sum of the cone's basis generators is interior with psi = n, so the
    infimum is attained inside {psi <= n} and the search there is complete.
    """
    if not 1 <= cone <= a.n:
        raise ValueError(f"cone index out of range: {cone}")
    est = estimate_region_points(a, a.n)
    if est > enumeration_cap:
        raise BudgetExceeded(est, enumeration_cap, "fixed-point mld enumeration")
    ent = a.entries
    n = a.n
    T1 = a.total - 1
    i = cone - 1
    best_num = best_den = None
    for v in iter_region_points(a, n):
        vi = v[i]
        if vi == 0:
            continue
        if any(j != i and v[j] * ent[i] <= ent[j] * vi for j in range(n)):
            continue
        num = ent[i] * sum(v) - vi * T1
        if best_num is None or num * best_den < best_num * ent[i]:
            best_num, best_den = num, ent[i]
    assert best_num is not None  # the witness point above is always scanned
    return Fraction(best_num, best_den)


def _refuting_point_n2(a1, a2, en, ed):
    # first lattice point (lex order) with psi strictly below en/ed, n = 2
    T1 = a1 + a2 - 1
    hull2 = (en * a2) // ed
    for t in range(0, (en * a1) // ed + 1):
        hi = ((a2 - 1) * ed * t + a1 * en) // (a1 * ed)
        if hull2 < hi:
            hi = hull2
        if a1 > 1:
            rhs = a2 * (ed * t - en)
            lo = ceil_div(rhs, (a1 - 1) * ed) if rhs > 0 else 0
        else:
            if ed * t > en:
                break
            lo = 0
        if t == 0 and lo == 0:
            lo = 1
        if lo > hi:
            continue
        ystar = ceil_div(t * a2, a1)
        # below the ray through a: the cone omitting axis 2
        c2 = (a1 - 1) * ed
        r2 = a2 * (ed * t - en)
        for y in range(lo, min(hi, ystar - 1) + 1):
            if c2 * y > r2:
                return (t, y)
        # on or above the ray: the cone omitting axis 1
        c1 = a1 * ed
        r1 = en * a1 + ed * t * (a2 - 1)
        for y in range(max(lo, ystar), hi + 1):
            if c1 * y < r1:
                return (t, y)
    return None


def is_eps_lc(a: WeightVector, eps, enumeration_cap: int = DEFAULT_ENUMERATION_CAP):
    """Decide whether every nonzero lattice point has psi >= eps.

    Returns (True, None) or (False, refuting_vector), early-exiting on the
    first refutation in lexicographic order. Only eps in (0, 1] is
    accepted; codimension-1 points all have mld exactly 1, so in this range
    the mld over lattice points settles the question.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    if enumeration_cap < 1:
        raise ValueError("enumeration cap must be positive")
    est = estimate_region_points(a, eps)
    if est > enumeration_cap:
        raise BudgetExceeded(est, enumeration_cap, "eps-lc refutation scan")
    en, ed = eps.numerator, eps.denominator
    if a.n == 2:
        refuter = _refuting_point_n2(a.entries[0], a.entries[1], en, ed)
        return (refuter is None, refuter)
    ent = a.entries
    n = a.n
    T1 = a.total - 1
    for v in iter_region_points(a, eps):
        bi = 0
        for j in range(1, n):
            if v[j] * ent[bi] < v[bi] * ent[j]:
                bi = j
        if (ent[bi] * sum(v) - v[bi] * T1) * ed < en * ent[bi]:
            return (False, v)
    return (True, None)
