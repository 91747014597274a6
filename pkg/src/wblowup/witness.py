"""Interior-point certificates refuting eps-lc-ness.

C(a, eps) is the convex polytope with vertices 0, eps*e_1, ..., eps*e_n and
eps*a. Its facets are the n coordinate hyperplanes together with n tilted
hyperplanes, each spanned by all eps-scaled ray generators but one basis
vector. A lattice point interior to C(a, eps) has psi strictly below eps
and therefore certifies that the blowup is not eps-lc.

The constructions pick a rational line through the origin whose direction,
chosen by Dirichlet approximation, is so close to the ray through a that
the line exits the polytope beyond its first lattice point. For n = 3
there is an additional route that solves the problem in the plane
projection and then lifts along the third coordinate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .diophantine import DirichletWitness, dirichlet_1d, dirichlet_simultaneous
from .exact_lattice import (
    DEFAULT_ENUMERATION_CAP,
    BudgetExceeded,
    format_rational,
    integer_nth_root,
    pow_cmp,
    require_same_dimension,
)
from .toric_mld import (
    WeightVector,
    argmin_cones,
    barycentric,
    estimate_region_points,
    is_eps_lc,
    iter_region_points,
    psi_value,
)

METHOD_N2_CASE1 = "n2-case1"
METHOD_N2_CASE2 = "n2-case2"
METHOD_N3_PROJECTION = "n3-projection"
METHOD_GENERAL_THETA = "general-theta"
METHOD_ENUMERATION = "enumeration"

VERDICT_EPS_LC = "eps-lc"
VERDICT_INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class FacetHyperplane:
    """Affine form of one tilted facet, positive on the interior side.

    The facet omitting axis i has the form
        ((sum_{j != i} a_j - 1) / a_i) * x_i - sum_{j != i} x_j + eps,
    which vanishes on its n defining vertices and equals eps at the origin.
    """

    omitted: int  # 1-based axis whose eps*e_i is NOT on this facet
    coeffs: tuple[Fraction, ...]
    offset: Fraction

    def evaluate(self, point) -> Fraction:
        acc = self.offset
        for c, x in zip(self.coeffs, point):
            acc += c * x
        return acc


@dataclass(frozen=True)
class CEpsPolytope:
    a: WeightVector
    eps: Fraction
    vertices: tuple[tuple[Fraction, ...], ...]
    facets: tuple[FacetHyperplane, ...]

    @property
    def n(self) -> int:
        return self.a.n


@dataclass(frozen=True)
class Certificate:
    """A lattice point interior to C(a, eps), plus its construction trace."""

    weights: WeightVector
    eps: Fraction
    point: tuple[int, ...]
    psi_at_point: Fraction
    method: str
    trace: dict

    def to_json_dict(self) -> dict:
        return {
            "weights": list(self.weights.entries),
            "eps": format_rational(self.eps),
            "point": list(self.point),
            "psi": format_rational(self.psi_at_point),
            "method": self.method,
            "trace": _jsonify(self.trace),
        }


def _jsonify(obj):
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, DirichletWitness):
        return obj.to_json_dict()
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return obj


def _check_eps(eps) -> Fraction:
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    return eps


def default_theta(n: int) -> Fraction:
    """Default exponent strictly inside the admissible range (0, 1/(2 n^2))."""
    return Fraction(1, 2 * n * n + 1)


def _check_theta(theta, n: int) -> Fraction:
    theta = default_theta(n) if theta is None else Fraction(theta)
    if not 0 < theta < Fraction(1, 2 * n * n):
        raise ValueError(f"theta must lie in (0, 1/{2 * n * n}), got {theta}")
    return theta


def build_polytope(a: WeightVector, eps) -> CEpsPolytope:
    """Construct C(a, eps) with vertex-facet incidence verified."""
    eps = _check_eps(eps)
    n = a.n
    T = a.total
    facets = []
    for i in range(n):
        coeffs = [Fraction(-1)] * n
        coeffs[i] = Fraction(T - a.entries[i] - 1, a.entries[i])
        facets.append(FacetHyperplane(i + 1, tuple(coeffs), eps))
    zero = tuple(Fraction(0) for _ in range(n))
    basis = []
    for i in range(n):
        v = [Fraction(0)] * n
        v[i] = eps
        basis.append(tuple(v))
    apex = tuple(eps * ai for ai in a.entries)
    poly = CEpsPolytope(a, eps, (zero, *basis, apex), tuple(facets))
    _validate_incidence(poly)
    return poly


def _validate_incidence(C: CEpsPolytope) -> None:
    zero, *basis, apex = C.vertices
    for f in C.facets:
        if f.evaluate(zero) != C.eps:
            raise AssertionError("facet form must have slack eps at the origin")
        if f.evaluate(apex) != 0:
            raise AssertionError("facet form must vanish at the apex vertex")
        for j, vert in enumerate(basis, start=1):
            val = f.evaluate(vert)
            if j == f.omitted:
                if val <= 0:
                    raise AssertionError("facet must be strictly positive at its omitted vertex")
            elif val != 0:
                raise AssertionError("facet form must vanish on its defining vertices")


def contains_interior(C: CEpsPolytope, v) -> bool:
    """Strict membership: all n coordinate and all n facet inequalities hold strictly."""
    require_same_dimension(C.n, v)
    if any(x <= 0 for x in v):
        return False
    return all(f.evaluate(v) > 0 for f in C.facets)


def interior_by_subsimplex(C: CEpsPolytope, v) -> bool:
    """Interior test by the barycentric route, used to cross-validate contains_interior.

    v is interior exactly when, in some containing maximal cone, its
    coordinates with respect to the eps-scaled generators have nonnegative
    axis coefficients, strictly positive ray coefficient, and sum below 1
    (the sum is psi(v)/eps).
    """
    require_same_dimension(C.n, v)
    if any(x < 0 for x in v) or not any(v):
        return False
    for cone in argmin_cones(C.a, v):
        b = barycentric(C.a, v, cone)
        if b.in_cone() and b.ray_coeff > 0 and b.value() < C.eps:
            return True
    return False


def certificate_threshold(n: int, eps):
    """Weight bound above which a certificate always exists, when known.

    For n = 2 this is floor((2/eps + 1)**2) + 1; no closed form is
    implemented for n >= 3.
    """
    if n < 2:
        raise ValueError("need dimension >= 2")
    eps = _check_eps(eps)
    if n != 2:
        return None
    return int((2 / eps + 1) ** 2) + 1


def _verified(C: CEpsPolytope, cert: Certificate) -> Certificate:
    # soundness guard: a certificate is never returned unchecked
    if cert.psi_at_point >= cert.eps or not contains_interior(C, cert.point):
        raise AssertionError(f"unsound certificate: {cert}")
    return cert


def witness_n2(a: WeightVector, eps) -> Certificate | None:
    """Dirichlet-line construction in the plane.

    With Z = isqrt(a_1) and p/q approximating a_2/a_1, the line y = (p/q) x
    leaves C(a, eps) at abscissa x0, through the lower tilted facet when
    p/q <= a_2/a_1 (case 1) and through the upper one otherwise (case 2).
    Multiples k*(q, p) with k*q up to x0 are tried in order.
    """
    eps = _check_eps(eps)
    if a.n != 2:
        raise ValueError("witness_n2 requires exactly two weights")
    a1, a2 = a.entries
    if a1 == 1:
        return None  # lower tilted facet is vertical; handled by enumeration
    Z = integer_nth_root(a1, 2)
    alpha = Fraction(a2, a1)
    approx = dirichlet_1d(alpha, Z)
    p, q = approx.p, approx.q
    slope = Fraction(p, q)
    if slope <= alpha:
        method = METHOD_N2_CASE1
        upper = Fraction(a2, a1 - 1)
        x0 = eps * upper / (upper - slope)
    else:
        method = METHOD_N2_CASE2
        x0 = eps / (slope - Fraction(a2 - 1, a1))
    C = build_polytope(a, eps)
    trace = {
        "Z": Z,
        "p": p,
        "q": q,
        "alpha": alpha,
        "residual": approx.residual,
        "case": 1 if method == METHOD_N2_CASE1 else 2,
        "x0": x0,
    }
    for k in range(1, int(x0 / q) + 1):
        pt = (k * q, k * p)
        if contains_interior(C, pt):
            return _verified(
                C,
                Certificate(a, eps, pt, psi_value(a, pt), method, {**trace, "k": k}),
            )
    return None


def _theta_hypothesis(a: WeightVector, theta: Fraction) -> bool:
    # a_j / a_2 <= a_1 ** theta for 3 <= j <= n, by exact power comparison
    tn, td = theta.numerator, theta.denominator
    bound = Fraction(a.entries[0] ** tn)
    return all(
        pow_cmp(Fraction(a.entries[j], a.entries[1]), td, bound) <= 0
        for j in range(2, a.n)
    )


def witness_general_theta(a: WeightVector, eps, theta=None) -> Certificate | None:
    """Simultaneous-Dirichlet line construction for any dimension.

    The direction (p_1, ..., p_n) comes from approximating each a_j/a_1
    with denominator p_1 <= Z = floor(a_1 ** (1/n)). The line exits the
    polytope through the facet minimising eps/A_i over positive exit
    coefficients A_i; multiples of the direction up to that abscissa are
    tried. Returns None when the approximation search is inconclusive.
    The hypothesis a_j/a_2 <= a_1**theta is recorded in the trace but not
    required.
    """
    eps = _check_eps(eps)
    n = a.n
    theta = _check_theta(theta, n)
    ent = a.entries
    hypothesis_ok = _theta_hypothesis(a, theta)
    Z = integer_nth_root(ent[0], n)
    alphas = tuple(Fraction(ent[j], ent[0]) for j in range(1, n))
    w = dirichlet_simultaneous(alphas, Z)
    if not w.satisfied:
        return None  # approximation inconclusive
    direction = (w.q,) + w.p
    lam = [Fraction(0)] * n
    for j in range(1, n):
        lam[j] = Fraction(w.p[j - 1], w.q) - alphas[j - 1]
    coeffs = []
    for i in range(n):
        acc = Fraction(1, ent[0]) + lam[i] / ent[i]
        for j in range(n):
            if j != i:
                acc += lam[j] - Fraction(ent[j], ent[i]) * lam[i]
        coeffs.append(acc)
    exits = [(eps / A, i + 1) for i, A in enumerate(coeffs) if A > 0]
    if not exits:
        return None
    x10, exit_facet = min(exits)
    C = build_polytope(a, eps)
    trace = {
        "Z": Z,
        "dirichlet": w,
        "theta": theta,
        "hypothesis_ok": hypothesis_ok,
        "exit_coefficients": tuple(coeffs),
        "exit_facet": exit_facet,
        "x1_0": x10,
    }
    for k in range(1, int(x10 / w.q) + 1):
        pt = tuple(k * c for c in direction)
        if contains_interior(C, pt):
            return _verified(
                C,
                Certificate(a, eps, pt, psi_value(a, pt), METHOD_GENERAL_THETA, {**trace, "k": k}),
            )
    return None


def _projected_interior(a1: int, a2: int, eps: Fraction, x: int, y: int) -> bool:
    # interior of the plane projection of the polytope, which is C((a1, a2), eps)
    # even when a1, a2 share a factor
    if x <= 0 or y <= 0:
        return False
    if eps + Fraction(a2 - 1, a1) * x - y <= 0:
        return False
    if eps + Fraction(a1 - 1, a2) * y - x <= 0:
        return False
    return True


def witness_n3(a: WeightVector, eps, theta=None) -> Certificate | None:
    """Three-dimensional construction.

    Branch (i), when a_3/a_2 <= a_1**theta: delegate to the general line
    construction. Branch (ii): project onto the first two coordinates,
    place (q, p) there by the plane construction, and lift along the
    vertical line x_1 = q, x_2 = p, whose segment inside the polytope runs
    from the bottom tilted facet up to the lower of the other two. Any
    integer strictly inside that segment gives the certificate.
    """
    eps = _check_eps(eps)
    if a.n != 3:
        raise ValueError("witness_n3 requires exactly three weights")
    theta = _check_theta(theta, a.n)
    a1, a2, a3 = a.entries
    if pow_cmp(Fraction(a3, a2), theta.denominator, Fraction(a1**theta.numerator)) <= 0:
        return witness_general_theta(a, eps, theta)
    M2 = integer_nth_root(a1, 2)
    approx = dirichlet_1d(Fraction(a2, a1), M2)
    p, q = approx.p, approx.q
    if not _projected_interior(a1, a2, eps, q, p):
        return None
    x3_lo = (q + p - eps) * Fraction(a3, a1 + a2 - 1)
    x3_hi = min(
        Fraction(a2 + a3 - 1, a1) * q - p + eps,
        Fraction(a1 + a3 - 1, a2) * p - q + eps,
    )
    trace = {
        "M2": M2,
        "p": p,
        "q": q,
        "residual": approx.residual,
        "x3_lo": x3_lo,
        "x3_hi": x3_hi,
    }
    m = math.floor(x3_lo) + 1  # smallest integer strictly above the lower end
    if m >= x3_hi:
        return None
    pt = (q, p, m)
    C = build_polytope(a, eps)
    if not contains_interior(C, pt):
        return None
    return _verified(
        C,
        Certificate(a, eps, pt, psi_value(a, pt), METHOD_N3_PROJECTION, trace),
    )


def certify_not_eps_lc(
    a: WeightVector,
    eps,
    theta=None,
    enumeration_cap: int = DEFAULT_ENUMERATION_CAP,
) -> Certificate | str:
    """Dispatcher: construction first, then bounded enumeration.

    Returns a verified Certificate, the verdict "eps-lc", or
    "inconclusive" when every budget is exhausted. A wrong verdict is never
    returned: certificates are re-checked exactly and "eps-lc" only comes
    from a completed refutation scan.
    """
    eps = _check_eps(eps)
    if a.n == 2:
        cert = witness_n2(a, eps)
    elif a.n == 3:
        cert = witness_n3(a, eps, theta)
    else:
        cert = witness_general_theta(a, eps, theta)
    C = build_polytope(a, eps)
    if cert is not None:
        return _verified(C, cert)
    try:
        est = estimate_region_points(a, eps)
        if est > enumeration_cap:
            raise BudgetExceeded(est, enumeration_cap, "interior-point enumeration")
        # for lattice points, interior membership is equivalent to psi < eps
        # (checked again facet-wise by _verified on the winning point)
        en, ed = eps.numerator, eps.denominator
        ent = a.entries
        T1 = a.total - 1
        for v in iter_region_points(a, eps):
            bi = 0
            for j in range(1, a.n):
                if v[j] * ent[bi] < v[bi] * ent[j]:
                    bi = j
            if (ent[bi] * sum(v) - v[bi] * T1) * ed < en * ent[bi]:
                cert = Certificate(
                    a, eps, v, psi_value(a, v), METHOD_ENUMERATION, {"source": "interior-scan"}
                )
                return _verified(C, cert)
    except BudgetExceeded:
        pass
    try:
        ok, refuter = is_eps_lc(a, eps, enumeration_cap)
    except BudgetExceeded:
        return VERDICT_INCONCLUSIVE
    if ok:
        return VERDICT_EPS_LC
    cert = Certificate(
        a, eps, refuter, psi_value(a, refuter), METHOD_ENUMERATION, {"source": "refutation-scan"}
    )
    return _verified(C, cert)
