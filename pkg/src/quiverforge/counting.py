"""Counting machinery over F_q.

Iso-class counts are computed by Burnside's formula in two independent ways
(summing fixed points over group elements, and stabilizer orders over
points) and cross-checked.  Indecomposable and absolutely indecomposable
counts deduplicate by canonical orbit representatives and test each class
representative's endomorphism ring.  Counts at several prime powers feed an
exact Lagrange interpolation whose result is verified at two surplus
evaluation points before being returned.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import (
    ConsistencyError,
    NonPolynomialBehavior,
    TheoremViolation,
    ValidationError,
    check_cap,
    DEFAULT_CAP,
)
from .ffield import Field, FqMatrix, enumerate_gl, gl_order, make_field
from .orbits import decode_representation, orbit_partition
from .quiver import Quiver
from .reps import (
    Representation,
    all_representations,
    aut_order,
    endo_structure,
    is_indecomposable,
    rep_space_dim,
)
from .series import (
    ExactPolynomial,
    TruncatedSeries,
    geometric_inverse_power,
    lagrange_interpolate,
    monomials_up_to,
)


def prime_power(n: int) -> tuple[int, int] | None:
    """(p, k) with n = p^k, or None if n is not a prime power."""
    if n < 2:
        return None
    p = 2
    while p * p <= n:
        if n % p == 0:
            k = 0
            while n % p == 0:
                n //= p
                k += 1
            return (p, k) if n == 1 else None
        p += 1
    return (n, 1)


def field_from_order(q: int) -> Field:
    pk = prime_power(q)
    if pk is None:
        raise ValidationError(f"{q} is not a prime power")
    return make_field(*pk)


def prime_powers():
    """2, 3, 4, 5, 7, 8, 9, 11, ..."""
    n = 2
    while True:
        if prime_power(n) is not None:
            yield n
        n += 1


def moebius(n: int) -> int:
    if n < 1:
        raise ValidationError("Moebius function needs a positive argument")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    return [r for r in range(1, n + 1) if n % r == 0]


# ---------------------------------------------------------------------------
# iso-class counting (Burnside, two routes)


def _fixed_point_log(quiver: Quiver, d, combo, field: Field) -> int:
    """log_q of the number of representations fixed by the group tuple.

    ``combo[v] = (g_v, g_v^{-1})``.  The conjugation action is block
    diagonal per arrow, so the fixed space splits arrow by arrow.
    """
    total = 0
    for a in quiver.arrows:
        h = quiver.vertex_index[a.head]
        t = quiver.vertex_index[a.tail]
        r, c = d[h], d[t]
        if r * c == 0:
            continue
        gh = combo[h][0]
        gtinv = combo[t][1]
        # column for basis matrix E_ij: vec(gh E_ij gtinv - E_ij);
        # gh E_ij gtinv is the outer product of column i of gh and row j of gtinv
        columns = []
        for i in range(r):
            for j in range(c):
                col = []
                for x in range(r):
                    for y in range(c):
                        v = field.mul(gh.entries[x][i], gtinv.entries[j][y])
                        if (x, y) == (i, j):
                            v = field.sub(v, 1)
                        col.append(v)
                columns.append(col)
        operator = FqMatrix(field, list(zip(*columns)))
        total += r * c - operator.rank()
    return total


def count_iso_classes(quiver: Quiver, d, q: int, cap: int = DEFAULT_CAP) -> int:
    """Number of iso classes of d-dimensional representations over F_q.

    Burnside over group elements and Burnside over points must agree and
    both divisions must be exact; anything else is a hard error.
    """
    field = field_from_order(q)
    d = quiver.check_dim(d)
    check_cap(q ** rep_space_dim(quiver, d), cap, "representation-space enumeration")
    order = gl_order(d, q)
    check_cap(order, cap, "group-element enumeration")
    for dv in d:
        check_cap(q ** (dv * dv), cap, "GL candidate enumeration")
    gls = [[(g, g.inverse()) for g in enumerate_gl(field, dv)] for dv in d]

    fixed_total = 0
    for combo in itertools.product(*gls):
        fixed_total += q ** _fixed_point_log(quiver, d, combo, field)
    by_group, rem = divmod(fixed_total, order)
    if rem:
        raise ConsistencyError("Burnside sum over group elements is not divisible by |GL_d|")

    stab_total = 0
    for w in all_representations(quiver, field, d, cap=cap):
        stab_total += aut_order(w, cap=cap)
    by_point, rem = divmod(stab_total, order)
    if rem:
        raise ConsistencyError("Burnside sum over points is not divisible by |GL_d|")

    if by_group != by_point:
        raise ConsistencyError(
            f"Burnside routes disagree: {by_group} over group elements, {by_point} over points"
        )
    return by_group


# ---------------------------------------------------------------------------
# class representatives and indecomposability counts


def iso_class_representatives(
    quiver: Quiver, d, q: int, cap: int = DEFAULT_CAP
) -> list[Representation]:
    """Canonical orbit representatives: the lexicographically smallest
    element of every GL_d-orbit, in lexicographic order."""
    field = field_from_order(q)
    d = quiver.check_dim(d)
    indices, _ = orbit_partition(quiver, field, d, cap=cap)
    return [decode_representation(quiver, field, d, i) for i in indices]


@dataclass(frozen=True)
class ClassCounts:
    iso_classes: int
    indecomposable: int
    absolutely_indecomposable: int

    def __post_init__(self):
        ok = 0 <= self.absolutely_indecomposable <= self.indecomposable <= self.iso_classes
        if not ok:
            raise ConsistencyError(f"count ordering violated: {self}")


def classify_classes(quiver: Quiver, d, q: int, cap: int = DEFAULT_CAP) -> ClassCounts:
    reps = iso_class_representatives(quiver, d, q, cap=cap)
    indec = 0
    abs_indec = 0
    for w in reps:
        if not is_indecomposable(w, cap=cap):
            continue
        indec += 1
        structure = endo_structure(w, cap=cap)
        if structure.residue_degree == 1:
            abs_indec += 1
    return ClassCounts(
        iso_classes=len(reps),
        indecomposable=indec,
        absolutely_indecomposable=abs_indec,
    )


def count_indecomposable(quiver: Quiver, d, q: int, cap: int = DEFAULT_CAP) -> int:
    return classify_classes(quiver, d, q, cap=cap).indecomposable


def count_abs_indecomposable(quiver: Quiver, d, q: int, cap: int = DEFAULT_CAP) -> int:
    return classify_classes(quiver, d, q, cap=cap).absolutely_indecomposable


@dataclass(frozen=True)
class CountReport:
    """One (quiver, d, q) counting run; field names M/I/A follow the
    standard notation for total, indecomposable and absolutely
    indecomposable iso-class counts."""

    quiver_hash: str
    d: tuple[int, ...]
    q: int
    iso_classes: int
    indecomposable: int
    absolutely_indecomposable: int
    method: str

    def to_json_dict(self) -> dict:
        return {
            "quiver": self.quiver_hash,
            "d": list(self.d),
            "q": self.q,
            "M": self.iso_classes,
            "I": self.indecomposable,
            "A": self.absolutely_indecomposable,
            "method": self.method,
        }


def count_report(
    quiver: Quiver, d, q: int, cap: int = DEFAULT_CAP, cross_check: bool = False
) -> CountReport:
    d = quiver.check_dim(d)
    counts = classify_classes(quiver, d, q, cap=cap)
    method = "orbit-partition"
    if cross_check:
        by_burnside = count_iso_classes(quiver, d, q, cap=cap)
        if by_burnside != counts.iso_classes:
            raise ConsistencyError(
                f"orbit partition found {counts.iso_classes} classes, Burnside {by_burnside}"
            )
        method = "orbit-partition+burnside"
    return CountReport(
        quiver_hash=quiver.content_hash(),
        d=d,
        q=q,
        iso_classes=counts.iso_classes,
        indecomposable=counts.indecomposable,
        absolutely_indecomposable=counts.absolutely_indecomposable,
        method=method,
    )


# ---------------------------------------------------------------------------
# Kac polynomials by interpolation


def kac_polynomial(
    quiver: Quiver, d, cap: int = DEFAULT_CAP, a_fn=None
) -> ExactPolynomial:
    """The counting polynomial of absolutely indecomposable classes.

    Evaluates the count at the smallest prime powers, interpolates exactly,
    and verifies the result at two surplus prime powers.  If verification
    fails the degree bound is raised once; a second failure raises
    NonPolynomialBehavior carrying all evaluations.
    """
    d = quiver.check_dim(d)
    if not any(d):
        raise ValidationError("Kac polynomial needs a nonzero dimension vector")
    if a_fn is None:
        a_fn = lambda dd, qq: count_abs_indecomposable(quiver, dd, qq, cap=cap)
    degree_bound = max(0, quiver.expected_moduli_dim(d))
    evaluations: dict[int, int] = {}

    def value_at(node: int) -> int:
        if node not in evaluations:
            evaluations[node] = a_fn(d, node)
        return evaluations[node]

    def attempt(n_nodes: int) -> ExactPolynomial | None:
        stream = prime_powers()
        nodes = [next(stream) for _ in range(n_nodes)]
        checks = [next(stream), next(stream)]
        poly = lagrange_interpolate([(n, value_at(n)) for n in nodes])
        for node in checks:
            if poly(node) != value_at(node):
                return None
        return poly

    poly = attempt(degree_bound + 1)
    if poly is None:
        poly = attempt(degree_bound + 2)
    if poly is None:
        raise NonPolynomialBehavior(
            "non-polynomial behavior detected for the absolutely-indecomposable count",
            evaluations,
        )
    if not poly.has_integer_coefficients():
        raise TheoremViolation(
            f"interpolated count has non-integer coefficients: {poly.coeffs}"
        )
    return poly


# ---------------------------------------------------------------------------
# Galois descent


def galois_descent_I(quiver: Quiver, d, q: int, a_fn=None, cap: int = DEFAULT_CAP) -> int:
    """Indecomposable count from absolutely-indecomposable counts:

        I(d, q) = sum_{r | d} (1/r) sum_{m | r} mu(m) A(d/r, q^{r/m})

    The descent formula is never trusted standalone; callers compare it with
    the brute-force count (see check_galois_descent).
    """
    d = quiver.check_dim(d)
    if not any(d):
        raise ValidationError("descent needs a nonzero dimension vector")
    if a_fn is None:
        a_fn = lambda dd, qq: count_abs_indecomposable(quiver, dd, qq, cap=cap)
    g = 0
    for x in d:
        g = gcd(g, x)
    total = Fraction(0)
    for r in divisors(g):
        inner = 0
        d_over_r = tuple(x // r for x in d)
        for m in divisors(r):
            inner += moebius(m) * a_fn(d_over_r, q ** (r // m))
        total += Fraction(inner, r)
    if total.denominator != 1:
        raise ConsistencyError(f"descent sum is not an integer: {total}")
    return int(total)


def check_galois_descent(quiver: Quiver, d, q: int, cap: int = DEFAULT_CAP, a_fn=None) -> int:
    """Descent value, verified against the brute-force indecomposable count."""
    by_descent = galois_descent_I(quiver, d, q, a_fn=a_fn, cap=cap)
    by_force = count_indecomposable(quiver, d, q, cap=cap)
    if by_descent != by_force:
        raise ConsistencyError(
            f"Galois descent gives {by_descent}, brute force gives {by_force} "
            f"for d={tuple(d)}, q={q}"
        )
    return by_force


# ---------------------------------------------------------------------------
# the Krull-Schmidt generating identity


def hua_identity_check(quiver: Quiver, q: int, degree: int, cap: int = DEFAULT_CAP) -> Fraction:
    """Largest coefficient discrepancy, up to total degree ``degree``, between

        sum_d M_d(q) X^d   and   prod_{d != 0} (1 - X^d)^(-I_d(q)),

    with all counts computed by brute force.  The contract is zero.
    """
    nvars = len(quiver.vertices)
    dims = [m for m in monomials_up_to(nvars, degree) if any(m)]
    lhs_coeffs = {(0,) * nvars: 1}
    rhs = TruncatedSeries.one(nvars, degree)
    for dv in dims:
        lhs_coeffs[dv] = count_iso_classes(quiver, dv, q, cap=cap)
        indec = count_indecomposable(quiver, dv, q, cap=cap)
        rhs = rhs.mul(geometric_inverse_power(dv, indec, nvars, degree))
    lhs = TruncatedSeries(nvars, degree, lhs_coeffs)
    return lhs.max_abs_difference(rhs)
