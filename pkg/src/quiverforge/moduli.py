"""Moment-map level sets for the doubled quiver and the point-count
identities they satisfy.

Sign convention: the moment value at a vertex v is

    value_v = sum_{head(a) = v} X_a X_{a*}  -  sum_{tail(a) = v} X_{a*} X_a

over the unstarred half of the arrows.  The opposite grouping amounts to
replacing eta by -eta; generic stability parameters come in +/- pairs, so
every check here is insensitive to the choice.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ConsistencyError,
    SmallCharacteristic,
    TheoremViolation,
    ValidationError,
    DEFAULT_CAP,
)
from .ffield import FqMatrix, g_order
from .quiver import Quiver, is_generic, is_indivisible
from .reps import Representation, all_representations, ext1_dim, is_indecomposable
from .counting import count_abs_indecomposable, field_from_order
from .series import ExactPolynomial


@dataclass(frozen=True)
class MomentValue:
    """Per-vertex square matrices with vanishing total trace."""

    values: tuple[FqMatrix, ...]

    def total_trace(self) -> int:
        field = self.values[0].field
        acc = 0
        for m in self.values:
            acc = field.add(acc, m.trace())
        return acc


def _require_doubled(w: Representation) -> None:
    if not w.quiver.is_doubled:
        raise ValidationError("moment map needs a representation of a doubled quiver")


def moment_map(w: Representation) -> MomentValue:
    _require_doubled(w)
    quiver, field = w.quiver, w.field
    values = [FqMatrix.zeros(field, dv, dv) for dv in w.d]
    for a in quiver.forward_arrows():
        x = w.map_for(a.id)
        x_star = w.map_for(quiver.star(a.id))
        h = quiver.vertex_index[a.head]
        t = quiver.vertex_index[a.tail]
        values[h] = values[h].add(x.mul(x_star))
        values[t] = values[t].sub(x_star.mul(x))
    value = MomentValue(values=tuple(values))
    if any(w.d) and value.total_trace() != 0:
        raise ConsistencyError("moment value escaped the trace-zero subalgebra")
    return value


def satisfies_relations(w: Representation, eta) -> bool:
    """Whether the moment value is (eta_v mod p) times the identity, vertexwise."""
    _require_doubled(w)
    eta = w.quiver.check_vector(eta, name="deformation parameter")
    field = w.field
    value = moment_map(w)
    for dv, ev, m in zip(w.d, eta, value.values):
        target = FqMatrix.identity(field, dv).scale(ev % field.p)
        if m != target:
            return False
    return True


def trace_obstruction(eta, d, p: int) -> bool:
    """True when eta . d vanishes mod p; otherwise the level set is empty."""
    if len(eta) != len(d):
        raise ValidationError("eta and d are indexed by different vertex sets")
    return sum(int(e) * int(x) for e, x in zip(eta, d)) % p == 0


def _doubled(quiver: Quiver) -> Quiver:
    return quiver if quiver.is_doubled else quiver.double()


def level_set_points(quiver: Quiver, d, eta, q: int, cap: int = DEFAULT_CAP):
    """All doubled representations satisfying the deformed relations."""
    doubled = _doubled(quiver)
    field = field_from_order(q)
    eta = doubled.check_vector(eta, name="deformation parameter")
    for w in all_representations(doubled, field, d, cap=cap):
        if satisfies_relations(w, eta):
            yield w


def enumerate_level_set(quiver: Quiver, d, eta, q: int, cap: int = DEFAULT_CAP) -> int:
    return sum(1 for _ in level_set_points(quiver, d, eta, q, cap=cap))


def moduli_point_count(quiver: Quiver, d, theta, q: int, cap: int = DEFAULT_CAP) -> int:
    """|level set| / |G_d|, the rational point count of the symplectic quotient.

    Exactness of the division is the empirical stand-in for "characteristic
    large enough"; a remainder raises SmallCharacteristic.
    """
    if quiver.is_doubled:
        raise ValidationError("pass the undoubled quiver; doubling is internal here")
    d = quiver.check_dim(d)
    theta = quiver.check_vector(theta, name="stability parameter")
    if not is_generic(theta, d):
        raise ValidationError(f"theta={theta} is not generic for d={d}")
    level = enumerate_level_set(quiver, d, theta, q, cap=cap)
    order = g_order(d, q)
    points, rem = divmod(level, order)
    if rem:
        raise SmallCharacteristic(
            f"level-set count {level} is not divisible by |G_d| = {order}: "
            "characteristic too small or theta not generic in this characteristic"
        )
    return points


@dataclass(frozen=True)
class CbvdbCheck:
    """One instance of the point-count identity |X(F_q)| = q^e * A(q)."""

    holds: bool
    q: int
    e: int
    point_count: int
    abs_indecomposable: int
    in_theorem_scope: bool

    @property
    def expected(self) -> int:
        return self.q**self.e * self.abs_indecomposable


def cbvdb_identity_check(
    quiver: Quiver, d, theta, q: int, cap: int = DEFAULT_CAP
) -> CbvdbCheck:
    """Compare the moduli point count with q^e times the absolutely
    indecomposable count; both sides brute force."""
    d = quiver.check_dim(d)
    if not is_indivisible(d):
        raise ValidationError(f"d={d} is divisible; the identity needs gcd(d) = 1")
    points = moduli_point_count(quiver, d, theta, q, cap=cap)
    e = quiver.expected_moduli_dim(d)
    if e < 0:
        raise ValidationError(f"expected moduli dimension is negative for d={d}")
    abs_count = count_abs_indecomposable(quiver, d, q, cap=cap)
    loop_free = all(quiver.loops_at(i) == 0 for i in range(len(quiver.vertices)))
    return CbvdbCheck(
        holds=(points == q**e * abs_count),
        q=q,
        e=e,
        point_count=points,
        abs_indecomposable=abs_count,
        in_theorem_scope=loop_free,
    )


@dataclass(frozen=True)
class LiftingCheck:
    """Fiber profile of the projection from the theta-level set back to the
    plain representation space: q^(dim Ext^1(W, W)) over indecomposables,
    empty over everything else."""

    holds: bool
    level_count: int
    fibers_total: int
    counterexample: tuple[int, ...] | None  # entry key of the offending W


def lifting_fiber_check(
    quiver: Quiver, d, theta, q: int, cap: int = DEFAULT_CAP
) -> LiftingCheck:
    if quiver.is_doubled:
        raise ValidationError("pass the undoubled quiver; doubling is internal here")
    d = quiver.check_dim(d)
    theta = quiver.check_vector(theta, name="stability parameter")
    if not is_generic(theta, d):
        raise ValidationError(f"theta={theta} is not generic for d={d}")
    field = field_from_order(q)
    n_forward = len(quiver.arrows)

    fibers: dict[tuple[int, ...], int] = {}
    level_count = 0
    for x in level_set_points(quiver, d, theta, q, cap=cap):
        level_count += 1
        key = tuple(v for m in x.maps[:n_forward] for v in m.flat())
        fibers[key] = fibers.get(key, 0) + 1

    fibers_total = sum(fibers.values())
    counterexample = None
    holds = fibers_total == level_count
    for w in all_representations(quiver, field, d, cap=cap):
        observed = fibers.get(w.entry_key(), 0)
        if is_indecomposable(w, cap=cap):
            expected = q ** ext1_dim(w, w)
        else:
            expected = 0
        if observed != expected:
            holds = False
            counterexample = w.entry_key()
            break
    return LiftingCheck(
        holds=holds,
        level_count=level_count,
        fibers_total=fibers_total,
        counterexample=counterexample,
    )


@dataclass(frozen=True)
class BettiReport:
    """Even-degree Betti numbers read off a counting polynomial."""

    e: int
    betti: tuple[int, ...]
    scope: str  # "theorem" when Q is loop-free and d indivisible, else "heuristic"


def betti_from_kac(a: ExactPolynomial, e: int, in_theorem_scope: bool = True) -> BettiReport:
    """b_{2e-2i} = coefficient of q^i; odd Betti numbers vanish.

    Raises TheoremViolation on negative or non-integer coefficients (the
    positivity theorem guarantees natural coefficients in scope).
    """
    if e < 0:
        raise ValidationError("half-dimension e must be nonnegative")
    if a.degree > e:
        raise ValidationError(
            f"polynomial degree {a.degree} exceeds the half-dimension {e}"
        )
    if not a.has_integer_coefficients():
        raise TheoremViolation(f"non-integer coefficients: {a.coeffs}")
    coeffs = a.integer_coefficients()
    if any(c < 0 for c in coeffs):
        raise TheoremViolation(f"negative coefficients: {coeffs}")
    betti = [0] * (2 * e + 1)
    for i, c in enumerate(coeffs):
        betti[2 * e - 2 * i] = c
    return BettiReport(
        e=e,
        betti=tuple(betti),
        scope="theorem" if in_theorem_scope else "heuristic",
    )
