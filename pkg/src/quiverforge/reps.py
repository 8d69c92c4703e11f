"""Representations of a quiver over a finite field.

Hom spaces are kernels of the usual commutation system, endomorphism rings
are enumerated exactly under a cap, and indecomposability is decided by the
nilpotent-or-invertible dichotomy: End(W) is local iff W is indecomposable,
in which case the radical is counted off the non-units.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import (
    CapExceeded,
    ConsistencyError,
    UndecidedAtCap,
    ValidationError,
    check_cap,
    DEFAULT_CAP,
)
from .ffield import Field, FqMatrix, grassmannian, in_rowspace, make_field
from .quiver import Quiver, iter_proper_subdims, pairing


class Representation:
    """Per-arrow matrix assignment of shapes d_head x d_tail."""

    __slots__ = ("quiver", "field", "d", "maps")

    def __init__(self, quiver: Quiver, field: Field, d, maps):
        self.quiver = quiver
        self.field = field
        self.d = quiver.check_dim(d)
        maps = tuple(maps)
        if len(maps) != len(quiver.arrows):
            raise ValidationError("one matrix per arrow required")
        for a, m in zip(quiver.arrows, maps):
            want = (self.d[quiver.vertex_index[a.head]], self.d[quiver.vertex_index[a.tail]])
            if (m.rows, m.cols) != want:
                raise ValidationError(
                    f"matrix for arrow {a.id!r} has shape {(m.rows, m.cols)}, expected {want}"
                )
            if m.field != field:
                raise ValidationError(f"matrix for arrow {a.id!r} lives over the wrong field")
        self.maps = maps

    @classmethod
    def zero(cls, quiver: Quiver, field: Field, d) -> "Representation":
        d = quiver.check_dim(d)
        maps = [
            FqMatrix.zeros(field, d[quiver.vertex_index[a.head]], d[quiver.vertex_index[a.tail]])
            for a in quiver.arrows
        ]
        return cls(quiver, field, d, maps)

    @classmethod
    def simple(cls, quiver: Quiver, field: Field, vertex: str) -> "Representation":
        d = tuple(1 if v == vertex else 0 for v in quiver.vertices)
        return cls.zero(quiver, field, d)

    def map_for(self, arrow_id: str) -> FqMatrix:
        return self.maps[self.quiver.arrow_index[arrow_id]]

    def total_dim(self) -> int:
        return sum(self.d)

    def entry_key(self) -> tuple[int, ...]:
        """Flat entry tuple in arrow-major, row-major order (the lex order)."""
        return tuple(x for m in self.maps for x in m.flat())

    def __eq__(self, other):
        return (
            isinstance(other, Representation)
            and self.quiver == other.quiver
            and self.field == other.field
            and self.d == other.d
            and self.maps == other.maps
        )

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.d, tuple(m.entries for m in self.maps)))

    def __repr__(self):
        return f"Representation(d={self.d}, q={self.field.q}, entries={self.entry_key()})"


def rep_space_dim(quiver: Quiver, d) -> int:
    d = quiver.check_dim(d)
    return sum(
        d[quiver.vertex_index[a.head]] * d[quiver.vertex_index[a.tail]]
        for a in quiver.arrows
    )


def all_representations(quiver: Quiver, field: Field, d, cap: int = DEFAULT_CAP):
    """All points of the representation space, lexicographic in entry order."""
    d = quiver.check_dim(d)
    shapes = [
        (d[quiver.vertex_index[a.head]], d[quiver.vertex_index[a.tail]])
        for a in quiver.arrows
    ]
    total = sum(r * c for r, c in shapes)
    check_cap(field.q**total, cap, "representation-space enumeration")
    for flat in itertools.product(field.elements(), repeat=total):
        maps = []
        pos = 0
        for r, c in shapes:
            maps.append(FqMatrix.from_flat(field, r, c, flat[pos : pos + r * c]))
            pos += r * c
        yield Representation(quiver, field, d, maps)


def _check_comparable(w1: Representation, w2: Representation) -> None:
    if w1.quiver != w2.quiver:
        raise ValidationError("representations live on different quivers")
    if w1.field != w2.field:
        raise ValidationError("representations live over different fields")


# ---------------------------------------------------------------------------
# Hom and Ext


@dataclass(frozen=True)
class HomSpace:
    """Basis of the space of morphisms W -> W2, as vertex-indexed tuples."""

    source_dim: tuple[int, ...]
    target_dim: tuple[int, ...]
    basis: tuple[tuple[FqMatrix, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def hom_space(w1: Representation, w2: Representation) -> HomSpace:
    """Kernel of (f_v) -> (f_head phi_a - phi'_a f_tail), by exact elimination."""
    _check_comparable(w1, w2)
    quiver, field = w1.quiver, w1.field
    n = len(quiver.vertices)
    # unknowns: entries of f_v (shape d2_v x d_v), vertex-major, row-major
    offsets = []
    pos = 0
    for v in range(n):
        offsets.append(pos)
        pos += w2.d[v] * w1.d[v]
    nvars = pos
    rows: list[list[int]] = []
    for idx, a in enumerate(quiver.arrows):
        t = quiver.vertex_index[a.tail]
        h = quiver.vertex_index[a.head]
        phi1 = w1.maps[idx]
        phi2 = w2.maps[idx]
        # equation block has shape d2_h x d1_t
        for i in range(w2.d[h]):
            for j in range(w1.d[t]):
                row = [0] * nvars
                # (f_h phi1)_ij = sum_k f_h[i,k] phi1[k,j]
                for k in range(w1.d[h]):
                    c = phi1.entries[k][j]
                    if c:
                        var = offsets[h] + i * w1.d[h] + k
                        row[var] = field.add(row[var], c)
                # -(phi2 f_t)_ij = -sum_k phi2[i,k] f_t[k,j]
                for k in range(w2.d[t]):
                    c = phi2.entries[i][k]
                    if c:
                        var = offsets[t] + k * w1.d[t] + j
                        row[var] = field.sub(row[var], c)
                rows.append(row)
    system = (
        FqMatrix(field, rows) if rows else FqMatrix.zeros(field, 0, nvars)
    )
    basis = []
    for vec in system.kernel_basis():
        fs = []
        for v in range(n):
            r, c = w2.d[v], w1.d[v]
            fs.append(FqMatrix.from_flat(field, r, c, vec[offsets[v] : offsets[v] + r * c]))
        basis.append(tuple(fs))
    return HomSpace(source_dim=w1.d, target_dim=w2.d, basis=tuple(basis))


def ext1_dim(w1: Representation, w2: Representation) -> int:
    """dim Ext^1 = dim Hom - <dim W, dim W2>; nonnegative by construction."""
    value = hom_space(w1, w2).dim - w1.quiver.euler_form(w1.d, w2.d)
    if value < 0:
        raise ConsistencyError("negative Ext dimension; Hom solver is broken")
    return value


def direct_sum(w1: Representation, w2: Representation) -> Representation:
    _check_comparable(w1, w2)
    quiver, field = w1.quiver, w1.field
    d = tuple(a + b for a, b in zip(w1.d, w2.d))
    maps = []
    for idx, a in enumerate(quiver.arrows):
        t = quiver.vertex_index[a.tail]
        h = quiver.vertex_index[a.head]
        m1, m2 = w1.maps[idx], w2.maps[idx]
        block = [[0] * (w1.d[t] + w2.d[t]) for _ in range(w1.d[h] + w2.d[h])]
        for i in range(m1.rows):
            for j in range(m1.cols):
                block[i][j] = m1.entries[i][j]
        for i in range(m2.rows):
            for j in range(m2.cols):
                block[w1.d[h] + i][w1.d[t] + j] = m2.entries[i][j]
        maps.append(FqMatrix(field, block) if block else FqMatrix.zeros(field, 0, w1.d[t] + w2.d[t]))
    return Representation(quiver, field, d, maps)


# ---------------------------------------------------------------------------
# endomorphism structure and indecomposability


def _iter_span(basis, field: Field, shapes, cap: int, what: str):
    """All linear combinations of the basis tuples, coefficients lexicographic.

    ``shapes`` gives the component shapes, needed to build the zero element.
    """
    k = len(basis)
    size = field.q**k
    zero = tuple(FqMatrix.zeros(field, r, c) for r, c in shapes)
    scanned = 0
    for coeffs in itertools.product(field.elements(), repeat=k):
        scanned += 1
        if scanned > cap:
            raise CapExceeded(what, size, cap)
        element = None
        for c, f in zip(coeffs, basis):
            if c == 0:
                continue
            scaled = tuple(m.scale(c) for m in f)
            element = scaled if element is None else tuple(x.add(y) for x, y in zip(element, scaled))
        yield element if element is not None else zero


def _is_unit(fs) -> bool:
    return all(m.is_invertible() for m in fs)


def _is_nilpotent_endo(fs) -> bool:
    return all(m.is_nilpotent() for m in fs)


def _is_idempotent(fs) -> bool:
    return all(m.mul(m) == m for m in fs)


def _is_identity(fs) -> bool:
    return all(m == FqMatrix.identity(m.field, m.rows) for m in fs)


def _is_zero_endo(fs) -> bool:
    return all(m.is_zero() for m in fs)


@dataclass(frozen=True)
class EndoStructure:
    """Shape of End(W): its dimension, radical, and residue field degree.

    For a decomposable W the ring is not local and the radical/residue data
    is reported as None rather than guessed.
    """

    dim_end: int
    is_local: bool
    dim_radical: int | None
    residue_degree: int | None


def scan_endomorphisms(w: Representation, cap: int = DEFAULT_CAP, early_exit: bool = False):
    """Walk End(W); returns (dim_end, is_local, unit_count or None).

    With ``early_exit`` the walk stops at the first witness of non-locality
    (an element neither nilpotent nor invertible, or a nontrivial
    idempotent), in which case the unit count is not available.
    """
    basis = hom_space(w, w).basis
    shapes = [(dv, dv) for dv in w.d]
    units = 0
    local = True
    for fs in _iter_span(basis, w.field, shapes, cap, "endomorphism-ring enumeration"):
        if _is_unit(fs):
            units += 1
        elif not _is_nilpotent_endo(fs):
            local = False
        if local and _is_idempotent(fs) and not (_is_zero_endo(fs) or _is_identity(fs)):
            local = False
        if not local and early_exit:
            return len(basis), False, None
    return len(basis), local, units


def endo_structure(w: Representation, cap: int = DEFAULT_CAP) -> EndoStructure:
    if not any(w.d):
        # the zero representation: decomposable by convention (empty sum)
        return EndoStructure(dim_end=0, is_local=False, dim_radical=None, residue_degree=None)
    dim_end, local, units = scan_endomorphisms(w, cap=cap, early_exit=False)
    if not local:
        return EndoStructure(dim_end=dim_end, is_local=False, dim_radical=None, residue_degree=None)
    q = w.field.q
    non_units = q**dim_end - units
    # in a local ring the non-units are the radical, a subspace
    dim_radical = 0
    size = 1
    while size < non_units:
        size *= q
        dim_radical += 1
    if size != non_units:
        raise ConsistencyError(
            f"non-unit count {non_units} is not a power of q={q}; End scan is inconsistent"
        )
    residue = dim_end - dim_radical
    if residue < 1:
        raise ConsistencyError("residue degree must be at least 1")
    return EndoStructure(
        dim_end=dim_end, is_local=True, dim_radical=dim_radical, residue_degree=residue
    )


def is_indecomposable(w: Representation, cap: int = DEFAULT_CAP) -> bool:
    """End(W) local, i.e. 0 and 1 are its only idempotents."""
    if not any(w.d):
        return False
    _, local, _ = scan_endomorphisms(w, cap=cap, early_exit=True)
    return local


def is_absolutely_indecomposable(w: Representation, cap: int = DEFAULT_CAP) -> bool:
    """Indecomposable with residue field equal to the ground field."""
    if not any(w.d):
        return False
    structure = endo_structure(w, cap=cap)
    return structure.is_local and structure.residue_degree == 1


def aut_order(w: Representation, cap: int = DEFAULT_CAP) -> int:
    """|Aut(W)|: unit count of the full endomorphism ring."""
    _, _, units = scan_endomorphisms(w, cap=cap, early_exit=False)
    return units


def are_isomorphic(w1: Representation, w2: Representation, cap: int = DEFAULT_CAP) -> bool:
    """Search Hom(W1, W2) exhaustively for an invertible element."""
    _check_comparable(w1, w2)
    if w1.d != w2.d:
        return False
    basis = hom_space(w1, w2).basis
    size = w1.field.q ** len(basis)
    if size > cap:
        raise UndecidedAtCap("isomorphism search undecided at cap", size, cap)
    shapes = list(zip(w2.d, w1.d))
    for fs in _iter_span(basis, w1.field, shapes, cap, "isomorphism search"):
        if _is_unit(fs):
            return True
    return False


def base_change(w: Representation, m: int) -> Representation:
    """Extend scalars along the canonical inclusion F_q into F_{q^m}."""
    if m < 1:
        raise ValidationError("extension degree must be >= 1")
    if m == 1:
        return w
    small = w.field
    big = make_field(small.p, small.k * m)
    table = small.embed_into(big)
    maps = [
        FqMatrix(big, [[table[x] for x in row] for row in mat.entries])
        if mat.rows
        else FqMatrix.zeros(big, mat.rows, mat.cols)
        for mat in w.maps
    ]
    return Representation(w.quiver, big, w.d, maps)


# ---------------------------------------------------------------------------
# stability


@dataclass(frozen=True)
class SubrepWitness:
    dims: tuple[int, ...]
    subspaces: tuple[FqMatrix, ...]
    theta_pairing: int


@dataclass(frozen=True)
class StabilityVerdict:
    kind: str  # "stable" | "semistable-not-stable" | "unstable"
    witness: SubrepWitness | None

    @property
    def is_semistable(self) -> bool:
        return self.kind != "unstable"


def _subspace_tuples(w: Representation, sub_dims, cap: int):
    field = w.field
    per_vertex = []
    total = 1
    for dv, kv in zip(w.d, sub_dims):
        choices = list(grassmannian(field, dv, kv))
        total *= len(choices)
        check_cap(total, cap, "subspace enumeration")
        per_vertex.append(choices)
    return itertools.product(*per_vertex)


def _is_subrepresentation(w: Representation, subspaces) -> bool:
    quiver = w.quiver
    for idx, a in enumerate(quiver.arrows):
        t = quiver.vertex_index[a.tail]
        h = quiver.vertex_index[a.head]
        phi = w.maps[idx]
        target = subspaces[h]
        for basis_vec in subspaces[t].entries:
            if not in_rowspace(phi.apply(basis_vec), target):
                return False
    return True


def stability_verdict(w: Representation, theta, cap: int = DEFAULT_CAP) -> StabilityVerdict:
    """Classify W against theta by enumerating all proper subrepresentations.

    Requires theta.dim W = 0.  The witness is the lexicographically first
    violating subrepresentation (dimension vectors in lex order, canonical
    subspace tuples in enumeration order); for the semistable-not-stable
    verdict it is the first tight one.
    """
    theta = w.quiver.check_vector(theta, name="stability parameter")
    if pairing(theta, w.d) != 0:
        raise ValidationError("stability verdicts need theta . dim W = 0")
    first_tight: SubrepWitness | None = None
    for sub_dims in iter_proper_subdims(w.d):
        value = pairing(theta, sub_dims)
        if value > 0:
            continue
        for subspaces in _subspace_tuples(w, sub_dims, cap):
            if not _is_subrepresentation(w, subspaces):
                continue
            witness = SubrepWitness(dims=sub_dims, subspaces=tuple(subspaces), theta_pairing=value)
            if value < 0:
                return StabilityVerdict(kind="unstable", witness=witness)
            if first_tight is None:
                first_tight = witness
            break  # one witness per dimension vector is enough for tightness
    if first_tight is not None:
        return StabilityVerdict(kind="semistable-not-stable", witness=first_tight)
    return StabilityVerdict(kind="stable", witness=None)
