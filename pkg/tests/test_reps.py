import itertools
from functools import reduce

import pytest

from quiverforge import (
    FqMatrix,
    Representation,
    UndecidedAtCap,
    ValidationError,
    all_representations,
    are_isomorphic,
    base_change,
    direct_sum,
    endo_structure,
    ext1_dim,
    hom_space,
    is_absolutely_indecomposable,
    is_indecomposable,
    iso_class_representatives,
    make_field,
    stability_verdict,
)
from quiverforge.ffield import all_matrices


def rep(quiver, field, d, rows_per_arrow):
    return Representation(quiver, field, d, [FqMatrix(field, rows) for rows in rows_per_arrow])


# -- Hom / Ext


def test_hom_dims_on_kronecker(kron2, f2):
    s1 = Representation.simple(kron2, f2, "1")
    s2 = Representation.simple(kron2, f2, "2")
    assert hom_space(s1, s2).dim == 0
    assert hom_space(s1, s1).dim == 1
    assert hom_space(s2, s2).dim == 1


def test_end_j2_matches_direct_commutant_count(jordan, f2):
    nilpotent = FqMatrix(f2, [[0, 1], [0, 0]])
    w = Representation(jordan, f2, (2,), [nilpotent])
    # oracle: brute-force the commutant of the single matrix
    commuting = sum(
        1 for f in all_matrices(f2, 2, 2) if f.mul(nilpotent) == nilpotent.mul(f)
    )
    assert commuting == 4  # q^2, a 2-dimensional algebra
    assert hom_space(w, w).dim == 2


def test_hom_basis_elements_intertwine(kron2, f3):
    w1 = rep(kron2, f3, (2, 1), [[[1, 0]], [[0, 1]]])
    w2 = rep(kron2, f3, (1, 1), [[[1]], [[2]]])
    space = hom_space(w1, w2)
    for fs in space.basis:
        for idx, a in enumerate(kron2.arrows):
            t = kron2.vertex_index[a.tail]
            h = kron2.vertex_index[a.head]
            assert fs[h].mul(w1.maps[idx]) == w2.maps[idx].mul(fs[t])


def test_hom_rejects_mismatched_inputs(kron2, a2, f2, f3):
    w_kron = Representation.zero(kron2, f2, (1, 1))
    w_a2 = Representation.zero(a2, f2, (1, 1))
    with pytest.raises(ValidationError):
        hom_space(w_kron, w_a2)
    w_f3 = Representation.zero(kron2, f3, (1, 1))
    with pytest.raises(ValidationError):
        hom_space(w_kron, w_f3)


def test_ext_examples(kron2, jordan, f2):
    s1 = Representation.simple(kron2, f2, "1")
    s2 = Representation.simple(kron2, f2, "2")
    assert ext1_dim(s1, s2) == 2
    assert ext1_dim(s2, s1) == 0
    one_dim = rep(jordan, f2, (1,), [[[0]]])
    assert ext1_dim(one_dim, one_dim) == 1


# -- direct sums and isomorphism


def test_direct_sum_examples(kron2, jordan, f2):
    s1 = Representation.simple(kron2, f2, "1")
    s2 = Representation.simple(kron2, f2, "2")
    w = direct_sum(s1, s2)
    assert w.d == (1, 1)
    assert all(m.is_zero() for m in w.maps)

    j0 = rep(jordan, f2, (1,), [[[0]]])
    j1 = rep(jordan, f2, (1,), [[[1]]])
    assert direct_sum(j0, j1).maps[0].entries == ((0, 0), (0, 1))

    zero = Representation.zero(jordan, f2, (0,))
    assert direct_sum(j1, zero) == j1


def test_conjugate_matrices_are_isomorphic(jordan, f3):
    m = FqMatrix(f3, [[1, 1], [0, 2]])
    g = FqMatrix(f3, [[1, 2], [1, 1]])
    w1 = Representation(jordan, f3, (2,), [m])
    w2 = Representation(jordan, f3, (2,), [g.mul(m).mul(g.inverse())])
    assert are_isomorphic(w1, w2)


def test_jordan_block_not_isomorphic_to_semisimple(jordan, f2):
    j2 = rep(jordan, f2, (2,), [[[0, 1], [0, 0]]])
    diag = Representation.zero(jordan, f2, (2,))
    assert not are_isomorphic(j2, diag)


def test_zero_reps_isomorphic(kron2, f2):
    assert are_isomorphic(
        Representation.zero(kron2, f2, (1, 1)), Representation.zero(kron2, f2, (1, 1))
    )


def test_isomorphism_undecided_at_cap(jordan, f2):
    w = Representation.zero(jordan, f2, (2,))
    with pytest.raises(UndecidedAtCap):
        are_isomorphic(w, w, cap=3)


# -- endomorphism structure


def test_endo_structure_examples(jordan, kron2, f2, f3):
    j2 = rep(jordan, f3, (2,), [[[1, 1], [0, 1]]])
    s = endo_structure(j2)
    assert (s.dim_end, s.dim_radical, s.residue_degree, s.is_local) == (2, 1, 1, True)

    companion = rep(jordan, f2, (2,), [[[0, 1], [1, 1]]])
    s = endo_structure(companion)
    assert (s.dim_end, s.dim_radical, s.residue_degree, s.is_local) == (2, 0, 2, True)

    s1 = Representation.simple(kron2, f2, "1")
    s = endo_structure(s1)
    assert (s.dim_end, s.dim_radical, s.residue_degree) == (1, 0, 1)

    split = rep(jordan, f2, (2,), [[[0, 0], [0, 1]]])
    s = endo_structure(split)
    assert not s.is_local
    assert s.dim_radical is None and s.residue_degree is None


def test_indecomposability_examples(jordan, f2):
    j2 = rep(jordan, f2, (2,), [[[0, 1], [0, 0]]])
    assert is_indecomposable(j2) and is_absolutely_indecomposable(j2)
    companion = rep(jordan, f2, (2,), [[[0, 1], [1, 1]]])
    assert is_indecomposable(companion)
    assert not is_absolutely_indecomposable(companion)
    split = rep(jordan, f2, (2,), [[[0, 0], [0, 1]]])
    assert not is_indecomposable(split)


# -- base change


def test_base_change_examples(jordan, f2):
    companion = rep(jordan, f2, (2,), [[[0, 1], [1, 1]]])
    assert base_change(companion, 1) is companion
    assert not is_indecomposable(base_change(companion, 2))  # splits over F_4
    j2 = rep(jordan, f2, (2,), [[[0, 1], [0, 0]]])
    assert is_indecomposable(base_change(j2, 2))


def test_base_change_preserves_hom_dimension(kron2, f2):
    w = rep(kron2, f2, (1, 1), [[[1]], [[0]]])
    assert hom_space(w, w).dim == hom_space(base_change(w, 2), base_change(w, 2)).dim


@pytest.mark.parametrize("quiver_name,dims", [("jordan", [(1,), (2,)]), ("kron2", [(1, 0), (0, 1), (1, 1)])])
def test_absolute_indecomposability_vs_base_change(quiver_name, dims, jordan, kron2, f2):
    # total dimension <= 2 over F_2, exhaustively
    quiver = jordan if quiver_name == "jordan" else kron2
    for d in dims:
        for w in all_representations(quiver, f2, d):
            if not any(w.d):
                continue
            structure = endo_structure(w)
            claim = is_absolutely_indecomposable(w)
            if structure.is_local:
                stays = all(
                    is_indecomposable(base_change(w, m))
                    for m in range(1, structure.dim_end + 1)
                )
                assert claim == stays
            else:
                assert not claim


# -- stability


def test_kronecker_stability_examples(kron2, f2):
    w = rep(kron2, f2, (1, 1), [[[1]], [[0]]])
    assert stability_verdict(w, (-1, 1)).kind == "stable"

    zero = Representation.zero(kron2, f2, (1, 1))
    verdict = stability_verdict(zero, (-1, 1))
    assert verdict.kind == "unstable"
    assert verdict.witness.dims == (1, 0)
    assert verdict.witness.theta_pairing == -1

    assert stability_verdict(w, (0, 0)).is_semistable


def test_stability_requires_degree_zero(kron2, f2):
    w = Representation.zero(kron2, f2, (1, 1))
    with pytest.raises(ValidationError):
        stability_verdict(w, (1, 1))


def test_semistable_not_stable_witness(kron2, f3):
    # theta = 0 makes every proper subrep tight
    w = rep(kron2, f3, (1, 1), [[[1]], [[1]]])
    verdict = stability_verdict(w, (0, 0))
    assert verdict.kind == "semistable-not-stable"
    assert verdict.witness.theta_pairing == 0


def test_stability_subspace_cap(kron2, f3):
    from quiverforge import CapExceeded

    w = Representation.zero(kron2, f3, (2, 2))
    with pytest.raises(CapExceeded):
        stability_verdict(w, (1, -1), cap=1)


@pytest.mark.parametrize("q", [2, 3])
def test_stable_implies_indecomposable(kron2, q):
    field = make_field(q)
    for w in all_representations(kron2, field, (1, 1)):
        if stability_verdict(w, (-1, 1)).kind == "stable":
            assert is_indecomposable(w)


# -- Krull-Schmidt at desk scale


def _multisets_summing_to(parts, target, start=0):
    """Multisets (with repetition) of indexed parts whose dims sum to target."""
    if all(x == 0 for x in target):
        yield ()
        return
    for i in range(start, len(parts)):
        dims = parts[i][0]
        if any(a > b for a, b in zip(dims, target)):
            continue
        remaining = tuple(b - a for a, b in zip(dims, target))
        for rest in _multisets_summing_to(parts, remaining, i):
            yield (i,) + rest


@pytest.mark.parametrize("quiver_name", ["jordan", "a2", "kron2"])
def test_krull_schmidt_total_dim_three(quiver_name, jordan, a2, kron2, f2):
    quiver = {"jordan": jordan, "a2": a2, "kron2": kron2}[quiver_name]
    n = len(quiver.vertices)
    all_dims = [
        d
        for d in itertools.product(range(4), repeat=n)
        if 1 <= sum(d) <= 3
    ]
    indec_parts = []
    classes = {}
    for d in all_dims:
        classes[d] = iso_class_representatives(quiver, d, 2)
        for w in classes[d]:
            if is_indecomposable(w):
                indec_parts.append((d, w))
    for d in all_dims:
        for w in classes[d]:
            matches = []
            for combo in _multisets_summing_to(indec_parts, d):
                total = reduce(direct_sum, (indec_parts[i][1] for i in combo))
                if are_isomorphic(w, total):
                    matches.append(combo)
            assert len(matches) == 1, (
                f"{quiver_name} d={d} class {w.entry_key()} has {len(matches)} decompositions"
            )
