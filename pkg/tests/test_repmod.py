import pytest

from conftest import brute_hom_dim
from preproj.cartan import cartan_data
from preproj.errors import RadicalUnavailable
from preproj.fields import PrimeField
from preproj.pathalg import build_algebra
from preproj.repmod import (
    auslander_reiten_translate,
    direct_sum,
    ext1_dim,
    generalized_simple,
    hom_space,
    in_fac,
    is_indecomposable,
    is_isomorphic,
    is_tau_rigid,
    locally_free_rank,
    minimal_projective_presentation,
    nakayama,
    nakayama_nu,
    projective_module,
    simple_module,
    structure_series,
    submodule,
    uniserial_module,
    zero_module,
)
from preproj.tautilt import vertex_ideal


def test_generalized_simple_shapes(algebras):
    eg1, eg2 = algebras["eg1"], algebras["eg2"]
    E1 = generalized_simple(eg1, 1)
    assert E1.dims == [2, 0]
    E2 = generalized_simple(eg2, 2)
    assert E2.dims == [0, 1]
    # c_i = 1 makes E_i the ordinary simple
    assert is_isomorphic(E2, simple_module(eg2, 2))
    assert uniserial_module(eg1, 1, 1).dims == [1, 0]


def test_hom_dims_with_oracle(algebras):
    eg1 = algebras["eg1"]
    E1 = generalized_simple(eg1, 1)
    P1 = projective_module(eg1, 1)
    P2 = projective_module(eg1, 2)
    assert hom_space(P1, E1).dim == 2 == brute_hom_dim(P1, E1)
    assert hom_space(P2, E1).dim == 0 == brute_hom_dim(P2, E1)
    assert hom_space(P1, zero_module(eg1)).dim == 0
    # materialized maps really intertwine: check one against the oracle count
    hb = hom_space(P1, P1)
    assert hb.dim == brute_hom_dim(P1, P1)


def test_materialized_homs_intertwine(algebras):
    from preproj.linalg import Matrix, Subspace
    for name in ("eg1", "eg2"):
        A = algebras[name]
        pairs = [
            (projective_module(A, 1), generalized_simple(A, 1)),
            (projective_module(A, 2), projective_module(A, 2)),
            (generalized_simple(A, 1), projective_module(A, 1)),
            (vertex_ideal(A, {1}).block(1), generalized_simple(A, 2)),
        ]
        for M, N in pairs:
            hb = hom_space(M, N)
            assert hb.dim == brute_hom_dim(M, N)
            flat = Subspace(
                sum(N.dims[v] * M.dims[v] for v in range(A.n)), A.field)
            for f in hb.maps:
                for a in A.quiver.arrows:
                    left = f[a.source].mul(M.act[a.index])
                    right = N.act[a.index].mul(f[a.target])
                    assert left.add(right.scale(A.field.from_int(-1))).is_zero()
                vec = []
                for v in range(1, A.n + 1):
                    for row in f[v].rows:
                        vec.extend(row)
                assert flat.add(vec)  # linearly independent family
            assert flat.dim == hb.dim


def test_yoneda(algebras):
    for name in ("eg1", "eg2", "g2"):
        A = algebras[name]
        mods = [projective_module(A, v) for v in range(1, A.n + 1)]
        mods += [generalized_simple(A, v) for v in range(1, A.n + 1)]
        for M in mods:
            for j in range(1, A.n + 1):
                assert hom_space(projective_module(A, j), M).dim == \
                    M.dims[j - 1]


def test_structure_series(algebras):
    eg1, eg2 = algebras["eg1"], algebras["eg2"]
    s = structure_series(projective_module(eg2, 1))
    assert [sum(l) for l in s.radical_layers] == [1, 2, 2, 1]
    assert s.radical_layers == [(1, 0), (1, 1), (1, 1), (1, 0)]
    soc1 = structure_series(projective_module(eg1, 1))
    # socle of e1 Pi in eg1 is S_2
    assert soc1.socle_layers[0] == (0, 1)
    simple = structure_series(simple_module(eg1, 1))
    assert simple.radical_layers == [(1, 0)]
    assert simple.socle_layers == [(1, 0)]
    assert simple.top == (1, 0)


def test_presentations(algebras):
    eg1, eg2 = algebras["eg1"], algebras["eg2"]
    for v in (1, 2):
        pres = minimal_projective_presentation(projective_module(eg1, v))
        assert pres.p0 == [v] and pres.p1 == []
    pres = minimal_projective_presentation(generalized_simple(eg1, 1))
    assert pres.p0 == [1] and pres.p1 == [2]
    pres2 = minimal_projective_presentation(generalized_simple(eg2, 1))
    assert pres2.p0 == [1] and pres2.p1 == [2, 2]


def test_tau_basics(algebras):
    for name in ("eg1", "eg2"):
        A = algebras[name]
        for v in range(1, A.n + 1):
            assert auslander_reiten_translate(projective_module(A, v)).is_zero
    eg1 = algebras["eg1"]
    tE1 = auslander_reiten_translate(generalized_simple(eg1, 1))
    assert tE1.total_dim == 2


def test_tau_of_ideal_blocks(algebras):
    # tau(e_i I_i) is the generalized simple E_i
    for name in ("eg1", "eg2", "g2"):
        A = algebras[name]
        for i in range(1, A.n + 1):
            blk = vertex_ideal(A, {i}).block(i)
            if blk is None:
                continue
            t = auslander_reiten_translate(blk)
            Ei = generalized_simple(A, i)
            assert is_isomorphic(t, Ei)
            # cross-check through the independent intertwiner count
            assert brute_hom_dim(t, Ei) == brute_hom_dim(Ei, Ei)


def test_nakayama(algebras):
    assert nakayama(algebras["eg1"]).sigma == (2, 1)
    assert nakayama(algebras["eg2"]).sigma == (1, 2)
    for name in ("eg1", "eg2", "g2", "a3", "b3"):
        A = algebras[name]
        nak = nakayama(A)
        for i in range(1, A.n + 1):
            si = nak.apply(i)
            assert A.quiver.symmetrizer[i] == A.quiver.symmetrizer[si]
            nu = nakayama_nu(generalized_simple(A, si))
            assert is_isomorphic(nu, generalized_simple(A, i))
            # nu(e_{sigma(i)} Pi) recovers e_i Pi
            nup = nakayama_nu(projective_module(A, si))
            assert is_isomorphic(nup, projective_module(A, i))


def test_ext1(algebras):
    eg1 = algebras["eg1"]
    E1 = generalized_simple(eg1, 1)
    E2 = generalized_simple(eg1, 2)
    P1 = projective_module(eg1, 1)
    assert ext1_dim(P1, E1) == 0
    assert ext1_dim(E1, E2) == ext1_dim(E2, E1)
    pi, _ = direct_sum(eg1, [P1, projective_module(eg1, 2)])
    assert ext1_dim(pi, pi) == 0


def test_ext1_symmetry_on_locally_free(algebras):
    for name in ("eg1", "eg2"):
        A = algebras[name]
        mods = []
        for i in range(1, A.n + 1):
            mods.append(generalized_simple(A, i))
            mods.append(projective_module(A, i))
            blk = vertex_ideal(A, {i}).block(i)
            if blk is not None:
                mods.append(blk)
        for M in mods:
            for N in mods:
                assert ext1_dim(M, N) == ext1_dim(N, M)


def test_locally_free_rank(algebras):
    eg1 = algebras["eg1"]
    for i in (1, 2):
        alpha = tuple(1 if j == i else 0 for j in range(1, 3))
        assert locally_free_rank(generalized_simple(eg1, i)) == alpha
    assert locally_free_rank(projective_module(eg1, 1)) == (1, 1)
    assert locally_free_rank(simple_module(eg1, 1)) is None
    assert locally_free_rank(zero_module(eg1)) == (0, 0)


def test_rank_additivity(algebras):
    # 0 -> e_i I_i -> e_i Pi -> E_i -> 0 has additive rank vectors
    for name in ("eg1", "eg2", "g2", "a3", "b3"):
        A = algebras[name]
        for i in range(1, A.n + 1):
            blk = vertex_ideal(A, {i}).block(i)
            if blk is None:
                continue
            r_sub = locally_free_rank(blk)
            r_mid = locally_free_rank(projective_module(A, i))
            r_quot = locally_free_rank(generalized_simple(A, i))
            assert r_sub is not None and r_mid is not None
            assert tuple(a + b for a, b in zip(r_sub, r_quot)) == r_mid


def test_dimension_identity(algebras):
    # dim E_i + dim E_{sigma(i)} + sum_j |c_ji| dim e_j Pi = 2 dim e_i Pi
    for name in ("eg1", "eg2", "g2", "a3", "b3"):
        A = algebras[name]
        nak = nakayama(A)
        pdims = [projective_module(A, j).total_dim for j in range(1, A.n + 1)]
        for i in range(1, A.n + 1):
            lhs = (generalized_simple(A, i).total_dim
                   + generalized_simple(A, nak.apply(i)).total_dim
                   + sum(abs(A.data.cartan[j, i]) * pdims[j - 1]
                         for j in range(1, A.n + 1) if j != i))
            assert lhs == 2 * pdims[i - 1]


def test_tau_rigidity(algebras):
    eg1 = algebras["eg1"]
    for i in (1, 2):
        assert is_tau_rigid(generalized_simple(eg1, i))
        assert is_tau_rigid(projective_module(eg1, i))
    both, _ = direct_sum(eg1, [generalized_simple(eg1, 1),
                               generalized_simple(eg1, 2)])
    assert not is_tau_rigid(both)
    # oracle: Hom(E_1, tau E_2) is nonzero by direct intertwiner count
    tE2 = auslander_reiten_translate(generalized_simple(eg1, 2))
    assert brute_hom_dim(generalized_simple(eg1, 1), tE2) > 0


def test_in_fac(algebras):
    eg1 = algebras["eg1"]
    P1 = projective_module(eg1, 1)
    E2 = generalized_simple(eg1, 2)
    assert in_fac(P1, P1)
    assert in_fac(P1, zero_module(eg1))
    # E_2 is not a quotient of copies of e_1 Pi (no homs land in it)
    assert not in_fac(P1, E2)
    assert brute_hom_dim(P1, E2) == 0


def test_isomorphism(algebras):
    eg1, eg2 = algebras["eg1"], algebras["eg2"]
    blk = vertex_ideal(eg1, {1}).block(1)
    assert is_isomorphic(blk, generalized_simple(eg1, 2))
    assert not is_isomorphic(projective_module(eg1, 1),
                             projective_module(eg1, 2))
    assert is_indecomposable(vertex_ideal(eg2, {2}).block(2))
    assert vertex_ideal(eg2, {2}).block(2).total_dim == 3


def test_indecomposability(algebras):
    eg1 = algebras["eg1"]
    assert is_indecomposable(generalized_simple(eg1, 1))
    two, _ = direct_sum(eg1, [simple_module(eg1, 1), simple_module(eg1, 1)])
    assert not is_indecomposable(two)
    assert not is_indecomposable(zero_module(eg1))


def test_radical_unavailable_small_prime():
    data = cartan_data([[2, -1], [-1, 2]], (2, 2))
    A = build_algebra(data, field=PrimeField(2))
    M, _ = direct_sum(A, [simple_module(A, 1), simple_module(A, 1)])
    with pytest.raises(RadicalUnavailable):
        is_indecomposable(M)


def test_submodule_roundtrip(algebras):
    eg1 = algebras["eg1"]
    P1 = projective_module(eg1, 1)
    rad = {}
    from preproj.repmod import radical_subspaces
    for v, sub in radical_subspaces(P1).items():
        rad[v] = list(sub.rows)
    R = submodule(P1, rad)
    assert R.total_dim == P1.total_dim - 1
    s = structure_series(R)
    assert [sum(l) for l in s.radical_layers] == [2, 1]
