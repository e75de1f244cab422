from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from lch.catalog import chekanov_knot, flying_saucer, flying_saucer_two_copy
from lch.homology import (BasedChainComplex, GradedMap, LaurentPoly, dualize,
                          euler_characteristic, homology_field, homology_integral,
                          mapping_cone, poincare_chekanov)
from lch.linalg import Matrix
from lch.linearization import enumerate_augmentations, linearize
from lch.randomized import random_chain_map, random_complex, random_integral_complex
from lch.rings import QQ, Z2, ZZ, GradingGroup, integers_mod

ZG = GradingGroup(0)
seeds = st.integers(0, 2**32 - 1)


def chekanov_complex():
    dga = chekanov_knot()
    return linearize(dga, enumerate_augmentations(dga)[0])


def test_chekanov_dims_and_polynomial():
    H = homology_field(chekanov_complex())
    assert H.dims() == {-2: 1, 1: 1, 2: 1}
    P = poincare_chekanov(H)
    assert P == LaurentPoly({-2: 1, 1: 1, 2: 1})
    assert str(P) == "t^-2 + t + t^2"


def test_flying_saucer_homology():
    for n in range(1, 7):
        C = linearize(flying_saucer(n))
        assert homology_field(C).dims() == {n: 1}
        Hz = homology_integral(linearize(flying_saucer(n, ring=ZZ)))
        assert Hz.dims() == {n: 1} and Hz.torsion == {}


def test_zero_complex():
    Z = BasedChainComplex(Z2, ZG, {})
    assert homology_field(Z).dims() == {}
    assert poincare_chekanov(homology_field(Z)) == 0
    assert str(poincare_chekanov(homology_field(Z))) == "0"
    assert dualize(Z, 3).is_zero()
    assert euler_characteristic(Z) == 0


def test_integral_torsion():
    C = BasedChainComplex.from_dict(ZZ, ZG, [("a", 1), ("b", 0)], {"a": {"b": 2}})
    H = homology_integral(C)
    assert H.dims() == {} and H.torsion == {0: [2]}
    assert homology_field(C.with_ring(QQ)).dims() == {}
    assert homology_field(C.with_ring(Z2)).dims() == {0: 1, 1: 1}


def test_chekanov_lifted_to_integers():
    C = chekanov_complex()
    Cz = BasedChainComplex.from_dict(ZZ, ZG, C.generators(), {
        k: {t: 1 for t in v} for k, v in C.boundary_dict().items()})
    Hz = homology_integral(Cz)
    assert Hz.dims() == homology_field(C).dims()
    assert Hz.dims() == homology_field(Cz.with_ring(QQ)).dims()


def test_ring_errors():
    with pytest.raises(ValueError):
        homology_field(linearize(flying_saucer(2, ring=ZZ)))
    with pytest.raises(ValueError):
        homology_integral(chekanov_complex())
    H = homology_field(chekanov_complex().relabeled(str))
    H.grading = GradingGroup(4)
    with pytest.raises(ValueError):
        poincare_chekanov(H)


def test_dualize_examples():
    D = dualize(chekanov_complex(), 1)
    assert homology_field(D).dims() == {-3: 1, -2: 1, 1: 1}
    assert "p7" in D.labels()
    F = dualize(linearize(flying_saucer(3)), 3)
    assert F.generators() == [("c*", -2)]


def test_dualize_pairing_entrywise():
    C = chekanov_complex()
    D = dualize(C, 1)
    dq, dp = C.total_matrix(), D.total_matrix()
    for q in C.labels():
        for q2 in C.labels():
            p = "p" + q[1:]
            p2 = "p" + q2[1:]
            # <dp p, q2> = <p, dq q2>
            assert dp[D.locate(p2)[2], D.locate(p)[2]] == dq[C.locate(q)[2], C.locate(q2)[2]]


@given(seeds)
def test_dualize_dims_relabel(seed):
    rng = random.Random(seed)
    C = random_complex(rng, Z2, degrees=range(-1, 4))
    n = rng.randint(0, 4)
    HC = homology_field(C).dims()
    assert homology_field(dualize(C, n)).dims() == {n - 2 - k: v for k, v in
                                                   sorted(HC.items(), reverse=True)}


def test_cone_of_identity_is_acyclic():
    C = chekanov_complex()
    D = C.shifted(-1, lambda l: l + "'")
    f = GradedMap(C, D, Matrix.identity(Z2, C.size))
    assert f.is_chain_map()
    assert homology_field(mapping_cone(f)).dims() == {}


def test_cone_of_zero_is_direct_sum():
    C = chekanov_complex()
    D = linearize(flying_saucer(3)).relabeled(lambda l: "d" + l)
    K = mapping_cone(GradedMap.zero(C, D))
    expected = dict(homology_field(C).dims())
    for k, v in homology_field(D).dims().items():
        expected[k] = expected.get(k, 0) + v
    assert homology_field(K).dims() == expected


def test_cone_of_rho_in_two_copy_fixture():
    data = flying_saucer_two_copy(3)
    assert homology_field(mapping_cone(data.rho)).dims() == {-1: 1}


def test_cone_rejects_non_chain_map_and_shared_labels():
    C = BasedChainComplex.from_dict(Z2, ZG, [("a", 1), ("b", 0)], {"a": {"b": 1}})
    D = BasedChainComplex.from_dict(Z2, ZG, [("x", 0), ("y", -1)], {})
    with pytest.raises(ValueError):
        mapping_cone(GradedMap.from_dict(C, D, {"b": {"y": 1}}))
    with pytest.raises(ValueError):
        mapping_cone(GradedMap.zero(C, C))


def test_cone_sign_convention():
    C = BasedChainComplex.from_dict(ZZ, ZG, [("a", 1), ("b", 0)], {"a": {"b": 1}})
    D = BasedChainComplex.from_dict(ZZ, ZG, [("x", 0), ("y", -1)], {"x": {"y": 1}})
    f = GradedMap.from_dict(C, D, {"a": {"x": 1}, "b": {"y": 1}})
    K = mapping_cone(f)
    assert K.boundary_dict() == {"a": {"x": 1, "b": -1}, "x": {"y": 1}, "b": {"y": 1}}


def test_euler_characteristic():
    C = chekanov_complex()
    chains = sum((-1) ** (k % 2) * C.dim(k) for k in C.degrees())
    assert euler_characteristic(C) == chains == 1
    for n in range(1, 6):
        assert euler_characteristic(linearize(flying_saucer(n))) == (-1) ** n
    odd = BasedChainComplex.from_dict(Z2, GradingGroup(3), [("a", 1)], {})
    with pytest.raises(ValueError):
        euler_characteristic(odd)


def test_laurent_printing():
    assert str(LaurentPoly({0: 1, 3: 2, 4: 1})) == "1 + 2t^3 + t^4"
    assert str(LaurentPoly({-1: -1, 2: 1})) == "-t^-1 + t^2"
    assert LaurentPoly({1: 1}) * LaurentPoly({-1: 1}) == LaurentPoly({0: 1})
    assert LaurentPoly({0: 0}).coeffs == {}


def test_cyclic_grading_homology():
    G = GradingGroup(2)
    C = BasedChainComplex.from_dict(Z2, G, [("a", 1), ("b", 0), ("c", 3)], {"a": {"b": 1}})
    H = homology_field(C)
    assert H.dims() == {1: 1} and H[3] == 1


@given(seeds)
def test_field_dims_equal_integral_free_ranks(seed):
    rng = random.Random(seed)
    C = random_integral_complex(rng)
    assert homology_field(C.with_ring(QQ)).dims() == homology_integral(C).dims()
    for fs in homology_integral(C).torsion.values():
        assert all(x > 1 for x in fs)
        assert all(b % a == 0 for a, b in zip(fs, fs[1:]))


def cone_exactness_holds(f: GradedMap) -> bool:
    """dim H_k(cone) = (h_k(D) - rank f_* out of k+1) + (h_k(C) - rank f_* out of k)."""
    C, D = f.source, f.target
    hc, hd = homology_field(C), homology_field(D)
    hk = homology_field(mapping_cone(f))
    degs = set(C.degrees()) | set(D.degrees())
    ranks = f.induced_ranks()
    for k in range(min(degs, default=0) - 1, max(degs, default=0) + 2):
        want = hd[k] - ranks.get(k + 1, 0) + hc[k] - ranks.get(k, 0)
        if hk[k] != want:
            return False
    return True


@given(seeds, st.sampled_from([Z2, integers_mod(3), QQ]))
def test_cone_long_exact_sequence(seed, R):
    rng = random.Random(seed)
    C = random_complex(rng, R, degrees=range(-1, 3), prefix="c")
    D = random_complex(rng, R, degrees=range(-2, 2), prefix="d")
    assert cone_exactness_holds(random_chain_map(rng, C, D))
