from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from lch.catalog import chekanov_knot, flying_saucer
from lch.homology import BasedChainComplex, homology_field
from lch.linalg import Matrix
from lch.linearization import Augmentation, enumerate_augmentations, linearize
from lch.randomized import random_complex
from lch.rings import QQ, Z2, GradingGroup
from lch.spinning import (hat_label, kunneth_check, plain_label, spin_augmentation,
                          spin_complex, spin_times)

ZG = GradingGroup(0)
seeds = st.integers(0, 2**32 - 1)


def chekanov_complex():
    dga = chekanov_knot()
    return linearize(dga, enumerate_augmentations(dga)[0])


def test_spin_flying_saucer():
    for n in range(1, 6):
        S = spin_complex(linearize(flying_saucer(n)))
        assert homology_field(S).dims() == {n: 1, n + 1: 1}


def test_spin_zero_complex():
    Z = BasedChainComplex(Z2, ZG, {})
    assert spin_complex(Z).is_zero()
    assert kunneth_check(Z)[0]


def test_double_spin_chekanov_table():
    H = homology_field(spin_times(chekanov_complex(), 2))
    assert [H[k] for k in range(-2, 5)] == [1, 2, 1, 1, 3, 3, 1]
    assert H.dims() == {-2: 1, -1: 2, 0: 1, 1: 1, 2: 3, 3: 3, 4: 1}


def test_kunneth_chekanov():
    ok, spun, expected = kunneth_check(chekanov_complex())
    assert ok and str(expected) == "t^-2 + t^-1 + t + 2t^2 + t^3"


def test_spun_degrees_and_labels():
    S = spin_complex(chekanov_complex())
    assert S.degree_of(plain_label("q6", 2)) == -2
    assert S.degree_of(hat_label("q6", 3)) == -1
    assert S.size == 36
    assert S.boundary_dict()[hat_label("q1", 1)] == {
        "q1[0]": 1, "q1[2]": 1, "q7^[1]": 1}


def test_spin_requires_z2_and_z_grading():
    with pytest.raises(ValueError):
        spin_complex(linearize(flying_saucer(2, ring=QQ)))
    C = BasedChainComplex.from_dict(Z2, GradingGroup(4), [("a", 1)], {})
    with pytest.raises(ValueError):
        spin_complex(C)


def test_spin_augmentation():
    eps = enumerate_augmentations(chekanov_knot())[0]
    spun = spin_augmentation(eps)
    assert spun("q7[0]") == spun("q7[2]") == 1
    assert spun("q7^[1]") == 0 and spun("q1[0]") == 0
    assert spin_augmentation(Augmentation(Z2)).values == {}
    twice = spin_augmentation(spun)
    assert sorted(twice.support()) == sorted(
        f"q{i}[{a}][{b}]" for i in (7, 8, 9) for a in (0, 2) for b in (0, 2))


@given(seeds)
def test_kunneth_random(seed):
    rng = random.Random(seed)
    C = random_complex(rng, Z2, degrees=range(-3, 5), max_rank=2, max_homology=2)
    assert kunneth_check(C)[0]


@given(seeds)
def test_spin_commutes_with_direct_sum(seed):
    rng = random.Random(seed)
    A = random_complex(rng, Z2, degrees=range(-1, 3), prefix="a")
    B = random_complex(rng, Z2, degrees=range(0, 4), prefix="b")
    left, right = spin_complex(A.direct_sum(B)), spin_complex(A).direct_sum(spin_complex(B))
    # equal up to the order of basis elements within a degree
    assert sorted(left.generators()) == sorted(right.generators())
    assert left.boundary_dict() == right.boundary_dict()


def split_spun(C: BasedChainComplex):
    """Change basis q[2] -> q[0] + q[2], q^[3] -> q^[1] + q^[3] in spin(C).

    Returns the boundary in the new basis and the three groups
    ({q[0]}, {q[2]', q^[1]}, {q^[3]'}) as index lists.
    """
    S = spin_complex(C)
    pos = {l: i for i, l in enumerate(S.labels())}
    T = Matrix.identity(Z2, S.size)
    for l in C.labels():
        T = T.with_entry(pos[plain_label(l, 0)], pos[plain_label(l, 2)], 1)
        T = T.with_entry(pos[hat_label(l, 1)], pos[hat_label(l, 3)], 1)
    # T is an involution over Z2, so it is its own inverse
    D = T @ S.total_matrix() @ T
    groups = [[pos[plain_label(l, 0)] for l in C.labels()],
              [pos[x] for l in C.labels() for x in (plain_label(l, 2), hat_label(l, 1))],
              [pos[hat_label(l, 3)] for l in C.labels()]]
    return S, D, groups


@given(seeds)
def test_spin_splits_into_three_subcomplexes(seed):
    rng = random.Random(seed)
    C = random_complex(rng, Z2, degrees=range(-2, 3))
    S, D, groups = split_spun(C)
    where = {i: g for g, idx in enumerate(groups) for i in idx}
    for i, j, _ in D.nonzero_entries():
        assert where[i] == where[j]
    gens = S.generators()
    pieces = []
    for idx in groups:
        sub = D.submatrix(idx, idx)
        pieces.append(BasedChainComplex.from_total(Z2, ZG, [gens[i] for i in idx], sub))
    HC = homology_field(C).dims()
    assert homology_field(pieces[0]).dims() == HC
    assert homology_field(pieces[1]).dims() == {}
    assert homology_field(pieces[2]).dims() == {k + 1: v for k, v in HC.items()}
