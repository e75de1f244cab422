from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from lch.algebra import DGA, format_poly, is_good, validate
from lch.catalog import chekanov_knot, flying_saucer, super_spun
from lch.linearization import (Augmentation, brute_force_augmentations, check_augmentation,
                               conjugate, enumerate_augmentations, linearize)
from lch.randomized import random_dga_for_augmentations
from lch.rings import QQ, Z2, GradingGroup, integers_mod

Z3 = integers_mod(3)


def test_chekanov_unique_augmentation():
    augs = enumerate_augmentations(chekanov_knot())
    assert augs == [Augmentation(Z2, {"q7": 1, "q8": 1, "q9": 1})]


def test_flying_saucer_only_zero_augmentation():
    for n in range(2, 6):
        assert enumerate_augmentations(flying_saucer(n)) == [Augmentation(Z2)]


def test_constant_differential_has_no_augmentation():
    dga = DGA(Z2, GradingGroup(0), [("a", 1)], {})
    dga = dga.with_differential({"a": dga.poly([((), 1)])})
    assert enumerate_augmentations(dga) == []
    assert brute_force_augmentations(dga) == []


def test_enumeration_needs_finite_field():
    with pytest.raises(ValueError):
        enumerate_augmentations(flying_saucer(2, ring=QQ))
    with pytest.raises(ValueError):
        enumerate_augmentations(flying_saucer(2, ring=integers_mod(4)))


def test_bad_augmentations_rejected():
    dga = chekanov_knot()
    with pytest.raises(ValueError):
        check_augmentation(dga, Augmentation(Z2, {"q7": 1}))
    with pytest.raises(ValueError):
        check_augmentation(dga, Augmentation(Z2, {"q1": 1, "q7": 1, "q8": 1, "q9": 1}))
    with pytest.raises(ValueError):
        conjugate(dga, Augmentation(Z2))


def test_conjugate_q3_and_q1():
    dga = chekanov_knot()
    conj = conjugate(dga, enumerate_augmentations(dga)[0])
    assert format_poly(conj.d("q3"), dga.names) == "q7 + q8 + q8*q7"
    d1 = conj.d("q1")
    assert all(len(w) >= 1 for w, _ in d1.terms())
    assert format_poly(d1, dga.names).startswith("q7 +")
    assert is_good(conj) and validate(conj).valid


def test_zero_augmentation_is_identity():
    dga = flying_saucer(3)
    assert conjugate(dga, Augmentation(Z2)).differential_map() == dga.differential_map()


def test_chekanov_linearized_boundary():
    dga = chekanov_knot()
    C = linearize(dga, enumerate_augmentations(dga)[0])
    assert C.boundary_dict() == {
        "q1": {"q7": 1}, "q2": {"q9": 1},
        "q3": {"q7": 1, "q8": 1}, "q4": {"q8": 1, "q9": 1},
    }


def test_linearize_examples():
    C = linearize(flying_saucer(4))
    assert C.generators() == [("c", 4)] and C.boundary_dict() == {}
    dga, _ = super_spun(3, 2)
    C = linearize(dga)
    assert dict((k, C.dim(k)) for k in C.degrees()) == {2: 1, 5: 1}
    assert C.boundary_dict() == {}


def test_conjugation_involutive_over_z2():
    dga = chekanov_knot()
    eps = enumerate_augmentations(dga)[0]
    conj = conjugate(dga, eps)
    assert conjugate(conj, eps, check=False).differential_map() == dga.differential_map()


@settings(max_examples=40)
@given(st.integers(0, 2**32 - 1), st.integers(0, 7), st.sampled_from([Z2, Z3]))
def test_enumeration_matches_oracle(seed, n_zero, R):
    rng = random.Random(seed)
    dga = random_dga_for_augmentations(rng, R, n_zero)
    fast = enumerate_augmentations(dga)
    assert fast == brute_force_augmentations(dga)
    assert len(set(fast)) == len(fast)
    for eps in fast:
        assert eps.is_valid(dga)
        assert is_good(conjugate(dga, eps))
