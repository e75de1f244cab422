from __future__ import annotations

import pytest

from lch import catalog
from lch.algebra import validate
from lch.catalog import (chekanov_knot, flying_saucer, flying_saucer_two_copy, load,
                         non_spun_torus_counts, stabilized_spheres_counts, super_spun)
from lch.homology import homology_field
from lch.linearization import enumerate_augmentations, linearize
from lch.rings import Z2, integers_mod
from lch.twocopy import verify_relations


def test_flying_saucer_builder():
    for n in (2, 5):
        dga = flying_saucer(n)
        assert [(g.name, g.degree) for g in dga.generators] == [("c", n)]
        assert len(enumerate_augmentations(dga)) == 1
    assert flying_saucer(3, ring=integers_mod(3)).ring == integers_mod(3)
    with pytest.raises(ValueError):
        flying_saucer(0)


def test_chekanov_builder():
    dga = chekanov_knot()
    assert validate(dga).valid and dga.ring == Z2
    assert [g.degree for g in dga.generators] == [1, 1, 1, 1, 2, -2, 0, 0, 0]
    assert catalog.chord_counts(dga) == {-2: 1, 0: 3, 1: 4, 2: 1}
    (eps,) = enumerate_augmentations(dga)
    assert homology_field(linearize(dga, eps)).dims() == {-2: 1, 1: 1, 2: 1}


def test_stabilized_spheres_builder():
    inst = stabilized_spheres_counts(3)
    assert inst.chord_counts == {0: 1, 2: 3, 3: 3} and inst.good_dga
    assert inst.constraints == [(0, 1)]
    assert not stabilized_spheres_counts(2).good_dga
    assert "goodness" in load("stabilized-spheres:2").note
    with pytest.raises(ValueError):
        stabilized_spheres_counts(0)


def test_super_spun_builder():
    dga, inst = super_spun(3, 2)
    H = homology_field(linearize(dga))
    assert H.dims() == {2: 1, 5: 1}
    assert inst.n == 5 and inst.betti == {0: 1, 2: 1, 3: 1, 5: 1}
    for bad in ((2, 3), (2, 2), (3, 1)):
        with pytest.raises(ValueError):
            super_spun(*bad)


def test_non_spun_torus_builder():
    inst = non_spun_torus_counts(2)
    assert inst.n == 3 and inst.chord_counts == {0: 1, 2: 5, 3: 4}
    assert inst.betti == {0: 1, 1: 1, 2: 1, 3: 1}
    with pytest.raises(ValueError):
        non_spun_torus_counts(1)


def test_two_copy_builder():
    data = flying_saucer_two_copy(3)
    assert data.Q1.generators() == [("q", 3)]
    assert data.C1.generators() == [("cmin", -1), ("cmax", 2)]
    assert data.P1.generators() == [("p", -2)]
    assert verify_relations(data).all_pass


def test_registry():
    kinds = {fx.name.partition(":")[0]: fx.kind for fx in catalog.default_fixtures()}
    assert kinds == {
        "chekanov": "dga", "flying-saucer": "dga", "stabilized-spheres": "instance",
        "non-spun-torus": "instance", "super-spun": "instance",
        "super-spun-swapped": "instance", "flying-saucer-two-copy": "twocopy"}
    assert load("super-spun:4,3").payload.n == 7
    assert load("flying-saucer:5").dim == 5
    for bad in ("nope", "chekanov:1", "flying-saucer:x", "super-spun:4"):
        with pytest.raises((KeyError, ValueError)):
            load(bad)


def test_every_fixture_validates():
    for fx in catalog.default_fixtures():
        if fx.kind == "dga":
            assert validate(fx.payload).valid
        elif fx.kind == "twocopy":
            assert verify_relations(fx.payload).all_pass
