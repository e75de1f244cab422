"""Acceptance criteria, each checked exactly.

Every test records one PASS/FAIL line (shown in the terminal summary) and
then asserts it.  Random suites use fixed seeds.
"""

from __future__ import annotations

import random

from lch import catalog
from lch.catalog import (chekanov_knot, flying_saucer, flying_saucer_two_copy,
                         non_spun_torus_counts, stabilized_spheres_counts, super_spun)
from lch.duality import arnold_check, feasibility_solve, solve_poincare, sphere_duality_check
from lch.homology import (GradedMap, LaurentPoly, homology_field, homology_integral,
                          mapping_cone, poincare_chekanov)
from lch.linearization import (Augmentation, brute_force_augmentations,
                               enumerate_augmentations, linearize)
from lch.randomized import (break_relation, random_chain_map, random_complex,
                            random_dga_for_augmentations, random_duality_instance,
                            random_integral_complex, random_two_copy)
from lch.rings import QQ, Z2, integers_mod
from lch.spinning import kunneth_check, spin_times
from lch.twocopy import assembled_matrix, duality_check, verify_relations

Z3 = integers_mod(3)


def test_criterion_1_chekanov(acceptance):
    dga = chekanov_knot()
    augs = enumerate_augmentations(dga)
    ok_aug = augs == [Augmentation(Z2, {"q7": 1, "q8": 1, "q9": 1})]
    H = homology_field(linearize(dga, augs[0])) if augs else None
    table = [H[k] for k in range(-2, 3)] if H else None
    P = poincare_chekanov(H) if H else None
    ok = (ok_aug and table == [1, 0, 0, 1, 1]
          and P == LaurentPoly({-2: 1, 1: 1, 2: 1}) and sphere_duality_check(P, 1))
    assert acceptance("1 Chekanov knot", ok,
                      f"augmentations={len(augs)}, dims -2..2={table}, P={P}")


def test_criterion_2_flying_saucer(acceptance):
    notes = []
    ok = True
    for n in range(2, 7):
        H = homology_field(linearize(flying_saucer(n)))
        P = poincare_chekanov(H)
        ok &= H.dims() == {n: 1} and sphere_duality_check(P, n)
        rep = duality_check(flying_saucer_two_copy(n))
        top = rep.row(n)
        # 0 -> H_n(Q) -> H_n(L) -> 0 with every other map zero in this window
        single = (top.h_cohom, top.h_Q, top.h_L, top.rank_rho, top.rank_middle) == (0, 1, 1, 1, 0)
        ok &= rep.acyclic and rep.exact and rep.duality_holds and single
        notes.append(f"n={n}:{'ok' if single and rep.acyclic else 'bad'}")
    assert acceptance("2 flying saucer", ok, ", ".join(notes))


def test_criterion_3_stabilized_spheres(acceptance):
    got = {n: solve_poincare(stabilized_spheres_counts(n)) for n in range(3, 7)}
    ok = all(v == [LaurentPoly({0: 1, n - 1: 1, n: 1})] for n, v in got.items())
    assert acceptance("3 stabilized spheres", ok,
                      "; ".join(f"n={n}: {[str(p) for p in v]}" for n, v in got.items()))


def _catalog_complexes():
    out = []
    for fx in catalog.default_fixtures():
        if fx.kind == "dga":
            dga = fx.payload
            out += [linearize(dga, e) for e in enumerate_augmentations(dga)]
        elif fx.kind == "twocopy":
            out += [fx.payload.Q1, fx.payload.C1, fx.payload.P1]
        elif "dga" in fx.extras:
            out.append(linearize(fx.extras["dga"]))
    out += [linearize(flying_saucer(n)) for n in range(1, 7)]
    for p, k in ((3, 2), (4, 2), (4, 3)):
        out.append(linearize(super_spun(p, k)[0]))
    return out


def test_criterion_4_spinning(acceptance):
    dga = chekanov_knot()
    C = linearize(dga, enumerate_augmentations(dga)[0])
    H = homology_field(spin_times(C, 2))
    table = [H[k] for k in range(-2, 5)]
    rng = random.Random(4)
    randoms = [random_complex(rng, Z2, degrees=range(-3, 5), max_rank=2, max_homology=2)
               for _ in range(100)]
    rand_ok = sum(kunneth_check(X)[0] for X in randoms)
    cat = _catalog_complexes()
    cat_ok = sum(kunneth_check(X)[0] for X in cat)
    ok = table == [1, 2, 1, 1, 3, 3, 1] and rand_ok == 100 and cat_ok == len(cat)
    assert acceptance("4 spinning", ok,
                      f"spin^2 dims -2..4={table}, random {rand_ok}/100, catalog {cat_ok}/{len(cat)}")


def test_criterion_5_non_spun_torus(acceptance):
    got = {n: solve_poincare(non_spun_torus_counts(n)) for n in range(2, 6)}
    ok = all(v == [LaurentPoly({0: 1, n: 2, n + 1: 1})] for n, v in got.items())
    assert acceptance("5 non-spun torus", ok,
                      "; ".join(f"n={n}: {[str(p) for p in v]}" for n, v in got.items()))


def test_criterion_6_super_spun(acceptance):
    ok = True
    notes = []
    for p, k in ((3, 2), (4, 2), (4, 3)):
        _, inst = super_spun(p, k)
        _, swapped = super_spun(p, k, swapped=True)
        a, b = feasibility_solve(inst), feasibility_solve(swapped)
        ok &= [s.manifold() for s in a] == [{k: 1, p + k: 1}]
        ok &= [s.manifold() for s in b] == [{p: 1, p + k: 1}]
        notes.append(f"({p},{k}): {[s.manifold() for s in a]} / swapped {[s.manifold() for s in b]}")
    assert acceptance("6 super-spun", ok, "; ".join(notes))


def test_criterion_7a_two_copy_relations(acceptance):
    rng = random.Random(71)
    agree = 0
    for _ in range(200):
        data = random_two_copy(rng)
        square_zero = (assembled_matrix(data) @ assembled_matrix(data)).is_zero()
        agree += square_zero and verify_relations(data).all_pass
    failures = 0
    seed = 0
    while failures < 20 and seed < 500:
        seed += 1
        r = random.Random(7100 + seed)
        try:
            broken, name = break_relation(r, random_two_copy(r))
        except ValueError:
            continue
        square_zero = (assembled_matrix(broken) @ assembled_matrix(broken)).is_zero()
        rep = verify_relations(broken)
        failures += not square_zero and not rep.all_pass and any(name in f for f in rep.failed)
    ok = agree == 200 and failures == 20
    assert acceptance("7a two-copy d^2 = 0 <=> relations", ok,
                      f"valid {agree}/200, constructed failures detected {failures}/20")


def _cone_exact(f: GradedMap) -> bool:
    C, D = f.source, f.target
    hc, hd, hk = homology_field(C), homology_field(D), homology_field(mapping_cone(f))
    ranks = f.induced_ranks()
    degs = set(C.degrees()) | set(D.degrees())
    return all(hk[k] == hd[k] - ranks.get(k + 1, 0) + hc[k] - ranks.get(k, 0)
               for k in range(min(degs, default=0) - 1, max(degs, default=0) + 2))


def test_criterion_7b_cone_exactness(acceptance):
    rng = random.Random(72)
    good = 0
    for i in range(100):
        R = (Z2, Z3, QQ)[i % 3]
        C = random_complex(rng, R, degrees=range(-1, 3), prefix="c")
        D = random_complex(rng, R, degrees=range(-2, 2), prefix="d")
        good += _cone_exact(random_chain_map(rng, C, D))
    assert acceptance("7b mapping-cone long exact sequence", good == 100, f"{good}/100")


def test_criterion_7c_augmentation_oracle(acceptance):
    rng = random.Random(73)
    checked = agree = found = 0
    for R, reps in ((Z2, 3), (Z3, 1)):
        for n_zero in range(0, 13):
            for _ in range(reps):
                dga = random_dga_for_augmentations(rng, R, n_zero)
                fast = enumerate_augmentations(dga)
                checked += 1
                agree += fast == brute_force_augmentations(dga)
                found += len(fast)
    ok = agree == checked
    assert acceptance("7c augmentation enumeration = brute force", ok,
                      f"{agree}/{checked} tables, 0..12 degree-0 generators over Z2 and Z3, "
                      f"{found} augmentations")


def test_criterion_7d_field_vs_smith(acceptance):
    rng = random.Random(74)
    good = torsion = 0
    for _ in range(100):
        C = random_integral_complex(rng, degrees=range(-1, 3), max_rank=2, max_homology=2)
        Hz = homology_integral(C)
        good += homology_field(C.with_ring(QQ)).dims() == Hz.dims()
        torsion += bool(Hz.torsion)
    assert acceptance("7d Q homology = Smith free ranks", good == 100,
                      f"{good}/100, {torsion} with torsion")


def test_criterion_7e_feasible_implies_arnold(acceptance):
    rng = random.Random(75)
    feasible = good = 0
    for i in range(500):
        inst = random_duality_instance(rng, consistent=i % 2 == 0)
        if feasibility_solve(inst):
            feasible += 1
            good += all(r.ok for r in arnold_check(inst))
    ok = good == feasible and feasible > 0
    assert acceptance("7e feasible => Arnold bound", ok,
                      f"{feasible} feasible of 500, Arnold holds on {good}")
