"""Front spinning on linearized complexes.

Each generator q of L gives four generators of the spun Legendrian:
q[0] and q[2] in degree |q|, and hat-q[1], hat-q[3] in degree |q| + 1
(labelled ``q^[1]`` and ``q^[3]``).  With the spun augmentation the
linearized boundary is

    d q[a]   = copy of d q inside the [a] block            (a = 0, 2)
    d q^[b]  = q[0] + q[2] + copy of d q inside [b]        (b = 1, 3)

Everything is over Z2, where these formulas square to zero.
"""

from __future__ import annotations

from typing import Dict, List, Tuple

from .homology import BasedChainComplex, LaurentPoly, homology_field, poincare_chekanov
from .linearization import Augmentation
from .rings import Z2

PLAIN = (0, 2)
HAT = (1, 3)


def plain_label(label: str, alpha: int) -> str:
    return f"{label}[{alpha}]"


def hat_label(label: str, beta: int) -> str:
    return f"{label}^[{beta}]"


def spin_complex(C: BasedChainComplex) -> BasedChainComplex:
    if C.ring != Z2 or not C.grading.is_integral:
        raise ValueError("spinning is defined for Z-graded complexes over Z2")
    d = C.boundary_dict()
    gens: List[Tuple[str, int]] = []
    bd: Dict[str, Dict[str, int]] = {}
    for a in PLAIN:
        for l, k in C.generators():
            gens.append((plain_label(l, a), k))
            bd[plain_label(l, a)] = {plain_label(m, a): c for m, c in d.get(l, {}).items()}
    for b in HAT:
        for l, k in C.generators():
            gens.append((hat_label(l, b), k + 1))
            img = {plain_label(l, 0): 1, plain_label(l, 2): 1}
            img.update({hat_label(m, b): c for m, c in d.get(l, {}).items()})
            bd[hat_label(l, b)] = img
    return BasedChainComplex.from_dict(Z2, C.grading, gens, bd)


def spin_times(C: BasedChainComplex, times: int) -> BasedChainComplex:
    for _ in range(times):
        C = spin_complex(C)
    return C


def spin_augmentation(eps: Augmentation) -> Augmentation:
    """eps on q[0], q[2] copies eps(q); every hat generator goes to 0."""
    return Augmentation(eps.ring, {plain_label(n, a): v
                                   for n, v in eps.values.items() for a in PLAIN})


def kunneth_check(C: BasedChainComplex):
    """Compare H(spin C) with H(C) tensor H(S^1), i.e. (1 + t) P_C(t).

    Returns ``(ok, spun_poly, expected_poly)``.
    """
    spun = poincare_chekanov(homology_field(spin_complex(C)))
    expected = LaurentPoly({0: 1, 1: 1}) * poincare_chekanov(homology_field(C))
    return spun == expected, spun, expected
