"""Builders for the standard worked examples, used as fixtures everywhere.

Each builder is pure.  :func:`load` resolves a fixture reference such as
``"chekanov"``, ``"stabilized-spheres:4"`` or ``"super-spun:4,3"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Tuple, Union

from .algebra import DGA
from .duality import DualityInstance, product_betti, sphere_betti
from .homology import BasedChainComplex
from .rings import CoefficientRing, GradingGroup, Z2
from .twocopy import MorseComplex, TwoCopyData

ZGRADED = GradingGroup(0)

Payload = Union[DGA, BasedChainComplex, DualityInstance, TwoCopyData]


@dataclass
class Fixture:
    name: str
    payload: Payload
    note: str = ""
    betti: Optional[Dict[int, int]] = None
    dim: Optional[int] = None
    extras: Dict[str, object] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        if isinstance(self.payload, DGA):
            return "dga"
        if isinstance(self.payload, DualityInstance):
            return "instance"
        if isinstance(self.payload, TwoCopyData):
            return "twocopy"
        return "complex"


def flying_saucer(n: int, ring: CoefficientRing = Z2) -> DGA:
    """The standard Legendrian n-sphere: a single chord c of degree n, dc = 0."""
    if n < 1:
        raise ValueError("flying saucer needs n >= 1")
    return DGA(ring, ZGRADED, [("c", n)], {}, ambient_dim=n)


def flying_saucer_instance(n: int) -> DualityInstance:
    if n < 1:
        raise ValueError("flying saucer needs n >= 1")
    return DualityInstance(n, sphere_betti(n), dims_q={n: 1}, chord_counts={n: 1},
                           good_dga=True, name=f"flying-saucer:{n}")


CHEKANOV_DEGREES = [("q1", 1), ("q2", 1), ("q3", 1), ("q4", 1), ("q5", 2),
                    ("q6", -2), ("q7", 0), ("q8", 0), ("q9", 0)]


def chekanov_knot() -> DGA:
    """A Legendrian knot in R^3 whose DGA has nine chords and one augmentation."""
    dga = DGA(Z2, ZGRADED, CHEKANOV_DEGREES, {}, ambient_dim=1)
    one = ()
    diff = {
        "q1": dga.poly([(one, 1), (("q7",), 1), (("q7", "q6", "q5"), 1)]),
        "q2": dga.poly([(one, 1), (("q9",), 1), (("q5", "q6", "q9"), 1)]),
        "q3": dga.poly([(one, 1), (("q8", "q7"), 1)]),
        "q4": dga.poly([(one, 1), (("q9", "q8"), 1)]),
    }
    return dga.with_differential(diff)


def chord_counts(dga: DGA) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for g in dga.generators:
        out[g.degree] = out.get(g.degree, 0) + 1
    return dict(sorted(out.items()))


def chekanov_instance(dims_q: Optional[Dict[int, int]] = None) -> DualityInstance:
    return DualityInstance(1, {0: 1, 1: 1}, dims_q=dims_q,
                           chord_counts=chord_counts(chekanov_knot()),
                           good_dga=False, name="chekanov")


def stabilized_spheres_counts(n: int) -> DualityInstance:
    """Two flying saucers joined by a tube; chord counts only.

    Only the counts {0: 1, n-1: 3, n: 3} are known, not the differential.
    The DGA is good for degree reasons only when n > 2; smaller n is
    flagged with ``good_dga=False``.
    """
    if n < 1:
        raise ValueError("stabilized spheres need n >= 1")
    counts: Dict[int, int] = {}
    for k, c in ((0, 1), (n - 1, 3), (n, 3)):
        counts[k] = counts.get(k, 0) + c
    return DualityInstance(n, sphere_betti(n), chord_counts=counts, good_dga=n > 2,
                           constraints=[(0, 1)], name=f"stabilized-spheres:{n}")


def super_spun(p: int, k: int, swapped: bool = False) -> Tuple[DGA, DualityInstance]:
    """S^p x S^k with exactly two chords, of degrees k + p and k.

    The DGA is good for degree reasons and has zero differential.  With
    ``swapped=True`` the instance instead carries chords of degrees p + k
    and p (the other spinning order), which moves the manifold class.
    """
    if not p > k > 1:
        raise ValueError("super-spun needs p > k > 1")
    low = p if swapped else k
    dga = DGA(Z2, ZGRADED, [("a", p + k), ("b", low)], {}, ambient_dim=p + k)
    dims = {low: 1, p + k: 1}
    inst = DualityInstance(p + k, product_betti(p, k), dims_q=dims, chord_counts=dims,
                           good_dga=True,
                           name=f"super-spun{'-swapped' if swapped else ''}:{p},{k}")
    return dga, inst


def non_spun_torus_counts(n: int) -> DualityInstance:
    """A Legendrian S^1 x S^n (dimension n + 1) with counts {0:1, n:5, n+1:4}."""
    if n < 2:
        raise ValueError("non-spun torus needs n >= 2")
    return DualityInstance(n + 1, product_betti(1, n), chord_counts={0: 1, n: 5, n + 1: 4},
                           good_dga=True, constraints=[(0, 1)],
                           name=f"non-spun-torus:{n}")


def flying_saucer_two_copy(n: int, ring: CoefficientRing = Z2) -> TwoCopyData:
    """Two-copy blocks for the flying saucer.

    Q1 = <q> in degree n, C1 = height function on S^n (cmin in degree -1,
    cmax in degree n - 1), P1 = <p> in degree -2.  rho(q) = cmax,
    sigma(cmin) = p, eta = 0.  The assembled complex is acyclic.
    """
    if n < 2:
        raise ValueError("the two-copy fixture needs n >= 2")
    Q1 = BasedChainComplex.from_dict(ring, ZGRADED, [("q", n)], {})
    morse = MorseComplex.sphere(ring, n)
    return TwoCopyData.build(Q1, morse, n, rho={"q": {"cmax": 1}},
                             sigma={"cmin": {"p": 1}}, eta={})


# -- registry -----------------------------------------------------------

def _ints(params: str, defaults: Tuple[int, ...]) -> Tuple[int, ...]:
    if not params:
        return defaults
    try:
        vals = tuple(int(x) for x in params.split(","))
    except ValueError:
        raise ValueError(f"fixture parameters must be integers, got {params!r}") from None
    if len(vals) != len(defaults):
        raise ValueError(f"expected {len(defaults)} parameter(s), got {len(vals)}")
    return vals


def _chekanov(params: str) -> Fixture:
    if params:
        raise ValueError("chekanov takes no parameters")
    return Fixture("chekanov", chekanov_knot(),
                   "Chekanov-Eliashberg DGA of a Legendrian knot with nine chords",
                   betti={0: 1, 1: 1}, dim=1)


def _saucer(params: str) -> Fixture:
    (n,) = _ints(params, (2,))
    return Fixture(f"flying-saucer:{n}", flying_saucer(n),
                   "standard Legendrian sphere with one chord", betti=sphere_betti(n), dim=n)


def _stab(params: str) -> Fixture:
    (n,) = _ints(params, (3,))
    note = "counts only: the differential is not known"
    if n <= 2:
        note += "; goodness fails for n <= 2, so the manifold-class constraint is off"
    return Fixture(f"stabilized-spheres:{n}", stabilized_spheres_counts(n), note)


def _torus(params: str) -> Fixture:
    (n,) = _ints(params, (2,))
    return Fixture(f"non-spun-torus:{n}", non_spun_torus_counts(n),
                   "connected sum of the stabilized (n+1)-sphere with a spun flying saucer")


def _spun(swapped: bool):
    def build(params: str) -> Fixture:
        p, k = _ints(params, (3, 2))
        dga, inst = super_spun(p, k, swapped)
        return Fixture(inst.name, inst, "two chords, zero differential",
                       extras={"dga": dga})
    return build


def _two_copy(params: str) -> Fixture:
    (n,) = _ints(params, (3,))
    return Fixture(f"flying-saucer-two-copy:{n}", flying_saucer_two_copy(n),
                   "two-copy blocks of the flying saucer", dim=n)


REGISTRY: Dict[str, Callable[[str], Fixture]] = {
    "chekanov": _chekanov,
    "flying-saucer": _saucer,
    "stabilized-spheres": _stab,
    "non-spun-torus": _torus,
    "super-spun": _spun(False),
    "super-spun-swapped": _spun(True),
    "flying-saucer-two-copy": _two_copy,
}


def load(ref: str) -> Fixture:
    """Resolve ``name[:params]`` to a fixture."""
    name, _, params = ref.partition(":")
    if name not in REGISTRY:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(REGISTRY)}")
    return REGISTRY[name](params)


def default_fixtures() -> List[Fixture]:
    return [load(name) for name in REGISTRY]
