"""Dimension-level consequences of the duality exact sequence.

Everything here works with dimensions over a field.  Write

    b_k = dim H_k(L),   q_k = dim H_k(Q(L)),   r_k = rank of rho_* in degree k.

Exactness of  H_{k+1}(L) -> H^{n-k-1}(Q) -> H_k(Q) -> H_k(L) -> H^{n-k}(Q),
together with s_k = dim Im sigma_* = r_{n-k} from adjointness, gives

(C1)  0 <= r_k <= min(q_k, b_k)
(C2)  b_k = r_k + r_{n-k}
      (at H_k(L): ker sigma_* = Im rho_*, so b_k = r_k + s_k)
(C3)  q_k - r_k = q_{n-1-k} - r_{n-1-k}
      (at H_k(Q): ker rho_* = Im(H^{n-k-1}(Q) -> H_k(Q)), whose dimension
      is q_{n-1-k} minus rank of sigma_* out of H_{k+1}(L), i.e. minus
      s_{k+1} = r_{n-k-1})
(C4)  for a good DGA over Z2: r_0 = 0 and r_n = b_n.

C3 is the statement that the non-manifold part of the homology is
symmetric about (n - 1)/2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .homology import LaurentPoly


def _clean(d: Optional[Mapping[int, int]]) -> Optional[Dict[int, int]]:
    if d is None:
        return None
    return {int(k): int(v) for k, v in sorted(d.items()) if v}


@dataclass
class DualityInstance:
    n: int
    betti: Dict[int, int]
    dims_q: Optional[Dict[int, int]] = None
    chord_counts: Optional[Dict[int, int]] = None
    good_dga: bool = False
    ring_is_Z2: bool = True
    constraints: List[Tuple[int, int]] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self.betti = _clean(self.betti) or {}
        self.dims_q = _clean(self.dims_q)
        self.chord_counts = _clean(self.chord_counts)
        for label, d in (("betti", self.betti), ("dims_q", self.dims_q),
                         ("chord_counts", self.chord_counts)):
            if d and any(v < 0 for v in d.values()):
                raise ValueError(f"{label} must be nonnegative")
        if any(not 0 <= k <= self.n for k in self.betti):
            raise ValueError(f"Betti numbers must sit in degrees 0..{self.n}")
        if self.betti.get(0, 0) < 1:
            raise ValueError("a connected closed manifold has b_0 >= 1")

    def b(self, k: int) -> int:
        return self.betti.get(k, 0)

    def q(self, k: int) -> int:
        return (self.dims_q or {}).get(k, 0)

    def c(self, k: int) -> int:
        return (self.chord_counts or {}).get(k, 0)

    @property
    def apply_c4(self) -> bool:
        return self.good_dga and self.ring_is_Z2

    def with_dims(self, dims_q: Mapping[int, int]) -> "DualityInstance":
        return DualityInstance(self.n, self.betti, dict(dims_q), self.chord_counts,
                               self.good_dga, self.ring_is_Z2, list(self.constraints),
                               self.name)


def sphere_betti(n: int) -> Dict[int, int]:
    return {0: 1, n: 1} if n else {0: 2}


def product_betti(*dims: int) -> Dict[int, int]:
    """Betti numbers of a product of spheres of the given dimensions."""
    poly = LaurentPoly({0: 1})
    for d in dims:
        poly = poly * LaurentPoly({0: 1, d: 1})
    return dict(poly.coeffs)


def sphere_duality_check(P: LaurentPoly, n: int) -> bool:
    """P(t) - t^(n-1) P(1/t) == t^n - t^-1."""
    return P - P.invert().shift(n - 1) == LaurentPoly({n: 1, -1: -1})


@dataclass
class ArnoldRow:
    m: int
    chords: int
    betti: int

    @property
    def ok(self) -> bool:
        return self.chords >= self.betti


def arnold_check(inst: DualityInstance) -> List[ArnoldRow]:
    """c_m + c_{n-m} >= b_m for 0 <= m <= n."""
    if inst.chord_counts is None:
        raise ValueError("arnold_check needs chord counts")
    return [ArnoldRow(m, inst.c(m) + inst.c(inst.n - m), inst.b(m))
            for m in range(inst.n + 1)]


@dataclass(frozen=True)
class RSolution:
    n: int
    r: Tuple[Tuple[int, int], ...]          # nonzero (degree, rank) pairs
    dims_q: Tuple[Tuple[int, int], ...]

    def rank(self, k: int) -> int:
        return dict(self.r).get(k, 0)

    def manifold(self) -> Dict[int, int]:
        return dict(self.r)

    def nonmanifold(self) -> Dict[int, int]:
        q = dict(self.dims_q)
        return {k: v - self.rank(k) for k, v in q.items() if v - self.rank(k)}


def _check_c3(inst: DualityInstance, r: Mapping[int, int]) -> bool:
    n = inst.n
    ks = set(inst.dims_q or {}) | set(range(0, n + 1))
    for k in ks:
        if inst.q(k) - r.get(k, 0) != inst.q(n - 1 - k) - r.get(n - 1 - k, 0):
            return False
    return True


def feasibility_solve(inst: DualityInstance) -> List[RSolution]:
    """Every rank vector r consistent with the exact sequence (C1-C4 above)."""
    if inst.dims_q is None:
        raise ValueError("feasibility_solve needs dims_q")
    n = inst.n
    bound = {k: min(inst.q(k), inst.b(k)) for k in range(n + 1)}
    # (C2) pairs k with n-k, so choosing r_k for k <= n/2 fixes the rest
    low = list(range(0, n // 2 + 1))
    sols = []
    for choice in itertools.product(*(range(bound[k] + 1) for k in low)):
        r = dict(zip(low, choice))
        ok = True
        for k in low:
            j = n - k
            if j == k:
                if 2 * r[k] != inst.b(k):
                    ok = False
                continue
            rj = inst.b(k) - r[k]
            if not 0 <= rj <= bound[j] or inst.b(j) != r[k] + rj:
                ok = False
                break
            r[j] = rj
        if not ok:
            continue
        if inst.apply_c4 and (r.get(0, 0) != 0 or r.get(n, 0) != inst.b(n)):
            continue
        if not _check_c3(inst, r):
            continue
        sols.append(RSolution(n, tuple((k, v) for k, v in sorted(r.items()) if v),
                              tuple(sorted((inst.dims_q or {}).items()))))
    sols.sort(key=lambda s: [s.rank(k) for k in range(n + 1)])
    return sols


def solve_poincare(inst: DualityInstance,
                   constraints: Iterable[Tuple[int, int]] = ()) -> List[LaurentPoly]:
    """All Poincare polynomials compatible with the chord counts and duality.

    Enumerates the rank of the linearized boundary between each pair of
    adjacent degrees, keeps the homology dimension vectors that meet the
    constraints and admit a feasible rank vector, and returns the distinct
    Poincare polynomials.
    """
    if inst.chord_counts is None:
        raise ValueError("solve_poincare needs chord counts")
    cons = list(inst.constraints) + list(constraints)
    c = inst.chord_counts
    edges = [k for k in sorted(c) if c.get(k - 1, 0)]
    found = {}
    for ranks in itertools.product(*(range(min(c[k], c[k - 1]) + 1) for k in edges)):
        rk = dict(zip(edges, ranks))
        dims = {k: v - rk.get(k, 0) - rk.get(k + 1, 0) for k, v in c.items()}
        if any(v < 0 for v in dims.values()):
            continue
        if any(dims.get(k, 0) != want for k, want in cons):
            continue
        if not feasibility_solve(inst.with_dims(dims)):
            continue
        P = LaurentPoly(dims)
        found[tuple(P.coeffs.items())] = P
    return [found[k] for k in sorted(found)]


@dataclass
class ManifoldRow:
    k: int
    manifold: int
    nonmanifold: int
    partner: int
    partner_nonmanifold: int


@dataclass
class ManifoldReport:
    rows: List[ManifoldRow]
    annihilator_ok: bool          # r_k + r_{n-k} = b_k for all k
    betti_symmetric: bool         # b_k = b_{n-k}
    nonmanifold_symmetric: bool


def manifold_class_report(sol: RSolution, inst: DualityInstance) -> ManifoldReport:
    n = inst.n
    nm = sol.nonmanifold()
    ks = sorted(set(nm) | set(sol.manifold()))
    rows = [ManifoldRow(k, sol.rank(k), nm.get(k, 0), n - 1 - k, nm.get(n - 1 - k, 0))
            for k in ks]
    ann = all(sol.rank(k) + sol.rank(n - k) == inst.b(k) for k in range(n + 1))
    sym = all(inst.b(k) == inst.b(n - k) for k in range(n + 1))
    nms = all(r.nonmanifold == r.partner_nonmanifold for r in rows)
    return ManifoldReport(rows, ann, sym, nms)
