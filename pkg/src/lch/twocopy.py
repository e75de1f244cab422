"""The linearized complex of the two-copy link, assembled from blocks.

The complex splits as Q1 + C1 + P1 (the pure-chord summand Q0 is a
separate direct summand and plays no role here).  Q1 is a copy of the
linearized complex of L, C1 is the Morse complex of the perturbing
function shifted down by one, and P1 is the dual of Q1 in degrees
``n - 2 - k``.  The differential is lower triangular::

    [ dq    0    0  ]
    [ rho  -dc   0  ]
    [ eta  sigma dp ]

and squares to zero exactly when the six block identities checked by
:func:`verify_relations` hold.  rho, sigma and eta are inputs here; they
come from counting generalized disks, which this library does not do.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .homology import (BasedChainComplex, GradedMap, default_dual_label, dualize,
                       homology_field, mapping_cone)
from .linalg import Matrix
from .rings import CoefficientRing, GradingGroup, Z2


class RelationError(ValueError):
    def __init__(self, failed: Sequence[str]):
        self.failed = list(failed)
        super().__init__("block relations fail: " + ", ".join(self.failed))


class MorseComplex:
    """Critical points graded by Morse index with a Morse-Witten boundary."""

    def __init__(self, ring: CoefficientRing, dim: int,
                 critical_points: Sequence[Tuple[str, int]],
                 boundary: Mapping[str, Mapping[str, object]] | None = None,
                 closed: bool = True):
        for name, idx in critical_points:
            if not 0 <= idx <= dim:
                raise ValueError(f"critical point {name} has index {idx} outside [0, {dim}]")
        if closed and critical_points:
            idxs = {i for _, i in critical_points}
            if 0 not in idxs or dim not in idxs:
                raise ValueError("a closed manifold needs a minimum and a maximum")
        self.ring = ring
        self.dim = dim
        self.points = list(critical_points)
        self.boundary = {k: dict(v) for k, v in (boundary or {}).items()}
        self.complex = BasedChainComplex.from_dict(ring, GradingGroup(0), self.points, self.boundary)

    @classmethod
    def sphere(cls, ring: CoefficientRing, n: int, names=("cmin", "cmax")) -> "MorseComplex":
        """Height function on S^n: one minimum, one maximum, zero boundary."""
        return cls(ring, n, [(names[0], 0), (names[1], n)])

    def index(self, name: str) -> int:
        return dict(self.points)[name]

    def shifted_complex(self, grading: GradingGroup) -> BasedChainComplex:
        """C1: the same complex with Morse index k placed in degree k - 1."""
        gens = [(name, idx - 1) for name, idx in self.points]
        return BasedChainComplex.from_dict(self.ring, grading, gens, self.boundary)


@dataclass
class TwoCopyData:
    Q1: BasedChainComplex
    C1: BasedChainComplex
    P1: BasedChainComplex
    rho: GradedMap
    sigma: GradedMap
    eta: GradedMap
    n: int
    pairing: Dict[str, str] = field(default_factory=dict)
    morse: Optional[MorseComplex] = None

    def __post_init__(self):
        G = self.Q1.grading
        for name, blk in (("C1", self.C1), ("P1", self.P1)):
            if blk.ring != self.Q1.ring or blk.grading != G:
                raise ValueError(f"{name} ring/grading differs from Q1")
        if self.morse is not None:
            for name, idx in self.morse.points:
                if self.C1.degree_of(name) != G.reduce(idx - 1):
                    raise ValueError(f"|{name}| must be Index - 1 = {idx - 1}")
        if sorted(self.pairing) != sorted(self.Q1.labels()):
            raise ValueError("pairing must cover every Q1 generator")
        if sorted(self.pairing.values()) != sorted(self.P1.labels()):
            raise ValueError("pairing must be a bijection onto the P1 generators")
        for q, p in self.pairing.items():
            want = G.reduce(self.n - 2 - self.Q1.degree_of(q))
            if self.P1.degree_of(p) != want:
                raise ValueError(f"|{p}| = {self.P1.degree_of(p)}, expected n-2-|{q}| = {want}")
        labels = self.Q1.labels() + self.C1.labels() + self.P1.labels()
        if len(set(labels)) != len(labels):
            raise ValueError("Q1, C1 and P1 labels must be distinct")
        for name, f, src, tgt in (("rho", self.rho, self.Q1, self.C1),
                                  ("sigma", self.sigma, self.C1, self.P1),
                                  ("eta", self.eta, self.Q1, self.P1)):
            if f.source is not src or f.target is not tgt or f.degree != -1:
                raise ValueError(f"{name} must be a degree -1 map between the right blocks")

    @property
    def ring(self) -> CoefficientRing:
        return self.Q1.ring

    @classmethod
    def build(cls, Q1: BasedChainComplex, morse: MorseComplex, n: int,
              rho: Mapping = None, sigma: Mapping = None, eta: Mapping = None,
              P1: Optional[BasedChainComplex] = None,
              pairing: Optional[Mapping[str, str]] = None) -> "TwoCopyData":
        """Build from label dictionaries; P1 defaults to the dual of Q1."""
        C1 = morse.shifted_complex(Q1.grading)
        if P1 is None:
            P1, pairing = build_dual_block(Q1, n)
        elif pairing is None:
            raise ValueError("an explicit P1 needs an explicit pairing")
        return cls(Q1, C1, P1,
                   GradedMap.from_dict(Q1, C1, rho or {}),
                   GradedMap.from_dict(C1, P1, sigma or {}),
                   GradedMap.from_dict(Q1, P1, eta or {}),
                   n, dict(pairing), morse)

    def replace(self, **maps) -> "TwoCopyData":
        """Copy with some of rho/sigma/eta replaced by new matrices."""
        kw = dict(rho=self.rho, sigma=self.sigma, eta=self.eta)
        for k, m in maps.items():
            old = kw[k]
            kw[k] = GradedMap(old.source, old.target, m, -1)
        return TwoCopyData(self.Q1, self.C1, self.P1, n=self.n, pairing=self.pairing,
                           morse=self.morse, **kw)


def build_dual_block(Q1: BasedChainComplex, n: int, label=default_dual_label):
    """P1 = dual of Q1 with <p_i, q_j> = delta_ij; returns (P1, pairing)."""
    P1 = dualize(Q1, n, label)
    return P1, {q: label(q) for q in Q1.labels()}


def _blocks(data: TwoCopyData):
    dq = data.Q1.total_matrix()
    dc = data.C1.total_matrix()
    dp = data.P1.total_matrix()
    return dq, dc, dp, data.rho.matrix, data.sigma.matrix, data.eta.matrix


def assembled_matrix(data: TwoCopyData) -> Matrix:
    dq, dc, dp, rho, sigma, eta = _blocks(data)
    sizes = [data.Q1.size, data.C1.size, data.P1.size]
    return Matrix.block(data.ring, sizes, sizes,
                        [[dq, None, None], [rho, -dc, None], [eta, sigma, dp]])


@dataclass
class RelationReport:
    checks: Dict[str, bool]
    defects: Dict[str, Matrix]
    dual_ok: bool = True

    @property
    def all_pass(self) -> bool:
        return all(self.checks.values())

    @property
    def failed(self) -> List[str]:
        return [k for k, ok in self.checks.items() if not ok]


RELATIONS = ("dq^2 = 0", "dc^2 = 0", "dp^2 = 0",
             "rho dq - dc rho = 0", "dp sigma - sigma dc = 0",
             "eta dq + dp eta + sigma rho = 0")


def verify_relations(data: TwoCopyData) -> RelationReport:
    dq, dc, dp, rho, sigma, eta = _blocks(data)
    defects = dict(zip(RELATIONS, (
        dq @ dq, dc @ dc, dp @ dp,
        rho @ dq - dc @ rho,
        dp @ sigma - sigma @ dc,
        eta @ dq + dp @ eta + sigma @ rho)))
    checks = {k: m.is_zero() for k, m in defects.items()}
    # dp should be the dual of dq under the pairing
    pi = [data.P1.locate(data.pairing[q])[2] for q in data.Q1.labels()]
    dual_ok = all(dp[pi[k], pi[j]] == dq[j, k]
                  for j in range(len(pi)) for k in range(len(pi)))
    rep = RelationReport(checks, defects, dual_ok)
    square_zero = (assembled_matrix(data) @ assembled_matrix(data)).is_zero()
    if square_zero != rep.all_pass:
        raise AssertionError("assembled d^2 = 0 disagrees with the block relations")
    return rep


def assemble(data: TwoCopyData) -> BasedChainComplex:
    """The complex on Q1 + C1 + P1 with the lower-triangular differential."""
    rep = verify_relations(data)
    if not rep.all_pass:
        raise RelationError(rep.failed)
    gens = data.Q1.generators() + data.C1.generators() + data.P1.generators()
    return BasedChainComplex.from_total(data.ring, data.Q1.grading, gens, assembled_matrix(data))


def qc_complex(data: TwoCopyData) -> BasedChainComplex:
    """QC1 = Q1 + C1 with d_qc = -dq - rho + dc (the cone of rho)."""
    dq, dc, _, rho, _, _ = _blocks(data)
    sizes = [data.Q1.size, data.C1.size]
    total = Matrix.block(data.ring, sizes, sizes, [[-dq, None], [-rho, dc]])
    return BasedChainComplex.from_total(data.ring, data.Q1.grading,
                                        data.Q1.generators() + data.C1.generators(), total)


@dataclass
class SequenceRow:
    """One period of the long exact sequence of the cone of rho.

    ``H_k(C1) -> H_k(QC1) -> H_k(Q1) -> H_{k-1}(C1)``, i.e.
    ``H_{k+1}(L) -> H^{n-k-1}(Q) -> H_k(Q) -> H_k(L)``.
    """

    k: int
    h_L_next: int          # dim H_k(C1) = dim H_{k+1}(L)
    h_cohom: int           # dim H_k(QC1) = dim H^{n-k-1}(Q)
    h_Q: int               # dim H_k(Q1)
    h_L: int               # dim H_{k-1}(C1) = dim H_k(L)
    rank_sigma: int        # inclusion C1 -> QC1 in degree k
    rank_middle: int       # projection QC1 -> Q1 in degree k
    rank_rho: int          # rho_* : H_k(Q1) -> H_{k-1}(C1)

    def labels(self, n: int) -> List[str]:
        k = self.k
        return [f"H_{k + 1}(L)", f"H^{n - k - 1}(Q)", f"H_{k}(Q)", f"H_{k}(L)"]


@dataclass
class DualityReport:
    acyclic: bool
    cone_dims: Dict[int, int]
    iso: Dict[int, Tuple[int, int, int]]     # k -> (dim H_k(QC1), dim H_{k-1}(P1), rank H_*)
    rows: List[SequenceRow]
    rho_ranks: Dict[int, int]
    exact: bool
    relations: RelationReport
    warnings: List[str] = field(default_factory=list)

    @property
    def duality_holds(self) -> bool:
        return self.acyclic and all(a == b == r for a, b, r in self.iso.values())

    def row(self, k: int) -> SequenceRow:
        return next(r for r in self.rows if r.k == k)


def duality_check(data: TwoCopyData) -> DualityReport:
    rel = verify_relations(data)
    if not rel.all_pass:
        raise RelationError(rel.failed)
    notes = []
    if data.ring != Z2 and data.n % 2 == 1:
        notes.append("ring is not Z2 and n is odd: the augmentation sign twist on "
                     "the shifted copy is not modelled; signs may be off")
        warnings.warn(notes[-1])
    G = data.Q1.grading
    QC = qc_complex(data)
    # QC's basis is degree-sorted; block matrices below are in Q1-then-C1 order
    perm = QC.order_in(data.Q1.labels() + data.C1.labels())
    H = GradedMap(QC, data.P1,
                  Matrix.block(data.ring, [data.P1.size], [data.Q1.size, data.C1.size],
                               [[data.eta.matrix, data.sigma.matrix]])
                  .submatrix(range(data.P1.size), perm))
    cone = mapping_cone(H)
    if cone != assemble(data):
        raise AssertionError("cone of H differs from the assembled complex")
    hc = homology_field(cone)
    acyclic = hc.total() == 0

    hqc, hp = homology_field(QC), homology_field(data.P1)
    hq, hcm = homology_field(data.Q1), homology_field(data.C1)
    iso_degrees = sorted(set(QC.degrees()) | {G.reduce(k + 1) for k in data.P1.degrees()})
    iso = {k: (hqc[k], hp[k - 1], H.induced_rank(k)) for k in iso_degrees}

    incl = GradedMap(data.C1, QC, Matrix.block(
        data.ring, [data.Q1.size, data.C1.size], [data.C1.size],
        [[None], [Matrix.identity(data.ring, data.C1.size)]])
        .submatrix(perm, range(data.C1.size)), degree=0)
    proj = GradedMap(QC, data.Q1.negated(), Matrix.block(
        data.ring, [data.Q1.size], [data.Q1.size, data.C1.size],
        [[Matrix.identity(data.ring, data.Q1.size), None]])
        .submatrix(range(data.Q1.size), perm), degree=0)
    for m in (incl, proj, data.rho):
        assert m.is_chain_map()

    if G.is_integral:
        span = set(data.Q1.degrees()) | set(data.C1.degrees())
        span |= {k + 1 for k in data.C1.degrees()}
        ks = range(min(span), max(span) + 1) if span else range(0)
    else:
        ks = G.degrees()
    rows = []
    exact = True
    for k in ks:
        r = SequenceRow(k, hcm[k], hqc[k], hq[k], hcm[k - 1],
                        incl.induced_rank(k), proj.induced_rank(k), data.rho.induced_rank(k))
        rows.append(r)
        rank_sigma_prev = incl.induced_rank(k - 1)
        exact &= (r.h_cohom == r.rank_sigma + r.rank_middle
                  and r.h_Q == r.rank_middle + r.rank_rho
                  and r.h_L == r.rank_rho + rank_sigma_prev)
    rho_ranks = {k: data.rho.induced_rank(k) for k in data.Q1.degrees()}
    return DualityReport(acyclic, hc.dims(), iso, rows, rho_ranks, exact, rel, notes)


@dataclass
class AdjointnessReport:
    failures: List[Tuple[str, str, object, object]]

    @property
    def holds(self) -> bool:
        return not self.failures


def adjointness_check(data: TwoCopyData,
                      intersection_pairing: Matrix | Mapping[Tuple[str, str], object]
                      ) -> AdjointnessReport:
    """Check <sigma x, q> = x . rho q for every C1 generator x and Q1 generator q.

    ``intersection_pairing`` is a square matrix on the C1 basis (whole-space
    order) or a ``{(x, y): value}`` dictionary of its nonzero entries.
    """
    R = data.ring
    C1 = data.C1
    if isinstance(intersection_pairing, Matrix):
        if intersection_pairing.shape != (C1.size, C1.size):
            raise ValueError(f"pairing must be {C1.size}x{C1.size}, "
                             f"got {intersection_pairing.shape}")
        B = intersection_pairing
    else:
        rows = [[R.zero] * C1.size for _ in range(C1.size)]
        for (x, y), v in intersection_pairing.items():
            rows[C1.locate(x)[2]][C1.locate(y)[2]] = R(v)
        B = Matrix(R, C1.size, C1.size, rows)
    rhs_all = B @ data.rho.matrix          # (x, q) -> x . rho q
    fails = []
    for xi, x in enumerate(C1.labels()):
        for qi, q in enumerate(data.Q1.labels()):
            pi = data.P1.locate(data.pairing[q])[2]
            lhs = data.sigma.matrix[pi, xi]
            rhs = rhs_all[xi, qi]
            if lhs != rhs:
                fails.append((x, q, lhs, rhs))
    return AdjointnessReport(fails)


def induced_composite_ranks(data: TwoCopyData) -> Dict[int, int]:
    """Ranks of (sigma o rho)_* on H(Q1); zero whenever the relations hold."""
    return data.sigma.compose(data.rho).induced_ranks()
