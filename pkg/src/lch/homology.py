"""Based chain complexes and their homology.

A :class:`BasedChainComplex` keeps an ordered list of basis labels per
degree and one boundary matrix per degree, ``d[k]: C_k -> C_{k-1}`` with
shape ``(dim C_{k-1}, dim C_k)``.  Degrees live in a GradingGroup, so with
a cyclic grading the boundary out of degree 0 lands in degree N-1.

Whole-space views (``total_matrix``, :class:`GradedMap`) order the basis
by ascending degree and then by the per-degree order.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .linalg import Matrix, smith_invariants
from .rings import CoefficientRing, GradingGroup, ZZ


class BasedChainComplex:
    def __init__(self, ring: CoefficientRing, grading: GradingGroup,
                 basis: Mapping[int, Sequence[str]],
                 boundary: Optional[Mapping[int, Matrix]] = None):
        self.ring = ring
        self.grading = grading
        b: Dict[int, Tuple[str, ...]] = {}
        for k, labels in basis.items():
            rk = grading.reduce(k)
            if rk in b and labels:
                raise ValueError(f"degree {k} given twice (reduces to {rk})")
            if labels:
                b[rk] = tuple(labels)
        self.basis = dict(sorted(b.items()))
        seen = [l for ls in self.basis.values() for l in ls]
        if len(set(seen)) != len(seen):
            raise ValueError("basis labels must be unique")
        self._index = {}
        off = 0
        for k, ls in self.basis.items():
            for i, l in enumerate(ls):
                self._index[l] = (k, i, off + i)
            off += len(ls)
        self._d: Dict[int, Matrix] = {}
        for k, m in (boundary or {}).items():
            rk = grading.reduce(k)
            shape = (self.dim(rk - 1), self.dim(rk))
            if m.shape != shape:
                raise ValueError(f"boundary in degree {rk} has shape {m.shape}, expected {shape}")
            if m.ring != ring:
                raise ValueError("boundary matrix ring mismatch")
            if not m.is_zero():
                self._d[rk] = m
        for k in self.basis:
            if not (self.d(k - 1) @ self.d(k)).is_zero():
                raise ValueError(f"boundary does not square to zero at degree {k}")

    # -- construction helpers ----------------------------------------------

    @classmethod
    def from_dict(cls, ring, grading, generators: Sequence[Tuple[str, int]],
                  boundary: Mapping[str, Mapping[str, object]] = None) -> "BasedChainComplex":
        """Build from ``[(label, degree)]`` and ``{label: {label: coeff}}``."""
        basis: Dict[int, List[str]] = {}
        for label, deg in generators:
            basis.setdefault(grading.reduce(deg), []).append(label)
        C = cls(ring, grading, basis)
        mats = {}
        for k in C.basis:
            rows = [[ring.zero] * C.dim(k) for _ in range(C.dim(k - 1))]
            for j, src in enumerate(C.basis[k]):
                for tgt, c in (boundary or {}).get(src, {}).items():
                    tk, ti, _ = C.locate(tgt)
                    if tk != grading.reduce(k - 1):
                        raise ValueError(f"d{src} contains {tgt} of degree {tk}, "
                                         f"expected degree {grading.reduce(k - 1)}")
                    rows[ti][j] = ring.add(rows[ti][j], ring(c))
            mats[k] = Matrix(ring, C.dim(k - 1), C.dim(k), rows)
        return cls(ring, grading, C.basis, mats)

    @classmethod
    def from_total(cls, ring, grading, generators: Sequence[Tuple[str, int]],
                   total: Matrix) -> "BasedChainComplex":
        """Build from a whole-space matrix in the order of ``generators``."""
        d = {}
        for j, (src, _) in enumerate(generators):
            col = {generators[i][0]: x for i, x in enumerate(total.column(j)) if x != 0}
            if col:
                d[src] = col
        return cls.from_dict(ring, grading, generators, d)

    # -- accessors -------------------------------------------------------------

    def degrees(self) -> List[int]:
        return list(self.basis)

    def dim(self, k: int) -> int:
        return len(self.basis.get(self.grading.reduce(k), ()))

    def d(self, k: int) -> Matrix:
        k = self.grading.reduce(k)
        m = self._d.get(k)
        if m is None:
            return Matrix.zeros(self.ring, self.dim(k - 1), self.dim(k))
        return m

    @property
    def size(self) -> int:
        return len(self._index)

    def labels(self) -> List[str]:
        return [l for ls in self.basis.values() for l in ls]

    def generators(self) -> List[Tuple[str, int]]:
        return [(l, k) for k, ls in self.basis.items() for l in ls]

    def locate(self, label: str) -> Tuple[int, int, int]:
        """(degree, position within degree, position in the whole basis)."""
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown basis label {label!r}") from None

    def order_in(self, labels: Sequence[str]) -> List[int]:
        """For each whole-space basis element, its position in ``labels``.

        Used to move a matrix written in a concatenated block order into
        this complex's degree-sorted order.
        """
        where = {l: i for i, l in enumerate(labels)}
        return [where[l] for l in self.labels()]

    def degree_of(self, label: str) -> int:
        return self.locate(label)[0]

    def offset(self, k: int) -> int:
        off = 0
        for kk, ls in self.basis.items():
            if kk == self.grading.reduce(k):
                return off
            off += len(ls)
        return off

    def total_matrix(self) -> Matrix:
        n = self.size
        rows = [[self.ring.zero] * n for _ in range(n)]
        for k, m in self._d.items():
            so, to = self.offset(k), self.offset(k - 1)
            for i, j, x in m.nonzero_entries():
                rows[to + i][so + j] = x
        return Matrix(self.ring, n, n, rows)

    def boundary_dict(self) -> Dict[str, Dict[str, object]]:
        out: Dict[str, Dict[str, object]] = {}
        for k, m in self._d.items():
            src, tgt = self.basis[k], self.basis[self.grading.reduce(k - 1)]
            for i, j, x in sorted(m.nonzero_entries(), key=lambda e: (e[1], e[0])):
                out.setdefault(src[j], {})[tgt[i]] = x
        return {l: out[l] for l in self.labels() if l in out}

    def is_zero(self) -> bool:
        return self.size == 0

    def __eq__(self, other) -> bool:
        return (isinstance(other, BasedChainComplex) and self.ring == other.ring
                and self.grading == other.grading and self.basis == other.basis
                and self._d == other._d)

    def __repr__(self) -> str:
        dims = {k: len(v) for k, v in self.basis.items()}
        return f"BasedChainComplex({self.ring}, {self.grading}, dims={dims})"

    # -- derived complexes ---------------------------------------------------

    def negated(self) -> "BasedChainComplex":
        return BasedChainComplex(self.ring, self.grading, self.basis,
                                 {k: -m for k, m in self._d.items()})

    def shifted(self, s: int, relabel: Callable[[str], str] = None) -> "BasedChainComplex":
        """Same boundary with every degree raised by ``s``."""
        f = relabel or (lambda l: l)
        return BasedChainComplex(
            self.ring, self.grading,
            {k + s: [f(l) for l in ls] for k, ls in self.basis.items()},
            {k + s: m for k, m in self._d.items()})

    def relabeled(self, f: Callable[[str], str]) -> "BasedChainComplex":
        return self.shifted(0, f)

    def with_ring(self, ring: CoefficientRing) -> "BasedChainComplex":
        return BasedChainComplex(
            ring, self.grading, self.basis,
            {k: Matrix(ring, m.nrows, m.ncols, m.rows) for k, m in self._d.items()})

    def direct_sum(self, other: "BasedChainComplex") -> "BasedChainComplex":
        gens = self.generators() + other.generators()
        d = dict(self.boundary_dict())
        d.update(other.boundary_dict())
        return BasedChainComplex.from_dict(self.ring, self.grading, gens, d)


class GradedMap:
    """A linear map between based complexes raising degree by ``degree``.

    ``matrix`` is indexed by the whole-space bases: shape
    ``(target.size, source.size)``.
    """

    def __init__(self, source: BasedChainComplex, target: BasedChainComplex,
                 matrix: Matrix, degree: int = -1):
        if matrix.shape != (target.size, source.size):
            raise ValueError(f"map matrix has shape {matrix.shape}, expected "
                             f"{(target.size, source.size)}")
        self.source, self.target, self.matrix, self.degree = source, target, matrix, degree
        src_deg = [k for _, k in source.generators()]
        tgt_deg = [k for _, k in target.generators()]
        G = source.grading
        for i, j, _ in matrix.nonzero_entries():
            if tgt_deg[i] != G.reduce(src_deg[j] + degree):
                raise ValueError(
                    f"entry {target.labels()[i]} <- {source.labels()[j]} breaks degree "
                    f"{degree}: {src_deg[j]} -> {tgt_deg[i]}")

    @classmethod
    def zero(cls, source, target, degree=-1) -> "GradedMap":
        return cls(source, target, Matrix.zeros(source.ring, target.size, source.size), degree)

    @classmethod
    def from_dict(cls, source, target, images: Mapping[str, Mapping[str, object]],
                  degree: int = -1) -> "GradedMap":
        R = source.ring
        rows = [[R.zero] * source.size for _ in range(target.size)]
        for s, img in images.items():
            j = source.locate(s)[2]
            for t, c in img.items():
                i = target.locate(t)[2]
                rows[i][j] = R.add(rows[i][j], R(c))
        return cls(source, target, Matrix(R, target.size, source.size, rows), degree)

    def block(self, k: int) -> Matrix:
        """The component ``source_k -> target_{k+degree}``."""
        S, T = self.source, self.target
        k = S.grading.reduce(k)
        tk = S.grading.reduce(k + self.degree)
        so, to = S.offset(k), T.offset(tk)
        return self.matrix.submatrix(range(to, to + T.dim(tk)), range(so, so + S.dim(k)))

    def as_dict(self) -> Dict[str, Dict[str, object]]:
        out: Dict[str, Dict[str, object]] = {}
        sl, tl = self.source.labels(), self.target.labels()
        for i, j, x in sorted(self.matrix.nonzero_entries(), key=lambda e: (e[1], e[0])):
            out.setdefault(sl[j], {})[tl[i]] = x
        return out

    def compose(self, first: "GradedMap") -> "GradedMap":
        """``self o first``."""
        return GradedMap(first.source, self.target, self.matrix @ first.matrix,
                         self.degree + first.degree)

    def chain_map_defect(self) -> Matrix:
        """f d_S - d_T f on the whole space; zero iff f is a chain map."""
        return (self.matrix @ self.source.total_matrix()
                - self.target.total_matrix() @ self.matrix)

    def is_chain_map(self) -> bool:
        return self.chain_map_defect().is_zero()

    def induced_rank(self, k: int) -> int:
        """Rank of the map induced on homology out of degree ``k`` (field only)."""
        S, T = self.source, self.target
        tk = S.grading.reduce(k + self.degree)
        cycles = S.d(k).nullspace() if S.dim(k) else []
        if not cycles or T.dim(tk) == 0:
            return 0
        F = self.block(k)
        images = [F.apply(z) for z in cycles]
        bounds = T.d(tk + 1).columns()
        both = images + bounds
        rank_both = Matrix(S.ring, len(both), T.dim(tk), both).rank()
        rank_b = Matrix(S.ring, len(bounds), T.dim(tk), bounds).rank() if bounds else 0
        return rank_both - rank_b

    def induced_ranks(self) -> Dict[int, int]:
        return {k: self.induced_rank(k) for k in self.source.degrees()}


@dataclass
class HomologyProfile:
    """Per-degree free rank (dimension over a field) and torsion."""

    ranks: Dict[int, int]
    torsion: Dict[int, List[int]] = field(default_factory=dict)
    grading: GradingGroup = field(default_factory=GradingGroup)

    def dims(self) -> Dict[int, int]:
        return {k: r for k, r in sorted(self.ranks.items()) if r}

    def __getitem__(self, k: int) -> int:
        return self.ranks.get(self.grading.reduce(k), 0)

    def total(self) -> int:
        return sum(self.ranks.values())


def _ranks(C: BasedChainComplex) -> Dict[int, int]:
    return {k: C.d(k).rank() for k in C.degrees()}


def homology_field(C: BasedChainComplex) -> HomologyProfile:
    """dim H_k = dim C_k - rank d_k - rank d_{k+1}."""
    if not C.ring.is_field():
        raise ValueError(f"homology_field needs a field, not {C.ring}")
    r = _ranks(C)
    G = C.grading
    return HomologyProfile(
        {k: C.dim(k) - r[k] - r.get(G.reduce(k + 1), 0) for k in C.degrees()},
        {}, G)


def homology_integral(C: BasedChainComplex) -> HomologyProfile:
    """Free ranks and torsion coefficients via Smith normal form."""
    if C.ring != ZZ:
        raise ValueError(f"homology_integral needs integer coefficients, not {C.ring}")
    G = C.grading
    inv = {k: smith_invariants(C.d(k)) for k in C.degrees()}
    ranks, torsion = {}, {}
    for k in C.degrees():
        out = len(inv[k])
        incoming = inv.get(G.reduce(k + 1), [])
        ranks[k] = C.dim(k) - out - len(incoming)
        t = [x for x in incoming if x > 1]
        if t:
            torsion[k] = t
    return HomologyProfile(ranks, torsion, G)


class LaurentPoly:
    """Integer Laurent polynomial in t, stored as ``{exponent: coefficient}``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self.coeffs = {k: int(v) for k, v in sorted((coeffs or {}).items()) if v}

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "LaurentPoly":
        return cls({k: c})

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.coeffs == other.coeffs
        if other == 0:
            return not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: Dict[int, int] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + x * y
        return LaurentPoly(out)

    def invert(self) -> "LaurentPoly":
        """P(t^-1)."""
        return LaurentPoly({-k: v for k, v in self.coeffs.items()})

    def shift(self, m: int) -> "LaurentPoly":
        """t^m P(t)."""
        return LaurentPoly({k + m: v for k, v in self.coeffs.items()})

    def __getitem__(self, k: int) -> int:
        return self.coeffs.get(k, 0)

    def at_one(self) -> int:
        return sum(self.coeffs.values())

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, v in self.coeffs.items():
            if k == 0:
                mono = ""
            elif k == 1:
                mono = "t"
            else:
                mono = f"t^{k}"
            if not mono:
                body = str(abs(v))
            elif abs(v) == 1:
                body = mono
            else:
                body = f"{abs(v)}{mono}"
            if not parts:
                parts.append(body if v > 0 else "-" + body)
            else:
                parts.append(("+ " if v > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.coeffs})"


def poincare_chekanov(profile: HomologyProfile) -> LaurentPoly:
    if not profile.grading.is_integral:
        raise ValueError("Poincare polynomial needs a Z-grading")
    if profile.torsion:
        raise ValueError("Poincare polynomial is defined for field profiles")
    return LaurentPoly(profile.ranks)


def default_dual_label(label: str) -> str:
    if label.startswith("q"):
        return "p" + label[1:]
    return label + "*"


def dualize(C: BasedChainComplex, n: int,
            label: Callable[[str], str] = default_dual_label) -> BasedChainComplex:
    """The dual complex in degrees ``n - 2 - k``.

    Each basis element q gets a dual p with <p_i, q_j> = delta_ij, and
    <d p_j, q_k> = <p_j, d q_k>; the boundary out of degree n-1-k is the
    transpose of C's boundary out of degree k.
    """
    if not C.ring.is_field():
        raise ValueError(f"dualize needs a field, not {C.ring}")
    G = C.grading
    basis = {n - 2 - k: [label(l) for l in ls] for k, ls in C.basis.items()}
    bd = {n - 1 - k: C.d(k).T for k in C.degrees() if C.dim(k - 1)}
    return BasedChainComplex(C.ring, G, basis, bd)


def mapping_cone(f: GradedMap) -> BasedChainComplex:
    """Cone of a degree -1 chain map f: C -> D.

    Basis C + D in their own degrees; differential
    (c, d) -> (-d_C c, f c + d_D d).
    """
    if f.degree != -1:
        raise ValueError("mapping_cone expects a degree -1 map")
    if not f.is_chain_map():
        raise ValueError("f is not a chain map: f d_C != d_D f")
    C, D = f.source, f.target
    if set(C.labels()) & set(D.labels()):
        raise ValueError("source and target share basis labels; relabel one of them")
    total = Matrix.block(C.ring, [C.size, D.size], [C.size, D.size],
                         [[-C.total_matrix(), None], [f.matrix, D.total_matrix()]])
    return BasedChainComplex.from_total(C.ring, C.grading,
                                        C.generators() + D.generators(), total)


def euler_characteristic(C: BasedChainComplex) -> int:
    """Alternating sum of chain dimensions, cross-checked against homology."""
    G = C.grading
    if G.order % 2 == 1:
        raise ValueError("Euler characteristic needs Z or an even-order grading")
    chains = sum((-1) ** (k % 2) * C.dim(k) for k in C.degrees())
    H = homology_field(C) if C.ring.is_field() else homology_integral(C)
    hom = sum((-1) ** (k % 2) * r for k, r in H.ranks.items())
    if chains != hom:
        raise AssertionError(f"Euler characteristic mismatch: chains {chains}, homology {hom}")
    return chains
