"""The free unital graded algebra on Reeb chords and its differential."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .rings import CoefficientRing, Element, GradingGroup

Word = Tuple[int, ...]


class NoncommPoly:
    """A finite sum of words with nonzero coefficients.

    Words are tuples of generator indices; ``()`` is the unit.  Terms are
    normalized on construction, so equal polynomials compare equal.
    """

    __slots__ = ("ring", "_terms")

    def __init__(self, ring: CoefficientRing, terms: Mapping[Word, Element] | Iterable = ()):
        self.ring = ring
        acc: Dict[Word, Element] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            w = tuple(w)
            acc[w] = ring.add(acc.get(w, ring.zero), ring(c))
        self._terms = {w: c for w, c in sorted(acc.items(), key=_word_key) if c != 0}

    @classmethod
    def zero(cls, ring) -> "NoncommPoly":
        return cls(ring)

    @classmethod
    def one(cls, ring) -> "NoncommPoly":
        return cls(ring, {(): 1})

    @classmethod
    def gen(cls, ring, i: int) -> "NoncommPoly":
        return cls(ring, {(i,): 1})

    @classmethod
    def constant(cls, ring, c) -> "NoncommPoly":
        return cls(ring, {(): c})

    def terms(self) -> Iterator[Tuple[Word, Element]]:
        return iter(self._terms.items())

    def words(self) -> List[Word]:
        return list(self._terms)

    def coefficient(self, w: Word) -> Element:
        return self._terms.get(tuple(w), self.ring.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, NoncommPoly):
            return self.ring == other.ring and self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, tuple(self._terms.items())))

    def __add__(self, other: "NoncommPoly") -> "NoncommPoly":
        return NoncommPoly(self.ring, list(self.terms()) + list(other.terms()))

    def __neg__(self) -> "NoncommPoly":
        return NoncommPoly(self.ring, {w: self.ring.neg(c) for w, c in self.terms()})

    def __sub__(self, other: "NoncommPoly") -> "NoncommPoly":
        return self + (-other)

    def __mul__(self, other) -> "NoncommPoly":
        R = self.ring
        if not isinstance(other, NoncommPoly):
            return self.scale(other)
        return NoncommPoly(R, [(a + b, R.mul(x, y))
                               for a, x in self.terms() for b, y in other.terms()])

    def __rmul__(self, c) -> "NoncommPoly":
        return self.scale(c)

    def scale(self, c) -> "NoncommPoly":
        c = self.ring(c)
        return NoncommPoly(self.ring, {w: self.ring.mul(c, x) for w, x in self.terms()})

    def max_length(self) -> int:
        return max((len(w) for w in self._terms), default=-1)

    def format(self, names: Sequence[str]) -> str:
        return format_poly(self, names)

    def __repr__(self) -> str:
        return f"NoncommPoly({self.ring}, {self._terms})"


def _word_key(item):
    w = item[0]
    return (len(w), w)


def format_poly(p: NoncommPoly, names: Sequence[str]) -> str:
    """Render as ``1 + q7 + q7*q6*q5``; the parser in textio reads this back."""
    if p.is_zero():
        return "0"
    parts = []
    R = p.ring
    for w, c in p.terms():
        mono = "*".join(names[i] for i in w)
        coeff = str(c)
        if not mono:
            body = coeff
        elif c == 1:
            body = mono
        elif c == -1 and not R.is_finite():
            body = "-" + mono
        else:
            body = f"{coeff}*{mono}"
        parts.append(body)
    return " + ".join(parts)


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int
    action: Optional[Fraction] = None


@dataclass(frozen=True)
class GeneratorTable:
    """Ordered Reeb-chord generators with (reduced) degrees."""

    generators: Tuple[Generator, ...]

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            dup = sorted({n for n in names if names.count(n) > 1})
            raise ValueError(f"duplicate generator names: {dup}")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    def __len__(self) -> int:
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i: int) -> Generator:
        return self.generators[i]

    @property
    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def degree(self, i: int) -> int:
        return self.generators[i].degree


class DGA:
    """A based, graded, free unital algebra with a differential.

    ``differential`` maps generator names to polynomials; generators
    missing from it are cycles.  The constructor checks that the sign
    rule is well defined and that every polynomial only mentions known
    generators, but does not require d^2 = 0; call :func:`validate`.
    """

    def __init__(self, ring: CoefficientRing, grading: GradingGroup,
                 generators: Sequence[Tuple] | GeneratorTable,
                 differential: Mapping[str, NoncommPoly] | None = None,
                 ambient_dim: Optional[int] = None):
        if not isinstance(generators, GeneratorTable):
            gens = []
            for g in generators:
                if isinstance(g, Generator):
                    gens.append(Generator(g.name, grading.reduce(g.degree), g.action))
                else:
                    name, deg, *rest = g
                    act = Fraction(rest[0]) if rest and rest[0] is not None else None
                    gens.append(Generator(name, grading.reduce(deg), act))
            generators = GeneratorTable(tuple(gens))
        if ring.characteristic != 2 and not grading.parity_defined():
            raise ValueError(
                f"signs need a degree parity; grading {grading} has odd order "
                f"so only characteristic-2 coefficients are allowed, not {ring}")
        self.ring = ring
        self.grading = grading
        self.generators = generators
        self.ambient_dim = ambient_dim
        d: Dict[int, NoncommPoly] = {}
        for name, p in (differential or {}).items():
            i = generators.index(name)
            if p.ring != ring:
                raise ValueError(f"differential of {name} has ring {p.ring}, expected {ring}")
            for w in p.words():
                for j in w:
                    if not 0 <= j < len(generators):
                        raise KeyError(f"word {w} in d{name} uses unknown generator index {j}")
            if p:
                d[i] = p
        self._d = d

    # -- accessors -----------------------------------------------------------

    @property
    def names(self) -> List[str]:
        return self.generators.names

    def __len__(self) -> int:
        return len(self.generators)

    def degree(self, name_or_index) -> int:
        i = self._idx(name_or_index)
        return self.generators.degree(i)

    def word_degree(self, w: Word) -> int:
        return self.grading.reduce(sum(self.generators.degree(i) for i in w))

    def d(self, name_or_index) -> NoncommPoly:
        return self._d.get(self._idx(name_or_index), NoncommPoly.zero(self.ring))

    def gen(self, name: str) -> NoncommPoly:
        return NoncommPoly.gen(self.ring, self.generators.index(name))

    def _idx(self, x) -> int:
        if isinstance(x, str):
            return self.generators.index(x)
        if not 0 <= x < len(self.generators):
            raise KeyError(f"generator index {x} out of range")
        return x

    def differential_map(self) -> Dict[str, NoncommPoly]:
        return {self.generators[i].name: p for i, p in sorted(self._d.items())}

    def with_differential(self, differential: Mapping[str, NoncommPoly]) -> "DGA":
        return DGA(self.ring, self.grading, self.generators, differential, self.ambient_dim)

    def poly(self, terms: Iterable[Tuple[Sequence[str], Element]]) -> NoncommPoly:
        """Build a polynomial from ``(names, coeff)`` pairs."""
        return NoncommPoly(self.ring, [(tuple(self.generators.index(n) for n in ws), c)
                                       for ws, c in terms])

    def __eq__(self, other) -> bool:
        return (isinstance(other, DGA) and self.ring == other.ring
                and self.grading == other.grading
                and self.generators == other.generators
                and self._d == other._d and self.ambient_dim == other.ambient_dim)

    def __repr__(self) -> str:
        return (f"DGA(ring={self.ring}, grading={self.grading}, "
                f"generators={self.names})")

    def _sign(self, degree: int) -> Element:
        if self.ring.characteristic == 2:
            return self.ring.one
        return self.ring.sign(degree)


def apply_differential(dga: DGA, p: NoncommPoly) -> NoncommPoly:
    """Extend d linearly and by the graded Leibniz rule.

    d(ab) = (da)b + (-1)^|a| a(db); the unit is closed.
    """
    R = dga.ring
    out: List[Tuple[Word, Element]] = []
    n = len(dga.generators)
    for w, c in p.terms():
        prefix_deg = 0
        for pos, i in enumerate(w):
            if not 0 <= i < n:
                raise KeyError(f"unknown generator index {i}")
            di = dga._d.get(i)
            if di is not None:
                s = R.mul(c, dga._sign(prefix_deg))
                head, tail = w[:pos], w[pos + 1:]
                for v, x in di.terms():
                    out.append((head + v + tail, R.mul(s, x)))
            prefix_deg += dga.generators.degree(i)
    return NoncommPoly(R, out)


@dataclass
class ValidityReport:
    """Per-generator degree violations and nonzero d^2."""

    degree_violations: Dict[str, List[Tuple[Word, int]]] = field(default_factory=dict)
    square_violations: Dict[str, NoncommPoly] = field(default_factory=dict)

    @property
    def valid(self) -> bool:
        return not self.degree_violations and not self.square_violations

    def messages(self, dga: DGA) -> List[str]:
        names = dga.names
        msgs = []
        for g, bad in self.degree_violations.items():
            for w, deg in bad:
                word = "*".join(names[i] for i in w) or "1"
                msgs.append(f"d{g}: term {word} has degree {deg}, "
                            f"expected {dga.grading.reduce(dga.degree(g) - 1)}")
        for g, p in self.square_violations.items():
            msgs.append(f"d^2 {g} = {p.format(names)} != 0")
        return msgs


def validate(dga: DGA) -> ValidityReport:
    rep = ValidityReport()
    for i, g in enumerate(dga.generators):
        target = dga.grading.reduce(g.degree - 1)
        dq = dga.d(i)
        bad = [(w, dga.word_degree(w)) for w in dq.words() if dga.word_degree(w) != target]
        if bad:
            rep.degree_violations[g.name] = bad
        dd = apply_differential(dga, dq)
        if dd:
            rep.square_violations[g.name] = dd
    return rep


def word_length_components(p: NoncommPoly) -> Dict[int, NoncommPoly]:
    comps: Dict[int, List] = {}
    for w, c in p.terms():
        comps.setdefault(len(w), []).append((w, c))
    return {r: NoncommPoly(p.ring, terms) for r, terms in sorted(comps.items())}


def is_good(dga: DGA) -> bool:
    """True when no differential has a constant term."""
    return all(dga.d(i).coefficient(()) == 0 for i in range(len(dga)))


@dataclass
class ActionReport:
    violations: List[Tuple[str, Word, Fraction, Fraction]]

    @property
    def ok(self) -> bool:
        return not self.violations


def action_check(dga: DGA) -> ActionReport:
    """Every word b_1...b_k of da must have total action strictly below a's."""
    missing = [g.name for g in dga.generators if g.action is None]
    if missing:
        raise ValueError(f"generators without action: {missing}")
    bad = []
    for i, g in enumerate(dga.generators):
        for w in dga.d(i).words():
            total = sum((dga.generators[j].action for j in w), Fraction(0))
            if not g.action > total:
                bad.append((g.name, w, g.action, total))
    return ActionReport(bad)
