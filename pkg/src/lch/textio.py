"""Line-oriented text format for DGAs, duality instances and two-copy data.

A DGA file::

    # Chekanov knot
    ring Z2
    grading Z
    dim 1
    gen q1 1
    gen q7 0 action=1/2
    d q1 = 1 + q7 + q7*q6*q5
    betti 1 1

``d`` lines hold sums of monomials joined by ``+``; a monomial is an
optional coefficient (``2*``, ``-``, ``1/2*``) followed by ``*``-joined
generator names, and ``1`` is the unit.  Parentheses are rejected.

A duality instance uses the same header lines plus::

    counts 0=1 2=3 3=3        chord counts per degree
    homology 2=1 5=1          dims of linearized homology per degree
    good yes                  the DGA has no constant terms
    constraint 0=1            required dim H_0 (repeatable)

A file whose first keyword is ``twocopy`` describes two-copy blocks::

    twocopy
    ring Z2
    dim 3
    qgen q 3                  generator of Q1
    crit cmin 0               Morse critical point and its index
    crit cmax 3
    dq q = ...                boundary in Q1 (dc for the Morse complex)
    rho q = cmax
    sigma cmin = p
    eta q = 0

P1 is always the dual block of Q1; a generator ``qX`` pairs with ``pX``,
any other name ``x`` with ``x*``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import DGA, NoncommPoly, validate
from .duality import DualityInstance
from .homology import BasedChainComplex, default_dual_label
from .rings import CoefficientRing, GradingGroup, Z2
from .twocopy import MorseComplex, TwoCopyData

NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_\[\]\^'.]*\Z")
COEFF = re.compile(r"(-)?\s*(\d+(?:/\d+)?)?\s*(\*)?\s*")
Term = Tuple[Tuple[str, ...], Fraction]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int = 1):
        self.line, self.col, self.message = line, col, message
        super().__init__(f"line {line}, column {col}: {message}")


class ValidationError(ValueError):
    def __init__(self, messages: Sequence[str]):
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


# -- documents ----------------------------------------------------------

@dataclass
class GenLine:
    name: str
    degree: int
    action: Optional[Fraction] = None
    line: int = field(default=0, compare=False)


@dataclass
class DiffLine:
    name: str
    terms: List[Term]
    line: int = field(default=0, compare=False)
    col: int = field(default=1, compare=False)


@dataclass
class DgaDocument:
    ring: Optional[CoefficientRing] = None
    grading: Optional[GradingGroup] = None
    dim: Optional[int] = None
    gens: List[GenLine] = field(default_factory=list)
    diffs: List[DiffLine] = field(default_factory=list)
    betti: Optional[List[int]] = None
    counts: Optional[Dict[int, int]] = None
    homology: Optional[Dict[int, int]] = None
    good: Optional[bool] = None
    constraints: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def is_instance(self) -> bool:
        return not self.gens and (self.counts is not None or self.homology is not None)

    def betti_dict(self) -> Optional[Dict[int, int]]:
        if self.betti is None:
            return None
        return {k: b for k, b in enumerate(self.betti) if b}


@dataclass
class TwoCopyDocument:
    ring: Optional[CoefficientRing] = None
    grading: Optional[GradingGroup] = None
    dim: Optional[int] = None
    qgens: List[GenLine] = field(default_factory=list)
    crits: List[GenLine] = field(default_factory=list)
    maps: Dict[str, List[DiffLine]] = field(default_factory=dict)


MAP_KEYS = ("dq", "dc", "rho", "sigma", "eta")


# -- lexical helpers ----------------------------------------------------

def _strip_comment(raw: str) -> str:
    i = raw.find("#")
    return raw if i < 0 else raw[:i]


def _int(tok: str, line: int, col: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"cannot parse {what} {tok!r} as an integer", line, col) from None


def _tokens(text: str) -> List[Tuple[str, int]]:
    """Whitespace-separated tokens with their 1-based columns."""
    return [(m.group(), m.start() + 1) for m in re.finditer(r"\S+", text)]


def _pairs(toks: List[Tuple[str, int]], line: int) -> Dict[int, int]:
    out: Dict[int, int] = {}
    for tok, col in toks:
        k, eq, v = tok.partition("=")
        if not eq:
            raise ParseError(f"expected degree=count, got {tok!r}", line, col)
        kk = _int(k, line, col, "degree")
        if kk in out:
            raise ParseError(f"degree {kk} given twice", line, col)
        out[kk] = _int(v, line, col + len(k) + 1, "count")
        if out[kk] < 0:
            raise ParseError("counts must be nonnegative", line, col)
    return out


def parse_poly_terms(rhs: str, line: int, col0: int) -> List[Term]:
    """Parse ``1 + q7 + 2*q7*q6`` into ``[(names, coeff), ...]``."""
    if "(" in rhs or ")" in rhs:
        c = col0 + min(i for i in (rhs.find("("), rhs.find(")")) if i >= 0)
        raise ParseError("parenthesized sub-expressions are not supported", line, c)
    if not rhs.strip():
        raise ParseError("empty right-hand side", line, col0)
    terms: List[Term] = []
    pos = 0
    for piece in rhs.split("+"):
        col = col0 + pos + (len(piece) - len(piece.lstrip()))
        if not piece.strip():
            raise ParseError("empty term", line, col)
        terms.append(_parse_term(piece.strip(), line, col))
        pos += len(piece) + 1
    return terms


def _parse_term(body: str, line: int, col: int) -> Term:
    m = COEFF.match(body)
    neg, num, star = m.group(1), m.group(2), m.group(3)
    rest = body[m.end():]
    if num is not None and not star:
        if rest:
            raise ParseError(f"expected '*' after coefficient in {body!r}", line, col)
        c = Fraction(num)
        return ((), -c if neg else c)
    if star and num is None:
        raise ParseError(f"dangling '*' in {body!r}", line, col)
    c = Fraction(num) if num is not None else Fraction(1)
    if neg:
        c = -c
    names = tuple(s.strip() for s in rest.split("*"))
    for s in names:
        if not NAME.match(s):
            raise ParseError(f"bad generator name {s!r}", line, col)
    return (names, c)


# -- parsing ------------------------------------------------------------

def _header(doc, key: str, toks, line: int) -> bool:
    """Handle ring/grading/dim lines shared by both document kinds."""
    if key not in ("ring", "grading", "dim"):
        return False
    if len(toks) != 2:
        raise ParseError(f"'{key}' takes exactly one value", line, toks[0][1])
    val, col = toks[1]
    if getattr(doc, key) is not None:
        raise ParseError(f"'{key}' given twice", line, toks[0][1])
    try:
        if key == "ring":
            doc.ring = CoefficientRing.parse(val)
        elif key == "grading":
            doc.grading = GradingGroup.parse(val)
        else:
            doc.dim = _int(val, line, col, "dimension")
    except ValueError as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e), line, col) from None
    return True


def _gen_line(toks, line: int) -> GenLine:
    if len(toks) not in (3, 4):
        raise ParseError("expected 'gen <name> <degree> [action=<rational>]'", line, toks[0][1])
    name, ncol = toks[1]
    if not NAME.match(name):
        raise ParseError(f"bad generator name {name!r}", line, ncol)
    deg = _int(toks[2][0], line, toks[2][1], "degree")
    action = None
    if len(toks) == 4:
        tok, col = toks[3]
        if not tok.startswith("action="):
            raise ParseError(f"unexpected {tok!r}", line, col)
        try:
            action = Fraction(tok[len("action="):])
        except ValueError:
            raise ParseError(f"cannot parse action {tok!r}", line, col) from None
    return GenLine(name, deg, action, line)


def _eq_line(raw: str, toks, line: int) -> DiffLine:
    if len(toks) < 4 or toks[2][0] != "=":
        raise ParseError(f"expected '{toks[0][0]} <name> = <expression>'", line, toks[0][1])
    name, ncol = toks[1]
    if not NAME.match(name):
        raise ParseError(f"bad generator name {name!r}", line, ncol)
    eq_col = toks[2][1]
    rhs = raw[eq_col:]
    return DiffLine(name, parse_poly_terms(rhs, line, eq_col + 1), line, ncol)


def parse_document(text: str):
    """Parse text into a :class:`DgaDocument` or :class:`TwoCopyDocument`."""
    lines = text.splitlines()
    first = next((_strip_comment(l).split() for l in lines if _strip_comment(l).strip()), [])
    if first and first[0] == "twocopy":
        return _parse_two_copy(lines)
    return _parse_dga_doc(lines)


def _parse_dga_doc(lines: List[str]) -> DgaDocument:
    doc = DgaDocument()
    seen_d = set()
    for lineno, raw in enumerate(lines, 1):
        body = _strip_comment(raw)
        toks = _tokens(body)
        if not toks:
            continue
        key, kcol = toks[0]
        if _header(doc, key, toks, lineno):
            continue
        if key == "gen":
            doc.gens.append(_gen_line(toks, lineno))
        elif key == "d":
            dl = _eq_line(body, toks, lineno)
            if dl.name in seen_d:
                raise ParseError(f"second differential for {dl.name}", lineno, dl.col)
            seen_d.add(dl.name)
            doc.diffs.append(dl)
        elif key == "betti":
            if doc.betti is not None:
                raise ParseError("'betti' given twice", lineno, kcol)
            doc.betti = [_int(t, lineno, c, "Betti number") for t, c in toks[1:]]
        elif key in ("counts", "homology"):
            if getattr(doc, key) is not None:
                raise ParseError(f"'{key}' given twice", lineno, kcol)
            setattr(doc, key, _pairs(toks[1:], lineno))
        elif key == "good":
            if len(toks) != 2 or toks[1][0] not in ("yes", "no"):
                raise ParseError("expected 'good yes' or 'good no'", lineno, kcol)
            doc.good = toks[1][0] == "yes"
        elif key == "constraint":
            doc.constraints.extend(sorted(_pairs(toks[1:], lineno).items()))
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno, kcol)
    return doc


def _parse_two_copy(lines: List[str]) -> TwoCopyDocument:
    doc = TwoCopyDocument()
    started = False
    for lineno, raw in enumerate(lines, 1):
        body = _strip_comment(raw)
        toks = _tokens(body)
        if not toks:
            continue
        key, kcol = toks[0]
        if key == "twocopy":
            if started:
                raise ParseError("'twocopy' given twice", lineno, kcol)
            started = True
        elif _header(doc, key, toks, lineno):
            pass
        elif key in ("qgen", "crit"):
            g = _gen_line(toks, lineno)
            (doc.qgens if key == "qgen" else doc.crits).append(g)
        elif key in MAP_KEYS:
            doc.maps.setdefault(key, []).append(_eq_line(body, toks, lineno))
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno, kcol)
    return doc


# -- building objects ---------------------------------------------------

def _coerce(ring: CoefficientRing, c: Fraction, line: int):
    try:
        return ring(c)
    except (ValueError, ZeroDivisionError):
        raise ValidationError([f"line {line}: coefficient {c} is not in {ring}"]) from None


def document_to_dga(doc: DgaDocument, ring: Optional[CoefficientRing] = None,
                    check: bool = True) -> DGA:
    """Build the DGA; with ``check`` run validate and report located failures."""
    R = ring or doc.ring or Z2
    G = doc.grading or GradingGroup(0)
    errs: List[str] = []
    names = [g.name for g in doc.gens]
    dupes = sorted({n for n in names if names.count(n) > 1})
    for g in doc.gens:
        if g.name in dupes:
            errs.append(f"line {g.line}: duplicate generator {g.name}")
    if errs:
        raise ValidationError(errs)
    index = {n: i for i, n in enumerate(names)}
    diff: Dict[str, NoncommPoly] = {}
    where: Dict[str, int] = {g.name: g.line for g in doc.gens}
    for dl in doc.diffs:
        if dl.name not in index:
            errs.append(f"line {dl.line}: differential of unknown generator {dl.name}")
            continue
        terms = []
        for ws, c in dl.terms:
            unknown = [w for w in ws if w not in index]
            if unknown:
                errs.append(f"line {dl.line}: unknown generator {unknown[0]} in d{dl.name}")
                continue
            terms.append((tuple(index[w] for w in ws), _coerce(R, c, dl.line)))
        diff[dl.name] = NoncommPoly(R, terms)
        where[dl.name] = dl.line
    if errs:
        raise ValidationError(errs)
    try:
        dga = DGA(R, G, [(g.name, g.degree, g.action) for g in doc.gens], diff,
                  ambient_dim=doc.dim)
    except ValueError as e:
        raise ValidationError([str(e)]) from None
    if check:
        rep = validate(dga)
        if not rep.valid:
            msgs = []
            for g, bad in rep.degree_violations.items():
                want = G.reduce(dga.degree(g) - 1)
                for w, deg in bad:
                    word = "*".join(dga.names[i] for i in w) or "1"
                    msgs.append(f"line {where[g]}: d{g}: term {word} has degree {deg}, "
                                f"expected {want}")
            for g, p in rep.square_violations.items():
                msgs.append(f"line {where[g]}: d^2 {g} = {p.format(dga.names)} != 0")
            raise ValidationError(msgs)
    return dga


def parse_dga(text: str, ring: Optional[CoefficientRing] = None) -> DGA:
    doc = parse_document(text)
    if not isinstance(doc, DgaDocument):
        raise ValidationError(["expected a DGA document, found two-copy data"])
    return document_to_dga(doc, ring)


def document_to_instance(doc: DgaDocument, ring_is_Z2: Optional[bool] = None) -> DualityInstance:
    if doc.dim is None or doc.betti is None:
        raise ValidationError(["a duality instance needs 'dim' and 'betti' lines"])
    if ring_is_Z2 is None:
        ring_is_Z2 = doc.ring is None or doc.ring == Z2
    try:
        return DualityInstance(doc.dim, doc.betti_dict(), dims_q=doc.homology,
                               chord_counts=doc.counts, good_dga=bool(doc.good),
                               ring_is_Z2=ring_is_Z2, constraints=list(doc.constraints))
    except ValueError as e:
        raise ValidationError([str(e)]) from None


def _linear(dl: DiffLine, ring, targets: Sequence[str], what: str) -> Dict[str, object]:
    out: Dict[str, object] = {}
    for ws, c in dl.terms:
        if not ws and c == 0:
            continue
        if len(ws) != 1:
            raise ValidationError([f"line {dl.line}: {what} must be a linear combination of generators"])
        if ws[0] not in targets:
            raise ValidationError([f"line {dl.line}: {ws[0]} is not a generator of the target block"])
        out[ws[0]] = ring.add(out.get(ws[0], ring.zero), _coerce(ring, c, dl.line))
    return out


def document_to_two_copy(doc: TwoCopyDocument, ring: Optional[CoefficientRing] = None) -> TwoCopyData:
    R = ring or doc.ring or Z2
    G = doc.grading or GradingGroup(0)
    if doc.dim is None:
        raise ValidationError(["two-copy data needs a 'dim' line"])
    n = doc.dim
    qs = [g.name for g in doc.qgens]
    cs = [g.name for g in doc.crits]
    ps = [default_dual_label(q) for q in qs]
    sources = {"dq": qs, "dc": cs, "rho": qs, "sigma": cs, "eta": qs}
    targets = {"dq": qs, "dc": cs, "rho": cs, "sigma": ps, "eta": ps}
    maps: Dict[str, Dict[str, Dict[str, object]]] = {k: {} for k in MAP_KEYS}
    for key, lines in doc.maps.items():
        for dl in lines:
            if dl.name not in sources[key]:
                raise ValidationError([f"line {dl.line}: {dl.name} is not a source generator for {key}"])
            if dl.name in maps[key]:
                raise ValidationError([f"line {dl.line}: {key} of {dl.name} given twice"])
            maps[key][dl.name] = _linear(dl, R, targets[key], key)
    try:
        Q1 = BasedChainComplex.from_dict(R, G, [(g.name, g.degree) for g in doc.qgens], maps["dq"])
        morse = MorseComplex(R, n, [(g.name, g.degree) for g in doc.crits], maps["dc"])
        return TwoCopyData.build(Q1, morse, n, maps["rho"], maps["sigma"], maps["eta"])
    except (ValueError, KeyError) as e:
        raise ValidationError([str(e)]) from None


# -- printing -----------------------------------------------------------

def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_terms(terms: Sequence[Term]) -> str:
    if not terms:
        return "0"
    parts = []
    for ws, c in terms:
        mono = "*".join(ws)
        if not mono:
            parts.append(_fmt_coeff(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(f"{_fmt_coeff(c)}*{mono}")
    return " + ".join(parts)


def _fmt_pairs(d: Dict[int, int]) -> str:
    return " ".join(f"{k}={v}" for k, v in sorted(d.items()))


def _fmt_gen(key: str, g: GenLine) -> str:
    s = f"{key} {g.name} {g.degree}"
    if g.action is not None:
        s += f" action={_fmt_coeff(g.action)}"
    return s


def _fmt_header(doc) -> List[str]:
    out = []
    if doc.ring is not None:
        out.append(f"ring {doc.ring}")
    if doc.grading is not None:
        out.append(f"grading {doc.grading}")
    if doc.dim is not None:
        out.append(f"dim {doc.dim}")
    return out


def format_document(doc) -> str:
    if isinstance(doc, TwoCopyDocument):
        out = ["twocopy"] + _fmt_header(doc)
        out += [_fmt_gen("qgen", g) for g in doc.qgens]
        out += [_fmt_gen("crit", g) for g in doc.crits]
        for key in MAP_KEYS:
            out += [f"{key} {dl.name} = {format_terms(dl.terms)}" for dl in doc.maps.get(key, [])]
        return "\n".join(out) + "\n"
    out = _fmt_header(doc)
    out += [_fmt_gen("gen", g) for g in doc.gens]
    out += [f"d {dl.name} = {format_terms(dl.terms)}" for dl in doc.diffs]
    if doc.betti is not None:
        out.append("betti " + " ".join(map(str, doc.betti)))
    if doc.counts is not None:
        out.append("counts " + _fmt_pairs(doc.counts))
    if doc.homology is not None:
        out.append("homology " + _fmt_pairs(doc.homology))
    if doc.good is not None:
        out.append("good " + ("yes" if doc.good else "no"))
    for k, v in doc.constraints:
        out.append(f"constraint {k}={v}")
    return "\n".join(out) + "\n"


def dga_document(dga: DGA, betti: Optional[Dict[int, int]] = None) -> DgaDocument:
    names = dga.names
    doc = DgaDocument(ring=dga.ring, grading=dga.grading, dim=dga.ambient_dim)
    doc.gens = [GenLine(g.name, g.degree, g.action) for g in dga.generators]
    for name, p in dga.differential_map().items():
        terms = [(tuple(names[i] for i in w), Fraction(c)) for w, c in p.terms()]
        doc.diffs.append(DiffLine(name, terms))
    if betti is not None:
        top = max(betti, default=0)
        if dga.ambient_dim is not None:
            top = max(top, dga.ambient_dim)
        doc.betti = [betti.get(k, 0) for k in range(top + 1)]
    return doc


def instance_document(inst: DualityInstance) -> DgaDocument:
    doc = DgaDocument(dim=inst.n, ring=Z2 if inst.ring_is_Z2 else None)
    doc.betti = [inst.b(k) for k in range(inst.n + 1)]
    doc.counts = dict(inst.chord_counts) if inst.chord_counts is not None else None
    doc.homology = dict(inst.dims_q) if inst.dims_q is not None else None
    doc.good = inst.good_dga
    doc.constraints = list(inst.constraints)
    return doc


def _map_lines(f, sources: Sequence[str]) -> List[DiffLine]:
    d = f.as_dict()
    return [DiffLine(s, [((t,), Fraction(c)) for t, c in d[s].items()])
            for s in sources if d.get(s)]


def two_copy_document(data: TwoCopyData) -> TwoCopyDocument:
    if data.morse is None:
        raise ValueError("serializing two-copy data needs the Morse complex")
    for q, p in data.pairing.items():
        if p != default_dual_label(q):
            raise ValueError("only the default dual labels can be serialized")
    doc = TwoCopyDocument(ring=data.ring, grading=data.Q1.grading, dim=data.n)
    doc.qgens = [GenLine(l, k) for l, k in data.Q1.generators()]
    doc.crits = [GenLine(name, idx) for name, idx in data.morse.points]
    qs, cs = data.Q1.labels(), data.C1.labels()
    bq, bc = data.Q1.boundary_dict(), data.C1.boundary_dict()
    doc.maps["dq"] = [DiffLine(s, [((t,), Fraction(c)) for t, c in bq[s].items()])
                      for s in qs if bq.get(s)]
    doc.maps["dc"] = [DiffLine(s, [((t,), Fraction(c)) for t, c in bc[s].items()])
                      for s in cs if bc.get(s)]
    doc.maps["rho"] = _map_lines(data.rho, qs)
    doc.maps["sigma"] = _map_lines(data.sigma, cs)
    doc.maps["eta"] = _map_lines(data.eta, qs)
    doc.maps = {k: v for k, v in doc.maps.items() if v}
    return doc


def format_dga(dga: DGA, betti: Optional[Dict[int, int]] = None) -> str:
    return format_document(dga_document(dga, betti))
