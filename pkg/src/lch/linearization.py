"""Augmentations, the conjugated differential, and the linearized complex."""

from __future__ import annotations

import itertools
from typing import Dict, Iterable, List, Mapping, Optional

from .algebra import DGA, NoncommPoly, word_length_components
from .homology import BasedChainComplex
from .linalg import Matrix
from .rings import Element


class Augmentation:
    """A graded unital algebra map to the ground ring, given on generators.

    Unlisted generators are sent to 0.  Construction only records the
    values; :meth:`check` (or :func:`check_augmentation`) tests eps o d = 0.
    """

    __slots__ = ("ring", "values")

    def __init__(self, ring, values: Mapping[str, Element] | None = None):
        self.ring = ring
        self.values = {k: ring(v) for k, v in (values or {}).items() if ring(v) != 0}

    def __call__(self, name: str) -> Element:
        return self.values.get(name, self.ring.zero)

    def support(self) -> List[str]:
        return list(self.values)

    def evaluate(self, dga: DGA, p: NoncommPoly) -> Element:
        R = self.ring
        vals = [self(n) for n in dga.names]
        total = R.zero
        for w, c in p.terms():
            x = c
            for i in w:
                x = R.mul(x, vals[i])
                if x == 0:
                    break
            total = R.add(total, x)
        return total

    def problems(self, dga: DGA) -> List[str]:
        out = []
        if self.ring != dga.ring:
            out.append(f"augmentation ring {self.ring} != DGA ring {dga.ring}")
            return out
        for name in self.values:
            if name not in dga.names:
                out.append(f"unknown generator {name}")
            elif dga.degree(name) != 0:
                out.append(f"eps({name}) != 0 but |{name}| = {dga.degree(name)}")
        if out:
            return out
        for i, name in enumerate(dga.names):
            v = self.evaluate(dga, dga.d(i))
            if v != 0:
                out.append(f"eps(d{name}) = {v}")
        return out

    def is_valid(self, dga: DGA) -> bool:
        return not self.problems(dga)

    def __eq__(self, other) -> bool:
        return isinstance(other, Augmentation) and self.ring == other.ring and self.values == other.values

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.values.items()))))

    def __repr__(self) -> str:
        return f"Augmentation({self.values})"


def check_augmentation(dga: DGA, eps: Augmentation) -> None:
    bad = eps.problems(dga)
    if bad:
        raise ValueError("not an augmentation: " + "; ".join(bad))


def enumerate_augmentations(dga: DGA) -> List[Augmentation]:
    """All augmentations over a finite prime field, in lexicographic order.

    Values are assigned to the degree-0 generators in table order, trying
    0, 1, ..., p-1 at each step.  A constraint eps(dq) = 0 is checked as
    soon as every degree-0 letter it involves has been assigned.
    """
    R = dga.ring
    if not (R.is_finite() and R.is_field()):
        raise ValueError(f"enumeration needs a finite prime field, not {R}")
    free = [i for i in range(len(dga)) if dga.degree(i) == 0]
    pos = {g: k for k, g in enumerate(free)}

    # Only words made entirely of degree-0 letters can evaluate nonzero.
    constraints = []
    for i in range(len(dga)):
        terms = [(w, c) for w, c in dga.d(i).terms() if all(j in pos for j in w)]
        if not terms:
            continue
        last = max((pos[j] for w, _ in terms for j in w), default=-1)
        constraints.append((last, terms))
    by_step: Dict[int, list] = {}
    for last, terms in constraints:
        by_step.setdefault(last, []).append(terms)
    # constant-only constraints (last == -1) must already vanish
    if any(_eval(terms, {}, R) != 0 for terms in by_step.pop(-1, [])):
        return []

    results: List[Augmentation] = []
    values: Dict[int, Element] = {}
    names = dga.names

    def search(k: int):
        if k == len(free):
            results.append(Augmentation(R, {names[g]: values[g] for g in free}))
            return
        g = free[k]
        for v in R.elements():
            values[g] = v
            if all(_eval(t, values, R) == 0 for t in by_step.get(k, ())):
                search(k + 1)
        del values[g]

    search(0)
    return results


def _eval(terms, values, R) -> Element:
    total = R.zero
    for w, c in terms:
        x = c
        for j in w:
            x = R.mul(x, values[j])
        total = R.add(total, x)
    return total


def brute_force_augmentations(dga: DGA) -> List[Augmentation]:
    """Test every assignment to the degree-0 generators; reference oracle.

    Shares no code with :func:`enumerate_augmentations`: every assignment
    is built in full and every differential is evaluated on it.
    """
    R = dga.ring
    if not (R.is_finite() and R.is_field()):
        raise ValueError(f"brute force needs a finite prime field, not {R}")
    p = R.modulus
    free = [i for i in range(len(dga)) if dga.degree(i) == 0]
    polys = [list(dga.d(i).terms()) for i in range(len(dga))]
    out = []
    vals = [0] * len(dga)
    for choice in itertools.product(range(p), repeat=len(free)):
        for i, v in zip(free, choice):
            vals[i] = v
        ok = True
        for terms in polys:
            total = 0
            for w, c in terms:
                x = c
                for j in w:
                    x *= vals[j]
                total += x
            if total % p:
                ok = False
                break
        if ok:
            out.append(Augmentation(R, {dga.names[i]: v for i, v in zip(free, choice)}))
    return out


def conjugate(dga: DGA, eps: Augmentation, check: bool = True) -> DGA:
    """Replace every letter q by q + eps(q) in the differential.

    ``check=False`` skips the augmentation test, so the substitution can be
    applied to an already conjugated DGA (over Z2 doing it twice undoes it).
    """
    if check:
        check_augmentation(dga, eps)
    R = dga.ring
    sub = [NoncommPoly(R, {(i,): 1, (): eps(n)}) for i, n in enumerate(dga.names)]
    new = {}
    for i, name in enumerate(dga.names):
        acc = NoncommPoly.zero(R)
        for w, c in dga.d(i).terms():
            term = NoncommPoly.constant(R, c)
            for j in w:
                term = term * sub[j]
            acc = acc + term
        new[name] = acc
    return dga.with_differential(new)


def linearize(dga: DGA, eps: Optional[Augmentation] = None) -> BasedChainComplex:
    """The complex (Q, d_1^eps) spanned by the generators."""
    if eps is None:
        eps = Augmentation(dga.ring)
    conj = conjugate(dga, eps)
    gens = [(g.name, g.degree) for g in dga.generators]
    d = {}
    for i, name in enumerate(dga.names):
        lin = word_length_components(conj.d(i)).get(1)
        if lin is not None:
            d[name] = {dga.names[w[0]]: c for w, c in lin.terms()}
    # BasedChainComplex refuses a boundary that does not square to zero
    return BasedChainComplex.from_dict(dga.ring, dga.grading, gens, d)


def linearized_boundary_matrix(dga: DGA, eps: Augmentation) -> Matrix:
    return linearize(dga, eps).total_matrix()


def augmentations_or_zero(dga: DGA) -> List[Augmentation]:
    """Enumerate over a finite field; elsewhere use eps = 0 when the DGA is good."""
    R = dga.ring
    if R.is_finite() and R.is_field():
        return enumerate_augmentations(dga)
    zero = Augmentation(R)
    if zero.is_valid(dga):
        return [zero]
    raise ValueError(f"cannot enumerate augmentations over {R}; "
                     f"the DGA is not good so eps = 0 is unavailable")
