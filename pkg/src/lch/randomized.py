"""Seeded random generators for property tests and the CLI ``--seed`` flag.

Every function takes a ``random.Random`` so results are reproducible.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple

from .algebra import DGA, NoncommPoly
from .duality import DualityInstance
from .homology import BasedChainComplex, GradedMap
from .linalg import Matrix
from .rings import QQ, CoefficientRing, GradingGroup, Z2, ZZ
from .twocopy import MorseComplex, TwoCopyData, assembled_matrix, build_dual_block

ZGRADED = GradingGroup(0)


# -- matrices -----------------------------------------------------------

def _scalar(rng: random.Random, R: CoefficientRing, nonzero: bool = False):
    if R.is_finite():
        lo = 1 if nonzero else 0
        return R(rng.randrange(lo, R.modulus))
    vals = [x for x in range(-3, 4) if x or not nonzero]
    return R(rng.choice(vals))


def random_invertible(rng: random.Random, R: CoefficientRing, n: int, steps: int = None) -> Matrix:
    """A product of elementary matrices; unimodular over Z."""
    rows = [[R.one if i == j else R.zero for j in range(n)] for i in range(n)]
    if n == 0:
        return Matrix(R, 0, 0, [])
    for _ in range(steps if steps is not None else 2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = _scalar(rng, R, nonzero=True)
            rows[i] = [R.add(a, R.mul(c, b)) for a, b in zip(rows[i], rows[j])]
        elif R.is_field() and R != Z2:
            c = _scalar(rng, R, nonzero=True)
            rows[i] = [R.mul(c, a) for a in rows[i]]
        else:
            k = rng.randrange(n)
            rows[i], rows[k] = rows[k], rows[i]
    return Matrix(R, n, n, rows)


def _block_diag(R, blocks: Sequence[Matrix]) -> Matrix:
    sizes = [b.nrows for b in blocks]
    grid = [[b if i == j else None for j, b in enumerate(blocks)] for i in range(len(blocks))]
    return Matrix.block(R, sizes, sizes, grid)


# -- complexes ----------------------------------------------------------

def random_complex(rng: random.Random, R: CoefficientRing, degrees: Sequence[int] = range(-2, 4),
                   max_rank: int = 2, max_homology: int = 2, prefix: str = "x",
                   torsion: Sequence[int] = (2, 3, 4, 6)) -> BasedChainComplex:
    """Random based complex with a known splitting, then a random change of basis.

    In each degree the basis is (new cycles mapping onto boundaries below,
    homology, boundaries).  Over Z the boundary entries are drawn from
    ``(1,) + torsion`` so torsion appears; over a field they are 1.
    """
    degrees = sorted(degrees)
    b = {k: rng.randint(0, max_rank) for k in degrees}     # rank of d out of degree k
    b[degrees[0]] = 0
    h = {k: rng.randint(0, max_homology) for k in degrees}
    # degree k: e_k = b[k] generators mapping onto b[k] boundaries in degree k-1
    dims = {k: b[k] + h[k] + b.get(k + 1, 0) for k in degrees}
    gens: List[Tuple[str, int]] = []
    for k in degrees:
        gens += [(f"{prefix}{k}_{i}".replace("-", "m"), k) for i in range(dims[k])]
    C0 = BasedChainComplex.from_dict(R, ZGRADED, gens, {})
    size = C0.size
    rows = [[R.zero] * size for _ in range(size)]
    for k in degrees:
        if k - 1 not in dims:
            continue
        src = C0.offset(k)
        tgt = C0.offset(k - 1) + b[k - 1] + h[k - 1]
        for i in range(b[k]):
            c = R.one if R.is_field() else R(rng.choice((1, 1, 1) + tuple(torsion)))
            rows[tgt + i][src + i] = c
    D = Matrix(R, size, size, rows)
    G = _block_diag(R, [random_invertible(rng, R, C0.dim(k)) for k in C0.degrees()])
    Ginv = G.inverse() if R.is_field() else _unimodular_inverse(G)
    return BasedChainComplex.from_total(R, ZGRADED, gens, G @ D @ Ginv)


def _unimodular_inverse(G: Matrix) -> Matrix:
    inv = Matrix(QQ, G.nrows, G.ncols, [[QQ(x) for x in row] for row in G.tolist()]).inverse()
    return Matrix(ZZ, G.nrows, G.ncols, [[ZZ(x) for x in row] for row in inv.tolist()])


def random_integral_complex(rng: random.Random, **kw) -> BasedChainComplex:
    return random_complex(rng, ZZ, **kw)


def _graded_positions(source: BasedChainComplex, target: BasedChainComplex, degree: int):
    G = source.grading
    sd = [k for _, k in source.generators()]
    td = [k for _, k in target.generators()]
    return [(i, j) for j in range(source.size) for i in range(target.size)
            if td[i] == G.reduce(sd[j] + degree)]


def _unit(R, nrows, ncols, i, j) -> Matrix:
    rows = [[R.zero] * ncols for _ in range(nrows)]
    rows[i][j] = R.one
    return Matrix(R, nrows, ncols, rows)


def _flat(M: Matrix) -> List:
    return [x for row in M.tolist() for x in row]


def _linear_system(source, target, degree, op):
    """Matrix of the linear map F -> op(F) on graded maps, in entry coordinates."""
    R = source.ring
    pos = _graded_positions(source, target, degree)
    cols = [_flat(op(_unit(R, target.size, source.size, i, j))) for i, j in pos]
    height = len(cols[0]) if cols else 0
    return pos, Matrix.from_columns(R, height, cols) if cols else None


def _from_coords(R, source, target, pos, coords) -> Matrix:
    rows = [[R.zero] * source.size for _ in range(target.size)]
    for (i, j), c in zip(pos, coords):
        rows[i][j] = c
    return Matrix(R, target.size, source.size, rows)


def random_chain_map(rng: random.Random, source: BasedChainComplex, target: BasedChainComplex,
                     degree: int = -1) -> GradedMap:
    """Uniform-ish random chain map f (f d_S = d_T f) of the given degree; field only."""
    R = source.ring
    if not R.is_field():
        raise ValueError("random_chain_map needs a field")
    dS, dT = source.total_matrix(), target.total_matrix()
    pos, A = _linear_system(source, target, degree, lambda F: F @ dS - dT @ F)
    if A is None:
        return GradedMap.zero(source, target, degree)
    basis = A.nullspace()
    coords = [R.zero] * len(pos)
    for v in basis:
        c = _scalar(rng, R)
        coords = [R.add(a, R.mul(c, x)) for a, x in zip(coords, v)]
    return GradedMap(source, target, _from_coords(R, source, target, pos, coords), degree)


# -- two-copy data ------------------------------------------------------

def random_morse(rng: random.Random, R: CoefficientRing, n: int, extra: int = 2) -> MorseComplex:
    """Sphere min/max plus random cancelling pairs and dual pairs of cycles."""
    pts = [("m0", 0), (f"m{n}", n)]
    bd: Dict[str, Dict[str, object]] = {}
    count = 0
    for _ in range(rng.randint(0, extra)):
        count += 1
        if rng.random() < 0.5:
            j = rng.randrange(n)            # cancelling pair in index j+1 -> j
            a, b = f"a{count}", f"b{count}"
            pts += [(b, j), (a, j + 1)]
            bd[a] = {b: 1}
        else:
            j = rng.randint(1, n - 1) if n > 1 else 0
            pts += [(f"u{count}", j), (f"v{count}", n - j)]
    return MorseComplex(R, n, pts, bd)


def _solve_eta(Q1, P1, sigma_rho: Matrix) -> Optional[Matrix]:
    R = Q1.ring
    dq, dp = Q1.total_matrix(), P1.total_matrix()
    pos, A = _linear_system(Q1, P1, -1, lambda E: E @ dq + dp @ E)
    rhs = _flat(-sigma_rho)
    if A is None:
        return sigma_rho if sigma_rho.is_zero() else None
    sol = A.solve(rhs)
    if sol is None:
        return None
    return _from_coords(R, Q1, P1, pos, sol)


def random_two_copy(rng: random.Random, R: CoefficientRing = Z2, n: Optional[int] = None,
                    max_tries: int = 50) -> TwoCopyData:
    """Random data satisfying every block relation.

    Q1 is random, P1 its dual, C1 from a small Morse model; rho and sigma
    are random chain maps; eta solves eta dq + dp eta = -sigma rho.
    Resamples when that equation has no solution.
    """
    for _ in range(max_tries):
        nn = n if n is not None else rng.randint(2, 4)
        lo = rng.randint(-2, 0)
        Q1 = random_complex(rng, R, range(lo, nn + 2), max_rank=1, max_homology=2, prefix="q")
        P1, pairing = build_dual_block(Q1, nn)
        morse = random_morse(rng, R, nn)
        C1 = morse.shifted_complex(Q1.grading)
        if Q1.size + P1.size + C1.size > 24:
            continue
        rho = random_chain_map(rng, Q1, C1)
        sigma = random_chain_map(rng, C1, P1)
        eta = _solve_eta(Q1, P1, sigma.matrix @ rho.matrix)
        if eta is None:
            continue
        return TwoCopyData(Q1, C1, P1, rho, sigma, GradedMap(Q1, P1, eta), nn, pairing, morse)
    raise RuntimeError("could not sample a consistent two-copy instance")


def break_relation(rng: random.Random, data: TwoCopyData) -> Tuple[TwoCopyData, str]:
    """Flip one degree-respecting entry of rho, sigma or eta so a relation fails."""
    R = data.ring
    options = []
    for name in ("rho", "sigma", "eta"):
        f = getattr(data, name)
        for i, j in _graded_positions(f.source, f.target, -1):
            options.append((name, i, j))
    rng.shuffle(options)
    for name, i, j in options:
        f = getattr(data, name)
        new = f.matrix.with_entry(i, j, R.add(f.matrix[i, j], R.one))
        cand = data.replace(**{name: new})
        if not (assembled_matrix(cand) @ assembled_matrix(cand)).is_zero():
            return cand, name
    raise ValueError("no single-entry perturbation breaks a relation")


def random_acyclic_two_copy(rng: random.Random, n: Optional[int] = None) -> TwoCopyData:
    """Z2 two-copy data whose assembled complex is acyclic.

    Direct sum of acyclic pieces, then a change of basis that preserves
    the Q1 / C1 / P1 filtration and the pairing (P1 changes by the inverse
    transpose of the Q1 change).  Pieces:

    * a pair q -> q' inside Q1 (and the dual pair in P1);
    * q with rho(q) = c of Morse index |q| and sigma(c') = dual of q, c'
      of index n - |q|; the piece with |q| = n supplies min and max;
    * a cancelling Morse pair;
    * for odd n, a cycle q of degree (n-1)/2 with eta(q) = its dual.
    """
    R = Z2
    n = n if n is not None else rng.randint(2, 4)
    qgens: List[Tuple[str, int]] = []
    dq: Dict[str, Dict[str, int]] = {}
    crits: List[Tuple[str, int]] = []
    dc: Dict[str, Dict[str, int]] = {}
    rho: Dict[str, Dict[str, int]] = {}
    sigma: Dict[str, Dict[str, int]] = {}
    eta: Dict[str, Dict[str, int]] = {}
    count = 0

    def saucer(d: int):
        nonlocal count
        count += 1
        q, c, c2 = f"q{count}", f"c{count}", f"e{count}"
        qgens.append((q, d))
        crits.extend([(c, d), (c2, n - d)])
        rho[q] = {c: 1}
        sigma[c2] = {"p" + q[1:]: 1}

    saucer(n)
    for _ in range(rng.randint(0, 3)):
        kind = rng.choice("ABCD")
        count += 1
        if kind == "A":
            k = rng.randint(-1, n + 1)
            a, b = f"q{count}", f"q{count}b"
            qgens += [(a, k), (b, k - 1)]
            dq[a] = {b: 1}
        elif kind == "B":
            saucer(rng.randint(1, n - 1))
        elif kind == "C":
            j = rng.randrange(n)
            crits += [(f"b{count}", j), (f"a{count}", j + 1)]
            dc[f"a{count}"] = {f"b{count}": 1}
        elif n % 2 == 1:
            q = f"q{count}"
            qgens.append((q, (n - 1) // 2))
            eta[q] = {"p" + q[1:]: 1}

    Q1 = BasedChainComplex.from_dict(R, ZGRADED, qgens, dq)
    base = TwoCopyData.build(Q1, MorseComplex(R, n, crits, dc), n, rho, sigma, eta)
    return conjugate_two_copy(rng, base)


def conjugate_two_copy(rng: random.Random, data: TwoCopyData) -> TwoCopyData:
    """Random filtration- and pairing-preserving change of basis (Z2 only)."""
    R = data.ring
    if R != Z2:
        raise ValueError("conjugate_two_copy works over Z2")
    Q1, C1, P1 = data.Q1, data.C1, data.P1
    Gq = _block_diag(R, [random_invertible(rng, R, Q1.dim(k)) for k in Q1.degrees()])
    Gc = _block_diag(R, [random_invertible(rng, R, C1.dim(k)) for k in C1.degrees()])
    Gq_inv = Gq.inverse()
    # Gp[p_i, p_j] = Gq^{-1}[q_j, q_i]
    qpos = {q: i for i, q in enumerate(Q1.labels())}
    plabel = {p: q for q, p in data.pairing.items()}
    pl = P1.labels()
    Gp = Matrix(R, P1.size, P1.size,
                [[Gq_inv[qpos[plabel[pl[j]]], qpos[plabel[pl[i]]]] for j in range(P1.size)]
                 for i in range(P1.size)])

    def graded_random(S, T):
        M = Matrix.zeros(R, T.size, S.size)
        for i, j in _graded_positions(S, T, 0):
            if rng.random() < 0.3:
                M = M.with_entry(i, j, R.one)
        return M

    X, Y, Z = graded_random(Q1, C1), graded_random(Q1, P1), graded_random(C1, P1)
    sizes = [Q1.size, C1.size, P1.size]
    T = Matrix.block(R, sizes, sizes, [[Gq, None, None], [X, Gc, None], [Y, Z, Gp]])
    D = T @ assembled_matrix(data) @ T.inverse()
    qi = range(0, Q1.size)
    ci = range(Q1.size, Q1.size + C1.size)
    pi = range(Q1.size + C1.size, sum(sizes))
    nQ = BasedChainComplex.from_total(R, Q1.grading, Q1.generators(), D.submatrix(qi, qi))
    nC = BasedChainComplex.from_total(R, Q1.grading, C1.generators(), D.submatrix(ci, ci))
    nP = BasedChainComplex.from_total(R, Q1.grading, P1.generators(), D.submatrix(pi, pi))
    morse = None
    if data.morse is not None:
        morse = MorseComplex(R, data.n, data.morse.points, nC.boundary_dict())
    return TwoCopyData(nQ, nC, nP,
                       GradedMap(nQ, nC, D.submatrix(ci, qi)),
                       GradedMap(nC, nP, D.submatrix(pi, ci)),
                       GradedMap(nQ, nP, D.submatrix(pi, qi)),
                       data.n, dict(data.pairing), morse)


# -- DGAs ---------------------------------------------------------------

def random_dga_for_augmentations(rng: random.Random, R: CoefficientRing, n_zero: int,
                                 n_one: int = 4, max_len: int = 3) -> DGA:
    """Degree-0 generators z*, degree-1 generators a* with random d, plus noise.

    Degree-1 differentials are random sums of words in degree-0 letters,
    constants and words through the degree -1 / 1 pair; nothing here
    needs d^2 = 0 for augmentation counting.
    """
    gens = [(f"z{i}", 0) for i in range(n_zero)] + [(f"a{i}", 1) for i in range(n_one)]
    gens += [("w", -1), ("v", 1)]
    dga = DGA(R, ZGRADED, gens, {})
    zeros = list(range(n_zero))
    diff = {}
    for i in range(n_one):
        terms = []
        for _ in range(rng.randint(1, 4)):
            length = rng.randint(0, max_len) if zeros else 0
            w = tuple(rng.choice(zeros) for _ in range(length))
            terms.append((w, _scalar(rng, R, nonzero=True)))
        if rng.random() < 0.3:
            terms.append(((dga.names.index("w"), dga.names.index("v")), R.one))
        diff[f"a{i}"] = NoncommPoly(R, terms)
    return dga.with_differential(diff)


# -- duality instances --------------------------------------------------

def random_duality_instance(rng: random.Random, consistent: bool = False) -> DualityInstance:
    """Random (b, q, c) data; with ``consistent`` it is built from a valid r-vector."""
    n = rng.randint(1, 6)
    good = rng.random() < 0.5
    if consistent:
        r = {k: rng.randint(0, 2) for k in range(n + 1)}
        if good:
            r[0] = 0
        if r[0] + r[n] == 0:
            r[n] = 1
        b = {k: r[k] + r[n - k] for k in range(n + 1)}
        m: Dict[int, int] = {}
        for k in range(-2, n + 2):
            if k not in m:
                m[k] = m[n - 1 - k] = rng.randint(0, 2)
        q = {k: r.get(k, 0) + m.get(k, 0) for k in set(m) | set(r)}
    else:
        b = {k: rng.randint(0, 2) for k in range(n + 1)}
        b[0] = max(b[0], 1)
        q = {k: rng.randint(0, 3) for k in range(-2, n + 2)}
    c = {k: v + rng.randint(0, 2) for k, v in q.items()}
    return DualityInstance(n, b, dims_q=q, chord_counts=c, good_dga=good)
