"""Command-line interface: ``lch <command> [input] [options]``.

The input is a file in the text format of :mod:`lch.textio`, or a fixture
from :mod:`lch.catalog` (``--fixture name[:params]``, or the fixture reference
given directly as the positional argument).  ``--json`` prints
``{command, input, result, diagnostics}``; diagnostics also go to stderr.

Exit codes: 0 success, 1 validation failure or empty result, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import catalog, randomized, textio
from .algebra import DGA, is_good, validate
from .duality import (DualityInstance, arnold_check, feasibility_solve, manifold_class_report,
                      solve_poincare, sphere_betti, sphere_duality_check)
from .homology import LaurentPoly, homology_field, homology_integral, poincare_chekanov
from .linearization import augmentations_or_zero, linearize
from .rings import CoefficientRing, Z2
from .spinning import kunneth_check, spin_times
from .twocopy import TwoCopyData, duality_check, verify_relations

FIXTURES_ENV = "LCH_FIXTURES"
FIXTURE_SUFFIXES = (".dga", ".inst", ".two")


class UsageError(Exception):
    pass


class Failure(Exception):
    """Validation failure or empty solver output (exit code 1)."""


def fixtures_dir() -> Path:
    override = os.environ.get(FIXTURES_ENV)
    if override:
        return Path(override)
    return Path(__file__).with_name("fixtures")


def fixture_filename(ref: str) -> str:
    return ref.replace(":", "_").replace(",", "_")


@dataclass
class Loaded:
    name: str
    dga: Optional[DGA] = None
    betti: Optional[Dict[int, int]] = None
    dim: Optional[int] = None
    instance: Optional[DualityInstance] = None
    twocopy: Optional[TwoCopyData] = None
    diagnostics: List[str] = field(default_factory=list)

    def need_dga(self, command: str) -> DGA:
        if self.dga is None:
            raise UsageError(f"'{command}' needs a DGA input, {self.name} is not one")
        return self.dga


def _from_text(name: str, text: str, ring: Optional[CoefficientRing]) -> Loaded:
    try:
        doc = textio.parse_document(text)
    except textio.ParseError as e:
        raise UsageError(f"{name}: {e}") from None
    try:
        if isinstance(doc, textio.TwoCopyDocument):
            return Loaded(name, twocopy=textio.document_to_two_copy(doc, ring), dim=doc.dim)
        if doc.is_instance:
            inst = textio.document_to_instance(doc)
            return Loaded(name, instance=inst, betti=inst.betti, dim=inst.n)
        dga = textio.document_to_dga(doc, ring)
    except textio.ValidationError as e:
        raise Failure(*[f"{name}: {m}" for m in e.messages]) from None
    return Loaded(name, dga=dga, betti=doc.betti_dict(), dim=doc.dim)


def _from_fixture(ref: str, ring: Optional[CoefficientRing]) -> Loaded:
    base = fixtures_dir() / fixture_filename(ref)
    for suffix in FIXTURE_SUFFIXES:
        path = base.with_suffix(suffix)
        if path.is_file():
            return _from_text(ref, path.read_text(encoding="utf-8"), ring)
    try:
        fx = catalog.load(ref)
    except (KeyError, ValueError) as e:
        raise UsageError(str(e.args[0] if e.args else e)) from None
    if fx.kind == "dga":
        dga = fx.payload
        if ring is not None and ring != dga.ring:
            dga = textio.document_to_dga(textio.dga_document(dga), ring)
        return Loaded(fx.name, dga=dga, betti=fx.betti, dim=fx.dim)
    if fx.kind == "instance":
        return Loaded(fx.name, instance=fx.payload, betti=fx.payload.betti, dim=fx.payload.n)
    return Loaded(fx.name, twocopy=fx.payload, dim=fx.dim)


def load_input(args) -> Loaded:
    try:
        ring = CoefficientRing.parse(args.ring) if args.ring else None
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.fixture:
        if args.input:
            raise UsageError("give either a file or --fixture, not both")
        return _from_fixture(args.fixture, ring)
    if not args.input:
        raise UsageError("no input: give a file or --fixture")
    path = Path(args.input)
    if path.is_file():
        return _from_text(args.input, path.read_text(encoding="utf-8"), ring)
    if args.input.partition(":")[0] in catalog.REGISTRY:
        return _from_fixture(args.input, ring)
    raise UsageError(f"no such file or fixture: {args.input}")


# -- helpers ------------------------------------------------------------

def _scalar(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    return x


def _degree_map(d: Dict[int, int]) -> Dict[str, int]:
    return {str(k): v for k, v in sorted(d.items())}


def _aug_json(eps) -> Dict[str, object]:
    return {k: _scalar(v) for k, v in eps.values.items()}


def _augs(dga: DGA):
    try:
        return augmentations_or_zero(dga)
    except ValueError as e:
        raise Failure(str(e)) from None


def _instance_from_dga(loaded: Loaded, dims_q=None) -> DualityInstance:
    dga = loaded.dga
    n = loaded.dim if loaded.dim is not None else dga.ambient_dim
    if n is None or loaded.betti is None:
        raise UsageError("duality data needs 'dim' and 'betti' lines")
    counts: Dict[int, int] = {}
    for g in dga.generators:
        counts[g.degree] = counts.get(g.degree, 0) + 1
    return DualityInstance(n, loaded.betti, dims_q=dims_q, chord_counts=counts,
                           good_dga=is_good(dga), ring_is_Z2=dga.ring == Z2,
                           name=loaded.name)


def _instance(loaded: Loaded) -> DualityInstance:
    if loaded.instance is not None:
        return loaded.instance
    if loaded.dga is not None:
        return _instance_from_dga(loaded)
    raise UsageError(f"{loaded.name} carries no duality data")


def _table(headers: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _profiles(dga: DGA):
    out = []
    for eps in _augs(dga):
        C = linearize(dga, eps)
        if dga.ring.is_field():
            H = homology_field(C)
        else:
            H = homology_integral(C)
        out.append((eps, C, H))
    return out


# -- commands -----------------------------------------------------------

def cmd_validate(loaded: Loaded, args):
    if loaded.dga is not None:
        rep = validate(loaded.dga)
        return {"kind": "dga", "valid": rep.valid, "messages": rep.messages(loaded.dga)}, \
            _table(["generator", "degree", "d"],
                   [(g.name, g.degree, loaded.dga.d(g.name).format(loaded.dga.names))
                    for g in loaded.dga.generators]) + "\nvalid"
    if loaded.twocopy is not None:
        rep = verify_relations(loaded.twocopy)
        res = {"kind": "twocopy", "valid": rep.all_pass and rep.dual_ok,
               "relations": rep.checks, "dual_ok": rep.dual_ok}
        if not res["valid"]:
            raise Failure(*[f"relation fails: {r}" for r in rep.failed])
        return res, _table(["relation", "holds"], list(rep.checks.items()))
    return {"kind": "instance", "valid": True}, f"instance {loaded.name}: valid"


def cmd_augs(loaded: Loaded, args):
    dga = loaded.need_dga("augs")
    augs = _augs(dga)
    res = {"ring": str(dga.ring), "count": len(augs), "augmentations": [_aug_json(e) for e in augs]}
    rows = [(i, ", ".join(f"{k}={v}" for k, v in e.values.items()) or "0")
            for i, e in enumerate(augs)]
    return res, _table(["#", "nonzero values"], rows)


def cmd_linearize(loaded: Loaded, args):
    dga = loaded.need_dga("linearize")
    out, text = [], []
    for eps, C, _ in _profiles(dga):
        bd = C.boundary_dict()
        gens = [{"name": l, "degree": k,
                 "boundary": {t: _scalar(c) for t, c in bd.get(l, {}).items()}}
                for l, k in C.generators()]
        out.append({"augmentation": _aug_json(eps), "generators": gens})
        text.append(_table(["generator", "degree", "d1"],
                           [(g["name"], g["degree"],
                             " + ".join(f"{c}*{t}" if c != 1 else t
                                        for t, c in g["boundary"].items()) or "0")
                            for g in gens]))
    return {"complexes": out}, "\n\n".join(text)


def cmd_homology(loaded: Loaded, args):
    dga = loaded.need_dga("homology")
    profiles = []
    for eps, C, H in _profiles(dga):
        entry = {"augmentation": _aug_json(eps), "dims": _degree_map(H.dims())}
        if H.torsion:
            entry["torsion"] = {str(k): v for k, v in sorted(H.torsion.items())}
        profiles.append(entry)
    res = {"ring": str(dga.ring), "profiles": profiles}
    distinct = []
    for p in profiles:
        if p["dims"] not in distinct:
            distinct.append(p["dims"])
    if len(distinct) == 1:
        res["dims"] = distinct[0]
    rows = [(i, k, v) for i, p in enumerate(profiles) for k, v in p["dims"].items()]
    return res, _table(["augmentation", "degree", "rank"], rows)


def cmd_pcpoly(loaded: Loaded, args):
    dga = loaded.need_dga("pcpoly")
    if not dga.ring.is_field():
        raise UsageError("Poincare polynomials need a field; pass --ring Z2 or Q")
    n = loaded.dim if loaded.dim is not None else dga.ambient_dim
    polys: List[str] = []
    checks: List[bool] = []
    for _, _, H in _profiles(dga):
        P = poincare_chekanov(H)
        if str(P) not in polys:
            polys.append(str(P))
            if n is not None:
                checks.append(sphere_duality_check(P, n))
    result: Dict[str, object] = {"polynomials": polys}
    if n is None:
        return result, "\n".join(polys)
    # the identity is a theorem only for spheres; it is reported for any input
    result["sphere_duality"] = checks
    rows = [(p, "yes" if ok else "no") for p, ok in zip(polys, checks)]
    return result, _table(["polynomial", f"sphere duality (n={n})"], rows)


def _solution_json(sol, inst):
    rep = manifold_class_report(sol, inst)
    return {"r": _degree_map(sol.manifold()),
            "nonmanifold": _degree_map(sol.nonmanifold()),
            "annihilator_ok": rep.annihilator_ok,
            "betti_symmetric": rep.betti_symmetric,
            "nonmanifold_symmetric": rep.nonmanifold_symmetric}


def cmd_duality(loaded: Loaded, args):
    if loaded.twocopy is not None:
        return cmd_twocopy(loaded, args)
    if loaded.instance is not None or loaded.dga is None:
        insts = [_instance(loaded)]
    else:
        insts = [_instance_from_dga(loaded, H.dims()) for _, _, H in _profiles(loaded.dga)]
    out, text = [], []
    for inst in insts:
        if inst.dims_q is None:
            raise UsageError("duality needs homology dims ('homology' line or a DGA)")
        sols = feasibility_solve(inst)
        entry = {"homology": _degree_map(inst.dims_q),
                 "solutions": [_solution_json(s, inst) for s in sols]}
        if inst.betti == sphere_betti(inst.n):
            entry["sphere_duality"] = sphere_duality_check(LaurentPoly(inst.dims_q), inst.n)
        out.append(entry)
        text.append(_table(["solution", "degree", "manifold", "nonmanifold"],
                           [(i, k, s.rank(k), s.nonmanifold().get(k, 0))
                            for i, s in enumerate(sols)
                            for k in sorted(set(s.manifold()) | set(s.nonmanifold()))]))
    if not any(e["solutions"] for e in out):
        raise Failure("no rank vector is consistent with the exact sequence")
    return {"instances": out}, "\n\n".join(text)


def cmd_arnold(loaded: Loaded, args):
    inst = _instance(loaded)
    try:
        rows = arnold_check(inst)
    except ValueError as e:
        raise UsageError(str(e)) from None
    res = {"rows": [{"m": r.m, "chords": r.chords, "betti": r.betti, "ok": r.ok} for r in rows],
           "ok": all(r.ok for r in rows)}
    text = _table(["m", "c_m + c_(n-m)", "b_m", "ok"],
                  [(r.m, r.chords, r.betti, "yes" if r.ok else "NO") for r in rows])
    if not res["ok"]:
        raise Failure("Arnold bound fails", text)
    return res, text


def cmd_spin(loaded: Loaded, args):
    dga = loaded.need_dga("spin")
    if dga.ring != Z2:
        raise UsageError("spinning is implemented over Z2")
    out, rows = [], []
    for eps, C, _ in _profiles(dga):
        S = spin_times(C, args.times)
        dims = homology_field(S).dims()
        ok = kunneth_check(C)[0]
        out.append({"augmentation": _aug_json(eps), "times": args.times,
                    "dims": _degree_map(dims), "kunneth": ok})
        rows += [(args.times, k, v) for k, v in dims.items()]
    return {"spun": out}, _table(["times", "degree", "rank"], rows)


def cmd_twocopy(loaded: Loaded, args):
    data = loaded.twocopy
    if data is None:
        raise UsageError(f"'twocopy' needs two-copy data, {loaded.name} is not")
    rel = verify_relations(data)
    if not rel.all_pass:
        raise Failure(*[f"relation fails: {r}" for r in rel.failed])
    rep = duality_check(data)
    res = {"acyclic": rep.acyclic, "exact": rep.exact, "duality_holds": rep.duality_holds,
           "cone_homology": _degree_map(rep.cone_dims),
           "isomorphism": {str(k): {"H_QC": a, "H_P_shifted": b, "rank": r}
                           for k, (a, b, r) in sorted(rep.iso.items())},
           "rho_ranks": _degree_map(rep.rho_ranks),
           "sequence": [{"k": r.k, "labels": r.labels(data.n),
                         "dims": [r.h_L_next, r.h_cohom, r.h_Q, r.h_L],
                         "ranks": [r.rank_sigma, r.rank_middle, r.rank_rho]}
                        for r in rep.rows if r.h_L_next or r.h_cohom or r.h_Q or r.h_L]}
    text = _table(["k", "H_(k+1)(L)", "H^(n-k-1)(Q)", "H_k(Q)", "H_k(L)"],
                  [(s["k"], *s["dims"]) for s in res["sequence"]])
    text += f"\nacyclic: {rep.acyclic}  exact: {rep.exact}"
    return res, text


def _parse_constraint(text: str):
    k, eq, v = text.partition("=")
    try:
        return int(k), int(v)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected k=d, got {text!r}") from None


def cmd_solve(loaded: Loaded, args):
    inst = _instance(loaded)
    if inst.chord_counts is None:
        raise UsageError("solve needs chord counts")
    polys = [str(p) for p in solve_poincare(inst, args.constraint or [])]
    if not polys:
        raise Failure("no Poincare polynomial is consistent with the data")
    return {"polynomials": polys}, "\n".join(polys)


COMMANDS = {
    "validate": cmd_validate, "augs": cmd_augs, "linearize": cmd_linearize,
    "homology": cmd_homology, "pcpoly": cmd_pcpoly, "duality": cmd_duality,
    "arnold": cmd_arnold, "spin": cmd_spin, "twocopy": cmd_twocopy, "solve": cmd_solve,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lch", description="Linearized Legendrian contact homology tools")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("input", nargs="?", help="input file or fixture reference")
        p.add_argument("--fixture", help="catalog fixture, e.g. chekanov or super-spun:4,3")
        p.add_argument("--ring", help="override the coefficient ring (Z, Q, Z<m>)")
        p.add_argument("--json", action="store_true", help="print JSON")
        p.add_argument("--constraint", action="append", type=_parse_constraint,
                       metavar="k=d", help="require dim H_k = d (repeatable)")
        p.add_argument("--seed", type=int, help="use a seeded random instance as input")
        if name == "spin":
            p.add_argument("--times", type=int, default=1)
    return parser


def _random_input(command: str, seed: int) -> Loaded:
    rng = random.Random(seed)
    if command in ("twocopy", "validate"):
        return Loaded(f"random-two-copy:{seed}", twocopy=randomized.random_acyclic_two_copy(rng))
    if command in ("duality", "arnold", "solve"):
        inst = randomized.random_duality_instance(rng, consistent=True)
        return Loaded(f"random-instance:{seed}", instance=inst, betti=inst.betti, dim=inst.n)
    raise UsageError(f"--seed is not supported by '{command}'")


def run_command(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as e:
        return int(e.code or 0)
    diagnostics: List[str] = []
    code = 0
    result = None
    text = ""
    name = args.fixture or args.input
    try:
        if args.seed is not None and not (args.input or args.fixture):
            loaded = _random_input(args.command, args.seed)
        else:
            loaded = load_input(args)
        name = loaded.name
        result, text = COMMANDS[args.command](loaded, args)
    except UsageError as e:
        diagnostics.append(str(e))
        code = 2
    except ValueError as e:
        diagnostics.append(str(e))
        code = 1
    except Failure as e:
        diagnostics.extend(str(a) for a in e.args)
        code = 1
    for d in diagnostics:
        print(d, file=stderr)
    if args.json:
        payload = {"command": args.command, "input": name, "result": result,
                   "diagnostics": diagnostics}
        print(json.dumps(payload, indent=2), file=stdout)
    elif text:
        print(text, file=stdout)
    return code


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
