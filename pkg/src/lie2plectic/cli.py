"""Command line front end.

Exit status is 0 when every check passes, 1 when a verification fails and 2
for unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from .report import CheckResult, Report
from .schema import InputError, field, load_json

KINDS = ("algebra", "morphism", "action", "comoment")


def _digest(*paths) -> str:
    h = hashlib.sha256()
    for p in paths:
        h.update(Path(p).read_bytes())
    return h.hexdigest()


def _algebra(doc, key, path):
    from .catalog import build_algebra
    spec = field(doc, key, path, dict) if key else doc
    return build_algebra(spec, f"{path}.{key}" if key else path), spec


def _action(doc, path):
    from .catalog import build_action
    L, spec = _algebra(doc, "algebra", path)
    gen = spec if "generator" in spec else None
    return build_action(field(doc, "action", path, dict), L, gen, doc.get("name", ""), f"{path}.action")


def cmd_verify(path: str) -> Report:
    from .lie2 import Lie2Morphism, structure_flags, verify_axioms, verify_morphism

    doc = load_json(path)
    kind = field(doc, "kind", "$", str)
    if kind not in KINDS:
        raise InputError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}", "$.kind")

    if kind == "algebra":
        L, _ = _algebra(doc, None, "$")
        rep = verify_axioms(L)
        rep.data["flags"] = structure_flags(L)
        return rep

    if kind == "morphism":
        S, _ = _algebra(doc, "source", "$")
        T, _ = _algebra(doc, "target", "$")
        F = Lie2Morphism.from_dict(field(doc, "morphism", "$", dict), S, T, "$.morphism")
        rep = Report("morphism")
        for name, L in (("source", S), ("target", T)):
            rep.extend(verify_axioms(L), prefix=f"{name} ")
        rep.extend(verify_morphism(F))
        return rep

    from .action import classify_action, plectic_class, verify_action
    from .calculus import form as parse_form

    rho = _action(doc, "$")
    if kind == "action":
        rep = verify_action(rho)
        rep.data["flags"] = f"{structure_flags(rho.algebra)}/{classify_action(rho)['flags']}"
        if "omega" in doc:
            try:
                om = parse_form(field(doc, "omega", "$", str), rho.dim, 3)
            except ValueError as exc:
                raise InputError(str(exc), "$.omega") from exc
            rep.data["plectic"] = plectic_class(rho, om)["class"]
        return rep

    from .comoment import Comomentum, apply_corrections, classify_comoment, verify_comoment

    cm = field(doc, "comoment", "$", dict)
    cm = apply_corrections(cm, doc.get("corrections", []))
    lam = Comomentum.from_dict(cm, rho, "$.comoment", doc.get("name", ""))
    rep = verify_comoment(lam)
    rep.data["classification"] = classify_comoment(lam, rep)
    return rep


def cmd_skeletalize(path: str, out: str | None) -> Report:
    from .skeletal import check_quasi_iso, skeletalize

    doc = load_json(path)
    L, _ = _algebra(doc, None, "$")
    res = skeletalize(L)
    rep = check_quasi_iso(res)
    body = res.to_dict()
    emitted = {"kind": "algebra", **body.pop("skeletal"), "skeletalization": body}
    text = json.dumps(emitted, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    rep.data["skeletal"] = emitted
    return rep


def cmd_cohomology(path: str, degree: int | None, coefficients: str) -> Report:
    from .cohomology import CEComplex
    from .lie2 import Vec

    doc = load_json(path)
    L, _ = _algebra(doc, None, "$")
    if coefficients == "auto":
        coefficients = "module" if L.dim_m1 else "trivial"
    if coefficients == "module":
        cx = CEComplex.from_algebra(L, check=False)
    else:
        X = L.basis_0()
        cx = CEComplex(L.dim_0, 1, lambda i, j: L.l2p(X[i], X[j]), lambda i, a: Vec.zero(-1, 1),
                       L.labels_0, ["1"], check=False)
    if degree is not None and not 0 <= degree <= cx.n:
        raise InputError(f"degree must lie in 0..{cx.n}", "--degree")
    rep = Report("cohomology")
    rep.extend(cx.check_module())
    if not rep.passed:
        return rep
    rep.data["coefficients"] = coefficients
    if degree is None:
        rep.data["dims"] = {str(k): cx.cohomology_dim(k) for k in range(cx.n + 1)}
    else:
        rep.data.update({"degree": degree, "dim": cx.cohomology_dim(degree), "cochains": cx.dim_cochains(degree)})
    return rep


def cmd_selftest(kind: str, dim: int, seed: int, trials: int) -> Report:
    from .calculus import cartan_selfcheck, verify_endo_morphism

    if trials < 1:
        raise InputError("trials must be positive", "--trials")
    run = cartan_selfcheck if kind == "cartan" else verify_endo_morphism
    return run(dim, seed, trials)


def cmd_examples(action: str, example_id: str | None) -> Report:
    from .catalog import EXAMPLE_IDS, load_example, run_catalog

    if example_id is not None and example_id not in EXAMPLE_IDS:
        raise InputError(f"unknown example {example_id!r}; known: {', '.join(EXAMPLE_IDS)}", "--id")
    if action == "list":
        rep = Report("examples")
        ids = [example_id] if example_id else list(EXAMPLE_IDS)
        rep.data["examples"] = {i: load_example(i).title for i in ids}
        return rep
    return run_catalog([example_id] if example_id else None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lie2plectic", description=__doc__.splitlines()[0])
    ap.add_argument("--report", metavar="PATH", help="write the JSON report to PATH")
    ap.add_argument("--quiet", action="store_true", help="print only the final status line")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="verify an algebra, morphism, action or comoment file")
    p.add_argument("file")
    p = sub.add_parser("skeletalize", help="compute a skeletal model and its quasi-isomorphism")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p = sub.add_parser("cohomology", help="Chevalley-Eilenberg cohomology dimension")
    p.add_argument("file")
    p.add_argument("--degree", type=int, help="a single degree; all degrees when omitted")
    p.add_argument("--coefficients", choices=("auto", "module", "trivial"), default="auto",
                   help="auto uses the degree -1 module when it is nonzero, else the trivial line")
    p = sub.add_parser("selftest", help="seeded exact identity checks")
    p.add_argument("kind", choices=("cartan", "endo"))
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p = sub.add_parser("examples", help="list or replay the builtin example catalog")
    p.add_argument("action", choices=("list", "run"))
    p.add_argument("--id")
    return ap


def _dispatch(args) -> tuple[Report, list]:
    if args.command == "verify":
        return cmd_verify(args.file), [args.file]
    if args.command == "skeletalize":
        return cmd_skeletalize(args.file, args.output), [args.file]
    if args.command == "cohomology":
        return cmd_cohomology(args.file, args.degree, args.coefficients), [args.file]
    if args.command == "selftest":
        return cmd_selftest(args.kind, args.dim, args.seed, args.trials), []
    return cmd_examples(args.action, args.id), []


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    inputs: list = []
    try:
        rep, inputs = _dispatch(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    status = 0 if rep.passed else 1
    out = {"command": args.command, "inputs": {str(p): _digest(p) for p in inputs},
           "exit_status": status, **rep.to_dict()}
    text = json.dumps(out, indent=2, sort_keys=True, ensure_ascii=False)
    if args.report:
        Path(args.report).write_text(text + "\n", encoding="utf-8")
    if args.quiet:
        print(f"{rep.subject}: {'PASS' if rep.passed else 'FAIL'}")
    else:
        print(rep.summary())
        for key, val in rep.data.items():
            if key in ("skeletal", "discrepancies"):
                continue
            print(f"  {key} = {json.dumps(val, sort_keys=True, ensure_ascii=False, default=str)}")
    return status
