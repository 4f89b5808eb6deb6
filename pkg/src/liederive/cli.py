"""Command-line front end.

Exit codes: 0 when a verdict or analysis is produced (whatever its status),
1 when ``verify`` rejects a certificate, 2 for invalid input, 3 when a
certificate contradicts an obstruction (should never happen).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import io
from .algebra import CharacteristicError, classify, lower_central_series
from .builders import BuilderError, build
from .corpus import CORPUS, load as corpus_load
from .derivations import TowerPreconditionError, derivation_space, derivation_tower
from .fields import GF, QQ, is_prime
from .integrability import SoundnessError, is_derived_algebra, verify_integral
from .rings import (
    delta_series, derived_ring, dorroh_extension, is_nilpotent_ring, is_solvable_ring,
)
from .structure import ComponentsUnknown, composition_series

EXIT_OK, EXIT_REJECTED, EXIT_INPUT, EXIT_UNSOUND = 0, 1, 2, 3

log = logging.getLogger("liederive")


class InputError(Exception):
    pass


def _load_algebra(path):
    try:
        doc, raw = io.load_json(path)
        return io.algebra_from_json(doc), raw
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except io.FormatError as exc:
        raise InputError(f"{path}: {exc}") from None


def _subspace_json(W, F):
    return [[F.format(x) for x in v] for v in W.basis]


# ---------------------------------------------------------------------------
# analyze


def analyze_report(path: str) -> tuple[dict, str]:
    L, raw = _load_algebra(path)
    prof = classify(L)
    F = L.field
    rep = {
        "input": os.path.basename(path),
        "input_digest": io.digest(raw),
        "field": F.to_json(),
        "dim": L.dim,
        "summary": prof.summary(),
        "abelian": prof.is_abelian,
        "nilpotent": prof.is_nilpotent,
        "nilpotency_class": prof.nilpotency_class,
        "solvable": prof.is_solvable,
        "derived_length": prof.derived_length,
        "perfect": prof.is_perfect,
        "semisimple": prof.is_semisimple,
        "filiform": prof.is_filiform,
        "heisenberg_index": prof.heisenberg_index,
        "almost_abelian": prof.almost_abelian is not None,
        "dim_center": prof.dim_center,
        "dim_derived": prof.dim_derived,
        "lower_central_dims": prof.lower_central_dims,
        "derived_dims": prof.derived_dims,
        "dim_derivations": derivation_space(L).dim,
    }
    if F.characteristic == 0:
        try:
            comp = composition_series(L)
            rep["composition_length"] = comp.length
            rep["composition_factors"] = comp.factors
            rep["composition_chain"] = [_subspace_json(W, F) for W in comp.chain]
        except ComponentsUnknown as exc:
            rep["composition_length"] = None
            rep["composition_note"] = f"components-unknown: {exc}"
    lines = [f"{path}: {prof.summary()}",
             f"  lower central dims {prof.lower_central_dims}, derived dims {prof.derived_dims}",
             f"  dim Der = {rep['dim_derivations']}"]
    if rep.get("composition_length") is not None:
        lines.append(f"  composition length {rep['composition_length']}")
    return rep, "\n".join(lines)


# ---------------------------------------------------------------------------
# check-derived


def check_report(path: str, seed: int = 0) -> tuple[dict, str, object]:
    L, raw = _load_algebra(path)
    v = is_derived_algebra(L, seed=seed)
    F = L.field
    checks = []
    for c in v.report.checks:
        checks.append({"code": c.code, "passed": c.passed, "global": c.is_global,
                       "anchor": c.anchor, "witness": c.witness, "note": c.note})
    verdict = {"status": v.status, "anchor": v.anchor, "notes": v.notes}
    if v.certificate is not None:
        verdict["method"] = v.certificate.method
        verdict["integral_dim"] = v.certificate.H.dim
    if v.obstruction is not None:
        verdict["code"] = v.obstruction.code
        verdict["witness"] = v.obstruction.witness
        verdict["all_obstructions"] = [o.code for o in v.obstructions]
    rep = {
        "input": os.path.basename(path),
        "input_digest": io.digest(raw),
        "field": F.to_json(),
        "profile": classify(L).summary(),
        "obstruction_table": checks,
        "nilpotent_integral_obstructions": [c.code for c in v.report.nilpotent_integral_obstructions],
        "verdict": verdict,
        "certificate": None,
    }
    head = v.status.upper()
    if v.certificate is not None:
        text = f"{path}: {head} [{v.certificate.method}] {v.anchor}"
    elif v.obstruction is not None:
        text = f"{path}: {head} [{v.obstruction.code}] {v.anchor}"
        others = [o.code for o in v.obstructions[1:]]
        if others:
            text += f"\n  also: {', '.join(others)}"
    else:
        text = f"{path}: {head}; " + "; ".join(v.notes or ["no construction or obstruction applies"])
        passed = [c.code for c in v.report.checks if c.passed]
        skipped = [c.code for c in v.report.checks if c.passed is None]
        text += f"\n  passed: {', '.join(passed)}"
        if skipped:
            text += f"\n  skipped: {', '.join(skipped)}"
    return rep, text, v


def _worker(args):
    kind, path, seed, timing = args
    t0 = time.perf_counter()
    try:
        if kind == "analyze":
            rep, text = analyze_report(path)
            cert = None
        else:
            rep, text, v = check_report(path, seed)
            cert = io.certificate_to_json(v.certificate) if v.certificate else None
    except InputError as exc:
        return EXIT_INPUT, None, f"error: {exc}", None
    except SoundnessError as exc:
        return EXIT_UNSOUND, None, f"internal contradiction: {exc}", None
    if timing:
        rep["timing_seconds"] = round(time.perf_counter() - t0, 6)
    return EXIT_OK, rep, text, cert


def _run_many(kind, args):
    jobs = [(kind, p, getattr(args, "seed", 0), args.timing) for p in args.files]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            results = list(ex.map(_worker, jobs))
    else:
        results = [_worker(j) for j in jobs]
    code = EXIT_OK
    reports = []
    for (path, (rc, rep, text, cert)) in zip(args.files, results):
        print(text, file=sys.stdout if rc == EXIT_OK else sys.stderr)
        code = max(code, rc)
        if rep is None:
            continue
        if cert is not None and getattr(args, "certificate", None):
            out = args.certificate
            if len(args.files) > 1:
                stem, ext = os.path.splitext(out)
                out = f"{stem}.{os.path.splitext(os.path.basename(path))[0]}{ext or '.json'}"
            io.write_text(out, io.dumps(cert))
            rep["certificate"] = os.path.basename(out)
            print(f"  certificate written to {out}")
        reports.append(rep)
    if args.json and reports:
        io.write_text(args.json, io.dumps(reports[0] if len(reports) == 1 else reports))
    return code


def cmd_analyze(args):
    return _run_many("analyze", args)


def cmd_check(args):
    return _run_many("check", args)


# ---------------------------------------------------------------------------
# verify, tower, builtin, ring, corpus


def cmd_verify(args):
    try:
        doc, _ = io.load_json(args.certificate)
        cert = io.certificate_from_json(doc)
    except OSError as exc:
        print(f"error: {args.certificate}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except (io.FormatError, KeyError, ValueError) as exc:
        print(f"error: {args.certificate}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        ok = verify_integral(cert.H, cert.embedding, cert.L) and cert.verify()
    except ValueError as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    if ok:
        print(f"verified: L (dim {cert.L.dim}) is the derived algebra of H (dim {cert.H.dim}) "
              f"[{cert.method}]")
        return EXIT_OK
    print("rejected: embedding is not an isomorphism onto [H, H]", file=sys.stderr)
    return EXIT_REJECTED


def cmd_tower(args):
    try:
        L, raw = _load_algebra(args.file)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        T = derivation_tower(L, max_steps=args.max_steps)
    except TowerPreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if T.complete:
        print(f"{args.file}: complete at step {T.complete_at}; dims {T.dims}")
    else:
        print(f"{args.file}: not complete after {args.max_steps} steps; dims {T.dims}")
    for note in T.notes:
        print(f"  note: {note}")
    if args.json:
        rep = {"input": os.path.basename(args.file), "input_digest": io.digest(raw),
               "dims": T.dims, "complete": T.complete, "complete_at": T.complete_at,
               "unverified_theory": T.unverified_theory, "notes": T.notes}
        io.write_text(args.json, io.dumps(rep))
    return EXIT_OK


def _field(args):
    if args.gf is None:
        return QQ
    if not is_prime(args.gf):
        raise InputError(f"--gf {args.gf} is not prime")
    return GF(args.gf)


def cmd_builtin(args):
    try:
        F = _field(args)
        L = build(args.family, args.n, F)
    except (InputError, BuilderError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = io.dumps(io.algebra_to_json(L))
    if args.output:
        io.write_text(args.output, text)
        print(f"wrote {args.family} (dim {L.dim}, {F}) to {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_ring(args):
    try:
        doc, raw = io.load_json(args.file)
        R = io.assoc_from_json(doc)
    except OSError as exc:
        print(f"error: {args.file}: {exc.strerror}", file=sys.stderr)
        return EXIT_INPUT
    except (io.FormatError, KeyError, ValueError) as exc:
        print(f"error: {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    F = R.field
    ds = delta_series(R)
    D = derived_ring(R)
    solvable = is_solvable_ring(R)
    nilpotent = is_nilpotent_ring(R)
    d_nil = is_nilpotent_ring(R, D) if D.dim else True
    dorroh = [W.dim for W in delta_series(dorroh_extension(R))]
    print(f"{args.file}: dim {R.dim}, delta series dims {[W.dim for W in ds]}")
    print(f"  derived ring dim {D.dim} ({'nilpotent' if d_nil else 'not nilpotent'})")
    print(f"  solvable: {solvable}, nilpotent: {nilpotent}")
    if solvable and not nilpotent:
        print("  ring-solvable-not-nilpotent: R is not a derived ring")
    if args.json:
        rep = {"input": os.path.basename(args.file), "input_digest": io.digest(raw),
               "delta_series": [_subspace_json(W, F) for W in ds],
               "delta_dims": [W.dim for W in ds], "derived_ring": _subspace_json(D, F),
               "derived_ring_nilpotent": d_nil, "solvable": solvable, "nilpotent": nilpotent,
               "dorroh_delta_dims": dorroh,
               "obstruction": "ring-solvable-not-nilpotent" if solvable and not nilpotent else None}
        io.write_text(args.json, io.dumps(rep))
    return EXIT_OK


def cmd_corpus(args):
    names = list(CORPUS)
    if not args.out:
        for name in names:
            L = corpus_load(name)
            print(f"{name}\tdim {L.dim}\t{L.field}")
        return EXIT_OK
    os.makedirs(args.out, exist_ok=True)
    for name in names:
        fname = name.replace("/", "_mod_").replace("+", "_plus_") + ".json"
        io.write_text(os.path.join(args.out, fname), io.dumps(io.algebra_to_json(corpus_load(name))))
    print(f"wrote {len(names)} algebras to {args.out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="liederive",
                                description="Decide and certify whether a Lie algebra is a derived algebra.")
    p.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="structure profile of algebra files")
    a.add_argument("files", nargs="+")
    a.add_argument("--json", help="write the report here")
    a.add_argument("--jobs", type=int, default=1)
    a.add_argument("--timing", action="store_true", help="include wall-clock timing in the report")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("check-derived", help="YES / NO / UNKNOWN with evidence")
    c.add_argument("files", nargs="+")
    c.add_argument("--certificate", help="write the integral certificate here on YES")
    c.add_argument("--json", help="write the report here")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--seed", type=int, default=0, help="seed for the randomized derivation search")
    c.add_argument("--timing", action="store_true")
    c.set_defaults(func=cmd_check)

    v = sub.add_parser("verify", help="replay a certificate file")
    v.add_argument("certificate")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("tower", help="derivation tower of a centreless algebra")
    t.add_argument("file")
    t.add_argument("--max-steps", type=int, default=16)
    t.add_argument("--json")
    t.set_defaults(func=cmd_tower)

    b = sub.add_parser("builtin", help="write a builtin family member as an algebra file")
    b.add_argument("family")
    b.add_argument("n", type=int)
    b.add_argument("--gf", type=int, help="work over GF(p) instead of Q")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_builtin)

    r = sub.add_parser("ring", help="delta series, derived ring and nilpotency of an associative algebra")
    r.add_argument("file")
    r.add_argument("--json")
    r.set_defaults(func=cmd_ring)

    k = sub.add_parser("corpus", help="list the builtin corpus or write it to a directory")
    k.add_argument("--out")
    k.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CharacteristicError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SoundnessError as exc:
        print(f"internal contradiction: {exc}", file=sys.stderr)
        return EXIT_UNSOUND


if __name__ == "__main__":
    sys.exit(main())
