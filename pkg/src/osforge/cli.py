"""Command-line entry point: ``osforge <subcommand> [flags]``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys

from . import __version__
from . import io as oio
from .arrangements import (ArrangementError, arr_parallel_connection, arrangement_from_json,
                           arrangement_to_json, decone, defining_polynomial,
                           verify_theorem_homo_identity)
from .constructions import FamilySpec, build_Mn, build_Mn_prime, graphic_matroid
from .iso import CertificationError, certify_iso, demonstrate_corollary_cor
from .matroid import MatroidError, are_isomorphic, validate
from .os_algebra import OSAlgebra, graded_dimensions, normal_form
from .tutte import beta_invariant, characteristic, tutte


class UsageError(Exception):
    pass


class VerificationFailure(Exception):
    def __init__(self, payload, text):
        super().__init__(text)
        self.payload = payload
        self.text = text


def _one_matroid(args):
    if args.matroid and args.graph:
        raise UsageError("give either --matroid or --graph, not both")
    if args.matroid:
        if len(args.matroid) != 1:
            raise UsageError("exactly one --matroid expected")
        return oio.matroid_from_json(oio.load(args.matroid[0]))
    if args.graph:
        return graphic_matroid(oio.graph_from_json(oio.load(args.graph)))
    raise UsageError("--matroid FILE or --graph FILE is required")


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return value


def _arrangements(args, count):
    if not args.arrangement or len(args.arrangement) != count:
        raise UsageError(f"expected --arrangement exactly {count} time(s)")
    return [arrangement_from_json(oio.load(p)) for p in args.arrangement]


def cmd_validate(args):
    m = _one_matroid(args)
    rep = validate(m)
    payload = {"ok": rep.ok, "failures": list(rep.failures),
               "witness": None if rep.witness is None else [list(w) if isinstance(w, list) else w for w in rep.witness]}
    text = "valid" if rep.ok else f"invalid: {', '.join(rep.failures)} {rep.witness}"
    if not rep.ok:
        raise VerificationFailure(payload, text)
    return payload, text


def cmd_tutte(args):
    t = tutte(_one_matroid(args))
    return dict(t.to_json(), string=str(t)), str(t)


def cmd_chi(args):
    chi = characteristic(_one_matroid(args))
    return {"coeffs": [int(c) for c in chi.coeffs], "string": str(chi)}, str(chi)


def cmd_beta(args):
    b = beta_invariant(_one_matroid(args))
    return {"beta": b}, str(b)


def cmd_os_dims(args):
    dims = graded_dimensions(OSAlgebra(_one_matroid(args)), verify=args.dual_check)
    return {"dims": dims}, " ".join(map(str, dims))


def cmd_nf(args):
    m = _one_matroid(args)
    x = oio.exterior_from_json(oio.load(_need(args, "element")), m.labels)
    nf = normal_form(OSAlgebra(m), x)
    return oio.exterior_to_json(nf, m.labels), nf.format(m.labels)


def _family(args):
    seed = _one_matroid(args)
    return FamilySpec(seed, _need(args, "basepoint"), _need(args, "n"))


def cmd_build_family(args):
    spec = _family(args)
    mn, mnp = build_Mn(spec), build_Mn_prime(spec)
    payload = {"family": oio.family_to_json(spec), "Mn": oio.matroid_to_json(mn),
               "Mn_prime": oio.matroid_to_json(mnp)}
    return payload, f"Mn: {mn}\nMn': {mnp}"


def cmd_certify(args):
    cert = certify_iso(_family(args), dual_check=args.dual_check)
    payload = cert.to_json()
    text = f"accepted: {cert.accepted}; dims {cert.dims_source}"
    if not cert.accepted:
        raise VerificationFailure(payload, text)
    return payload, text


def cmd_corollary(args):
    report = demonstrate_corollary_cor(_need(args, "m"), _need(args, "n"))
    payload = report.to_json()
    lines = [f"m={report.m} n={report.n} shared dims {report.shared_dims}"]
    for mem in report.members:
        lines.append(f"  i={mem['i']}: longest circuit {mem['longest_circuit']}, "
                     f"certified {mem['certificate_accepted']}")
    lines.append(f"pairwise non-isomorphic: {report.pairwise_nonisomorphic}")
    text = "\n".join(lines)
    if not (report.pairwise_nonisomorphic and report.all_certified):
        raise VerificationFailure(payload, text)
    return payload, text


def cmd_arr_decone(args):
    a, = _arrangements(args, 1)
    d = decone(a, args.form)
    q = defining_polynomial(d)
    return {"arrangement": arrangement_to_json(d), "polynomial": q.to_json()}, str(q)


def cmd_arr_parallel(args):
    a0, a1 = _arrangements(args, 2)
    p = arr_parallel_connection(a0, a1, args.form, args.form2)
    q = defining_polynomial(p)
    return {"arrangement": arrangement_to_json(p), "polynomial": q.to_json()}, str(q)


def cmd_arr_verify_homo(args):
    a0, a1 = _arrangements(args, 2)
    rep = verify_theorem_homo_identity(a0, a1, args.form, args.form2)
    payload = rep.to_json()
    text = f"identity holds: {rep.ok}\n  {rep.lhs}\n  {rep.rhs}"
    if not rep.ok:
        raise VerificationFailure(payload, text)
    return payload, text


def cmd_isomorphic(args):
    if not args.matroid or len(args.matroid) != 2:
        raise UsageError("expected --matroid exactly twice")
    m1, m2 = (oio.matroid_from_json(oio.load(p)) for p in args.matroid)
    iso = are_isomorphic(m1, m2)
    return {"isomorphic": iso is not None, "bijection": iso}, \
        ("isomorphic: " + ", ".join(f"{k}->{v}" for k, v in iso.items())) if iso else "not isomorphic"


COMMANDS = {
    "validate": cmd_validate,
    "tutte": cmd_tutte,
    "chi": cmd_chi,
    "beta": cmd_beta,
    "os-dims": cmd_os_dims,
    "nf": cmd_nf,
    "build-family": cmd_build_family,
    "certify": cmd_certify,
    "corollary-cor": cmd_corollary,
    "arr-decone": cmd_arr_decone,
    "arr-parallel": cmd_arr_parallel,
    "arr-verify-homo": cmd_arr_verify_homo,
    "isomorphic": cmd_isomorphic,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="osforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"osforge {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--matroid", "--seed-matroid", action="append", metavar="FILE")
        p.add_argument("--graph", metavar="FILE")
        p.add_argument("--arrangement", action="append", metavar="FILE")
        p.add_argument("--element", metavar="FILE", help="exterior element JSON (nf)")
        p.add_argument("--n", type=int)
        p.add_argument("--m", type=int)
        p.add_argument("--basepoint", metavar="LABEL")
        p.add_argument("--form", default=0, help="index or label of the distinguished form")
        p.add_argument("--form2", default=0, help="distinguished form of the second arrangement")
        p.add_argument("--dual-check", action="store_true", help="cross-check dimensions by linear algebra")
        p.add_argument("--out", metavar="FILE")
        p.add_argument("--format", choices=("json", "text"), default="json")
    return parser


def _form_arg(v):
    try:
        return int(v)
    except (TypeError, ValueError):
        return v


def _emit(args, payload, text) -> None:
    if args.format == "json":
        body = oio.dumps(dict({"schema": oio.SCHEMA_VERSION, "command": args.command}, **payload))
    else:
        body = text + "\n"
    if args.out:
        oio.write_atomic(args.out, body)
    else:
        sys.stdout.write(body)


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    if not args.command:
        parser.print_usage(sys.stderr)
        return 2
    args.form, args.form2 = _form_arg(args.form), _form_arg(args.form2)
    try:
        payload, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"osforge {args.command}: {exc}", file=sys.stderr)
        return 2
    except VerificationFailure as exc:
        _emit(args, exc.payload, exc.text)
        return 1
    except CertificationError as exc:
        print(f"osforge {args.command}: verification failed {exc}", file=sys.stderr)
        return 1
    except (MatroidError, ArrangementError, ValueError, KeyError, OSError) as exc:
        print(f"osforge {args.command}: {exc}", file=sys.stderr)
        return 2
    _emit(args, payload, text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
