"""Command-line entry point: ``hermtheta <command> ...``.

JSON results go to ``--out`` (or stdout); a one-line summary goes to stderr.
Exit status: 0 success, 1 refuted or failed check, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import congruence, eisenstein, fixtures, reproduce
from .lattices import construct, data as lattice_data
from .lattices.codes import load_code
from .lattices.enumerate import root_count, short_vectors
from .lattices.lattice import LatticeValidationError, load_gram, save_gram
from .lattices.theta import theta_expansion
from .qexp import QExpansion, load_expansion, phi_operator, restrict_to_siegel, symmetry_type, theta_operator

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

NAMED_FORMS = ("e4", "e6", "e10", "e12", "f10", "f12", "f12n", "e12-mass") + lattice_data.STANDARD_NAMES


class UsageError(Exception):
    pass


def _emit(args, text: str) -> None:
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _rect(args) -> tuple[int, int]:
    if args.mmax < 0 or args.nmax < 0:
        raise UsageError("--mmax and --nmax must be non-negative")
    return args.mmax, args.nmax


def _lattice(source: str):
    if source in lattice_data.STANDARD_NAMES:
        return lattice_data.load_standard(source)
    return load_gram(source)


def _named_form(name: str, mmax: int, nmax: int, threads: int | None) -> QExpansion:
    if name in lattice_data.STANDARD_NAMES:
        return theta_expansion(lattice_data.load_standard(name), mmax, nmax, threads=threads)
    if name.startswith("e") and name[1:].isdigit():
        return eisenstein.eisenstein_qexp(int(name[1:]), mmax, nmax)
    return {
        "f10": eisenstein.f10_qexp,
        "f12": eisenstein.f12_qexp,
        "f12n": eisenstein.f12_normalized,
        "e12-mass": lambda m, n: eisenstein.e12_via_mass_formula(m, n, threads=threads),
    }[name](mmax, nmax)


# -- commands ---------------------------------------------------------------


def cmd_lattice_build(args) -> int:
    out = Path(args.out_dir) if args.out_dir else lattice_data.data_dir()
    out.mkdir(parents=True, exist_ok=True)
    if args.code:
        name = args.name or Path(args.code).stem
        lat = construct.construction_a(load_code(args.code), glue=args.glue, name=name)
        lats = {name: lat}
    else:
        lats = construct.standard_lattices()
    for name, lat in lats.items():
        path = out / f"{name}.json"
        save_gram(lat, path)
        _note(f"{name}: rank {lat.rank}, {root_count(lat)} roots -> {path}")
    return EXIT_OK


def cmd_lattice_validate(args) -> int:
    status = EXIT_OK
    report = []
    for source in args.lattices:
        try:
            lat = load_gram(source, validate=False) if source not in lattice_data.STANDARD_NAMES else _lattice(source)
            lat.validate()
        except LatticeValidationError as exc:
            _note(f"{source}: INVALID ({exc})")
            report.append({"lattice": source, "valid": False, "error": str(exc)})
            status = EXIT_FAIL
            continue
        sh = short_vectors(lat, 4)
        minimum = 2 if sh.count(2) else 4 if sh.count(4) else None
        entry = {"lattice": source, "valid": True, "rank": lat.rank, "roots": sh.count(2), "norm4": sh.count(4)}
        entry["minimum"] = minimum
        report.append(entry)
        _note(f"{source}: valid, rank {lat.rank}, roots {sh.count(2)}, norm-4 vectors {sh.count(4)}")
    _emit(args, json.dumps(report, indent=2) + "\n")
    return status


def cmd_theta(args) -> int:
    m, n = _rect(args)
    f = theta_expansion(_lattice(args.lattice), m, n, threads=args.threads)
    _emit(args, f.dumps())
    _note(f"{f.description}: {len(f.coeffs)} nonzero coefficients on ({m}, {n})")
    return EXIT_OK


def cmd_eisenstein(args) -> int:
    m, n = _rect(args)
    f = eisenstein.eisenstein_qexp(args.weight, m, n)
    _emit(args, f.dumps())
    _note(f"E{args.weight}: {len(f.coeffs)} nonzero coefficients on ({m}, {n})")
    return EXIT_OK


def cmd_combine(args) -> int:
    m, n = _rect(args)
    f = _named_form(args.form, m, n, args.threads)
    _emit(args, f.dumps())
    _note(f"{f.description}: {len(f.coeffs)} nonzero coefficients on ({m}, {n})")
    return EXIT_OK


def cmd_theta_op(args) -> int:
    f = theta_operator(load_expansion(args.input))
    _emit(args, f.dumps())
    _note(f"{f.description or 'Theta(F)'}: theta depth {f.theta_depth}")
    return EXIT_OK


def cmd_restrict(args) -> int:
    r = restrict_to_siegel(load_expansion(args.input))
    _emit(args, json.dumps(r.to_json(), indent=1) + "\n")
    _note(f"Siegel restriction: {len(r.coeffs)} nonzero coefficients")
    return EXIT_OK


def cmd_phi(args) -> int:
    f = load_expansion(args.input)
    vals = phi_operator(f)
    _emit(args, json.dumps({"coefficients": [str(v) for v in vals]}) + "\n")
    _note(f"Phi: {'cusp-like (vanishes)' if not any(vals) else 'nonzero'}; symmetry {symmetry_type(f)}")
    return EXIT_OK


def _verdict_exit(args, v: congruence.CongruenceVerdict) -> int:
    _emit(args, v.dumps())
    _note(v.summary())
    return EXIT_FAIL if v.status == congruence.REFUTED else EXIT_OK


def cmd_congruence(args) -> int:
    rect = tuple(args.rect) if args.rect else None
    v = congruence.congruent_mod_p(load_expansion(args.a), load_expansion(args.b), args.mod, rect)
    return _verdict_exit(args, v)


def cmd_kernel_check(args) -> int:
    if bool(args.input) == bool(args.form):
        raise UsageError("give exactly one of --input or --form")
    if args.input:
        f = load_expansion(args.input)
    else:
        w = args.weight + args.mod + 1
        b = max(congruence.sturm_bound(w, "even" if w % 2 == 0 else "odd"), 0)
        f = _named_form(args.form, b, b, args.threads)
    return _verdict_exit(args, congruence.verify_theta_kernel(f, args.weight, args.mod))


def cmd_tables_verify(args) -> int:
    reports = congruence.check_table_congruences()
    if not args.skip_enumeration:
        reports.append(fixtures.verify_table1_against_enumeration(threads=args.threads))
    for rep in reports:
        _note(rep.summary())
    _emit(args, json.dumps([r.to_json() for r in reports], indent=1) + "\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_reproduce(args) -> int:
    results = reproduce.run_all(reproduce.Context(threads=args.threads), echo=_note)
    payload = [{"criterion": r.key, "passed": r.passed, "detail": r.detail, "seconds": round(r.seconds, 2)} for r in results]
    _emit(args, json.dumps(payload, indent=1) + "\n")
    good = sum(r.passed for r in results)
    _note(f"{good}/{len(results)} criteria pass")
    return EXIT_OK if good == len(results) else EXIT_FAIL


# -- parser -----------------------------------------------------------------


def _threads(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("threads must be >= 1")
    return v


def _prime(text: str) -> int:
    v = int(text)
    if v < 2 or any(v % d == 0 for d in range(2, int(v**0.5) + 1)):
        raise argparse.ArgumentTypeError(f"{v} is not a prime")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hermtheta", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=_threads, default=None, help="worker threads (default: all cores)")
    common.add_argument("-o", "--out", help="write JSON here instead of stdout")
    rect = argparse.ArgumentParser(add_help=False)
    rect.add_argument("--mmax", type=int, required=True)
    rect.add_argument("--nmax", type=int, required=True)
    sub = p.add_subparsers(dest="command", required=True)

    lat = sub.add_parser("lattice", help="build or validate Eisenstein lattices")
    lsub = lat.add_subparsers(dest="action", required=True)
    b = lsub.add_parser("build", help="write Gram files (standard set, or one lattice from a code)")
    b.add_argument("--out-dir", help="target directory (default: the data directory)")
    b.add_argument("--code", help="ternary code JSON for construction A")
    b.add_argument("--glue", action="store_true", help="apply the sum-congruence glue (code must contain all-ones)")
    b.add_argument("--name", help="lattice name for --code")
    b.set_defaults(func=cmd_lattice_build)
    v = lsub.add_parser("validate", parents=[common], help="check the axioms and report roots")
    v.add_argument("lattices", nargs="+", help="Gram files or standard names")
    v.set_defaults(func=cmd_lattice_validate)

    t = sub.add_parser("theta", parents=[common, rect], help="theta series of a lattice")
    t.add_argument("--lattice", required=True, help="Gram file or standard name (s4, h1..h5)")
    t.set_defaults(func=cmd_theta)

    e = sub.add_parser("eisenstein", parents=[common, rect], help="Eisenstein series E_k")
    e.add_argument("--weight", type=int, required=True, choices=eisenstein.SUPPORTED_WEIGHTS)
    e.set_defaults(func=cmd_eisenstein)

    c = sub.add_parser("combine", parents=[common, rect], help="derived forms: f10, f12, f12n, e12-mass")
    c.add_argument("form", choices=("f10", "f12", "f12n", "e12-mass"))
    c.set_defaults(func=cmd_combine)

    for name, fn, text in (
        ("theta-op", cmd_theta_op, "apply the theta operator"),
        ("restrict", cmd_restrict, "restrict to the Siegel upper half-space"),
        ("phi", cmd_phi, "Siegel Phi operator"),
    ):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("input", help="expansion JSON")
        s.set_defaults(func=fn)

    cg = sub.add_parser("congruence", parents=[common], help="decide F = G (mod p)")
    cg.add_argument("--a", required=True, help="expansion JSON")
    cg.add_argument("--b", required=True, help="expansion JSON")
    cg.add_argument("--mod", type=_prime, required=True)
    cg.add_argument("--rect", type=int, nargs=2, metavar=("M", "N"))
    cg.set_defaults(func=cmd_congruence)

    k = sub.add_parser("kernel-check", parents=[common], help="decide Theta(F) = 0 (mod p)")
    k.add_argument("--input", help="expansion JSON")
    k.add_argument("--form", choices=NAMED_FORMS, help="built-in form instead of --input")
    k.add_argument("--weight", type=int, required=True)
    k.add_argument("--mod", type=_prime, required=True)
    k.set_defaults(func=cmd_kernel_check)

    tb = sub.add_parser("tables", help="checks against the shipped coefficient tables")
    tsub = tb.add_subparsers(dest="action", required=True)
    tv = tsub.add_parser("verify", parents=[common])
    tv.add_argument("--skip-enumeration", action="store_true", help="skip the Leech theta comparison")
    tv.set_defaults(func=cmd_tables_verify)

    r = sub.add_parser("reproduce-paper", parents=[common], help="run the full acceptance suite")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        _note(f"usage error: {exc}")
        return EXIT_USAGE
    except (OSError, ValueError, KeyError, LookupError, ArithmeticError) as exc:
        mod = type(exc).__module__.removeprefix("hermtheta.")
        _note(f"error ({mod}.{type(exc).__name__}): {exc}")
        return EXIT_USAGE if isinstance(exc, (OSError, KeyError, LookupError, ValueError)) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
