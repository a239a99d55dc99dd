"""
ui/cli.py
---------
Command-line front door for CongruenceLab.

Subcommands:
  gen            build a named form and write it to the series cache
  scan           find maximal vanishing progressions in a cached series
  certify-table  the maximal gap congruences of Δ for a grid of (ℓ, p)
  certify        Hecke-criterion certificate for one gap congruence
  rep            P¹ permutation-module dimensions and memberships
  partition      Ramanujan and Atkin congruences of p(n)
  theta-lab      Θ / U_ℓ constructions that empty ℓZ + β
  validate       re-check certificate files or the store against data

Exit codes: 0 ok, 1 discrepancy, 2 usage or domain error, 3 precision.
Errors are written to stderr as one JSON record.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import IO, Iterator, Optional, Sequence

from core import db
from core.config import (
    DEFAULT_MAX_MODULUS, DEFAULT_SCAN_BOUND, EXIT_DISCREPANCY, EXIT_OK, EXIT_USAGE, TABLE_COUNT,
    TABLE_ELLS, TABLE_PRIMES, TABLE_VERIFY_BOUND,
)
from core.errors import DomainError, LabError, UsageError
from core.log import configure, get_logger
from core.settings import LabSettings, load_settings
from features.criterion import controller as crit
from features.criterion.preimage import filtration, u_ell_preimage
from features.engine import controller as engine
from features.engine import records, rules, store
from features.forms.controller import basis_precision, build_form, partition_mod
from features.heckeops.controller import composite_identity_check, theta_kill, theta_zero_kill
from features.p1rep import controller as p1
from features.qseries import cache
from features.qseries import controller as qs
from features.qseries.model import QExpansion
from ui import render

log = get_logger("CLI")

RAMANUJAN = ((5, 4), (7, 5), (11, 6))
ATKIN = (13, 11**3 * 13, 237)


# ------------------------------------------------------------
# Parser
# ------------------------------------------------------------
def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so errors share one reporting path."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message, usage=self.format_usage().strip())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="congruence-lab", description="Ramanujan-type congruences of modular forms")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"], default=None)
    parser.add_argument("--format", choices=["table", "records"], default="table")
    parser.add_argument("--out", default=None, help="write command output to FILE instead of stdout")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("gen", help="build a named form and cache it")
    p.add_argument("--form", required=True)
    p.add_argument("--prec", type=int, required=True)
    p.add_argument("--mod", type=int, default=None)
    p.add_argument("--out", dest="series_out", default=None)
    p.add_argument("--raw", action="store_true", help="store the numerator lattice n -> c(n) as an integral series")

    p = sub.add_parser("scan", help="maximal vanishing progressions of a cached series")
    p.add_argument("--in", dest="source", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--max-modulus", type=int, default=DEFAULT_MAX_MODULUS)
    p.add_argument("--bound", type=int, default=DEFAULT_SCAN_BOUND)
    p.add_argument("--support", type=int, default=None)
    p.add_argument("--form", default=None)
    p.add_argument("--derive", action="store_true", help="add the gap families of every hit")
    p.add_argument("--store", action="store_true", help="append the certificates to the store")

    p = sub.add_parser("certify-table", help="maximal gap congruences of Δ")
    p.add_argument("--ell", type=_int_list, default=list(TABLE_ELLS))
    p.add_argument("--primes", type=_int_list, default=list(TABLE_PRIMES))
    p.add_argument("--count", type=int, default=TABLE_COUNT)
    p.add_argument("--verify-bound", type=int, default=TABLE_VERIFY_BOUND)

    p = sub.add_parser("certify", help="Hecke-criterion certificate for c(f; p^m n + β) ≡ 0, p ∤ n")
    p.add_argument("--form", default="delta")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--beta", type=int, default=0)
    p.add_argument("--weight", type=int, default=None)
    p.add_argument("--prec", type=int, default=None)
    p.add_argument("--eigenform", action="store_true", help="treat the form as a normalized eigenform")
    p.add_argument("--identity-bound", type=int, default=0, help="also run the composite identity to this bound")
    p.add_argument("--store", action="store_true")

    p = sub.add_parser("rep", help="P¹ permutation-module computations")
    p.add_argument("action", choices=["dims", "membership", "steinberg"])
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--beta", type=int, default=None)
    p.add_argument("--other", type=_int_list, default=None)

    p = sub.add_parser("partition", help="congruences of the partition function")
    p.add_argument("--check", choices=["ramanujan", "atkin"], required=True)
    p.add_argument("--bound", type=int, required=True)

    p = sub.add_parser("theta-lab", help="Θ / U_ℓ constructions")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--beta", type=int, required=True)
    p.add_argument("--form", default="delta")
    p.add_argument("--prec", type=int, default=None)
    p.add_argument("--preimage-steps", type=int, default=0)
    p.add_argument("--weight-cap", type=int, default=None)

    p = sub.add_parser("validate", help="re-check certificates against series data")
    p.add_argument("--certs", default=None)
    p.add_argument("--in", dest="source", required=True)
    p.add_argument("--from-store", action="store_true")
    p.add_argument("--predict", action="store_true", help="demand criterion agreement for level-one eigen data")
    p.add_argument("--weight", type=int, default=None)
    return parser


# ------------------------------------------------------------
# Helpers
# ------------------------------------------------------------
@contextmanager
def _output(path: Optional[str]) -> Iterator[IO[str]]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", encoding="utf-8") as fh:
        yield fh


def _positive(name: str, value: int) -> None:
    if value < 1:
        raise UsageError(f"{name} must be positive", value=value)


def _integral_weight(f: QExpansion, given: Optional[int]) -> int:
    if given is not None:
        return given
    if f.descriptor is None or f.descriptor.weight.denominator != 1:
        raise UsageError("form weight is not an integer; pass --weight")
    return int(f.descriptor.weight)


def _reduced(f: QExpansion, ell: int) -> QExpansion:
    return qs.reduce_mod(f, ell)


def _level(f: QExpansion) -> int:
    return f.descriptor.level if f.descriptor else 1


def _use_store(settings: LabSettings) -> None:
    db.set_db_path(settings.certificate_db)
    store.init_storage()


# ------------------------------------------------------------
# Commands
# ------------------------------------------------------------
def _cmd_gen(args, settings: LabSettings, out: IO[str]) -> int:
    _positive("--prec", args.prec)
    f = build_form(args.form, args.prec, args.mod)
    if args.raw:
        f = qs.raw_grid(f)
    name = f"{args.form}-{args.prec}" + (f"-mod{args.mod}" if args.mod else "") + ("-raw" if args.raw else "")
    path = cache.save_series(f, args.series_out or cache.cache_path(name, settings.cache_dir))
    render.rows([{"form": args.form, "domain": f.domain, "precision": f.precision, "path": path}], args.format, out)
    return EXIT_OK


def _cmd_scan(args, settings: LabSettings, out: IO[str]) -> int:
    support = args.support if args.support is not None else settings.support_min
    f = _reduced(cache.load_series(args.source), args.ell)
    certs = engine.scan(f, args.max_modulus, args.bound, support, args.form)
    if args.derive:
        certs = certs + rules.collect_gap_families(certs, _level(f), f, args.bound)
    if args.store:
        _use_store(settings)
        added = store.add_certificates(certs)
        log.info("stored %d new certificates", added)
    render.certificates(certs, args.format, out)
    return EXIT_OK


def _cmd_certify_table(args, settings: LabSettings, out: IO[str]) -> int:
    _positive("--count", args.count)
    cells = crit.delta_table(args.ell, args.primes, args.count, args.verify_bound)
    render.table_cells(cells, args.format, out)
    return EXIT_OK


def _cmd_certify(args, settings: LabSettings, out: IO[str]) -> int:
    head = build_form(args.form, 2, args.ell)
    k = _integral_weight(head, args.weight)
    Mp = args.p ** (args.m + 1)
    precision = args.prec or max(basis_precision(k), args.p + 1)
    if args.identity_bound:
        precision = max(precision, args.identity_bound * Mp + 1)
    f = build_form(args.form, precision, args.ell)
    cert = crit.certify_claim(f, args.p, args.m, k, args.beta, True if args.eigenform else None, args.form)
    if cert is None:
        render.rows([{"form": args.form, "ell": args.ell, "p": args.p, "m": args.m, "certified": False}], args.format, out)
        return EXIT_OK
    if args.store:
        _use_store(settings)
        store.add_certificate(cert)
    render.certificates([cert], args.format, out)
    if args.identity_bound:
        check = composite_identity_check(f, args.p, args.m, k, args.identity_bound)
        if not check.passed:
            log.error("composite identity fails at n=%d", check.witness)
            return EXIT_DISCREPANCY
    return EXIT_OK


def _cmd_rep(args, settings: LabSettings, out: IO[str]) -> int:
    M, ell = args.modulus, args.ell
    _positive("--modulus", M)
    items: list[dict] = []
    if args.action == "dims":
        betas = [args.beta] if args.beta is not None else list(range(M))
        for beta in betas:
            W = p1.generate_submodule([p1.tm_vector(M, beta, ell)])
            items.append({"modulus": M, "ell": ell, "beta": beta % M, "dimension": W.dimension})
    elif args.action == "membership":
        if args.beta is None:
            raise UsageError("membership needs --beta")
        W = p1.generate_submodule([p1.tm_vector(M, args.beta, ell)])
        others = args.other if args.other is not None else list(range(M))
        for other in others:
            member = p1.membership(p1.tm_vector(M, other, ell), W)
            items.append({"modulus": M, "ell": ell, "beta": args.beta % M, "other": other % M, "member": member})
    else:
        St = p1.steinberg_subspace(M, ell)
        v = p1.invariant_vector(St.space, St.ctx)
        items.append({"modulus": M, "ell": ell, "dimension": St.dimension, "contains_invariant": p1.membership(v, St)})
    render.rows(items, args.format, out)
    return EXIT_OK


def _progression_check(values, ell: int, modulus: int, beta: int, bound: int) -> dict:
    picked = values[beta : modulus * bound + beta + 1 : modulus]
    bad = [i for i, v in enumerate(picked) if int(v) % ell]
    return {
        "ell": ell, "modulus": modulus, "beta": beta, "bound": bound,
        "holds": not bad, "witness": bad[0] if bad else None,
    }


def _cmd_partition(args, settings: LabSettings, out: IO[str]) -> int:
    if args.bound < 0:
        raise UsageError("bound must be non-negative", bound=args.bound)
    if args.check == "ramanujan":
        items = []
        for ell, beta in RAMANUJAN:
            values = partition_mod(ell, ell * args.bound + beta)
            items.append(_progression_check(values, ell, ell, beta, args.bound))
    else:
        ell, modulus, beta = ATKIN
        values = partition_mod(ell, modulus * args.bound + beta)
        items = [_progression_check(values, ell, modulus, beta, args.bound)]
    render.rows(items, args.format, out)
    return EXIT_OK if all(i["holds"] for i in items) else EXIT_DISCREPANCY


def _cmd_theta_lab(args, settings: LabSettings, out: IO[str]) -> int:
    ell, beta = args.ell, args.beta
    cap = args.weight_cap if args.weight_cap is not None else settings.weight_cap
    precision = args.prec or max(1000, cap // 12 + 2)
    g = build_form(args.form, precision, ell)
    k = _integral_weight(g, None)
    if beta % ell:
        g1 = theta_kill(g, beta)
        k1 = k + (ell * ell - 1) // 2
        killed = qs.sieve(g1, ell, beta % ell).is_zero()
    else:
        g1 = theta_zero_kill(g)
        k1 = k + ell + 1
        killed = qs.u_operator(g1, ell).is_zero()
    item: dict = {"form": args.form, "ell": ell, "beta": beta % ell, "weight": k1, "killed": killed}
    status = EXIT_OK if killed else EXIT_DISCREPANCY
    if args.preimage_steps:
        h, w = u_ell_preimage(g1, k1, args.preimage_steps, cap)
        image = h
        for _ in range(args.preimage_steps):
            image = qs.u_operator(image, ell)
        item["preimage_weight"] = w
        item["image_nonzero"] = not image.is_zero()
        item["image_killed"] = (
            qs.sieve(image, ell, beta % ell).is_zero() if beta % ell else qs.u_operator(image, ell).is_zero()
        )
        item["filtration"] = filtration(h, w)
        if not (item["image_nonzero"] and item["image_killed"]):
            status = EXIT_DISCREPANCY
    render.rows([item], args.format, out)
    return status


def _cmd_validate(args, settings: LabSettings, out: IO[str]) -> int:
    if args.from_store:
        _use_store(settings)
        certs = store.list_certificates()
    elif args.certs:
        certs = records.read_ndjson(args.certs)
    else:
        raise UsageError("validate needs --certs FILE or --from-store")
    data = cache.load_series(args.source)
    by_ell: dict[int, list] = {}
    for cert in certs:
        by_ell.setdefault(cert.ell, []).append(cert)
    reports = []
    for ell in sorted(by_ell):
        f = _reduced(data, ell)
        report = engine.cross_validate(by_ell[ell], f, args.predict, args.weight)
        reports.append({"ell": ell, **report.to_record()})
    if args.format == "records":
        render.emit_records(reports, out)
    else:
        render.rows(
            [{"ell": r["ell"], "checked": r["checked"], "skipped": r["skipped"], "discrepancies": len(r["discrepancies"])} for r in reports],
            args.format, out,
        )
        for r in reports:
            for d in r["discrepancies"]:
                out.write(json.dumps(d, ensure_ascii=False, separators=(",", ":")) + "\n")
    return EXIT_OK if all(not r["discrepancies"] for r in reports) else EXIT_DISCREPANCY


_COMMANDS = {
    "gen": _cmd_gen,
    "scan": _cmd_scan,
    "certify-table": _cmd_certify_table,
    "certify": _cmd_certify,
    "rep": _cmd_rep,
    "partition": _cmd_partition,
    "theta-lab": _cmd_theta_lab,
    "validate": _cmd_validate,
}


# ------------------------------------------------------------
# Entry point
# ------------------------------------------------------------
def run(argv: Sequence[str], settings: Optional[LabSettings] = None) -> int:
    """Parse, dispatch, and map failures to exit codes."""
    try:
        args = build_parser().parse_args(list(argv))
        settings = settings or load_settings()
        configure(args.log_level or settings.log_level)
        with _output(args.out) as out:
            return _COMMANDS[args.command](args, settings, out)
    except LabError as exc:
        sys.stderr.write(json.dumps(exc.to_record(), ensure_ascii=False, separators=(",", ":")) + "\n")
        return exc.exit_code
    except SystemExit as exc:
        # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except OSError as exc:
        err = DomainError("cannot access file", path=getattr(exc, "filename", None), reason=exc.strerror)
        sys.stderr.write(json.dumps(err.to_record(), ensure_ascii=False, separators=(",", ":")) + "\n")
        return EXIT_USAGE
