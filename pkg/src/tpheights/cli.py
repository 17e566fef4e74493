"""
tpheights command line: Mahler measures, p-adic splitting certificates,
bound tables and the verification suites.

    tpheights mahler "x^3-x+3"
    tpheights padic --family selfrecip:p=5 -p 5
    tpheights bounds 2..7 --format csv
    tpheights bounds --multi 2,3,5
    tpheights verify corollary5 --pmax 47

Exit codes: 0 all certified, 1 something undecided or failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from typing import Callable, Optional

from . import __version__  # noqa: F401
from .arith import is_prime, primes_between
from .bounds import (COROLLARY_PRIMES, CERTIFIED, UNDECIDED, CertificateIncomplete,
                     IntegralityClass, VacuousBound, bounds_row, enclosure_dict, fk_upper_cell, g_upper_cell,
                     generic_scheme, line_intersection_bound, multi_prime_bounds,
                     integral_upper_cell, rows_to_csv, theorem1_lower, verify_corollary_S)
from .enclosure import log_enclosure
from .families import (FamilyId, InvalidParameter, check_self_reciprocal_reduction, fermat_decompose,
                       construct, cyclotomic_factor_test, lemma51_table, lemma52_data,
                       root_of_unity_form, self_reciprocal, self_reciprocal_direct)
from .padic import count_distinct_qp_roots, newton_polygon, quadratic_splits
from .poly_exact import IntPoly, PolyParseError, format_poly, parse_poly, reciprocal
from .roots_certified import PrecisionExhausted, mahler_measure

SCHEMA_VERSION = "1.0"
ERROR = "Error"

EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    precision_start_bits: int = 128
    precision_cap_bits: int = 4096
    search_depth: int = 3
    output_format: str = "table"
    parallel_workers: int = 1

    def __post_init__(self):
        if self.precision_start_bits > self.precision_cap_bits:
            raise ValueError("precision start exceeds cap")
        if self.parallel_workers < 1:
            raise ValueError("need at least one worker")


@dataclass
class CertificateDocument:
    command: str
    inputs: dict
    results: dict
    status: str
    schema_version: str = SCHEMA_VERSION
    timestamp: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "status": self.status,
            "timestamp": self.timestamp,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "CertificateDocument":
        return cls(d["command"], d["inputs"], d["results"], d["status"],
                   d["schema_version"], d.get("timestamp"))

    @property
    def exit_code(self) -> int:
        return EXIT_OK if self.status == CERTIFIED else EXIT_UNDECIDED


def _config_dict(cfg: RunConfig) -> dict:
    return {"precision_start_bits": cfg.precision_start_bits,
            "precision_cap_bits": cfg.precision_cap_bits,
            "search_depth": cfg.search_depth}


def _pmap(fn: Callable, items: list, workers: int) -> list:
    """Map in input order; a process pool only when asked for more than one worker."""
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))


# -- mahler / padic ------------------------------------------------------------

def cmd_mahler(poly: IntPoly, cfg: RunConfig, label: str) -> CertificateDocument:
    res = mahler_measure(poly, cfg.precision_start_bits, cfg.precision_cap_bits)
    status = CERTIFIED if res.on_circle_undecided_count == 0 else UNDECIDED
    results = {
        "polynomial": format_poly(poly),
        "measure": enclosure_dict(res.measure),
        "width": str(res.measure.width),
        "roots_outside": res.outside_count,
        "roots_inside": res.inside_count,
        "roots_on_circle": res.on_circle_count,
        "roots_undecided": res.on_circle_undecided_count,
        "root_disks": [{"re": str(d.re), "im": str(d.im), "radius": str(d.radius),
                        "multiplicity": d.multiplicity} for d in res.roots],
    }
    return CertificateDocument("mahler", {"polynomial": label, **_config_dict(cfg)}, results, status)


def cmd_padic(poly: IntPoly, p: int, cfg: RunConfig, label: str) -> CertificateDocument:
    cert = count_distinct_qp_roots(poly, p, cfg.search_depth)
    results = {
        "polynomial": format_poly(poly),
        "prime": p,
        "newton_polygon": [{"slope": str(s), "length": n} for s, n in newton_polygon(poly, p)],
        "residue_classes": {str(r): c for r, c in sorted(cert.residue_classes.items())},
        "splitting": cert.to_dict(),
    }
    decided = cert.splits
    if poly.degree == 2:
        q = quadratic_splits(poly[2], poly[1], poly[0], p)
        results["quadratic_criterion"] = q
        decided = True
    status = CERTIFIED if decided else UNDECIDED
    return CertificateDocument("padic", {"polynomial": label, "prime": p, **_config_dict(cfg)},
                               results, status)


# -- bounds ----------------------------------------------------------------------

def _row_job(args):
    p, prec, cap = args
    return bounds_row(p, prec, cap)


def cmd_bounds(primes: list[int], cfg: RunConfig) -> tuple[CertificateDocument, list]:
    rows = _pmap(_row_job, [(p, cfg.precision_start_bits, cfg.precision_cap_bits) for p in primes],
                 cfg.parallel_workers)
    status = CERTIFIED if all(r.status == CERTIFIED for r in rows) else UNDECIDED
    doc = CertificateDocument("bounds", {"primes": primes, **_config_dict(cfg)},
                              {"rows": [r.to_dict() for r in rows]}, status)
    return doc, rows


def cmd_multi(S: list[int], cfg: RunConfig) -> CertificateDocument:
    b = multi_prime_bounds(S, cfg.precision_start_bits)
    ordered = b.bz_lower.hi <= b.fp_lower.lo and b.fp_lower.hi <= b.bz_upper.lo
    results = {"bz_lower": enclosure_dict(b.bz_lower), "fp_lower": enclosure_dict(b.fp_lower),
               "bz_upper": enclosure_dict(b.bz_upper), "ordered": ordered}
    return CertificateDocument("bounds", {"multi": sorted(set(S)), **_config_dict(cfg)},
                               results, CERTIFIED if ordered else UNDECIDED)


# -- verify ----------------------------------------------------------------------

def _item(name: str, ok: bool, **details) -> dict:
    return {"item": name, "status": CERTIFIED if ok else UNDECIDED, **details}


def _odd_primes(pmax: int) -> list[int]:
    return primes_between(3, pmax)


def verify_theorem1(p: int, prec: int, cap: int) -> dict:
    sch = generic_scheme(p, prec)
    agree = []
    for delta in IntegralityClass:
        a = theorem1_lower(p, delta, prec)
        b = line_intersection_bound(p, sch, delta, prec)
        agree.append(a.intersects(b) and max(a.width, b.width) < Fraction(1, 10 ** 9))
    lower_u = theorem1_lower(p, IntegralityClass.Unit, prec)
    cap_u = log_enclosure(p + Fraction(1, p ** (p - 2)), prec) / (p - 1)
    return _item(f"theorem1 p={p}", all(agree) and lower_u.hi < cap_u.lo,
                 agree=agree, sandwich=lower_u.hi < cap_u.lo)


PRINTED_THEOREM2 = {3: ("0.294061", "0.176437", "0.126026")}
PRINTED_TOLERANCE = Fraction(5, 10 ** 6)


def verify_theorem2(p: int, prec: int, cap: int) -> dict:
    row = bounds_row(p, prec, cap)
    lows = (row.lower_u.value, row.lower_i.value, row.lower_n.value)
    if p == 2:
        closed = [log_enclosure(2, prec) * c for c in (1, Fraction(2, 5), Fraction(1, 4))]
        match = [lo.intersects(c) for lo, c in zip(lows, closed)]
    else:
        match = [abs(lo.mid - Fraction(s)) < PRINTED_TOLERANCE
                 for lo, s in zip(lows, PRINTED_THEOREM2[p])]
    return _item(f"theorem2 p={p}", all(match) and row.status == CERTIFIED,
                 lower_match=match, row_status=row.status)


def verify_prop41(p: int, prec: int, cap: int) -> dict:
    cells = [fk_upper_cell(p, prec, cap)]
    if not fermat_decompose(p).is_fermat:
        cells.append(g_upper_cell(p, prec, cap))
    return _item(f"prop41 p={p}", all(c.status == CERTIFIED for c in cells),
                 cells=[{"witness": c.witness, "formula": c.formula, "status": c.status,
                         "value": enclosure_dict(c.value)} for c in cells])


def verify_prop42(p: int, prec: int, cap: int) -> dict:
    i = integral_upper_cell(p, prec, cap)
    xp1 = count_distinct_qp_roots(construct(FamilyId("xp1", p)), p)
    return _item(f"prop42 p={p}", i.status == CERTIFIED and xp1.splits,
                 witness=i.witness, xp1_splits=xp1.splits)


def verify_prop53(p: int, prec: int, cap: int) -> dict:
    g = cyclotomic_factor_test(p)
    expect = IntPoly((1, 1, 1)) if p % 12 == 1 else None
    return _item(f"prop53 p={p}", g == expect,
                 factor=None if g is None else format_poly(g))


def verify_lemma52(p: int, prec: int, cap: int) -> dict:
    d = lemma52_data(p)
    ok = d.f_vanishes_mod_p3 and d.fprime_is_minus_2p
    return _item(f"lemma52 p={p}", ok, val_f=d.val_f, val_fprime=d.val_fprime,
                 fprime_mod_p2=str(d.fprime_mod_p2), minus_2p_mod_p2=str((-2 * p) % (p * p)),
                 hensel_applies=d.hensel_applies)


def verify_selfrecip_structure(p: int, prec: int, cap: int) -> dict:
    f = self_reciprocal(p)
    poly = [(s, n) for s, n in newton_polygon(f, p)]
    checks = {
        "self_reciprocal": reciprocal(f) == f,
        "builders_agree": f == self_reciprocal_direct(p),
        "reduction": check_self_reciprocal_reduction(p),
        "newton_polygon": poly == [(-1, 1), (0, p - 1), (1, 1)],
        "root_of_unity_form": bool(root_of_unity_form(p)),
    }
    return _item(f"selfrecip p={p}", all(checks.values()), **checks)


def verify_corollary(p: int, prec: int, cap: int) -> dict:
    try:
        c = verify_corollary_S(p, prec, cap)
    except CertificateIncomplete as exc:
        return _item(f"corollary5 p={p}", False, error=str(exc))
    return _item(f"corollary5 p={p}", c.verified, lhs=enclosure_dict(c.lhs),
                 rhs=enclosure_dict(c.rhs), all_roots_on_circle=c.on_circle)


def _verify_job(args):
    fn, p, prec, cap = args
    try:
        return fn(p, prec, cap)
    except (PrecisionExhausted, VacuousBound) as exc:
        return _item(f"{fn.__name__} p={p}", False, error=str(exc))


def _lemma51_items(nmax: int) -> list[dict]:
    bad = [n for n, s1, s2 in lemma51_table(nmax) if (s1, s2) != (1 + n, n * n)]
    return [_item(f"lemma51 n<={nmax}", not bad, failures=bad[:10])]


VERIFY_TARGETS = ("theorem1", "theorem2", "prop41", "prop42", "prop53",
                  "lemma51", "lemma52", "corollary5", "all")


def _jobs_for(target: str, pmax: int) -> list[tuple[Callable, int]]:
    odd = _odd_primes(pmax)
    if target == "theorem1":
        return [(verify_theorem1, p) for p in odd]
    if target == "theorem2":
        return [(verify_theorem2, p) for p in (2, 3) if p <= pmax]
    if target == "prop41":
        return [(verify_prop41, p) for p in odd]
    if target == "prop42":
        return [(verify_prop42, p) for p in primes_between(2, pmax)]
    if target == "prop53":
        return [(verify_prop53, p) for p in odd]
    if target == "lemma52":
        return [(verify_lemma52, p) for p in odd] + [(verify_selfrecip_structure, p) for p in odd]
    if target == "corollary5":
        return [(verify_corollary, p) for p in COROLLARY_PRIMES if p <= pmax]
    return []


def cmd_verify(target: str, pmax: int, cfg: RunConfig, lemma51_n: int = 10 ** 4) -> CertificateDocument:
    if pmax < 3:
        raise ValueError("pmax must be at least 3")
    targets = [t for t in VERIFY_TARGETS if t != "all"] if target == "all" else [target]
    items = []
    for t in targets:
        if t == "lemma51":
            items.extend(_lemma51_items(lemma51_n))
            continue
        jobs = [(fn, p, cfg.precision_start_bits, cfg.precision_cap_bits) for fn, p in _jobs_for(t, pmax)]
        items.extend(_pmap(_verify_job, jobs, cfg.parallel_workers))
    status = CERTIFIED if items and all(it["status"] == CERTIFIED for it in items) else UNDECIDED
    results = {"items": items,
               "certified": sum(it["status"] == CERTIFIED for it in items),
               "total": len(items)}
    return CertificateDocument("verify", {"target": target, "pmax": pmax, **_config_dict(cfg)},
                               results, status)


# -- rendering -----------------------------------------------------------------

def _dec(enc: Optional[dict]) -> str:
    if enc is None:
        return "-"
    lo, hi = enc["lo_decimal"], enc["hi_decimal"]
    return lo if lo == hi else f"[{lo}, {hi}]"


def render_table(doc: CertificateDocument) -> str:
    r = doc.results
    lines = [f"{doc.command}: {doc.status}"]
    if doc.command == "mahler":
        lines += [f"  f = {r['polynomial']}", f"  M(f) = {_dec(r['measure'])}",
                  f"  roots outside/inside/on circle/undecided: {r['roots_outside']}/"
                  f"{r['roots_inside']}/{r['roots_on_circle']}/{r['roots_undecided']}"]
    elif doc.command == "padic":
        s = r["splitting"]
        lines += [f"  f = {r['polynomial']} over Q_{r['prime']}",
                  "  newton polygon: " + ", ".join(f"({x['slope']},{x['length']})" for x in r["newton_polygon"]),
                  f"  conclusion: {s['conclusion']} ({s['distinct_root_count']} evidence items)"]
        for e in s["evidence"]:
            lines.append("    " + ", ".join(f"{k}={v}" for k, v in e.items()))
        if "quadratic_criterion" in r:
            lines.append(f"  quadratic criterion: {'splits' if r['quadratic_criterion'] else 'does not split'}")
    elif doc.command == "bounds" and "rows" in r:
        hdr = ("p", "lower_u", "lower_i", "lower_n", "upper_u", "upper_i", "upper_n", "status")
        lines.append("  " + " | ".join(hdr))
        for row in r["rows"]:
            cells = [_short(row[k]["value"]) for k in hdr[1:7]]
            lines.append("  " + " | ".join([str(row["p"])] + cells + [row["status"]]))
    elif doc.command == "bounds":
        lines += [f"  {k}: {_dec(r[k])}" for k in ("bz_lower", "fp_lower", "bz_upper")]
    else:
        for it in r["items"]:
            lines.append(f"  [{it['status']}] {it['item']}")
        lines.append(f"  {r['certified']}/{r['total']} certified")
    return "\n".join(lines)


def _short(enc: Optional[dict]) -> str:
    if enc is None:
        return "-"
    return enc["lo_decimal"][:10]


def render(doc: CertificateDocument, fmt: str, rows=None) -> str:
    if fmt == "json":
        return doc.to_json()
    if fmt == "csv":
        if rows is None:
            raise ValueError("csv output is only available for bounds tables")
        return rows_to_csv(rows).rstrip("\n")
    return render_table(doc)


# -- argument parsing ------------------------------------------------------------

def parse_primes(text: str) -> list[int]:
    """'3', '2..7' or '2,3,5'."""
    text = text.strip()
    if ".." in text:
        a, b = (int(x) for x in text.split("..", 1))
        primes = primes_between(a, b)
    else:
        primes = [int(x) for x in text.split(",") if x.strip()]
    if not primes or not all(is_prime(p) for p in primes):
        raise ValueError(f"no primes or non-prime in {text!r}")
    return primes


def _polynomial(args) -> tuple[IntPoly, str]:
    if args.family:
        fid = FamilyId.parse(args.family)
        return construct(fid), str(fid)
    if args.poly is None:
        raise ValueError("give a polynomial or --family")
    return parse_poly(args.poly), args.poly


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision-start", type=int, default=128, metavar="BITS")
    common.add_argument("--precision-cap", type=int, default=4096, metavar="BITS")
    common.add_argument("--depth", type=int, default=3, help="Hensel search depth")
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--output", metavar="FILE")
    common.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp so output is byte-reproducible")

    ap = argparse.ArgumentParser(prog="tpheights", description=__doc__.split("\n\n")[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="cmd", required=True)

    m = sub.add_parser("mahler", parents=[common], help="certified Mahler measure")
    m.add_argument("poly", nargs="?")
    m.add_argument("--family")

    p = sub.add_parser("padic", parents=[common], help="Q_p splitting certificate")
    p.add_argument("poly", nargs="?")
    p.add_argument("--family")
    p.add_argument("--prime", "-p", type=int, required=True)

    b = sub.add_parser("bounds", parents=[common], help="bound table rows")
    b.add_argument("primes", nargs="?", help="p, a range a..b, or a list 2,3,5")
    b.add_argument("--prime", "-p", type=int)
    b.add_argument("--multi", help="comma-separated prime set for the multi-prime sums")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("target", choices=VERIFY_TARGETS)
    v.add_argument("--pmax", type=int, default=47)
    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    rows = None
    try:
        cfg = RunConfig(args.precision_start, args.precision_cap, args.depth,
                        args.format, args.workers)
        if args.cmd == "mahler":
            poly, label = _polynomial(args)
            doc = cmd_mahler(poly, cfg, label)
        elif args.cmd == "padic":
            if not is_prime(args.prime):
                raise ValueError(f"{args.prime} is not prime")
            poly, label = _polynomial(args)
            doc = cmd_padic(poly, args.prime, cfg, label)
        elif args.cmd == "bounds":
            if args.multi:
                doc = cmd_multi(parse_primes(args.multi), cfg)
            else:
                text = args.primes or (str(args.prime) if args.prime else None)
                if text is None:
                    raise ValueError("give a prime, a range or --multi")
                doc, rows = cmd_bounds(parse_primes(text), cfg)
        else:
            doc = cmd_verify(args.target, args.pmax, cfg)
        if args.format == "csv" and rows is None:
            raise ValueError("csv output is only available for bounds tables")
    except (ValueError, PolyParseError, InvalidParameter) as exc:
        print(f"tpheights: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        doc = CertificateDocument(args.cmd, {}, {"error": str(exc)}, UNDECIDED)

    if not args.no_timestamp:
        doc.timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    text = render(doc, args.format, rows)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return doc.exit_code


if __name__ == "__main__":
    sys.exit(main())
