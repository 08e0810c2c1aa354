"""Command-line frontend: expansions, metadata, certification, scans, JSON
certificates, and the on-disk b_5 table.

Exit codes: 0 success or certified; 1 mathematical failure (a violation or a
failed certificate); 2 usage or parse error; 3 resource ceiling (a run that
would exceed the configured series cap).
"""

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from . import __version__
from .qseries import SeriesConfig, eta_quotient_series
from .etaforms import (
    EtaQuotient, EtaConditionError, gordon_hughes_meta, cusp_order,
    _divisors, sturm_bound,
)
from .regpart import bk_series, check_progression, PrecisionCapError
from .certify import (
    CongruenceCertificate, Progression, certify_pair, criterion_scan, scan_l,
)
from .cache import DiskCache

__all__ = [
    "CertificateDocument",
    "EtaParseError",
    "parse_eta_expression",
    "serialize_document",
    "parse_document",
    "main",
]

DOCUMENT_VERSION = 1


class EtaParseError(ValueError):
    """Expression rejected; .position is the 0-based offset of the problem."""

    def __init__(self, message, position):
        super().__init__("%s (at position %d)" % (message, position))
        self.position = position


def parse_eta_expression(text):
    """`eta(<k>z)` factors with integer `^` exponents joined by `*` and `/`.

    Whitespace is insignificant; `eta(z)` means dilation 1; `/` negates the
    exponent of the factor that follows it.  Returns {dilation: exponent}.
    """
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def expect(token):
        nonlocal pos
        skip_ws()
        if not text.startswith(token, pos):
            raise EtaParseError("expected '%s'" % token, pos)
        pos += len(token)

    def parse_int(signed):
        nonlocal pos
        skip_ws()
        start = pos
        if signed and pos < n and text[pos] in "+-":
            pos += 1
        digits = pos
        while pos < n and text[pos].isdigit():
            pos += 1
        if pos == digits:
            raise EtaParseError("expected an integer", start)
        return int(text[start:pos])

    def parse_factor():
        nonlocal pos
        expect("eta")
        expect("(")
        skip_ws()
        delta = parse_int(signed=False) if pos < n and text[pos].isdigit() else 1
        if delta < 1:
            raise EtaParseError("dilation must be >= 1", pos)
        expect("z")
        expect(")")
        skip_ws()
        exponent = 1
        if pos < n and text[pos] == "^":
            pos += 1
            exponent = parse_int(signed=True)
        return delta, exponent

    exponents = {}
    first = True
    while True:
        skip_ws()
        if pos >= n:
            if first:
                raise EtaParseError("empty expression", 0)
            break
        sign = 1
        if not first:
            if text[pos] == "*":
                pos += 1
            elif text[pos] == "/":
                sign = -1
                pos += 1
            else:
                raise EtaParseError("expected '*' or '/'", pos)
        delta, exponent = parse_factor()
        exponents[delta] = exponents.get(delta, 0) + sign * exponent
        first = False
    exponents = {d: r for d, r in exponents.items() if r}
    if not exponents:
        raise EtaParseError("all factors cancel", 0)
    return exponents


# -- presentation -------------------------------------------------------------

def format_offset(offset24):
    return str(Fraction(offset24, 24))


def format_series(series, max_terms=24):
    """Human-readable polynomial prefix with an O(q^P) tail marker."""
    parts = []
    shown = 0
    for exponent in range(series.precision):
        c = int(series.coeffs[exponent])
        if c == 0:
            continue
        if shown >= max_terms:
            parts.append("+ ...")
            break
        mag = abs(c)
        if exponent == 0:
            term = str(mag)
        else:
            power = "q" if exponent == 1 else "q^%d" % exponent
            term = power if mag == 1 else "%d*%s" % (mag, power)
        if not parts:
            parts.append(term if c >= 0 else "-" + term)
        else:
            parts.append(("+ " if c >= 0 else "- ") + term)
        shown += 1
    if not parts:
        parts.append("0")
    return " ".join(parts) + " + O(q^%d)" % series.precision


# -- JSON certificate documents ----------------------------------------------

@dataclass
class CertificateDocument:
    version: int
    generated_by: str
    certificate: CongruenceCertificate


def make_document(certificate):
    return CertificateDocument(
        version=DOCUMENT_VERSION,
        generated_by="regulus %s" % __version__,
        certificate=certificate,
    )


def serialize_document(doc) -> str:
    """Fixed key order so equal documents serialize to identical bytes."""
    cert = doc.certificate
    payload = {
        "version": doc.version,
        "generated_by": doc.generated_by,
        "m": cert.m,
        "l": cert.l,
        "weight": cert.weight,
        "level": cert.level,
        "character": cert.character_descriptor,
        "sturm_bound": cert.sturm_bound,
        "coefficients_checked": cert.coefficients_checked,
        "status": cert.status,
        "first_nonzero": None if cert.first_nonzero is None else {
            "index": cert.first_nonzero[0],
            "residue": cert.first_nonzero[1],
        },
        "progressions": [{"A": p.A, "B": p.B} for p in cert.progressions],
        "timings": {stage: int(ms) for stage, ms in cert.timings.items()},
    }
    return json.dumps(payload, indent=2) + "\n"


def parse_document(text) -> CertificateDocument:
    raw = json.loads(text)
    first = raw["first_nonzero"]
    cert = CongruenceCertificate(
        m=raw["m"],
        l=raw["l"],
        weight=raw["weight"],
        level=raw["level"],
        character_descriptor=raw["character"],
        sturm_bound=raw["sturm_bound"],
        coefficients_checked=raw["coefficients_checked"],
        status=raw["status"],
        first_nonzero=None if first is None else (first["index"], first["residue"]),
        progressions=[Progression(A=p["A"], B=p["B"], m=raw["m"])
                      for p in raw["progressions"]],
        timings=dict(raw["timings"]),
    )
    return CertificateDocument(
        version=raw["version"], generated_by=raw["generated_by"], certificate=cert)


# -- command implementations ---------------------------------------------------

def _config(args):
    threads = getattr(args, "threads", None)
    if threads:
        return SeriesConfig(threads=threads)
    return None


def _cache(args):
    if getattr(args, "no_cache", False):
        return None
    return DiskCache()


def cmd_expand(args):
    exponents = parse_eta_expression(args.expression)
    series = eta_quotient_series(exponents, args.precision, args.modulus, _config(args))
    if args.integral_part:
        print(",".join(str(int(c)) for c in series.coeffs))
        return 0
    print("offset: %s" % format_offset(series.offset24))
    print(format_series(series))
    return 0


def cmd_meta(args):
    exponents = parse_eta_expression(args.expression)
    level = lcm(*exponents)
    E = EtaQuotient(level, exponents)
    try:
        meta = gordon_hughes_meta(E)
    except EtaConditionError as err:
        print("not modular: %s" % err, file=sys.stderr)
        return 1
    orders = {d: cusp_order(E, d) for d in _divisors(level)}
    print("weight: %d" % meta.weight)
    print("level: %d" % meta.level)
    print("character: (%d|n)" % meta.character_descriptor)
    print("cusp orders: " + ", ".join("d=%d: %s" % (d, o) for d, o in orders.items()))
    if all(o > 0 for o in orders.values()):
        kind = "cusp form"
    elif all(o >= 0 for o in orders.values()):
        kind = "holomorphic form"
    else:
        kind = "not holomorphic"
    print("classification: %s" % kind)
    print("sturm bound: %d" % sturm_bound(meta.weight, meta.level))
    return 0


def cmd_certify(args):
    try:
        cert = certify_pair(args.modulus, args.prime, extended=args.extended,
                            cache=_cache(args), cfg=_config(args))
    except ValueError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2
    print("m=%d l=%d weight=%d level=%d sturm_bound=%d status=%s"
          % (cert.m, cert.l, cert.weight, cert.level, cert.sturm_bound, cert.status))
    if cert.status == "certified":
        print("progressions: %d, first b_5(%dn+%d) = 0 (mod %d)"
              % (len(cert.progressions), cert.progressions[0].A,
                 cert.progressions[0].B, cert.m))
    elif cert.status == "failed":
        print("first nonzero Hecke coefficient: index %d, residue %d"
              % cert.first_nonzero)
    else:
        print("needs a b_5 table of %d coefficients, over the cap%s"
              % (cert.required_precision,
                 "" if args.extended else " (try --extended)"), file=sys.stderr)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(serialize_document(make_document(cert)))
    if cert.status == "certified":
        return 0
    if cert.status == "failed":
        return 1
    return 3


def cmd_check(args):
    try:
        report = check_progression(args.A, args.B, args.modulus, args.n_max,
                                   cache=_cache(args), cfg=_config(args))
    except PrecisionCapError as err:
        print("error: %s" % err, file=sys.stderr)
        return 3
    if report.all_zero:
        print("all_zero: b_5(%dn+%d) = 0 (mod %d) for n <= %d"
              % (args.A, args.B, args.modulus, args.n_max))
        return 0
    print("violation at n=%d: b_5(%d) != 0 (mod %d)"
          % (report.first_violation,
             args.A * report.first_violation + args.B, args.modulus))
    return 1


def cmd_scan_l(args):
    results = scan_l(args.modulus, args.prime, extended=args.extended,
                     cache=_cache(args), cfg=_config(args))
    for l, cert in results:
        print("l=%d certified (sturm_bound=%d, %d progressions)"
              % (l, cert.sturm_bound, len(cert.progressions)))
    if not results:
        print("no certified l <= %d for m=%d" % (args.prime, args.modulus))
    return 0


def cmd_scan_criterion(args):
    match = re.fullmatch(r"(\d+)\.\.(\d+)", args.range)
    if not match:
        print("error: range must look like 7..40", file=sys.stderr)
        return 2
    lo, hi = int(match.group(1)), int(match.group(2))
    if lo > hi:
        print("error: empty range", file=sys.stderr)
        return 2
    from .numth import primes_up_to
    cache = _cache(args)
    cfg = _config(args)
    for m in primes_up_to(hi):
        if m < max(lo, 5):
            continue
        result = criterion_scan(m, cache=cache, cfg=cfg)
        if result.found:
            print("m=%d found k=%d e=%d" % (m, result.k, result.e))
        elif result.discrepancy:
            print("m=%d not found under 10(m-1); witness k=%d e=%d in the slack window"
                  % (m, result.discrepancy[0], result.discrepancy[1]))
        else:
            print("m=%d not found" % m)
    return 0


def cmd_bk(args):
    series = bk_series(args.k, args.precision, args.modulus,
                       cache=_cache(args), cfg=_config(args))
    print(",".join(str(int(c)) for c in series.coeffs))
    return 0


# -- argument wiring -----------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        prog="regulus",
        description="q-series computations for 5-regular partition congruences")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, threads=True, no_cache=True):
        if threads:
            p.add_argument("--threads", type=int, default=None, metavar="N")
        if no_cache:
            p.add_argument("--no-cache", action="store_true")

    p = sub.add_parser("expand", help="expand an eta-quotient expression")
    p.add_argument("expression")
    p.add_argument("-p", "--precision", type=int, default=10)
    p.add_argument("-m", "--modulus", type=int, default=None)
    p.add_argument("--integral-part", action="store_true",
                   help="print the coefficient list only, comma-separated")
    add_common(p, no_cache=False)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("meta", help="modularity data of an eta quotient")
    p.add_argument("expression")
    p.set_defaults(func=cmd_meta)

    p = sub.add_parser("certify", help="Sturm-certify F_m | T(l) = 0 (mod m)")
    p.add_argument("-m", "--modulus", type=int, required=True)
    p.add_argument("-l", "--prime", type=int, required=True)
    p.add_argument("--extended", action="store_true")
    p.add_argument("--json", metavar="PATH", default=None)
    add_common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("check", help="scan b_5(An+B) mod m empirically")
    p.add_argument("-A", type=int, required=True)
    p.add_argument("-B", type=int, required=True)
    p.add_argument("-m", "--modulus", type=int, required=True)
    p.add_argument("-n", "--n-max", type=int, default=100)
    add_common(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("scan-l", help="search primes l that certify for m")
    p.add_argument("-m", "--modulus", type=int, required=True)
    p.add_argument("-l", "--prime", type=int, required=True,
                   help="upper bound for the scanned primes l")
    p.add_argument("--extended", action="store_true")
    add_common(p)
    p.set_defaults(func=cmd_scan_l)

    p = sub.add_parser("scan-criterion", help="nonvanishing witness per prime m")
    p.add_argument("range", help="inclusive prime range, e.g. 7..40")
    add_common(p)
    p.set_defaults(func=cmd_scan_criterion)

    p = sub.add_parser("bk", help="coefficients of the k-regular partition series")
    p.add_argument("k", type=int)
    p.add_argument("-p", "--precision", type=int, default=10)
    p.add_argument("-m", "--modulus", type=int, default=None)
    add_common(p)
    p.set_defaults(func=cmd_bk)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        code = exit_.code
        return 0 if code in (0, None) else 2
    try:
        return args.func(args)
    except EtaParseError as err:
        print("parse error: %s" % err, file=sys.stderr)
        return 2
    except ValueError as err:
        print("error: %s" % err, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
