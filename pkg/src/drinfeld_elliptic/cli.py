"""Command-line front end.

Curve files hold ``key=value`` pairs, one or more per line (``#`` starts a
comment).  Keys: p, m (default 1), model (hyperelliptic | plane, default
hyperelliptic), h, f, C (plane model: rows of x-coefficients of y^j), genus,
infinity (``default`` or the coefficient list of a monic irreducible).
Coefficients are constant-first lists; over F_{p^m} with m > 1 each element is
a base-p digit list, e.g. ``f=[[1,0],[0,1]]``.

Exit status: 0 on success, 1 on invalid input or a failed invariant, 2 when
the infinite place has even degree.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import re
import sys
import tempfile
import time
import warnings
from pathlib import Path

from .curve import CurveError, CurveSpec, DeltaParityError, HyperellipticCurve, UnsupportedOperation, validate

SCHEMA = 1
CACHE_ENV = "DRINFELD_ELL_CACHE"
DEFAULT_CACHE = Path.home() / ".cache" / "drinfeld_elliptic"
KEYS = ("p", "m", "model", "h", "f", "C", "genus", "infinity")


class CurveFileError(ValueError):
    def __init__(self, msg, line=None, col=None):
        self.line, self.col = line, col
        where = "" if line is None else "line %d, column %d: " % (line, col)
        super().__init__(where + msg)


# -- curve files ---------------------------------------------------------------


def _tokens(line: str):
    """(column, token) pairs split on whitespace outside brackets."""
    depth, start = 0, None
    for i, ch in enumerate(line + " "):
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
        if ch.isspace() and depth <= 0:
            if start is not None:
                yield start + 1, line[start:i]
                start = None
        elif start is None:
            start = i


def parse_curve_file(text: str) -> CurveSpec:
    vals = {}
    where = {}
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        for col, tok in _tokens(line):
            key, eq, value = tok.partition("=")
            if not eq:
                raise CurveFileError("expected key=value, got %r" % tok, ln, col)
            key = key.strip()
            if key not in KEYS:
                raise CurveFileError("unknown key %r" % key, ln, col)
            if key in vals:
                raise CurveFileError("duplicate key %r" % key, ln, col)
            vals[key] = value.strip()
            where[key] = (ln, col + len(key) + 1)

    def num(key, default=None):
        if key not in vals:
            if default is None:
                raise CurveFileError("missing key %r" % key)
            return default
        try:
            return int(vals[key])
        except ValueError:
            raise CurveFileError("%s must be an integer, got %r" % (key, vals[key]), *where[key]) from None

    def coeffs(key, default=None):
        if key not in vals:
            if default is None:
                raise CurveFileError("missing key %r" % key)
            return default
        try:
            out = json.loads(vals[key])
        except json.JSONDecodeError as exc:
            ln, col = where[key]
            raise CurveFileError("%s: %s" % (key, exc.msg), ln, col + exc.colno - 1) from None
        if not isinstance(out, list):
            raise CurveFileError("%s must be a list" % key, *where[key])
        return out

    p, m, genus = num("p"), num("m", 1), num("genus")
    model = vals.get("model", "hyperelliptic")
    try:
        if model == "hyperelliptic":
            if "C" in vals:
                raise CurveFileError("key 'C' belongs to plane models", *where["C"])
            inf = vals.get("infinity", "default")
            inf = None if inf == "default" else coeffs("infinity")
            return CurveSpec.hyperelliptic(p, m, coeffs("h", []), coeffs("f"), genus, inf)
        if model == "plane":
            for k in ("h", "f", "infinity"):
                if k in vals:
                    raise CurveFileError("key %r is not used by plane models" % k, *where[k])
            return CurveSpec.plane(p, m, coeffs("C"), genus)
    except CurveFileError:
        raise
    except (CurveError, ValueError) as exc:
        raise CurveFileError(str(exc)) from None
    raise CurveFileError("unknown model %r" % model, *where.get("model", (None, None)))


def _elem_out(F, c):
    return F.digits(c) if F.m > 1 else c


def _poly_out(F, poly):
    return [_elem_out(F, c) for c in poly]


def format_curve_file(spec: CurveSpec) -> str:
    F = spec.field
    lines = ["p=%d" % spec.p, "m=%d" % spec.m, "model=%s" % spec.kind]
    dump = lambda v: json.dumps(v, separators=(",", ":"))
    if spec.kind == "hyperelliptic":
        lines.append("h=" + dump(_poly_out(F, spec.h)))
        lines.append("f=" + dump(_poly_out(F, spec.f)))
        lines.append("genus=%d" % spec.genus)
        lines.append("infinity=" + ("default" if spec.infinity is None else dump(_poly_out(F, spec.infinity))))
    else:
        lines.append("C=" + dump([_poly_out(F, r) for r in spec.C]))
        lines.append("genus=%d" % spec.genus)
    return "\n".join(lines) + "\n"


def curve_hash(spec: CurveSpec) -> str:
    data = {
        "p": spec.p,
        "m": spec.m,
        "kind": spec.kind,
        "genus": spec.genus,
        "h": list(spec.h),
        "f": list(spec.f),
        "C": [list(r) for r in spec.C],
        "infinity": None if spec.infinity is None else list(spec.infinity),
    }
    return hashlib.sha256(json.dumps(data, sort_keys=True).encode()).hexdigest()


# -- JSON ----------------------------------------------------------------------------


def stringify(obj):
    """Integers become decimal strings (booleans and None untouched)."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [stringify(v) for v in obj]
    return obj


def to_json(result: dict) -> str:
    return json.dumps(dict(stringify(result), schema=SCHEMA), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# -- cache ---------------------------------------------------------------------------


class ResultCache:
    def __init__(self, root: Path | str | None = None):
        self.root = Path(root or os.environ.get(CACHE_ENV) or DEFAULT_CACHE)

    def _path(self, chash: str, key: str) -> Path:
        return self.root / ("%s-%s.json" % (chash, hashlib.sha256(key.encode()).hexdigest()[:16]))

    def get(self, chash: str, key: str):
        path = self._path(chash, key)
        try:
            entry = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if entry.get("schema") != SCHEMA or entry.get("curve_hash") != chash or entry.get("key") != key:
            return None
        return entry.get("result")

    def put(self, chash: str, key: str, result: dict):
        self.root.mkdir(parents=True, exist_ok=True)
        entry = {"schema": SCHEMA, "curve_hash": chash, "key": key, "created": time.time(), "result": result}
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(entry, fh, sort_keys=True)
            os.replace(tmp, self._path(chash, key))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


# -- commands --------------------------------------------------------------------------


def _hyper(curve, need_default=True):
    if not isinstance(curve, HyperellipticCurve):
        raise UnsupportedOperation("this command needs a hyperelliptic model")
    curve.require_odd_delta()
    if need_default:
        curve.require_default_infinity()
    return curve


def _class_out(F2, D):
    return {"u": _poly_out(F2, D[0]), "v": _poly_out(F2, D[1])}


def _elem_json(F, u):
    return {"a": _poly_out(F, u[0]), "b": _poly_out(F, u[1])}


def cmd_lpoly(curve, args):
    from .zeta import extend_constants, l_polynomial

    L = l_polynomial(curve)
    out = {
        "lpoly": list(L.coeffs),
        "q": L.q,
        "genus": L.g,
        "h": L(1),
        "L_minus_1": L(-1),
        "lpoly_extended": list(extend_constants(L).coeffs),
        "functional_equation": L.functional_equation_holds(),
        "rh_max_deviation": "%.3e" % L.rh_deviation(),
        "rh_ok": L.rh_holds(),
    }
    if curve.delta is not None:
        out["delta"] = curve.delta
    return out


def cmd_kernel(curve, args):
    from .jacobian import norm_kernel

    _hyper(curve)
    K = norm_kernel(curve)
    F2 = K.jac2.F
    return {
        "kernel": list(K.structure),
        "kernel_order": K.order,
        "two_torsion": K.two_torsion_size,
        "jac_order_base": K.base_order,
        "jac_order_extended": K.full_order,
        "trace_image": K.image_order,
        "classes": [_class_out(F2, D) for D in K.group.elements],
    }


def cmd_ell(curve, args):
    from .census import ell_summary

    _hyper(curve)
    s = ell_summary(curve)
    return {"lpoly": list(s.lpoly.coeffs), "h": s.lpoly(1), "ell": s.ell, "ell2": s.ell2, "r": s.r, "kernel": list(s.kernel)}


def cmd_points(curve, args):
    from .census import ell_summary
    from .elliptic_points import enumerate_points, is_self_conjugate
    from .orders import CurveRings

    _hyper(curve)
    rings = CurveRings(curve)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        res = enumerate_points(rings, args.deg_bound)
    s = ell_summary(curve, kernel=res.kernel)
    F, F2 = rings.F, rings.F2
    rows = []
    for D in res.kernel.group.elements:
        pt = res.classes.get(D)
        row = {"class": _class_out(F2, D), "self_conjugate": is_self_conjugate(rings, D), "found": pt is not None}
        if pt is not None:
            row.update(s=_elem_json(F, pt.s), t=_elem_json(F, pt.t), tp=_elem_json(F, pt.tp))
            row["text"] = {"s": rings.A.fmt(pt.s), "t": rings.A.fmt(pt.t), "tp": rings.A.fmt(pt.tp)}
        row["class_text"] = rings.jac2.fmt(D)
        rows.append(row)
    return {
        "lpoly": list(s.lpoly.coeffs),
        "ell": s.ell,
        "ell2": s.ell2,
        "r": s.r,
        "kernel": list(s.kernel),
        "deg_bound": args.deg_bound,
        "coverage": [len(res.classes), res.kernel.order],
        "max_t_degree": res.max_t_nu,
        "search_exhausted": res.exhausted,
        "pairs_found": res.pairs_found,
        "orbits": rows,
        "warnings": res.warnings,
    }


def _parse_elem_arg(F, text, what):
    from .curve import _poly

    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CurveFileError("--%s: %s" % (what, exc.msg)) from None
    if not (isinstance(data, list) and len(data) == 2 and all(isinstance(v, list) for v in data)):
        raise CurveFileError("--%s must be a JSON pair [a, b] of coefficient lists (a + b y)" % what)
    return (_poly(F, data[0]), _poly(F, data[1]))


def cmd_stabilizer(curve, args):
    from .elliptic_points import check_stabilizer, make_point, minimal_poly, parity_check
    from .orders import CurveRings

    _hyper(curve)
    rings = CurveRings(curve)
    F = rings.F
    s = _parse_elem_arg(F, args.s, "s")
    t = _parse_elem_arg(F, args.t, "t")
    if t == rings.A.zero:
        raise CurveFileError("--t must be nonzero")
    pt = make_point(rings, s, t)
    st = check_stabilizer(rings, pt)
    mp = minimal_poly(rings, pt)
    par = parity_check(rings, pt)
    A = rings.A
    return {
        "tp": _elem_json(F, pt.tp),
        "M0": [_elem_json(F, e) for e in st.M0],
        "M0_text": [A.fmt(e) for e in st.M0],
        "det": _elem_out(F, st.det),
        "trace": _elem_out(F, st.trace),
        "order": st.order,
        "span_size": st.span_size,
        "expected_span_size": F.q**2 - 1,
        "closed": st.closed,
        "fixes_omega": st.fixes_omega,
        "fixes_conjugate": st.fixes_conjugate,
        "nu_t": par.nu_t,
        "primes_of_t": [{"p": _poly_out(F, P), "degree": d} for P, d, _ in par.primes],
        "minimal_poly": {"sigma": mp.sigma.fmt(), "tau": mp.tau.fmt()},
    }


def cmd_census(curve, args):
    from .census import ell_summary, free_product_summary, vertex_census

    _hyper(curve)
    s = ell_summary(curve)
    return {
        "lpoly": list(s.lpoly.coeffs),
        "ell": s.ell,
        "ell2": s.ell2,
        "r": s.r,
        "kernel": list(s.kernel),
        "census": vertex_census(curve, s).as_dict(),
        "free_product": free_product_summary(curve, s),
    }


def cmd_scan(args):
    from .census import scan

    qs = [int(v) for v in args.scan_q.split(",") if v.strip()]
    rep = scan(qs, args.scan_genus, args.predicate, monic=args.monic)
    return {
        "scan_q": qs,
        "scan_genus": rep.genus,
        "predicate": rep.predicate,
        "scanned": rep.scanned,
        "matches": [m.as_dict() for m in rep.matches],
        "lpoly_groups": [{"lpoly": list(k), "count": v} for k, v in sorted(rep.lpoly_groups.items())],
        "note": rep.note,
    }


COMMANDS = {
    "lpoly": cmd_lpoly,
    "ell": cmd_ell,
    "kernel": cmd_kernel,
    "points": cmd_points,
    "stabilizer": cmd_stabilizer,
    "census": cmd_census,
}


# -- tables ------------------------------------------------------------------------------


def _fmt_l(coeffs):
    from .zeta import LPoly

    g = (len(coeffs) - 1) // 2
    return LPoly(tuple(coeffs), 1, g).fmt()


def render_table(cmd: str, res: dict) -> str:
    out = []
    if "equation" in res:
        out.append("curve: %s" % res["equation"])
    if "lpoly" in res and cmd != "scan":
        out.append("L(u) = %s" % _fmt_l(res["lpoly"]))
    if cmd == "lpoly":
        out.append("h = L(1) = %d" % res["h"])
        out.append("L(-1) = %d" % res["L_minus_1"])
        out.append("L~(v) = %s   (over F_%d)" % (_fmt_l(res["lpoly_extended"]).replace("u", "v"), res["q"] ** 2))
        out.append("functional equation: %s" % ("ok" if res["functional_equation"] else "FAILED"))
        out.append("RH check: max deviation %s (%s)" % (res["rh_max_deviation"], "ok" if res["rh_ok"] else "advisory miss"))
    elif cmd == "kernel":
        out.append("kernel structure: %s   order %d" % (_structure(res["kernel"]), res["kernel_order"]))
        out.append("2-torsion in kernel: %d" % res["two_torsion"])
        out.append("|Jac(F_q)| = %d   |Jac(F_q^2)| = %d   |trace image| = %d" % (
            res["jac_order_base"], res["jac_order_extended"], res["trace_image"]))
    elif cmd in ("ell", "points", "census"):
        if "h" in res:
            out.append("h = %d" % res["h"])
        out.append("ell=%d  ell2=%d  r=%d" % (res["ell"], res["ell2"], res["r"]))
        out.append("kernel: %s" % _structure(res["kernel"]))
    if cmd == "points":
        out.append("deg-bound %d   coverage %d/%d   max -nu(t) %d   pairs found %d" % (
            res["deg_bound"], res["coverage"][0], res["coverage"][1], res["max_t_degree"], res["pairs_found"]))
        out.append("%-28s %-5s %s" % ("class (u, v)", "conj", "s ; t ; t'"))
        for row in res["orbits"]:
            pts = "-" if not row["found"] else "%s ; %s ; %s" % (row["text"]["s"], row["text"]["t"], row["text"]["tp"])
            out.append("%-28s %-5s %s" % (row["class_text"], "yes" if row["self_conjugate"] else "no", pts))
        for w in res["warnings"]:
            out.append("warning: %s" % w)
    if cmd == "census":
        c = res["census"]
        out.append("isolated vertices, GL_2(F_q) type: %d (stabilizer order %d)" % (c["gl2_vertices"], c["gl2_stabilizer_order"]))
        out.append("isolated vertices, F_q^2* type:    %d (stabilizer order %d)" % (c["torus_vertices"], c["torus_stabilizer_order"]))
        out.append("PGL_2(A) = %s" % res["free_product"]["text"])
        for note in res["free_product"]["amalgams"]:
            out.append("  amalgam: %s" % note)
    if cmd == "stabilizer":
        m = res["M0_text"]
        out.append("M0 = [[%s, %s], [%s, %s]]" % tuple(m))
        out.append("det = %s   trace = %s   order %d" % (_e(res["det"]), _e(res["trace"]), res["order"]))
        out.append("span: %d invertible elements (expected %d), closed: %s" % (
            res["span_size"], res["expected_span_size"], res["closed"]))
        out.append("fixes omega: %s   fixes conjugate: %s" % (res["fixes_omega"], res["fixes_conjugate"]))
        out.append("nu(t) = %d   primes of tA (degrees): %s" % (
            res["nu_t"], ", ".join(str(p["degree"]) for p in res["primes_of_t"]) or "none"))
        out.append("minimal polynomial: X^2 + (%s) X + (%s)" % (res["minimal_poly"]["sigma"], res["minimal_poly"]["tau"]))
    if cmd == "scan":
        out.append("scanned %d models (q in %s, genus %d), predicate %s: %d matches" % (
            res["scanned"], ",".join(map(str, res["scan_q"])), res["scan_genus"], res["predicate"], len(res["matches"])))
        for mt in res["matches"]:
            extra = ""
            if "ell2" in mt:
                extra = " ell2=%d r=%d kernel=%s" % (mt["ell2"], mt["r"], _structure(mt["kernel"]))
            out.append("  %s   L = %s   ell=%d h=%d%s" % (mt["equation"], _fmt_l(mt["lpoly"]), mt["ell"], mt["class_number"], extra))
        for grp in res["lpoly_groups"]:
            out.append("  L = %s: %d matches" % (_fmt_l(grp["lpoly"]), grp["count"]))
        out.append("note: %s" % res["note"])
    return "\n".join(out) + "\n"


def _e(v):
    return str(v) if not isinstance(v, list) else "[" + ",".join(map(str, v)) + "]"


def _structure(ds):
    return " x ".join("Z/%d" % d for d in ds) if ds else "trivial"


# -- entry point ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="drinfeld-elliptic", description="Elliptic points of GL2(A) for function fields over finite fields.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, curve=True):
        if curve:
            p.add_argument("--curve", required=True, help="curve file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--no-cache", action="store_true", help="ignore and do not write the result cache")

    common(sub.add_parser("lpoly", help="L-polynomial, class number, RH report"))
    common(sub.add_parser("ell", help="ell, ell2 and r"))
    common(sub.add_parser("kernel", help="norm-map kernel structure"))
    p = sub.add_parser("points", help="elliptic points by orbit")
    common(p)
    p.add_argument("--deg-bound", type=int, default=3)
    p = sub.add_parser("stabilizer", help="stabilizer of one elliptic point")
    common(p)
    p.add_argument("--s", required=True, help="JSON [a, b] for s = a + b y")
    p.add_argument("--t", required=True, help="JSON [a, b] for t = a + b y")
    common(sub.add_parser("census", help="isolated vertices and free-product shape"))
    p = sub.add_parser("scan", help="sweep a family of curves")
    common(p, curve=False)
    p.add_argument("--scan-q", required=True, help="comma-separated field sizes")
    p.add_argument("--scan-genus", type=int, default=1)
    p.add_argument("--predicate", default="all", help="all | ell:N | ell_eq_ell2 | cl0_structure:d1,d2,... | cl0_exponent2")
    p.add_argument("--monic", action="store_true", help="only monic f")
    return ap


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    cache = None if args.no_cache else ResultCache()
    try:
        if args.command == "scan":
            key = "scan|%s|%d|%s|%s" % (args.scan_q, args.scan_genus, args.predicate, args.monic)
            chash = hashlib.sha256(key.encode()).hexdigest()
            res = cache.get(chash, key) if cache else None
            if res is None:
                res = cmd_scan(args)
                if cache:
                    cache.put(chash, key, res)
            res = dict(res, curve_hash=None)
        else:
            try:
                text = Path(args.curve).read_text(encoding="utf-8")
            except OSError as exc:
                raise CurveFileError("cannot read %s: %s" % (args.curve, exc.strerror)) from None
            spec = parse_curve_file(text)
            chash = curve_hash(spec)
            extra = ""
            if args.command == "points":
                extra = "|%d" % args.deg_bound
            elif args.command == "stabilizer":
                extra = "|%s|%s" % (args.s, args.t)
            key = args.command + extra
            res = cache.get(chash, key) if cache else None
            if res is None:
                curve = validate(spec)
                res = COMMANDS[args.command](curve, args)
                res["equation"] = curve.equation()
                if cache:
                    cache.put(chash, key, res)
            res = dict(res, curve_hash=chash)
    except DeltaParityError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (CurveFileError, CurveError, ValueError, ArithmeticError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    if args.json:
        stdout.write(to_json(res))
    else:
        stdout.write(render_table(args.command, res))
    return 0


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
