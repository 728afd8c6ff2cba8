"""Command-line interface: ``compute`` and ``inspect`` with JSON, LaTeX and plain output."""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import re
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .exact_arith import (
    DivisionByZero,
    ParameterDegeneracy,
    Scalar,
    format_scalar,
    parse_scalar,
)
from .heckman_opdam import ho_interval, ho_triangular_data
from .hessenberg import MonomialExpansion, RegularityViolation, TriangularData, solve_recurrence
from .macdonald import (
    SLOT_SYMBOL,
    general_t_triangular_data,
    ho_via_macdonald,
    mac_triangular_data,
    normalize_choice,
    q_offset,
)
from .oracles import (
    NonIntegerParams,
    NotInvariant,
    apply_hypergeometric_operator,
    apply_macdonald_operator,
    check_eigenfunction,
    ho_weight,
    macdonald_weight,
    numerator_element,
    orthogonal_to_monomials,
)
from .roots import (
    ArityMismatch,
    RankGuardExceeded,
    RootSystemSpec,
    dominant_interval,
    format_weight,
    is_dominant,
    load_root_data,
    parse_weight,
    stabilizer_order,
    weyl_orbit,
)

log = logging.getLogger("rootpoly")

CONSTRUCTIONS = ("ho", "mac", "mac-general", "ho-via-mac")
FORMATS = ("json", "latex", "plain")
CACHE_ENV = "ROOTPOLY_CACHE_DIR"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT = 2
EXIT_DEGENERATE = 3
EXIT_GUARD = 4


class JobError(ValueError):
    pass


# ---------------------------------------------------------------------------
# job description

@dataclass
class JobSpec:
    family: str
    rank: int
    weight: tuple
    construction: str = "ho"
    params: dict = field(default_factory=dict)
    choice: str | None = None
    fmt: str = "json"
    prune_cn: bool = False
    full_gcd: bool = False
    check: bool = False
    root_data: str | None = None

    @property
    def spec(self):
        if self.root_data:
            return load_root_data(self.root_data)
        return RootSystemSpec(self.family, self.rank)

    def allowed_params(self) -> tuple:
        spec = self.spec
        if self.construction == "ho":
            return tuple(spec.parameter_slots)
        if self.construction == "ho-via-mac":
            return ("g",)
        if self.construction == "mac":
            return ("q", "t")
        return ("q",) + tuple(SLOT_SYMBOL[s] for s in spec.parameter_slots)

    def validate(self) -> None:
        if self.construction not in CONSTRUCTIONS:
            raise JobError(f"unknown construction {self.construction!r}")
        spec = self.spec
        if len(self.weight) != spec.dim:
            raise ArityMismatch(f"weight has {len(self.weight)} coordinates, {spec} needs {spec.dim}")
        if not is_dominant(spec, self.weight):
            raise JobError(f"{format_weight(self.weight)} is not a dominant weight of {spec}")
        extra = set(self.params) - set(self.allowed_params())
        if extra:
            raise JobError(f"parameters {sorted(extra)} do not apply; allowed: {list(self.allowed_params())}")
        if self.construction.startswith("mac") or self.construction == "ho-via-mac":
            if not isinstance(spec, RootSystemSpec) or not spec.reduced:
                raise JobError("Macdonald constructions need a reduced classical family")
        if self.construction.startswith("mac"):
            self.choice = normalize_choice(spec, self.choice)
        if self.root_data and self.construction != "ho":
            raise JobError("external root data is supported for the ho construction only")

    def bindings(self) -> dict:
        return {k: parse_scalar(v) for k, v in self.params.items()}

    def fingerprint(self) -> str:
        key = {
            "family": self.family, "rank": self.rank, "weight": list(self.weight),
            "construction": self.construction, "params": sorted(self.params.items()),
            "choice": self.choice, "prune_cn": self.prune_cn, "full_gcd": self.full_gcd,
            "root_data": Path(self.root_data).read_text() if self.root_data else None,
            "version": __version__,
        }
        blob = json.dumps(key, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:32]


@dataclass
class ResultRecord:
    fingerprint: str
    leading: list
    coefficients: list  # [(mu, canonical string)]
    provenance: dict
    timing: float

    def expansion(self) -> MonomialExpansion:
        return MonomialExpansion(tuple(self.leading),
                                 {tuple(mu): parse_scalar(v) for mu, v in self.coefficients})


# ---------------------------------------------------------------------------
# engine dispatch

def triangular_data(job: JobSpec) -> TriangularData:
    spec = job.spec
    b = job.bindings()
    if job.construction == "ho":
        return ho_triangular_data(spec, b, job.weight, prune_cn=job.prune_cn,
                                  generic=bool(job.root_data))
    if job.construction == "mac":
        return mac_triangular_data(spec, job.choice, b, job.weight)
    if job.construction == "mac-general":
        return general_t_triangular_data(spec, b, job.weight, job.choice)
    raise JobError("ho-via-mac has no standalone matrix view; use ho or mac")


def engine_path(job: JobSpec) -> str:
    if job.construction == "ho":
        return "ho/generic-root-strings" if job.root_data else "ho/classical-tables"
    if job.construction == "ho-via-mac":
        return "mac-character-rows/ho-eigenvalues"
    if job.construction == "mac":
        return f"mac-character-rows/{job.choice}"
    return f"mac-general-t/{job.choice}"


def run_engine(job: JobSpec) -> MonomialExpansion:
    if job.construction == "ho-via-mac":
        g = job.bindings().get("g")
        return ho_via_macdonald(job.spec, g, job.weight, full_gcd=job.full_gcd)
    return solve_recurrence(triangular_data(job), full_gcd=job.full_gcd)


def cache_dir(flag: str | None) -> Path:
    if flag:
        return Path(flag)
    if os.environ.get(CACHE_ENV):
        return Path(os.environ[CACHE_ENV])
    base = os.environ.get("XDG_CACHE_HOME") or str(Path.home() / ".cache")
    return Path(base) / "rootpoly"


def load_cached(path: Path) -> ResultRecord | None:
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
        rec = ResultRecord(data["fingerprint"], data["leading"],
                           [(list(mu), v) for mu, v in data["coefficients"]],
                           dict(data["provenance"]), float(data["timing"]))
        rec.expansion()  # must re-parse cleanly
        return rec
    except (ValueError, KeyError, TypeError) as exc:
        log.warning("ignoring corrupt cache entry %s (%s)", path, exc)
        return None


def store_cached(path: Path, rec: ResultRecord) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(asdict(rec), sort_keys=True))
    tmp.replace(path)


def cmd_compute(job: JobSpec, *, cache: Path | None = None) -> ResultRecord:
    """Compute (or reload) the expansion described by ``job``."""
    job.validate()
    fp = job.fingerprint()
    path = cache / f"{fp}.json" if cache else None
    if path is not None:
        rec = load_cached(path)
        if rec is not None and rec.fingerprint == fp:
            rec.provenance = dict(rec.provenance, source="cache")
            return rec
    start = time.perf_counter()
    exp = run_engine(job)
    elapsed = time.perf_counter() - start
    coeffs = [(list(mu), format_scalar(exp[mu])) for mu in reversed(list(exp.coeffs))]
    rec = ResultRecord(fp, list(exp.leading), coeffs,
                       {"engine": engine_path(job), "version": __version__, "source": "engine"}, elapsed)
    if path is not None:
        try:
            store_cached(path, rec)
        except OSError as exc:
            log.warning("could not write cache entry %s (%s)", path, exc)
    return rec


# ---------------------------------------------------------------------------
# checks

def _q_power(value: Scalar, limit: int = 8) -> int | None:
    """k if value == q^k for an integer 0 <= k <= limit, else None."""
    q = Scalar.symbol("q")
    return next((k for k in range(limit + 1) if value == q ** k), None)


def _symbolic(job: JobSpec) -> JobSpec:
    return JobSpec(job.family, job.rank, job.weight, job.construction, {}, job.choice,
                   job.fmt, job.prune_cn, job.full_gcd, False, job.root_data)


def _macdonald_gvals(job: JobSpec, spec: RootSystemSpec, b: dict) -> dict | None:
    """Integer exponents g_alpha when every t_alpha is bound to q^g and q is free."""
    if "q" in b:
        return None
    general = job.construction == "mac-general"
    out = {}
    for slot in spec.parameter_slots:
        name = SLOT_SYMBOL[slot] if general else "t"
        k = _q_power(b[name]) if name in b else None
        if k is None:
            return None
        out[slot] = k
    return out


def run_checks(job: JobSpec) -> dict:
    """Eigenfunction oracle (symbolic or as bound) and orthogonality oracle (integer parameters)."""
    spec = job.spec
    if not isinstance(spec, RootSystemSpec):
        return {"eigenfunction": "skipped", "orthogonality": "skipped"}
    b = job.bindings()
    lam = tuple(job.weight)
    checks = {}
    if job.construction in ("ho", "ho-via-mac"):
        if job.construction == "ho":
            params = dict(b)
        else:
            g = b.get("g", Scalar.symbol("g"))
            params = {s: g for s in spec.parameter_slots}
        td = ho_triangular_data(spec, params, lam, prune_cn=job.prune_cn)
        ok = check_eigenfunction(spec, td, lambda f: apply_hypergeometric_operator(spec, params, f))
        checks["eigenfunction"] = "pass" if ok else "fail"
        try:
            weight = ho_weight(spec, {s: params.get(s, Scalar.symbol(s)) for s in spec.parameter_slots})
        except NonIntegerParams:
            weight = None
        bindings = None
    else:
        general = job.construction == "mac-general"
        off = q_offset(spec, job.choice, lam)
        td = triangular_data(_symbolic(job))
        ok = check_eigenfunction(spec, td, lambda f: apply_macdonald_operator(
            spec, job.choice, {}, f, offset=off, general=general, check=False))
        checks["eigenfunction"] = "pass" if ok else "fail"
        gvals = _macdonald_gvals(job, spec, b)
        weight = macdonald_weight(spec, gvals) if gvals is not None else None
        bindings = b
    if weight is None:
        checks["orthogonality"] = "skipped"
    else:
        p = numerator_element(spec, td, bindings)
        lower = [mu for mu in td.interval if mu != lam]
        checks["orthogonality"] = "pass" if orthogonal_to_monomials(spec, p, lower, weight) else "fail"
    return checks


# ---------------------------------------------------------------------------
# rendering

def latex_scalar(s: Scalar) -> str:
    def poly(text: str) -> str:
        text = re.sub(r"\^\(([^)]*)\)", r"^{\1}", text)
        return text.replace("*", " ")
    body = format_scalar(s)
    if body.startswith("(") and ")/(" in body:
        num, den = body[1:-1].split(")/(", 1)
        return rf"\frac{{{poly(num)}}}{{{poly(den)}}}"
    return poly(body)


def latex_expansion(exp: MonomialExpansion) -> str:
    name = format_weight(exp.leading)
    parts = []
    for mu in sorted(exp.coeffs, reverse=True):
        c = exp[mu]
        if c.is_zero():
            continue
        m = f"m_{{{format_weight(mu)}}}"
        if c == 1:
            parts.append(m)
        else:
            text = latex_scalar(c)
            if not text.startswith(r"\frac") and (" + " in text or " - " in text):
                text = f"\\left({text}\\right)"
            parts.append(f"{text}\\, {m}")
    return f"p_{{{name}}} = " + " + ".join(parts)


def record_json(job: JobSpec, rec: ResultRecord, checks: dict) -> dict:
    return {
        "root_system": {"family": job.family, "rank": job.rank},
        "lambda": list(job.weight),
        "coefficients": [{"mu": list(mu), "value": v} for mu, v in rec.coefficients],
        "checks": checks,
        "provenance": rec.provenance,
        "fingerprint": rec.fingerprint,
        "timing": rec.timing,
    }


def render_record(job: JobSpec, rec: ResultRecord, checks: dict) -> str:
    if job.fmt == "json":
        return json.dumps(record_json(job, rec, checks), indent=2)
    exp = rec.expansion()
    if job.fmt == "latex":
        return latex_expansion(exp)
    lines = [f"p[{format_weight(exp.leading)}]  ({job.family}{job.rank}, {job.construction})"]
    lines += [f"  m[{format_weight(mu)}]: {v}" for mu, v in rec.coefficients]
    lines += [f"  check {k}: {v}" for k, v in checks.items()]
    return "\n".join(lines)


def eps_label(terms, eps_coeff: int, lam) -> str:
    """Render sum_k sign_k (eps_kappa_k - eps_lambda) as eps differences."""
    pieces = []
    if eps_coeff:
        pieces.append((eps_coeff, lam))
    pieces += [(sign, kappa) for sign, kappa in terms]
    out = ""
    for c, w in pieces:
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        sep = ("-" if c < 0 else "") if not out else (" - " if c < 0 else " + ")
        out += f"{sep}{mag}eps[{format_weight(w)}]"
    return out or "0"


def matrix_view(job: JobSpec) -> dict:
    td = triangular_data(job)
    lam = td.leading
    rows = []
    labels = []
    for j, row in enumerate(td.matrix()):
        rows.append([format_scalar(v) for v in row])
        if td.labels:
            lab = []
            for k in range(td.n - 1):
                if k < j:
                    terms = td.labels.get((j, k), ())
                    lab.append(eps_label(terms, -sum(sg for sg, _ in terms), lam))
                elif k == j:
                    lab.append(eps_label([(1, td.interval[j])], -1, lam))
                else:
                    lab.append("0")
            labels.append(lab)
    gaps = td.gaps()
    view = {
        "interval": [list(mu) for mu in td.interval],
        "rows": rows,
        "normalization_factors": [format_scalar(g) for g in gaps],
    }
    if labels:
        view["eps_rows"] = labels
    return view


def cmd_inspect(kind: str, job: JobSpec):
    spec = job.spec
    w = tuple(job.weight)
    if kind == "interval":
        if job.construction == "ho" and job.prune_cn:
            return [list(mu) for mu in ho_interval(spec, job.bindings(), w, True)]
        return [list(mu) for mu in dominant_interval(spec, w)]
    if kind == "orbit":
        return sorted((list(x) for x in weyl_orbit(spec, w)), reverse=True)
    if kind == "stabilizer":
        return stabilizer_order(spec, w)
    if kind == "matrix":
        job.validate()
        return matrix_view(job)
    raise JobError(f"unknown inspect kind {kind!r}")


def render_inspect(kind: str, value, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({kind: value}, indent=2)
    if kind == "stabilizer":
        return str(value)
    if kind in ("interval", "orbit"):
        return "\n".join(format_weight(mu) for mu in value)
    lines = ["interval: " + "; ".join(format_weight(mu) for mu in value["interval"])]
    for j, row in enumerate(value["rows"]):
        lines.append(f"row {j}: " + " | ".join(row))
    for j, row in enumerate(value.get("eps_rows", [])):
        lines.append(f"eps row {j}: " + " | ".join(row))
    lines.append("normalization: " + " * ".join(f"({g})" for g in value["normalization_factors"]))
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# argument parsing

def _param(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE, got {text!r}")
    name, value = text.split("=", 1)
    return name.strip(), value.strip()


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", type=str.upper, choices=("A", "B", "C", "D", "BC"), default="A")
    p.add_argument("--rank", type=int, default=None,
                   help="number of coordinates (for A: the N of gl_N)")
    p.add_argument("--weight", required=True, help="comma-separated coordinates, e.g. 2,1,0 or 3/2,1/2,1/2")
    p.add_argument("--construction", choices=CONSTRUCTIONS, default="ho")
    p.add_argument("--param", "-p", type=_param, action="append", default=[], metavar="NAME=VALUE",
                   help="bind a parameter (g, g_s, g_l, q, t, t_s, t_l) to a rational or expression")
    p.add_argument("--choice", default=None, help="minuscule coweight: omega1, omega<r>, or sum (D)")
    p.add_argument("--prune-cn", action="store_true", help="C-type interval pruning (BC with g_s=0)")
    p.add_argument("--full-gcd", action="store_true", help="cancel polynomial gcds in every coefficient")
    p.add_argument("--root-data", default=None, help="JSON file with external root data (ho only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootpoly", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    c = sub.add_parser("compute", help="monomial expansion of p_lambda")
    _common(c)
    c.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    c.add_argument("--check", action="store_true", help="run the operator and orthogonality oracles")
    c.add_argument("--cache-dir", default=None, help=f"cache directory (default ${CACHE_ENV})")
    c.add_argument("--no-cache", action="store_true")
    i = sub.add_parser("inspect", help="intervals, orbits, stabilizers and assembled matrices")
    i.add_argument("kind", choices=("interval", "orbit", "stabilizer", "matrix"))
    _common(i)
    i.add_argument("--format", dest="fmt", choices=("json", "plain"), default="plain")
    return parser


def job_from_args(args) -> JobSpec:
    weight = parse_weight(args.weight)
    rank = args.rank if args.rank is not None else len(weight)
    return JobSpec(args.family, rank, weight, args.construction, dict(args.param), args.choice,
                   args.fmt, args.prune_cn, args.full_gcd, getattr(args, "check", False), args.root_data)


def _error(kind: str, exc: Exception, code: int) -> int:
    print(json.dumps({"error": {"type": kind, "message": str(exc)}}))
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        job = job_from_args(args)
        if args.command == "inspect":
            print(render_inspect(args.kind, cmd_inspect(args.kind, job), job.fmt))
            return EXIT_OK
        cache = None if args.no_cache else cache_dir(args.cache_dir)
        rec = cmd_compute(job, cache=cache)
        log.info("%s in %.3fs", rec.provenance.get("source"), rec.timing)
        checks = run_checks(job) if job.check else {}
        print(render_record(job, rec, checks))
        return EXIT_CHECK_FAILED if any(v == "fail" for v in checks.values()) else EXIT_OK
    except (RegularityViolation, ParameterDegeneracy, DivisionByZero) as exc:
        return _error(type(exc).__name__, exc, EXIT_DEGENERATE)
    except RankGuardExceeded as exc:
        return _error(type(exc).__name__, exc, EXIT_GUARD)
    except (ArityMismatch, JobError, NotInvariant, NonIntegerParams, ValueError, OSError) as exc:
        return _error(type(exc).__name__, exc, EXIT_INPUT)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
