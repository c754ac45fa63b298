"""Batch experiment runner.

Subcommands ``stein``, ``hiai-petz``, ``exponents`` and ``verify`` each write
one table of certificate rows (CSV or JSON) and exit non-zero iff a
certificate fails.  Output depends only on the configuration and seed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Callable, Iterable

import numpy as np

from .certificates import scalar_leq
from .errors import ConfigError, SteinLabError
from .exponents import DEFAULT_S_GRID, best_exponent, certify_theorem3, psi, psi_zero_slope_check
from .hypothesis import (
    beta_step_certificate,
    np_dominance_certificates,
    optimal_beta,
    pinching_exchange_certificate,
    stein_test,
)
from .measurements import (
    divergence_chain_certificate,
    hiai_petz_gap,
    log_monotonicity_certificate,
    monotonicity_certificate,
    pinched_pvm_equality,
    random_povm,
)
from .pinching import (
    convexity_certificate,
    commutant_trace_check,
    inverse_power_certificate,
    key_inequality_certificate,
    pinch,
    pinch_convexity_certificate,
    pinch_inequality,
    pinched_pair,
    random_pvm,
    schwarz_certificate,
)
from .spectral import DEFAULT_CAP, commutator_norm, eig_hermitian, matrix_function, operator_leq
from .states import (
    FAITHFULNESS_FLOOR,
    PRESETS,
    DensityOperator,
    StatePair,
    random_density,
    random_pair,
    preset_pair,
    relative_entropy,
)


EXIT_OK, EXIT_FAIL, EXIT_CONFIG = 0, 1, 2

CERT_COLUMNS = ["claim", "lhs", "rhs", "margin", "slack", "pass"]
COLUMNS = {
    "stein": ["pair", "n", "s", "a", "psi", "v", "alpha", "beta", *CERT_COLUMNS],
    "hiai-petz": ["pair", "n", "v", "D", "per_copy_pinched", "gap", "bound", *CERT_COLUMNS],
    "exponents": ["pair", "n", "s", "a", "psi", "D", "s_star", *CERT_COLUMNS],
    "verify": ["category", "instance", "n", "dim", *CERT_COLUMNS],
}


@dataclass
class ExperimentConfig:
    command: str
    pair: str = "commuting-qubit"
    n_min: int = 1
    n_max: int = 6
    a: str = "auto:0.05"
    s_grid: tuple[float, ...] = DEFAULT_S_GRID
    epsilon: float | None = None
    seed: int = 0
    out: str | None = None
    format: str = "csv"
    cluster_tol: float | None = None
    slack: float = 1e-8
    faithfulness_floor: float = FAITHFULNESS_FLOOR
    cap: int = DEFAULT_CAP
    batch_size: int = 10
    workers: int = 1
    inject_fault: bool = False

    def validate(self):
        if self.n_min < 1:
            raise ConfigError(f"--n-min: must be >= 1, got {self.n_min}")
        if self.n_min > self.n_max:
            raise ConfigError(f"--n-min/--n-max: n_min={self.n_min} exceeds n_max={self.n_max}")
        for name in ("slack", "faithfulness_floor"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"--{name.replace('_', '-')}: must be positive")
        if self.cluster_tol is not None and not self.cluster_tol > 0:
            raise ConfigError("--cluster-tol: must be positive")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"--format: expected csv or json, got {self.format!r}")
        if any(not 0 <= s <= 1 for s in self.s_grid):
            raise ConfigError("--s-grid: values must lie in [0, 1]")
        if self.epsilon is not None and not 0 < self.epsilon < 1:
            raise ConfigError("--epsilon: must lie in (0, 1)")
        if self.batch_size < 1:
            raise ConfigError("--batch-size: must be >= 1")
        if self.workers < 1:
            raise ConfigError("--workers: must be >= 1")

    def echo(self) -> dict[str, Any]:
        """Configuration as recorded in JSON output; the output path is left out."""
        d = asdict(self)
        d.pop("out")
        d["s_grid"] = list(d["s_grid"])
        return d


# -- pair sources -----------------------------------------------------------------


def _parse_matrix(raw, dim: int, field_name: str) -> np.ndarray:
    entries = raw
    if isinstance(raw, list) and len(raw) == dim and all(isinstance(r, list) and len(r) == dim and all(isinstance(x, list) for x in r) for r in raw):
        entries = [x for row in raw for x in row]
    if not isinstance(entries, list) or len(entries) != dim * dim:
        raise ConfigError(f"field {field_name!r}: expected {dim}x{dim} = {dim * dim} [re, im] pairs in row-major order")
    out = np.empty(dim * dim, dtype=np.complex128)
    for k, pair in enumerate(entries):
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, (int, float)) for x in pair)):
            raise ConfigError(f"field {field_name!r}: entry {k} (row {k // dim}, col {k % dim}) is not a [re, im] pair: {pair!r}")
        out[k] = complex(pair[0], pair[1])
    return out.reshape(dim, dim)


def load_pair_file(path: str | Path, faithfulness_floor: float = FAITHFULNESS_FLOOR) -> StatePair:
    """Read ``{"dim": d, "rho": [...], "sigma": [...]}`` with row-major ``[re, im]`` entries."""
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ConfigError(f"{path}: top level must be an object with fields dim, rho, sigma")
    for key in ("dim", "rho", "sigma"):
        if key not in doc:
            raise ConfigError(f"{path}: missing field {key!r}")
    dim = doc["dim"]
    if not isinstance(dim, int) or dim < 1:
        raise ConfigError(f"{path}: field 'dim' must be a positive integer, got {dim!r}")
    mats = {}
    for key in ("rho", "sigma"):
        m = _parse_matrix(doc[key], dim, key)
        try:
            mats[key] = DensityOperator(m)
        except SteinLabError as exc:
            raise ConfigError(f"{path}: field {key!r}: {exc}") from None
    try:
        return StatePair(mats["rho"], mats["sigma"], faithfulness_floor, name=path.name)
    except SteinLabError as exc:
        raise ConfigError(f"{path}: {exc}") from None


def resolve_pair(cfg: ExperimentConfig) -> StatePair:
    spec = cfg.pair
    if spec in PRESETS:
        return preset_pair(spec)
    if spec == "random" or spec.startswith("random:"):
        seed = cfg.seed if spec == "random" else int(spec.split(":", 1)[1])
        return random_pair(seed, faithfulness_floor=cfg.faithfulness_floor)
    if Path(spec).exists():
        return load_pair_file(spec, cfg.faithfulness_floor)
    raise ConfigError(f"--pair: {spec!r} is neither a preset ({', '.join(PRESETS)}), 'random[:seed]', nor a file")


def resolve_a(spec: str, pair: StatePair) -> float:
    if spec == "auto" or spec.startswith("auto:"):
        delta = 0.05 if spec == "auto" else float(spec.split(":", 1)[1])
        return relative_entropy(pair.rho, pair.sigma) - delta
    try:
        return float(spec)
    except ValueError:
        raise ConfigError(f"--a: expected a real number or auto:<delta>, got {spec!r}") from None


def _check_cap(cfg: ExperimentConfig, d: int, n_max: int):
    if d**n_max > cfg.cap:
        raise ConfigError(f"--n-max: dimension {d}^{n_max} = {d**n_max} exceeds cap {cfg.cap} (raise --cap)")


# -- row helpers ---------------------------------------------------------------------


def _cert_row(cert, **context) -> dict[str, Any]:
    row = dict(context)
    row.update(cert.as_row())
    return row


def _pmap(fn: Callable, items: list, workers: int) -> list:
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# -- subcommands ---------------------------------------------------------------------


def run_stein(cfg: ExperimentConfig, pair: StatePair) -> list[dict]:
    a = resolve_a(cfg.a, pair)
    _check_cap(cfg, pair.d, cfg.n_max)

    def one(n):
        pp = pinched_pair(pair, n, cfg.cluster_tol, cfg.cap)
        reports = certify_theorem3(pair, n, a, cfg.s_grid, cfg.cluster_tol, cfg.cap, pinched=pp)
        test = stein_test(pair, n, a, cfg.cluster_tol, pinched=pp)
        rows = []
        ctx = dict(pair=pair.name, n=n, a=a, v=pp.v)
        for r in reports:
            ctx_s = dict(ctx, s=r.s, psi=r.psi, alpha=r.measured_alpha, beta=r.measured_beta)
            rows.append(_cert_row(r.alpha_certificate, **ctx_s))
        base = dict(ctx, s=None, psi=None, alpha=reports[0].measured_alpha, beta=reports[0].measured_beta)
        rows.append(_cert_row(reports[0].beta_certificate, **base))
        rows.append(_cert_row(beta_step_certificate(pp, a, test, cfg.slack), **base))
        rows.append(_cert_row(pinching_exchange_certificate(pp, test), **base))
        for c in divergence_chain_certificate(pair, n, test, cfg.cap, pinched=pp):
            rows.append(_cert_row(c, **base))
        if cfg.epsilon is not None:
            opt = optimal_beta(pair, n, cfg.epsilon, cfg.cluster_tol, cfg.cap)
            rows.append(_cert_row(scalar_leq(f"alpha(S) <= eps => beta*(eps) <= beta(S) [eps={cfg.epsilon:g}]", opt.beta, reports[0].measured_beta if reports[0].measured_alpha <= cfg.epsilon else math.inf, 1e-9), **base))
        return rows

    return [row for rows in _pmap(one, list(range(cfg.n_min, cfg.n_max + 1)), cfg.workers) for row in rows]


def run_hiai_petz(cfg: ExperimentConfig, pair: StatePair) -> list[dict]:
    _check_cap(cfg, pair.d, cfg.n_max)

    def one(n):
        pp = pinched_pair(pair, n, cfg.cluster_tol, cfg.cap)
        rep = hiai_petz_gap(pair, n, pinched=pp)
        ctx = dict(pair=pair.name, n=n, v=pp.v, D=rep.relative_entropy, per_copy_pinched=rep.per_copy_pinched, gap=rep.gap, bound=rep.bound)
        rows = [_cert_row(c, **ctx) for c in rep.certificates()]
        rows.append(_cert_row(pinched_pvm_equality(pair, n, cfg.cluster_tol, cfg.cap, pinched=pp), **ctx))
        rows.append(_cert_row(scalar_leq(f"v(sigma_n) <= (n+1)^d [n={n}]", pp.v, pp.type_bound, 0.0), **ctx))
        return rows

    return [row for rows in _pmap(one, list(range(cfg.n_min, cfg.n_max + 1)), cfg.workers) for row in rows]


def run_exponents(cfg: ExperimentConfig, pair: StatePair) -> list[dict]:
    a = resolve_a(cfg.a, pair)
    _check_cap(cfg, pair.d, cfg.n_max)
    d_val = relative_entropy(pair.rho, pair.sigma)
    s_star, g_star = best_exponent(pair, a)
    ctx = dict(pair=pair.name, n=None, a=a, D=d_val, s_star=s_star)
    rows = []
    slope = psi_zero_slope_check(pair)
    for c in slope.certificates:
        rows.append(_cert_row(c, **ctx, s=0.0, psi=slope.psi0))
    for s in cfg.s_grid:
        p = psi(pair, s)
        rows.append(_cert_row(scalar_leq(f"g(s) <= g(s*) [s={s:g}]", -a * s + p, g_star, 1e-12), **ctx, s=s, psi=p))
    if a < d_val:
        rows.append(_cert_row(scalar_leq("a < D => max_s g(s) > 0", 0.0, g_star, 0.0), **ctx, s=s_star, psi=psi(pair, s_star)))

    def one(n):
        rep = certify_theorem3(pair, n, a, [s_star], cfg.cluster_tol, cfg.cap)[0]
        return [_cert_row(rep.alpha_certificate, **dict(ctx, n=n, s=s_star, psi=rep.psi))]

    for r in _pmap(one, list(range(cfg.n_min, cfg.n_max + 1)), cfg.workers):
        rows.extend(r)
    return rows


# -- verify ---------------------------------------------------------------------------


def _random_hermitian(rng, dim):
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (x + x.conj().T) / 2


def _random_pd(rng, dim, floor=0.05):
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return x @ x.conj().T + floor * np.eye(dim)


def _verify_instance(category: str, k: int, cfg: ExperimentConfig) -> list[tuple[dict, Any]]:
    """All certificates for one seeded instance of one category."""
    seed = int(np.random.SeedSequence([cfg.seed, k, sum(map(ord, category))]).generate_state(1)[0])
    rng = np.random.default_rng(seed)
    ctx = dict(category=category, instance=k, n=None, dim=None)
    n_hi = max(cfg.n_min, min(cfg.n_max, 4))
    out = []

    if category in ("key_inequality", "inverse_power", "log_monotonicity"):
        n = cfg.n_min + k % (n_hi - cfg.n_min + 1)
        if category != "key_inequality":
            n = min(n, 3)
        pair = random_pair(seed, faithfulness_floor=cfg.faithfulness_floor)
        pp = pinched_pair(pair, n, cfg.cluster_tol, cfg.cap)
        ctx.update(n=n, dim=pp.rho_n.dim)
        if category == "key_inequality":
            rep = key_inequality_certificate(pair, n, pinched=pp)
            out.append((ctx, rep.certificate))
            out.append((ctx, scalar_leq(f"v(sigma_n) <= (n+1)^d [n={n}]", rep.v, rep.type_bound, 0.0)))
        elif category == "inverse_power":
            for s in (0.25, 0.5, 1.0):
                out.append((ctx, inverse_power_certificate(pp, s)))
        else:
            out.append((ctx, log_monotonicity_certificate(pp)))
    elif category in ("pinch_properties", "pinch_inequality", "convexity_route", "schwarz", "commutant_trace"):
        dim = int(rng.integers(2, 9))
        m = random_pvm(dim, seed)
        rho = random_density(dim, seed + 1)
        ctx.update(dim=dim)
        if category == "pinch_properties":
            pb = pinch(m, rho.op)
            out.append((ctx, scalar_leq("|Tr E(rho) - Tr rho| <= 1e-10", abs(np.trace(pb).real - 1.0), 1e-10, 0.0)))
            out.append((ctx, operator_leq(np.zeros_like(pb), pb, 1e-10, "E(rho) >= 0", "0", "E(rho)")))
            out.append((ctx, scalar_leq("||E(E(rho)) - E(rho)|| <= 1e-10", float(np.abs(pinch(m, pb) - pb).max()), 1e-10, 0.0)))
            worst = max(commutator_norm(p, pb) for p in m.projections)
            out.append((ctx, scalar_leq("max_i ||[M_i, E(rho)]|| <= 1e-10", worst, 1e-10, 0.0)))
        elif category == "pinch_inequality":
            out.append((ctx, pinch_inequality(m, rho)))
        elif category == "convexity_route":
            out.append((ctx, pinch_convexity_certificate(m, rho)))
        elif category == "schwarz":
            phi = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            psi_v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
            out.append((ctx, schwarz_certificate(m, phi / np.linalg.norm(phi), psi_v / np.linalg.norm(psi_v))))
        else:
            b = _random_hermitian(rng, dim)
            coeffs = rng.standard_normal(len(m.projections))
            c = sum(w * p for w, p in zip(coeffs, m.projections))
            out.append((ctx, commutant_trace_check(m, b, c)))
    elif category == "convexity":
        dim = int(rng.integers(1, 7))
        a = _random_pd(rng, dim, 0.0)
        x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        y = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        ctx.update(dim=dim)
        out.append((ctx, convexity_certificate(a, x, y, float(rng.uniform()))))
    elif category == "operator_monotone":
        dim = int(rng.integers(2, 7))
        a = _random_pd(rng, dim)
        b = a + _random_pd(rng, dim, 0.0)
        sa, sb = eig_hermitian(a), eig_hermitian(b)
        ctx.update(dim=dim)
        for s in (0.25, 0.5, 1.0):
            out.append((ctx, operator_leq(matrix_function(sb, lambda t: t**-s), matrix_function(sa, lambda t: t**-s), 1e-8, f"B^-s <= A^-s [s={s:g}]", "B^-s", "A^-s")))
        out.append((ctx, operator_leq(matrix_function(sa, np.log), matrix_function(sb, np.log), 1e-8, "log A <= log B", "log A", "log B")))
    elif category == "np_dominance":
        n = 1 + k % 2
        eps = (0.05, 0.1, 0.25, 0.5)[k % 4]
        pair = random_pair(seed, faithfulness_floor=cfg.faithfulness_floor)
        ctx.update(n=n, dim=pair.d**n)
        for c in np_dominance_certificates(pair, n, eps, 20, seed, cap=cfg.cap):
            out.append((ctx, c))
    elif category in ("test_validity", "divergence_chain", "monotonicity"):
        pair = random_pair(seed, faithfulness_floor=cfg.faithfulness_floor)
        n = cfg.n_min + k % (n_hi - cfg.n_min + 1)
        ctx.update(n=n, dim=pair.d**n)
        if category == "monotonicity":
            out.append((ctx, monotonicity_certificate(pair, n, random_povm(pair.d**n, seed), cfg.cap)))
        else:
            d_val = relative_entropy(pair.rho, pair.sigma)
            pp = pinched_pair(pair, n, cfg.cluster_tol, cfg.cap)
            test = stein_test(pair, n, d_val - 0.05, cfg.cluster_tol, pinched=pp)
            if category == "test_validity":
                out.append((ctx, test.lower))
                out.append((ctx, test.upper))
            else:
                out.extend((ctx, c) for c in divergence_chain_certificate(pair, n, test, cfg.cap, pinched=pp))
    else:
        raise ValueError(f"unknown verify category {category!r}")
    return out


VERIFY_CATEGORIES = (
    "key_inequality",
    "pinch_properties",
    "pinch_inequality",
    "convexity",
    "schwarz",
    "convexity_route",
    "commutant_trace",
    "operator_monotone",
    "inverse_power",
    "log_monotonicity",
    "np_dominance",
    "test_validity",
    "divergence_chain",
    "monotonicity",
)


def _fault_rows() -> list[tuple[dict, Any]]:
    """A deliberately corrupted 'test' with eigenvalue 1.5."""
    bad = np.diag([1.5, 0.0]).astype(np.complex128)
    ctx = dict(category="test_validity", instance=-1, n=1, dim=2)
    return [
        (ctx, operator_leq(np.zeros_like(bad), bad, 1e-10, "0 <= A (injected)", "0", "A")),
        (ctx, operator_leq(bad, np.eye(2), 1e-10, "A <= I (injected)", "A", "I")),
    ]


def run_verify(cfg: ExperimentConfig, pair: StatePair | None = None) -> list[dict]:
    tasks = [(cat, k) for cat in VERIFY_CATEGORIES for k in range(cfg.batch_size)]
    results = _pmap(lambda t: _verify_instance(t[0], t[1], cfg), tasks, cfg.workers)
    pairs = [item for res in results for item in res]
    if cfg.inject_fault:
        pairs.extend(_fault_rows())
    return [_cert_row(cert, **ctx) for ctx, cert in pairs]


RUNNERS: dict[str, Callable[[ExperimentConfig, StatePair], list[dict]]] = {
    "stein": run_stein,
    "hiai-petz": run_hiai_petz,
    "exponents": run_exponents,
    "verify": run_verify,
}


# -- output ---------------------------------------------------------------------------


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return f"{float(x):.17g}"
    return str(x)


def _jsonable(x):
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def render(rows: list[dict], columns: list[str], fmt: str, cfg: ExperimentConfig) -> str:
    if fmt == "json":
        doc = {
            "command": cfg.command,
            "config": cfg.echo(),
            "columns": columns,
            "rows": [{c: _jsonable(r.get(c)) for c in columns} for r in rows],
        }
        return json.dumps(doc, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt(r.get(c)) for c in columns])
    return buf.getvalue()


def execute(cfg: ExperimentConfig) -> tuple[int, list[dict]]:
    """Validate, run and write; returns the exit status and the rows."""
    cfg.validate()
    pair = None if cfg.command == "verify" else resolve_pair(cfg)
    rows = RUNNERS[cfg.command](cfg, pair)
    text = render(rows, COLUMNS[cfg.command], cfg.format, cfg)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    failures = sum(1 for r in rows if not r["pass"])
    for r in rows:
        if not r["pass"]:
            print(f"FAILED {r['claim']} (margin {_fmt(r['margin'])}, slack {_fmt(r['slack'])})", file=sys.stderr)
    skipped = sum(1 for r in rows if isinstance(r["margin"], float) and math.isnan(r["margin"]))
    print(f"{cfg.command}: {len(rows)} certificates, {len(rows) - failures - skipped} passed, {skipped} skipped, {failures} failed", file=sys.stderr)
    return (EXIT_FAIL if failures else EXIT_OK), rows


def _parse_grid(text: str) -> tuple[float, ...]:
    try:
        if ":" in text:
            start, stop, step = (float(x) for x in text.split(":"))
            count = int(round((stop - start) / step)) + 1
            return tuple(round(start + k * step, 12) for k in range(count))
        return tuple(float(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'start:stop:step' or a comma list, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steinlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("stein", "error probabilities of the pinched threshold test against their exponential bounds"),
        ("hiai-petz", "per-copy divergence of the pinched state against D and the (d/n) log(n+1) bound"),
        ("exponents", "psi(s), its slope at 0 and the optimal exponent"),
        ("verify", "seeded batches of every operator-inequality certificate"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--pair", default="commuting-qubit", help="preset name, random[:seed], or JSON file")
        p.add_argument("--n-min", type=int, default=1)
        p.add_argument("--n-max", type=int, default=4 if name == "verify" else 6)
        p.add_argument("--a", default="auto:0.05", help="real threshold exponent or auto:<delta> for D - delta")
        p.add_argument("--s-grid", type=_parse_grid, default=DEFAULT_S_GRID)
        p.add_argument("--epsilon", type=float, default=None)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--cluster-tol", type=float, default=None)
        p.add_argument("--slack", type=float, default=1e-8)
        p.add_argument("--faithfulness-floor", type=float, default=FAITHFULNESS_FLOOR)
        p.add_argument("--cap", type=int, default=DEFAULT_CAP)
        p.add_argument("--batch-size", type=int, default=10)
        p.add_argument("--workers", type=int, default=1)
        p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return parser


def config_from_args(ns: argparse.Namespace) -> ExperimentConfig:
    return ExperimentConfig(
        command=ns.command,
        pair=ns.pair,
        n_min=ns.n_min,
        n_max=ns.n_max,
        a=ns.a,
        s_grid=tuple(ns.s_grid),
        epsilon=ns.epsilon,
        seed=ns.seed,
        out=ns.out,
        format=ns.format,
        cluster_tol=ns.cluster_tol,
        slack=ns.slack,
        faithfulness_floor=ns.faithfulness_floor,
        cap=ns.cap,
        batch_size=ns.batch_size,
        workers=ns.workers,
        inject_fault=ns.inject_fault,
    )


def main(argv: Iterable[str] | None = None) -> int:
    ns = build_parser().parse_args(None if argv is None else list(argv))
    try:
        status, _ = execute(config_from_args(ns))
    except ConfigError as exc:
        print(f"steinlab: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return status


if __name__ == "__main__":
    sys.exit(main())
