"""Experiment harness comparing limit-based indicators with integral transitions.

Every catalog pair carries closed-form ground truth.  Rows *assert* only
against that ground truth; whether the limit value and the integral
transition agree is *reported* as a flag, because for fast denominators
(q = 1) calculus puts the transition at sigma - 1 rather than sigma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import GrowthError, ParseError
from .indicators import (
    GridSpec,
    default_inverse_grid,
    inverse_form_ratios,
    order_ratios,
    summarize,
    type_ratios,
    default_order_grid,
    default_type_grid,
)
from .integralrep import DELTA, default_classify_grid, transition
from .literals import parse_scale, scale_literal
from .models import ExpPower, FactoredRational, Polynomial
from .scales import (
    DerivedCharacteristic,
    DerivedMaxMod,
    IteratedScale,
    SinLogScale,
    exp_scale,
)

IDENTITY_TOL = 1e-12
INDICATORS = ("rho", "lambda", "sigma", "sigma_bar", "tau", "tau_bar")


@dataclass(frozen=True)
class GroundTruth:
    rho: Optional[float] = None
    lam: Optional[float] = None
    sigma: Optional[float] = None
    sigma_bar: Optional[float] = None
    tau: Optional[float] = None
    tau_bar: Optional[float] = None
    k_star_type: Optional[float] = None
    k_star_weak: Optional[float] = None
    note: str = ""

    def get(self, name: str) -> Optional[float]:
        return self.lam if name == "lambda" else getattr(self, name)


@dataclass(frozen=True)
class CatalogPair:
    name: str
    alpha: object
    beta: object
    p: int
    q: int
    ground_truth: Optional[GroundTruth] = None
    description: str = ""
    order_grid: Optional[GridSpec] = None
    type_grid: Optional[GridSpec] = None
    inverse_grid: Optional[GridSpec] = None
    classify_grid: Optional[GridSpec] = None

    @property
    def irregular(self) -> bool:
        return isinstance(self.alpha, SinLogScale) or isinstance(self.beta, SinLogScale)

    def grids(self):
        return (
            self.order_grid or default_order_grid(self.q, self.alpha, self.beta),
            self.type_grid or default_type_grid(self.q, self.alpha, self.beta),
            self.inverse_grid or default_inverse_grid(self.q, self.alpha, self.beta),
            self.classify_grid
            or (GridSpec(1, 1.0, 0.0625, 1024) if self.irregular else default_classify_grid()),
        )


def standard_catalog() -> list[CatalogPair]:
    e = exp_scale()
    char_z = DerivedCharacteristic(Polynomial((0, 1)))
    return [
        CatalogPair(
            "identity", e, e, 1, 1,
            GroundTruth(1, 1, 1, 1, 1, 1, 0, 0,
                        "alpha^-1 beta(r) = r; integrand e^(-k r)"),
            "alpha = beta = exp",
        ),
        CatalogPair(
            "exp-sq", e, IteratedScale(1, 0, 2.0, 3.0), 1, 1,
            GroundTruth(2, 2, 3, 3, 3, 3, 2, 2,
                        "alpha^-1 beta(r) = 3 r^2; integrand exp((2 - k) r^2)"),
            "exp vs exp(3 x^2)",
        ),
        CatalogPair(
            "poly-power", e, IteratedScale(1, 0, 3.0, 1.0), 2, 2,
            GroundTruth(1, 1, 3, 3, 3, 3, 3, 3,
                        "alpha^-1 beta(r) = r^3; integrand r^(2 - k)"),
            "exp vs exp(x^3) at (2,2)",
        ),
        CatalogPair(
            "exp-gap", e, IteratedScale(2, 0, 1.0, 2.0), 2, 1,
            GroundTruth(1, 1, 2, 2, 2, 2, 1, 1,
                        "alpha^-1 beta(r) = e^(2r); integrand e^((1 - k) r), so k* = sigma - 1"),
            "exp vs exp(exp(2x)) at (2,1)",
        ),
        CatalogPair(
            "sinlog", e, SinLogScale(), 1, 1,
            GroundTruth(1, 1, 3, 1, 1, 3, 2, 2,
                        "alpha^-1 beta(r) = r (2 + sin log r); integrand exp(r (1 + sin log r - k))"),
            "exp vs exp(x (2 + sin log x))",
        ),
        CatalogPair(
            "maxmod-exp-sq", e, DerivedMaxMod(ExpPower(1.0, 2)), 1, 1,
            GroundTruth(2, 2, 1, 1, 1, 1, 0, 0,
                        "M(r) = e^(r^2); alpha^-1 M(r) = r^2; integrand e^(-k r^2)"),
            "exp vs M of exp(z^2)",
        ),
        CatalogPair(
            "charac-exp",
            DerivedCharacteristic(ExpPower(1.0, 1)),
            DerivedCharacteristic(ExpPower(1.0, 2)),
            1, 1,
            GroundTruth(2, 2, 1, 1, 1, 1, 0, 0,
                        "T(r, e^z) = r/pi, T(r, e^(z^2)) = r^2/pi; alpha^-1 beta(r) = r^2"),
            "T of exp(z) vs T of exp(z^2)",
            order_grid=GridSpec(1, 2.0, 0.5, 64),
            inverse_grid=GridSpec(1, 2.0, 0.5, 64),
        ),
        CatalogPair(
            "charac-rational",
            char_z,
            DerivedCharacteristic(FactoredRational((), (1.0, 3.0), 1.0)),
            1, 1,
            GroundTruth(2, 2, 1 / 3, 1 / 3, 1 / 3, 1 / 3, -2 / 3, -2 / 3,
                        "T(r, z) = log r, T(r, 1/((z-1)(z-3))) = 2 log r - log 3 for r > 4; "
                        "alpha^-1 beta(r) = r^2 / 3"),
            "T of z vs T of 1/((z-1)(z-3))",
            order_grid=GridSpec(1, 4.0, 4.5, 64),
            inverse_grid=GridSpec(0, 4.0, 10.0, 64),
            classify_grid=GridSpec(1, 2.0, 0.25, 128),
        ),
    ]


@dataclass
class SuiteConfig:
    pairs: Optional[tuple] = None  # None selects the full standard catalog
    extra_pairs: list = field(default_factory=list)
    tol_regular: float = 1e-2
    tol_sinlog: float = 5e-2
    tol_transition: float = 0.05
    k_halfwidth: float = 2.5

    @classmethod
    def from_mapping(cls, values: dict) -> "SuiteConfig":
        cfg = cls()
        for key, raw in values.items():
            raw = raw.strip()
            try:
                if key == "pairs":
                    cfg.pairs = tuple(s.strip() for s in raw.split(",") if s.strip())
                elif key in ("tol_regular", "tol_sinlog", "tol_transition", "k_halfwidth"):
                    setattr(cfg, key, float(raw))
                elif key.startswith("pair."):
                    cfg.extra_pairs.append(_parse_pair(key[5:], raw))
            except ValueError as exc:
                raise ParseError(f"bad value for {key}: {raw!r}") from exc
        return cfg

    def selected(self) -> list[CatalogPair]:
        catalog = standard_catalog()
        if self.pairs is not None:
            by_name = {pair.name: pair for pair in catalog}
            unknown = [n for n in self.pairs if n not in by_name]
            if unknown:
                raise ParseError(f"unknown catalog pairs {unknown}")
            catalog = [by_name[n] for n in self.pairs]
        return catalog + list(self.extra_pairs)


def _parse_pair(name: str, raw: str) -> CatalogPair:
    parts = [s.strip() for s in raw.split("|")]
    if len(parts) != 4:
        raise ParseError(f"pair.{name} needs 'alpha | beta | p | q'")
    try:
        p, q = int(parts[2]), int(parts[3])
    except ValueError as exc:
        raise ParseError(f"pair.{name}: p and q must be integers") from exc
    return CatalogPair(name, parse_scale(parts[0]), parse_scale(parts[1]), p, q)


# --- checks ------------------------------------------------------------------


class _PairRun:
    """Shared, lazily computed sequences for one pair."""

    def __init__(self, pair: CatalogPair):
        self.pair = pair
        self.order_grid, self.type_grid, self.inverse_grid, self.classify_grid = pair.grids()
        self._order = None
        self._types: dict[float, tuple] = {}
        self._inverse: dict[float, tuple] = {}
        self._transitions: dict[tuple, object] = {}

    def order(self):
        if self._order is None:
            pr = self.pair
            ratios = order_ratios(pr.alpha, pr.beta, pr.p, pr.q, self.order_grid)
            ts = self.order_grid.params()
            self._order = (summarize("rho", ratios, ts), summarize("lambda", ratios, ts))
        return self._order

    def exponents(self) -> tuple[float, float]:
        gt = self.pair.ground_truth
        if gt is not None and gt.rho is not None and gt.lam is not None:
            return float(gt.rho), float(gt.lam)
        rho, lam = self.order()
        return rho.value, lam.value

    def types(self, exponent: float):
        if exponent not in self._types:
            pr = self.pair
            ratios = type_ratios(pr.alpha, pr.beta, pr.p, pr.q, exponent, self.type_grid)
            self._types[exponent] = (ratios, self.type_grid.params())
        return self._types[exponent]

    def inverse(self, exponent: float):
        if exponent not in self._inverse:
            pr = self.pair
            ratios = inverse_form_ratios(pr.alpha, pr.beta, pr.p, pr.q, exponent, self.inverse_grid)
            self._inverse[exponent] = (ratios, self.inverse_grid.params())
        return self._inverse[exponent]

    def transition(self, A: float, center: float, halfwidth: float, tol: float):
        key = (A, center, halfwidth, tol)
        if key not in self._transitions:
            pr = self.pair
            self._transitions[key] = transition(
                pr.alpha, pr.beta, pr.p, pr.q, A,
                (center - halfwidth, center + halfwidth), tol, self.classify_grid,
            )
        return self._transitions[key]


def _row_tol(pair: CatalogPair, cfg: SuiteConfig) -> float:
    return cfg.tol_sinlog if pair.irregular else cfg.tol_regular


def _bracket_record(tr, tol: float) -> dict:
    return {
        "k_lo": tr.k_lo,
        "k_hi": tr.k_hi,
        # the classifier cannot resolve below its dead band of width 2*DELTA
        "limited": tr.width > max(tol, 2 * DELTA) + 1e-9,
        "table": [[k, v.verdict.value] for k, v in tr.verdict_table],
    }


def _near(value: float, tr, tol: float) -> bool:
    return tr.k_lo - tol <= value <= tr.k_hi + tol


def check_equivalence_type(run: _PairRun, cfg: SuiteConfig) -> dict:
    """sigma and sigma_bar against the critical exponent of the rho-integral."""
    rho, _ = run.exponents()
    ratios, ts = run.types(rho)
    sigma, sigma_bar = summarize("sigma", ratios, ts), summarize("sigma_bar", ratios, ts)
    tr = run.transition(rho, sigma.value, cfg.k_halfwidth, cfg.tol_transition)
    return {
        "sigma": sigma.value,
        "sigma_bar": sigma_bar.value,
        "A": rho,
        "bracket": _bracket_record(tr, cfg.tol_transition),
        "agreement": _near(sigma.value, tr, cfg.tol_transition),
        "lower_agreement": _near(sigma_bar.value, tr, cfg.tol_transition),
    }


def check_equivalence_weak(run: _PairRun, cfg: SuiteConfig) -> dict:
    """tau and tau_bar against the critical exponent of the lambda-integral."""
    _, lam = run.exponents()
    ratios, ts = run.types(lam)
    tau, tau_bar = summarize("tau", ratios, ts), summarize("tau_bar", ratios, ts)
    tr = run.transition(lam, tau_bar.value, cfg.k_halfwidth, cfg.tol_transition)
    return {
        "tau": tau.value,
        "tau_bar": tau_bar.value,
        "A": lam,
        "bracket": _bracket_record(tr, cfg.tol_transition),
        "agreement": _near(tau.value, tr, cfg.tol_transition),
        "upper_agreement": _near(tau_bar.value, tr, cfg.tol_transition),
    }


def check_reparametrization(run: _PairRun, cfg: SuiteConfig) -> dict:
    """The four R = beta(r) forms against their direct counterparts."""
    rho, lam = run.exponents()
    tol = _row_tol(run.pair, cfg)
    forms = {}
    for name, exponent, kind in (
        ("sigma", rho, "sigma"),
        ("sigma_bar", rho, "sigma_bar"),
        ("tau_bar", lam, "tau_bar"),
        ("tau", lam, "tau"),
    ):
        inv_ratios, inv_ts = run.inverse(exponent)
        dir_ratios, dir_ts = run.types(exponent)
        inv = summarize(kind, inv_ratios, inv_ts).value
        direct = summarize(kind, dir_ratios, dir_ts).value
        forms[name] = {"inverse": inv, "direct": direct, "delta": abs(inv - direct)}
    return {"forms": forms, "pass": all(f["delta"] <= tol for f in forms.values())}


def check_regular_growth(run: _PairRun, cfg: SuiteConfig) -> dict:
    """Expression identities when rho = lambda, and the four-way coincidence flag."""
    rho, lam = run.exponents()
    tol = _row_tol(run.pair, cfg)
    rho_hat, lam_hat = run.order()
    regular = rho == lam or abs(rho_hat.value - lam_hat.value) <= tol
    if not regular:
        return {"regular": False, "identity": None, "full_coincidence": None}
    r1, t1 = run.types(rho)
    r2, t2 = run.types(rho)  # same exponent, so the same grid sequence
    sigma = summarize("sigma", r1, t1)
    sigma_bar = summarize("sigma_bar", r1, t1)
    tau = summarize("tau", r2, t2)
    tau_bar = summarize("tau_bar", r2, t2)
    gap_upper = max(abs(a - b) for a, b in zip(sigma.tail_values, tau_bar.tail_values))
    gap_lower = max(abs(a - b) for a, b in zip(sigma_bar.tail_values, tau.tail_values))
    values = (sigma.value, sigma_bar.value, tau.value, tau_bar.value)
    return {
        "regular": True,
        "identity": gap_upper < IDENTITY_TOL and gap_lower < IDENTITY_TOL,
        "full_coincidence": max(values) - min(values) <= tol,
    }


def run_pair(pair: CatalogPair, cfg: SuiteConfig) -> dict:
    row: dict = {
        "pair": pair.name,
        "alpha": scale_literal(pair.alpha),
        "beta": scale_literal(pair.beta),
        "p": pair.p,
        "q": pair.q,
        "status": "ok",
    }
    try:
        run = _PairRun(pair)
        rho, lam = run.order()
        type_row = check_equivalence_type(run, cfg)
        weak_row = check_equivalence_weak(run, cfg)
        estimates = {
            "rho": rho.value,
            "lambda": lam.value,
            "sigma": type_row["sigma"],
            "sigma_bar": type_row["sigma_bar"],
            "tau": weak_row["tau"],
            "tau_bar": weak_row["tau_bar"],
        }
        reparam = check_reparametrization(run, cfg)
        regular = check_regular_growth(run, cfg)
    except (GrowthError, ArithmeticError, ValueError) as exc:
        row["status"] = "errored"
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row

    row["estimates"] = estimates
    row["inverse_forms"] = reparam["forms"]
    row["transitions"] = {"type": type_row["bracket"], "weak": weak_row["bracket"]}
    row["transitions"]["type"]["A"] = type_row["A"]
    row["transitions"]["weak"]["A"] = weak_row["A"]
    row["flags"] = {
        "type_agreement": type_row["agreement"],
        "lower_type_agreement": type_row["lower_agreement"],
        "weak_agreement": weak_row["agreement"],
        "upper_weak_agreement": weak_row["upper_agreement"],
        "reparametrization": reparam["pass"],
        "regular_growth": regular["regular"],
        "expression_identity": regular["identity"],
        "full_coincidence": regular["full_coincidence"],
    }

    gt = pair.ground_truth
    tol = _row_tol(pair, cfg)
    gates = [reparam["pass"], regular["identity"] is not False]
    deltas = {}
    if gt is not None:
        row["ground_truth"] = {
            name: gt.get(name) for name in INDICATORS + ("k_star_type", "k_star_weak")
        }
        row["ground_truth_note"] = gt.note
        for name in INDICATORS:
            if gt.get(name) is not None:
                deltas[name] = abs(estimates[name] - gt.get(name))
                gates.append(deltas[name] <= tol)
        for name, tr_key in (("k_star_type", "type"), ("k_star_weak", "weak")):
            target = getattr(gt, name)
            if target is not None:
                br = row["transitions"][tr_key]
                mid = 0.5 * (br["k_lo"] + br["k_hi"])
                deltas[name] = abs(mid - target)
                gates.append(br["k_lo"] - cfg.tol_transition <= target <= br["k_hi"] + cfg.tol_transition)
    row["deltas"] = deltas
    row["tolerance"] = tol
    if not all(gates):
        row["status"] = "fail"
    elif row["transitions"]["type"]["limited"] or row["transitions"]["weak"]["limited"]:
        row["status"] = "inconclusive"
    return row


def run_suite(cfg: SuiteConfig = None) -> dict:
    """Run every check over the configured pairs; row errors never abort."""
    cfg = cfg or SuiteConfig()
    rows = [run_pair(pair, cfg) for pair in cfg.selected()]
    counts = {status: sum(r["status"] == status for r in rows)
              for status in ("ok", "fail", "inconclusive", "errored")}
    summary = {"rows": len(rows), **counts}
    summary["type_agreements"] = sum(
        bool(r.get("flags", {}).get("type_agreement")) for r in rows
    )
    summary["weak_agreements"] = sum(
        bool(r.get("flags", {}).get("weak_agreement")) for r in rows
    )
    return {"rows": rows, "summary": summary}


def gates_pass(report: dict) -> bool:
    """True when no row failed or errored."""
    s = report["summary"]
    return s["fail"] == 0 and s["errored"] == 0
