"""Published example values recomputed next to their printed counterparts.

Every target returns a :class:`ReproTable`; each row carries the printed
value, the computed value, the tolerance it is held to and a pass flag.
"""

from dataclasses import dataclass, field
import math

from .decision import GRADE_BOUNDARIES, grade_from_log_ratio
from .design import (
    EXAMPLE1,
    design_simple_normal,
    error_profile_degroot,
    error_profile_fixed_alpha,
)
from .evidence import (
    indifference_posterior_odds_binomial,
    log_evidence_binomial,
    log_evidence_ratio_freeman,
    pvalue_binomial_tail,
    pvalue_negative_binomial_tail,
    pvalue_two_sided_binomial,
)
from .hypotheses import CountSummary
from .scenario import Scenario, run_scenario
from .weights import BetaWeight, PointMass

__all__ = ["TARGETS", "ReproTable", "reproduce", "coin_scenario", "COMPARISON_COLUMNS", "ESP_DATA", "FREEMAN_ROWS"]

COMPARISON_COLUMNS = ("quantity", "published", "computed", "relative difference", "tolerance", "pass")

ESP_DATA = CountSummary(52_263_471, 104_490_000)
# (patients, preferring A, preferring B, printed ratio).  The second study is
# printed as 115:86, which does not add up to 200; 115:85 reproduces 1.85.
FREEMAN_ROWS = (
    (20, 15, 5, 0.42),
    (200, 115, 85, 1.85),
    (2000, 1046, 954, 6.75),
    (2_000_000, 1_001_445, 998_555, 219.66),
)
TABLE1 = ((0.0002, 2.15), (0.0003, 169.0), (0.0004, 397877.0), (0.0005, 51369319698.0))


@dataclass
class ReproTable:
    target: str
    title: str
    columns: tuple
    rows: list = field(default_factory=list)

    @property
    def passed(self):
        return all(row["pass"] for row in self.rows)

    def to_dict(self):
        return {"target": self.target, "title": self.title, "columns": list(self.columns),
                "rows": self.rows, "passed": self.passed}


def _rel(published, computed):
    if isinstance(published, (bool, str)) or not isinstance(computed, (int, float)):
        return None
    if published == 0:
        return None
    return (computed - published) / abs(published)


def _compare(quantity, published, computed, mode, tol=None):
    """One comparison row; ``mode`` is abs, rel, log10 or exact."""
    if mode == "abs":
        ok, tol_text = abs(computed - published) <= tol, f"abs {tol:g}"
    elif mode == "rel":
        ok, tol_text = abs(computed - published) <= tol * abs(published), f"rel {tol:g}"
    elif mode == "log10":
        ok, tol_text = abs(math.log10(computed) - math.log10(published)) <= tol, f"log10 {tol:g}"
    elif mode == "exact":
        ok, tol_text = computed == published, "exact"
    else:
        raise ValueError(f"unknown comparison mode {mode!r}")
    return {"quantity": quantity, "published": published, "computed": computed,
            "relative difference": _rel(published, computed), "tolerance": tol_text, "pass": bool(ok)}


def example1():
    spec = EXAMPLE1
    res = design_simple_normal(spec)
    r = res.implicit_ratio
    fixed100 = error_profile_fixed_alpha(100, spec)
    fixed10 = error_profile_fixed_alpha(10, spec)
    dg20 = error_profile_degroot(20, spec, r)
    dg100 = error_profile_degroot(100, spec, r)
    t = ReproTable("example1", "Normal design, H0: theta=-1 vs H1: theta=1, sigma=3", COMPARISON_COLUMNS)
    t.rows += [
        _compare("n_real", 19.25, res.n_real, "abs", 0.01),
        _compare("n", 20, res.n, "exact"),
        _compare("beta at n=20", 0.091, res.beta_achieved, "abs", 0.001),
        _compare("rejection threshold on xbar", 0.1034, res.threshold, "abs", 0.0005),
        _compare("implicit b/a", 0.63, r, "abs", 0.005),
        _compare("fixed-alpha beta at n=100", 2.6e-7, fixed100.beta, "rel", 0.10),
        _compare("fixed-alpha alpha/beta at n=100", 195217.0, fixed100.alpha / fixed100.beta, "rel", 0.10),
        _compare("fixed-alpha beta at n=10", 0.32, fixed10.beta, "abs", 0.005),
        _compare("fixed-r alpha at n=100", 3.3e-4, dg100.alpha, "rel", 0.05),
        _compare("fixed-r alpha/beta at n=20", 0.55, dg20.alpha / dg20.beta, "abs", 0.01),
        _compare("fixed-r alpha/beta at n=100", 0.61, dg100.alpha / dg100.beta, "abs", 0.01),
    ]
    return t


def coin_scenario(family):
    """The 9-in-12 coin with H0: theta = 1/2 against theta ~ U(1/2, 1)."""
    data = {"successes": 9, "trials": 12} if family == "binomial" else {"successes": 9, "failures": 3}
    return Scenario({
        "schema_version": 1,
        "family": family,
        "data": data,
        "null": {"type": "point_mass", "value": 0.5},
        "alternative": {"type": "uniform", "lo": 0.5, "hi": 1.0},
        "error_weights": {"a": 1.0, "b": 1.0},
    })


def lindley_phillips():
    binom = run_scenario(coin_scenario("binomial"))
    negbin = run_scenario(coin_scenario("negative_binomial"))
    same = binom["decision"] == negbin["decision"]
    t = ReproTable("lindley-phillips", "9 heads and 3 tails under two stopping rules", COMPARISON_COLUMNS)
    t.rows += [
        _compare("binomial tail p-value", 0.0730, pvalue_binomial_tail(9, 12), "abs", 1e-4),
        _compare("negative binomial tail p-value", 0.0327, pvalue_negative_binomial_tail(9, 3), "abs", 1e-4),
        _compare("ratio of evidences", 0.366, binom["ratio_01"], "abs", 0.002),
        _compare("Jeffreys grade", "Mild Evidence against H0", binom["decision"]["label"], "exact"),
        _compare("decision identical under both likelihoods", True, same, "exact"),
    ]
    return t


def freeman():
    columns = (
        "Number of patients receiving A and B",
        "Number of patient preferring A:B",
        "Percentage preferring A",
        "two-sided P-value",
        "Ratio of Evidences",
        "published two-sided P-value",
        "published Ratio of Evidences",
        "relative difference",
        "tolerance",
        "pass",
    )
    t = ReproTable("freeman", "Preference studies, H0: theta=1/2 with Jeffreys weight", columns)
    for n, a, b, printed in FREEMAN_ROWS:
        ratio = math.exp(log_evidence_ratio_freeman(a, n))
        p = pvalue_two_sided_binomial(a, n)
        ok = abs(ratio - printed) <= 0.01 * printed and round(p, 2) == 0.04
        t.rows.append({
            columns[0]: n,
            columns[1]: f"{a}:{b}",
            columns[2]: round(100.0 * a / n, 2),
            columns[3]: p,
            columns[4]: ratio,
            columns[5]: 0.04,
            columns[6]: printed,
            columns[7]: (ratio - printed) / printed,
            columns[8]: "rel 0.01; p rounds to 0.04",
            columns[9]: ok,
        })
    return t


def esp():
    log_b = log_evidence_ratio_freeman(ESP_DATA.successes, ESP_DATA.trials)
    flat = (log_evidence_binomial(ESP_DATA, PointMass(0.5), None).log_value
            - log_evidence_binomial(ESP_DATA, BetaWeight(1.0, 1.0), None).log_value)
    t = ReproTable("esp", "N = 104,490,000 trials, S = 52,263,471 successes", COMPARISON_COLUMNS)
    t.rows += [
        _compare("ln B (Jeffreys weight)", 2.93, log_b, "abs", 0.02),
        _compare("B (Jeffreys weight)", 18.7, math.exp(log_b), "rel", 0.02),
        _compare("B (uniform weight)", 12.0, math.exp(flat), "rel", 0.05),
        _compare("two-sided p-value", 0.0003, pvalue_two_sided_binomial(ESP_DATA.successes, ESP_DATA.trials),
                 "rel", 0.10),
    ]
    return t


def esp_table1():
    columns = ("Δ", "r", "published r", "log10 difference", "tolerance", "pass")
    t = ReproTable("esp-table1", "Posterior odds of |theta - 1/2| < Δ for the ESP data", columns)
    for delta, printed in TABLE1:
        odds = indifference_posterior_odds_binomial(ESP_DATA, delta)
        diff = math.log10(odds) - math.log10(printed)
        t.rows.append({"Δ": delta, "r": odds, "published r": printed, "log10 difference": diff,
                       "tolerance": "log10 0.05", "pass": abs(diff) <= 0.05})
    return t


def jeffreys_table():
    columns = ("Grade", "r", "Evidence", "probe ratio", "computed grade", "computed label", "pass")
    edges = ("r >= 1", "1 > r > 10^-1/2", "10^-1/2 > r > 10^-1", "10^-1 > r > 10^-3/2",
             "10^-3/2 > r > 10^-2", "10^-2 > r")
    labels = ("Null Supported", "Mild Evidence against H0", "Substantial Evidence against H0",
              "Strong Evidence against H0", "Very Strong Evidence against H0", "Decisive Evidence against H0")
    # Probe each band at its geometric midpoint (the open-ended bands half a decade in).
    logs = [math.log10(b) for b in GRADE_BOUNDARIES]
    probes = [0.0] + [0.5 * (hi + lo) for hi, lo in zip(logs, logs[1:])] + [logs[-1] - 0.5]
    t = ReproTable("jeffreys-table", "Jeffreys grades of the evidence ratio", columns)
    for grade, edge, label, probe in zip((0, 1, 2, 4, 5, 6), edges, labels, probes):
        g = grade_from_log_ratio(probe * math.log(10.0))
        t.rows.append({"Grade": grade, "r": edge, "Evidence": label, "probe ratio": 10.0**probe,
                       "computed grade": g.grade, "computed label": g.label,
                       "pass": g.grade == grade and g.label == label})
    return t


TARGETS = {
    "example1": example1,
    "lindley-phillips": lindley_phillips,
    "freeman": freeman,
    "esp": esp,
    "esp-table1": esp_table1,
    "jeffreys-table": jeffreys_table,
}


def reproduce(target):
    try:
        build = TARGETS[target]
    except KeyError:
        raise ValueError(f"unknown target {target!r}; choose from {sorted(TARGETS)}") from None
    return build()
