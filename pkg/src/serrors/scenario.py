"""Scenario files: the inputs of one test, and the record it produces.

A scenario is a JSON object such as::

    {
      "schema_version": 1,
      "name": "coin, 9 heads in 12",
      "family": "binomial",
      "data": {"successes": 9, "trials": 12},
      "null": {"type": "point_mass", "value": 0.5},
      "alternative": {"type": "uniform", "lo": 0.5, "hi": 1.0},
      "error_weights": {"a": 1, "b": 1}
    }

``data`` is ``{"mean", "n", "sigma"}`` for the normal family,
``{"successes", "trials"}`` for binomial counts and
``{"successes", "failures"}`` for negative-binomial counts.
``error_weights`` is one of ``{"a", "b"}``, ``{"ratio"}`` or
``{"elicit": {"prior_null", "loss_false_accept", "loss_false_reject"}}``.
An optional ``hypotheses`` object with ``null`` and ``alternative`` regions
(kind/lo/hi) is checked for disjointness and against the weight supports.
"""

import json
import math
import time

import jsonschema

from .decision import ErrorWeights, decide, elicit_ratio
from .errors import DomainError, ScenarioError
from .evidence import (
    log_evidence_binomial,
    log_evidence_normal,
    pvalue_binomial_tail,
    pvalue_negative_binomial_tail,
    pvalue_two_sided_normal,
)
from .hypotheses import CountSummary, HypothesisPair, NormalSummary, Region
from .weights import PointMass, weight_from_dict

__all__ = ["SCHEMA_VERSION", "SCENARIO_SCHEMA", "Scenario", "load_scenario", "validate_scenario", "run_scenario"]

SCHEMA_VERSION = 1

_NUMBER = {"type": "number"}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}
_COUNT = {"type": "integer", "minimum": 0}

_WEIGHT_FIELDS = {
    "point_mass": ["value"],
    "dirac_at_null": ["value"],
    "two_point_mass": ["center", "delta"],
    "uniform": ["lo", "hi"],
    "beta": ["a", "b"],
    "jeffreys": [],
    "normal": ["mean", "variance"],
    "improper": [],
}
_WEIGHT = {
    "type": "object",
    "required": ["type"],
    "properties": {"type": {"enum": sorted(_WEIGHT_FIELDS)}},
    "allOf": [
        {"if": {"properties": {"type": {"const": kind}}},
         "then": {"required": fields,
                  "properties": {f: _NUMBER for f in fields} | {"kind": {"type": "string"}}}}
        for kind, fields in _WEIGHT_FIELDS.items()
    ],
}
_REGION = {
    "type": "object",
    "required": ["kind", "lo"],
    "properties": {
        "kind": {"enum": ["point", "interval", "not_point", "not_interval"]},
        "lo": _NUMBER,
        "hi": _NUMBER,
    },
    "additionalProperties": False,
}

SCENARIO_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "family", "data", "null", "alternative"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "name": {"type": "string"},
        "family": {"enum": ["normal", "binomial", "negative_binomial"]},
        "data": {"type": "object"},
        "null": _WEIGHT,
        "alternative": _WEIGHT,
        "hypotheses": {
            "type": "object",
            "required": ["null", "alternative"],
            "properties": {"null": _REGION, "alternative": _REGION},
            "additionalProperties": False,
        },
        "error_weights": {
            "oneOf": [
                {"type": "object", "required": ["a", "b"], "additionalProperties": False,
                 "properties": {"a": _POSITIVE, "b": _POSITIVE}},
                {"type": "object", "required": ["ratio"], "additionalProperties": False,
                 "properties": {"ratio": _POSITIVE}},
                {"type": "object", "required": ["elicit"], "additionalProperties": False,
                 "properties": {"elicit": {
                     "type": "object",
                     "required": ["prior_null", "loss_false_accept", "loss_false_reject"],
                     "additionalProperties": False,
                     "properties": {"prior_null": _NUMBER, "loss_false_accept": _POSITIVE,
                                    "loss_false_reject": _POSITIVE}}}},
            ]
        },
    },
    "additionalProperties": False,
    "allOf": [
        {"if": {"properties": {"family": {"const": "normal"}}},
         "then": {"properties": {"data": {
             "required": ["mean", "n", "sigma"], "additionalProperties": False,
             "properties": {"mean": _NUMBER, "n": {"type": "integer", "minimum": 1}, "sigma": _POSITIVE}}}}},
        {"if": {"properties": {"family": {"const": "binomial"}}},
         "then": {"properties": {"data": {
             "required": ["successes", "trials"], "additionalProperties": False,
             "properties": {"successes": _COUNT, "trials": _COUNT}}}}},
        {"if": {"properties": {"family": {"const": "negative_binomial"}}},
         "then": {"properties": {"data": {
             "required": ["successes", "failures"], "additionalProperties": False,
             "properties": {"successes": _COUNT, "failures": {"type": "integer", "minimum": 1}}}}}},
    ],
}

_VALIDATOR = jsonschema.Draft202012Validator(SCENARIO_SCHEMA)


def _path(error):
    return "/".join(str(p) for p in error.absolute_path) or "<root>"


def validate_scenario(doc):
    """Raise :class:`ScenarioError` listing every schema violation in ``doc``."""
    problems = sorted((_path(e), e.message) for e in _VALIDATOR.iter_errors(doc))
    if problems:
        raise ScenarioError(problems)


class Scenario:
    """A validated scenario with its domain objects built."""

    def __init__(self, doc):
        validate_scenario(doc)
        self.doc = doc
        self.family = doc["family"]
        self.name = doc.get("name", "")
        d = doc["data"]
        if self.family == "normal":
            self.data = NormalSummary(float(d["mean"]), int(d["n"]), float(d["sigma"]))
        elif self.family == "binomial":
            self.data = CountSummary(int(d["successes"]), int(d["trials"]))
        else:
            self.data = CountSummary(int(d["successes"]), int(d["successes"]) + int(d["failures"]))
        self.null = weight_from_dict(doc["null"])
        self.alternative = weight_from_dict(doc["alternative"])
        for w in (self.null, self.alternative):
            if not w.proper:
                raise DomainError(f"weight {w!r} is improper; its evidence is defined only up to a constant")
        self.weights = _error_weights(doc.get("error_weights", {"a": 1.0, "b": 1.0}))
        self.hypotheses = None
        if "hypotheses" in doc:
            h = doc["hypotheses"]
            self.hypotheses = HypothesisPair(self.family, Region(**h["null"]), Region(**h["alternative"]))
            _check_support(self.null, self.hypotheses.null, "null")
            _check_support(self.alternative, self.hypotheses.alternative, "alternative")

    def with_weights(self, weights: ErrorWeights):
        doc = dict(self.doc, error_weights={"a": weights.a, "b": weights.b})
        return Scenario(doc)


def _error_weights(spec):
    if "ratio" in spec:
        return ErrorWeights.from_ratio(float(spec["ratio"]))
    if "elicit" in spec:
        e = spec["elicit"]
        return ErrorWeights.from_ratio(elicit_ratio(e["prior_null"], e["loss_false_accept"], e["loss_false_reject"]))
    return ErrorWeights(float(spec["a"]), float(spec["b"]))


def _check_support(weight, region, which):
    lo, hi = weight.support()
    if region.kind in ("point", "interval") and not (region.lo <= lo and hi <= region.hi):
        raise DomainError(f"{which} weight support [{lo}, {hi}] is not inside {region.to_dict()}")
    if region.kind == "not_point" and weight.discrete and any(a == region.lo for a in weight.atoms()):
        raise DomainError(f"{which} weight puts mass on the excluded point {region.lo}")


def load_scenario(path):
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioError([("<file>", f"not valid JSON: {exc}")]) from None
    return Scenario(doc)


def _log_evidences(scenario, constant):
    if scenario.family == "normal":
        e0 = log_evidence_normal(scenario.data, scenario.null, 0)
        e1 = log_evidence_normal(scenario.data, scenario.alternative, 1)
    else:
        e0 = log_evidence_binomial(scenario.data, scenario.null, constant, 0)
        e1 = log_evidence_binomial(scenario.data, scenario.alternative, constant, 1)
    return e0.log_value, e1.log_value


def _pvalues(scenario):
    null = scenario.null
    if not isinstance(null, PointMass):
        return {}
    if scenario.family == "normal":
        return {"two_sided_normal": pvalue_two_sided_normal(scenario.data, null.value)}
    if not 0.0 < null.value < 1.0:
        return {}
    s = scenario.data.successes
    if scenario.family == "binomial":
        return {"binomial_upper_tail": pvalue_binomial_tail(s, scenario.data.trials, null.value)}
    return {"negative_binomial_upper_tail": pvalue_negative_binomial_tail(s, scenario.data.failures, null.value)}


def run_scenario(scenario: Scenario):
    """Evidences, ratio, decision, grade and p-values as a plain dict.

    The ratio that drives the decision is formed without the sampling-plan
    constant, so binomial and negative-binomial readings of the same counts
    decide identically.  The reported evidences include the constant.
    """
    start = time.perf_counter()
    constant = {"binomial": "binomial", "negative_binomial": "negative_binomial"}.get(scenario.family)
    log_e0, log_e1 = _log_evidences(scenario, constant)
    if scenario.family == "normal":
        log_ratio = log_e0 - log_e1
    else:
        k0, k1 = _log_evidences(scenario, None)
        log_ratio = k0 - k1
    if math.isinf(log_e0) and math.isinf(log_e1):
        raise DomainError("both evidences are zero; the ratio is undefined")
    decision = decide(log_ratio, scenario.weights)
    return {
        "schema_version": SCHEMA_VERSION,
        "scenario": scenario.doc,
        "error_weights": {"a": scenario.weights.a, "b": scenario.weights.b, "ratio": scenario.weights.ratio},
        "log_evidence0": log_e0,
        "log_evidence1": log_e1,
        "log_ratio_01": log_ratio,
        "ratio_01": decision.ratio_01,
        "decision": decision.to_dict(),
        "pvalues": _pvalues(scenario),
        "timing": {"elapsed_s": time.perf_counter() - start},
    }
