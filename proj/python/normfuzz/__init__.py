"""Defeasible care-robot rules with fuzzy dressing and distress conditions."""

import json

from . import _normfuzz
from ._normfuzz import (
    ConfigError,
    InvalidCorners,
    NegativeAge,
    NoRuleFired,
    NormfuzzError,
    ParseError,
    RuleBaseError,
    UnknownItem,
    assess_distress,
    check,
    default_rule_base_json,
    eval_age,
    eval_trapezoid,
    is_dressed,
    possibility_of_union,
    pretty_print,
    run_cli,
)

__all__ = [
    "ConfigError",
    "InvalidCorners",
    "NegativeAge",
    "NoRuleFired",
    "NormfuzzError",
    "ParseError",
    "RuleBaseError",
    "UnknownItem",
    "assess_distress",
    "check",
    "default_rule_base_json",
    "eval_age",
    "eval_trapezoid",
    "evaluate",
    "is_dressed",
    "possibility_of_union",
    "pretty_print",
    "run_cli",
]


def evaluate(rules_source, scenarios, profile=None, trace=False):
    """Decides each scenario and returns one dict per scenario.

    `scenarios` is a JSON string, a dict, or a list of dicts; `profile` is a
    JSON string or a dict.
    """
    if not isinstance(scenarios, str):
        scenarios = json.dumps(scenarios)
    if profile is not None and not isinstance(profile, str):
        profile = json.dumps(profile)
    lines = _normfuzz.evaluate(rules_source, scenarios, profile, trace)
    return [json.loads(line) for line in lines]
