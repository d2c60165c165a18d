"""The three appraisal rule bases: likelihood, undesirability and intensity of the global variable (Ig).

Rows are kept in the order of the published rule tables so exports diff cleanly against them.
"""

from typing import Literal

from avsociety.fuzzy.core import FuzzyInferenceSystem, FuzzyRule, IntensityScale, LinguisticVariable

DISTANCE_TOKENS = ("VLD", "LD", "MD", "HD", "VHD")
SPEED_TOKENS = ("VLS", "LS", "MS", "HS", "VHS")
LIKELIHOOD_TOKENS = ("VLLH", "LLH", "MLH", "HLH", "VHLH")

IMP_GOAL_TOKENS = ("VLImpG", "LImpG", "MImpG", "HImpG", "VHImpG")
ACH_GOAL_TOKENS = ("NAG", "LAG", "MAG", "HAG", "VHFAG")
UNDESIRABILITY_TOKENS = ("VLUD", "LUD", "MUD", "HUD", "VHUD")

SENSE_OF_REALITY_TOKENS = ("VLSOR", "LSOR", "MSOR", "HSOR", "VHSOR")
# Ordered by spatial distance, nearest first.
PROXIMITY_TOKENS = ("AboutTo", "GoingTo", "MChance", "LChance", "NChance")
IG_TOKENS = ("VLIG", "LIG", "MIG", "HIG", "VHIG")

LIKELIHOOD_RULES: tuple[tuple[str, str, str], ...] = (
    ("VHD", "VHS", "MLH"),
    ("VHD", "HS", "LLH"),
    ("VHD", "MS", "VLLH"),
    ("VHD", "LS", "VLLH"),
    ("VHD", "VLS", "VLLH"),
    ("HD", "VHS", "HLH"),
    ("HD", "HS", "MLH"),
    ("HD", "MS", "VLLH"),
    ("HD", "LS", "VLLH"),
    ("HD", "VLS", "VLLH"),
    ("MD", "VHS", "VHLH"),
    ("MD", "HS", "VHLH"),
    ("MD", "MS", "MLH"),
    ("MD", "LS", "LLH"),
    ("MD", "VLS", "VLLH"),
    ("LD", "VHS", "VHLH"),
    ("LD", "HS", "VHLH"),
    ("LD", "MS", "HLH"),
    ("LD", "LS", "MLH"),
    ("LD", "VLS", "VLLH"),
    ("VLD", "VHS", "VHLH"),
    ("VLD", "HS", "VHLH"),
    ("VLD", "MS", "VHLH"),
    ("VLD", "LS", "HLH"),
    ("VLD", "VLS", "MLH"),
)

UNDESIRABILITY_RULES: tuple[tuple[str, str, str], ...] = (
    ("VLImpG", "NAG", "MUD"),
    ("VLImpG", "LAG", "LUD"),
    ("VLImpG", "MAG", "LUD"),
    ("VLImpG", "HAG", "VLUD"),
    ("VLImpG", "VHFAG", "VLUD"),
    ("LImpG", "NAG", "MUD"),
    ("LImpG", "LAG", "MUD"),
    ("LImpG", "MAG", "LUD"),
    ("LImpG", "HAG", "VLUD"),
    ("LImpG", "VHFAG", "VLUD"),
    ("MImpG", "NAG", "HUD"),
    ("MImpG", "LAG", "MUD"),
    ("MImpG", "MAG", "MUD"),
    ("MImpG", "HAG", "LUD"),
    ("MImpG", "VHFAG", "LUD"),
    ("HImpG", "NAG", "VHUD"),
    ("HImpG", "LAG", "HUD"),
    ("HImpG", "MAG", "HUD"),
    ("HImpG", "HAG", "MUD"),
    ("HImpG", "VHFAG", "VHUD"),
    ("VHImpG", "NAG", "VHUD"),
    ("VHImpG", "LAG", "HUD"),
    ("VHImpG", "MAG", "HUD"),
    ("VHImpG", "HAG", "HUD"),
    ("VHImpG", "VHFAG", "MUD"),
)

# A finished goal makes the event barely undesirable whatever its importance.
VALIDATED_UNDESIRABILITY_OVERRIDES: dict[tuple[str, str], str] = {
    ("MImpG", "VHFAG"): "VLUD",
    ("HImpG", "VHFAG"): "VLUD",
    ("VHImpG", "VHFAG"): "VLUD",
}

IG_RULES: tuple[tuple[str, str, str], ...] = (
    ("VLSOR", "AboutTo", "MIG"),
    ("VLSOR", "GoingTo", "MIG"),
    ("VLSOR", "MChance", "LIG"),
    ("VLSOR", "LChance", "VLIG"),
    ("VLSOR", "NChance", "VLIG"),
    ("LSOR", "AboutTo", "HIG"),
    ("LSOR", "GoingTo", "MIG"),
    ("LSOR", "MChance", "MIG"),
    ("LSOR", "LChance", "LIG"),
    ("LSOR", "NChance", "VLIG"),
    ("MSOR", "AboutTo", "HIG"),
    ("MSOR", "GoingTo", "HIG"),
    ("MSOR", "MChance", "MIG"),
    ("MSOR", "LChance", "LIG"),
    ("MSOR", "NChance", "VLIG"),
    ("HSOR", "AboutTo", "VHIG"),
    ("HSOR", "GoingTo", "HIG"),
    ("HSOR", "MChance", "MIG"),
    ("HSOR", "LChance", "LIG"),
    ("HSOR", "NChance", "VLIG"),
    ("VHSOR", "AboutTo", "VHIG"),
    ("VHSOR", "GoingTo", "VHIG"),
    ("VHSOR", "MChance", "HIG"),
    ("VHSOR", "LChance", "HIG"),
    ("VHSOR", "NChance", "MIG"),
)

UndesirabilityRevision = Literal["published", "validated"]


def build_fis(
    name: str,
    variables: tuple[tuple[str, tuple[str, ...]], tuple[str, tuple[str, ...]], tuple[str, tuple[str, ...]]],
    table: tuple[tuple[str, str, str], ...],
    scale: IntensityScale | None = None,
) -> FuzzyInferenceSystem:
    """Build a two-input system from ``(variable name, tokens)`` triples and a rule table."""
    scale = scale or IntensityScale()
    in1, in2, out = (LinguisticVariable(var_name, tokens, scale) for var_name, tokens in variables)
    rules = [
        FuzzyRule(antecedent=((in1.name, tok1), (in2.name, tok2)), consequent=(out.name, tok_out))
        for tok1, tok2, tok_out in table
    ]
    return FuzzyInferenceSystem(name, (in1, in2), out, rules)


def build_likelihood_fis(scale: IntensityScale | None = None) -> FuzzyInferenceSystem:
    return build_fis(
        "likelihood",
        (("Distance", DISTANCE_TOKENS), ("Speed", SPEED_TOKENS), ("Likelihood", LIKELIHOOD_TOKENS)),
        LIKELIHOOD_RULES,
        scale,
    )


def undesirability_rules(revision: UndesirabilityRevision = "published") -> tuple[tuple[str, str, str], ...]:
    if revision == "published":
        return UNDESIRABILITY_RULES
    if revision == "validated":
        return tuple(
            (imp, ach, VALIDATED_UNDESIRABILITY_OVERRIDES.get((imp, ach), out)) for imp, ach, out in UNDESIRABILITY_RULES
        )
    raise ValueError(f"Unknown undesirability rule revision: {revision!r} (use 'published' or 'validated')")


def build_undesirability_fis(
    scale: IntensityScale | None = None, *, revision: UndesirabilityRevision = "published"
) -> FuzzyInferenceSystem:
    """Undesirability from importance (ImpGoal) and achievement (AchGoal) of the goal.

    ``revision="validated"`` swaps in the consequents that the validation table actually
    reproduces, see ``VALIDATED_UNDESIRABILITY_OVERRIDES``.
    """
    return build_fis(
        "undesirability",
        (("ImpGoal", IMP_GOAL_TOKENS), ("AchGoal", ACH_GOAL_TOKENS), ("Undesirability", UNDESIRABILITY_TOKENS)),
        undesirability_rules(revision),
        scale,
    )


def build_ig_fis(scale: IntensityScale | None = None) -> FuzzyInferenceSystem:
    return build_fis(
        "ig",
        (("SenseOfReality", SENSE_OF_REALITY_TOKENS), ("Proximity", PROXIMITY_TOKENS), ("Ig", IG_TOKENS)),
        IG_RULES,
        scale,
    )
