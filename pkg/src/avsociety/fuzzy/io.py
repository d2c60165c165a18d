"""Plain-text table format for rule bases and membership breakpoints.

    # fis: undesirability
    [membership]
    ImpGoal,VLImpG,0,0.2,0.24
    ...
    [rules]
    VLImpG,NAG,MUD
    ...

Membership lines are ``VARIABLE,TOKEN,a,b,c`` in level order; the first and last token of a
variable are shoulders. Variables appear in the order first input, second input, output.
Rule lines are ``IN1_TOKEN,IN2_TOKEN,OUT_TOKEN`` in rule-base order. ``#`` starts a comment.
"""

from pathlib import Path

from avsociety.fuzzy.core import LEVELS, FuzzyInferenceSystem, FuzzyRule, IntensityScale, LinguisticVariable


def _fmt(x: float) -> str:
    return f"{x:g}"


def dump_rules(fis: FuzzyInferenceSystem) -> str:
    return "\n".join(",".join(row) for row in fis.table()) + "\n"


def dump_membership(fis: FuzzyInferenceSystem) -> str:
    lines = []
    for variable in (*fis.inputs, fis.output):
        for token, mf in variable.memberships.items():
            lines.append(f"{variable.name},{token},{_fmt(mf.a)},{_fmt(mf.b)},{_fmt(mf.c)}")
    return "\n".join(lines) + "\n"


def export_fis(fis: FuzzyInferenceSystem) -> str:
    return f"# fis: {fis.name}\n[membership]\n{dump_membership(fis)}[rules]\n{dump_rules(fis)}"


def load_fis(text: str, *, name: str | None = None) -> FuzzyInferenceSystem:
    section = None
    variables: dict[str, list[tuple[str, float, float, float]]] = {}
    rows: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("# fis:") and name is None:
            name = line.removeprefix("# fis:").strip()
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if line in ("[membership]", "[rules]"):
            section = line
            continue
        fields = [f.strip() for f in line.split(",")]
        if section == "[membership]" and len(fields) == 5:
            variables.setdefault(fields[0], []).append((fields[1], *map(float, fields[2:])))
        elif section == "[rules]" and len(fields) == 3:
            rows.append((fields[0], fields[1], fields[2]))
        else:
            raise ValueError(f"Line {lineno}: cannot parse {raw!r} in section {section}")
    if len(variables) != 3:
        raise ValueError(f"Expected three variables (two inputs, one output), got {list(variables)}")
    linguistic = []
    for var_name, entries in variables.items():
        if len(entries) != len(LEVELS):
            raise ValueError(f"Variable {var_name} needs {len(LEVELS)} tokens, got {len(entries)}")
        scale = IntensityScale(ranges=tuple((a, c) for _, a, _, c in entries), peaks=tuple(b for _, _, b, _ in entries))
        linguistic.append(LinguisticVariable(var_name, tuple(token for token, *_ in entries), scale))
    in1, in2, out = linguistic
    rules = [FuzzyRule(((in1.name, t1), (in2.name, t2)), (out.name, t_out)) for t1, t2, t_out in rows]
    return FuzzyInferenceSystem(name or "fis", (in1, in2), out, rules)


def save_fis(fis: FuzzyInferenceSystem, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(export_fis(fis))


def read_fis(path: Path) -> FuzzyInferenceSystem:
    return load_fis(Path(path).read_text())
