"""Command-line front end.

Subcommands
-----------
* ``solve <file>``: assemble the scenario's constraint system and minimize
  the L1 norm; reports status, M*, rank/nullity, and the witness.
* ``viable <file>``: look for a proper (nonnegative) solution; prints the
  witness or ``NOT VIABLE``.
* ``bias <file>``: compare the contexts pairwise on shared events; prints
  the first disagreement or ``NO BIAS``.
* ``condition <file> --target k=v[,k=v] --given k=v[,k=v]``: conditional
  of the target cylinder given the given cylinder, evaluated on the solve
  witness.
* ``builtin <name> [--param v | --param k=v] ...``: materialize a built-in
  scenario and solve it.

Every subcommand accepts ``--format {table,json}``.  Exit codes: 0 on
success, 2 when the answer is Infeasible or NOT VIABLE, 1 on input
errors (malformed JSON is reported with line and column).

Scenario files are JSON documents with a ``variables`` list plus exactly
one of ``contexts``, ``constraints``, or ``builtin``; all numbers are
rational strings like ``"1/2"`` or ``"-3"``, never floats.  Context
distribution keys spell one sign per context variable in order, for
example ``"+-"``.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Mapping, Sequence

from .contextuality import (
    BiasWitness,
    ContextFamily,
    detect_bias,
    family_system,
)
from .errors import (
    NegprobError,
    ScenarioFormatError,
    UndefinedConditional,
)
from .measure import Context, SignedMeasure, build_space, cylinder, signed_conditional
from .scenarios import (
    ScenarioBundle,
    bell_box,
    leggett_garg_chain,
    mach_zehnder_case,
    mz_counterfactual,
    mz_counterfactual_detuned,
    tsirelson_box,
)
from .solver import (
    ConstraintSystem,
    SolveStatus,
    assemble,
    feasible_proper,
    minimize_l1,
)

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rational(text: object) -> Fraction:
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ScenarioFormatError(
            f"expected a rational string like \"1/2\" or \"-3\", got {text!r}"
        )
    return Fraction(text.strip())


def _parse_sign(value: object, where: str) -> int:
    if isinstance(value, bool) or value not in (1, -1):
        raise ScenarioFormatError(
            f"{where}: assignment values must be 1 or -1, got {value!r}"
        )
    return int(value)


def _context_from_data(entry: object, index: int) -> Context:
    where = f"contexts[{index}]"
    if not isinstance(entry, dict):
        raise ScenarioFormatError(f"{where} must be an object")
    variables = entry.get("variables")
    if (
        not isinstance(variables, list)
        or not variables
        or not all(isinstance(v, str) for v in variables)
    ):
        raise ScenarioFormatError(
            f"{where}.variables must be a nonempty list of names"
        )
    distribution = entry.get("distribution")
    if not isinstance(distribution, dict):
        raise ScenarioFormatError(f"{where}.distribution must be an object")
    size = 1 << len(variables)
    mass = [Fraction(0)] * size
    for key, raw in distribution.items():
        if (
            not isinstance(key, str)
            or len(key) != len(variables)
            or any(ch not in "+-" for ch in key)
        ):
            raise ScenarioFormatError(
                f"{where}: key {key!r} must spell one +/- per variable "
                f"in order {variables}"
            )
        atom = 0
        for k, ch in enumerate(key):
            if ch == "+":
                atom |= 1 << k
        mass[atom] = parse_rational(raw)
    return Context(tuple(variables), tuple(mass))


def scenario_from_data(data: object, label: str) -> ScenarioBundle:
    """Validate a decoded scenario document and build its bundle."""
    if not isinstance(data, dict):
        raise ScenarioFormatError("scenario document must be a JSON object")
    variables = data.get("variables")
    if (
        not isinstance(variables, list)
        or not variables
        or not all(isinstance(v, str) for v in variables)
    ):
        raise ScenarioFormatError(
            "\"variables\" must be a nonempty list of names"
        )
    present = [k for k in ("contexts", "constraints", "builtin") if k in data]
    if len(present) != 1:
        raise ScenarioFormatError(
            "exactly one of \"contexts\", \"constraints\", \"builtin\" "
            f"must be present, found {present or 'none'}"
        )
    kind = present[0]
    if kind == "contexts":
        entries = data["contexts"]
        if not isinstance(entries, list) or not entries:
            raise ScenarioFormatError("\"contexts\" must be a nonempty list")
        contexts = tuple(
            _context_from_data(entry, i) for i, entry in enumerate(entries)
        )
        family = ContextFamily(tuple(variables), contexts)
        return ScenarioBundle("contexts", family, label)
    if kind == "constraints":
        entries = data["constraints"]
        if not isinstance(entries, list):
            raise ScenarioFormatError("\"constraints\" must be a list")
        space = build_space(variables)
        rows = []
        for i, entry in enumerate(entries):
            if not isinstance(entry, dict) or "event" not in entry \
                    or "value" not in entry:
                raise ScenarioFormatError(
                    f"constraints[{i}] needs \"event\" and \"value\""
                )
            event = entry["event"]
            if not isinstance(event, dict):
                raise ScenarioFormatError(
                    f"constraints[{i}].event must be an object"
                )
            partial = {
                name: _parse_sign(sign, f"constraints[{i}].event")
                for name, sign in event.items()
            }
            rows.append((partial, parse_rational(entry["value"])))
        return ScenarioBundle("constraints", assemble(space, rows), label)
    entry = data["builtin"]
    if not isinstance(entry, dict) or not isinstance(entry.get("name"), str):
        raise ScenarioFormatError("\"builtin\" must be {\"name\": ..., ...}")
    params_data = entry.get("params", {})
    if not isinstance(params_data, dict):
        raise ScenarioFormatError("builtin params must be an object")
    params = {
        str(k): parse_rational(v) for k, v in params_data.items()
    }
    return builtin_bundle(entry["name"], params)


def family_to_scenario(family: ContextFamily) -> dict:
    """Serialize a context family to the scenario-file structure."""
    contexts = []
    for context in family.contexts:
        distribution = {}
        for atom, mass in enumerate(context.distribution):
            if mass == 0:
                continue
            key = "".join(
                "+" if atom >> k & 1 else "-"
                for k in range(len(context.variables))
            )
            distribution[key] = str(mass)
        contexts.append(
            {
                "variables": list(context.variables),
                "distribution": distribution,
            }
        )
    return {"variables": list(family.global_variables), "contexts": contexts}


# --- built-in scenarios ---------------------------------------------------

_BUILTIN_PARAMS: dict[str, tuple[tuple[str, ...], dict[str, Fraction]]] = {
    "mz-counterfactual": ((), {}),
    "mz-detuned": (("eps",), {"eps": Fraction(1, 100)}),
    "pr-box": (
        ("e_ab", "e_ab2", "e_a2b", "e_a2b2"),
        {
            "e_ab": Fraction(1),
            "e_ab2": Fraction(1),
            "e_a2b": Fraction(1),
            "e_a2b2": Fraction(-1),
        },
    ),
    "tsirelson": ((), {}),
    "lg-chain": (
        ("e_xy", "e_yz", "e_xz"),
        {
            "e_xy": Fraction(1),
            "e_yz": Fraction(1),
            "e_xz": Fraction(-1),
        },
    ),
}
for _n in range(1, 9):
    _BUILTIN_PARAMS[f"mz-case-{_n}"] = ((), {})

BUILTIN_NAMES = tuple(sorted(_BUILTIN_PARAMS))


def builtin_bundle(
    name: str, params: Mapping[str, Fraction]
) -> ScenarioBundle:
    """Materialize a built-in scenario by name."""
    if name not in _BUILTIN_PARAMS:
        raise ScenarioFormatError(
            f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}"
        )
    names, defaults = _BUILTIN_PARAMS[name]
    unknown = set(params) - set(names)
    if unknown:
        raise ScenarioFormatError(
            f"builtin {name!r} takes parameters {names or '()'}, "
            f"got {sorted(unknown)}"
        )
    values = dict(defaults)
    values.update(params)
    if name.startswith("mz-case-"):
        case = int(name.rsplit("-", 1)[1])
        return ScenarioBundle("contexts", mach_zehnder_case(case), name)
    if name == "mz-counterfactual":
        return ScenarioBundle("constraints", mz_counterfactual(), name)
    if name == "mz-detuned":
        system = mz_counterfactual_detuned(values["eps"])
        return ScenarioBundle("constraints", system, name)
    if name == "pr-box":
        family = bell_box(
            values["e_ab"], values["e_ab2"], values["e_a2b"], values["e_a2b2"]
        )
        return ScenarioBundle("contexts", family, name)
    if name == "tsirelson":
        return ScenarioBundle("contexts", tsirelson_box(), name)
    family = leggett_garg_chain(
        values["e_xy"], values["e_yz"], values["e_xz"]
    )
    return ScenarioBundle("contexts", family, name)


def _parse_params(
    name: str, raw_params: Sequence[str]
) -> dict[str, Fraction]:
    if name not in _BUILTIN_PARAMS:
        raise ScenarioFormatError(
            f"unknown builtin {name!r}; known: {', '.join(BUILTIN_NAMES)}"
        )
    order, _ = _BUILTIN_PARAMS[name]
    params: dict[str, Fraction] = {}
    positional = 0
    for raw in raw_params:
        if "=" in raw:
            key, _, value = raw.partition("=")
            params[key.strip()] = parse_rational(value)
            continue
        if positional >= len(order):
            raise ScenarioFormatError(
                f"builtin {name!r} takes at most {len(order)} "
                "positional parameters"
            )
        params[order[positional]] = parse_rational(raw)
        positional += 1
    return params


# --- reports ---------------------------------------------------------------


def _witness_table(witness: SignedMeasure | None) -> dict[str, str] | None:
    if witness is None:
        return None
    return {
        witness.space.atom_label(atom): str(mass)
        for atom, mass in enumerate(witness.mass)
        if mass != 0
    }


def _bias_entry(witness: BiasWitness | None) -> dict | None:
    if witness is None:
        return None
    return {
        "event": {name: sign for name, sign in witness.event},
        "context_i": witness.context_i,
        "context_j": witness.context_j,
        "value_i": str(witness.value_i),
        "value_j": str(witness.value_j),
    }


def _empty_report(command: str, label: str | None, variables) -> dict:
    return {
        "command": command,
        "label": label,
        "variables": list(variables),
        "status": None,
        "mstar": None,
        "rank": None,
        "nullity": None,
        "witness": None,
        "viable": None,
        "bias": None,
        "conditional": None,
    }


def _assignment_text(partial: Mapping[str, int]) -> str:
    return ",".join(f"{name}={sign:+d}" for name, sign in partial.items())


def _render_table(report: dict) -> str:
    lines: list[str] = []
    if report["label"]:
        lines.append(f"label: {report['label']}")
    if report["viable"] is not None:
        lines.append("VIABLE" if report["viable"] else "NOT VIABLE")
    if report["status"] is not None:
        lines.append(f"status: {report['status']}")
    if report["mstar"] is not None:
        lines.append(f"M* = {report['mstar']}")
    if report["rank"] is not None:
        lines.append(f"rank: {report['rank']}")
        lines.append(f"nullity: {report['nullity']}")
    if report["witness"] is not None:
        header = " ".join(report["variables"])
        lines.append(f"witness (atom chars follow {header}; zeros omitted):")
        if report["witness"]:
            width = max(len(label) for label in report["witness"])
            for label, mass in report["witness"].items():
                lines.append(f"  {label:<{width}}  {mass}")
        else:
            lines.append("  (all atom masses are zero)")
    if report["command"] == "bias":
        bias = report["bias"]
        if bias is None:
            lines.append("NO BIAS")
        else:
            event = _assignment_text(bias["event"])
            lines.append(
                f"BIAS on {event}: context {bias['context_i']} gives "
                f"{bias['value_i']}, context {bias['context_j']} gives "
                f"{bias['value_j']}"
            )
    elif report["bias"] is not None:
        bias = report["bias"]
        event = _assignment_text(bias["event"])
        lines.append(
            f"bias witness: {event} gets {bias['value_i']} in context "
            f"{bias['context_i']} but {bias['value_j']} in context "
            f"{bias['context_j']}"
        )
    conditional = report["conditional"]
    if conditional is not None:
        target = _assignment_text(conditional["target"])
        given = _assignment_text(conditional["given"])
        if conditional["defined"]:
            note = (
                "proper range"
                if conditional["proper_range"]
                else "outside [0,1]"
            )
            lines.append(
                f"P({target} | {given}) = {conditional['value']}  ({note})"
            )
        else:
            lines.append(
                f"P({target} | {given}) undefined: conditioning event "
                "has mass zero"
            )
    return "\n".join(lines) + "\n"


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    return _render_table(report)


# --- subcommand handlers ----------------------------------------------------


def _bundle_system(bundle: ScenarioBundle) -> ConstraintSystem:
    if bundle.kind == "constraints":
        return bundle.payload  # type: ignore[return-value]
    return family_system(bundle.payload)  # type: ignore[arg-type]


def _cmd_solve(bundle: ScenarioBundle, fmt: str) -> int:
    system = _bundle_system(bundle)
    result = minimize_l1(system)
    report = _empty_report("solve", bundle.label, system.space.variables)
    report["status"] = result.status.value
    report["mstar"] = None if result.mstar is None else str(result.mstar)
    report["rank"] = result.rank
    report["nullity"] = result.nullity
    report["witness"] = _witness_table(result.witness)
    if bundle.kind == "contexts":
        report["bias"] = _bias_entry(detect_bias(bundle.payload))
    print(_render(report, fmt), end="")
    return 2 if result.status is SolveStatus.INFEASIBLE else 0


def _cmd_viable(bundle: ScenarioBundle, fmt: str) -> int:
    system = _bundle_system(bundle)
    witness = feasible_proper(system)
    report = _empty_report("viable", bundle.label, system.space.variables)
    report["viable"] = witness is not None
    report["witness"] = _witness_table(witness)
    print(_render(report, fmt), end="")
    return 0 if witness is not None else 2


def _cmd_bias(bundle: ScenarioBundle, fmt: str) -> int:
    if bundle.kind != "contexts":
        raise ScenarioFormatError(
            "bias analysis needs a scenario with contexts"
        )
    family: ContextFamily = bundle.payload  # type: ignore[assignment]
    witness = detect_bias(family)
    report = _empty_report("bias", bundle.label, family.global_variables)
    report["bias"] = _bias_entry(witness)
    print(_render(report, fmt), end="")
    return 0


def _parse_assignment_flag(text: str, flag: str) -> dict[str, int]:
    partial: dict[str, int] = {}
    for chunk in text.split(","):
        name, sep, value = chunk.partition("=")
        name = name.strip()
        value = value.strip()
        if not sep or not name or value not in ("1", "+1", "-1"):
            raise ScenarioFormatError(
                f"{flag} expects k=v pairs with v one of 1, +1, -1; "
                f"got {chunk!r}"
            )
        partial[name] = 1 if value in ("1", "+1") else -1
    return partial


def _cmd_condition(
    bundle: ScenarioBundle, target_text: str, given_text: str, fmt: str
) -> int:
    target = _parse_assignment_flag(target_text, "--target")
    given = _parse_assignment_flag(given_text, "--given")
    system = _bundle_system(bundle)
    result = minimize_l1(system)
    report = _empty_report("condition", bundle.label, system.space.variables)
    report["status"] = result.status.value
    report["mstar"] = None if result.mstar is None else str(result.mstar)
    report["rank"] = result.rank
    report["nullity"] = result.nullity
    if result.witness is None:
        print(_render(report, fmt), end="")
        return 2
    space = system.space
    entry: dict = {"target": target, "given": given}
    try:
        value = signed_conditional(
            result.witness, cylinder(space, target), cylinder(space, given)
        )
        entry["defined"] = True
        entry["value"] = str(value)
        entry["proper_range"] = 0 <= value <= 1
    except UndefinedConditional:
        entry["defined"] = False
        entry["value"] = None
        entry["proper_range"] = None
    report["conditional"] = entry
    print(_render(report, fmt), end="")
    return 0


# --- argument parsing --------------------------------------------------------


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> "None":  # type: ignore[override]
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="negprob",
        description=(
            "Feasibility and minimum-L1-norm analysis of signed joint "
            "distributions for ±1-valued variables."
        ),
    )
    sub = parser.add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )

    def add_format(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--format",
            choices=("table", "json"),
            default="table",
            help="output rendering (default: table)",
        )

    for name, doc in (
        ("solve", "minimize the L1 norm over all signed solutions"),
        ("viable", "look for a proper nonnegative solution"),
        ("bias", "compare contexts pairwise on shared events"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("file", help="scenario JSON file")
        add_format(p)

    p = sub.add_parser(
        "condition", help="conditional probability on the solve witness"
    )
    p.add_argument("file", help="scenario JSON file")
    p.add_argument("--target", required=True, help="k=v[,k=v] cylinder")
    p.add_argument("--given", required=True, help="k=v[,k=v] cylinder")
    add_format(p)

    p = sub.add_parser("builtin", help="solve a built-in scenario")
    p.add_argument("name", help=f"one of: {', '.join(BUILTIN_NAMES)}")
    p.add_argument(
        "--param",
        action="append",
        default=[],
        metavar="V",
        help="builtin parameter, positional value or k=v; repeatable",
    )
    add_format(p)
    return parser


def _load_bundle(path: str) -> ScenarioBundle:
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(
            f"malformed JSON in {path}: {exc.msg} at line {exc.lineno} "
            f"column {exc.colno}"
        ) from exc
    label = None
    if isinstance(data, dict) and isinstance(data.get("builtin"), dict):
        name = data["builtin"].get("name")
        if isinstance(name, str):
            label = name
    return scenario_from_data(data, label=label)


def run(argv: Sequence[str] | None = None) -> int:
    """Entry point; returns the process exit code instead of raising."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "builtin":
            params = _parse_params(args.name, args.param)
            bundle = builtin_bundle(args.name, params)
            return _cmd_solve(bundle, args.format)
        bundle = _load_bundle(args.file)
        if args.command == "solve":
            return _cmd_solve(bundle, args.format)
        if args.command == "viable":
            return _cmd_viable(bundle, args.format)
        if args.command == "bias":
            return _cmd_bias(bundle, args.format)
        return _cmd_condition(bundle, args.target, args.given, args.format)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    except NegprobError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
