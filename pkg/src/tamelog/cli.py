"""Command line front end.

Exit status: 0 when the command computed its answer (or the answer to a
yes/no question is yes), 1 when the answer is no, 2 on bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import dualgraph as dg
from . import fan as fanmod
from . import genus1 as g1
from . import io
from . import model as mdl
from .errors import SemanticError, TamelogError
from .monoid import saturation_witness


@dataclass
class Report:
    code: int
    result: dict
    text: str


class InputError(TamelogError):
    code = "INPUT_ERROR"


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc


def _load(args):
    kind, obj, model, graph = io.load_any(args.data, args.p)
    return kind, obj, model, graph


def _need_model(args) -> mdl.LogModel:
    _, _, model, _ = _load(args)
    if model is None:
        raise InputError("the graph file has no prime; pass --p")
    return model


def _need_graph(args):
    kind, obj, _, graph = _load(args)
    if kind != "graph":
        raise InputError(f"{args.command} needs a graph file")
    prime = args.p if args.p is not None else obj.get("p")
    return graph, prime, obj.get("log_smooth_claimed", False)


def _violations_text(violations, empty: str) -> str:
    if not violations:
        return empty
    return "\n".join(f"[{v.kind}] {v.message}" for v in violations)


def cmd_validate(args) -> Report:
    kind, obj, model, graph = _load(args)
    violations, advisories = [], []
    if graph is not None:
        for vid, defect in graph.fibre_defects().items():
            if defect:
                advisories.append(f"vertex {vid!r}: intersection with the fibre is {defect}, not 0")
    if model is not None:
        violations += fanmod.validate_fan(model.fan, model.p)
        violations += mdl.stratum_violations(model)
        for pt in model.fan.points:
            c = pt.chart
            if c is not None and c.monoid.saturated:
                w = saturation_witness(c.monoid)
                if w is not None:
                    violations.append(
                        fanmod.Violation("saturation", f"point {pt.id!r}: chart declared saturated but misses {w}", (pt.id,))
                    )
        if model.log_smooth_claimed:
            violations += mdl.check_prop_vanishing(model)
    else:
        advisories.append("no prime given: only the graph itself was checked")
    result = {
        "kind": kind,
        "valid": not violations,
        "violations": [v.as_dict() for v in violations],
        "advisories": advisories,
    }
    text = _violations_text(violations, "valid")
    if advisories:
        text += "\n" + "\n".join(f"note: {a}" for a in advisories)
    return Report(0 if not violations else 1, result, text)


def cmd_classify(args) -> Report:
    model = _need_model(args)
    part = fanmod.classify(model.fan, model.p)
    result = dict(part.as_dict(), p=model.p)
    text = f"p = {model.p}\np-locus: {', '.join(sorted(part.p_locus)) or '(empty)'}\n" \
        f"p'-locus: {', '.join(sorted(part.pprime_locus))}"
    return Report(0, result, text)


def cmd_zeta(args) -> Report:
    z = mdl.tame_zeta(_need_model(args))
    return Report(0, {"factors": z.as_list(), "product": str(z), "degree": z.degree}, f"zeta_tame(t) = {z}")


def cmd_euler(args) -> Report:
    chi = mdl.tame_euler(_need_model(args))
    return Report(0, {"chi_tame": chi}, f"chi_tame = {chi}")


def cmd_tame_point(args) -> Report:
    model = _need_model(args)
    exists = mdl.tame_point_exists(model)
    part = fanmod.classify(model.fan, model.p)
    witnesses = sorted(pt.id for pt in model.fan.non_generic() if pt.id in part.pprime_locus)
    if exists:
        text = f"K^t-point exists: p'-locus meets the special fibre at {', '.join(witnesses)}"
    else:
        text = "no K^t-point: p-locus equals special fibre"
    return Report(0 if exists else 1, {"tame_point_exists": exists, "witnesses": witnesses}, text)


def cmd_check_smooth(args) -> Report:
    model = _need_model(args)
    verdicts = fanmod.point_smoothness(model.fan, model.p)
    result = {"points": {k: v.as_dict() for k, v in verdicts.items()}}
    overall = all(v.status is fanmod.Smoothness.SMOOTH for v in verdicts.values())
    result["all_smooth"] = overall
    text = "\n".join(f"{k}: {v.status.value} ({v.reason})" for k, v in verdicts.items())
    return Report(0 if overall else 1, result, text)


def cmd_vanishing(args) -> Report:
    violations = mdl.check_prop_vanishing(_need_model(args))
    return Report(
        1 if violations else 0,
        {"violations": [v.as_dict() for v in violations]},
        _violations_text(violations, "every p-locus stratum has chi 0"),
    )


def cmd_restrictions(args) -> Report:
    rep = mdl.check_degeneration_restrictions(_need_model(args))
    text = _violations_text(rep.violations, "no restriction violated")
    if rep.advisories:
        text += "\n" + "\n".join(f"note: {a}" for a in rep.advisories)
    return Report(1 if rep.violations else 0, rep.as_dict(), text)


def cmd_theorem1(args) -> Report:
    rep = mdl.theorem1_verdict(_need_model(args))
    return Report(1 if rep.status == "INCONSISTENT_INPUT" else 0, rep.as_dict(), f"{rep.status}: {rep.note}")


def cmd_saito(args) -> Report:
    graph, p, _ = _need_graph(args)
    if p is None:
        raise InputError("saito needs a prime; pass --p")
    v = dg.saito_check(graph, p)
    result = v.as_dict()
    text = "PASS" if v.passed else "FAIL\n" + "\n".join(f"{k}: {r}" for k, r in result["reasons"].items())
    return Report(0 if v.passed else 1, result, text)


def cmd_scale(args) -> Report:
    graph, p, claimed = _need_graph(args)
    out = dg.scale(graph, args.m)
    doc = io.render_graph(out, p, claimed)
    return Report(0, {"graph": doc}, io.dumps(doc).rstrip("\n"))


def cmd_contract(args) -> Report:
    graph, p, claimed = _need_graph(args)
    if p is None:
        raise InputError("contract needs a prime; pass --p")
    if args.all:
        out, steps = dg.contract_all(graph, p)
        record = [{"vertex": vid, "preserved": kept} for vid, kept in steps]
    else:
        out, kept = dg.contract(graph, args.vertex, p)
        record = [{"vertex": args.vertex, "preserved": kept}]
    doc = io.render_graph(out, p, claimed)
    lines = [f"contracted {r['vertex']} ({'smoothness preserved' if r['preserved'] else 'smoothness not preserved'})"
             for r in record] or ["nothing to contract"]
    return Report(0, {"graph": doc, "steps": record}, "\n".join(lines) + "\n" + io.dumps(doc).rstrip("\n"))


def cmd_kodaira(args) -> Report:
    t = dg.KodairaType.parse(args.type, args.n)
    g = dg.kodaira(t, nodal=args.nodal)
    doc = io.render_graph(g, args.p)
    result = {"type": str(t), "euler_number": g.euler_number(), "graph": doc}
    return Report(0, result, f"{t}: Euler number {g.euler_number()}\n" + io.dumps(doc).rstrip("\n"))


def cmd_dot(args) -> Report:
    graph, _, _ = _need_graph(args)
    text = dg.to_dot(graph)
    return Report(0, {"dot": text}, text.rstrip("\n"))


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def cmd_genus1(args) -> Report:
    jac = g1.JacobianReduction(args.jacobian)
    h1 = args.h1_tame
    if h1 is None:
        h1 = g1.default_h1_tame(args.gp, jac)
        if h1 is None:
            raise InputError("--h1-tame is required unless p >= 5 and the Jacobian is good or multiplicative")
    inp = g1.Genus1Input(args.gp, args.period, h1, jac, args.coh_flat, args.mu, args.supersingular)
    verdict = g1.decide(inp)
    result = verdict.as_dict()
    if args.supersingular is not None:
        try:
            gate = g1.ordinarity_gate(inp)
            result["ordinarity"] = {"ok": gate.ok, "reason": gate.reason}
        except TamelogError:
            pass
    text = f"log good reduction: {'YES' if verdict.log_good_reduction else 'NO'} ({verdict.reason})"
    if "ordinarity" in result and not result["ordinarity"]["ok"]:
        text += f"\nwarning: {result['ordinarity']['reason']}"
    return Report(0 if verdict.log_good_reduction else 1, result, text)


FILE_COMMANDS = {
    "validate": (cmd_validate, "check a model or graph file"),
    "classify": (cmd_classify, "split fan points into p-locus and p'-locus"),
    "zeta": (cmd_zeta, "tame monodromy zeta function"),
    "euler": (cmd_euler, "tame Euler characteristic"),
    "tame-point": (cmd_tame_point, "does the generic fibre have a tamely ramified point"),
    "check-smooth": (cmd_check_smooth, "per-point log smoothness verdicts"),
    "vanishing": (cmd_vanishing, "Euler characteristics of p-locus strata vanish (log smooth models)"),
    "restrictions": (cmd_restrictions, "shape of strata of log smooth models without tame points"),
    "theorem1": (cmd_theorem1, "nonzero tame Euler characteristic forces a tame point"),
    "saito": (cmd_saito, "log smoothness criterion for sncd curve fibres"),
    "scale": (cmd_scale, "multiply every multiplicity"),
    "contract": (cmd_contract, "blow down (-1)-curves"),
    "dot": (cmd_dot, "Graphviz export"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="tamelog", description="Tame points and log smooth models, combinatorially.")
    parser.add_argument("--json", action="store_true", default=False, help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    for name, (fn, help_text) in FILE_COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.add_argument("file")
        sp.add_argument("--p", type=int, default=None, help="prime (overrides the file)")
        sp.set_defaults(fn=fn)
        if name == "scale":
            sp.add_argument("--m", type=int, required=True)
        elif name == "contract":
            grp = sp.add_mutually_exclusive_group(required=True)
            grp.add_argument("--vertex")
            grp.add_argument("--all", action="store_true")

    sp = sub.add_parser("kodaira", parents=[common], help="catalog dual graph of a Kodaira fibre")
    sp.add_argument("--type", required=True, help="I, I*, II, III, IV, II*, III*, IV*")
    sp.add_argument("--n", type=int, default=0)
    sp.add_argument("--nodal", action="store_true", help="I1 as a nodal curve instead of its sncd resolution")
    sp.add_argument("--p", type=int, default=None, help="prime recorded in the output file")
    sp.set_defaults(fn=cmd_kodaira)

    sp = sub.add_parser("genus1", parents=[common], help="log good reduction of a genus-1 curve")
    sp.add_argument("--p", dest="gp", type=int, required=True)
    sp.add_argument("--period", type=int, required=True)
    sp.add_argument("--h1-tame", type=_bool, default=None)
    sp.add_argument("--jacobian", choices=[j.value for j in g1.JacobianReduction], required=True)
    sp.add_argument("--coh-flat", type=_bool, default=None)
    sp.add_argument("--mu", type=int, default=None)
    sp.add_argument("--supersingular", type=_bool, default=None)
    sp.set_defaults(fn=cmd_genus1)
    return parser


def _input_digest(args) -> str:
    """Hash of the file contents (not its path) and every other argument."""
    skip = {"fn", "json", "command", "file", "data"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    params["command"] = args.command
    if hasattr(args, "data"):
        params["file_sha256"] = hashlib.sha256(args.data).hexdigest()
    return _digest(json.dumps(params, sort_keys=True).encode())


def run(argv: Optional[list[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    digest = None
    try:
        if hasattr(args, "file"):
            args.data = _read(args.file)
        digest = _input_digest(args)
        report = args.fn(args)
    except (TamelogError, ValueError) as exc:
        code = exc.code if isinstance(exc, TamelogError) else SemanticError.code
        message = exc.message if isinstance(exc, TamelogError) else str(exc)
        if args.json:
            out = {"command": args.command, "input_digest": digest, "error": {"code": code, "message": message}}
            stdout.write(io.dumps(out))
        print(f"error [{code}]: {message}", file=stderr)
        return 2
    if args.json:
        stdout.write(io.dumps({"command": args.command, "input_digest": digest, "result": report.result}))
    else:
        stdout.write(report.text + "\n")
    return report.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
