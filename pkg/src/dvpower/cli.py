"""Command-line front end.

Reports are line-oriented ``key=value`` text.  Exit status: 0 when every check
passes, 1 when a check fails, 2 on malformed input, 3 when a computation is
refused for scale.
"""
from __future__ import annotations

import argparse
import ast
import sys
from dataclasses import dataclass
from pathlib import Path

from .boolean import (
    BooleanSyntaxError,
    DeVriesMap,
    FiniteProximityAlgebra,
    ReflexiveClosureMutation,
    WitnessFreeMutation,
    check_devries_axioms,
    check_devries_morphism,
    ends,
    parse_algebra_file,
)
from .domain import DomainError, format_value, get_domain
from .intervals import INTERVAL, IntervalSyntaxError, parse_pl_map
from .morphisms import (
    ProximityMorphism,
    check_phi_star,
    check_proximity_morphism,
    extend_morphism,
    phi_star,
    termwise_pushforward,
)
from .normal import StepSyntaxError, format_step_function, normalize, parse_step_function
from .reports import ScaleError
from .specker import SpeckerAlgebra, SpeckerElement, SpeckerSyntaxError, fring_property_suite, prox_axiom_suite

EXIT_PASS, EXIT_FAIL, EXIT_PARSE, EXIT_SCALE = 0, 1, 2, 3

PARSE_ERRORS = (
    BooleanSyntaxError,
    DomainError,
    IntervalSyntaxError,
    SpeckerSyntaxError,
    StepSyntaxError,
    SyntaxError,
    OSError,
)

MUTATIONS = {"reflexive": ReflexiveClosureMutation, "witness-free": WitnessFreeMutation}


class InputError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int
    samples: int | None
    domain: str
    carrier: str


def load_carrier(spec: str, base: Path | None = None):
    """``interval``, ``atoms:N`` or ``finite:PATH``."""
    if spec == "interval":
        return INTERVAL
    kind, _, arg = spec.partition(":")
    if kind == "atoms":
        if not arg.isdigit():
            raise InputError(f"bad atom count in {spec!r}")
        return FiniteProximityAlgebra.with_order(int(arg))
    if kind == "finite":
        path = Path(arg)
        if base is not None and not path.is_absolute():
            path = base / path
        return parse_algebra_file(path.read_text())
    raise InputError(f"unknown carrier {spec!r}")


def parse_morphism_file(text: str, domain, base: Path | None = None) -> ProximityMorphism:
    """Keys ``source:`` and ``target:`` give carriers; then ``map:`` table lines
    ``e -> f`` for finite carriers, or ``pl: x:y, ...`` for the interval carrier."""
    fields: dict = {}
    table: list = []
    in_map = False
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if in_map and "->" in line:
            table.append(tuple(part.strip() for part in line.split("->", 1)))
            continue
        key, sep, value = line.partition(":")
        if not sep or key.strip() not in ("source", "target", "map", "pl"):
            raise InputError(f"cannot parse line {raw!r}")
        key = key.strip()
        in_map = key == "map"
        if not in_map:
            fields[key] = value.strip()
    if "source" not in fields or "target" not in fields:
        raise InputError("morphism files need source: and target: lines")
    source = load_carrier(fields["source"], base)
    target = load_carrier(fields["target"], base)
    if "pl" in fields:
        if source != INTERVAL or target != INTERVAL:
            raise InputError("pl: maps need interval source and target")
        return phi_star(parse_pl_map(fields["pl"]), domain)
    if not isinstance(source, FiniteProximityAlgebra) or not isinstance(target, FiniteProximityAlgebra):
        raise InputError("map: tables need finite source and target")
    values = {}
    for a, b in table:
        try:
            values[source.parse(a)] = target.parse(b)
        except Exception as exc:
            raise InputError(str(exc)) from None
    missing = [source.format(a) for a in source.elements() if a not in values]
    if missing:
        raise InputError(f"map table has no entry for {missing[0]}")
    sigma = DeVriesMap(source, target, tuple(values[a] for a in source.elements()))
    return extend_morphism(sigma, domain, validate=False)


# expressions


def evaluate(expr: str, alg: SpeckerAlgebra, bindings: dict):
    """Evaluate + - * & | with abs(), leq() and prox() over bound elements and scalars."""
    tree = ast.parse(expr, mode="eval")

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Name):
            if node.id not in bindings:
                raise InputError(f"unbound name {node.id!r}")
            return bindings[node.id]
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return alg.domain.coerce(node.value)
        if isinstance(node, ast.BinOp):
            a, b = ev(node.left), ev(node.right)
            if isinstance(node.op, ast.Div):
                if isinstance(a, SpeckerElement) or isinstance(b, SpeckerElement):
                    raise InputError("division is only allowed between scalars")
                return alg.domain.parse(f"{format_value(a)}/{format_value(b)}")
            ops = {ast.Add: alg.add, ast.Sub: alg.sub, ast.Mult: alg.mul, ast.BitAnd: alg.meet, ast.BitOr: alg.join}
            if type(node.op) not in ops:
                raise InputError(f"unsupported operator {type(node.op).__name__}")
            if isinstance(node.op, ast.Mult) and not isinstance(a, SpeckerElement) and not isinstance(b, SpeckerElement):
                return a * b
            return ops[type(node.op)](a, b)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            v = ev(node.operand)
            return alg.neg(v) if isinstance(v, SpeckerElement) else -v
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name):
            args = [ev(a) for a in node.args]
            if node.func.id == "abs" and len(args) == 1:
                return alg.abs(args[0])
            if node.func.id == "leq" and len(args) == 2:
                return alg.leq(alg.lift(args[0]), alg.lift(args[1]))
            if node.func.id == "prox" and len(args) == 2:
                return alg.prox(alg.lift(args[0]), alg.lift(args[1]))
            raise InputError(f"unknown function {node.func.id!r}")
        raise InputError(f"unsupported expression {ast.dump(node)}")

    return ev(tree)


# commands


def _header(out: list, command: str, cfg: RunConfig, carrier: bool = True, **extra) -> None:
    out.append(f"command={command}")
    for key, value in extra.items():
        out.append(f"{key}={value}")
    if carrier:
        out.append(f"carrier={cfg.carrier}")
    out.append(f"domain={cfg.domain}")
    out.append(f"seed={cfg.seed}")


def _order_note(carrier) -> str | None:
    if isinstance(carrier, FiniteProximityAlgebra) and carrier.relation.is_order():
        return "note=proximity equals ≤"
    return None


def cmd_check(args, cfg: RunConfig, out: list) -> int:
    target = args.target
    if target == "morphism":
        _header(out, "check", cfg, carrier=False, target=target, file=args.file)
    else:
        _header(out, "check", cfg, target=target)
    domain = get_domain(cfg.domain)
    if target == "morphism":
        if not args.file:
            raise InputError("check morphism needs a morphism file")
        path = Path(args.file)
        alpha = parse_morphism_file(path.read_text(), domain, path.parent)
        sigma = alpha.idempotent_map
        finite = isinstance(alpha.source.carrier, FiniteProximityAlgebra)
        samples = cfg.samples or 200
        dv = check_devries_morphism(sigma, sigma.source, sigma.target, None if finite else samples, cfg.seed)
        element_map = termwise_pushforward(alpha) if args.fault == "termwise" else None
        pm = check_proximity_morphism(alpha, samples, cfg.seed, element_map)
        out.extend(dv.lines())
        out.extend(pm.lines())
        ok = dv.passed and pm.passed
        if not finite and element_map is None:
            ps = check_phi_star(sigma.phi, samples, cfg.seed, domain)
            out.extend(ps.lines())
            ok = ok and ps.passed
        out.append(f"result={'pass' if ok else 'fail'}")
        return EXIT_PASS if ok else EXIT_FAIL
    carrier = load_carrier(cfg.carrier)
    if args.mutation:
        carrier = MUTATIONS[args.mutation](carrier)
        out.append(f"mutation={args.mutation}")
    if target == "dv-axioms":
        exhaustive = isinstance(carrier, FiniteProximityAlgebra) and cfg.samples is None
        report = check_devries_axioms(carrier, None if exhaustive else (cfg.samples or 1000), cfg.seed)
    elif target == "prox-axioms":
        report = prox_axiom_suite(SpeckerAlgebra(carrier, domain), cfg.samples or 500, cfg.seed)
    elif target == "fring":
        report = fring_property_suite(SpeckerAlgebra(carrier, domain), cfg.samples or 1000, cfg.seed)
    else:
        raise InputError(f"unknown check target {target!r}")
    out.extend(report.lines())
    note = _order_note(carrier)
    if note:
        out.append(note)
    out.append(f"result={'pass' if report.passed else 'fail'}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_ends(args, cfg: RunConfig, out: list) -> int:
    from .duality import MAX_FIVE_WAY_ATOMS, ends_of_specker

    _header(out, "ends", cfg)
    carrier = load_carrier(cfg.carrier)
    if not isinstance(carrier, FiniteProximityAlgebra):
        raise ScaleError("ends are enumerated for finite carriers only")
    found = ends(carrier)
    out.append(f"ends.count={len(found)}")
    for i, E in enumerate(found):
        out.append(f"end.{i}.generator={carrier.format(E.generator)}")
        out.append(f"end.{i}.members={' '.join(carrier.format(m) for m in sorted(E.members))}")
        out.append(f"end.{i}.ideal={'+'.join('A' if E.generator >> j & 1 else '0' for j in range(carrier.atom_count))}")
    ok = True
    if carrier.atom_count <= MAX_FIVE_WAY_ATOMS:
        comp = ends_of_specker(SpeckerAlgebra(carrier, get_domain(cfg.domain)))
        for method, sigs in comp.by_method.items():
            out.append(f"method.{method}.count={len(sigs)}")
        out.append(f"five_way.agree={'true' if comp.agree else 'false'}")
        ok = comp.agree and len(found) == carrier.atom_count
    out.append(f"result={'pass' if ok else 'fail'}")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_dual(args, cfg: RunConfig, out: list) -> int:
    from .duality import dual_of_morphism, specker_ends

    _header(out, "dual", cfg, carrier=False, file=args.file)
    path = Path(args.file)
    domain = get_domain(cfg.domain)
    alpha = parse_morphism_file(path.read_text(), domain, path.parent)
    if not isinstance(alpha.source.carrier, FiniteProximityAlgebra):
        out.append(f"dual.pl={alpha.idempotent_map.phi.format()}")
        out.append("note=the dual of an interval morphism is the inducing map of [0,1]")
        out.append("result=pass")
        return EXIT_PASS
    images, report = dual_of_morphism(alpha)
    src, dst = specker_ends(alpha.source), specker_ends(alpha.target)
    src_fmt, dst_fmt = alpha.source.carrier.format, alpha.target.carrier.format
    out.append(f"dual.points={len(images)}")
    for j, i in enumerate(images):
        out.append(f"dual.{j}.end={dst_fmt(dst[j].generator)}")
        out.append(f"dual.{j}.image={src_fmt(src[i].generator)}")
    out.extend(report.lines())
    out.append(f"result={'pass' if report.passed else 'fail'}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_eval(args, cfg: RunConfig, out: list) -> int:
    alg = SpeckerAlgebra(load_carrier(cfg.carrier), get_domain(cfg.domain))
    bindings = {}
    for item in args.bind or []:
        name, sep, text = item.partition("=")
        if not sep or not name.isidentifier():
            raise InputError(f"bad binding {item!r}; expected NAME=ELEMENT")
        bindings[name] = alg.parse(text)
    value = evaluate(args.expression, alg, bindings)
    if isinstance(value, bool):
        out.append("true" if value else "false")
    elif isinstance(value, SpeckerElement):
        out.append(value.format())
    else:
        out.append(alg.const(value).format())
    return EXIT_PASS


def cmd_normalize(args, cfg: RunConfig, out: list) -> int:
    f = parse_step_function(args.function, get_domain(cfg.domain))
    out.append(format_step_function(normalize(f)))
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--carrier", default="interval", help="interval, atoms:N or finite:PATH")
    common.add_argument("--domain", default="int", choices=("int", "rational"))
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-n", "--samples", type=int, default=None, help="samples per check")
    parser = argparse.ArgumentParser(prog="dvpower", description="de Vries powers of ordered domains")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("check", parents=[common], help="run an axiom suite")
    p.add_argument("target", choices=("dv-axioms", "prox-axioms", "morphism", "fring"))
    p.add_argument("file", nargs="?", help="morphism file for 'check morphism'")
    p.add_argument("--mutation", choices=sorted(MUTATIONS), help="inject a faulty proximity")
    p.add_argument("--fault", choices=("termwise",), help="test a faulty element map instead")
    p.set_defaults(run=cmd_check)
    p = sub.add_parser("ends", parents=[common], help="list the ends of a finite carrier")
    p.set_defaults(run=cmd_ends)
    p = sub.add_parser("dual", parents=[common], help="dual map of a morphism file")
    p.add_argument("file")
    p.set_defaults(run=cmd_dual)
    p = sub.add_parser("eval", parents=[common], help="evaluate an element expression")
    p.add_argument("expression")
    p.add_argument("--bind", nargs="*", metavar="NAME=ELEMENT")
    p.set_defaults(run=cmd_eval)
    p = sub.add_parser("normalize", parents=[common], help="normalize a step function")
    p.add_argument("function")
    p.set_defaults(run=cmd_normalize)
    return parser


def run(argv: list[str] | None = None) -> tuple[int, list[str]]:
    """Run a command and return (exit code, output lines)."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.samples is not None and args.samples <= 0:
        return EXIT_PARSE, ["error=sample count must be positive"]
    cfg = RunConfig(args.seed, args.samples, args.domain, args.carrier)
    out: list[str] = []
    try:
        code = args.run(args, cfg, out)
    except ScaleError as exc:
        out.append(f"error=scale: {exc}")
        code = EXIT_SCALE
    except (InputError, ValueError, *PARSE_ERRORS) as exc:
        out.append(f"error=parse: {exc}")
        code = EXIT_PARSE
    return code, out


def main(argv: list[str] | None = None) -> int:
    code, out = run(argv)
    stream = sys.stdout if code in (EXIT_PASS, EXIT_FAIL) else sys.stderr
    for line in out:
        print(line, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
