"""Command-line front end: ``redundant-radix <command> [flags]``.

Rationals cross the boundary only as ``p/q`` (or bare integers).  Exit codes:
0 success, 2 domain or usage error, 3 budget exceeded; errors are written to
stderr as one JSON object.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from . import cylinders, numerals, projector, repcensus
from .errors import BudgetError, DomainError, RegimeError, UsageError
from .numerals import Params, PeriodicRep, format_rational, parse_rational

CONFIG_ENV = "REDUNDANT_RADIX_CONFIG"
FORMATS = ("json", "csv", "dot", "text")

# subcommand -> module operations it exposes
COMMANDS: dict[str, tuple[str, ...]] = {
    "expand": ("numerals.expand", "numerals.expand_periodic", "numerals.admissible_digits"),
    "value": ("numerals.value_of", "numerals.reflect"),
    "pairs": ("numerals.interchangeable_pairs",),
    "chains": ("numerals.substitution_chains",),
    "cylinder": (
        "cylinders.interval",
        "cylinders.same_cylinder",
        "cylinders.children",
        "cylinders.cylinder_containing",
    ),
    "overlap": ("cylinders.adjacent_overlap", "cylinders.overlap_is_cylinder"),
    "census": ("repcensus.enumerate_representations", "repcensus.count_prefixes", "numerals.is_rs_rational"),
    "classify": ("repcensus.classify", "projector.levelset_classify"),
    "feval": (
        "projector.f_eval",
        "projector.canonical_base_rep",
        "projector.is_binary_point",
        "projector.check_functional_eq",
    ),
    "jumps": ("projector.jump_at", "projector.one_sided_gap"),
    "witness": ("projector.monotonicity_witness",),
    "graph": ("projector.graph_sample", "projector.box_count_estimate"),
    "ifs": ("projector.ifs_maps",),
    "integral": ("projector.integral_exact", "projector.integral_estimate"),
    "variation": ("projector.variation_lower_bound",),
    "dims": (
        "projector.self_affine_dimension",
        "repcensus.unique_set_dimension",
        "repcensus.cantor_levelset_dimension",
    ),
    "automaton": ("repcensus.build_automaton",),
}


@dataclass
class CliConfig:
    s: int = 2
    r: int = 3
    max_depth: int = 100_000
    max_sample_exponent: int = 12
    max_states: int = 200_000
    seed: int = 0
    format: str = "json"

    def validate(self) -> CliConfig:
        for name in ("max_depth", "max_sample_exponent", "max_states"):
            if getattr(self, name) <= 0:
                raise UsageError(f"config {name} must be positive")
        if not 0 <= self.seed < 2**64:
            raise UsageError("seed must be a 64-bit natural")
        if self.format not in FORMATS:
            raise UsageError(f"unknown format {self.format!r}")
        Params(self.s, self.r)
        return self


def load_config(path: str | os.PathLike | None) -> CliConfig:
    """Read a flat ``key = value`` file; ``#`` starts a comment."""
    cfg = CliConfig()
    if path is None:
        return cfg.validate()
    types = {f.name: f.type for f in dataclasses.fields(CliConfig)}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or key not in types:
            raise UsageError(f"{path}:{lineno}: bad config line {raw!r}")
        try:
            setattr(cfg, key, value if types[key] == "str" else int(value))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: {key} needs an integer") from None
    return cfg.validate()


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _digits(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split())
    except ValueError:
        raise UsageError(f"malformed digit word {text!r}") from None


def _build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--s", type=int)
    common.add_argument("--r", type=int)
    common.add_argument("--format", choices=FORMATS)
    common.add_argument("--seed", type=int)
    common.add_argument("--config")

    parser = _Parser(prog="redundant-radix", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = add("expand", "digits of x by the step-by-step algorithm")
    p.add_argument("--x", required=True)
    p.add_argument("--policy", choices=numerals.POLICIES, default="greedy")
    p.add_argument("--depth", type=int, default=16)
    p.add_argument("--periodic", action="store_true", help="full eventually periodic expansion")
    p.add_argument("--admissible", action="store_true", help="only list the admissible first digits")

    p = add("value", "exact value of a digit stream")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--rep", help='periodic form, e.g. "0 1 (3)"')
    g.add_argument("--digits", help="finite word, combined with --remainder")
    p.add_argument("--remainder", default="0", help="scaled remainder left after --digits")
    p.add_argument("--base", type=int)
    p.add_argument("--reflect", action="store_true")

    add("pairs", "interchangeable digit pairs")
    add("chains", "chains of mutually interchangeable pairs")

    p = add("cylinder", "cylinder intervals")
    p.add_argument("--base", default="")
    p.add_argument("--other", help="second base: test whether the cylinders coincide")
    p.add_argument("--children", action="store_true")
    p.add_argument("--x", help="cylinder of rank --rank containing x")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--policy", choices=("greedy", "lazy", "random"), default="greedy")

    p = add("overlap", "overlap of sibling cylinders")
    p.add_argument("--base", default="")
    p.add_argument("--digit", type=int)

    p = add("census", "all representations of x")
    p.add_argument("--x", required=True)
    p.add_argument("--max-count", type=int, default=20)
    p.add_argument("--max-preperiod", type=int)
    p.add_argument("--prefixes", type=int, help="count admissible prefixes of this length")
    p.add_argument("--rs-rational", action="store_true")

    p = add("classify", "cardinality of the representation set / level set")
    p.add_argument("--x", required=True)
    p.add_argument("--levelset", action="store_true")

    p = add("feval", "the digit projection f")
    p.add_argument("--x", required=True)
    p.add_argument("--digit", type=int, help="also check the functional equation for this digit")

    p = add("jumps", "jump of f at a point with two base-(r+1) expansions")
    p.add_argument("--x", required=True)
    p.add_argument("--k", type=int, default=40)

    p = add("witness", "points where f rises then falls")
    p.add_argument("--base", default="")

    p = add("graph", "exact samples of the graph of f")
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--box", help="comma separated grid exponents for box counting")

    add("ifs", "the affine maps generating the graph")

    p = add("integral", "integral of f over [0,1]")
    p.add_argument("--n", type=int, help="also give the left Riemann sum at this depth")

    p = add("variation", "lower bound on the variation of f")
    p.add_argument("--n", type=int, default=10)

    add("dims", "closed-form dimension values")

    p = add("automaton", "remainder automaton of x")
    p.add_argument("--x", required=True)
    return parser


def _dims_json(fn: Callable[[Params], repcensus.Dimension], params: Params):
    try:
        return fn(params).to_json()
    except RegimeError:
        return "regime_error"


def _rep_json(rep: PeriodicRep) -> dict:
    return {"rep": str(rep), "preperiod": list(rep.preperiod), "period": list(rep.period)}


def _cmd_expand(a, params, cfg):
    x = parse_rational(a.x)
    if a.admissible:
        return {"x": format_rational(x), "digits": list(numerals.admissible_digits(x, params))}
    if a.periodic:
        rep = numerals.expand_periodic(x, params, a.policy)
        return {"x": format_rational(x), **_rep_json(rep)}
    if a.depth > cfg.max_depth:
        raise BudgetError(f"depth {a.depth} exceeds max_depth {cfg.max_depth}")
    word, rem = numerals.expand(x, params, a.policy, a.depth, seed=cfg.seed)
    return {"digits": list(word), "remainder": format_rational(rem)}


def _cmd_value(a, params, cfg):
    base = a.base or params.s
    if a.rep is not None:
        rep = PeriodicRep.parse(a.rep, params.r)
        if a.reflect:
            rep = numerals.reflect(rep, params)
        return {"rep": str(rep), "value": format_rational(numerals.value_of(rep, base))}
    word = _digits(a.digits)
    if a.reflect:
        raise UsageError("--reflect needs --rep")
    rem = parse_rational(a.remainder)
    value = numerals.word_value(word, base) + rem / Fraction(base) ** len(word)
    return {"digits": list(word), "value": format_rational(value)}


def _cmd_pairs(a, params, cfg):
    pairs = numerals.interchangeable_pairs(params)
    if a.format == "text":
        return "\n".join(map(str, pairs)) + "\n"
    if a.format == "csv":
        return "a,b,c,d\n" + "".join(f"{p.left[0]},{p.left[1]},{p.right[0]},{p.right[1]}\n" for p in pairs)
    return {"count": len(pairs), "pairs": [[list(p.left), list(p.right)] for p in pairs]}


def _cmd_chains(a, params, cfg):
    chains = numerals.substitution_chains(params)
    if a.format == "text":
        return "".join("<->".join(f"({x},{y})" for x, y in c) + "\n" for c in chains)
    return {"count": len(chains), "chains": [[list(p) for p in c] for c in chains]}


def _cylinder_json(c: cylinders.Cylinder) -> dict:
    iv = cylinders.interval(c)
    return {"base": list(c.base), "rank": c.rank, "interval": iv.to_json(), "length": format_rational(iv.length)}


def _cmd_cylinder(a, params, cfg):
    if a.x is not None:
        c = cylinders.cylinder_containing(parse_rational(a.x), a.rank, params, a.policy, seed=cfg.seed)
    else:
        c = cylinders.Cylinder(params, _digits(a.base))
    doc = _cylinder_json(c)
    if a.other is not None:
        doc["same_as_other"] = cylinders.same_cylinder(c, cylinders.Cylinder(params, _digits(a.other)))
    if a.children:
        doc["children"] = [_cylinder_json(ch) for ch in cylinders.children(c)]
    return doc


def _cmd_overlap(a, params, cfg):
    doc: dict = {"p": cylinders.overlap_is_cylinder(params)}
    if a.digit is not None:
        c = cylinders.Cylinder(params, _digits(a.base))
        iv = cylinders.adjacent_overlap(c, a.digit)
        doc["overlap"] = iv.to_json()
        doc["length"] = format_rational(iv.length)
        doc["ratio_to_parent"] = format_rational(iv.length / cylinders.interval(c).length)
    return doc


def _cmd_census(a, params, cfg):
    x = parse_rational(a.x)
    repcensus.build_automaton(x, params, cfg.max_states)
    doc: dict = {"x": format_rational(x)}
    if a.prefixes is not None:
        if a.prefixes > cfg.max_depth:
            raise BudgetError(f"prefix length {a.prefixes} exceeds max_depth {cfg.max_depth}")
        doc["prefix_length"] = a.prefixes
        doc["prefix_count"] = repcensus.count_prefixes(x, params, a.prefixes)
    if a.rs_rational:
        ok, witness = numerals.is_rs_rational(x, params)
        doc["rs_rational"] = ok
        doc["witness"] = str(witness) if witness else None
    if a.prefixes is None and not a.rs_rational:
        reps, complete = repcensus.enumerate_representations(x, params, a.max_count, a.max_preperiod)
        doc["representations"] = [str(rep) for rep in reps]
        doc["complete"] = complete
    return doc


def _cmd_classify(a, params, cfg):
    x = parse_rational(a.x)
    repcensus.build_automaton(x, params, cfg.max_states)
    if a.levelset:
        ls = projector.levelset_classify(x, params)
        return {"y0": format_rational(x), "class": str(ls.cardinality), "period_r_tail": ls.period_r_tail}
    return {"x": format_rational(x), "class": str(repcensus.classify(x, params))}


def _cmd_feval(a, params, cfg):
    x = parse_rational(a.x)
    doc = {
        "x": format_rational(x),
        "digits": str(projector.canonical_base_rep(x, params)),
        "f": format_rational(projector.f_eval(x, params)),
        "binary_rank": projector.is_binary_point(x, params),
    }
    if a.digit is not None:
        doc["functional_eq"] = projector.check_functional_eq(a.digit, x, params)
    return doc


def _cmd_jumps(a, params, cfg):
    x = parse_rational(a.x)
    jump = projector.jump_at(x, params)
    gap = projector.one_sided_gap(x, params, a.k)
    return {
        "x": format_rational(x),
        "rank": projector.is_binary_point(x, params),
        "jump": format_rational(jump),
        "k": a.k,
        "gap": format_rational(gap),
        "difference": format_rational(jump - gap),
    }


def _cmd_witness(a, params, cfg):
    w = projector.monotonicity_witness(_digits(a.base), params)
    doc = {k: format_rational(v) for k, v in w._asdict().items()}
    doc["signs"] = ["+" if w.f2 > w.f1 else "-", "+" if w.f3 > w.f2 else "-"]
    return doc


def _cmd_graph(a, params, cfg):
    if a.n > cfg.max_sample_exponent:
        raise BudgetError(f"n={a.n} exceeds max_sample_exponent {cfg.max_sample_exponent}")
    g = projector.graph_sample(params, a.n, budget=(params.r + 1) ** cfg.max_sample_exponent)
    if a.box:
        try:
            ks = [int(k) for k in a.box.split(",")]
        except ValueError:
            raise UsageError(f"malformed --box {a.box!r}") from None
        rows = projector.box_count_estimate(g, ks)
        if a.format == "csv":
            return "k,scale,count,slope\n" + "".join(
                f"{k},{sc!r},{c},{'' if sl is None else repr(sl)}\n" for k, (sc, c, sl) in zip(ks, rows)
            )
        return {"depth": a.n, "boxes": [{"k": k, "scale": sc, "count": c, "slope": sl} for k, (sc, c, sl) in zip(ks, rows)]}
    if a.format == "csv":
        return g.to_csv()
    return {"depth": a.n, "points": [[format_rational(x), format_rational(y)] for x, y in g.points]}


def _cmd_ifs(a, params, cfg):
    return {"maps": [m.to_json() for m in projector.ifs_maps(params)]}


def _cmd_integral(a, params, cfg):
    exact = projector.integral_exact(params)
    doc: dict = {"exact": format_rational(exact)}
    if a.n is not None:
        if a.n > cfg.max_sample_exponent:
            raise BudgetError(f"n={a.n} exceeds max_sample_exponent {cfg.max_sample_exponent}")
        est = projector.integral_estimate(params, a.n, budget=(params.r + 1) ** cfg.max_sample_exponent)
        doc.update(n=a.n, estimate=format_rational(est), error=float(exact - est))
    return doc


def _cmd_variation(a, params, cfg):
    if a.n > cfg.max_depth:
        raise BudgetError(f"n={a.n} exceeds max_depth {cfg.max_depth}")
    return {"n": a.n, "bound": format_rational(projector.variation_lower_bound(params, a.n))}


def _cmd_dims(a, params, cfg):
    return {
        "self_affine": _dims_json(projector.self_affine_dimension, params),
        "unique_set": _dims_json(repcensus.unique_set_dimension, params),
        "cantor_levelset": _dims_json(repcensus.cantor_levelset_dimension, params),
    }


def _cmd_automaton(a, params, cfg):
    aut = repcensus.build_automaton(parse_rational(a.x), params, cfg.max_states)
    if a.format == "dot":
        return aut.to_dot()
    return aut.to_json()


HANDLERS = {name: globals()[f"_cmd_{name}"] for name in COMMANDS}


def _render(doc, fmt: str, command: str) -> str:
    if isinstance(doc, str):
        return doc
    if fmt == "json":
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "text":
        return "".join(f"{k}: {json.dumps(v) if not isinstance(v, str) else v}\n" for k, v in doc.items())
    raise UsageError(f"format {fmt!r} not supported by {command!r}")


def run(argv: list[str], env: dict | None = None) -> tuple[int, str, str]:
    """Execute one command; returns ``(exit_code, stdout, stderr)``."""
    env = os.environ if env is None else env
    try:
        args = _build_parser().parse_args(argv)
        cfg = load_config(args.config or env.get(CONFIG_ENV))
        for key in ("s", "r", "seed", "format"):
            if getattr(args, key) is not None:
                setattr(cfg, key, getattr(args, key))
        cfg.validate()
        args.format = cfg.format
        params = Params(cfg.s, cfg.r)
        doc = HANDLERS[args.command](args, params, cfg)
        return 0, _render(doc, cfg.format, args.command), ""
    except SystemExit as exc:  # --help
        return int(exc.code or 0), "", ""
    except BudgetError as exc:
        return 3, "", _error("budget_exceeded", exc)
    except DomainError as exc:
        return 2, "", _error("domain_error", exc)
    except (UsageError, OSError) as exc:
        return 2, "", _error("usage_error", exc)


def _error(kind: str, exc: Exception) -> str:
    return json.dumps({"error": kind, "message": str(exc)}) + "\n"


def main(argv: list[str] | None = None) -> int:
    code, out, err = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
