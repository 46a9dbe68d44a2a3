"""``tridouble`` command line: key: value output, last line ``status: ...``."""

from __future__ import annotations

import argparse
import sys
from collections import Counter

from . import __version__
from .analysis import (BudgetExceeded, DEFAULT_BUDGET, coset_min_weight, min_weight_logical,
                       scan_weight, logical_search_matrix, packed_columns, _int_to_words,
                       t_gate_certificate)
from .codes import (CATALOG_NAMES, SelfDualCss, TriorthogonalCode, as_css, catalog,
                    format_code, is_k_orthogonal, load_code, validate)
from .decode import decode_shared, decoder_for, tri49_table, tri95_table
from .doubling import double, predicted_distance
from .gf2 import BitVec, nullspace, rank, same_rowspace


class CliError(Exception):
    pass


class Output:
    def __init__(self):
        self.lines: list[str] = []

    def kv(self, key: str, value) -> None:
        self.lines.append(f"{key}: {value}")

    def raw(self, text: str) -> None:
        self.lines.extend(text.rstrip("\n").split("\n"))


def _code_arg(args) -> str:
    name = args.code_opt or args.code
    if not name:
        raise CliError("a code name is required (positional or --code)")
    return name


def _tri(name: str) -> TriorthogonalCode:
    code = load_code(name)
    if not isinstance(code, TriorthogonalCode):
        raise CliError(f"{name} is not a triorthogonal code")
    return code


# subcommands ----------------------------------------------------------------------

def cmd_catalog(args, out: Output) -> str:
    name = args.code_opt or args.code
    if name is None:
        for n in CATALOG_NAMES:
            c = catalog(n)
            kind = "self-dual" if isinstance(c, SelfDualCss) else "triorthogonal"
            out.kv(n, f"[[{c.n},1,{c.d}]] {kind}")
        return "ok"
    out.raw(format_code(load_code(name)))
    return "ok"


def cmd_verify(args, out: Output) -> str:
    name = _code_arg(args)
    code = load_code(name)
    validate(code)
    out.kv("code", code.name)
    out.kv("n", code.n)
    full = code.full
    out.kv("rank", f"{rank(full)} of {full.nrows} rows")
    out.kv("2-orthogonal", is_k_orthogonal(full, 2))
    out.kv("3-orthogonal", is_k_orthogonal(full, 3))
    if isinstance(code, TriorthogonalCode):
        out.kv("x_stabilizers", code.b0.nrows)
        out.kv("z_stabilizers", code.complement.nrows)
        out.kv("complement_is_nullspace", same_rowspace(code.complement, nullspace(full)))
    else:
        out.kv("completion_rank", rank(code.e))
        out.kv("basis_complete", rank(full) + rank(code.e) == code.n)
    return "PASS"


def cmd_double(args, out: Output) -> str:
    if len(args.codes) != 2:
        raise CliError("double needs a self-dual code and a triorthogonal code")
    sd, tri = (load_code(c) for c in args.codes)
    if not isinstance(sd, SelfDualCss) or not isinstance(tri, TriorthogonalCode):
        raise CliError("double needs a self-dual code and a triorthogonal code, in that order")
    d = double(sd, tri)
    base = d.base
    out.kv("code", base.name)
    out.kv("n", base.n)
    out.kv("x_stabilizers", base.b0.nrows)
    out.kv("z_stabilizers", base.complement.nrows)
    out.kv("3-orthogonal", is_k_orthogonal(base.full, 3))
    out.kv("predicted_distance", predicted_distance(sd.d, tri.d))
    out.raw(format_code(base))
    return "ok"


def cmd_distance(args, out: Output) -> str:
    code = load_code(_code_arg(args))
    css = as_css(code)
    t = args.type
    max_w = css.n if args.max_weight is None else args.max_weight
    budget = int(args.budget)
    out.kv("code", code.name)
    out.kv("type", t)
    out.kv("max_weight", max_w)
    rep = min_weight_logical(css, t, max_w, budget=budget, threads=args.threads)
    out.kv("candidates", rep.candidates)
    if rep.distance is not None:
        out.kv("distance", rep.distance)
        out.kv("witness", rep.witness)
        return "ok"
    out.kv("distance", f"> {max_w}")
    if max_w < css.n:
        h, target = logical_search_matrix(css, t)
        cols = packed_columns(h)
        try:
            supp, spent = scan_weight(cols, _int_to_words(target, cols.shape[1]), max_w + 1,
                                      budget=budget, spent=rep.candidates, threads=args.threads)
        except BudgetExceeded as exc:
            out.kv(f"witness_at_{max_w + 1}", f"not searched ({exc})")
        else:
            found = BitVec.from_support(supp, css.n) if supp else "none"
            out.kv(f"witness_at_{max_w + 1}", found)
            out.kv("candidates_total", spent)
    if t == "X" and isinstance(code, TriorthogonalCode) and code.b0.nrows <= 26:
        out.kv("exact_x_distance", coset_min_weight(code))
    return "ok"


def cmd_tcert(args, out: Output) -> str:
    code = _tri(_code_arg(args))
    cert = t_gate_certificate(code)
    out.kv("code", code.name)
    out.kv("stabilizer_span", f"2^{code.b0.nrows}")
    out.kv("coset0_residues_mod8", sorted(cert.coset0_residues))
    out.kv("coset1_residues_mod8", sorted(cert.coset1_residues))
    out.kv("diagonal", cert.diagonal)
    out.kv("logical_gate", cert.describe())
    out.kv("order", cert.order)
    return "PASS" if cert.diagonal and cert.order == 8 else "FAIL"


def cmd_decode(args, out: Output) -> str:
    name = _code_arg(args)
    if args.syndrome is None:
        raise CliError("decode needs a syndrome as a 0/1 string")
    dec = decoder_for(name)
    s = BitVec.from_str(args.syndrome)
    if s.n != dec.nchecks:
        raise CliError(f"{name} syndromes have {dec.nchecks} bits, got {s.n}")
    if hasattr(dec, "n_sd"):
        plan = decode_shared(name, {args.type: s})
        corr = plan.correction(args.type)
        rule = plan.rule_fired[args.type]
    else:
        d = dec.decode(s.bits)
        corr, rule = BitVec(d.correction, dec.n), "table"
    out.kv("code", name)
    out.kv("type", args.type)
    out.kv("syndrome", s)
    out.kv("correction", corr)
    out.kv("weight", corr.weight)
    out.kv("rule_fired", rule)
    return "ok"


def cmd_tables(args, out: Output) -> str:
    name = _code_arg(args)
    if name == "tri49":
        rows, names = tri49_table(), ("color", "rm")
    elif name == "tri95":
        rows, names = tri95_table(), ("golay", "tri49")
    else:
        raise CliError("tables are available for tri49 and tri95")
    out.kv("code", name)
    out.kv("rows", len(rows))
    for r in rows:
        out.kv("row", r.line(*names))
    return "ok"


GADGETS = ("sd-to-doubled-measure", "doubled-to-sd-measure", "sd-to-doubled-cnot",
           "doubled-to-sd-cnot", "t-gadget", "magic-gadget")


def cmd_simulate(args, out: Output) -> str:
    from .sim import (STATES, convert_by_cnot, convert_by_measurement, magic_gadget,
                      parse_script, run_tableau, t_gadget)
    from .sim.conversions import S_ACTION, trial_seeds

    target = args.target
    if target is None:
        raise CliError(f"simulate needs a gadget ({', '.join(GADGETS)}) or a script file")
    seed = 0 if args.seed is None else args.seed
    out.kv("seed", seed)
    if target not in GADGETS:
        with open(target) as fh:
            script = parse_script(fh.read())
        initial = dict(kv.split("=", 1) for kv in args.input)
        res = run_tableau(script, initial, seed)
        for k in sorted(res.record):
            out.kv(f"record.{k}", res.record[k])
        for k in sorted(res.states):
            out.kv(f"state.{k}", res.states[k])
        out.kv("tableau_valid", res.tableau.check_valid())
        return "ok"

    states = [args.state] if args.state else list(STATES)
    trials = args.trials or 1
    out.kv("gadget", target)
    out.kv("trials", trials)
    mismatches = 0
    for st in states:
        want = S_ACTION[st] if target in ("t-gadget", "magic-gadget") else st
        outcomes: Counter = Counter()
        for ss in trial_seeds(seed + STATES.index(st), trials):
            if target == "t-gadget":
                run = t_gadget(st, ss)
            elif target == "magic-gadget":
                run = magic_gadget(st, ss)
            else:
                direction = "sd->doubled" if target.startswith("sd") else "doubled->sd"
                conv = convert_by_measurement if target.endswith("measure") else convert_by_cnot
                run = conv(direction, st, ss)
            outcomes[run.output] += 1
        bad = trials - outcomes[want]
        mismatches += bad
        out.kv(f"state {st}", f"expected {want}; " + ", ".join(f"{k}={v}" for k, v in sorted(outcomes.items())))
    out.kv("mismatches", mismatches)
    return "PASS" if mismatches == 0 else "FAIL"


def cmd_montecarlo(args, out: Output) -> str:
    from .sim import monte_carlo

    name = _code_arg(args)
    if (args.weight is None) == (args.rate is None):
        raise CliError("give exactly one of --weight and --rate")
    seed = 0 if args.seed is None else args.seed
    res = monte_carlo(name, args.type, weight=args.weight, rate=args.rate,
                      trials=args.trials or 1000, seed=seed, mode=args.mode,
                      exhaustive=args.exhaustive, threads=args.threads)
    for line in res.lines():
        out.raw(line)
    return "ok"


def cmd_costs(args, out: Output) -> str:
    from .resources import (CodeParams, CostModel, cnot_costs, concatenated_params,
                            load_overrides, qubit_costs)

    model = CostModel()
    if args.config:
        with open(args.config) as fh:
            model = load_overrides(fh.read())
    for k, v in sorted(model.changed().items()):
        out.kv(f"override.{k}", v)
    q, c = qubit_costs(model), cnot_costs(model)
    out.raw("\n".join(q.lines()))
    out.raw("\n".join(c.lines()))
    for outer, inner in (((23, 1, 7), (95, 1, 7)), ((7, 1, 3), (15, 1, 3))):
        p, t = concatenated_params(CodeParams(*outer), CodeParams(*inner))
        out.kv(f"concatenate {CodeParams(*outer)} x {CodeParams(*inner)}", f"{p}, corrects {t}")
    bad = q.mismatches() + c.mismatches()
    if bad:
        out.kv("mismatch", ", ".join(bad))
    return "ok" if not bad else "mismatch"


COMMANDS = {
    "catalog": cmd_catalog,
    "verify": cmd_verify,
    "double": cmd_double,
    "distance": cmd_distance,
    "tcert": cmd_tcert,
    "decode": cmd_decode,
    "tables": cmd_tables,
    "simulate": cmd_simulate,
    "montecarlo": cmd_montecarlo,
    "costs": cmd_costs,
}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--code", dest="code_opt", help="catalog name or code file")
    p.add_argument("--type", default="Z", choices=("X", "Z"), help="error type")
    p.add_argument("--max-weight", type=int)
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--rate", type=float)
    p.add_argument("--weight", type=int)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET)
    p.add_argument("--out", help="write output here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tridouble", description="Doubled triorthogonal codes toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "catalog": "list the built-in codes or print one",
        "verify": "check code invariants and k-orthogonality",
        "double": "double a self-dual code with a triorthogonal code",
        "distance": "exhaustive minimum-distance certification",
        "tcert": "weight-mod-8 certificate for transversal T",
        "decode": "decode a shared-stabilizer syndrome",
        "tables": "reproduce the decoder correction tables",
        "simulate": "run a conversion gadget or a script on the tableau simulator",
        "montecarlo": "code-capacity Monte Carlo",
        "costs": "qubit and CNOT cost comparison",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        _common(p)
        if name == "double":
            p.add_argument("codes", nargs="*", metavar="code")
        elif name == "simulate":
            p.add_argument("target", nargs="?", help=f"one of {', '.join(GADGETS)} or a script file")
            p.add_argument("--state", choices=("0", "1", "+", "-", "+i", "-i"))
            p.add_argument("--input", action="append", default=[], metavar="BLOCK=STATE")
        else:
            p.add_argument("code", nargs="?")
        if name == "decode":
            p.add_argument("syndrome", nargs="?")
        if name == "montecarlo":
            p.add_argument("--mode", default="shared", choices=("shared", "full"))
            p.add_argument("--exhaustive", action="store_true")
        if name == "costs":
            p.add_argument("--config", help="key=value overrides for the cost model")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1 or args.budget <= 0:
        parser.error("--threads and --budget must be positive")
    out = Output()
    try:
        status = COMMANDS[args.command](args, out)
    except (CliError, KeyError, ValueError, OSError, RuntimeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 1
    out.kv("status", status)
    text = "\n".join(out.lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if status in ("ok", "PASS") else 1


if __name__ == "__main__":
    raise SystemExit(main())
