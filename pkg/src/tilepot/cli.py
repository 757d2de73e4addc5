"""Command-line front end: ``tilepot <subcommand> ...``.

Every subcommand produces a status (ok, no, indeterminate or error), a
payload and a list of diagnostics. ``--json`` prints them as one JSON
object; otherwise a short text summary is printed. Exit codes are 0 for
ok, 1 for no, 2 for errors and 3 for indeterminate answers.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetExhausted, DegreesOfFreedomError, TilepotError
from .graph import generate, load_graph
from .pot import load_pot, render_pot
from .realize import DEFAULT_BUDGET, default_budget, enumerate_realizable, find_realization
from .reduction import prp_pot, srp_pot, subdivided_target
from .registry import results_registry, verify
from .scenario import FAILS, HOLDS, check_scenario, search_optimum
from .spectrum import construction_matrix, min_order, spectrum

OK, NO, INDETERMINATE, ERROR = "ok", "no", "indeterminate", "error"
EXIT_CODES = {OK: 0, NO: 1, ERROR: 2, INDETERMINATE: 3}


@dataclass
class CommandResult:
    status: str
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)
    text: str = ""

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def to_json(self) -> dict:
        return {"status": self.status, **self.payload, "diagnostics": list(self.diagnostics)}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _budget(args) -> int:
    return args.budget if args.budget is not None else default_budget()


def _exhausted(exc: BudgetExhausted, **payload) -> CommandResult:
    return CommandResult(INDETERMINATE, payload, [str(exc)], f"indeterminate: {exc}")


# --------------------------------------------------------------------------
# subcommands


def _cmd_spectrum(args) -> CommandResult:
    pot = load_pot(args.pot)
    sol = spectrum(pot)
    payload = {
        "pot": pot.to_json(),
        "matrix": construction_matrix(pot).to_json(),
        "spectrum": sol.to_json(),
    }
    if not sol.consistent:
        return CommandResult(NO, payload, ["construction system has no solution"], "no spectrum")
    lines = [f"free variables: {sol.free_count}"]
    names = ["r%d" % (i + 1) for i in range(len(pot))]
    for i, c in enumerate(sol.constants):
        terms = [str(c)]
        for k, vec in enumerate(sol.basis):
            if vec[i]:
                terms.append(f"({vec[i]})*t{k + 1}")
        lines.append(f"{names[i]} = " + " + ".join(terms))
    return CommandResult(OK, payload, text="\n".join(lines))


def _cmd_min_order(args) -> CommandResult:
    pot = load_pot(args.pot)
    sol = spectrum(pot)
    try:
        wits = min_order(pot, args.max, fallback=args.fallback)
    except DegreesOfFreedomError as exc:
        return CommandResult(INDETERMINATE, {"free_count": exc.free_count, "witnesses": []}, [str(exc)],
                             f"indeterminate: {exc}")
    payload = {"free_count": sol.free_count, "witnesses": [w.to_json() for w in wits]}
    if not wits:
        return CommandResult(NO, payload, [f"no balanced count vector of order <= {args.max}"], "none")
    text = "\n".join(f"order {w.order}: counts {list(w.counts)}" for w in wits)
    return CommandResult(OK, payload, text=text)


def _cmd_realize(args) -> CommandResult:
    pot, g = load_pot(args.pot), load_graph(args.graph)
    try:
        cert = find_realization(pot, g, _budget(args))
    except BudgetExhausted as exc:
        return _exhausted(exc, certificate=None)
    if cert is None:
        return CommandResult(NO, {"certificate": None}, text="not realizable")
    text = "realized; tiles per vertex: " + " ".join(str(t) for t in cert.tile_of)
    return CommandResult(OK, {"certificate": cert.to_json()}, text=text)


def _realized_json(r) -> dict:
    return {"graph": r.graph.to_json(), "certificate": r.certificate.to_json()}


def _cmd_enumerate(args) -> CommandResult:
    pot = load_pot(args.pot)
    counts = [int(x) for x in args.counts.split(",")] if args.counts else None
    try:
        found = enumerate_realizable(pot, args.order, not args.all_components, counts, _budget(args))
    except BudgetExhausted as exc:
        return _exhausted(
            exc,
            graphs=[_realized_json(r) for r in exc.partial],
            explored_counts=[list(c) for c in exc.explored],
        )
    payload = {"graphs": [_realized_json(r) for r in found]}
    if not found:
        return CommandResult(NO, payload, text="no graphs")
    text = "\n".join(
        f"#{i}: {r.graph.n} vertices, edges {[tuple(e) for e in r.graph.edges]}" for i, r in enumerate(found)
    )
    return CommandResult(OK, payload, text=f"{len(found)} isomorphism classes\n{text}")


def _cmd_scenario(args) -> CommandResult:
    pot, g = load_pot(args.pot), load_graph(args.graph)
    rep = check_scenario(pot, g, args.level, budget=_budget(args), fallback=args.fallback)
    status = OK if rep.status == HOLDS else NO if rep.status == FAILS else INDETERMINATE
    diags = [rep.reason] if rep.reason else []
    text = f"scenario {args.level}: {rep.status}"
    if rep.violation:
        text += f" ({rep.violation['kind']})"
    return CommandResult(status, rep.to_json(), diags, text)


def _cmd_search(args) -> CommandResult:
    g = load_graph(args.graph)
    res = search_optimum(
        g, args.quantity, args.level, max_tiles=args.max_tiles, max_bonds=args.max_bonds,
        budget=_budget(args), strategy=args.strategy,
    )
    payload = res.to_json()
    diags = []
    if res.explored.get("budget_exhausted"):
        diags.append("budget exhausted during search")
    if res.exact:
        return CommandResult(OK, payload, diags, f"{res.quantity}{res.scenario} = {res.upper}\n"
                             f"witness: {render_pot(res.witness_pot)}")
    limit = res.explored["max_tiles"] if res.quantity == "T" else res.explored["bond_types_searched"]
    if res.upper is None and res.lower > limit and not diags:
        return CommandResult(NO, payload, ["no pot within the search limits"], "no pot within limits")
    bound = f"{res.lower}..{res.upper if res.upper is not None else '?'}"
    return CommandResult(INDETERMINATE, payload, diags, f"{res.quantity}{res.scenario} in {bound}")


def _cmd_graph(args) -> CommandResult:
    fam = args.family
    if args.rows is not None or args.cols is not None:
        if args.rows is None or args.cols is None:
            raise _UsageError("--rows and --cols go together")
        g = generate(fam, args.rows, args.cols)
    elif args.size is not None:
        g = generate(fam, args.size)
    else:
        g = generate(fam)
    data = g.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(data) + "\n")
    return CommandResult(OK, {"graph": data}, text=json.dumps(data))


def _cmd_reduce(args) -> CommandResult:
    g = load_graph(args.graph)
    art = prp_pot(g) if args.variant == "prp" else srp_pot(g)
    Path(args.out).write_text(render_pot(art.pot) + "\n")
    payload = {
        "variant": art.variant,
        "tiles": len(art.pot),
        "bond_types": len(art.pot.symbols),
        "target_order": art.target_order,
        "pot_file": args.out,
    }
    if args.emit_target:
        target = subdivided_target(g, args.variant)
        Path(args.emit_target).write_text(json.dumps(target.to_json()) + "\n")
        payload["target_file"] = args.emit_target
    text = f"{art.variant}: {len(art.pot)} tiles, target order {art.target_order}, written to {args.out}"
    return CommandResult(OK, payload, text=text)


def _cmd_registry(args) -> CommandResult:
    entries = results_registry()
    rows = []
    if args.verify:
        results = verify(include_slow=args.include_slow, budget=_budget(args))
    else:
        results = [(e, {"status": "unverified"}) for e in entries]
    for e, r in results:
        rows.append({**e.to_json(), **{"result": r["status"]}, **{k: v for k, v in r.items() if k != "status"}})
    status = OK
    if args.verify:
        counts = {}
        for r in rows:
            counts[r["result"]] = counts.get(r["result"], 0) + 1
        if counts.get("fail"):
            status = NO
        elif counts.get("indeterminate"):
            status = INDETERMINATE
    width = max(len(e.label) for e in entries)
    text = "\n".join(f"{e.label:<{width}}  {r['status']}" for e, r in results)
    return CommandResult(status, {"entries": rows}, text=text)


# --------------------------------------------------------------------------
# argument parsing


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tilepot", description="Pots of branched tiles: spectra, realizations and searches.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        sp.set_defaults(func=fn)
        sp.add_argument("--json", action="store_true", help="print one JSON object on standard output")
        sp.add_argument(
            "--budget", type=int, default=None,
            help=f"backtracking node budget (default {DEFAULT_BUDGET}, or TILEPOT_BUDGET)",
        )
        return sp

    sp = add("spectrum", _cmd_spectrum, "construction matrix and parametrized spectrum of a pot")
    sp.add_argument("--pot", required=True)

    sp = add("min-order", _cmd_min_order, "smallest orders with a balanced count vector")
    sp.add_argument("--pot", required=True)
    sp.add_argument("--max", type=int, required=True)
    sp.add_argument("--fallback", action="store_true", help="enumerate count vectors for 3+ free variables")

    sp = add("realize", _cmd_realize, "search for a realization of a graph by a pot")
    sp.add_argument("--pot", required=True)
    sp.add_argument("--graph", required=True)

    sp = add("enumerate", _cmd_enumerate, "all graphs of an order realized by a pot, up to isomorphism")
    sp.add_argument("--pot", required=True)
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--all-components", action="store_true", help="include disconnected graphs")
    sp.add_argument("--counts", help="restrict to one count vector, comma separated")

    sp = add("scenario", _cmd_scenario, "check a pot against scenario 1, 2 or 3 for a graph")
    sp.add_argument("--level", type=int, choices=(1, 2, 3), required=True)
    sp.add_argument("--pot", required=True)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--no-fallback", dest="fallback", action="store_false",
                    help="report 3+ free variables as indeterminate instead of enumerating")

    sp = add("search", _cmd_search, "fewest tile types (T) or bond types (B) for a scenario")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--quantity", choices=("T", "B"), required=True)
    sp.add_argument("--level", type=int, choices=(1, 2, 3), required=True)
    sp.add_argument("--max-tiles", type=int, default=6)
    sp.add_argument("--max-bonds", type=int, default=4)
    sp.add_argument("--strategy", choices=("auto", "designs", "pots"), default="auto")

    sp = add("graph", _cmd_graph, "generate a graph from a named family as JSON")
    sp.add_argument("--family", required=True)
    sp.add_argument("--rows", type=int)
    sp.add_argument("--cols", type=int)
    sp.add_argument("--size", type=int, help="order for complete and cycle graphs")
    sp.add_argument("--out", help="also write the graph to this file")

    sp = add("reduce", _cmd_reduce, "build the 3-colouring reduction pot for a graph")
    sp.add_argument("--variant", choices=("prp", "srp"), required=True)
    sp.add_argument("--graph", required=True)
    sp.add_argument("--out", required=True)
    sp.add_argument("--emit-target", help="write the subdivided target graph here")

    sp = add("registry", _cmd_registry, "table of known optimal values")
    sp.add_argument("--verify", action="store_true", help="check witnesses and run the feasible searches")
    sp.add_argument("--include-slow", action="store_true")
    return p


def run(argv: list[str] | None = None) -> CommandResult:
    """Parse ``argv`` and execute; never raises for bad input."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return CommandResult(ERROR, {}, [str(exc)], str(exc))
    except SystemExit as exc:  # --help
        return CommandResult(OK if not exc.code else ERROR, {}, [], "")
    if args.command is None:
        usage = parser.format_usage().strip()
        return CommandResult(ERROR, {}, ["no subcommand given"], usage)
    if args.budget is not None and args.budget < 1:
        return CommandResult(ERROR, {}, ["--budget must be positive"], "--budget must be positive")
    try:
        return args.func(args)
    except _UsageError as exc:
        return CommandResult(ERROR, {}, [str(exc)], str(exc))
    except (TilepotError, ValueError, OSError, json.JSONDecodeError) as exc:
        return CommandResult(ERROR, {}, [f"{type(exc).__name__}: {exc}"], f"error: {exc}")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    res = run(argv)
    if "--json" in argv:
        # graph output stays a plain graph document so it can be read back
        if argv[0] == "graph" and res.status == OK:
            print(json.dumps(res.payload["graph"], sort_keys=True))
        else:
            print(json.dumps(res.to_json(), sort_keys=True))
    else:
        stream = sys.stdout if res.status != ERROR else sys.stderr
        if res.text:
            print(res.text, file=stream)
    return res.exit_code


if __name__ == "__main__":
    sys.exit(main())
