"""
app.py

This module contains the TeamPref application class which implements the
command line interface, centered around the run() method.

Every subcommand writes exactly one 'RESULT:' line to stdout, optionally
followed by 'WITNESS:' lines, and exits 0 (true/holds), 1 (false/fails)
or 2 (usage or validation error, reported on stderr as 'ERROR: ...').

Created on 17 Oct 2026

@author: teampref contributors
"""

import logging
import sys
from argparse import ArgumentParser
from json import JSONDecodeError, load

from teampref._version import __version__
from teampref.circuits import build_lex_circuit, print_netlist
from teampref.defaults import DEFAULT_CONFIG
from teampref.exceptions import TeamPrefError
from teampref.formula import parse
from teampref.globals import (
    CANON_KINDS,
    CLASSICAL,
    CONFIGFILE,
    EXIT_ERROR,
    EXIT_FALSE,
    EXIT_TRUE,
    HUMAN,
    LEX,
    MACHINE,
    NONSTRICT,
    OR_RULE,
    ORDER_GENERIC,
    ORDER_RLEX,
    RLEX,
    STAR,
    STRICT,
    SYSTEM_C,
    SYSTEM_P,
    TRIANGLE,
)
from teampref.prefmodel import (
    entails,
    format_model,
    load_model,
    w_circ_star,
    w_pq,
    w_sub,
    w_sup,
)
from teampref.properties import (
    build_corpus,
    check_or,
    check_star_corpus,
    check_system_c,
    check_system_p,
    check_triangle,
    or_counterexample,
)
from teampref.scenarios import SCENARIOS, run_scenario
from teampref.succinct import load_succinct_model, succ_entails
from teampref.teams import eval_team, format_team, models_of, parse_team

log = logging.getLogger(__name__)

PROPERTIES = (TRIANGLE, STAR, SYSTEM_C, SYSTEM_P, OR_RULE)


class TeamPref:
    """
    Main application class.
    """

    def __init__(self, configfile=CONFIGFILE, stdout=None, stderr=None):
        """
        Constructor
        """

        self.configfile = configfile
        self.config = self._read_config(configfile)
        self.stdout = stdout if stdout is not None else sys.stdout
        self.stderr = stderr if stderr is not None else sys.stderr
        self.output = MACHINE

    def _read_config(self, configfile):
        """
        Read guard settings from config file.
        If file cannot be read, return default values.
        """

        config = dict(DEFAULT_CONFIG)
        try:
            with open(configfile, "r", encoding="UTF-8") as infile:
                config.update(load(infile))
        except (OSError, JSONDecodeError):
            pass
        return config

    def _parser(self):
        """
        Build the argument parser.
        """

        common = ArgumentParser(add_help=False)
        common.add_argument("--output", choices=(MACHINE, HUMAN), default=MACHINE)
        common.add_argument("--config", help="JSON config file")
        common.add_argument("--log-level", help="e.g. DEBUG, INFO, WARNING")
        common.add_argument("--max-vars", type=int)
        common.add_argument("--max-states", type=int)

        parser = ArgumentParser(
            prog="teampref",
            description="Preferential entailment for propositional dependence logic",
        )
        parser.add_argument("--version", action="version", version=__version__)
        sub = parser.add_subparsers(dest="command", required=True)

        cmd = sub.add_parser("mc", parents=[common], help="team model checking")
        cmd.add_argument("--vars", nargs="+", required=True)
        group = cmd.add_mutually_exclusive_group(required=True)
        group.add_argument("--team", help="team literal, e.g. 100,010 or -")
        group.add_argument("--team-file", help="file holding a team literal")
        cmd.add_argument("--formula", required=True)

        cmd = sub.add_parser("models", parents=[common], help="all team models")
        cmd.add_argument("--vars", nargs="+", required=True)
        cmd.add_argument("--formula", required=True)

        cmd = sub.add_parser("entail", parents=[common], help="preferential entailment")
        cmd.add_argument("--model", required=True)
        cmd.add_argument("--lhs", required=True)
        cmd.add_argument("--rhs", required=True)
        cmd.add_argument("--verbose", action="store_true", help="list minimal states")

        cmd = sub.add_parser(
            "succ-entail", parents=[common], help="succinct entailment"
        )
        cmd.add_argument("--model", required=True)
        cmd.add_argument("--lhs", required=True)
        cmd.add_argument("--rhs", required=True)
        cmd.add_argument(
            "--algo", choices=(ORDER_GENERIC, ORDER_RLEX), default=ORDER_GENERIC
        )
        cmd.add_argument("--verbose", action="store_true", help="list minimal states")

        cmd = sub.add_parser("verify", parents=[common], help="property verification")
        cmd.add_argument("--model", required=True)
        cmd.add_argument("--property", choices=PROPERTIES, required=True)
        self._corpus_arguments(cmd)
        cmd.add_argument("--strict", action="store_true", help="nonempty subteams only")

        cmd = sub.add_parser(
            "counterexample-or", parents=[common], help="(Or) counterexample"
        )
        cmd.add_argument("--model", required=True)

        cmd = sub.add_parser("canon", parents=[common], help="canonical model file")
        cmd.add_argument("--kind", choices=CANON_KINDS, required=True)
        cmd.add_argument("--vars", nargs="+", default=["p"])
        cmd.add_argument("--out")

        cmd = sub.add_parser("gen-lex", parents=[common], help="lex circuit netlist")
        cmd.add_argument("--n", type=int, required=True)
        cmd.add_argument("--variant", choices=(LEX, RLEX), default=LEX)
        strictness = cmd.add_mutually_exclusive_group()
        strictness.add_argument(
            "--strict", dest="strictness", action="store_const", const=STRICT
        )
        strictness.add_argument(
            "--nonstrict", dest="strictness", action="store_const", const=NONSTRICT
        )
        cmd.set_defaults(strictness=STRICT)
        cmd.add_argument("--out")

        cmd = sub.add_parser(
            "repro", parents=[common], help="reproduce a named scenario"
        )
        cmd.add_argument(
            "--example", choices=sorted(SCENARIOS) + ["all"], required=True
        )
        return parser

    @staticmethod
    def _corpus_arguments(cmd):
        cmd.add_argument("--depth", type=int)
        cmd.add_argument("--theta", action="store_true", help="add every Theta_X")
        cmd.add_argument("--no-dep", action="store_true", help="PL formulas only")
        cmd.add_argument("--seed", type=int, default=0)

    def _configure(self, args):
        """
        Apply --config, --log-level and guard flags for this invocation.
        """

        if args.config:
            self.config = self._read_config(args.config)
        if args.max_vars is not None:
            self.config["max_vars"] = args.max_vars
        if args.max_states is not None:
            self.config["max_states"] = args.max_states
        self.output = args.output
        level = (args.log_level or self.config["log_level"]).upper()
        if not isinstance(logging.getLevelName(level), int):
            level = "WARNING"
        logging.basicConfig(
            level=level,
            stream=self.stderr,
            format="%(levelname)s %(name)s: %(message)s",
        )
        logging.getLogger("teampref").setLevel(level)

    def _emit(self, result, witnesses=()):
        """
        Write the RESULT line and any WITNESS lines.
        """

        if self.output == MACHINE:
            print(f"RESULT: {result}", file=self.stdout)
            for witness in witnesses:
                print(f"WITNESS: {witness}", file=self.stdout)
        else:
            print(f"Result:  {result}", file=self.stdout)
            for witness in witnesses:
                print(f"Witness: {witness}", file=self.stdout)

    def run(self, argv=None):
        """
        Parse argv, run the subcommand and return the exit code.
        """

        try:
            args = self._parser().parse_args(argv)
        except SystemExit as err:
            return EXIT_ERROR if err.code else EXIT_TRUE
        self._configure(args)
        handler = getattr(self, "_cmd_" + args.command.replace("-", "_"))
        try:
            return handler(args)
        except (TeamPrefError, OSError) as err:
            log.debug("%s failed", args.command, exc_info=True)
            print(f"ERROR: {err}", file=self.stderr)
            return EXIT_ERROR

    def _cmd_mc(self, args):
        if args.team_file:
            with open(args.team_file, "r", encoding="utf-8") as infile:
                literal = infile.read().strip()
        else:
            literal = args.team
        team = parse_team(literal, args.vars)
        holds = eval_team(team, parse(args.formula), self.config["max_team_size"])
        self._emit("SAT" if holds else "UNSAT")
        return EXIT_TRUE if holds else EXIT_FALSE

    def _cmd_models(self, args):
        found = models_of(
            parse(args.formula),
            args.vars,
            self.config["max_vars"],
            self.config["max_team_size"],
        )
        self._emit(f"MODELS {len(found)}", [format_team(team) for team in found])
        return EXIT_TRUE

    def _emit_verdict(self, verdict, verbose):
        witnesses = []
        if verdict.witness is not None:
            witnesses.append(verdict.witness)
        if verbose:
            witnesses.append("minimal=" + ",".join(verdict.minimal_states))
        self._emit("ENTAILS" if verdict.holds else "NOT-ENTAILS", witnesses)
        return EXIT_TRUE if verdict.holds else EXIT_FALSE

    def _cmd_entail(self, args):
        model = load_model(args.model, self.config["max_states"])
        verdict = entails(model, parse(args.lhs), parse(args.rhs))
        return self._emit_verdict(verdict, args.verbose)

    def _cmd_succ_entail(self, args):
        model = load_succinct_model(args.model)
        verdict = succ_entails(
            model,
            parse(args.lhs),
            parse(args.rhs),
            args.algo,
            max_m_classical=self.config["succ_max_m_classical"],
            max_m_team=self.config["succ_max_m_team"],
            max_n_team=self.config["succ_max_n_team"],
        )
        return self._emit_verdict(verdict, args.verbose)

    def _cmd_verify(self, args):
        model = load_model(args.model, self.config["max_states"])
        if args.property == TRIANGLE:
            strict = args.strict or self.config["strict_triangle"]
            report = check_triangle(model, strict)
        else:
            corpus = build_corpus(
                model.domain,
                depth=self.config["corpus_depth"] if args.depth is None else args.depth,
                include_theta=args.theta,
                include_dep=not args.no_dep and model.mode != CLASSICAL,
                seed=args.seed,
                max_vars=self.config["max_vars"],
            )
            check = {
                STAR: check_star_corpus,
                SYSTEM_C: check_system_c,
                SYSTEM_P: check_system_p,
                OR_RULE: check_or,
            }[args.property]
            report = check(model, corpus)
        if report.holds:
            self._emit("HOLDS")
            return EXIT_TRUE
        self._emit("FAILS", [str(report)])
        return EXIT_FALSE

    def _cmd_counterexample_or(self, args):
        model = load_model(args.model, self.config["max_states"])
        triple = or_counterexample(model)
        if triple is None:
            self._emit("NONE")
            return EXIT_FALSE
        self._emit(
            "FOUND",
            [f"{name}={phi}" for name, phi in zip(("phi", "psi", "gamma"), triple)],
        )
        return EXIT_TRUE

    def _write_or_print(self, text, out):
        if out:
            with open(out, "w", encoding="utf-8") as outfile:
                outfile.write(text)
            self._emit(f"WRITTEN {out}")
        else:
            self._emit("WRITTEN -", text.splitlines())
        return EXIT_TRUE

    def _cmd_canon(self, args):
        guards = (self.config["max_vars"], self.config["max_states"])
        builders = {
            "sub": lambda: w_sub(args.vars, *guards),
            "sup": lambda: w_sup(args.vars, *guards),
            "pq": w_pq,
            "circstar": w_circ_star,
        }
        return self._write_or_print(format_model(builders[args.kind]()), args.out)

    def _cmd_gen_lex(self, args):
        if args.n < 1:
            raise TeamPrefError(f"--n must be positive, got {args.n}")
        circuit = build_lex_circuit(args.n, args.variant, args.strictness)
        return self._write_or_print(print_netlist(circuit), args.out)

    def _cmd_repro(self, args):
        names = sorted(SCENARIOS) if args.example == "all" else [args.example]
        passed = True
        stream = self.stdout if self.output == HUMAN else self.stderr
        for name in names:
            transcript = run_scenario(name)
            for line in transcript.lines:
                print(f"{name}: {line}", file=stream)
            passed = passed and transcript.passed
        self._emit("PASS" if passed else "FAIL")
        return EXIT_TRUE if passed else EXIT_FALSE
