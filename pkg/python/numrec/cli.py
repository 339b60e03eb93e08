"""Command-line interface for numrec."""

# Import built-in modules
from itertools import islice
import json
from pathlib import Path
import sys
from typing import Callable
from typing import Optional
from typing import TypeVar
from typing import Union

# Import third-party modules
import click
from pydantic import BaseModel
from pydantic import ValidationError

# Import local modules
from numrec import configure_logging
from numrec.__version__ import __version__
from numrec.ans import AbstractSystem
from numrec.ans import compute_bounds_ans
from numrec.ans import count_recurrence
from numrec.ans import decide_ans
from numrec.ans import rep_s
from numrec.ans import val_s
from numrec.automata import Dfa
from numrec.automata import format_word
from numrec.automata import iter_words
from numrec.automata import to_dot
from numrec.config import Config
from numrec.errors import NumrecError
from numrec.errors import PreconditionError
from numrec.hd0l import Hd0lVerdict
from numrec.hd0l import decide_hd0l
from numrec.linrec import Bounded
from numrec.linrec import LinearRecurrence
from numrec.linrec import n_growth_criterion
from numrec.linrec import reduce_recurrence
from numrec.linrec import residue_profile
from numrec.periodic import DecisionVerdict
from numrec.periodic import Inapplicable
from numrec.periodic import NotUltimatelyPeriodic
from numrec.positional import PositionalSystem
from numrec.positional import compute_bounds
from numrec.positional import decide
from numrec.positional import greedy_rep
from numrec.positional import val
from numrec.schemas import BoundsModel
from numrec.schemas import DfaModel
from numrec.schemas import EnumerationModel
from numrec.schemas import GrowthVerdictModel
from numrec.schemas import Hd0lVerdictModel
from numrec.schemas import IndexedWord
from numrec.schemas import MorphismModel
from numrec.schemas import ResidueProfileModel
from numrec.schemas import SystemModel
from numrec.schemas import VerdictModel
from numrec.schemas import dump
from numrec.schemas import load


EXIT_INAPPLICABLE = 1
EXIT_INPUT_ERROR = 2

INPUT_ERRORS = (NumrecError, ValidationError, json.JSONDecodeError, OSError)

R = TypeVar("R")

existing_file = click.Path(exists=True, dir_okay=False, path_type=Path)


def run_guarded(action: Callable[[], R]) -> R:
    """Run ``action``, turning input errors into exit code 2."""
    try:
        return action()
    except INPUT_ERRORS as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(EXIT_INPUT_ERROR)


def emit(ctx: click.Context, document: BaseModel, lines: list[str]) -> None:
    if ctx.obj.get("json"):
        click.echo(dump(document))
        return
    for line in lines:
        click.echo(line)


def load_system(path: Path) -> Union[PositionalSystem, AbstractSystem]:
    return load(SystemModel, path).build()


def system_recurrence(path: Path) -> LinearRecurrence:
    """Recurrence of a system file: the scale itself, or ``v(q_0)`` for an abstract system."""
    model = load(SystemModel, path)
    if model.recurrence is not None:
        return model.recurrence.to_recurrence()
    built = model.build()
    if isinstance(built, AbstractSystem):
        return count_recurrence(built).v_recurrence
    return built.recurrence


def make_config(max_period: Optional[int], max_depth: Optional[int], parallel: bool, certify: bool) -> Config:
    config = Config()
    if max_period is not None:
        config.max_period = max_period
    if max_depth is not None:
        config.max_depth = max_depth
    config.parallel = parallel
    config.certify_unbounded = certify
    return config


def describe(verdict: DecisionVerdict) -> str:
    if isinstance(verdict, Inapplicable):
        return f"inapplicable: {verdict.reason}"
    if isinstance(verdict, NotUltimatelyPeriodic):
        return f"not ultimately periodic (P={verdict.period_bound}, A={verdict.preperiod_bound})"
    return f"ultimately periodic: u={verdict.up.u or 'ε'} v={verdict.up.v}"


def deciding_options(func: Callable[..., None]) -> Callable[..., None]:
    func = click.option(
        "--certify",
        is_flag=True,
        help="Search for a verified period even when the growth hypotheses fail",
    )(func)
    func = click.option("--parallel", is_flag=True, help="Verify candidate periods in a thread pool")(func)
    func = click.option("--max-depth", type=click.IntRange(min=1), help="Depth of count tables [default: 64]")(func)
    func = click.option(
        "--max-period", type=click.IntRange(min=1), help="Largest candidate period examined [default: 4096]"
    )(func)
    return func


@click.group()
@click.version_option(version=__version__, prog_name="numrec")
@click.option("--verbose", "-v", is_flag=True, help="Enable verbose output")
@click.option("--json", "as_json", is_flag=True, help="Emit JSON documents instead of text")
@click.pass_context
def cli(ctx: click.Context, verbose: bool, as_json: bool) -> None:
    """Ultimate periodicity of sets recognized in numeration systems."""
    ctx.ensure_object(dict)
    ctx.obj["verbose"] = verbose
    ctx.obj["json"] = as_json
    configure_logging("DEBUG" if verbose else "WARNING")


@cli.command()
@click.option("--system", "system_path", type=existing_file, required=True, help="System JSON file")
@click.argument("n", type=click.IntRange(min=0))
@click.pass_context
def rep(ctx: click.Context, system_path: Path, n: int) -> None:
    """Print the representation of N."""

    def run() -> str:
        system = load_system(system_path)
        if isinstance(system, AbstractSystem):
            return format_word(rep_s(system, n))
        return format_word(greedy_rep(system, n))

    word = run_guarded(run)
    emit(ctx, EnumerationModel(words=[IndexedWord(index=n, word=word)]), [word])


@cli.command("val")
@click.option("--system", "system_path", type=existing_file, required=True, help="System JSON file")
@click.argument("word")
@click.pass_context
def value(ctx: click.Context, system_path: Path, word: str) -> None:
    """Print the value of WORD."""

    def run() -> int:
        system = load_system(system_path)
        if isinstance(system, AbstractSystem):
            return val_s(system, word)
        return val(system, word)

    n = run_guarded(run)
    emit(ctx, EnumerationModel(words=[IndexedWord(index=n, word=word)]), [str(n)])


@cli.command()
@click.option("--system", "system_path", type=existing_file, required=True, help="System JSON file")
@click.option("--modulus", "-m", type=click.IntRange(min=1), required=True, help="Modulus m")
@click.pass_context
def residues(ctx: click.Context, system_path: Path, modulus: int) -> None:
    """Print the preperiod and period of the scale modulo m."""
    profile = run_guarded(lambda: residue_profile(system_recurrence(system_path), modulus))
    lines = [
        f"modulus: {modulus}",
        f"preperiod: {', '.join(map(str, profile.preperiod_values))}",
        f"period: {', '.join(map(str, profile.period_values))}",
        f"recurring residues: {profile.recurring_count}",
    ]
    emit(ctx, ResidueProfileModel.of(profile), lines)


@cli.command()
@click.option("--system", "system_path", type=existing_file, required=True, help="System JSON file")
@click.pass_context
def criterion(ctx: click.Context, system_path: Path) -> None:
    """Check whether the number of recurring residues diverges."""
    verdict = run_guarded(lambda: n_growth_criterion(reduce_recurrence(system_recurrence(system_path))))
    lines = []
    for v in verdict.primes:
        if isinstance(v, Bounded):
            lines.append(f"p={v.prime}: Bounded (A = {v.a}, B = {v.b})")
        else:
            lines.append(f"p={v.prime}: Divergent")
    lines.append("overall: criterion satisfied" if verdict.overall else "overall: criterion fails")
    emit(ctx, GrowthVerdictModel.of(verdict), lines)


@cli.command()
@click.option("--system", "system_path", type=existing_file, required=True, help="System JSON file")
@click.option("--d", "states", type=click.IntRange(min=1), required=True, help="Number of automaton states")
@click.option("--sharp", is_flag=True, help="Use the sharpened period bound")
@click.pass_context
def bounds(ctx: click.Context, system_path: Path, states: int, sharp: bool) -> None:
    """Print the period and preperiod bounds for d-state automata."""

    def run() -> BoundsModel:
        model = load(SystemModel, system_path)
        if model.recurrence is not None:
            return BoundsModel.of(compute_bounds(model.recurrence.to_recurrence(), states, sharp))
        system = model.build()
        if isinstance(system, AbstractSystem):
            return BoundsModel.of(compute_bounds_ans(system, states, sharp))
        return BoundsModel.of(compute_bounds(system, states, sharp))

    result = run_guarded(run)
    lines = [
        f"threshold: {result.threshold}",
        *(f"p={p}: s={s}" for p, s in result.prime_exponents),
        f"max preperiod: {result.max_preperiod}",
        f"period bound P: {result.period_bound}",
        f"preperiod bound A: {result.preperiod_bound}",
    ]
    if result.c_bound is not None:
        lines.insert(1, f"c bound: {result.c_bound}")
    emit(ctx, result, lines)


@cli.command("decide")
@click.option("--system", "system_path", type=existing_file, required=True, help="System JSON file")
@click.option("--dfa", "dfa_path", type=existing_file, required=True, help="DFA JSON file")
@deciding_options
@click.pass_context
def decide_command(
    ctx: click.Context,
    system_path: Path,
    dfa_path: Path,
    max_period: Optional[int],
    max_depth: Optional[int],
    parallel: bool,
    certify: bool,
) -> None:
    """Decide whether the set recognized by a DFA is ultimately periodic."""
    config = make_config(max_period, max_depth, parallel, certify)

    def run() -> DecisionVerdict:
        system = load_system(system_path)
        x_dfa = load(DfaModel, dfa_path).to_dfa()
        if isinstance(system, AbstractSystem):
            return decide_ans(system, x_dfa, config)
        return decide(system, x_dfa, config)

    verdict = run_guarded(run)
    emit(ctx, VerdictModel.of(verdict), [describe(verdict)])
    if isinstance(verdict, Inapplicable):
        sys.exit(EXIT_INAPPLICABLE)


@cli.command("ans-enumerate")
@click.option("--system", "system_path", type=existing_file, required=True, help="Abstract system JSON file")
@click.option("--count", "-n", type=click.IntRange(min=0), default=25, show_default=True, help="Words to list")
@click.option("--start", type=click.IntRange(min=0), default=0, show_default=True, help="Index of the first word")
@click.pass_context
def ans_enumerate(ctx: click.Context, system_path: Path, count: int, start: int) -> None:
    """List the words of an abstract system in genealogical order."""

    def run() -> list[IndexedWord]:
        system = load_system(system_path)
        if not isinstance(system, AbstractSystem):
            raise PreconditionError("ans-enumerate needs an abstract system")
        words = islice(iter_words(system.language, start), count)
        return [IndexedWord(index=start + i, word=format_word(w)) for i, w in enumerate(words)]

    words = run_guarded(run)
    emit(ctx, EnumerationModel(words=words), [f"{w.index}\t{w.word or 'ε'}" for w in words])


@cli.command("hd0l-decide")
@click.argument("morphism_path", metavar="MORPHISM", type=existing_file)
@deciding_options
@click.pass_context
def hd0l_decide(
    ctx: click.Context,
    morphism_path: Path,
    max_period: Optional[int],
    max_depth: Optional[int],
    parallel: bool,
    certify: bool,
) -> None:
    """Decide whether the morphic word f(g^ω(a)) is ultimately periodic."""
    config = make_config(max_period, max_depth, parallel, certify)

    def run() -> Hd0lVerdict:
        model = load(MorphismModel, morphism_path)
        f, g = model.morphisms()
        return decide_hd0l(f, g, model.start, config)

    verdict = run_guarded(run)
    result = Hd0lVerdictModel.of(verdict)
    lines = [f"{letter}: {v.verdict.replace('_', ' ')}" for letter, v in result.letters.items()]
    overall = {True: "ultimately periodic", False: "not ultimately periodic", None: "undecided"}[result.overall]
    lines.append(f"overall: {overall}")
    if verdict.period is not None:
        lines.append(f"period: {verdict.period}")
    emit(ctx, result, lines)
    if any(v.verdict == "inapplicable" for v in result.letters.values()):
        sys.exit(EXIT_INAPPLICABLE)


@cli.command("export-dot")
@click.option("--dfa", "dfa_path", type=existing_file, help="DFA JSON file")
@click.option("--system", "system_path", type=existing_file, help="Export the language of a system instead")
@click.option("--name", default="dfa", show_default=True, help="Graph name")
def export_dot(dfa_path: Optional[Path], system_path: Optional[Path], name: str) -> None:
    """Write an automaton in Graphviz DOT format to stdout."""

    def run() -> Dfa:
        if (dfa_path is None) == (system_path is None):
            raise PreconditionError("give exactly one of --dfa and --system")
        if dfa_path is not None:
            return load(DfaModel, dfa_path).to_dfa()
        assert system_path is not None
        return load_system(system_path).language

    click.echo(to_dot(run_guarded(run), name), nl=False)


def main() -> None:
    """Main entry point for the CLI."""
    cli()


if __name__ == "__main__":
    main()
