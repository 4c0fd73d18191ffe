"""qsu2 command-line interface."""
import functools
import sys
from pathlib import Path

import click
from dotenv import load_dotenv

load_dotenv()

from qsu2.cache import DiskCache, LayeredStore  # noqa: E402
from qsu2.config import load_config  # noqa: E402
from qsu2.corep import reset_store  # noqa: E402
from qsu2.formatter import format_output  # noqa: E402
from qsu2.monitoring import setup_logging  # noqa: E402
from qsu2.router import VERSION, exit_status, run  # noqa: E402
from qsu2.validation.suites import SUITES  # noqa: E402


def common_options(fn):
    """Flags shared by every command; collected into ``opts``."""
    @click.option("--q", "q", type=float, default=None, help="Deformation parameter q in (0, 1]")
    @click.option("--t", "t", type=float, default=None, help="Deformation parameter t in (0, 1]")
    @click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), default=None,
                  help="Flat key=value config file")
    @click.option("--seed", type=int, default=None, help="Random seed for sampling and optimizer restarts")
    @click.option("--cache-dir", type=click.Path(file_okay=False), default=None, help="Corepresentation cache")
    @click.option("--log-level", default=None, type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"],
                                                                 case_sensitive=False))
    @click.option("--format", "fmt", default=None, type=click.Choice(["json", "table", "csv"]),
                  help="Output format (default: json, or the config file's format)")
    @click.option("-o", "--output", default=None, type=click.Path(dir_okay=False), help="Write output to a file")
    @functools.wraps(fn)
    def wrapper(q, t, config_path, seed, cache_dir, log_level, fmt, output, **kwargs):
        opts = {"q": q, "t": t, "config_path": config_path, "seed": seed, "cache_dir": cache_dir,
                "log_level": log_level, "fmt": fmt, "output": output}
        return fn(opts=opts, **kwargs)
    return wrapper


def _build_config(opts: dict):
    """Config file, then environment, then flags."""
    overrides = {}
    if opts["q"] is not None:
        overrides["algebra__q"] = opts["q"]
    if opts["t"] is not None:
        overrides["algebra__t"] = opts["t"]
    if opts["fmt"] is not None:
        overrides["output_format"] = opts["fmt"]
    config = load_config(opts["config_path"], **overrides)
    # sections with env overrides read the environment in __post_init__, so flags go on afterwards
    if opts["seed"] is not None:
        config.metric.seed = opts["seed"]
    if opts["cache_dir"] is not None:
        config.cache.directory = Path(opts["cache_dir"])
    if opts["log_level"] is not None:
        config.log.level = opts["log_level"].upper()
    return config


def _execute(command: str, params: dict, opts: dict):
    """Build config, dispatch, write the envelope, exit with its status."""
    try:
        config = _build_config(opts)
    except ValueError as e:
        click.echo(f"Error [INVALID_PARAMETER]: {e}", err=True)
        sys.exit(2)

    setup_logging(config.log.level)
    reset_store(LayeredStore(DiskCache(config.cache.directory) if config.cache.enabled else None))
    if opts["seed"] is not None:
        params["seed"] = opts["seed"]

    envelope = run(command, params, config)
    text = format_output(envelope, config.output_format)
    if opts["output"]:
        with open(opts["output"], "w", encoding="utf-8", newline="") as f:
            f.write(text if text.endswith("\n") else text + "\n")
        click.echo(f"Written to {opts['output']}", err=True)
    else:
        click.echo(text.rstrip("\n"))
    sys.exit(exit_status(envelope))


@click.group()
@click.version_option(version=VERSION, prog_name="qsu2")
def main():
    """qsu2 - quantum SU(2) with two-parameter Dirac operators and Berezin quantization."""
    pass


@main.command()
@click.option("--max-degree", default=3, type=int, show_default=True, help="Monomial degree bound k+l+m")
@click.option("--tolerance", default=None, type=float, help="Residual tolerance (default: algebra.assert_tol)")
@click.option("--suite", "suites", multiple=True, type=click.Choice(list(SUITES)),
              help="Suite to run; repeatable (default: all)")
@click.option("--samples", default=5, type=int, show_default=True, help="Random samples per sampled check")
@common_options
def check(max_degree, tolerance, suites, samples, opts):
    """Run identity suites. Example: qsu2 check --suite derV --q 0.8 --t 0.8"""
    params = {"max_degree": max_degree, "suites": list(suites), "samples": samples}
    if tolerance is not None:
        params["tolerance"] = tolerance
    _execute("check", params, opts)


@main.command()
@click.option("--nmax", default=4, type=int, show_default=True, help="Highest level n")
@common_options
def spectrum(nmax, opts):
    """Dirac block eigenvalues. Example: qsu2 spectrum --q 1 --t 1 --nmax 4 --format csv"""
    _execute("spectrum", {"nmax": nmax}, opts)


@main.command()
@click.option("--expr", required=True, help='Element, e.g. "b^2 * (b*)^2 + a"')
@common_options
def seminorm(expr, opts):
    """Seminorm and norm of an element. Example: qsu2 seminorm --expr "b + b*" """
    _execute("seminorm", {"expr": expr}, opts)


@main.command()
@click.option("--N", "big_n", default=0, type=int, show_default=True, help="Fuzzy level N")
@click.option("--M", "big_m", default=0, type=int, show_default=True, help="Band size M")
@click.option("--expr", required=True, help="Element to transform")
@click.option("--extended", is_flag=True, help="Project onto the Berezin target space first")
@click.option("--error-report", is_flag=True, help="Add |beta(x) - x| next to d(chi_N^M, eps) L(x)")
@common_options
def berezin(big_n, big_m, expr, extended, error_report, opts):
    """Berezin transform beta_N^M. Example: qsu2 berezin --N 1 --M 1 --expr "a" """
    _execute("berezin", {"N": big_n, "M": big_m, "expr": expr, "extended": extended,
                         "error_report": error_report}, opts)


@main.command()
@click.option("--state1", required=True, help="haar | counit | chi:N:M | podles:r | su2:ar,ai,br,bi")
@click.option("--state2", required=True, help="Second state, same forms")
@click.option("--band", "band", default=1, type=int, show_default=True, help="Band size K")
@click.option("--fuzzy", "fuzzy", default=1, type=int, show_default=True, help="Fuzzy level N of the test space")
@click.option("--seminorm", "seminorm_name", default="tq", type=click.Choice(["tq", "podles"]),
              show_default=True)
@click.option("--diameter", is_flag=True, help="Add the largest distance over a pool of states on the same band")
@common_options
def distance(state1, state2, band, fuzzy, seminorm_name, diameter, opts):
    """Monge-Kantorovich distance estimate. Example: qsu2 distance --state1 chi:2:2 --state2 counit"""
    _execute("distance", {"state1": state1, "state2": state2, "band": band, "fuzzy": fuzzy,
                          "seminorm": seminorm_name, "diameter": diameter}, opts)


@main.command()
@click.option("--sweep", required=True, help='Grid spec, e.g. "q=0.6:1.0:0.1,t=q"')
@click.option("--words", default="b", show_default=True, help="Comma-separated words in a, b, A (a*), B (b*)")
@click.option("--distance", "distance_spec", default=None, help="N,M,K: add d(chi_N^M, eps) on fuzzy_band(N, K)")
@common_options
def table(sweep, words, distance_spec, opts):
    """Continuity sweep over (t, q). Example: qsu2 table --sweep "q=0.6:1.0:0.1,t=q" --format csv"""
    _execute("table", {"sweep": sweep, "words": words, "distance": distance_spec}, opts)


@main.command()
@common_options
def info(opts):
    """Show version, commands and configuration."""
    _execute("info", {}, opts)


if __name__ == "__main__":
    main()
