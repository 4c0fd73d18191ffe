"""Berezin transform of a parsed expression."""
from qsu2.berezin import berezin, check_caps, extended_berezin
from qsu2.config import Config
from qsu2.errors import ParameterError
from qsu2.handlers.inputs import element_text, parse_input, qparams
from qsu2.metric import berezin_error_report


def berezin_handler(params: dict, config: Config) -> dict:
    """beta_N^M(x), or beta_N^M(Phi(x)) with ``extended``; result serialized both ways.

    ``error_report`` adds |beta(x) - x| next to d(chi_N^M, eps) L(x).
    """
    big_n = int(params.get("N", 0))
    big_m = int(params.get("M", 0))
    if big_n < 0 or big_m < 0:
        raise ParameterError(f"N and M must be nonnegative, got N={big_n}, M={big_m}")
    check_caps(big_n, big_m, config.berezin.max_nm)
    x = parse_input(params.get("expr", ""), config)
    extended = bool(params.get("extended", False))
    y = extended_berezin(big_n, big_m, x) if extended else berezin(big_n, big_m, x)
    data = {
        "N": big_n,
        "M": big_m,
        "q": config.algebra.q,
        "extended": extended,
        "input": element_text(x),
        "result": element_text(y),
        "element": y.to_dict(),
    }
    if params.get("error_report"):
        seed = params.get("seed")
        data["error_report"] = berezin_error_report(big_n, big_m, x, qparams(config), config=config,
                                                    seed=None if seed is None else int(seed))
    return data
