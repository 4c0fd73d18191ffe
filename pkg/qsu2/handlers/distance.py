"""Monge-Kantorovich distance between two states on a fuzzy band."""
import logging

from qsu2.berezin import check_caps, fuzzy_band, parse_state
from qsu2.config import Config
from qsu2.errors import ParameterError
from qsu2.handlers.inputs import qparams
from qsu2.metric import SEMINORMS, diameter_report, mk_distance

logger = logging.getLogger(__name__)


def distance_handler(params: dict, config: Config) -> dict:
    mu = parse_state(params.get("state1", ""))
    nu = parse_state(params.get("state2", ""))
    big_k = int(params.get("band", 1))
    fuzzy = int(params.get("fuzzy", 1))
    seminorm = params.get("seminorm", "tq")
    if big_k < 0 or fuzzy < 0:
        raise ParameterError(f"--band and --fuzzy must be nonnegative, got {big_k}, {fuzzy}")
    if seminorm not in SEMINORMS:
        raise ParameterError(f"unknown seminorm {seminorm!r}; choose from {list(SEMINORMS)}")
    check_caps(fuzzy, big_k, config.berezin.max_nm)
    for state in (mu, nu):
        if state.tag == "chi":
            check_caps(*state.params, config.berezin.max_nm)

    p = qparams(config)
    band = fuzzy_band(fuzzy, 0 if seminorm == "podles" else big_k, p.q)
    seed = params.get("seed")
    result = mk_distance(mu, nu, band, p, config, None if seed is None else int(seed), seminorm=seminorm)
    if not result.dominates:
        logger.warning("optimizer value %.6g below random search %.6g", result.value, result.random_search)
    data = result.to_dict()
    data.update({"q": p.q, "t": p.t, "band": big_k, "fuzzy": fuzzy, "seminorm": seminorm,
                 "basis_dimension": band.dimension})
    if params.get("diameter"):
        data["diameter"] = diameter_report(p, band, config, None if seed is None else int(seed))
    return data
