"""
Seminorm and norm readings for a single element.

L_{t,q}(x) comes from the derivative's operator norm; ||x||_{t,q} combines the
grade-rescaled norms. The Podles seminorm is only defined on grade 0.
"""
from qsu2.algebra.grading import analytic_norm_tq
from qsu2.config import Config
from qsu2.dirac import seminorm_estimate, seminorm_podles
from qsu2.handlers.inputs import element_text, parse_input, qparams
from qsu2.repnorm import cstar_norm, norm_estimate


def seminorm_handler(params: dict, config: Config) -> dict:
    x = parse_input(params.get("expr", ""), config)
    p = qparams(config)
    seed = int(params.get("seed", config.metric.seed))
    cfg = config.repnorm

    lip = seminorm_estimate(x, p, cfg, seed)
    norm = norm_estimate(x, cfg, seed)
    norm_tq = analytic_norm_tq(x, p, lambda y: cstar_norm(y, cfg, seed))
    data = {
        "expr": params.get("expr"),
        "element": element_text(x),
        "q": p.q,
        "t": p.t,
        "L": lip.to_dict(),
        "norm": norm.to_dict(),
        "norm_tq": norm_tq,
        "grades": sorted(x.grades()),
    }
    if x.grades() <= {0}:
        data["L_podles"] = seminorm_podles(x, p.q, cfg, seed)
    return data
