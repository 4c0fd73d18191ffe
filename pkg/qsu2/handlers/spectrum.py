"""Dirac block spectrum behind ``qsu2 spectrum``."""
from qsu2.config import Config
from qsu2.dirac import dirac_spectrum
from qsu2.errors import ParameterError
from qsu2.handlers.inputs import qparams

MAX_NMAX = 200


def spectrum_handler(params: dict, config: Config) -> dict:
    """Rows (n, i, j, eigenvalue, multiplicity) for every block up to level nmax."""
    n_max = int(params.get("nmax", 4))
    if not 0 <= n_max <= MAX_NMAX:
        raise ParameterError(f"--nmax must lie in [0, {MAX_NMAX}], got {n_max}")
    result = dirac_spectrum(n_max, qparams(config))
    data = result.to_dict()
    data["classical"] = result.classical
    data["columns"] = ["n", "i", "j", "eigenvalue", "multiplicity"]
    if result.classical:
        data["columns"].append("two_lambda_plus_one")
    return data
