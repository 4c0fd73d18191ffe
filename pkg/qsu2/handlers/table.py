"""
Continuity sweeps behind ``qsu2 table``.

A sweep spec is a comma-separated list of axis settings:

    q=0.6:1.0:0.1,t=q       # t tied to q
    t=0.5:0.9:0.2,q=0.7     # q fixed
    q=0.6;0.8;1.0,t=0.9     # explicit values

Ranges include their end point. Every (t, q) must lie in (0, 1].
"""
from qsu2.berezin import check_caps
from qsu2.config import Config
from qsu2.errors import ParameterError
from qsu2.metric import continuity_sweep

MAX_GRID = 400


def _axis_values(axis: str, raw: str) -> list[float]:
    try:
        if ":" in raw:
            start, stop, step = (float(v) for v in raw.split(":"))
            if step <= 0:
                raise ParameterError(f"{axis}: step must be positive")
            count = int(round((stop - start) / step))
            if count < 0:
                raise ParameterError(f"{axis}: empty range {raw!r}")
            values = [round(start + i * step, 12) for i in range(count + 1)]
        else:
            values = [float(v) for v in raw.split(";")]
    except ValueError as exc:
        raise ParameterError(f"bad {axis} values {raw!r}: {exc}") from exc
    for v in values:
        if not 0 < v <= 1:
            raise ParameterError(f"{axis}={v} outside (0, 1]")
    return values


def parse_sweep(spec: str) -> list[tuple[float, float]]:
    """(t, q) grid points for a sweep spec, t-major."""
    settings: dict[str, str] = {}
    for part in (spec or "").split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise ParameterError(f"bad sweep entry {part!r}; expected axis=values")
        axis, raw = (s.strip().lower() for s in part.split("=", 1))
        if axis not in ("t", "q"):
            raise ParameterError(f"unknown sweep axis {axis!r}")
        settings[axis] = raw
    if not settings:
        raise ParameterError("empty sweep spec")
    if settings.get("t") == "q" and settings.get("q") == "t":
        raise ParameterError("t and q cannot both be tied")

    if settings.get("t") == "q":
        grid = [(v, v) for v in _axis_values("q", settings["q"])]
    elif settings.get("q") == "t":
        grid = [(v, v) for v in _axis_values("t", settings["t"])]
    else:
        ts = _axis_values("t", settings.get("t", "1.0"))
        qs = _axis_values("q", settings.get("q", "1.0"))
        grid = [(t, q) for t in ts for q in qs]
    if len(grid) > MAX_GRID:
        raise ParameterError(f"sweep has {len(grid)} points, above {MAX_GRID}")
    return grid


def _distance_triple(raw) -> tuple[int, int, int] | None:
    if raw in (None, ""):
        return None
    try:
        big_n, big_m, big_k = (int(v) for v in str(raw).split(","))
    except ValueError as exc:
        raise ParameterError(f"--distance expects N,M,K, got {raw!r}") from exc
    if min(big_n, big_m, big_k) < 0:
        raise ParameterError("--distance entries must be nonnegative")
    return big_n, big_m, big_k


def table_handler(params: dict, config: Config) -> dict:
    grid = parse_sweep(params.get("sweep", ""))
    words = [w.strip() for w in (params.get("words") or "b").split(",") if w.strip()]
    for word in words:
        if word != "1" and set(word) - set("abAB"):
            raise ParameterError(f"bad word {word!r}; use letters a, b, A (a*), B (b*)")
    distance = _distance_triple(params.get("distance"))
    if distance is not None:
        check_caps(distance[0], distance[1], config.berezin.max_nm)
    seed = params.get("seed")
    table = continuity_sweep(grid, words, distance, config, None if seed is None else int(seed))
    data = table.to_dict()
    data["sweep"] = params.get("sweep")
    return data
