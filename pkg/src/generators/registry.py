"""
Named generator families, as used by the CLI and the experiment runner.
"""
from math import isqrt
from typing import Any, Callable, Dict, Mapping

from src.generators.bundle import InstanceBundle
from src.generators.constructions import lshape_clique, narrow_rectangles_bipartite, star_path_boxes, wedge_family
from src.generators.random_instances import random_box_instance
from src.generators.sstar import sstar_instance
from src.generators.towers import hub_star_family
from src.utils.errors import InvalidParameterError

Builder = Callable[[Dict[str, Any], int], InstanceBundle]


def _int(params: Mapping[str, Any], name: str, default=None) -> int:
    value = params.get(name, default)
    if value is None:
        raise InvalidParameterError(f"Missing parameter {name!r}")
    try:
        return int(value)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"Parameter {name!r} must be an integer, got {value!r}")


def _int_list(params: Mapping[str, Any], name: str, default=()) -> list:
    value = params.get(name, default)
    if isinstance(value, str):
        value = [part for part in value.split(",") if part.strip()]
    try:
        return [int(x) for x in value]
    except (TypeError, ValueError):
        raise InvalidParameterError(f"Parameter {name!r} must be a list of integers, got {value!r}")


FAMILIES: Dict[str, Builder] = {
    "narrow-rectangles": lambda p, seed: narrow_rectangles_bipartite(_int(p, "m"), p.get("thickness")),
    "wedge": lambda p, seed: wedge_family(_int(p, "m")),
    "star-path": lambda p, seed: star_path_boxes(_int(p, "r"), _int(p, "t")),
    "hub-star": lambda p, seed: hub_star_family(_int_list(p, "N"), _int_list(p, "l")),
    "sstar": lambda p, seed: sstar_instance(_int(p, "h_max", 4), _int(p, "n"), _int(p, "c", 2), seed),
    "lshape": lambda p, seed: lshape_clique(_int(p, "m")),
    "random-box": lambda p, seed: random_box_instance(
        _int(p, "n"), _int(p, "d", 2), p.get("aspect_profile", "bounded"), seed,
        p.get("density", 1.0), None if p.get("thin_cap") is None else _int(p, "thin_cap"),
        bool(p.get("measure_comparability", True))),
}


def build_family(name: str, params: Mapping[str, Any], seed: int = 0) -> InstanceBundle:
    """
    Run the named generator.

    Raises:
        InvalidParameterError: For an unknown family or missing parameters
    """
    if name not in FAMILIES:
        raise InvalidParameterError(f"Unknown family {name!r}, use one of {sorted(FAMILIES)}")
    return FAMILIES[name](dict(params), seed)


def sized_params(name: str, params: Mapping[str, Any], size: int) -> Dict[str, Any]:
    """Parameters that make the named family have about `size` vertices."""
    params = dict(params)
    if name in ("random-box", "sstar"):
        params["n"] = size
    elif name == "star-path":
        side = max(1, isqrt(size))
        params["r"], params["t"] = side, side
    elif name in ("narrow-rectangles", "wedge"):
        params["m"] = max(1, size // 2)
    elif name == "lshape":
        params["m"] = max(1, size)
    else:
        raise InvalidParameterError(f"Family {name!r} has no size ladder")
    return params
