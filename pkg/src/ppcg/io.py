"""JSON (de)serialization of games, networks, profiles and results.

Rationals are written as ``"p/q"`` strings; plain integers are accepted on input.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path
from typing import Any

from .game import Game, GameError, Resource
from .network import Arc, NetworkGame
from .rational import as_fraction, format_fraction, to_decimal


def _rat(value: Any, what: str) -> Fraction:
    try:
        return as_fraction(value)
    except (TypeError, ValueError) as exc:
        raise GameError(f"{what}: {exc}") from None


def game_to_json(game: Game) -> dict:
    return {
        "type": "game",
        "n": game.n,
        "resources": [{"a": format_fraction(r.a), "b": format_fraction(r.b)} for r in game.resources],
        "strategies": [[list(s) for s in strats] for strats in game.strategies],
    }


def network_to_json(net: NetworkGame) -> dict:
    return {
        "type": "network",
        "n": net.n,
        "nodes": net.nodes,
        "source": net.source,
        "sink": net.sink,
        "arcs": [
            {"tail": a.tail, "head": a.head, "a": format_fraction(a.resource.a), "b": format_fraction(a.resource.b)}
            for a in net.arcs
        ],
    }


def _resource(obj: dict, where: str) -> Resource:
    if "a" not in obj:
        raise GameError(f"{where}: missing 'a'")
    return Resource(_rat(obj["a"], where), _rat(obj.get("b", 0), where))


def game_from_json(data: dict) -> Game | NetworkGame:
    """Build a :class:`Game` or :class:`NetworkGame` (detected by an ``arcs`` key)."""
    if not isinstance(data, dict):
        raise GameError("top-level JSON value must be an object")
    try:
        if "arcs" in data:
            arcs = tuple(
                Arc(int(a["tail"]), int(a["head"]), _resource(a, f"arc {k}")) for k, a in enumerate(data["arcs"])
            )
            return NetworkGame(int(data["nodes"]), arcs, int(data["source"]), int(data["sink"]), int(data["n"]))
        resources = tuple(_resource(r, f"resource {k}") for k, r in enumerate(data["resources"]))
        strategies = tuple(tuple(tuple(int(e) for e in s) for s in strats) for strats in data["strategies"])
        return Game(int(data["n"]), resources, strategies)
    except KeyError as exc:
        raise GameError(f"missing field {exc.args[0]!r}") from None
    except (TypeError, AttributeError) as exc:
        raise GameError(f"malformed game JSON: {exc}") from None


def load_game(path: str | Path) -> Game | NetworkGame:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GameError(f"{path}: invalid JSON ({exc})") from None
    return game_from_json(data)


def ratio_json(value) -> dict:
    return {"exact": format_fraction(value), "decimal": to_decimal(value)}


def dump_json(obj: Any, path: str | Path | None = None) -> str:
    text = json.dumps(_plain(obj), indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def _plain(obj):
    # json would write +inf as the non-standard token Infinity
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return format_fraction(obj)
    if isinstance(obj, dict):
        return {k: _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    return obj
