"""JSON model documents.

Kripke::

    {"type": "kripke", "worlds": ["w1", ...],
     "mu": [["0", "2/5", "3/5", "0"], ...],
     "valuation": {"p": ["w1", "w3"]}}

Belief (partial tables are completed, see ``belief.complete_capacity``)::

    {"type": "belief", "worlds": [...],
     "belief": {"w1": {"": "0", "w2": "2/5", "w2 w3": "1"}, ...},
     "valuation": {...}}

``"mass"`` may replace ``"belief"`` to give Möbius masses instead.  Subset
keys are space-separated world names; ``""`` is the empty set.
"""

import json
from importlib import resources
from pathlib import Path

from . import worldsets as ws
from .belief import BeliefNbhdModel, MassError, from_mass, from_tables, mobius_transform
from .kripke import ProbKripkeModel
from .rationals import RationalError, format_rational, parse_rational

KRIPKE_KEYS = {"type", "worlds", "mu", "valuation"}
BELIEF_KEYS = {"type", "worlds", "belief", "mass", "valuation"}


class DocumentError(ValueError):
    pass


def fixture_names():
    root = resources.files("probmodal") / "fixtures"
    return sorted(p.name for p in root.iterdir() if p.name.endswith(".json"))


def resolve(path):
    """A filesystem path, or a shipped fixture by name (``ex1``, ``ex4_belief``...)."""
    p = Path(path)
    if p.exists():
        return p
    root = resources.files("probmodal") / "fixtures"
    stem = p.name.removesuffix(".json")
    for name in fixture_names():
        base = name.removesuffix(".json")
        if base == stem or base.split("_")[0] == stem:
            return Path(str(root / name))
    raise DocumentError(f"no such file or fixture: {path}")


def read(path):
    p = resolve(path)
    try:
        data = json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{p}: malformed JSON: {exc}") from None
    return load(data)


def _rational(x, where):
    try:
        return parse_rational(x)
    except RationalError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def _worlds(data):
    worlds = data.get("worlds")
    if not isinstance(worlds, list) or not worlds or not all(isinstance(w, str) for w in worlds):
        raise DocumentError("'worlds' must be a non-empty list of names")
    if len(set(worlds)) != len(worlds):
        raise DocumentError("world names must be distinct")
    return worlds


def _valuation(data, index):
    raw = data.get("valuation", {})
    if not isinstance(raw, dict):
        raise DocumentError("'valuation' must map atoms to world lists")
    out = {}
    for atom, names in raw.items():
        if not isinstance(names, list):
            raise DocumentError(f"valuation of {atom!r} must be a list")
        mask = 0
        for name in names:
            if name not in index:
                raise DocumentError(f"valuation of {atom!r} names unknown world {name!r}")
            mask |= 1 << index[name]
        out[atom] = mask
    return out


def _subset_table(raw, index, where):
    if not isinstance(raw, dict):
        raise DocumentError(f"{where} must map subset keys to values")
    table = {}
    for key, value in raw.items():
        try:
            mask = ws.parse_key(key, index)
        except KeyError as exc:
            raise DocumentError(f"{where}: unknown world {exc.args[0]!r} in key {key!r}") from None
        except ValueError as exc:
            raise DocumentError(f"{where}: {exc}") from None
        if mask in table:
            raise DocumentError(f"{where}: subset {key!r} given twice")
        table[mask] = _rational(value, f"{where}[{key!r}]")
    return table


def load(data):
    """Build a model from a parsed document."""
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    kind = data.get("type")
    if kind == "kripke":
        allowed = KRIPKE_KEYS
    elif kind == "belief":
        allowed = BELIEF_KEYS
    else:
        raise DocumentError(f"unknown model type {kind!r}")
    unknown = set(data) - allowed
    if unknown:
        raise DocumentError(f"unknown fields: {', '.join(sorted(unknown))}")
    worlds = _worlds(data)
    index = {name: i for i, name in enumerate(worlds)}
    valuation = _valuation(data, index)
    n = len(worlds)

    if kind == "kripke":
        mu = data.get("mu")
        if not isinstance(mu, list) or len(mu) != n or not all(isinstance(r, list) for r in mu):
            raise DocumentError(f"'mu' must be a list of {n} rows")
        rows = []
        for i, row in enumerate(mu):
            if len(row) != n:
                raise DocumentError(f"mu row {i} has {len(row)} entries for {n} worlds")
            rows.append(tuple(_rational(x, f"mu[{i}]") for x in row))
        return ProbKripkeModel(tuple(worlds), tuple(rows), valuation)

    try:
        ws.check_size(n)
    except ws.ModelTooLarge as exc:
        raise DocumentError(str(exc)) from None
    if ("belief" in data) == ("mass" in data):
        raise DocumentError("a belief document needs exactly one of 'belief' or 'mass'")
    field = "belief" if "belief" in data else "mass"
    per_world = data[field]
    if not isinstance(per_world, dict):
        raise DocumentError(f"'{field}' must map world names to tables")
    extra = set(per_world) - set(worlds)
    if extra:
        raise DocumentError(f"'{field}' names unknown worlds: {', '.join(sorted(extra))}")
    missing = [w for w in worlds if w not in per_world]
    if missing:
        raise DocumentError(f"'{field}' has no table for: {', '.join(missing)}")
    tables = [_subset_table(per_world[w], index, f"{field}[{w!r}]") for w in worlds]
    if field == "mass":
        try:
            return from_mass(tuple(worlds), tables, valuation)
        except MassError as exc:
            raise DocumentError(str(exc)) from None
    return from_tables(tuple(worlds), tables, valuation)


def _valuation_doc(model):
    return {atom: [model.worlds[i] for i in ws.members(mask)] for atom, mask in sorted(model.valuation.items())}


def dump(model, form="belief"):
    """Document for ``model``; belief models are written as full tables or, with ``form="mass"``, as masses."""
    worlds = list(model.worlds)
    if isinstance(model, ProbKripkeModel):
        return {
            "type": "kripke",
            "worlds": worlds,
            "mu": [[format_rational(x) for x in row] for row in model.mu],
            "valuation": _valuation_doc(model),
        }
    if not isinstance(model, BeliefNbhdModel):
        raise TypeError(f"not a model: {model!r}")
    if form == "mass":
        body = {
            worlds[w]: {ws.key_for(X, worlds): format_rational(v) for X, v in sorted(mobius_transform(model, w).items())}
            for w in range(model.n)
        }
    else:
        body = {
            worlds[w]: {ws.key_for(X, worlds): format_rational(v) for X, v in enumerate(model.capacity[w])}
            for w in range(model.n)
        }
    return {"type": "belief", "worlds": worlds, form: body, "valuation": _valuation_doc(model)}


def write(model, path, form="belief"):
    Path(path).write_text(json.dumps(dump(model, form), indent=2) + "\n")
