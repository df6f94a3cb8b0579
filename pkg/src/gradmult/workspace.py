"""JSON workspace documents: a ring, named ideals, named families, settings.

Example::

    {
      "schema": "gradmult/1",
      "ring": {"variables": ["x", "y"]},
      "ideals": {"I": [[2, 0], [0, 3]], "M": "maximal"},
      "families": {"F": {"kind": "powers", "ideal": "I"}},
      "settings": {"horizon": 24, "q_max": 12, "tolerance": "1/20"}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from .families import (
    GradedFamily,
    IntegralClosurePowers,
    Powers,
    Product,
    Saturation,
    Scaled,
    SymbolicPowers,
    Table,
    Truncated,
)
from .monomial import AmbientRing, MonomialIdeal

SCHEMA = "gradmult/1"
FAMILY_KINDS = ("powers", "truncated", "saturation", "symbolic", "integral-closure", "product", "table", "scaled")


class WorkspaceError(ValueError):
    """Invalid workspace; the message starts with the path to the offending entry."""


@dataclass
class Settings:
    horizon: int | None = None
    q_max: int = 12
    tolerance: Fraction = Fraction(1, 20)
    cap: int = 64
    strategy: str = "exact"


@dataclass
class Workspace:
    ring: AmbientRing
    ideals: dict[str, MonomialIdeal]
    families: dict[str, GradedFamily]
    settings: Settings = field(default_factory=Settings)
    quotient: MonomialIdeal | None = None

    def ideal(self, name: str) -> MonomialIdeal:
        try:
            return self.ideals[name]
        except KeyError:
            raise WorkspaceError(f"unknown ideal {name!r}") from None

    def family(self, name: str) -> GradedFamily:
        try:
            return self.families[name]
        except KeyError:
            raise WorkspaceError(f"unknown family {name!r}") from None


def ideal_to_json(I: MonomialIdeal) -> list[list[int]]:
    return [list(g) for g in I.gens]


def _positive_int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise WorkspaceError(f"{where}: expected a positive integer, got {value!r}")
    return value


def _parse_rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise WorkspaceError(f"{where}: expected a rational, got {value!r}")
    try:
        if isinstance(value, float):
            return Fraction(str(value))
        return Fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise WorkspaceError(f"{where}: expected a rational, got {value!r}") from None


def parse_generators(ring: AmbientRing, value: Any, where: str) -> MonomialIdeal:
    if value == "maximal":
        return ring.maximal_ideal()
    if value == "unit":
        return ring.unit_ideal()
    if value == "zero":
        return ring.zero_ideal()
    if not isinstance(value, list):
        raise WorkspaceError(f"{where}: expected a list of exponent arrays or maximal/unit/zero")
    pts = []
    for i, g in enumerate(value):
        if not isinstance(g, list):
            raise WorkspaceError(f"{where}[{i}]: expected an exponent array")
        if len(g) != ring.dimension:
            raise WorkspaceError(f"{where}[{i}]: exponent has length {len(g)}, ring has dimension {ring.dimension}")
        for j, v in enumerate(g):
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise WorkspaceError(f"{where}[{i}][{j}]: exponents must be natural numbers, got {v!r}")
        pts.append(tuple(g))
    return ring.ideal(pts)


def _parse_ring(doc) -> AmbientRing:
    spec = doc.get("ring")
    if not isinstance(spec, dict):
        raise WorkspaceError("ring: missing or not an object")
    names = spec.get("variables")
    if names is None and "dimension" in spec:
        return AmbientRing.of_dimension(_positive_int(spec["dimension"], "ring.dimension"))
    if not isinstance(names, list) or not names or not all(isinstance(n, str) for n in names):
        raise WorkspaceError("ring.variables: expected a non-empty list of names")
    if len(set(names)) != len(names):
        raise WorkspaceError("ring.variables: variable names must be unique")
    if "dimension" in spec and spec["dimension"] != len(names):
        raise WorkspaceError("ring.dimension: does not match the number of variables")
    return AmbientRing(tuple(names))


class _FamilyBuilder:
    def __init__(self, ring, ideals, specs):
        self.ring = ring
        self.ideals = ideals
        self.specs = specs
        self.built: dict[str, GradedFamily] = {}
        self.stack: list[str] = []

    def ideal_ref(self, value, where):
        if isinstance(value, str) and value not in ("maximal", "unit", "zero"):
            if value not in self.ideals:
                raise WorkspaceError(f"{where}: unknown ideal {value!r}")
            return self.ideals[value]
        return parse_generators(self.ring, value, where)

    def family_ref(self, name, where):
        if not isinstance(name, str):
            raise WorkspaceError(f"{where}: expected a family name")
        if name not in self.specs:
            raise WorkspaceError(f"{where}: unknown family {name!r}")
        return self.build(name)

    def build(self, name: str) -> GradedFamily:
        if name in self.built:
            return self.built[name]
        if name in self.stack:
            cycle = " -> ".join(self.stack[self.stack.index(name) :] + [name])
            raise WorkspaceError(f"families.{name}: cyclic family definition {cycle}")
        self.stack.append(name)
        try:
            family = self._construct(name, self.specs[name])
        finally:
            self.stack.pop()
        self.built[name] = family
        return family

    def _construct(self, name, spec) -> GradedFamily:
        where = f"families.{name}"
        if not isinstance(spec, dict):
            raise WorkspaceError(f"{where}: expected an object")
        kind = spec.get("kind")
        if kind not in FAMILY_KINDS:
            raise WorkspaceError(f"{where}.kind: unknown kind {kind!r}; expected one of {', '.join(FAMILY_KINDS)}")

        def need(key):
            if key not in spec:
                raise WorkspaceError(f"{where}.{key}: missing")
            return spec[key]

        try:
            if kind == "powers":
                return Powers(self.ideal_ref(need("ideal"), f"{where}.ideal"))
            if kind == "integral-closure":
                return IntegralClosurePowers(self.ideal_ref(need("ideal"), f"{where}.ideal"))
            if kind == "symbolic":
                return SymbolicPowers(self.ideal_ref(need("ideal"), f"{where}.ideal"))
            if kind == "scaled":
                alpha = _parse_rational(need("alpha"), f"{where}.alpha")
                return Scaled(self.ideal_ref(need("ideal"), f"{where}.ideal"), alpha)
            if kind == "truncated":
                level = _positive_int(need("level"), f"{where}.level")
                return Truncated(self.family_ref(need("base"), f"{where}.base"), level)
            if kind == "saturation":
                return Saturation(self.family_ref(need("base"), f"{where}.base"))
            if kind == "product":
                factors = need("factors")
                if not isinstance(factors, list) or not factors:
                    raise WorkspaceError(f"{where}.factors: expected a non-empty list of family names")
                return Product(*(self.family_ref(f, f"{where}.factors[{i}]") for i, f in enumerate(factors)))
            if kind == "table":
                terms = need("terms")
                if not isinstance(terms, list) or not terms:
                    raise WorkspaceError(f"{where}.terms: expected a non-empty list of ideals")
                return Table(self.ring, [self.ideal_ref(t, f"{where}.terms[{i}]") for i, t in enumerate(terms)])
        except WorkspaceError:
            raise
        except ValueError as exc:
            raise WorkspaceError(f"{where}: {exc}") from None
        raise AssertionError(kind)


def _parse_settings(raw) -> Settings:
    if raw is None:
        return Settings()
    if not isinstance(raw, dict):
        raise WorkspaceError("settings: expected an object")
    s = Settings()
    for key, value in raw.items():
        where = f"settings.{key}"
        if key in ("horizon", "q_max", "cap"):
            setattr(s, key, _positive_int(value, where))
        elif key == "tolerance":
            s.tolerance = _parse_rational(value, where)
        elif key == "strategy":
            if value not in ("exact", "sequence"):
                raise WorkspaceError(f"{where}: expected 'exact' or 'sequence'")
            s.strategy = value
        else:
            raise WorkspaceError(f"{where}: unknown setting")
    return s


def load_workspace(doc: Any) -> Workspace:
    """Validate an already-decoded JSON document."""
    if not isinstance(doc, dict):
        raise WorkspaceError("document: expected a JSON object")
    if "schema" in doc and doc["schema"] != SCHEMA:
        raise WorkspaceError(f"schema: unsupported schema {doc['schema']!r}, expected {SCHEMA!r}")
    unknown = set(doc) - {"schema", "ring", "ideals", "families", "settings"}
    if unknown:
        raise WorkspaceError(f"{sorted(unknown)[0]}: unknown top-level key")
    ring = _parse_ring(doc)
    raw_ideals = doc.get("ideals", {})
    if not isinstance(raw_ideals, dict):
        raise WorkspaceError("ideals: expected an object")
    ideals = {name: parse_generators(ring, gens, f"ideals.{name}") for name, gens in raw_ideals.items()}
    quotient = None
    qspec = doc["ring"].get("quotient")
    if qspec is not None:
        if isinstance(qspec, str) and qspec not in ("maximal", "unit", "zero"):
            if qspec not in ideals:
                raise WorkspaceError(f"ring.quotient: unknown ideal {qspec!r}")
            quotient = ideals[qspec]
        else:
            quotient = parse_generators(ring, qspec, "ring.quotient")
        if quotient.is_unit():
            raise WorkspaceError("ring.quotient: must be a proper ideal")
        if quotient.is_zero():
            quotient = None
    raw_families = doc.get("families", {})
    if not isinstance(raw_families, dict):
        raise WorkspaceError("families: expected an object")
    builder = _FamilyBuilder(ring, ideals, raw_families)
    families = {name: builder.build(name) for name in raw_families}
    settings = _parse_settings(doc.get("settings"))
    return Workspace(ring, ideals, families, settings, quotient)


def parse_workspace(path) -> Workspace:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError:
        raise WorkspaceError(f"{path}: file not found") from None
    except UnicodeDecodeError as exc:
        raise WorkspaceError(f"{path}: not UTF-8 ({exc.reason})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"{path}:{exc.lineno}:{exc.colno}: JSON parse error: {exc.msg}") from None
    try:
        return load_workspace(doc)
    except WorkspaceError as exc:
        raise WorkspaceError(f"{path}: {exc}") from None
