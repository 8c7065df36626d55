"""Ring-definition files: a tree of construction nodes in nested key-value text.

The accepted syntax is YAML flow or block style, so plain JSON documents work
as they are.  Example::

    {"kind": "duplication", "base": {"kind": "zmod", "n": 8}, "ideal_gens": [2]}

Ring kinds: ``zmod{n}``, ``product{left, right}``,
``trivial_extension{base, module}``, ``quotient{base, ideal_gens}``,
``duplication{base, ideal_gens}``, ``amalgamation{A, B, hom, J_gens}``.
A module is ``{ring, hom}``: the ring ``ring`` made into a module over the
base through ``hom``.  Hom kinds: ``identity``, ``canonical``,
``projection{component}``, ``table{pairs}``.  Element references are
carrier indices of the ring they refer to.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Any

import yaml

from .amalgam import AmalgamRing, make_amalgamation, make_duplication
from .ideals import ideal_closure
from .rings import (
    FiniteRing,
    RingError,
    RingHom,
    SizeCapError,
    canonical_hom,
    identity_hom,
    make_product,
    make_quotient,
    make_trivial_extension,
    make_zmod,
    module_via_hom,
    projection_hom,
    table_hom,
)

Position = tuple[int, int]

_RING_FIELDS = {
    "zmod": ("n",),
    "product": ("left", "right"),
    "trivial_extension": ("base", "module"),
    "quotient": ("base", "ideal_gens"),
    "duplication": ("base", "ideal_gens"),
    "amalgamation": ("A", "B", "hom", "J_gens"),
}
_HOM_FIELDS = {
    "identity": (),
    "canonical": (),
    "projection": ("component",),
    "table": ("pairs",),
}
_DECIMAL = re.compile(r"-?[0-9]+")

MAX_BUILD_ORDER = 4096
"""Largest carrier a definition file may produce (tables are order²)."""


class SpecError(ValueError):
    """Malformed or ill-typed ring definition; carries a 1-based position."""

    def __init__(self, message: str, pos: Position | None = None):
        self.message = message
        self.line, self.column = pos if pos is not None else (None, None)
        where = f"line {self.line}, column {self.column}: " if pos is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class HomSpec:
    kind: str
    component: int | None = None
    pairs: tuple[tuple[int, int], ...] | None = None
    pos: Position | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ModuleSpec:
    ring: RingSpec
    hom: HomSpec
    pos: Position | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class RingSpec:
    kind: str
    n: int | None = None
    left: RingSpec | None = None
    right: RingSpec | None = None
    base: RingSpec | None = None
    module: ModuleSpec | None = None
    ideal_gens: tuple[int, ...] | None = None
    A: RingSpec | None = None
    B: RingSpec | None = None
    hom: HomSpec | None = None
    J_gens: tuple[int, ...] | None = None
    pos: Position | None = field(default=None, compare=False, repr=False)
    gens_pos: Position | None = field(default=None, compare=False, repr=False)


# ---------------------------------------------------------------------------
# parsing


def _pos(node: yaml.Node) -> Position:
    return node.start_mark.line + 1, node.start_mark.column + 1


def _mapping(node: yaml.Node, what: str) -> dict[str, yaml.Node]:
    if not isinstance(node, yaml.MappingNode):
        raise SpecError(f"{what} must be a mapping", _pos(node))
    out: dict[str, yaml.Node] = {}
    for k, v in node.value:
        if not isinstance(k, yaml.ScalarNode):
            raise SpecError("keys must be plain strings", _pos(k))
        if k.value in out:
            raise SpecError(f"duplicate key {k.value!r}", _pos(k))
        out[k.value] = v
    return out


def _int(node: yaml.Node, name: str) -> int:
    if not isinstance(node, yaml.ScalarNode) or node.style is not None or not _DECIMAL.fullmatch(node.value):
        raise SpecError(f"field {name!r} must be a decimal integer", _pos(node))
    return int(node.value)


def _int_list(node: yaml.Node, name: str) -> tuple[int, ...]:
    if not isinstance(node, yaml.SequenceNode):
        raise SpecError(f"field {name!r} must be a list of integers", _pos(node))
    return tuple(_int(v, name) for v in node.value)


def _kind(fields: dict[str, yaml.Node], node: yaml.Node, table: dict[str, tuple], what: str) -> str:
    if "kind" not in fields:
        raise SpecError(f"{what} has no 'kind'", _pos(node))
    k = fields["kind"]
    if not isinstance(k, yaml.ScalarNode) or k.value not in table:
        shown = k.value if isinstance(k, yaml.ScalarNode) else "?"
        raise SpecError(f"unknown {what} kind {shown!r}", _pos(k))
    expected = set(table[k.value]) | {"kind"}
    for name in fields:
        if name not in expected:
            raise SpecError(f"unexpected field {name!r} for {what} kind {k.value!r}", _pos(fields[name]))
    for name in table[k.value]:
        if name not in fields:
            raise SpecError(f"{what} kind {k.value!r} needs field {name!r}", _pos(node))
    return k.value


def _hom_from_node(node: yaml.Node) -> HomSpec:
    fields = _mapping(node, "hom")
    kind = _kind(fields, node, _HOM_FIELDS, "hom")
    if kind == "projection":
        return HomSpec(kind, component=_int(fields["component"], "component"), pos=_pos(node))
    if kind == "table":
        seq = fields["pairs"]
        if not isinstance(seq, yaml.SequenceNode):
            raise SpecError("field 'pairs' must be a list of [x, y] pairs", _pos(seq))
        pairs = []
        for item in seq.value:
            pair = _int_list(item, "pairs")
            if len(pair) != 2:
                raise SpecError("each entry of 'pairs' must have two integers", _pos(item))
            pairs.append(pair)
        return HomSpec(kind, pairs=tuple(pairs), pos=_pos(node))
    return HomSpec(kind, pos=_pos(node))


def _ring_from_node(node: yaml.Node) -> RingSpec:
    fields = _mapping(node, "ring")
    kind = _kind(fields, node, _RING_FIELDS, "ring")
    p = _pos(node)
    if kind == "zmod":
        return RingSpec(kind, n=_int(fields["n"], "n"), pos=p)
    if kind == "product":
        return RingSpec(kind, left=_ring_from_node(fields["left"]), right=_ring_from_node(fields["right"]), pos=p)
    if kind == "trivial_extension":
        mnode = fields["module"]
        mf = _mapping(mnode, "module")
        for name in mf:
            if name not in ("ring", "hom"):
                raise SpecError(f"unexpected field {name!r} for module", _pos(mf[name]))
        if "ring" not in mf:
            raise SpecError("module needs field 'ring'", _pos(mnode))
        hom = _hom_from_node(mf["hom"]) if "hom" in mf else HomSpec("canonical")
        module = ModuleSpec(_ring_from_node(mf["ring"]), hom, pos=_pos(mnode))
        return RingSpec(kind, base=_ring_from_node(fields["base"]), module=module, pos=p)
    if kind in ("quotient", "duplication"):
        return RingSpec(
            kind,
            base=_ring_from_node(fields["base"]),
            ideal_gens=_int_list(fields["ideal_gens"], "ideal_gens"),
            pos=p,
            gens_pos=_pos(fields["ideal_gens"]),
        )
    return RingSpec(
        kind,
        A=_ring_from_node(fields["A"]),
        B=_ring_from_node(fields["B"]),
        hom=_hom_from_node(fields["hom"]),
        J_gens=_int_list(fields["J_gens"], "J_gens"),
        pos=p,
        gens_pos=_pos(fields["J_gens"]),
    )


def parse_spec_unchecked(text: str) -> RingSpec:
    """Syntax and typing only; no ring is built."""
    try:
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        pos = (mark.line + 1, mark.column + 1) if mark is not None else None
        raise SpecError(f"syntax error: {exc.problem or exc.context}", pos) from None
    except yaml.YAMLError as exc:
        raise SpecError(f"syntax error: {exc}") from None
    if node is None:
        raise SpecError("empty document", (1, 1))
    return _ring_from_node(node)


def parse_spec(text: str) -> RingSpec:
    """Parse and validate: the ring is built once so that every generator
    and hom table is checked against the ring it refers to."""
    spec = parse_spec_unchecked(text)
    build(spec)
    return spec


# ---------------------------------------------------------------------------
# rendering


def hom_to_data(h: HomSpec) -> dict[str, Any]:
    d: dict[str, Any] = {"kind": h.kind}
    if h.kind == "projection":
        d["component"] = h.component
    elif h.kind == "table":
        d["pairs"] = [list(p) for p in h.pairs]
    return d


def spec_to_data(s: RingSpec) -> dict[str, Any]:
    d: dict[str, Any] = {"kind": s.kind}
    if s.kind == "zmod":
        d["n"] = s.n
    elif s.kind == "product":
        d["left"], d["right"] = spec_to_data(s.left), spec_to_data(s.right)
    elif s.kind == "trivial_extension":
        d["base"] = spec_to_data(s.base)
        d["module"] = {"ring": spec_to_data(s.module.ring), "hom": hom_to_data(s.module.hom)}
    elif s.kind in ("quotient", "duplication"):
        d["base"], d["ideal_gens"] = spec_to_data(s.base), list(s.ideal_gens)
    else:
        d["A"], d["B"] = spec_to_data(s.A), spec_to_data(s.B)
        d["hom"], d["J_gens"] = hom_to_data(s.hom), list(s.J_gens)
    return d


def render(spec: RingSpec) -> str:
    return json.dumps(spec_to_data(spec))


# ---------------------------------------------------------------------------
# building


@dataclass(frozen=True)
class BuiltRing:
    ring: FiniteRing
    amalgam: AmalgamRing | None = None


def _gens(R: FiniteRing, gens: tuple[int, ...], pos: Position | None, what: str):
    for g in gens:
        if not 0 <= g < R.order:
            raise SpecError(f"{what} generator {g} is not an element of {R.label} (order {R.order})", pos)
    return ideal_closure(R, gens)


def _build_hom(h: HomSpec, source: FiniteRing, target: FiniteRing) -> RingHom:
    try:
        if h.kind == "identity":
            if source.digest != target.digest:
                raise SpecError(f"identity needs equal rings, got {source.label} and {target.label}", h.pos)
            return identity_hom(source)
        if h.kind == "canonical":
            return canonical_hom(source, target)
        if h.kind == "projection":
            f = projection_hom(source, h.component)
            if f.target.digest != target.digest:
                raise SpecError(f"component {h.component} of {source.label} is not {target.label}", h.pos)
            return f
        for x, y in h.pairs:
            if not (0 <= x < source.order and 0 <= y < target.order):
                raise SpecError(f"pair ({x}, {y}) is out of range", h.pos)
        return table_hom(source, target, h.pairs)
    except RingError as exc:
        if isinstance(exc, SpecError):
            raise
        raise SpecError(str(exc), h.pos) from exc


def _guard(order: int, s: RingSpec) -> None:
    if order > MAX_BUILD_ORDER:
        raise SizeCapError(f"{s.kind} would have order {order} > {MAX_BUILD_ORDER}")


def _build_ring(s: RingSpec) -> BuiltRing:
    try:
        if s.kind == "zmod":
            _guard(s.n, s)
            return BuiltRing(make_zmod(s.n))
        if s.kind == "product":
            L, R = _build_ring(s.left).ring, _build_ring(s.right).ring
            _guard(L.order * R.order, s)
            return BuiltRing(make_product(L, R))
        if s.kind == "trivial_extension":
            A = _build_ring(s.base).ring
            M = _build_ring(s.module.ring).ring
            _guard(A.order * M.order, s)
            return BuiltRing(make_trivial_extension(A, module_via_hom(_build_hom(s.module.hom, A, M))))
        if s.kind == "quotient":
            R = _build_ring(s.base).ring
            return BuiltRing(make_quotient(R, _gens(R, s.ideal_gens, s.gens_pos, "ideal"))[0])
        if s.kind == "duplication":
            R = _build_ring(s.base).ring
            I = _gens(R, s.ideal_gens, s.gens_pos, "ideal")
            _guard(R.order * len(I), s)
            am = make_duplication(R, I)
            return BuiltRing(am.ring, am)
        A, B = _build_ring(s.A).ring, _build_ring(s.B).ring
        f = _build_hom(s.hom, A, B)
        J = _gens(B, s.J_gens, s.gens_pos, "J")
        _guard(A.order * len(J), s)
        am = make_amalgamation(A, B, f, J)
        return BuiltRing(am.ring, am)
    except SpecError:
        raise
    except RingError as exc:
        raise SpecError(str(exc), s.pos) from exc


def build(spec: RingSpec) -> BuiltRing:
    return _build_ring(spec)
