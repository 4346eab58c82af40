"""Loading foliation descriptions from YAML files.

Example::

    dimension: 3
    degree: 2
    variables: [z1, z2, z3]
    components:
      - "z1^2 + 2*z1*z2 - z2^2"
      - "3*z1^2 - z1*z2 + 2*z2^2"
      - "z1*(1 + 2*z1 - z2 + 3*z3) + z2*(2 - z1 + z2 + z3)"
    curve:
      axis: z3
      normal: [z1, z2]          # optional; order fixes the blowup charts
    curves:                     # optional, for the formula command
      - {d: 1, g: 0, ell: 1, branches: []}
    deformation:                # optional, for the deform command
      f: ["z1 + z3", "z2 - 2*z3"]
      h: ["1 + z2", "2"]
      model_variables: [w1, w2, w3]
      model: ["w1^2", "w2^2", "w1 + w2"]
      samples: [0, 1, "1/2"]

Rational numbers must be written as integers or ``"p/q"`` strings; YAML
floats are rejected.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

import yaml

from .blowup import AxisCurve
from .deformation import CompleteIntersectionData, DeformationError
from .foliation import AffineFoliation, FoliationError
from .formulas import CurveData
from .parser import PolySyntaxError
from .poly import MultiPoly, PolyRing, to_q


class SpecError(ValueError):
    """Invalid spec file; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, source: str = "<spec>"):
        self.line = line
        where = f"{source}:{line}" if line else source
        super().__init__(f"{where}: {message}")


def _line(node: yaml.Node | None) -> int | None:
    return node.start_mark.line + 1 if node is not None else None


class _Node:
    """A composed YAML node with typed accessors that report line numbers."""

    def __init__(self, node: yaml.Node, source: str):
        self.node = node
        self.source = source

    def error(self, message: str) -> SpecError:
        return SpecError(message, _line(self.node), self.source)

    def mapping(self) -> dict:
        if not isinstance(self.node, yaml.MappingNode):
            raise self.error("expected a mapping")
        out = {}
        for k, v in self.node.value:
            if not isinstance(k, yaml.ScalarNode):
                raise SpecError("mapping keys must be plain strings", _line(k), self.source)
            if k.value in out:
                raise SpecError(f"duplicate key {k.value!r}", _line(k), self.source)
            out[k.value] = _Node(v, self.source)
        return out

    def sequence(self) -> List["_Node"]:
        if not isinstance(self.node, yaml.SequenceNode):
            raise self.error("expected a list")
        return [_Node(v, self.source) for v in self.node.value]

    def scalar(self) -> str:
        if not isinstance(self.node, yaml.ScalarNode):
            raise self.error("expected a scalar")
        return self.node.value

    def integer(self, minimum: int | None = None) -> int:
        text = self.scalar()
        try:
            value = int(text)
        except ValueError:
            raise self.error(f"expected an integer, got {text!r}") from None
        if minimum is not None and value < minimum:
            raise self.error(f"value {value} is below the minimum {minimum}")
        return value

    def rational(self):
        text = self.scalar()
        if any(c in text for c in ".eE") and not text.strip().lstrip("+-").isdigit():
            raise self.error(f"floating-point value {text!r}; write rationals as \"p/q\"")
        try:
            return to_q(text)
        except (ValueError, ZeroDivisionError) as err:
            raise self.error(f"bad rational {text!r}: {err}") from None

    def names(self) -> Tuple[str, ...]:
        return tuple(n.scalar() for n in self.sequence())

    def poly(self, ring: PolyRing) -> MultiPoly:
        text = self.scalar()
        try:
            return ring.parse(text)
        except PolySyntaxError as err:
            raise self.error(str(err)) from None

    def polys(self, ring: PolyRing) -> Tuple[MultiPoly, ...]:
        return tuple(n.poly(ring) for n in self.sequence())


@dataclass
class DeformationSpec:
    data: CompleteIntersectionData
    model: Tuple[MultiPoly, ...]
    samples: Tuple[Any, ...]


@dataclass
class SpecFile:
    n: int
    k: int
    ring: PolyRing
    foliation: Optional[AffineFoliation]
    curve: Optional[AxisCurve] = None
    curves: List[CurveData] = field(default_factory=list)
    deformation: Optional[DeformationSpec] = None
    digest: str = ""


_KEYS = {"dimension", "degree", "variables", "components", "curve", "curves", "deformation"}


def digest_bytes(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def parse_spec(text: str, source: str = "<spec>") -> SpecFile:
    try:
        root = yaml.compose(text)
    except yaml.YAMLError as err:
        mark = getattr(err, "problem_mark", None)
        raise SpecError(f"YAML syntax error: {getattr(err, 'problem', err)}",
                        mark.line + 1 if mark else None, source) from None
    if root is None:
        raise SpecError("empty spec file", None, source)
    top = _Node(root, source).mapping()
    for key in top:
        if key not in _KEYS:
            raise top[key].error(f"unknown key {key!r}")
    for key in ("dimension", "degree", "variables"):
        if key not in top:
            raise SpecError(f"missing required key {key!r}", _line(root), source)
    n = top["dimension"].integer(minimum=3)
    k = top["degree"].integer(minimum=0)
    names = top["variables"].names()
    if len(names) != n:
        raise top["variables"].error(f"{len(names)} variables for dimension {n}")
    try:
        ring = PolyRing(names)
    except ValueError as err:
        raise top["variables"].error(str(err)) from None

    foliation = None
    if "components" in top:
        comps = top["components"].polys(ring)
        if len(comps) != n:
            raise top["components"].error(f"{len(comps)} components for dimension {n}")
        try:
            foliation = AffineFoliation(ring, comps, k)
        except FoliationError as err:
            raise top["components"].error(str(err)) from None

    curve = None
    if "curve" in top:
        cm = top["curve"].mapping()
        if "axis" not in cm:
            raise top["curve"].error("curve needs an 'axis' variable")
        axis = cm["axis"].scalar()
        if axis not in ring:
            raise cm["axis"].error(f"unknown variable {axis!r}")
        normal = cm["normal"].names() if "normal" in cm else tuple(v for v in names if v != axis)
        try:
            curve = AxisCurve(ring, axis, normal)
        except ValueError as err:
            raise top["curve"].error(str(err)) from None

    curves = []
    if "curves" in top:
        for item in top["curves"].sequence():
            m = item.mapping()
            for key in m:
                if key not in {"d", "g", "ell", "branches"}:
                    raise m[key].error(f"unknown curve key {key!r}")
            try:
                curves.append(CurveData(
                    d=m["d"].integer(), g=m["g"].integer(), ell=m["ell"].integer(),
                    branches=tuple(b.integer() for b in m["branches"].sequence()) if "branches" in m else (),
                ))
            except KeyError as err:
                raise item.error(f"curve entry is missing {err.args[0]!r}") from None
            except ValueError as err:
                if isinstance(err, SpecError):
                    raise
                raise item.error(str(err)) from None

    deformation = None
    if "deformation" in top:
        dm = top["deformation"].mapping()
        for key in ("f", "h", "model_variables", "model"):
            if key not in dm:
                raise top["deformation"].error(f"deformation block is missing {key!r}")
        try:
            ci = CompleteIntersectionData(ring, dm["f"].polys(ring), dm["h"].polys(ring))
        except DeformationError as err:
            raise top["deformation"].error(str(err)) from None
        wnames = dm["model_variables"].names()
        if len(wnames) != n:
            raise dm["model_variables"].error(f"{len(wnames)} model variables for dimension {n}")
        wring = PolyRing(wnames)
        model = dm["model"].polys(wring)
        if len(model) != n:
            raise dm["model"].error(f"{len(model)} model components for dimension {n}")
        samples = tuple(s.rational() for s in dm["samples"].sequence()) if "samples" in dm else (0, 1, 2)
        deformation = DeformationSpec(ci, model, samples)

    return SpecFile(n, k, ring, foliation, curve, curves, deformation, digest_bytes(text.encode()))


def load_spec(path: str) -> SpecFile:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as err:
        raise SpecError(f"cannot read file: {err.strerror}", None, path) from None
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError:
        raise SpecError("file is not UTF-8 text", None, path) from None
    spec = parse_spec(text, source=path)
    spec.digest = digest_bytes(data)
    return spec
