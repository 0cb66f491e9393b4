"""Group specification files.

A spec is a small YAML document::

    kind: split_extension
    matrix: [[2, 1], [1, 1]]
    generators:            # optional, defaults to t, e1..er
      x: "t e1"            # a word over the standard labels
      y: {vector: [1, 0], t: 1}

    kind: matrix_group
    generators:
      g: [[1, 1], [0, 1]]

Integers may be written as plain numbers or as decimal strings.
"""
from __future__ import annotations

import os
import re

import yaml

from .errors import GrowthForgeError, ParseError, ValidationError
from .groups import GroupSpec, Word

_INT_RE = re.compile(r"^[+-]?[0-9]+$")
# integers beyond this magnitude are written as strings
_SAFE_INT = 2**53


def _err(node, message):
    mark = getattr(node, "start_mark", None)
    if mark is None:
        return ParseError(message)
    return ParseError(message, mark.line + 1, mark.column + 1)


def _int(node) -> int:
    if not isinstance(node, yaml.ScalarNode) or not _INT_RE.match(node.value.strip()):
        raise _err(node, f"expected an integer, got {getattr(node, 'value', 'a collection')!r}")
    return int(node.value.strip())


def _mapping(node, what) -> dict:
    if not isinstance(node, yaml.MappingNode):
        raise _err(node, f"{what} must be a mapping")
    out = {}
    for k, v in node.value:
        if not isinstance(k, yaml.ScalarNode):
            raise _err(k, f"keys of {what} must be scalars")
        if k.value in out:
            raise _err(k, f"duplicate key {k.value!r} in {what}")
        out[k.value] = (k, v)
    return out


def _matrix(node):
    if not isinstance(node, yaml.SequenceNode) or not node.value:
        raise _err(node, "matrix must be a nonempty list of rows")
    rows = []
    for row in node.value:
        if not isinstance(row, yaml.SequenceNode) or not row.value:
            raise _err(row, "matrix row must be a nonempty list")
        rows.append([_int(x) for x in row.value])
    if any(len(r) != len(rows[0]) for r in rows):
        raise _err(node, "matrix rows have different lengths")
    if len(rows) != len(rows[0]):
        raise _err(node, f"matrix is {len(rows)}x{len(rows[0])}, not square")
    return rows


def _scalar(node, what) -> str:
    if not isinstance(node, yaml.ScalarNode):
        raise _err(node, f"{what} must be a scalar")
    return node.value


def parse_group_spec(source: str) -> GroupSpec:
    """Parse a spec from a file path or from inline YAML text."""
    text = source
    if "\n" not in source and (":" not in source or os.path.exists(source)):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        root = yaml.compose(text)
    except yaml.MarkedYAMLError as exc:
        mark = exc.problem_mark or exc.context_mark
        raise ParseError(exc.problem or str(exc), mark.line + 1 if mark else None,
                         mark.column + 1 if mark else None) from None
    except yaml.YAMLError as exc:
        raise ParseError(str(exc)) from None
    if root is None:
        raise ParseError("empty group specification")
    top = _mapping(root, "group specification")
    unknown = set(top) - {"kind", "matrix", "degree", "generators"}
    if unknown:
        key = sorted(unknown)[0]
        raise _err(top[key][0], f"unknown key {key!r}")
    if "kind" not in top:
        raise _err(root, "missing 'kind'")
    kind = _scalar(top["kind"][1], "kind")
    gens_node = top.get("generators", (None, None))[1]
    try:
        if kind == "split_extension":
            if "matrix" not in top:
                raise _err(root, "split_extension needs 'matrix'")
            matrix = _matrix(top["matrix"][1])
            generators = None
            if gens_node is not None:
                generators = {}
                for label, (knode, vnode) in _mapping(gens_node, "generators").items():
                    if isinstance(vnode, yaml.ScalarNode):
                        try:
                            generators[label] = Word.parse(vnode.value)
                        except ParseError as exc:
                            raise _err(vnode, str(exc)) from None
                    else:
                        fields = _mapping(vnode, f"generator {label}")
                        if set(fields) != {"vector", "t"}:
                            raise _err(vnode, "split generator needs exactly 'vector' and 't'")
                        vec_node = fields["vector"][1]
                        if not isinstance(vec_node, yaml.SequenceNode):
                            raise _err(vec_node, "vector must be a list")
                        vec = [_int(x) for x in vec_node.value]
                        if len(vec) != len(matrix):
                            raise _err(vec_node, f"vector must have length {len(matrix)}")
                        generators[label] = (vec, _int(fields["t"][1]))
            return GroupSpec.split_extension(matrix, generators)
        if kind == "matrix_group":
            if gens_node is None:
                raise _err(root, "matrix_group needs 'generators'")
            gens = {label: _matrix(v) for label, (_, v) in _mapping(gens_node, "generators").items()}
            spec = GroupSpec.matrix_group(gens)
            if "degree" in top and _int(top["degree"][1]) != spec.group.degree:
                raise _err(top["degree"][1], "degree does not match generator size")
            return spec
    except ParseError:
        raise
    except GrowthForgeError as exc:
        if isinstance(exc, ValidationError):
            raise
        raise ValidationError(str(exc)) from None
    raise _err(top["kind"][1], f"unknown kind {kind!r}")


def _row(values) -> str:
    return "[" + ", ".join(str(x) if abs(x) < _SAFE_INT else f'"{x}"' for x in values) + "]"


def _mat(m) -> str:
    return "[" + ", ".join(_row(r) for r in m.rows) + "]"


def serialize_group_spec(spec: GroupSpec) -> str:
    """Canonical YAML text; parsing it back yields an equal spec."""
    lines = [f"kind: {spec.kind}"]
    if spec.kind == "split_extension":
        lines.append(f"matrix: {_mat(spec.matrix)}")
        lines.append("generators:")
        for label, g in spec.generators.items():
            lines.append(f"  {label}: {{vector: {_row(g.w)}, t: {_row([g.k])[1:-1]}}}")
    else:
        lines.append(f"degree: {spec.group.degree}")
        lines.append("generators:")
        for label, g in spec.generators.items():
            lines.append(f"  {label}: {_mat(g.m)}")
    return "\n".join(lines) + "\n"
