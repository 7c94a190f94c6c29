"""Line-oriented text formats for closure operators and groups.

Matroid files::

    pregeometry v1
    ground 8
    kind linear 2 3

``kind`` is one of ``explicit``, ``linear <q> <d>``, ``affine <q> <d>``,
``trivial [loops...]`` or ``subgroup <group file>``. Explicit operators
follow with ``flats``, one flat per line (``-`` for the empty flat) and
``end``. Field elements are indexed little-endian, index = Σ c_i·q^i.

Group files::

    group v1
    order 4
    table
    0 1 2 3
    ...
    end

Row i, column j holds i·j and element 0 must be the identity. Blank lines
and ``#`` comments are ignored everywhere.
"""
from pathlib import Path
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from errors import InputError, ParseError
from models import ClosureTable, FiniteGroup
from models.element_set import iter_bits
from services.constructors import (affine_matroid, explicit_from_flats, linear_matroid,
                                   subgroup_closure, trivial_pregeometry)
from services.finite_field import FieldSpec

MATROID_HEADER = "pregeometry v1"
GROUP_HEADER = "group v1"

PathLike = Union[str, Path]


class _Lines:
    """Content lines with their 1-based line numbers."""

    def __init__(self, text: str):
        self._items: List[Tuple[int, str]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            content = raw.split("#", 1)[0].strip()
            if content:
                self._items.append((number, content))
        self._position = 0
        self.last_number = self._items[-1][0] if self._items else 1

    def next(self, expected: str) -> Tuple[int, str]:
        if self._position >= len(self._items):
            raise ParseError(f"unexpected end of file, expected {expected}", self.last_number)
        item = self._items[self._position]
        self._position += 1
        return item

    def finish(self) -> None:
        if self._position < len(self._items):
            number, content = self._items[self._position]
            raise ParseError(f"unexpected content {content!r}", number)

    def __iter__(self) -> Iterator[Tuple[int, str]]:
        while self._position < len(self._items):
            yield self.next("more lines")


def _ints(tokens: List[str], number: int) -> List[int]:
    try:
        return [int(token) for token in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", number) from None


def _keyword(lines: _Lines, keyword: str, count: Optional[int] = None) -> Tuple[int, List[str]]:
    number, content = lines.next(keyword)
    tokens = content.split()
    if tokens[0] != keyword:
        raise ParseError(f"expected {keyword!r}, got {tokens[0]!r}", number)
    if count is not None and len(tokens) != count + 1:
        raise ParseError(f"{keyword!r} takes {count} argument(s)", number)
    return number, tokens[1:]


def _header(lines: _Lines, header: str) -> None:
    number, content = lines.next(header)
    if " ".join(content.split()) != header:
        raise ParseError(f"expected header {header!r}", number)


def _in_range(values: List[int], size: int, number: int) -> List[int]:
    for value in values:
        if value < 0 or value >= size:
            raise ParseError(f"index {value} is outside 0..{size - 1}", number)
    return values


# Matroids ---------------------------------------------------------------
def parse_matroid(text: str, base_dir: Optional[Path] = None) -> ClosureTable:
    lines = _Lines(text)
    _header(lines, MATROID_HEADER)
    number, args = _keyword(lines, "ground", 1)
    size = _ints(args, number)[0]
    if size < 1:
        raise ParseError("ground must have at least one element", number)
    number, args = _keyword(lines, "kind")
    if not args:
        raise ParseError("kind is missing", number)
    kind, args = args[0], args[1:]

    if kind == "explicit":
        if args:
            raise ParseError("'explicit' takes no arguments", number)
        _keyword(lines, "flats", 0)
        flats = []
        for number, content in lines:
            if content == "end":
                break
            if content == "-":
                flats.append([])
            else:
                flats.append(_in_range(_ints(content.split(), number), size, number))
        else:
            raise ParseError("flat list is not terminated by 'end'", lines.last_number)
        table = explicit_from_flats(size, flats)
    elif kind in ("linear", "affine"):
        if len(args) != 2:
            raise ParseError(f"'{kind}' takes q and d", number)
        q, d = _ints(args, number)
        try:
            spec = FieldSpec(q, d)
        except InputError as exc:
            raise ParseError(str(exc), number) from None
        if spec.size != size:
            raise ParseError(f"ground {size} does not match q^d = {spec.size}", number)
        table = linear_matroid(spec) if kind == "linear" else affine_matroid(spec)
    elif kind == "trivial":
        loops = _in_range(_ints(args, number), size, number)
        table = trivial_pregeometry(size, loops)
    elif kind == "subgroup":
        if len(args) != 1:
            raise ParseError("'subgroup' takes a group file", number)
        path = Path(args[0])
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        try:
            group = load_group(path)
        except OSError as exc:
            raise ParseError(f"cannot read group file {args[0]!r}: {exc.strerror}", number) from None
        if group.order != size:
            raise ParseError(f"group order {group.order} does not match ground {size}", number)
        table = subgroup_closure(group, source=args[0])
    else:
        raise ParseError(f"unknown kind {kind!r}", number)
    lines.finish()
    return table


def load_matroid(path: PathLike) -> ClosureTable:
    path = Path(path)
    return parse_matroid(path.read_text(encoding="utf-8"), base_dir=path.parent)


def serialize_matroid(table: ClosureTable, comments: Tuple[str, ...] = ()) -> str:
    out = [MATROID_HEADER]
    out.extend(f"# {comment}" for comment in comments)
    out.append(f"ground {table.size}")
    if table.kind == "explicit":
        out.append("kind explicit")
        out.append("flats")
        for flat in table.flats:
            out.append(" ".join(str(e) for e in iter_bits(flat)) if flat else "-")
        out.append("end")
    elif table.kind in ("linear", "affine", "trivial", "subgroup"):
        out.append(" ".join(("kind", table.kind) + tuple(table.kind_args)))
    else:
        raise InputError(f"a {table.kind} operator has no file form; write its flats explicitly")
    return "\n".join(out) + "\n"


def write_matroid(table: ClosureTable, path: PathLike, comments: Tuple[str, ...] = ()) -> None:
    Path(path).write_text(serialize_matroid(table, comments), encoding="utf-8")


# Groups -----------------------------------------------------------------
def parse_group(text: str, name: str = "group") -> FiniteGroup:
    lines = _Lines(text)
    _header(lines, GROUP_HEADER)
    number, args = _keyword(lines, "order", 1)
    order = _ints(args, number)[0]
    if order < 1:
        raise ParseError("order must be positive", number)
    _keyword(lines, "table", 0)
    rows = []
    for _ in range(order):
        number, content = lines.next("a table row")
        row = _ints(content.split(), number)
        if len(row) != order:
            raise ParseError(f"row has {len(row)} entries, expected {order}", number)
        rows.append(_in_range(row, order, number))
    _keyword(lines, "end", 0)
    lines.finish()
    return FiniteGroup(np.array(rows, dtype=np.int64), name=name)


def load_group(path: PathLike) -> FiniteGroup:
    path = Path(path)
    return parse_group(path.read_text(encoding="utf-8"), name=path.stem)


def serialize_group(group: FiniteGroup) -> str:
    out = [GROUP_HEADER, f"order {group.order}", "table"]
    out.extend(" ".join(str(int(v)) for v in row) for row in group.table)
    out.append("end")
    return "\n".join(out) + "\n"


def write_group(group: FiniteGroup, path: PathLike) -> None:
    Path(path).write_text(serialize_group(group), encoding="utf-8")
