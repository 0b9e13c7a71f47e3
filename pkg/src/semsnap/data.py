"""Tabular dataset loading, grouped aggregation, and domain computation."""
from __future__ import annotations

import csv
import datetime
import io
from dataclasses import dataclass

from .errors import (
    CellTypeError,
    EmptyData,
    NonScalarGroup,
    ParseError,
    SchemaError,
    UnknownColumn,
    VariantMismatch,
)
from .model import (
    CategoricalDomain,
    ChannelBinding,
    ChannelClass,
    DataDomain,
    FieldRef,
    QuantitativeDomain,
    View,
)

COLUMN_TYPES = ("nominal", "ordinal", "quantitative", "temporal")


@dataclass(frozen=True)
class Column:
    name: str
    type: str


@dataclass(frozen=True)
class Dataset:
    name: str
    columns: tuple  # Column
    rows: tuple  # tuples of parsed cell values

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise UnknownColumn(f"no column named {name!r}")

    def has_column(self, name: str) -> bool:
        return any(c.name == name for c in self.columns)

    def index(self, name: str) -> int:
        for i, c in enumerate(self.columns):
            if c.name == name:
                return i
        raise UnknownColumn(f"no column named {name!r}")

    def values(self, name: str) -> list:
        i = self.index(name)
        return [r[i] for r in self.rows]


@dataclass(frozen=True)
class SeriesTable:
    """Aggregate value per group, in a defined group order."""

    keys: tuple
    values: tuple

    def __post_init__(self) -> None:
        if len(self.keys) != len(self.values):
            raise ValueError("keys and values must align")


def _parse_cell(raw: str, col: Column, row_no: int):
    raw = raw.strip()
    if col.type == "quantitative":
        try:
            value = float(raw)
        except ValueError:
            raise CellTypeError(
                f"row {row_no}, column {col.name!r}: {raw!r} is not numeric"
            ) from None
        if value != value or value in (float("inf"), float("-inf")):
            raise CellTypeError(
                f"row {row_no}, column {col.name!r}: non-finite value")
        return value
    if col.type == "temporal":
        try:
            return datetime.date.fromisoformat(raw)
        except ValueError:
            raise CellTypeError(
                f"row {row_no}, column {col.name!r}: {raw!r} is not an "
                f"ISO-8601 date") from None
    return raw


def load_dataset(text: str, schema: list, name: str = "dataset") -> Dataset:
    """Parse CSV content against a declared column-type schema.

    ``schema`` is a list of (name, type) pairs or Column objects covering
    every column referenced downstream; the first CSV row is the header.
    """
    columns = []
    for entry in schema:
        col = entry if isinstance(entry, Column) else Column(*entry)
        if col.type not in COLUMN_TYPES:
            raise SchemaError(f"unknown column type {col.type!r}")
        columns.append(col)
    by_name = {c.name: c for c in columns}

    try:
        reader = csv.reader(io.StringIO(text))
        raw_rows = list(reader)
    except csv.Error as exc:
        raise ParseError(f"malformed CSV: {exc}") from None
    if not raw_rows:
        raise ParseError("empty CSV: missing header row")
    header = [h.strip() for h in raw_rows[0]]
    for col in columns:
        if col.name not in header:
            raise SchemaError(f"schema column {col.name!r} missing from CSV")

    ordered = [by_name.get(h, Column(h, "nominal")) for h in header]
    rows = []
    for row_no, raw in enumerate(raw_rows[1:], start=2):
        if not raw or (len(raw) == 1 and not raw[0].strip()):
            continue
        if len(raw) != len(header):
            raise ParseError(
                f"row {row_no}: expected {len(header)} cells, got {len(raw)}")
        rows.append(tuple(_parse_cell(cell, col, row_no)
                          for cell, col in zip(raw, ordered)))
    return Dataset(name=name, columns=tuple(ordered), rows=tuple(rows))


def _group_rows(dataset: Dataset, grouping: str) -> list:
    """(key, member-rows) pairs; nominal keys keep data order, ordered types
    sort ascending."""
    gi = dataset.index(grouping)
    groups: dict = {}
    order = []
    for row in dataset.rows:
        key = row[gi]
        if key not in groups:
            groups[key] = []
            order.append(key)
        groups[key].append(row)
    if dataset.column(grouping).type in ("ordinal", "temporal", "quantitative"):
        order = sorted(order)
    return [(k, groups[k]) for k in order]


def _aggregate(aggregate: str, cells: list, where: str) -> float:
    if aggregate == "count":
        return float(len(cells))
    if aggregate == "none":
        if len(cells) != 1:
            raise NonScalarGroup(
                f"{where}: aggregate 'none' over a group of {len(cells)} rows")
        return float(cells[0])
    if aggregate == "sum":
        return float(sum(cells))
    if aggregate == "mean":
        return float(sum(cells) / len(cells))
    if aggregate == "min":
        return float(min(cells))
    return float(max(cells))


def group_aggregate(dataset: Dataset, grouping: str,
                    field: FieldRef) -> SeriesTable:
    """One aggregate value per distinct grouping value (SQL GROUP BY)."""
    if field.column != "*":
        dataset.column(field.column)  # raises UnknownColumn
        if field.aggregate in ("sum", "mean", "min", "max", "none"):
            if dataset.column(field.column).type != "quantitative":
                raise CellTypeError(
                    f"aggregate {field.aggregate!r} needs a quantitative "
                    f"column, {field.column!r} is not")
    keys, values = [], []
    for key, members in _group_rows(dataset, grouping):
        keys.append(key)
        if field.aggregate == "count":
            values.append(float(len(members)))
        else:
            ci = dataset.index(field.column)
            cells = [r[ci] for r in members]
            values.append(_aggregate(field.aggregate, cells,
                                     f"group {key!r} of {grouping!r}"))
    return SeriesTable(keys=tuple(keys), values=tuple(values))


_ZERO_BASELINE_CHARTS = ("bar", "area", "streamgraph")


def domain_value(value) -> float:
    """Numeric stand-in for a domain endpoint (dates become ordinals)."""
    if isinstance(value, datetime.date):
        return float(value.toordinal())
    return float(value)


def compute_domain(dataset: Dataset, view: View,
                   binding: ChannelBinding) -> DataDomain:
    """Data domain for a mapped channel.

    Value axes of bar/area/streamgraph charts anchor at zero; everything
    else uses the raw extent. Categorical channels keep group order.
    """
    if binding.mapping.is_empty:
        raise EmptyData("cannot compute a domain for an unmapped channel")
    if not dataset.rows:
        raise EmptyData("dataset has no rows")
    field = binding.mapping.field
    if field.column != "*" and \
            dataset.column(field.column).type in ("nominal", "ordinal"):
        keys = [k for k, _ in _group_rows(dataset, field.column)]
        return CategoricalDomain(values=tuple(keys))
    if field.aggregate == "none" and field.column != "*":
        if dataset.column(field.column).type == "temporal":
            vals = [domain_value(v) for v in dataset.values(field.column)]
            return QuantitativeDomain(min=min(vals), max=max(vals))
        vals = dataset.values(field.column)
        lo, hi = min(vals), max(vals)
    else:
        table = group_aggregate(dataset, view.grouping, field)
        lo, hi = min(table.values), max(table.values)
    if (binding.cls is ChannelClass.POSITION_Y
            and view.chart_type in _ZERO_BASELINE_CHARTS):
        lo = min(0.0, lo)
    return QuantitativeDomain(min=float(lo), max=float(hi))


def union_domain(a: DataDomain, b: DataDomain) -> DataDomain:
    if isinstance(a, QuantitativeDomain) and isinstance(b, QuantitativeDomain):
        return QuantitativeDomain(min=min(a.min, b.min), max=max(a.max, b.max))
    if isinstance(a, CategoricalDomain) and isinstance(b, CategoricalDomain):
        merged = list(a.values) + [v for v in b.values if v not in a.values]
        return CategoricalDomain(values=tuple(merged))
    raise VariantMismatch(
        f"cannot union {type(a).__name__} with {type(b).__name__}")
