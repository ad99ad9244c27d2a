"""Parse, validate, and synthesize evaluation datasets.

A dataset is a table of N evaluated configurations: D control-parameter values
and M metric values per row, all metrics to be minimized. CSV columns are
role-tagged with ``param:`` / ``metric:`` prefixes; the JSON form carries the
same data plus optional explicit parameter domains.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyDataset,
    InvalidShape,
    MissingHeader,
    NonNumericCell,
    RaggedRow,
    SchemaViolation,
    UnknownColumnPrefix,
)

PARAM_PREFIX = "param:"
METRIC_PREFIX = "metric:"


@dataclass(frozen=True)
class EvaluationRecord:
    """One evaluated configuration: its parameter vector and metric vector."""

    params: tuple[float, ...]
    metrics: tuple[float, ...]

    def __post_init__(self):
        if len(self.params) < 1 or len(self.metrics) < 1:
            raise SchemaViolation("$.records", "params and metrics must be non-empty")
        for v in (*self.params, *self.metrics):
            if not math.isfinite(v):
                raise SchemaViolation("$.records", f"non-finite value {v!r}")


@dataclass(frozen=True)
class Dataset:
    """A named collection of evaluation records with closed parameter domains."""

    param_names: tuple[str, ...]
    metric_names: tuple[str, ...]
    records: tuple[EvaluationRecord, ...]
    param_domains: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if len(self.records) < 1:
            raise EmptyDataset("dataset has no records")
        if len(set(self.param_names)) != len(self.param_names):
            raise SchemaViolation("$.params", "parameter names must be unique")
        if len(set(self.metric_names)) != len(self.metric_names):
            raise SchemaViolation("$.metrics", "metric names must be unique")
        d, m = len(self.param_names), len(self.metric_names)
        if d < 1 or m < 1:
            raise SchemaViolation("$", "need at least one parameter and one metric")
        if len(self.param_domains) != d:
            raise SchemaViolation("$.param_domains", f"expected {d} domains")
        for j, (lo, hi) in enumerate(self.param_domains):
            if not (math.isfinite(lo) and math.isfinite(hi) and lo <= hi):
                raise SchemaViolation(f"$.param_domains[{j}]", f"bad interval [{lo}, {hi}]")
        for i, rec in enumerate(self.records):
            if len(rec.params) != d or len(rec.metrics) != m:
                raise SchemaViolation(f"$.records[{i}]", "record shape does not match names")
            for j, v in enumerate(rec.params):
                lo, hi = self.param_domains[j]
                if not (lo <= v <= hi):
                    raise SchemaViolation(
                        f"$.records[{i}].params[{j}]", f"{v} outside domain [{lo}, {hi}]"
                    )

    @property
    def d(self) -> int:
        return len(self.param_names)

    @property
    def m(self) -> int:
        return len(self.metric_names)

    @property
    def n(self) -> int:
        return len(self.records)

    @cached_property
    def params_matrix(self) -> np.ndarray:
        """(N, D) array of parameter vectors."""
        return np.array([r.params for r in self.records], dtype=float)

    @cached_property
    def metrics_matrix(self) -> np.ndarray:
        """(N, M) array of metric vectors."""
        return np.array([r.metrics for r in self.records], dtype=float)


def _parse_cell(raw: str, row: int, col: int) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise NonNumericCell(row, col, raw) from None
    if not math.isfinite(value):
        raise NonNumericCell(row, col, raw)
    return value


def parse_csv(text: str) -> Dataset:
    """Parse a role-tagged CSV document into a Dataset.

    The header is mandatory and every column name carries a ``param:`` or
    ``metric:`` prefix. Parameter domains are inferred as the observed
    [min, max] per column.
    """
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise EmptyDataset("no content")
    header = [c.strip() for c in lines[0].split(",")]
    if not any(c.startswith((PARAM_PREFIX, METRIC_PREFIX)) for c in header):
        raise MissingHeader("first row is not a param:/metric: header")
    roles: list[tuple[str, str]] = []
    for cell in header:
        if cell.startswith(PARAM_PREFIX):
            roles.append(("param", cell[len(PARAM_PREFIX):]))
        elif cell.startswith(METRIC_PREFIX):
            roles.append(("metric", cell[len(METRIC_PREFIX):]))
        else:
            raise UnknownColumnPrefix(cell)
    param_names = tuple(name for role, name in roles if role == "param")
    metric_names = tuple(name for role, name in roles if role == "metric")
    if not param_names or not metric_names:
        raise SchemaViolation("$", "need at least one param: and one metric: column")
    if any(not name for name in (*param_names, *metric_names)):
        raise SchemaViolation("$", "empty column name")

    records = []
    for row_idx, line in enumerate(lines[1:], start=1):
        cells = [c.strip() for c in line.split(",")]
        if len(cells) != len(roles):
            raise RaggedRow(row_idx, len(roles), len(cells))
        params, metrics = [], []
        for col_idx, ((role, _), raw) in enumerate(zip(roles, cells)):
            value = _parse_cell(raw, row_idx, col_idx)
            (params if role == "param" else metrics).append(value)
        records.append(EvaluationRecord(tuple(params), tuple(metrics)))
    if not records:
        raise EmptyDataset("header only, no data rows")

    cols = np.array([r.params for r in records], dtype=float)
    domains = tuple((float(cols[:, j].min()), float(cols[:, j].max())) for j in range(cols.shape[1]))
    return Dataset(param_names, metric_names, tuple(records), domains)


def write_csv(dataset: Dataset) -> str:
    """Serialize a Dataset to CSV; values use shortest round-trip decimals.

    The format carries no quoting, so names containing separators are
    rejected rather than silently corrupted.
    """
    for name in (*dataset.param_names, *dataset.metric_names):
        if "," in name or "\n" in name or "\r" in name:
            raise SchemaViolation("$", f"name {name!r} cannot appear in CSV")
    header = [PARAM_PREFIX + n for n in dataset.param_names] + [
        METRIC_PREFIX + n for n in dataset.metric_names
    ]
    lines = [",".join(header)]
    for rec in dataset.records:
        lines.append(",".join(repr(v) for v in (*rec.params, *rec.metrics)))
    return "\n".join(lines) + "\n"


def _require(cond: bool, path: str, message: str):
    if not cond:
        raise SchemaViolation(path, message)


def _as_number(value, path: str) -> float:
    _require(isinstance(value, (int, float)) and not isinstance(value, bool), path, "expected a number")
    value = float(value)
    _require(math.isfinite(value), path, "value must be finite")
    return value


def parse_json(text: str) -> Dataset:
    """Parse the JSON dataset document (see write_json for the schema)."""
    if not text.strip():
        raise EmptyDataset("no content")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaViolation("$", f"invalid JSON: {exc.msg}") from None
    _require(isinstance(doc, dict), "$", "expected an object")
    for key in ("params", "metrics", "records"):
        _require(key in doc, f"$.{key}", "missing required key")

    params = doc["params"]
    metrics = doc["metrics"]
    _require(isinstance(params, list) and all(isinstance(p, str) for p in params),
             "$.params", "expected a list of strings")
    _require(isinstance(metrics, list) and all(isinstance(m, str) for m in metrics),
             "$.metrics", "expected a list of strings")

    raw_records = doc["records"]
    _require(isinstance(raw_records, list), "$.records", "expected a list")
    if not raw_records:
        raise EmptyDataset("records is empty")
    records = []
    for i, item in enumerate(raw_records):
        path = f"$.records[{i}]"
        _require(isinstance(item, dict), path, "expected an object")
        for key in ("params", "metrics"):
            _require(key in item and isinstance(item[key], list), f"{path}.{key}", "expected a list")
        _require(len(item["params"]) == len(params), f"{path}.params", "length mismatch")
        _require(len(item["metrics"]) == len(metrics), f"{path}.metrics", "length mismatch")
        p = tuple(_as_number(v, f"{path}.params[{j}]") for j, v in enumerate(item["params"]))
        f = tuple(_as_number(v, f"{path}.metrics[{j}]") for j, v in enumerate(item["metrics"]))
        records.append(EvaluationRecord(p, f))

    if "param_domains" in doc and doc["param_domains"] is not None:
        raw_domains = doc["param_domains"]
        _require(isinstance(raw_domains, list) and len(raw_domains) == len(params),
                 "$.param_domains", f"expected {len(params)} intervals")
        domains = []
        for j, pair in enumerate(raw_domains):
            path = f"$.param_domains[{j}]"
            _require(isinstance(pair, list) and len(pair) == 2, path, "expected [lo, hi]")
            lo, hi = (_as_number(v, path) for v in pair)
            _require(lo <= hi, path, "lo must be <= hi")
            domains.append((lo, hi))
        domains = tuple(domains)
    else:
        cols = np.array([r.params for r in records], dtype=float)
        domains = tuple(
            (float(cols[:, j].min()), float(cols[:, j].max())) for j in range(cols.shape[1])
        )
    return Dataset(tuple(params), tuple(metrics), tuple(records), domains)


def dataset_to_json_dict(dataset: Dataset) -> dict:
    return {
        "params": list(dataset.param_names),
        "metrics": list(dataset.metric_names),
        "param_domains": [[lo, hi] for lo, hi in dataset.param_domains],
        "records": [
            {"params": list(r.params), "metrics": list(r.metrics)} for r in dataset.records
        ],
    }


def write_json(dataset: Dataset) -> str:
    return json.dumps(dataset_to_json_dict(dataset))


def generate_synthetic(
    d: int,
    m: int,
    n: int,
    a: Sequence[float],
    b: float,
    noise: float,
    seed: int,
) -> Dataset:
    """Generate a dataset whose metric vectors lie on or weakly above the
    surface prod(f_i - a_i) = b.

    Coordinate gaps are drawn log-uniformly and the last gap closes the
    product, so with ``noise=0`` every record sits exactly on the surface.
    Nonnegative per-coordinate slack scaled by ``noise`` pushes points into
    the dominated region. Parameters are uniform on [0, 1]^d.
    """
    if d < 1 or m < 2 or n < m + 1:
        raise InvalidShape(f"need d >= 1, m >= 2, n >= m+1; got d={d}, m={m}, n={n}")
    if len(a) != m:
        raise InvalidShape(f"offset vector has length {len(a)}, expected {m}")
    if not b > 0:
        raise InvalidShape("product level b must be positive")
    if noise < 0:
        raise InvalidShape("noise must be nonnegative")

    rng = np.random.default_rng(seed)
    params = rng.uniform(0.0, 1.0, size=(n, d))
    center = math.log(b) / m
    log_gaps = rng.uniform(center - 1.0, center + 1.0, size=(n, m - 1))
    gaps = np.exp(log_gaps)
    last = b / np.prod(gaps, axis=1)
    metrics = np.asarray(a, dtype=float) + np.column_stack([gaps, last])
    if noise > 0:
        metrics = metrics + noise * rng.random(size=(n, m))

    records = tuple(
        EvaluationRecord(tuple(map(float, params[i])), tuple(map(float, metrics[i])))
        for i in range(n)
    )
    param_names = tuple(f"p{j + 1}" for j in range(d))
    metric_names = tuple(f"f{j + 1}" for j in range(m))
    domains = tuple((0.0, 1.0) for _ in range(d))
    return Dataset(param_names, metric_names, records, domains)
