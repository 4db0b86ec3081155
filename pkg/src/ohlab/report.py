"""Machine-readable experiment reports.

JSON is the canonical serialisation: keys sorted, two-space indent, floats
written with Python's shortest round-trip repr.  Identical configurations
produce byte-identical JSON, so wall-clock timing is never part of the
canonical document (runners print it to stderr instead).  CSV is a flat
projection of the rows for plotting; it encodes exactly the same numeric
values as the JSON.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

__all__ = ["Report", "MergeError", "report_merge", "flatten_row"]

SCHEMA_VERSION = "0.1.0"


class MergeError(ValueError):
    """Incompatible reports offered for merging."""


@dataclass
class Report:
    experiment: str
    params: dict
    rows: list
    constants: list = field(default_factory=list)
    version: str = SCHEMA_VERSION
    wall_time_s: float | None = None   # stderr-only; excluded from canonical output

    def to_dict(self) -> dict:
        out = {
            "experiment": self.experiment,
            "version": self.version,
            "params": self.params,
            "rows": self.rows,
        }
        if self.constants:
            out["constants"] = self.constants
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=True) + "\n"

    def to_csv(self) -> str:
        flat = [flatten_row(r) for r in self.rows]
        keys = sorted({k for r in flat for k in r})
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(keys)
        for r in flat:
            writer.writerow([_csv_cell(r.get(k)) for k in keys])
        return buf.getvalue()


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)   # shortest round-trip decimal, same as the JSON encoder
    return str(v)


def flatten_row(row: dict, prefix: str = "") -> dict:
    """Flatten nested dicts into dotted keys; lists are JSON-encoded."""
    out = {}
    for k, v in row.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(flatten_row(v, prefix=f"{key}."))
        elif isinstance(v, (list, tuple)):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


def report_merge(reports, sources=None) -> Report:
    """Concatenate compatible reports into one, tagging rows with sources.

    All inputs must agree on experiment id and schema version; constants with
    the same name must carry the same value.  Rows are sorted by their "n"
    field when every row has one, otherwise input order is kept.
    """
    reports = list(reports)
    if not reports:
        raise MergeError("nothing to merge")
    if sources is None:
        sources = [f"input{i}" for i in range(len(reports))]
    head = reports[0]
    merged_rows = []
    constants = {}
    params = {}
    for rep, src in zip(reports, sources):
        if rep.experiment != head.experiment:
            raise MergeError(
                f"{src}: experiment {rep.experiment!r} differs from {head.experiment!r}"
            )
        if rep.version != head.version:
            raise MergeError(f"{src}: version {rep.version!r} differs from {head.version!r}")
        for c in rep.constants:
            name = c.get("name")
            if name in constants and constants[name] != c:
                raise MergeError(f"{src}: constant {name!r} conflicts with an earlier input")
            constants[name] = c
        params[src] = rep.params
        for row in rep.rows:
            if not isinstance(row, dict):
                raise MergeError(f"{src}: rows must be objects")
            tagged = dict(row)
            tagged["source"] = src
            merged_rows.append(tagged)
    if merged_rows and all("n" in r for r in merged_rows):
        merged_rows.sort(key=lambda r: r["n"])
    return Report(
        experiment=head.experiment,
        params={"merged": params},
        rows=merged_rows,
        constants=list(constants.values()),
        version=head.version,
    )


def report_from_dict(d: dict, source: str = "<memory>") -> Report:
    for key in ("experiment", "version", "params", "rows"):
        if key not in d:
            raise MergeError(f"{source}: missing required field {key!r}")
    return Report(
        experiment=d["experiment"],
        params=d["params"],
        rows=d["rows"],
        constants=d.get("constants", []),
        version=d["version"],
    )
