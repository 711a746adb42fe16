"""CSV ingestion and the JSON layout document.

A layout document is the persisted form of a solved instance: strip
dimensions, one record per square (id, y, x, stacking rank), and a meta
block naming the method that produced it.  All coordinates are rounded
to 12 significant digits when the document is built, so serializing and
re-parsing a document is exact and byte-stable.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .core import Instance, InputError, Layout, evaluate


def quantize(value: float) -> float:
    """Round to 12 significant digits (the document's decimal encoding)."""
    return float(f"{value:.12g}")


@dataclass(frozen=True)
class SquareRecord:
    id: str
    y: float
    x: float
    z: int


@dataclass(frozen=True)
class DocumentMeta:
    method: str
    params: dict[str, str] = field(default_factory=dict)
    min_gap: float = 0.0


@dataclass(frozen=True)
class LayoutDocument:
    width: float
    height: float
    squares: tuple[SquareRecord, ...]
    meta: DocumentMeta


def document_from_layout(
    instance: Instance,
    layout: Layout,
    labels: Sequence[str] | None = None,
    method: str = "",
    params: dict[str, str] | None = None,
) -> LayoutDocument:
    """Build a document from a solved layout.

    Coordinates are quantized first and ``min_gap`` is evaluated on the
    quantized values, so whatever a reader recomputes from the document
    matches the stored number bit for bit.
    """
    n = instance.n
    if labels is None:
        labels = [f"s{i}" for i in range(n)]
    if len(labels) != n:
        raise InputError(f"got {len(labels)} labels for {n} squares")
    q_width = quantize(instance.width)
    q_height = quantize(instance.height)
    q_ys = tuple(quantize(y) for y in instance.ys)
    q_xs = tuple(quantize(x) for x in layout.xs)
    q_instance = Instance(q_width, q_height, q_ys)
    q_layout = Layout(q_xs, layout.zorder)
    min_gap = evaluate(q_instance, q_layout).min_gap
    rank = [0] * n
    for pos, idx in enumerate(layout.zorder):
        rank[idx] = pos
    squares = tuple(
        SquareRecord(id=str(labels[i]), y=q_ys[i], x=q_xs[i], z=rank[i])
        for i in range(n)
    )
    return LayoutDocument(
        width=q_width,
        height=q_height,
        squares=squares,
        meta=DocumentMeta(method=method, params=dict(params or {}), min_gap=min_gap),
    )


def document_to_layout(doc: LayoutDocument) -> tuple[Instance, Layout, tuple[str, ...]]:
    """Rebuild the instance and layout a document describes."""
    order = sorted(range(len(doc.squares)), key=lambda i: doc.squares[i].y)
    ys = tuple(doc.squares[i].y for i in order)
    xs = tuple(doc.squares[i].x for i in order)
    labels = tuple(doc.squares[i].id for i in order)
    ranks = [doc.squares[i].z for i in order]
    if sorted(ranks) != list(range(len(ranks))):
        raise InputError("square z values must form a permutation of 0..n-1")
    zorder = [0] * len(ranks)
    for idx, r in enumerate(ranks):
        zorder[r] = idx
    instance = Instance(doc.width, doc.height, ys)
    return instance, Layout(xs, tuple(zorder)), labels


def dumps(doc: LayoutDocument) -> str:
    payload = {
        "width": doc.width,
        "height": doc.height,
        "squares": [
            {"id": s.id, "y": s.y, "x": s.x, "z": s.z} for s in doc.squares
        ],
        "meta": {
            "method": doc.meta.method,
            "params": doc.meta.params,
            "min_gap": doc.meta.min_gap,
        },
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> LayoutDocument:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not a layout document: {exc}") from exc
    try:
        squares = tuple(
            SquareRecord(
                id=str(s["id"]), y=float(s["y"]), x=float(s["x"]), z=int(s["z"])
            )
            for s in payload["squares"]
        )
        meta = payload["meta"]
        doc = LayoutDocument(
            width=float(payload["width"]),
            height=float(payload["height"]),
            squares=squares,
            meta=DocumentMeta(
                method=str(meta["method"]),
                params={str(k): str(v) for k, v in meta["params"].items()},
                min_gap=float(meta["min_gap"]),
            ),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"layout document is missing fields: {exc}") from exc
    return doc


def save(doc: LayoutDocument, path: str | Path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")


def load(path: str | Path) -> LayoutDocument:
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such layout file: {p}")
    return loads(p.read_text(encoding="utf-8"))


@dataclass(frozen=True)
class CsvData:
    """Parsed y-data: labels and y-values sorted ascending by y."""

    labels: tuple[str, ...]
    ys: tuple[float, ...]
    has_duplicates: bool


def ingest_csv(path: str | Path) -> CsvData:
    """Read `id,y` rows (or a bare y column) and sort them by y.

    An optional header row is tolerated.  Unparseable rows fail with
    their 1-based line number.  Duplicate y-values are only flagged here;
    the evaluator accepts them and the optimizers reject them.
    """
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such input file: {p}")
    rows: list[tuple[str, float]] = []
    with p.open(newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in row if c.strip() != ""]
            if not cells:
                continue
            if len(cells) == 1:
                label, y_text = f"s{len(rows)}", cells[0]
            elif len(cells) == 2:
                label, y_text = cells
            else:
                raise InputError(
                    f"line {lineno}: expected `id,y` or a single y value, "
                    f"got {len(cells)} fields"
                )
            try:
                y = float(y_text)
            except ValueError:
                if lineno == 1 and not rows:
                    continue  # header row
                raise InputError(
                    f"line {lineno}: could not parse y value {y_text!r}"
                ) from None
            rows.append((label, y))
    if not rows:
        raise InputError(f"{p}: no data rows")
    rows.sort(key=lambda r: r[1])
    ys = tuple(y for _, y in rows)
    labels = tuple(label for label, _ in rows)
    duplicates = any(b == a for a, b in zip(ys, ys[1:]))
    return CsvData(labels=labels, ys=ys, has_duplicates=duplicates)
