"""Layouts of unit-square symbols in a strip, maximizing the least visible perimeter."""

from .core import (
    BadSquareFlags,
    DistinctnessError,
    DomainError,
    InputError,
    Instance,
    Layout,
    SquareVisibility,
    StickoutProfile,
    VisibilityReport,
    classify_bad_squares,
    evaluate,
    stickout_profile,
    uniform_instance,
)
from .document import (
    CsvData,
    DocumentMeta,
    LayoutDocument,
    SquareRecord,
    document_from_layout,
    document_to_layout,
    ingest_csv,
)
from .oracle import (
    GridSearchResult,
    grid_search,
    grid_search_restricted,
    lp_reference,
    sample_visible_perimeter,
)
from .strips import Bucket, BucketPlan, bucketize, jitter, plan_buckets, squeeze, squeeze_with_plan, zigzag
from .svg import render_svg
from .waterfill import (
    DEFAULT_DELTA,
    WaterFillSolution,
    build_staircase,
    optimize_point_stabbed,
    water_fill,
)

__version__ = "0.1.0"

__all__ = [
    "BadSquareFlags",
    "Bucket",
    "BucketPlan",
    "CsvData",
    "DEFAULT_DELTA",
    "DistinctnessError",
    "DocumentMeta",
    "DomainError",
    "GridSearchResult",
    "InputError",
    "Instance",
    "Layout",
    "LayoutDocument",
    "SquareRecord",
    "SquareVisibility",
    "StickoutProfile",
    "VisibilityReport",
    "WaterFillSolution",
    "bucketize",
    "build_staircase",
    "classify_bad_squares",
    "document_from_layout",
    "document_to_layout",
    "evaluate",
    "grid_search",
    "grid_search_restricted",
    "ingest_csv",
    "jitter",
    "lp_reference",
    "optimize_point_stabbed",
    "plan_buckets",
    "render_svg",
    "sample_visible_perimeter",
    "squeeze",
    "squeeze_with_plan",
    "stickout_profile",
    "uniform_instance",
    "water_fill",
    "zigzag",
]
