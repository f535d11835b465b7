"""Python surface of the trajectory annotation pipeline."""

from ._core import (
    AnnotationParseError,
    ConfigError,
    DataError,
    __version__,
    annotate_dataset,
    dtw_distance,
    endpoint_l2,
    evaluate,
    init_grid,
    mask_iou,
    parse_annotation,
    rdp_simplify,
    serialize_annotation,
    simplify_mask,
    split_counts,
    synth_dataset,
    two_means,
)

__all__ = [
    "AnnotationParseError",
    "ConfigError",
    "DataError",
    "__version__",
    "annotate_dataset",
    "dtw_distance",
    "endpoint_l2",
    "evaluate",
    "init_grid",
    "mask_iou",
    "parse_annotation",
    "rdp_simplify",
    "serialize_annotation",
    "simplify_mask",
    "split_counts",
    "synth_dataset",
    "two_means",
]
