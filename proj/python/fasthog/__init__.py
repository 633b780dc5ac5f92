"""Fast HOG descriptors built from an orientation lookup table and per-bin integral images."""

from ._fasthog import (
    NO_BIN,
    DescriptorGeometry,
    Detection,
    FastHogError,
    IntegralStack,
    LinearModel,
    OrientationLut,
    bench,
    bin_of,
    build_integral_stack,
    decode_pnm,
    descriptor_length,
    encode_pgm,
    format_model,
    gradient_map,
    iou,
    load_model,
    naive_histogram,
    naive_window_descriptor,
    nms,
    pyramid_scan,
    scan,
    score_window,
    selfcheck,
    window_descriptor,
)

__all__ = [
    "NO_BIN",
    "DescriptorGeometry",
    "Detection",
    "FastHogError",
    "IntegralStack",
    "LinearModel",
    "OrientationLut",
    "bench",
    "bin_of",
    "build_integral_stack",
    "decode_pnm",
    "descriptor_length",
    "encode_pgm",
    "format_model",
    "gradient_map",
    "iou",
    "load_model",
    "naive_histogram",
    "naive_window_descriptor",
    "nms",
    "pyramid_scan",
    "scan",
    "score_window",
    "selfcheck",
    "window_descriptor",
]
