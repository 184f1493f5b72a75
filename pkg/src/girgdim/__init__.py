"""Geometric inhomogeneous random graphs and weight-band dimension testing."""

__version__ = "0.1.0"

from .rng_dist import INF, SeededStream  # noqa: E402
from .graph import GraphInstance, WeightBand  # noqa: E402
from .generators import GirgParams, calibrate_lambda, generate_chung_lu, generate_girg  # noqa: E402
from .clustering import band_cc_plus, global_cc, local_cc  # noqa: E402
from .dimension_test import classify_geometry, infer_dimension  # noqa: E402
from .weights_estimation import estimate_weights_from_degrees  # noqa: E402

__all__ = [
    "INF", "SeededStream", "GraphInstance", "WeightBand", "GirgParams", "calibrate_lambda",
    "generate_girg", "generate_chung_lu", "band_cc_plus", "global_cc", "local_cc",
    "infer_dimension", "classify_geometry", "estimate_weights_from_degrees",
]
