"""Parametric-entropy centroid seeding for k-means on image data."""
from ._backend import BACKEND
from .elbow import ElbowCurve, detect_elbow, k_sweep
from .entropy import (
    EntropyDomainError,
    EntropySpec,
    aczel_daroczy,
    entropy,
    havrda_charvat,
    kapur,
    pixel_scores,
    shannon,
    sharma_mittal,
    taneja,
    validate,
)
from .ingest import ImageFormatError, PixelGrid, load_image, to_grayscale
from .kmeans import KMeansConfig, KMeansResult, fit, sse
from .pixel_model import channel_histograms, pixel_probability, support_distribution
from .seeding import CentroidSet, SeedExhaustionError, SeedingConfig, entropy_seed, random_seed

__version__ = "0.1.0"
