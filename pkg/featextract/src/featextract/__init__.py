"""Image-directory to feature-CSV extraction with tappable CNN backbones."""

from .extract import ExtractionError, ExtractionJob, extract
from .models import ModelError, available_models, build_model, declared_width

__version__ = "0.1.0"

__all__ = [
    "ExtractionError",
    "ExtractionJob",
    "ModelError",
    "available_models",
    "build_model",
    "declared_width",
    "extract",
]
