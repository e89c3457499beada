"""Run a pretrained network over a class-per-subdirectory image tree and
write one CSV row of fully-connected activations per image.

Output follows the vgpool feature-table contract: header
``label,f0,...,f{n-1}``, label = index of the class directory in
lexicographic order, floats written with shortest round-trip precision.
Undecodable images are skipped with a warning; a class with no usable
image fails the job.
"""

import csv
import warnings
from dataclasses import dataclass
from pathlib import Path

import torch
from PIL import Image

from .models import build_model, declared_width, preprocess, tap_module

IMAGE_SUFFIXES = {".png", ".jpg", ".jpeg", ".bmp", ".gif", ".tif", ".tiff", ".webp"}


class ExtractionError(ValueError):
    """The image tree cannot produce a usable feature table."""


@dataclass(frozen=True)
class ExtractionJob:
    image_root: Path
    model_id: str
    layer: str
    output: Path
    pretrained: bool = True
    batch_size: int = 8


def _class_directories(root: Path) -> list[Path]:
    if not root.is_dir():
        raise ExtractionError(f"{root} is not a directory")
    dirs = sorted(p for p in root.iterdir() if p.is_dir())
    if not dirs:
        raise ExtractionError(f"{root} contains no class subdirectories")
    return dirs


def _image_paths(class_dir: Path) -> list[Path]:
    return sorted(
        p for p in class_dir.iterdir()
        if p.is_file() and p.suffix.lower() in IMAGE_SUFFIXES
    )


def _load_tensor(path: Path, transform):
    try:
        with Image.open(path) as img:
            return transform(img.convert("RGB"))
    except Exception as exc:  # undecodable or truncated file
        warnings.warn(f"skipping undecodable image {path}: {exc}", stacklevel=2)
        return None


def extract(job: ExtractionJob) -> Path:
    """Extract activations for every readable image and write the CSV."""
    width = declared_width(job.model_id, job.layer)
    class_dirs = _class_directories(Path(job.image_root))
    model = build_model(job.model_id, pretrained=job.pretrained)
    tap = tap_module(model, job.model_id, job.layer)
    transform = preprocess(job.model_id)

    captured: list[torch.Tensor] = []
    handle = tap.register_forward_hook(lambda m, i, out: captured.append(out.detach()))
    n_threads = torch.get_num_threads()
    torch.set_num_threads(1)  # keeps reductions bit-stable across runs
    rows: list[tuple[int, list[float]]] = []
    try:
        with torch.no_grad():
            for label, class_dir in enumerate(class_dirs):
                tensors = []
                for path in _image_paths(class_dir):
                    tensor = _load_tensor(path, transform)
                    if tensor is not None:
                        tensors.append(tensor)
                if not tensors:
                    raise ExtractionError(f"class directory {class_dir} has no usable images")
                for start in range(0, len(tensors), job.batch_size):
                    batch = torch.stack(tensors[start: start + job.batch_size])
                    captured.clear()
                    model(batch)
                    activations = captured[-1]
                    if activations.shape[1] != width:
                        raise ExtractionError(
                            f"tapped width {activations.shape[1]} != declared {width}"
                        )
                    for vec in activations:
                        rows.append((label, [float(v) for v in vec]))
    finally:
        handle.remove()
        torch.set_num_threads(n_threads)

    output = Path(job.output)
    with open(output, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["label"] + [f"f{i}" for i in range(width)])
        for label, values in rows:
            writer.writerow([label] + [repr(v) for v in values])
    return output
