"""Model registry: which networks can be tapped, where, and how images
must be preprocessed for each.

Activations are taken after the rectifier of the named fully-connected
layer.  Initialization is deterministic: pretrained weights when
requested (and obtainable), otherwise a fixed-seed random init, so
repeated runs produce identical activations either way.
"""

from dataclasses import dataclass

import torch
from torch import nn
from torchvision import models as tv_models
from torchvision import transforms

INIT_SEED = 0

IMAGENET_MEAN = (0.485, 0.456, 0.406)
IMAGENET_STD = (0.229, 0.224, 0.225)


class ModelError(ValueError):
    """Unknown model id or layer name."""


@dataclass(frozen=True)
class TapSpec:
    """A tappable model: constructor, fc layer widths, and preprocessing."""

    model_id: str
    layers: dict  # layer name -> declared activation width
    input_size: int


class TinyBackbone(nn.Module):
    """Small deterministic CNN for offline tests: two conv stages and a
    two-layer fully-connected head of width 64."""

    def __init__(self):
        super().__init__()
        self.features = nn.Sequential(
            nn.Conv2d(3, 8, 3, padding=1),
            nn.ReLU(inplace=True),
            nn.MaxPool2d(2),
            nn.Conv2d(8, 16, 3, padding=1),
            nn.ReLU(inplace=True),
            nn.AdaptiveAvgPool2d(4),
        )
        self.classifier = nn.Sequential(
            nn.Linear(16 * 4 * 4, 64),
            nn.ReLU(inplace=True),
            nn.Linear(64, 64),
            nn.ReLU(inplace=True),
        )

    def forward(self, x):
        x = self.features(x)
        x = torch.flatten(x, 1)
        return self.classifier(x)


_VGG_BUILDERS = {
    "vgg11": (tv_models.vgg11, getattr(tv_models, "VGG11_Weights", None)),
    "vgg13": (tv_models.vgg13, getattr(tv_models, "VGG13_Weights", None)),
    "vgg16": (tv_models.vgg16, getattr(tv_models, "VGG16_Weights", None)),
    "vgg19": (tv_models.vgg19, getattr(tv_models, "VGG19_Weights", None)),
}

REGISTRY = {
    "tiny": TapSpec("tiny", {"fc1": 64, "fc2": 64}, input_size=64),
    **{
        name: TapSpec(name, {"fc1": 4096, "fc2": 4096}, input_size=224)
        for name in _VGG_BUILDERS
    },
}


def available_models() -> list[str]:
    return sorted(REGISTRY)


def declared_width(model_id: str, layer: str) -> int:
    spec = REGISTRY.get(model_id)
    if spec is None:
        raise ModelError(f"unknown model {model_id!r}; choose from {available_models()}")
    if layer not in spec.layers:
        raise ModelError(f"model {model_id!r} has layers {sorted(spec.layers)}, not {layer!r}")
    return spec.layers[layer]


def build_model(model_id: str, pretrained: bool = True) -> nn.Module:
    if model_id not in REGISTRY:
        raise ModelError(f"unknown model {model_id!r}; choose from {available_models()}")
    torch.manual_seed(INIT_SEED)
    if model_id == "tiny":
        model = TinyBackbone()
    else:
        builder, weights_enum = _VGG_BUILDERS[model_id]
        weights = weights_enum.IMAGENET1K_V1 if (pretrained and weights_enum) else None
        model = builder(weights=weights)
    model.eval()
    return model


def tap_module(model: nn.Module, model_id: str, layer: str) -> nn.Module:
    """The module whose output is the requested activation (the rectifier
    following the named linear layer)."""
    declared_width(model_id, layer)  # validates both names
    if model_id == "tiny":
        return model.classifier[1] if layer == "fc1" else model.classifier[3]
    # torchvision VGG classifier: Linear, ReLU, Dropout, Linear, ReLU, ...
    return model.classifier[1] if layer == "fc1" else model.classifier[4]


def preprocess(model_id: str) -> transforms.Compose:
    spec = REGISTRY[model_id]
    if model_id == "tiny":
        return transforms.Compose([
            transforms.Resize((spec.input_size, spec.input_size)),
            transforms.ToTensor(),
        ])
    return transforms.Compose([
        transforms.Resize(256),
        transforms.CenterCrop(spec.input_size),
        transforms.ToTensor(),
        transforms.Normalize(IMAGENET_MEAN, IMAGENET_STD),
    ])
