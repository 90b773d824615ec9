"""Backbone + classification-head assembly."""

from __future__ import annotations

from tensorflow import keras

from .config import CLASS_NAMES, TrainConfig
from .errors import UnknownBackbone

BACKBONES = {
    "ResNet50": keras.applications.ResNet50,
    "ResNet101": keras.applications.ResNet101,
    "ResNet152": keras.applications.ResNet152,
    "InceptionV3": keras.applications.InceptionV3,
    "EfficientNetB0": keras.applications.EfficientNetB0,
}

HEAD_LAYER_COUNT = 4


def build_head(backbone_name: str, config: TrainConfig) -> keras.Model:
    """Backbone (optionally pretrained/frozen) topped by: global average
    pooling, a ReLU dense layer, dropout, and a softmax dense layer."""
    factory = BACKBONES.get(backbone_name)
    if factory is None:
        raise UnknownBackbone(
            f"unknown backbone {backbone_name!r}; supported: "
            f"{', '.join(sorted(BACKBONES))}")
    side = config.image_side
    backbone = factory(
        include_top=False,
        weights="imagenet" if config.pretrained else None,
        input_shape=(side, side, 3),
    )
    backbone.trainable = not config.freeze_backbone
    if config.bn_momentum is not None:
        for layer in backbone.layers:
            if isinstance(layer, keras.layers.BatchNormalization):
                layer.momentum = config.bn_momentum
    x = keras.layers.GlobalAveragePooling2D(name="head_pool")(
        backbone.output)
    x = keras.layers.Dense(config.head_units, activation="relu",
                           name="head_dense")(x)
    x = keras.layers.Dropout(config.dropout_rate, name="head_dropout")(x)
    outputs = keras.layers.Dense(len(CLASS_NAMES), activation="softmax",
                                 name="head_softmax")(x)
    return keras.Model(backbone.input, outputs,
                       name=f"{backbone_name.lower()}_classifier")


def head_layers(model: keras.Model) -> list:
    """The four appended head layers, in forward order."""
    return list(model.layers[-HEAD_LAYER_COUNT:])
