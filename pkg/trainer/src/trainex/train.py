"""tf.data input pipelines and the per-backbone training loop."""

from __future__ import annotations

from typing import NamedTuple

import tensorflow as tf
from tensorflow import keras

from .config import TrainConfig
from .data import SplitIndices
from .model import build_head


class TrainResult(NamedTuple):
    model: keras.Model
    history: dict


def _decoder(config: TrainConfig):
    side = config.image_side
    factor = config.rescale_factor

    def decode(path, label):
        data = tf.io.read_file(path)
        img = tf.image.decode_image(data, channels=3,
                                    expand_animations=False)
        img.set_shape([None, None, 3])
        img = tf.image.resize(img, [side, side])
        return tf.cast(img, tf.float32) * factor, label

    return decode


def make_dataset(config: TrainConfig, files, indices,
                 *, training: bool) -> tf.data.Dataset:
    paths = [str(files[i][1]) for i in indices]
    labels = [files[i][0] for i in indices]
    ds = tf.data.Dataset.from_tensor_slices((paths, labels))
    if training:
        ds = ds.shuffle(len(paths), seed=config.seed,
                        reshuffle_each_iteration=True)
    ds = ds.map(_decoder(config), num_parallel_calls=tf.data.AUTOTUNE)
    ds = ds.batch(config.batch_size)
    if training and config.augment:
        augment = keras.Sequential([
            keras.layers.RandomFlip("horizontal", seed=config.seed),
            keras.layers.RandomRotation(0.02, seed=config.seed),
        ], name="augment")
        ds = ds.map(lambda x, y: (augment(x, training=True), y))
    return ds.prefetch(tf.data.AUTOTUNE)


def train_model(config: TrainConfig, backbone_name: str, files,
                splits: SplitIndices, *, verbose: int = 1) -> TrainResult:
    keras.utils.set_random_seed(config.seed)
    train_ds = make_dataset(config, files, splits.train, training=True)
    val_ds = make_dataset(config, files, splits.val, training=False)
    model = build_head(backbone_name, config)
    model.compile(
        optimizer=keras.optimizers.Adam(config.learning_rate),
        loss="sparse_categorical_crossentropy",
        metrics=["accuracy"],
    )
    history = model.fit(train_ds, validation_data=val_ds,
                        epochs=config.epochs, verbose=verbose)
    return TrainResult(model=model, history=history.history)


def evaluate_accuracy(model: keras.Model, config: TrainConfig, files,
                      indices) -> float:
    ds = make_dataset(config, files, indices, training=False)
    _, accuracy = model.evaluate(ds, verbose=0)
    return float(accuracy)
