"""TrainConfig defaults, validation, and config-file parsing."""

import json

import pytest

import trainex as tx
from trainex.errors import BadConfig


class TestDefaults:
    def test_documented_defaults(self):
        cfg = tx.TrainConfig()
        assert cfg.split == (0.8, 0.1, 0.1)
        assert cfg.image_side == 128
        assert cfg.rescale_factor == 1.0 / 255.0
        assert cfg.head_units == 512
        assert cfg.dropout_rate == 0.3
        assert cfg.backbones == ("ResNet50", "ResNet101", "ResNet152",
                                 "InceptionV3", "EfficientNetB0")

    def test_supported_backbone_constant_matches_model_table(self):
        assert set(tx.SUPPORTED_BACKBONES) == set(tx.BACKBONES)


class TestValidation:
    def test_split_must_sum_to_one(self):
        with pytest.raises(BadConfig):
            tx.TrainConfig(split=(0.8, 0.1, 0.2))

    def test_split_needs_three_positive_parts(self):
        with pytest.raises(BadConfig):
            tx.TrainConfig(split=(0.9, 0.1))
        with pytest.raises(BadConfig):
            tx.TrainConfig(split=(1.0, 0.0, 0.0))

    def test_dropout_range(self):
        with pytest.raises(BadConfig):
            tx.TrainConfig(dropout_rate=1.0)
        with pytest.raises(BadConfig):
            tx.TrainConfig(dropout_rate=-0.1)

    def test_unknown_backbone_rejected(self):
        with pytest.raises(BadConfig):
            tx.TrainConfig(backbones=("ResNet50", "VGG16"))

    def test_bn_momentum_range(self):
        with pytest.raises(BadConfig):
            tx.TrainConfig(bn_momentum=1.0)
        assert tx.TrainConfig(bn_momentum=0.5).bn_momentum == 0.5
        assert tx.TrainConfig().bn_momentum is None


class TestConfigFile:
    def test_round_trip(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({
            "dataset_root": "/data/mri",
            "split": [0.8, 0.1, 0.1],
            "image_side": 64,
            "backbones": ["ResNet50"],
            "seed": 3,
        }))
        cfg = tx.load_config(path)
        assert str(cfg.dataset_root) == "/data/mri"
        assert cfg.image_side == 64
        assert cfg.backbones == ("ResNet50",)
        assert cfg.head_units == 512

    def test_overrides_beat_file_values(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"seed": 3}))
        assert tx.load_config(path, seed=9).seed == 9

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"imge_side": 64}))
        with pytest.raises(BadConfig, match="imge_side"):
            tx.load_config(path)

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text("{not json")
        with pytest.raises(BadConfig):
            tx.load_config(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(BadConfig):
            tx.load_config(tmp_path / "absent.json")
