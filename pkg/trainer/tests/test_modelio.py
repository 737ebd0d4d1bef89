import base64
import json
import struct

import numpy as np
import pytest

from aftrain import (TrainingConfig, build_net, decode_array, encode_array,
                     export_bytes, model_file_bytes)
from aftrain.modelio import gat_layer_entry, gcn_layer_entry

from conftest import engine

TOP_LEVEL_ORDER = ["format_version", "arch", "task", "feature_set", "seed",
                   "threshold", "dropout_rate", "layers"]


class TestArrayEncoding:
    def test_round_trip(self):
        rng = np.random.default_rng(0)
        original = rng.standard_normal((3, 4))
        decoded = decode_array(encode_array(original), (3, 4))
        assert decoded.dtype == np.float64
        assert np.array_equal(decoded, original)

    def test_little_endian_layout(self):
        text = encode_array(np.array([1.5, -2.0]))
        assert text == base64.b64encode(
            struct.pack("<2d", 1.5, -2.0)).decode("ascii")

    def test_row_major_order(self):
        matrix = np.array([[1.0, 2.0], [3.0, 4.0]])
        text = encode_array(matrix)
        assert text == base64.b64encode(
            struct.pack("<4d", 1.0, 2.0, 3.0, 4.0)).decode("ascii")

    def test_fortran_input_normalized(self):
        matrix = np.asfortranarray([[1.0, 2.0], [3.0, 4.0]])
        assert encode_array(matrix) == encode_array(np.ascontiguousarray(matrix))


class TestLayerEntries:
    def test_plain_entry(self):
        entry = gcn_layer_entry(np.zeros((22, 11)), np.zeros(11),
                                "relu", "gcn-block")
        assert list(entry) == ["kind", "activation", "dims", "weights",
                               "biases"]
        assert entry["dims"] == [22, 11]
        assert len(entry["weights"]) == 1
        assert len(entry["biases"]) == 1

    def test_attention_entry_interleaves_weights(self):
        lefts = [np.full((4, 2), float(i)) for i in range(3)]
        rights = [np.full((4, 2), 10.0 + i) for i in range(3)]
        biases = [np.zeros(2)] * 3
        attentions = [np.ones(2)] * 3
        entry = gat_layer_entry(lefts, rights, biases, attentions, "relu")
        assert list(entry) == ["kind", "activation", "dims", "heads",
                               "weights", "biases", "attention"]
        assert entry["kind"] == "gat-head-block"
        assert entry["heads"] == 3
        assert entry["dims"] == [4, 2]
        decoded = [decode_array(text, (4, 2)) for text in entry["weights"]]
        assert decoded[0][0, 0] == 0.0 and decoded[1][0, 0] == 10.0
        assert decoded[2][0, 0] == 1.0 and decoded[3][0, 0] == 11.0
        assert len(entry["attention"]) == 3


class TestModelFile:
    def test_single_line_with_trailing_newline(self):
        data = model_file_bytes("GCN", "DC-CO", "P11", 0, 0.5, 0.0, [])
        assert data.endswith(b"\n")
        assert data.count(b"\n") == 1

    def test_canonical_field_order(self):
        data = model_file_bytes("GCN", "DC-CO", "P11", 3, 0.5, 0.1, [])
        doc = json.loads(data.decode("utf-8"))
        assert list(doc) == TOP_LEVEL_ORDER
        assert doc["format_version"] == 1
        assert doc["seed"] == 3
        assert doc["dropout_rate"] == 0.1

    def test_identical_parameters_identical_bytes(self):
        config = TrainingConfig(arch="GCN", task="DC-CO", seed=4)
        net = build_net("GCN", 11, 0.0, 4)
        assert export_bytes(config, net) == export_bytes(config, net)

    def test_seed_moves_initial_weights(self):
        config = TrainingConfig(arch="GCN", task="DC-CO")
        first = export_bytes(config, build_net("GCN", 11, 0.0, 1))
        second = export_bytes(config, build_net("GCN", 11, 0.0, 2))
        assert first != second


class TestEngineContract:
    """The freshly exported file must be accepted by the inference engine."""

    @pytest.mark.parametrize("arch", ["GCN", "GATV2"])
    def test_engine_scores_exported_model(self, arch, seven_file, tmp_path):
        config = TrainingConfig(arch=arch, task="DC-CO")
        net = build_net(arch, config.feature_width, 0.0, config.seed)
        model_path = tmp_path / "model.gnn"
        model_path.write_bytes(export_bytes(config, net))
        result = engine("score", seven_file, "-m", model_path)
        assert result.returncode == 0, result.stderr
        lines = result.stdout.splitlines()
        assert len(lines) == 7
        for line in lines:
            value = float(line.split()[1])
            assert 0.0 < value < 1.0

    def test_gcn_exports_four_blocks_and_dense(self):
        config = TrainingConfig(arch="GCN", task="DC-CO")
        doc = json.loads(export_bytes(
            config, build_net("GCN", 11, 0.0, 0)).decode("utf-8"))
        kinds = [layer["kind"] for layer in doc["layers"]]
        assert kinds == ["gcn-block"] * 4 + ["dense"]
        assert [layer["activation"] for layer in doc["layers"]] == \
            ["relu"] * 4 + ["sigmoid"]
        assert [layer["dims"] for layer in doc["layers"]] == \
            [[22, 11]] * 4 + [[11, 1]]

    def test_gatv2_exports_three_attention_layers(self):
        config = TrainingConfig(arch="GATV2", task="DC-CO")
        doc = json.loads(export_bytes(
            config, build_net("GATV2", 11, 0.0, 0)).decode("utf-8"))
        layers = doc["layers"]
        assert [layer["kind"] for layer in layers] == ["gat-head-block"] * 3
        assert [layer["heads"] for layer in layers] == [5, 3, 3]
        assert [layer["dims"] for layer in layers] == [[11, 5], [25, 5],
                                                       [15, 1]]
        assert [layer["activation"] for layer in layers] == \
            ["relu", "relu", "sigmoid"]
        assert [len(layer["weights"]) for layer in layers] == [10, 6, 6]
