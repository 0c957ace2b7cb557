"""Feature-file writer: frozen byte layout and round trips."""

import struct

import numpy as np
import pytest

from prd_extractor.featurefile import HEADER, FormatError, read_features, write_features


def test_header_bytes_frozen(tmp_path):
    path = tmp_path / "t.prdf"
    vectors = np.arange(6, dtype=np.float32).reshape(2, 3)
    write_features(path, vectors, labels=np.array([0, 1]))
    blob = path.read_bytes()
    assert blob[:24] == b"PRDF" + struct.pack("<IIIII", 1, 2, 3, 1, 1)
    assert len(blob) == 24 + 2 * 3 * 4 + 2 * 4


def test_unlabeled_flag_zero(tmp_path):
    path = tmp_path / "u.prdf"
    write_features(path, np.zeros((1, 2), dtype=np.float32))
    _, _, _, _, _, flags = HEADER.unpack_from(path.read_bytes())
    assert flags == 0


def test_round_trip(tmp_path):
    path = tmp_path / "r.prdf"
    vectors = np.random.default_rng(1).normal(size=(5, 4)).astype(np.float32)
    labels = np.array([3, 1, 4, 1, 5])
    write_features(path, vectors, labels)
    loaded_vectors, loaded_labels = read_features(path)
    np.testing.assert_array_equal(loaded_vectors, vectors)
    np.testing.assert_array_equal(loaded_labels, labels)


def test_rejects_bad_shapes(tmp_path):
    with pytest.raises(FormatError):
        write_features(tmp_path / "x.prdf", np.zeros((0, 3)))
    with pytest.raises(FormatError):
        write_features(tmp_path / "x.prdf", np.zeros((2, 2)), labels=np.array([1]))
