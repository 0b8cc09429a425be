import json

import pytest

from supcomp.errors import ModelValidationError, UsageError
from supcomp.kernel.scalars import INF, Backend
from supcomp.services.generator import SizeBounds, generate_model
from supcomp.services.model_loader import (
    dump_model,
    load_model,
    materialize,
    parse_model,
    save_model,
    space_summary,
)


def coin_data(coin_flips_path):
    return json.loads(coin_flips_path.read_text(encoding="utf-8"))


class TestLoading:
    def test_minimal_model(self, minimal_path):
        model = materialize(load_model(minimal_path))
        assert model.space.atom_count == 1
        assert space_summary(model.space) == {"atoms": ["w"], "weights": ["1"]}

    def test_coin_flips(self, coin_flips_path):
        model = materialize(load_model(coin_flips_path))
        assert model.space.names == ("HH", "HT", "TH", "TT")
        assert model.vectors["x"][1] is INF
        assert model.filtrations["flips"].at(1).blocks == ((0, 1), (2, 3))
        assert model.processes["walk"].term(3) == model.space.vector([2, 0, 0, -2])
        assert model.projections["heads"].term(2).atoms == (0, 2)

    def test_float_backend(self, coin_flips_path):
        model = materialize(load_model(coin_flips_path), Backend.FLOAT)
        assert model.space.weights == (0.25, 0.25, 0.25, 0.25)

    def test_missing_file(self, tmp_path):
        with pytest.raises(UsageError):
            load_model(tmp_path / "absent.json")

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ModelValidationError) as err:
            load_model(path)
        assert err.value.field == "file"

    def test_directory_instead_of_a_file(self, tmp_path):
        with pytest.raises(UsageError):
            load_model(tmp_path)

    def test_file_that_is_not_utf8(self, tmp_path):
        path = tmp_path / "latin1.json"
        path.write_bytes(b'{"atoms": ["\xe9"]}')
        with pytest.raises(ModelValidationError) as err:
            load_model(path)
        assert err.value.field == "file"


class TestValidation:
    def test_weights_must_sum_to_one(self):
        with pytest.raises(ModelValidationError) as err:
            parse_model({"atoms": ["a", "b"], "weights": ["1/2", "2/5"]})
        assert err.value.field == "weights"

    def test_one_weight_per_atom(self):
        spec = parse_model({"atoms": ["a", "b"], "weights": ["1"]})
        with pytest.raises(ModelValidationError) as err:
            materialize(spec)
        assert err.value.field == "weights"

    def test_unknown_tail_kind(self, coin_flips_path):
        data = coin_data(coin_flips_path)
        data["sequences"]["walk"]["tail"]["kind"] = "spiral"
        with pytest.raises(ModelValidationError) as err:
            parse_model(data)
        assert err.value.field.startswith("sequences")

    def test_vector_length(self, coin_flips_path):
        data = coin_data(coin_flips_path)
        data["vectors"]["x"] = ["1", "2"]
        with pytest.raises(ModelValidationError) as err:
            materialize(parse_model(data))
        assert err.value.field == "vectors.x"

    def test_unknown_sequence_in_process(self, coin_flips_path):
        data = coin_data(coin_flips_path)
        data["processes"]["walk"]["sequence"] = "missing"
        with pytest.raises(ModelValidationError) as err:
            materialize(parse_model(data))
        assert err.value.field == "processes.walk.sequence"

    def test_process_must_be_adapted(self, coin_flips_path):
        data = coin_data(coin_flips_path)
        data["processes"]["walk"]["sequence"] = "alternating"
        with pytest.raises(ModelValidationError) as err:
            materialize(parse_model(data))
        assert err.value.field == "processes.walk"

    def test_filtration_must_refine(self, coin_flips_path):
        data = coin_data(coin_flips_path)
        data["partitions"]["flips"]["prefix"] = [[[0, 2], [1, 3]], [[0, 1], [2, 3]]]
        with pytest.raises(ModelValidationError) as err:
            materialize(parse_model(data))
        assert err.value.field == "partitions.flips"


class TestGeneration:
    @pytest.mark.parametrize("seed", [0, 1, 2, 17, 123])
    def test_round_trip_is_bit_identical(self, seed, tmp_path):
        spec = generate_model(seed)
        path = save_model(spec, tmp_path / f"model-{seed}.json")
        text = path.read_text(encoding="utf-8")
        assert text == dump_model(spec)
        assert dump_model(load_model(path)) == text

    def test_generation_is_deterministic(self):
        assert dump_model(generate_model(5)) == dump_model(generate_model(5))

    def test_bounds_are_respected(self):
        for seed in range(20):
            spec = generate_model(seed, SizeBounds(max_atoms=3, max_chain=2, max_prefix=2, max_period=2))
            assert len(spec.atoms) <= 3
            assert len(spec.partitions["f"].prefix) <= 1

    def test_single_atom_models_occur(self):
        sizes = [len(generate_model(seed, SizeBounds(max_atoms=4)).atoms) for seed in range(200)]
        assert sizes.count(1) >= 3

    @pytest.mark.parametrize("field", ["max_atoms", "max_chain", "max_prefix", "max_period"])
    @pytest.mark.parametrize("value", [0, -3])
    def test_bounds_must_be_positive(self, field, value):
        with pytest.raises(ModelValidationError) as err:
            SizeBounds(**{field: value})
        assert err.value.field == field

    def test_smallest_bounds(self):
        bounds = SizeBounds(max_atoms=1, max_chain=1, max_prefix=1, max_period=1)
        for seed in range(30):
            spec = generate_model(seed, bounds)
            assert len(spec.atoms) == 1
            materialize(spec)
