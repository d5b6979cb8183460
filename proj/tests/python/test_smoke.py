# Copyright 2026 The nshap Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import itertools
import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest

import nshap


def brute_shapley(values, d):
    phi = [0.0] * d
    for i in range(d):
        for mask in range(1 << d):
            if mask >> i & 1:
                continue
            k = bin(mask).count("1")
            w = math.factorial(k) * math.factorial(d - k - 1) / math.factorial(d)
            phi[i] += w * (values[mask | 1 << i] - values[mask])
    return phi


def random_table(d, seed):
    rng = random.Random(seed)
    return [rng.uniform(-1, 1) for _ in range(1 << d)]


def test_bernoulli_and_coefficients():
    assert nshap.bernoulli(1) == Fraction(-1, 2)
    assert nshap.bernoulli(12) == Fraction(-691, 2730)
    assert nshap.bernoulli(3) == 0
    for m in range(9):
        assert nshap.coeff_c(0, m) == Fraction(1, m + 1)
    with pytest.raises(ValueError):
        nshap.coeff_c(3, 2)


def test_moebius_zeta_round_trip():
    values = random_table(5, 1)
    back = nshap.zeta(nshap.moebius(values))
    assert max(abs(a - b) for a, b in zip(back, values)) < 1e-12
    with pytest.raises(ValueError):
        nshap.moebius([1.0, 2.0, 3.0])


def test_product_example():
    table = [0.0, 0.0, 0.0, 12.0]
    phi = nshap.n_shapley(table, 1)
    assert phi[(0,)] == pytest.approx(6.0)
    assert phi["1"] == pytest.approx(6.0)
    assert phi.provenance == "from-gam"
    gam = nshap.shapley_gam(table)
    assert gam.values() == {"0": 0.0, "1": 0.0, "0,1": 12.0}


@pytest.mark.parametrize("d", [1, 3, 6])
def test_paths_agree_with_brute_force(d):
    values = random_table(d, d)
    brute = brute_shapley(values, d)
    classic = nshap.shapley_values(values)
    assert classic == pytest.approx(brute, abs=1e-12)
    for n in range(1, d + 1):
        ref = nshap.n_shapley(values, n, method="recursive").values()
        for method in ("explicit", "from-gam"):
            other = nshap.n_shapley(values, n, method=method).values()
            assert other.keys() == ref.keys()
            for key in ref:
                assert other[key] == pytest.approx(ref[key], abs=1e-9)
        index = nshap.n_shapley(values, n)
        assert index.sum() == pytest.approx(values[-1] - values[0], abs=1e-9)
        reduced = nshap.reduce_order(index, 1)
        assert [reduced[(i,)] for i in range(d)] == pytest.approx(brute, abs=1e-9)


def test_python_model_callback():
    def predict(batch):
        assert batch.shape[1] == 3
        return batch[:, 0] * batch[:, 1] + np.sin(batch[:, 2])

    background = [[0.0, 0.0, 0.0], [1.0, -1.0, 0.5]]
    x = [2.0, 3.0, -1.0]
    table = nshap.interventional_table(predict, background, x)
    assert len(table) == 8
    assert table[-1] == predict(np.array([x]))[0]
    gam = nshap.shapley_gam(table)
    # The model has no three-way or (0,2)/(1,2) interaction.
    for key in ("0,2", "1,2", "0,1,2"):
        assert abs(gam[key]) < 1e-12
    assert nshap.interaction_degree(table) < 2.0


def test_run_pipeline(tmp_path):
    data = tmp_path / "product.csv"
    data.write_text("a,b\n0,0\n3,4\n")
    config = {
        "data": str(data),
        "model": {"type": "additive", "components": [{
            "support": [0, 1],
            "terms": [{"factors": [{"feature": 0, "poly": [0, 1]},
                                   {"feature": 1, "poly": [0, 1]}]}]}]},
        "value_function": {"type": "interventional", "background": "0:1"},
        "order": 1,
        "points": [1],
    }
    records = json.loads(nshap.run("explain", json.dumps(config)))
    assert records[0]["values"] == {"0": 6.0, "1": 6.0}
    config["ordr"] = 1
    with pytest.raises(nshap.ConfigError):
        nshap.run("explain", json.dumps(config))
