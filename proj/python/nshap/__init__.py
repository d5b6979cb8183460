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

"""Exact n-Shapley Values, Shapley-GAMs and their conversions."""

from ._nshap import (
    ConfigError,
    InteractionIndex,
    NoMatchingRows,
    ParseError,
    bernoulli,
    coeff_c,
    interaction_degree,
    interventional_table,
    moebius,
    n_shapley,
    reduce_order,
    run,
    shapley_gam,
    shapley_values,
    zeta,
)

__all__ = [
    "ConfigError",
    "InteractionIndex",
    "NoMatchingRows",
    "ParseError",
    "bernoulli",
    "coeff_c",
    "interaction_degree",
    "interventional_table",
    "moebius",
    "n_shapley",
    "reduce_order",
    "run",
    "shapley_gam",
    "shapley_values",
    "zeta",
]
