# Copyright 2026 The Authors.
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

"""Python bindings for the pinq simulation library.

Environments, distributions and experiment configs are plain dicts with the
same layout as the JSON files read by the `pinq` command-line tool.
"""

import json as _json

from . import _pinq
from ._pinq import (
    ConfigError,
    InputDomainError,
    UnsupportedOperationError,
    algorithm_names,
    build_walk,
    reflection_identity,
    two_sample_bound,
    verify_suite_names,
)

__all__ = [
    "ConfigError",
    "InputDomainError",
    "UnsupportedOperationError",
    "algorithm_names",
    "build_walk",
    "myerson_benchmark",
    "offline_opt",
    "reflection_identity",
    "run_experiment",
    "two_sample_bound",
    "verify",
    "verify_suite_names",
]


def run_experiment(config, include_records=True):
    """Runs an experiment config dict and returns the report as a dict."""
    report = _json.loads(_pinq.run_experiment(_json.dumps(config)))
    if not include_records:
        report.pop("records", None)
    return report


def offline_opt(environment, weights):
    """Returns (sorted feasible set, weight) of the offline optimum."""
    return _pinq.offline_opt(_json.dumps(environment), list(weights))


def myerson_benchmark(environment, distribution, trials, seed=0):
    """Monte-Carlo virtual surplus; returns (mean, standard error)."""
    return _pinq.myerson_benchmark(
        _json.dumps(environment), _json.dumps(distribution), trials, seed
    )


def verify(suite, seed=1, scale=1.0):
    """Runs a named verification suite; returns a list of check dicts."""
    return _json.loads(_pinq.verify(suite, seed, scale))
