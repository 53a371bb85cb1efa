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

import itertools
import math

import pytest

import pinq

UNIFORM01 = {"family": "uniform", "params": {"low": 0, "high": 1}}


def test_algorithm_and_suite_names():
    assert "rehearsal" in pinq.algorithm_names()
    assert "walk-exact" in pinq.verify_suite_names()


def test_offline_opt_matches_sorting_on_uniform_matroid():
    env = {"kind": "uniform", "n": 5, "k": 2}
    chosen, weight = pinq.offline_opt(env, [0.1, 0.9, 0.4, 0.7, 0.2])
    assert chosen == [1, 3]
    assert weight == pytest.approx(1.6)


def test_walk_example():
    assert pinq.build_walk("SSSV", 9) == [0, 1, 2, 9, 8]


def test_reflection_against_enumeration():
    n, m = 6, 1
    low = high = 0
    for steps in itertools.product((-1, 1), repeat=n):
        pos, top = 0, 0
        for s in steps:
            pos += s
            top = max(top, pos)
        low += top > 0 and pos <= -m
        high += pos >= m + 2
    assert pinq.reflection_identity(n, m) == (low, high, 2**n)


def test_two_sample_bound_holds():
    lhs, rhs, holds = pinq.two_sample_bound([(5, 2), (3, 8), (1, 1)], 1)
    assert holds and lhs <= rhs


def test_run_experiment_benchmark_only():
    cfg = {
        "environment": {"kind": "uniform", "n": 2, "k": 1},
        "distribution": UNIFORM01,
        "trials": 5000,
        "seed": 4,
    }
    report = pinq.run_experiment(cfg, include_records=False)
    assert report["aggregate"]["mean_benchmark"] == pytest.approx(2 / 3, abs=0.02)
    assert "records" not in report


def test_run_experiment_is_seeded():
    cfg = {
        "environment": {"kind": "uniform", "n": 8, "k": 2},
        "distribution": UNIFORM01,
        "algorithm": "rehearsal",
        "order": "random",
        "trials": 50,
        "seed": 9,
    }
    a = pinq.run_experiment(cfg)
    b = pinq.run_experiment(cfg)
    assert a["records"] == b["records"]


def test_myerson_two_bidders():
    mean, se = pinq.myerson_benchmark(
        {"kind": "uniform", "n": 2, "k": 1}, UNIFORM01, 50000, seed=2
    )
    assert math.isclose(mean, 5 / 12, abs_tol=0.01)
    assert se > 0


def test_config_errors_raise():
    with pytest.raises(pinq.ConfigError):
        pinq.run_experiment({"environment": {"kind": "uniform", "n": 2, "k": 1},
                             "distribution": UNIFORM01, "algorithm": "nope"})
    with pytest.raises(ValueError):
        pinq.build_walk("SX", 4)


def test_verify_suite_passes():
    checks = pinq.verify("walk-exact")
    assert checks and all(c["passed"] for c in checks)
