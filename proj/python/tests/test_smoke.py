# Copyright 2026 The hypersum Authors
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

import math

import pytest

import hypersum


def test_hyp2f1():
    assert hypersum.hyp2f1(0.5, 1, 2, 0)["value"] == 1.0
    r = hypersum.hyp2f1(0.5, 1, 2, 1)
    assert r["method"] == "GaussPoint"
    assert r["value"] == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(hypersum.DomainError):
        hypersum.hyp2f1(0.5, 1, 1, 1)


def test_sum_routes_agree():
    d = hypersum.sum(1.0, 2.0, 0.5, method="direct")["value"]
    c = hypersum.sum(1.0, 2.0, 0.5, method="closed")["value"]
    assert d == pytest.approx(c, rel=1e-9)
    assert hypersum.sum(1.0, 2.0, 0.0)["value"] == pytest.approx(2.0)


def test_divergent_sum_rejected():
    v = hypersum.check(0.5, 1.0, 0.5)
    assert not v["convergent"]
    assert v["reason"] == "DivergentPositiveX"
    with pytest.raises(hypersum.DomainError, match="NotConvergent"):
        hypersum.sum(0.5, 1.0, 0.5)
    with pytest.raises(ValueError):
        hypersum.sum(1.0, 2.0, 0.5, method="bogus")


def test_term_cap_is_numerical_failure():
    with pytest.raises(hypersum.NumericalError):
        hypersum.sum(0.51, 2.0, 0.25, method="direct", max_terms=20)


def test_progeny():
    p = hypersum.progeny_pmf(0.6, 5)
    assert p[0] == 0.625
    assert p[1] == pytest.approx(0.1875)
    assert hypersum.progeny_pgf(0.6, 1.0) == pytest.approx(1.0, rel=1e-14)
    assert hypersum.h_alpha_pgf(0.5, 0.6, 0.5)["value"] == pytest.approx(
        hypersum.progeny_pgf(0.6, 0.5), rel=1e-13)
    q = hypersum.general_progeny_pmf(2.5, 0.49, 100)
    assert 0.0 < math.fsum(q) < 1.0


def test_simulate_deterministic():
    a = hypersum.simulate(0.5, 0.6, n=20000, seed=7)
    b = hypersum.simulate(0.5, 0.6, n=20000, seed=7, workers=4)
    assert a["counts"] == b["counts"]
    assert a["passed"]
    with pytest.raises(hypersum.DomainError):
        hypersum.simulate(0.5, 0.6, n=100)


def test_verify():
    assert "theorem1" in hypersum.suite_names()
    rep = hypersum.verify("corollary1")
    assert rep["passed"]
    with pytest.raises(hypersum.DomainError):
        hypersum.verify("nope")
