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

"""Weighted sums of Gauss hypergeometric functions and the branching laws built on them."""

import json

from ._core import (
    DomainError,
    NumericalError,
    check,
    general_progeny_pmf,
    h_alpha_pgf,
    hyp2f1,
    progeny_pgf,
    progeny_pmf,
    simulate,
    suite_names,
    sum,
)
from ._core import verify_json as _verify_json

__all__ = [
    "DomainError",
    "NumericalError",
    "check",
    "general_progeny_pmf",
    "h_alpha_pgf",
    "hyp2f1",
    "progeny_pgf",
    "progeny_pmf",
    "simulate",
    "suite_names",
    "sum",
    "verify",
]


def verify(suite, seed=20260101, replicates=1000000, workers=1):
    """Run one verification suite and return its report as a dict."""
    return json.loads(_verify_json(suite, seed, replicates, workers))
