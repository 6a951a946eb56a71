"""One test per acceptance criterion at the pinned tolerances.

Each test prints a ``[PASS]``/``[FAIL]`` line; the lines are also collected
and repeated in the terminal summary (see ``conftest.py``).
"""

import json

from heisenberg_sampling import acceptance

RESULTS = {}


def _check(fn):
    result = fn(acceptance.DEFAULT_TOLERANCES, seed=0)
    RESULTS[result.number] = result
    print(result.line())
    assert result.passed, json.dumps(result.detail, default=str, indent=1)
    return result


def test_criterion_01_sinc_oracle_agreement():
    r = _check(acceptance.criterion_sinc_oracle)
    assert r.detail["seconds"] <= 60


def test_criterion_02_exact_values():
    _check(acceptance.criterion_exact_values)


def test_criterion_03_gabor_tightness():
    _check(acceptance.criterion_gabor)


def test_criterion_04_superframe():
    _check(acceptance.criterion_superframe)


def test_criterion_05_density_gates():
    _check(acceptance.criterion_density)


def test_criterion_06_fibre_criterion():
    _check(acceptance.criterion_fibre)


def test_criterion_07_reproducing_identity():
    _check(acceptance.criterion_reproducing)


def test_criterion_08_restriction_isometry():
    _check(acceptance.criterion_isometry)


def test_criterion_09_sampling_expansion():
    _check(acceptance.criterion_expansion)


def test_criterion_10_no_onb():
    _check(acceptance.criterion_no_onb)


def test_criterion_11_structural_invariants():
    _check(acceptance.criterion_structural)


def test_every_criterion_has_a_test():
    names = {name for name in globals() if name.startswith("test_criterion_")}
    assert len(acceptance.CRITERIA) == len(names) == 11
