import json

import numpy as np
import pytest

from qstexture import relations as R
from qstexture.errors import UnknownMeasure
from qstexture.states import free_density, validate_density

from conftest import bloch_state


def _checks(report):
    return {c.check_id: c for c in report.checks}


def test_l1_examples():
    chk = {c.check_id: c for c in R._l1_checks(2)}
    front = {"rho": bloch_state(0.3, 0.2, 0.4)}
    rear = {"rho": bloch_state(-0.3, 0.2, 0.4)}
    assert chk["front_hemisphere"].applies(front)
    assert chk["front_hemisphere"].violation(front) < 1e-12
    assert chk["rear_hemisphere"].applies(rear)
    assert chk["rear_hemisphere"].violation(rear) < 1e-12
    f = {"rho": free_density(2)}
    for name in ("split_imaginarity_predictability", "front_hemisphere"):
        assert chk[name].violation(dict(f)) < 1e-12


def test_l1_report_qubit():
    rep = R.l1_report(300, 3, 2)
    assert rep.ok
    c = _checks(rep)
    assert c["front_hemisphere"].evaluated + c["rear_hemisphere"].evaluated == 303


def test_l1_report_higher_dim_is_logged():
    rep = R.l1_report(200, 3, 3)
    assert rep.ok
    assert all(c.status == "logged" for c in rep.checks)
    assert _checks(rep)["range_bound"].violations == 0


def test_l2_report_witness():
    chk = {c.check_id: c for c in R._l2_checks(2)}
    zero = {"rho": np.diag([1.0, 0.0]).astype(complex)}
    assert chk["bookkeeping_corrected"].violation(dict(zero)) < 1e-12
    assert abs(chk["bookkeeping_minus_one"].violation(dict(zero)) - 2) < 1e-12
    assert chk["coherence_predictability_decomposition"].violation(dict(zero)) < 1e-12


@pytest.mark.parametrize("d", [2, 3, 4])
def test_l2_report(d):
    rep = R.l2_report(200, 1, d)
    assert rep.ok
    assert _checks(rep)["bookkeeping_minus_one"].status == "expected_fail"
    assert not _checks(rep)["bookkeeping_minus_one"].passed


def test_skew_report_witnesses():
    chk = {c.check_id: c for c in R._skew_checks(2)}
    zero = {"rho": np.diag([1.0, 0.0]).astype(complex)}
    assert chk["skew_identity_corrected"].violation(dict(zero)) < 1e-12
    # the flipped sign gives -0.25 where the true value is +0.25
    assert abs(chk["skew_identity_flipped_sign"].violation(dict(zero)) - 0.5) < 1e-12
    mixed = {"rho": np.eye(2, dtype=complex) / 2}
    assert chk["skew_identity_corrected"].violation(mixed) < 1e-12


def test_skew_report():
    rep = R.skew_report(200, 7, 3)
    assert rep.ok
    assert _checks(rep)["skew_identity_flipped_sign"].status == "expected_fail"


def test_axiom_examples():
    assert R.axiom_suite("geometric", None, 100, 0, 2, 10).ok
    assert R.axiom_suite("affinity-alpha", 0.5, 100, 0, 3, 10).ok
    rep = R.axiom_suite("l2", None, 100, 0, 2, 10, recipes=["unitary_mixture"])
    assert rep.ok
    assert _checks(rep)["unitary_invariance"].max_violation <= 1e-9
    with pytest.raises(UnknownMeasure):
        R.axiom_suite("nope")


def test_transforms_report():
    rep = R.transforms_report(60, 2)
    assert rep.ok


def test_determinism_and_json_lines():
    a = R.l2_report(50, 9, 3).json_lines()
    b = R.l2_report(50, 9, 3).json_lines()
    assert a == b
    row = json.loads(a[0])
    assert {"suite", "check", "max_violation", "pass"} <= set(row)


@pytest.mark.parametrize("make", [
    lambda: R.l1_report(100, 4, 2),
    lambda: R.l2_report(100, 4, 3),
    lambda: R.skew_report(100, 4, 2),
    lambda: R.axiom_suite("hellinger", None, 40, 4, 2, 5),
    lambda: R.transforms_report(20, 4),
])
def test_witnesses_reproduce(make):
    rep = make()
    for c in rep.checks:
        if c.evaluated == 0:
            continue
        if c.worst_state is not None:
            validate_density(c.worst_state)
        assert abs(R.recheck(rep, c.check_id) - c.max_violation) <= 1e-12


def test_tolerance_override():
    rep = R.skew_report(50, 1, 2, tolerance=1e-30)
    assert not rep.ok
    assert all(c.tolerance == 1e-30 for c in rep.checks)


def test_sample_table_columns():
    rows = R.sample_table("skew", 5, 0, 2)
    assert len(rows) == 8
    assert {"x0", "y0", "z0", "l1_texture", "skew_f"} <= set(rows[0])
