import numpy as np
import pytest

from trigeom.harness import (SpaceSpec, compare_expected, expected_delta_duality,
                             flag_transitivity_vs_triples, is_flag_transitive, load_expected,
                             negative_gonality_control, report, source_has_duality,
                             verify_characterization)
from trigeom.spaces import affine_space, projective_space

from .conftest import cx


def test_spec_parsing():
    s = SpaceSpec.parse("AG 2 3")
    assert (s.kind, s.params, s.name) == ("ag", (2, 3), "AG(2,3)")
    assert SpaceSpec.parse(["kv", "5"]).name == "K5"
    assert SpaceSpec.parse("uh 4").delta_size() == 3 * 65 * 16  # 65 points, 16 blocks on each
    for bad in ("", "xx 1", "ag 2", "ag two 3", "kv 3 4"):
        with pytest.raises(ValueError):
            SpaceSpec.parse(bad)


def test_small_report():
    rep = report("kv 4", bound=5000)
    assert rep.elements == 36 and rep.connected and not rep.residually_connected
    assert rep.aut_order == 24 and rep.cor_order == 144
    assert rep.has_duality and rep.has_triality and rep.flag_transitive
    assert not rep.source_has_duality
    assert rep.type_perms[0] == [1, 2, 3]
    assert "K4" in rep.table_row()


def test_report_respects_bound():
    rep = report("pg 3 2", bound=100)
    assert rep.omitted == ["scale"] and rep.aut_order is None


def test_report_without_search():
    rep = report("pg 2 2", search=False)
    assert rep.aut_order is None and "search" in rep.omitted and rep.diagram is not None


def test_flag_transitive_check_rejects_non_automorphisms():
    _, tc = cx("pg 2 2")
    with pytest.raises(ValueError):
        is_flag_transitive(tc.sys, [np.roll(np.arange(len(tc.sys)), 1)])


def test_source_duality():
    assert source_has_duality(projective_space(2, 3))
    assert not source_has_duality(affine_space(2, 3))


@pytest.mark.parametrize("text", ["pg 2 2", "ag 2 3", "kv 4", "uh 2"])
def test_flag_transitivity_equivalence(text):
    ft, trans = flag_transitivity_vs_triples(text)
    assert ft == trans is True


def test_characterization_small_cases():
    res = verify_characterization([("pg 2 2", True), ("ag 2 3", True), ("uh 2", True),
                                   ("kv 4", False), ("kv 5", False)])
    assert all(r.passed for r in res), res


def test_expected_duality_rule():
    assert expected_delta_duality("pg", True)
    assert not expected_delta_duality("ag", False)
    assert expected_delta_duality("kv", False)


def test_negative_gonality_control():
    assert all(negative_gonality_control().values())


def test_expected_values_and_deviations():
    data = load_expected("classical")
    rows = data["rows"]
    assert len(rows) == 12
    rep = report("kv 3", bound=5000)
    assert rep.components == 6
    # the K3 row carries deviations that compare_expected applies
    assert "deviations" in rows["K3"]
    assert compare_expected(rep, rows["K3"]) == []
    raw = {k: v for k, v in rows["K3"].items() if k != "deviations"}
    bad = {f for f, _, _ in compare_expected(rep, raw)}
    assert bad == set(rows["K3"]["deviations"])
