import itertools

import pytest
from hypothesis import given, strategies as st

from conftest import cached_group, group_of
from deeptkt.errors import IdentificationError, ParameterError
from deeptkt.pcgroup import GroupParams, admissible_params
from deeptkt.symbolic import identify_tower_group, symbolic_pattern, kernel_type_row
from deeptkt.transfer import artin_pattern, deep_tkt
from deeptkt.tree import smallgroups_label

TOWER = {
    (2, (3, 9, 3, 3)): GroupParams(1, 6, 0, 0),
    (2, (3, 3, 9, 9)): GroupParams(1, 6, -1, 0),
    (2, (3, 3, 3, 3)): GroupParams(1, 6, 1, 0),
    (3, (3, 9, 3, 3)): GroupParams(1, 8, 0, 0),
    (3, (3, 3, 9, 9)): GroupParams(1, 8, -1, 0),
    (3, (3, 3, 3, 3)): GroupParams(1, 8, 1, 0),
}


@pytest.mark.parametrize("key", TOWER, ids=str)
def test_identify(key):
    e, kd = key
    assert identify_tower_group(e, kd) == TOWER[key]
    assert identify_tower_group(e, kd, comparison="ordered") == TOWER[key]


def test_identify_labels():
    assert smallgroups_label(identify_tower_group(2, (3, 9, 3, 3))) == (729, 99)
    assert smallgroups_label(identify_tower_group(2, (3, 3, 9, 9))) == (729, 100)
    assert smallgroups_label(identify_tower_group(2, (3, 3, 3, 3))) == (729, 101)
    assert smallgroups_label(identify_tower_group(3, (3, 9, 3, 3))) == (6561, 2225)
    assert smallgroups_label(identify_tower_group(3, (3, 3, 9, 9))) == (6561, 2226)
    assert smallgroups_label(identify_tower_group(3, (3, 3, 3, 3))) == (6561, 2227)


@pytest.mark.parametrize("key", TOWER, ids=str)
def test_identify_round_trip(key):
    p = TOWER[key]
    kd, _, _ = deep_tkt(group_of(p))
    assert identify_tower_group(key[0], kd, comparison="ordered") == p


@given(st.sampled_from(sorted(TOWER)), st.permutations(range(4)))
def test_identify_multiset_permutation_invariant(key, perm):
    e, kd = key
    assert identify_tower_group(e, [kd[i] for i in perm]) == TOWER[key]


@pytest.mark.parametrize("e,kd", [(2, (9, 9, 9, 9)), (2, (27, 9, 3, 3)), (1, (3, 9, 3, 3)), (2, (3, 9, 3))])
def test_identify_failures(e, kd):
    with pytest.raises(IdentificationError):
        identify_tower_group(e, kd)


def test_ordered_mode_rejects_permuted():
    with pytest.raises(IdentificationError):
        identify_tower_group(2, (9, 3, 3, 3), comparison="ordered")
    assert identify_tower_group(2, (9, 3, 3, 3)) == GroupParams(1, 6, 0, 0)


def test_kernel_type_rows():
    assert kernel_type_row(GroupParams(0, 4, 0, 1)) == ("a.3*", (2, 0, 0, 0), (27, 9, 3, 3))
    assert kernel_type_row(GroupParams(0, 7, 0, 0))[1:] == ((0, 0, 0, 0), (9, 9, 9, 9))
    assert kernel_type_row(GroupParams(1, 9, -1, 0))[2] == (3, 3, 9, 9)
    with pytest.raises(ParameterError):
        kernel_type_row(GroupParams(1, 4, 0, 0))


@pytest.mark.parametrize("n", [5, 6, 7])
def test_branch_periodicity(n):
    # computed kernel types are invariant under n -> n+2, level by level
    def level(m):
        out = {}
        for p in admissible_params(m, m):
            pat = artin_pattern(group_of(p))
            out[(p.a, p.z, p.w)] = (pat.kappa_s, pat.kappa_d_orders, pat.kappa_d_structures)
        return out
    assert level(n) == level(n + 2)


def test_kappa_multiset_per_level_matches_prediction():
    for p in admissible_params(9, 3):
        s = symbolic_pattern(p)
        assert len(s.kappa_s) == len(s.kappa_d_orders) == len(s.kappa_d_structures) == 4
        assert all(k.order == o for k, o in zip(s.kappa_d_structures, s.kappa_d_orders))
