import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import cached_group, group_of
from deeptkt.errors import CapacityError, ParameterError, StructureError
from deeptkt.finite import derived_subgroup, subgroup_closure
from deeptkt.pcgroup import (GroupParams, admissible_params, build_group, collect, power_identities_by_collection,
                             power_identity_checks, letters_of, maximal_subgroups, relation_actions,
                             two_step_centralizer)

SMALL = admissible_params(7)
ALL9 = admissible_params(9)
params_st = st.sampled_from(SMALL)


def test_admissible_set_shape():
    assert ALL9[0] == GroupParams(0, 2, 0, 0)
    assert len([p for p in ALL9 if p.n == 4]) == 4
    assert all(p.n >= 5 for p in ALL9 if p.a == 1)
    # (-1,0) only on even levels, a=1 from n=5
    assert GroupParams(0, 5, 0, -1) not in ALL9
    assert GroupParams(0, 6, 0, -1) in ALL9


@pytest.mark.parametrize("bad", [GroupParams(2, 5, 0, 0), GroupParams(1, 4, 0, 0), GroupParams(0, 1, 0, 0),
                                 GroupParams(0, 5, 1, 1), GroupParams(0, 3, 0, 1)])
def test_inadmissible_params_rejected(bad):
    with pytest.raises(ParameterError):
        build_group(bad)


def test_capacity_bound():
    with pytest.raises(CapacityError):
        build_group(GroupParams(0, 10, 0, 0))
    with pytest.raises(CapacityError):
        build_group(GroupParams(0, 5, 0, 0), bound=4)


def test_capacity_env(monkeypatch):
    monkeypatch.setenv("PCT_ENUM_BOUND", "4")
    with pytest.raises(CapacityError):
        build_group(GroupParams(0, 5, 0, 0))


@pytest.mark.parametrize("p", ALL9, ids=str)
def test_relations_act_trivially(p):
    # regular action of the tables satisfying every relation => consistent presentation of order 3^n
    G = group_of(p)
    acts = relation_actions(G)
    assert all(acts.values()), [k for k, v in acts.items() if not v]


@pytest.mark.parametrize("p", ALL9, ids=str)
def test_structure_of_maximal_class(p):
    G = group_of(p)
    assert G.order == 3**p.n
    assert G.derived.order == 3 ** (p.n - 2)
    if p.n >= 3:
        assert G.nilpotency_class == p.n - 1
        assert G.coclass == 1
        assert G.gamma(p.n).order == 1 and G.gamma(p.n - 1).order == 3
        assert G.centre == G.gamma(p.n - 1)
        assert G.centre == subgroup_closure(G, [G.s(p.n - 1)])


def test_examples_small():
    G = cached_group(0, 2, 0, 0)
    assert G.order == 9 and G.derived.order == 1
    assert all(G.pow(g, 3) == 0 for g in range(9))
    E = cached_group(0, 3, 1, 0)
    s2 = subgroup_closure(E, [E.s(2)])
    for g in range(E.order):
        if not E.derived.mask[g]:
            assert s2.mask[E.pow(g, 3)]
    assert E.multiply((0, 1, 0), (1, 0, 0)) == (1, 1, 1)


def test_729_99():
    G = cached_group(1, 6, 0, 0)
    assert (G.order, G.nilpotency_class, G.coclass) == (729, 5, 1)
    # s2^y = s2 s5^-1, i.e. s2 y = y s2 s5^-1
    assert G.mul(G.s(2), G.y) == G.product([G.y, G.s(2), G.pow(G.s(5), -1)])


@pytest.mark.parametrize("p", ALL9, ids=str)
def test_defining_values(p):
    G = group_of(p)
    assert G.comm(G.y, G.x) == G.s(2)
    assert G.pow(G.x, 3) == (G.pow(G.s(p.n - 1), p.w) if p.n >= 3 else 0)


def test_enumeration_oracle():
    # closure from the two generators reaches the full order
    for a, n, w, z, order in [(0, 4, 0, 1, 81), (1, 8, 1, 0, 6561), (0, 2, 0, 0, 9)]:
        G = cached_group(a, n, w, z)
        assert subgroup_closure(G, [G.x, G.y]).order == order
        assert len(G.enumerate()) == order


def test_closures():
    G = cached_group(1, 7, 0, 0)
    assert subgroup_closure(G, []).order == 1
    Gp = subgroup_closure(G, [G.s(k) for k in range(2, 7)])
    assert Gp.order == 3**5 and Gp == G.derived
    H = maximal_subgroups(G)
    assert H[0] == subgroup_closure(G, [G.y] + [G.s(k) for k in range(2, 7)])
    assert all(h.order == 3**6 and G.derived <= h for h in H)
    assert len({h.mask.tobytes() for h in H}) == 4


def test_element_validation():
    G = cached_group(0, 4, 0, 0)
    with pytest.raises(StructureError):
        G.encode((1, 2, 3, 0))
    with pytest.raises(StructureError):
        G.encode((1, 2))
    with pytest.raises(StructureError):
        G.element("q^2")
    assert G.element("x*y^2") == G.mul(G.x, G.pow(G.y, 2))
    assert G.element("1") == 0


@given(params_st, st.data())
def test_collector_agrees_with_tables(p, data):
    G = group_of(p)
    word = data.draw(st.lists(st.integers(0, p.n - 1), max_size=25))
    assert collect(G, word) == G.decode(G.product(G.generator(i) for i in word))


@given(params_st, st.data())
def test_collected_product_of_normal_forms(p, data):
    G = group_of(p)
    g, h = (data.draw(st.integers(0, G.order - 1)) for _ in range(2))
    lhs = collect(G, letters_of(G.decode(g)) + letters_of(G.decode(h)))
    assert lhs == G.decode(G.mul(g, h))


@pytest.mark.parametrize("p", SMALL, ids=str)
def test_associativity_sampled(p):
    G = group_of(p)
    rng = np.random.default_rng(p.n * 7 + p.a)
    u, v, w = rng.integers(0, G.order, size=(3, 1000))
    assert np.array_equal(G.mul(G.mul(u, v), w), G.mul(u, G.mul(v, w)))


@given(params_st, st.data())
def test_group_axioms(p, data):
    G = group_of(p)
    g = data.draw(st.integers(0, G.order - 1))
    h = data.draw(st.integers(0, G.order - 1))
    assert G.mul(0, g) == g == G.mul(g, 0)
    assert G.mul(g, G.inv(g)) == 0
    assert G.comm(g, g) == 0
    # [g,h] = g^-1 h^-1 g h
    assert G.comm(g, h) == G.product([G.inv(g), G.inv(h), g, h])
    assert G.inv(G.comm(g, h)) == G.comm(h, g)
    assert G.pow(g, 3 ** p.n) == 0


@given(params_st, st.data())
def test_exponent_vector_api(p, data):
    G = group_of(p)
    e = tuple(data.draw(st.lists(st.integers(0, 2), min_size=p.n, max_size=p.n)))
    f = tuple(data.draw(st.lists(st.integers(0, 2), min_size=p.n, max_size=p.n)))
    assert G.decode(G.encode(e)) == e
    assert G.multiply(G.identity, e) == e
    assert G.multiply(e, G.inverse(e)) == G.identity
    assert G.power(e, 2) == G.multiply(e, e)
    assert G.commutator(e, f) == G.decode(G.comm(G.encode(e), G.encode(f)))


@pytest.mark.parametrize("p", ALL9, ids=str)
def test_power_identities(p):
    G = group_of(p)
    checks = {**power_identity_checks(G), **power_identities_by_collection(G)}
    assert all(checks.values()), [k for k, v in checks.items() if not v]


@pytest.mark.parametrize("p", [q for q in ALL9 if q.n >= 4], ids=str)
def test_two_step_centralizer(p):
    G = group_of(p)
    chi = two_step_centralizer(G)
    assert chi == maximal_subgroups(G)[0]
    # literal quantification over G' agrees with the generator shortcut
    if p.n <= 8:
        assert two_step_centralizer(G, literal=False) == two_step_centralizer(G, literal=True)
    if p.a == 0:
        assert chi.is_abelian()
    else:
        assert derived_subgroup(G, chi) == G.gamma(p.n - 1)


def test_two_step_centralizer_class_two():
    G = cached_group(0, 3, 1, 0)
    assert two_step_centralizer(G) == G.all


def test_first_maximal_subgroup_abelian_iff_a_zero():
    for p in admissible_params(7, 5):
        H1 = maximal_subgroups(group_of(p))[0]
        assert H1.is_abelian() == (p.a == 0)
