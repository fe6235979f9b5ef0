import itertools
import json

import pytest

from svlab.configurations import (BlockKind, ConfigKind, Configuration, ConstructionBlock,
                                  CYLINDER, InvalidConfiguration, canonical, compositions,
                                  dominant_distinct_config, dominant_loop_config,
                                  enumerate_distinct_zero_configs, enumerate_loop_configs,
                                  is_dominant, loop_multiplicity_one_configs, symmetry, validate)
from svlab.strata import Component, StratumSignature, minimal_stratum, two_zero_stratum


def partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def strata_up_to_genus(g_max, marked=True):
    out = []
    for g in range(2, g_max + 1):
        for orders in partitions(2 * g - 2):
            out.append(StratumSignature(orders))
            if marked and g <= 3:
                out.append(StratumSignature(orders + (0,)))
    return out


def weak_compositions(total, parts):
    """Stars and bars, independent of the package helper."""
    for bars in itertools.combinations(range(total + parts - 1), parts - 1):
        cuts = (-1,) + bars + (total + parts - 1,)
        yield tuple(cuts[i + 1] - cuts[i] - 1 for i in range(parts))


def brute_force_distinct_count(H, i1, i2, p):
    """Orbits of slit data under cyclic rotation, counted by minimal rotation."""
    orders = H.zero_orders
    a1 = orders[i1] + 1 - p
    a2 = orders[i2] + 1 - p
    if a1 < 0 or a2 < 0:
        return 0
    rest = [i for i in range(len(orders)) if i not in (i1, i2)]
    orbits = set()
    for top in weak_compositions(a1, p):
        for bot in weak_compositions(a2, p):
            for assign in itertools.product(range(p), repeat=len(rest)):
                blocks = []
                for i in range(p):
                    carried = tuple(z for z, j in zip(rest, assign) if j == i)
                    blocks.append((top[i], bot[i], carried))
                if any((t + b + sum(orders[z] for z in c)) % 2 for t, b, c in blocks):
                    continue
                rots = [tuple(blocks[r:] + blocks[:r]) for r in range(p)]
                orbits.add(min(rots))
    return len(orbits)


def test_compositions_helper_matches_stars_and_bars():
    for total in range(6):
        for parts in range(1, 4):
            assert sorted(compositions(total, parts)) == sorted(weak_compositions(total, parts))


def test_distinct_counts_match_brute_force_up_to_genus_4():
    checked = 0
    for H in strata_up_to_genus(4):
        n = H.n_zeros
        for i1, i2 in itertools.permutations(range(n), 2):
            for p in (1, 2, 3):
                got = enumerate_distinct_zero_configs(H, i1, i2, p)
                assert len(got) == brute_force_distinct_count(H, i1, i2, p), (H, i1, i2, p)
                checked += 1
    assert checked > 100


def test_h22_p2_count():
    H = StratumSignature.of(2, 2)
    got = enumerate_distinct_zero_configs(H, 0, 1, 2)
    assert len(got) == brute_force_distinct_count(H, 0, 1, 2)
    # a (0,1) slit would need the odd stratum H(1), so only one datum survives
    assert [tuple(b.parts for b in c.blocks) for c in got] == [((0, 0), (1, 1))]


def test_enumerated_distinct_configs_validate():
    for H in strata_up_to_genus(4):
        for p in (1, 2, 3):
            for c in enumerate_distinct_zero_configs(H, 0, H.n_zeros - 1, p) if H.n_zeros > 1 else []:
                validate(c)
                assert c.p == p and c.q == 0
                assert H.dimension == sum(s.dimension for s in c.substrata) + 2


def test_distinct_empty_beyond_bound():
    H = StratumSignature((1,) * 6)
    assert enumerate_distinct_zero_configs(H, 0, 1, 3) == []
    assert enumerate_distinct_zero_configs(H, 0, 1, 2) != []


def test_distinct_p1_merges_the_two_zeros():
    H = StratumSignature.of(3, 2, 1)
    configs = enumerate_distinct_zero_configs(H, 0, 2, 1)
    assert len(configs) == 1
    (block,) = configs[0].blocks
    assert block.parts == (3, 1)
    assert sorted(block.substratum.zero_orders) == [2, 4]


def test_distinct_index_errors():
    H = StratumSignature.of(2, 2)
    with pytest.raises(ValueError):
        enumerate_distinct_zero_configs(H, 0, 0, 1)
    with pytest.raises(IndexError):
        enumerate_distinct_zero_configs(H, 0, 5, 1)


def test_dominant_distinct_config_is_in_enumeration():
    H = StratumSignature.of(4, 3, 1)
    for p in (1, 2, 3, 4):
        dom = dominant_distinct_config(H, 0, 1, p)
        full = enumerate_distinct_zero_configs(H, 0, 1, p)
        doms = [c for c in full if is_dominant(c)]
        assert dom in doms and len(doms) == 1


# symmetry

def slit(parts, sub):
    return ConstructionBlock(BlockKind.SLIT, parts, StratumSignature(sub))


def test_symmetry_two_identical_slits_unlabelled():
    H = StratumSignature.of(3, 3)
    c = Configuration(H, ConfigKind.DISTINCT, (slit((1, 1), (2,)), slit((1, 1), (2,))), (3, 3), False)
    assert symmetry(c).gamma_order == 2


def test_symmetry_single_block():
    H = StratumSignature.of(3, 3)
    c = Configuration(H, ConfigKind.DISTINCT, (slit((3, 3), (6,)),), (3, 3), False)
    assert symmetry(c).gamma_order == 1 and symmetry(c).gamma_minus_order == 2
    H = StratumSignature.of(3, 1)
    c = Configuration(H, ConfigKind.DISTINCT, (slit((3, 1), (4,)),), (3, 1), False)
    assert symmetry(c).gamma_minus_order == 1


def brute_reversal_symmetric(blocks):
    rev = [(b, a) for a, b in reversed(blocks)]
    return any(rev[r:] + rev[:r] == blocks for r in range(len(blocks)))


def test_symmetry_reversal_with_swap():
    H = StratumSignature.of(3, 3)
    c = Configuration(H, ConfigKind.DISTINCT, (slit((2, 0), (2,)), slit((0, 2), (2,))), (3, 3), False)
    assert brute_reversal_symmetric([(2, 0), (0, 2)])
    assert symmetry(c).gamma_minus_order == 2
    assert symmetry(c).gamma_order == 1


def test_gamma_divides_p():
    for H in strata_up_to_genus(4, marked=False):
        for idx in range(H.n_zeros):
            for p in (1, 2, 3):
                for c in enumerate_loop_configs(H, idx, p):
                    s = symmetry(c)
                    assert p % s.gamma_order == 0
                    assert s.gamma_minus_order in (1, 2)


def test_canonical_is_rotation_invariant():
    H = StratumSignature.of(4, 3, 1)
    for c in enumerate_distinct_zero_configs(H, 0, 1, 3):
        for r in range(c.p):
            rotated = Configuration(H, c.kind, c.blocks[r:] + c.blocks[:r], c.interfaces, c.labelled)
            assert canonical(rotated) == c


# loops

def test_loop_configs_validate_and_satisfy_dimension_identity():
    seen = 0
    for H in strata_up_to_genus(4):
        for p in (1, 2, 3):
            for c in enumerate_loop_configs(H, None, p):
                validate(c)
                assert H.dimension == sum(s.dimension for s in c.substrata) + 2 * c.q + 2
                assert H.genus == sum(s.genus for s in c.substrata) + 1
                seen += 1
    assert seen > 100


def test_principal_loops_are_two_holes_and_cylinders():
    H = StratumSignature((1,) * 6)
    for p in (1, 2, 3):
        configs = enumerate_loop_configs(H, None, p)
        assert configs
        for c in configs:
            kinds = [b.kind for b in c.blocks]
            assert kinds == [BlockKind.TWO_HOLE, BlockKind.CYLINDER] * p
            assert all(b.parts == (0, 0) for b in c.pieces)


def test_minimal_stratum_single_loop_with_cylinder():
    g = 4
    H = minimal_stratum(g)
    m = 2 * g - 2
    figs = [c for c in enumerate_loop_configs(H, 0, 1)
            if [b.kind for b in c.blocks] == [BlockKind.FIGURE_EIGHT, BlockKind.CYLINDER]]
    assert figs
    for c in figs:
        assert c.blocks[0].merged_order == m - 2
        assert c.interfaces == (0, 0)
    direct = loop_multiplicity_one_configs(H, 0, "cylinder_same_zero")
    assert sorted(map(repr, direct)) == sorted(map(repr, figs))


def test_multiplicity_one_shapes_against_search():
    H = StratumSignature.of(3, 2, 1)
    search = enumerate_loop_configs(H, 0, 1)
    shapes = (loop_multiplicity_one_configs(H, 0, "no_cylinder")
              + loop_multiplicity_one_configs(H, 0, "cylinder_same_zero")
              + loop_multiplicity_one_configs(H, 0, "cylinder_other_zero", 1)
              + loop_multiplicity_one_configs(H, 0, "cylinder_other_zero", 2))
    assert sorted(map(repr, shapes)) == sorted(map(repr, search))


def test_hyperelliptic_loops_vanish_beyond_two():
    for g in (4, 5, 7):
        assert enumerate_loop_configs(two_zero_stratum(g), None, 3, component=Component.HYPERELLIPTIC) == []
        assert enumerate_loop_configs(minimal_stratum(g), None, 4, component=Component.HYPERELLIPTIC) == []
        assert enumerate_distinct_zero_configs(two_zero_stratum(g), 0, 1, 3,
                                               component=Component.HYPERELLIPTIC) == []


def test_hyperelliptic_gamma_rule():
    g = 6
    configs = enumerate_distinct_zero_configs(two_zero_stratum(g), 0, 1, 2, component=Component.HYPERELLIPTIC)
    for c in configs:
        g1, g2 = (s.genus for s in c.substrata)
        assert (symmetry(c).gamma_order == 2) == (g1 == g2)


def test_is_dominant_examples():
    H = StratumSignature.of(4, 2)
    assert is_dominant(enumerate_distinct_zero_configs(H, 0, 1, 1)[0])
    two_big = [c for c in enumerate_distinct_zero_configs(StratumSignature.of(5, 5), 0, 1, 2)
               if all(s.genus >= 2 for s in c.substrata)]
    assert two_big and not any(is_dominant(c) for c in two_big)
    g, p = 6, 3
    H = StratumSignature((1,) * (2 * g - 2))
    c = dominant_loop_config(H, list(range(2 * p)), p)
    genera = sorted(s.genus for s in c.substrata)
    assert genera == [1] * (p - 1) + [g - p] and is_dominant(c)
    validate(c)


def test_validate_rejects_broken_data():
    H = StratumSignature.of(2, 2)
    c = enumerate_distinct_zero_configs(H, 0, 1, 1)[0]
    broken = Configuration(H, c.kind, (slit((2, 1), (3, 1)),), c.interfaces)
    with pytest.raises(InvalidConfiguration):
        validate(broken)


def test_json_serialization():
    H = StratumSignature.of(3, 2, 1)
    for c in enumerate_loop_configs(H, 0, 2)[:5] + enumerate_distinct_zero_configs(H, 0, 1, 2):
        d = json.loads(json.dumps(c.to_dict()))
        assert d["p"] == c.p and d["q"] == c.q
        assert all(b["kind"] in {k.value for k in BlockKind} for b in d["blocks"])
        for b in d["blocks"]:
            if b["kind"] != "cylinder":
                assert b["substratum"].startswith("H(")
