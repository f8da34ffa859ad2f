from fractions import Fraction

import pytest

from coarselab.a1 import (
    FatCover,
    FatSet,
    ScopeTooSmallError,
    _interior_depths,
    a1_map,
    build_fat_cover,
    lebesgue_check,
    phi,
    select_anchors,
    variation,
    variation_sweep,
)
from coarselab.geodesics import GeodesicFamily
from coarselab.graphs import MetricGraph, ball
from coarselab.spaces import broom_tree


@pytest.fixture(scope="module")
def broom400_fat():
    b = broom_tree(400)
    fam = GeodesicFamily.all_of(b.graph)
    fat = build_fat_cover(b.graph, fam, r=1, delta=0, d_constant=1, basepoint=b.basepoint)
    return b, fat


def path_graph(n):
    return MetricGraph(n, [(i, i + 1) for i in range(n - 1)], name=f"path_{n}")


class TestBuildFatCover:
    def test_order_at_most_2d(self, broom400_fat):
        _, fat = broom400_fat
        assert fat.order_max <= 2

    def test_members_are_2r_fattenings(self, broom400_fat):
        # fattened members = vertices within 2r of the origin set, verified
        # against a plain multi-source BFS
        from coarselab.graphs import multi_source_distances

        b, fat = broom400_fat
        g = b.graph
        for fs, base_set in list(zip(fat.sets, fat.base.sets))[:5]:
            dist = multi_source_distances(g, base_set.members)
            expected = {v for v, d in enumerate(dist) if 0 <= d <= 2 * fat.r}
            assert fs.members == frozenset(expected)

    def test_fattened_point_sees_origin_within_5r(self, broom400_fat):
        # x in N(U;2r) implies N(x;5r) meets U
        b, fat = broom400_fat
        g = b.graph
        for fs, base_set in list(zip(fat.sets, fat.base.sets))[:3]:
            sample = sorted(fs.members)[:10]
            for x in sample:
                assert ball(g, x, 5 * fat.r) & base_set.members

    def test_scope_too_small(self):
        b = broom_tree(40)
        fam = GeodesicFamily.all_of(b.graph)
        with pytest.raises(ScopeTooSmallError):
            build_fat_cover(b.graph, fam, r=1, delta=0, d_constant=1, basepoint=b.basepoint)

    def test_safe_core_nonempty_and_within_complete(self, broom400_fat):
        b, fat = broom400_fat
        assert fat.safe
        region = fat.base.complete_region()
        assert fat.safe <= region


class TestInteriorDepths:
    def test_depths_on_path_interval(self):
        g = path_graph(9)
        depth = _interior_depths(g, frozenset({3, 4, 5}))
        assert depth == {3: 1, 4: 2, 5: 1}

    def test_depth_is_true_complement_distance(self, broom400_fat):
        b, fat = broom400_fat
        g = b.graph
        fs = fat.sets[2]
        outside = [v for v in range(g.vertex_count) if v not in fs.members]
        from coarselab.graphs import multi_source_distances

        dist = multi_source_distances(g, outside)
        for v in sorted(fs.members)[:50]:
            assert fs.depth[v] == dist[v]


class TestLebesgue:
    def test_r1_reduces_to_coverage(self, broom400_fat):
        b, fat = broom400_fat
        rep = lebesgue_check(b.graph, fat)
        assert rep.radius == 0
        assert rep.passed

    def test_r2_passes(self):
        b = broom_tree(400)
        fam = GeodesicFamily.all_of(b.graph)
        fat = build_fat_cover(b.graph, fam, r=2, delta=0, d_constant=1, basepoint=b.basepoint)
        rep = lebesgue_check(b.graph, fat)
        assert rep.radius == 0
        assert rep.passed

    def test_adversarial_deleted_set_fails(self, broom400_fat):
        b, fat = broom400_fat
        # drop the only set covering the deepest leaves
        leaf = b.vertex_of("400.400")
        holders = fat.sets_of[leaf]
        keep = [i for i in range(len(fat.sets)) if i not in holders]
        sets = tuple(fat.sets[i] for i in keep)
        sets_of: dict[int, tuple[int, ...]] = {}
        for i, fs in enumerate(sets):
            for v in fs.members:
                sets_of.setdefault(v, ())
                sets_of[v] = sets_of[v] + (i,)
        doctored = FatCover(
            r=fat.r,
            d_constant=fat.d_constant,
            base=fat.base,
            sets=sets,
            sets_of=sets_of,
            diam_base=fat.diam_base,
            safe=fat.safe,
            order_max=fat.order_max,
        )
        rep = lebesgue_check(b.graph, doctored)
        assert not rep.passed
        assert rep.witness is not None


class TestPhi:
    def test_single_set_region_gives_one(self, broom400_fat):
        b, fat = broom400_fat
        # a vertex covered by exactly one fattened set
        for x in sorted(fat.safe):
            if len(fat.sets_of[x]) == 1:
                weights = phi(b.graph, fat, x)
                assert list(weights.values()) == [Fraction(1)]
                break
        else:
            pytest.fail("no single-set vertex found")

    def test_partition_of_unity_on_safe_core(self, broom400_fat):
        b, fat = broom400_fat
        sample = sorted(fat.safe)[::97]
        for x in sample:
            weights = phi(b.graph, fat, x)
            assert sum(weights.values(), Fraction(0)) == 1
            assert all(w > 0 for w in weights.values())

    def test_denominator_at_least_r(self):
        b = broom_tree(400)
        fam = GeodesicFamily.all_of(b.graph)
        for r in (1, 2):
            fat = build_fat_cover(b.graph, fam, r=r, delta=0, d_constant=1, basepoint=b.basepoint)
            for x in sorted(fat.safe)[::151]:
                total = sum(fat.sets[i].depth[x] for i in fat.sets_of[x])
                assert total >= r


class TestAnchors:
    def test_interval_anchor_is_midpoint(self):
        g = path_graph(9)
        members = frozenset({3, 4, 5})
        fs = FatSet(1, None, members, _interior_depths(g, members))
        fc = FatCover(
            r=1, d_constant=1, base=None, sets=(fs,), sets_of={v: (0,) for v in members},
            diam_base=2, safe=frozenset(members), order_max=1,
        )
        assert select_anchors(g, fc) == {0: 4}

    def test_tie_breaks_to_least_id(self):
        g = path_graph(9)
        members = frozenset({2, 3})
        fs = FatSet(1, None, members, _interior_depths(g, members))
        fc = FatCover(
            r=1, d_constant=1, base=None, sets=(fs,), sets_of={v: (0,) for v in members},
            diam_base=1, safe=frozenset(members), order_max=1,
        )
        assert select_anchors(g, fc) == {0: 2}

    def test_anchor_weight_nonzero(self, broom400_fat):
        b, fat = broom400_fat
        anchors = select_anchors(b.graph, fat)
        for i, z in list(anchors.items())[:20]:
            assert fat.sets[i].depth[z] >= 1

    def test_deterministic(self, broom400_fat):
        b, fat = broom400_fat
        assert select_anchors(b.graph, fat) == select_anchors(b.graph, fat)


class TestA1Map:
    def test_unit_mass_at_single_anchor(self, broom400_fat):
        b, fat = broom400_fat
        anchors = select_anchors(b.graph, fat)
        for x in sorted(fat.safe):
            if len(fat.sets_of[x]) == 1:
                amap = a1_map(b.graph, fat, x, anchors)
                (entry,) = amap.entries.items()
                assert entry == (anchors[fat.sets_of[x][0]], Fraction(1))
                break

    def test_norm_and_support(self, broom400_fat):
        b, fat = broom400_fat
        anchors = select_anchors(b.graph, fat)
        for x in sorted(fat.safe)[::53]:
            amap = a1_map(b.graph, fat, x, anchors)
            assert amap.l1_norm() == 1
            assert all(v > 0 for v in amap.entries.values())
            assert len(amap.entries) <= 2 * fat.d_constant

    def test_support_within_radius_bound(self, broom400_fat):
        b, fat = broom400_fat
        anchors = select_anchors(b.graph, fat)
        bound = 4 * fat.r + fat.diam_base
        tm = b.graph.tree_metric()
        import numpy as np

        for x in sorted(fat.safe)[::201]:
            amap = a1_map(b.graph, fat, x, anchors)
            supp = np.asarray(amap.support(), dtype=np.int64)
            assert int(tm.distances(x, supp).max()) <= bound


class TestVariation:
    def test_same_point_is_zero(self, broom400_fat):
        b, fat = broom400_fat
        x = min(fat.safe)
        rep = variation(b.graph, fat, x, x)
        assert rep.l1 == 0
        assert rep.max_phi_diff == 0
        assert rep.complement_diff_sum == 0

    def test_adjacent_pairs_meet_bounds(self, broom400_fat):
        b, fat = broom400_fat
        g = b.graph
        dd = fat.d_constant
        checked = 0
        for z in sorted(fat.safe)[::401]:
            for w in g.neighbors(z):
                if w not in fat.safe:
                    continue
                rep = variation(g, fat, z, w)
                assert rep.distance == 1
                assert rep.l1 <= Fraction((4 * dd + 1) ** 2, fat.r)
                assert rep.max_phi_diff <= Fraction(4 * dd + 1, fat.r)
                assert rep.complement_diff_sum <= 4 * dd
                checked += 1
        assert checked > 0

    def test_complement_triangle_step(self, broom400_fat):
        b, fat = broom400_fat
        g = b.graph
        for z in sorted(fat.safe)[::301]:
            for w in g.neighbors(z):
                if w not in fat.safe:
                    continue
                for i, fs in enumerate(fat.sets):
                    dz = fs.depth.get(z, 0)
                    dw = fs.depth.get(w, 0)
                    assert abs(dz - dw) <= 1

    def test_sweep_matches_pointwise(self, broom400_fat):
        b, fat = broom400_fat
        sweep = variation_sweep(b.graph, fat)
        assert sweep.pairs_checked > 0
        assert sweep.l1_ok and sweep.phi_ok and sweep.complement_ok and sweep.step_ok
        # the recorded witness pair attains the sup exactly
        z, w = sweep.witness_pair
        assert variation(b.graph, fat, z, w).l1 == sweep.sup_l1


class TestDumpFormat:
    def test_lines_sorted_and_exact(self):
        from coarselab.a1 import store_a1_maps

        b = broom_tree(130)
        fam = GeodesicFamily.all_of(b.graph)
        fat = build_fat_cover(b.graph, fam, r=1, delta=0, d_constant=1, basepoint=b.basepoint)
        text = store_a1_maps(b.graph, fat)
        lines = text.strip().split("\n")
        assert len(lines) == len(fat.safe)
        anchors = select_anchors(b.graph, fat)
        for line in lines[:30]:
            head, _, body = line.partition(" : ")
            assert head.startswith("a x=")
            x = int(head[4:])
            expected = a1_map(b.graph, fat, x, anchors).entries
            parts = dict(p.split("=") for p in body.split())
            assert {int(z): Fraction(v) for z, v in parts.items()} == expected
            assert sorted(int(z) for z in parts) == [int(z) for z in parts]
