import pytest

from conftest import load_fixture
from corpus import corpus
from oracle import oracle_relations, signature
from semsnap.errors import UnknownView
from semsnap.relations import (
    RelationKind,
    find_relations,
    integration_groups,
    relations_for_view,
)


def _kinds(canvas):
    return [(r.kind.code, r.view_ids, r.conditional)
            for r in find_relations(canvas).instances]


class TestTableRows:
    def test_full_redundancy(self):
        assert _kinds(load_fixture("table1a.canvas.json")) == [
            ("R1", ("left", "right"), False)]

    def test_partial_redundancy(self):
        canvas = load_fixture("table1b.canvas.json")
        (inst,) = find_relations(canvas).instances
        assert inst.kind is RelationKind.PARTIAL_REDUNDANCY
        # the unmapped side of every one-sided witness is the subset view
        one_sided = [w for w in inst.witnesses
                     if w.tuple_a.d.is_empty != w.tuple_b.d.is_empty]
        assert one_sided
        for w in one_sided:
            empty = w.tuple_a if w.tuple_a.d.is_empty else w.tuple_b
            assert empty.view_id == "plain"

    def test_multiples_same_grouping_is_conditional(self):
        canvas = load_fixture("table1c.canvas.json")
        (inst,) = find_relations(canvas).instances
        assert inst.kind is RelationKind.MULTIPLES_SAME_GROUPING
        assert inst.conditional
        assert inst.pending_confirmations == (("mean(price)", "mean(rank)"),)

    def test_multiples_same_data_needs_differing_domains(self):
        canvas = load_fixture("table1d.canvas.json")
        (inst,) = find_relations(canvas).instances
        assert inst.kind is RelationKind.MULTIPLES_SAME_DATA
        assert all(w.domains_differ for w in inst.witnesses)

    def test_hallucinator(self):
        canvas = load_fixture("table1e.canvas.json")
        (inst,) = find_relations(canvas).instances
        assert inst.kind is RelationKind.HALLUCINATOR
        assert [w.channel_class.value for w in inst.witnesses] == ["positionY"]

    def test_confuser(self):
        canvas = load_fixture("table1f.canvas.json")
        (inst,) = find_relations(canvas).instances
        assert inst.kind is RelationKind.CONFUSER
        assert [w.channel_class.value for w in inst.witnesses] == ["color"]


class TestPrecedence:
    def test_redundancy_chain_yields_one_instance_per_pair(self):
        # every corpus pair carries at most one redundancy-axis relation
        redundancy = {"R1", "R2", "R3a"}
        for canvas in corpus(40):
            seen = {}
            for inst in find_relations(canvas).instances:
                if inst.kind.code in redundancy:
                    assert inst.view_ids not in seen, \
                        f"pair {inst.view_ids} matched twice"
                    seen[inst.view_ids] = inst.kind.code

    def test_full_redundancy_shadows_weaker_rows(self):
        canvas = load_fixture("table1a.canvas.json")
        codes = [r.kind.code for r in find_relations(canvas).instances]
        assert codes == ["R1"]


class TestCaseStudyFixtures:
    def test_election_inventory(self):
        canvas = load_fixture("election.canvas.json")
        got = [(r.kind.code, r.view_ids, r.conditional)
               for r in find_relations(canvas).instances]
        assert got == [
            ("R3a", ("clinton", "trump"), True),
            ("R5", ("polls", "trump"), False),
        ]

    def test_nightingale_inventory(self):
        canvas = load_fixture("nightingale.canvas.json")
        insts = find_relations(canvas).instances
        assert len(insts) == 10
        assert all(r.kind is RelationKind.MULTIPLES_SAME_GROUPING
                   for r in insts)
        assert not any(r.conditional for r in insts)

    def test_covid_inventory(self):
        canvas = load_fixture("covid.canvas.json")
        by_code = {}
        for r in find_relations(canvas).instances:
            by_code.setdefault(r.kind.code, []).append(r.view_ids)
        assert len(by_code["R3a"]) == 7
        assert len(by_code["R4"]) == 5
        assert sorted(by_code["R5"]) == [
            ("pie_cases", "stream_cases"), ("pie_deaths", "stream_cases")]


class TestRelationsForView:
    def test_unknown_view(self):
        canvas = load_fixture("election.canvas.json")
        with pytest.raises(UnknownView):
            relations_for_view(find_relations(canvas), canvas, "nope")

    def test_subset_of_full_set(self):
        for canvas in corpus(25):
            rels = find_relations(canvas)
            for view in canvas.views:
                mine = relations_for_view(rels, canvas, view.id)
                assert all(r in rels.instances for r in mine)
                assert all(view.id in r.view_ids for r in mine)

    def test_isolated_view_has_none(self):
        canvas = load_fixture("table1a.canvas.json")
        rels = find_relations(canvas)
        assert rels.by_view.get("missing") is None


class TestIntegrationGroups:
    def test_nightingale_groups(self):
        canvas = load_fixture("nightingale.canvas.json")
        groups = integration_groups(find_relations(canvas), canvas)
        assert groups == [["area_deaths", "area_unharmed"],
                          ["bar_disease", "bar_wounds", "bar_other"]]

    def test_mixed_chart_types_do_not_group(self):
        canvas = load_fixture("covid.canvas.json")
        groups = integration_groups(find_relations(canvas), canvas)
        # bars group with bars, streams with streams, never across
        assert groups == [["bar_deaths", "bar_cases"],
                          ["stream_deaths", "stream_cases"]]


class TestOracleAgreement:
    def test_small_sample_matches_oracle(self):
        for canvas in corpus(30, base_seed=7000):
            assert signature(find_relations(canvas)) == \
                oracle_relations(canvas)
