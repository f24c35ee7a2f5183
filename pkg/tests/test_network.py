"""Graph model: construction rules and invariant reporting."""

import pytest

from adplanner import Edge, Violation, Website, WebsiteNetwork, validate_network


def node(node_id: str, reach: float | None = 10.0, **overrides) -> Website:
    fields = dict(
        id=node_id,
        domain=f"{node_id.lower()}.example",
        reach_pct=reach,
        age_ratios={"25-34": 1.2},
        income_ratios={"30-60k": 1.0},
        banner_ads=True,
    )
    fields.update(overrides)
    return Website(**fields)


class TestConstruction:
    def test_duplicate_node_id_rejected(self):
        with pytest.raises(ValueError, match="duplicate node id"):
            WebsiteNetwork([node("A"), node("A")], [])

    def test_duplicate_edge_rejected(self):
        with pytest.raises(ValueError, match="duplicate edge"):
            WebsiteNetwork([node("A"), node("B")], [Edge("A", "B", 0.5), Edge("A", "B", 0.7)])

    def test_opposite_directions_are_distinct_edges(self):
        net = WebsiteNetwork([node("A"), node("B")], [Edge("A", "B", 0.5), Edge("B", "A", 0.7)])
        assert len(net.edges) == 2

    def test_iteration_is_sorted_by_id(self):
        net = WebsiteNetwork([node("B"), node("A"), node("C")], [])
        assert [n.id for n in net] == ["A", "B", "C"]
        assert net.node_ids() == ["A", "B", "C"]

    def test_lookup_and_contains(self):
        net = WebsiteNetwork([node("A")], [])
        assert net.get("A").domain == "a.example"
        assert "A" in net and "Z" not in net
        assert len(net) == 1

    def test_equality_is_content_based(self):
        a = WebsiteNetwork([node("A"), node("B")], [Edge("A", "B", 0.5)])
        b = WebsiteNetwork([node("B"), node("A")], [Edge("A", "B", 0.5)])
        c = WebsiteNetwork([node("A"), node("B")], [Edge("A", "B", 0.6)])
        assert a == b
        assert a != c


class TestIsComplete:
    def test_complete_node(self):
        assert node("A").is_complete()

    @pytest.mark.parametrize(
        "overrides",
        [dict(reach_pct=None), dict(age_ratios={}), dict(income_ratios={})],
    )
    def test_missing_data_is_incomplete(self, overrides):
        assert not node("A", **overrides).is_complete()

    def test_banner_flag_does_not_affect_completeness(self):
        assert node("A", banner_ads=False).is_complete()


class TestValidateNetwork:
    def test_clean_network_has_empty_report(self, abc_network):
        assert validate_network(abc_network) == []

    def test_incomplete_node_reported(self):
        net = WebsiteNetwork([node("A", reach=None, age_ratios={}, income_ratios={})], [])
        messages = [v.message for v in validate_network(net)]
        assert "missing reach" in messages
        assert "empty age_ratios" in messages
        assert "empty income_ratios" in messages

    @pytest.mark.parametrize("reach", [0.0, -3.0, 100.5, float("nan"), float("inf")])
    def test_reach_out_of_range_reported(self, reach):
        report = validate_network(WebsiteNetwork([node("A", reach=reach)], []))
        assert any("reach_pct" in v.message for v in report)

    def test_negative_ratio_reported(self):
        net = WebsiteNetwork([node("A", age_ratios={"25-34": -0.1})], [])
        assert any("age_ratios" in v.message for v in validate_network(net))

    def test_ghost_edge_reported_with_subject(self):
        net = WebsiteNetwork([node("A")], [Edge("A", "Z", 0.5)])
        report = validate_network(net)
        assert any(v.kind == "edge" and v.subject == "A->Z" and "unknown dst" in v.message
                   for v in report)

    def test_self_loop_reported(self):
        net = WebsiteNetwork([node("A")], [Edge("A", "A", 0.5)])
        assert any("self-loop" in v.message for v in validate_network(net))

    @pytest.mark.parametrize("alpha", [0.0, -0.2, 1.0001])
    def test_alpha_out_of_range_reported(self, alpha):
        net = WebsiteNetwork([node("A"), node("B")], [Edge("A", "B", alpha)])
        assert any("alpha" in v.message for v in validate_network(net))

    def test_alpha_of_exactly_one_is_legal(self):
        net = WebsiteNetwork([node("A"), node("B")], [Edge("A", "B", 1.0)])
        assert validate_network(net) == []

    def test_violation_str_names_subject(self):
        violation = Violation("edge", "A->B", "self-loop")
        assert str(violation) == "edge A->B: self-loop"
