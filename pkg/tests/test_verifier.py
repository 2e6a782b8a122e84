import itertools

import pytest

from fprod.foundations import InputError
from fprod.verifier import (
    InstanceGrid,
    OUT_OF_SCOPE,
    claim_catalog,
    enumerate_filters,
    preset_factor,
    proposition_catalog,
    replay_witness,
    search_counterexample,
    verify_proposition,
)


def family_is_filter(members, n):
    """Oracle: the family is the full powerset, or a nonempty empty-set-free
    family closed under meets and supersets."""
    full_powerset = len(members) == 1 << n
    if full_powerset:
        return True
    if not members or 0 in members:
        return False
    member_set = set(members)
    for a, b in itertools.product(members, repeat=2):
        if a & b not in member_set:
            return False
    for a in members:
        for sup in range(1 << n):
            if a & ~sup == 0 and sup not in member_set:
                return False
    return True


class TestEnumerateFilters:
    def test_counts(self):
        assert len(enumerate_filters(1, include_trivial=True)) == 2
        assert len(enumerate_filters(2, include_trivial=True)) == 4
        assert len(enumerate_filters(3, include_trivial=True)) == 8
        assert len(enumerate_filters(3, include_trivial=False)) == 7

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_matches_family_scan_oracle(self, n):
        oracle_count = 0
        for fam_bits in range(1, 1 << (1 << n)):
            members = [m for m in range(1 << n) if fam_bits >> m & 1]
            if family_is_filter(members, n):
                oracle_count += 1
        assert oracle_count == len(enumerate_filters(n, include_trivial=True))

    def test_canonical_order(self):
        fils = enumerate_filters(2, include_trivial=True)
        assert [f.core.bits for f in fils[:-1]] == [1, 2, 3]
        assert fils[-1].trivial

    def test_cap(self):
        with pytest.raises(InputError):
            enumerate_filters(5)


class TestVerifyDefaults:
    @pytest.mark.parametrize(
        "prop_id,expected_checked",
        [
            ("P2.1", 270),   # (2^4 - 1) + (2^8 - 1) families
            ("P2.3", 80),    # 16 + 64 ordered filter pairs
            ("P2.5", 30),    # 2 + 4 + 8 + 16 filters
            ("P2.7", 258),   # 3*2 + 9*4 + 27*8 factor/filter combos
            ("E2.9", 2),
            ("P2.10", 34),   # 1 + 4 + 29 topologies
            ("P3.1", 11),    # 1 + 3 + 7 proper filters
            ("P4.1", 258),
            ("P4.2", 258),
            ("P4.3", 9),
            ("P5.2", 324),   # 81 base pairs * 4 filters
            ("P5.ind", 324),
        ],
    )
    def test_passes_with_expected_instance_count(self, prop_id, expected_checked):
        report = verify_proposition(prop_id)
        assert report.passed, report.witness
        assert report.complete
        assert report.checked == expected_checked

    def test_p28_passes(self):
        report = verify_proposition("P2.8")
        assert report.passed and report.complete
        assert report.checked == 34 * 34  # all topology pairs on <= 3 points

    def test_p45_passes(self):
        report = verify_proposition("P4.5")
        assert report.passed and report.complete
        assert report.checked == 34 * 34 * 4

    def test_e29_exhibits_the_inseparable_pair(self):
        report = verify_proposition("E2.9")
        assert report.passed
        assert report.witness is not None
        assert report.witness["detail"]["inseparable_pair"] == ["(0,0,0)", "(1,0,0)"]

    def test_determinism(self):
        a = verify_proposition("P2.3").to_dict()
        b = verify_proposition("P2.3").to_dict()
        assert a == b


class TestHypothesisProbe:
    def test_p28_fails_under_a_non_saturated_filter(self):
        grid = InstanceGrid(
            index_sizes=(2,),
            factor_source="all-topologies",
            factor_universe_max=2,
            filter_source="named",
            named_filters=("1",),
        )
        report = verify_proposition("P2.8", grid)
        assert not report.passed
        assert report.witness is not None
        ok, detail = replay_witness("P2.8", report.witness)
        assert not ok
        assert detail == report.witness["detail"]

    def test_p31_disjointness_needs_a_proper_filter(self):
        grid = InstanceGrid(
            index_sizes=(2,),
            factor_source="fixed",
            factor_preset="discrete2",
            filter_source="trivial",
        )
        report = verify_proposition("P3.1", grid)
        assert not report.passed
        assert "overlapping_equalizers" in report.witness["detail"]


class TestBudget:
    def test_budget_truncates_and_flags(self):
        grid = InstanceGrid(
            index_sizes=(2,),
            factor_source="fixed",
            factor_preset="sierpinski",
            filter_source="all",
            max_instances=3,
        )
        report = verify_proposition("P2.3", grid)
        assert report.checked == 3
        assert not report.complete
        assert report.passed  # no counterexample among the checked prefix

    def test_budget_larger_than_grid_is_complete(self):
        grid = InstanceGrid(
            index_sizes=(2,),
            factor_source="fixed",
            factor_preset="sierpinski",
            filter_source="all",
            max_instances=1000,
        )
        report = verify_proposition("P2.3", grid)
        assert report.complete and report.checked == 16


class TestCatalog:
    def test_out_of_scope_ids_refuse_to_run(self):
        for pid in OUT_OF_SCOPE:
            with pytest.raises(InputError) as err:
                verify_proposition(pid)
            assert "out of scope" in str(err.value)

    def test_unknown_id(self):
        with pytest.raises(InputError):
            verify_proposition("P9.9")

    def test_catalog_is_total(self):
        catalog = proposition_catalog()
        assert set(catalog) == {
            "P2.1", "P2.3", "P2.5", "P2.7", "P2.8", "E2.9", "P2.10", "P3.1",
            "P4.1", "P4.2", "P4.3", "P4.5", "P5.2", "P5.ind",
            "C2.11", "P2.12", "C2.13", "L2.14", "P2.15",
        }
        assert catalog["P2.12"]["status"] == "out-of-scope"
        assert catalog["P2.3"]["status"] == "verifiable"


class TestSearch:
    def test_hausdorff_claim_refuted_at_first_filter(self):
        report = search_counterexample("hausdorff-for-all-filters")
        assert not report.passed
        assert report.checked == 1  # the first enumerated filter already fails
        witness = report.witness
        assert witness["instance"]["index_filter"] == {
            "generators": [["1"]],
            "trivial": False,
        }
        assert witness["detail"]["inseparable_pair"] == ["(0,0)", "(1,0)"]
        ok, _ = replay_witness("hausdorff-for-all-filters", witness)
        assert not ok

    def test_projection_identity_claim_refuted(self):
        report = search_counterexample("projection-filter-identity-for-all-filters")
        assert not report.passed
        detail = report.witness["detail"]
        assert detail["projected_filter"] == {"generators": [["0", "1"]], "trivial": False}
        assert detail["factor_filter"] == {"generators": [["0"]], "trivial": False}
        ok, _ = replay_witness("projection-filter-identity-for-all-filters", report.witness)
        assert not ok

    def test_negative_control_finds_nothing(self):
        report = search_counterexample("equalizer-dense-for-all-proper-filters")
        assert report.passed
        assert report.witness is None
        assert report.checked == 3 + 7  # proper filters on two and three indices

    def test_unknown_claim(self):
        with pytest.raises(InputError):
            search_counterexample("no-such-claim")

    def test_claim_catalog(self):
        assert set(claim_catalog()) == {
            "hausdorff-for-all-filters",
            "projection-filter-identity-for-all-filters",
            "equalizer-dense-for-all-proper-filters",
        }


class TestWitnessRoundTrip:
    def test_witness_instances_parse_as_instance_files(self):
        from fprod import serialize

        grid = InstanceGrid(
            index_sizes=(2,),
            factor_source="all-topologies",
            factor_universe_max=2,
            filter_source="named",
            named_filters=("1",),
        )
        report = verify_proposition("P2.8", grid)
        spec = serialize.parse_instance(report.witness["instance"])
        assert serialize.spec_to_dict(spec) == report.witness["instance"]

    def test_preset_factor_unknown(self):
        with pytest.raises(InputError):
            preset_factor("nope")
