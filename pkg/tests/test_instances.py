from fractions import Fraction as F

import pytest

from polysched.core import InstanceError, gstar, local_density, schedule
from polysched.instances import (
    ParseError,
    gen_disjoint_stars,
    gen_kn_adversarial,
    gen_random_dps,
    gen_random_ops,
    instance_from_json,
    instance_to_json,
    read_instance,
    read_schedule,
    schedule_from_json,
    schedule_to_json,
    write_instance,
    write_schedule,
)


class TestDisjointStars:
    def test_single(self):
        inst = gen_disjoint_stars(1)
        assert len(inst.edges) == 1 and inst.growth == (F(1),)

    def test_counts_and_gstar(self):
        for d in range(1, 7):
            inst = gen_disjoint_stars(d)
            assert len(inst.edges) == d * (d + 1) // 2
            assert gstar(inst) == 1

    def test_fourth_star_growths(self):
        inst = gen_disjoint_stars(4)
        assert sorted(set(inst.growth)) == [F(1, 4), F(1, 3), F(1, 2), F(1)]

    def test_d_zero_rejected(self):
        with pytest.raises(InstanceError):
            gen_disjoint_stars(0)


class TestKnAdversarial:
    def test_triangle(self):
        inst, tie = gen_kn_adversarial(3)
        assert len(inst.edges) == 3
        assert set(inst.growth) == {F(1, 2)}
        # one edge of the induced pair, then the two at the excluded vertex
        assert len(tie) == 3

    def test_factorization_blocks(self):
        for n in (5, 7, 11):
            inst, tie = gen_kn_adversarial(n)
            assert sorted(tie) == list(range(len(inst.edges)))
            assert gstar(inst) == 1
            block = (n - 1) // 2
            for r in range(n - 2):
                matching = [inst.edges[e] for e in tie[r * block : (r + 1) * block]]
                covered = {p for e in matching for p in e.endpoints()}
                assert len(covered) == n - 1  # perfect on the induced subgraph
                assert all(n - 1 not in e.endpoints() for e in matching)
            rest = [inst.edges[e] for e in tie[(n - 2) * block :]]
            assert all(n - 1 in e.endpoints() for e in rest)
            assert len(rest) == n - 1

    def test_even_rejected(self):
        with pytest.raises(InstanceError):
            gen_kn_adversarial(4)


class TestRandom:
    def test_ops_deterministic(self):
        a = gen_random_ops(42, 8, 0.4)
        b = gen_random_ops(42, 8, 0.4)
        assert a == b

    def test_ops_normalized(self):
        for seed in range(20):
            assert gstar(gen_random_ops(seed, 10, 0.4)) == 1

    def test_dps_density_cap(self):
        for seed in range(20):
            inst = gen_random_dps(seed, 8, 0.3, (8, 16, 32), density_cap=F(1, 2))
            _, peak = local_density(inst)
            assert peak <= F(1, 2)

    def test_impossible_cap_errors(self):
        with pytest.raises(InstanceError):
            gen_random_dps(1, 10, 1.0, (2,), density_cap=F(1, 8), max_retries=5)


class TestIo:
    def test_instance_roundtrip(self, tmp_path):
        for inst in (gen_disjoint_stars(3), gen_random_dps(7, 6, 0.5)):
            path = str(tmp_path / "inst.json")
            write_instance(path, inst)
            assert read_instance(path) == inst

    def test_rational_exact(self, tmp_path):
        inst = instance_from_json(
            {"kind": "ops", "people": [None, None], "edges": [{"u": 0, "v": 1, "g": "1/3"}]}
        )
        assert inst.growth == (F(1, 3),)
        path = str(tmp_path / "r.json")
        write_instance(path, inst)
        assert read_instance(path).growth == (F(1, 3),)

    def test_unknown_field_rejected(self):
        with pytest.raises(ParseError):
            instance_from_json(
                {"kind": "ops", "people": [None, None], "edges": [], "bogus": 1}
            )
        with pytest.raises(ParseError):
            instance_from_json(
                {"kind": "dps", "people": [None, None], "edges": [{"u": 0, "v": 1, "f": 2, "x": 3}]}
            )

    def test_schedule_roundtrip(self, tmp_path):
        s = schedule([[0, 2], [], [1]])
        path = str(tmp_path / "s.json")
        write_schedule(path, s)
        assert read_schedule(path) == s

    def test_schedule_schema(self):
        with pytest.raises(ParseError):
            schedule_from_json({"period": 2, "days": [[0]]})
        with pytest.raises(ParseError):
            schedule_from_json({"period": 1, "days": [[0]], "extra": True})

    def test_bad_json_location(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        with pytest.raises(ParseError) as err:
            read_instance(str(path))
        assert "broken.json:1" in str(err.value)

    def test_labels_roundtrip(self):
        doc = {"kind": "dps", "people": ["ann", "bo"], "edges": [{"u": 0, "v": 1, "f": 4}]}
        inst = instance_from_json(doc)
        assert instance_to_json(inst) == doc
        assert schedule_to_json(schedule([[0]])) == {"period": 1, "days": [[0]]}
