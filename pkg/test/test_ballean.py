import random
import unittest

from asymray.ballean.bounded import (BoundedFamilyCertificate, UnboundedFamilyReport,
                                     bounded_at_scale, family_radius)
from asymray.ballean.structure import (PROPERTIES, BallStructure, BallStructureError,
                                       check_axioms)
from asymray.graph.generators import leg_vertex, parse_generator, spine_vertex
from asymray.graph.ray_prefix import RayPrefix
from asymray.graph.truncation import ContractError, MarginError, explore

from graph_fixtures import (all_distances, brute_force_radius, explore_graph,
                            random_connected_graph)

TWO_POINT_TABLE = [
    "# a = 0, b = 1",
    "support: 2, radii: 2",
    "0 0: 0",
    "1 0: 1",
    "0 1: 0 1",
    "1 1: 1",
]


def two_point():
    """B(a, 0) = {a}, B(b, 0) = {b}, B(a, 1) = {a, b}, B(b, 1) = {b}"""
    a, b = "a", "b"
    balls = {(a, 0): {a}, (b, 0): {b}, (a, 1): {a, b}, (b, 1): {b}}
    return BallStructure([a, b], [0, 1], balls)


def explore_gen(text, depth):
    spec = parse_generator(text)
    return explore(spec.to_oracle(), spec.origin, depth)


class BallStructureTest(unittest.TestCase):
    def test_star_ball(self):
        bs = two_point()
        self.assertEqual(bs.ball("a", 1), {"a", "b"})
        self.assertEqual(bs.star_ball("a", 1), {"a"})
        self.assertEqual(bs.star_ball("b", 1), {"a", "b"})

    def test_ball_of_set(self):
        bs = two_point()
        self.assertEqual(bs.ball_of_set(["b"], 1), {"b"})
        self.assertEqual(bs.ball_of_set(["a", "b"], 0), {"a", "b"})
        self.assertEqual(bs.ball_of_set([], 0), set())

    def test_metric_star_ball_is_ball(self):
        bs = BallStructure.from_truncation(explore_gen("cycle:6", 10))
        for x in bs.support:
            for a in bs.radii:
                self.assertEqual(bs.ball(x, a), bs.star_ball(x, a))
        self.assertEqual(bs.radii, (0, 1, 2, 3))
        self.assertEqual(bs.ball(0, 1), {5, 0, 1})

    def test_unknown_element(self):
        bs = two_point()
        with self.assertRaises(BallStructureError):
            bs.ball("c", 0)
        with self.assertRaises(BallStructureError):
            bs.ball("a", 2)

    def test_centre_outside_own_ball(self):
        with self.assertRaises(BallStructureError):
            BallStructure([0, 1], [0], {(0, 0): {1}, (1, 0): {1}})

    def test_incomplete_truncation(self):
        with self.assertRaises(ContractError):
            BallStructure.from_truncation(explore_gen("ray", 5))

    def test_member_radius(self):
        bs = two_point()
        self.assertEqual(bs.member_radius({"a", "b"}), (1, "a"))
        self.assertEqual(bs.member_radius({"b"}), (0, "b"))
        small = BallStructure([0, 1], [0], {(0, 0): {0}, (1, 0): {1}})
        self.assertEqual(small.member_radius({0, 1}), (None, None))


class BallTableTest(unittest.TestCase):
    def test_parse(self):
        bs = BallStructure.from_table_lines(TWO_POINT_TABLE)
        self.assertEqual(bs.support, (0, 1))
        self.assertEqual(bs.radii, (0, 1))
        self.assertEqual(bs.ball(0, 1), {0, 1})
        self.assertEqual(bs.star_ball(0, 1), {0})

    def test_radii_are_sorted(self):
        lines = ["support: 1, radii: 2", "0 5: 0", "0 2: 0"]
        self.assertEqual(BallStructure.from_table_lines(lines).radii, (2, 5))

    def test_errors(self):
        cases = [
            TWO_POINT_TABLE[2:],
            ["support: 2, radii: 3"] + TWO_POINT_TABLE[2:],
            TWO_POINT_TABLE[:-1],
            TWO_POINT_TABLE + ["1 1: 1"],
            TWO_POINT_TABLE[:-1] + ["1 1: 2"],
            TWO_POINT_TABLE[:-1] + ["1 1 1"],
            TWO_POINT_TABLE[:-1] + ["1 x: 1"],
            TWO_POINT_TABLE[:-1] + ["1 1: 0"],
            ["support: 0, radii: 1"],
        ]
        for lines in cases:
            with self.assertRaises(BallStructureError, msg=lines):
                BallStructure.from_table_lines(lines)


class AxiomsTest(unittest.TestCase):
    def test_two_point(self):
        report = check_axioms(two_point())
        self.assertFalse(report.upper_symmetric)
        self.assertFalse(report.is_ballean)
        alpha, _, x = report.counterexamples["upper_symmetric"]
        self.assertEqual((alpha, x), (1, "a"))
        self.assertTrue(report.upper_multiplicative)

    def test_two_point_from_table(self):
        report = check_axioms(BallStructure.from_table_lines(TWO_POINT_TABLE))
        self.assertFalse(report.upper_symmetric)
        self.assertEqual(report.counterexamples["upper_symmetric"][2], 0)

    def test_counterexample_fails_every_candidate(self):
        # B(x, 0) for alpha = 0 escapes B*(x, 0) only at 2, and escapes
        # B*(x, 1) at every point; the reported x must fail both
        table = [
            "support: 3, radii: 2",
            "0 0: 0 1",
            "1 0: 1 0",
            "2 0: 2 0",
            "0 1: 0",
            "1 1: 1",
            "2 1: 2",
        ]
        bs = BallStructure.from_table_lines(table)
        report = check_axioms(bs)
        self.assertFalse(report.upper_symmetric)
        alpha, _, x = report.counterexamples["upper_symmetric"]
        self.assertEqual((alpha, x), (0, 2))
        for candidate in bs.radii:
            self.assertFalse(bs.ball(x, alpha) <= bs.star_ball(x, candidate))

    def test_single_point(self):
        bs = BallStructure([0], [0], {(0, 0): {0}})
        report = check_axioms(bs)
        for name in PROPERTIES:
            self.assertTrue(getattr(report, name), name)
            self.assertEqual(len(report.witnesses[name]), 1)
        self.assertTrue(report.is_ballean)
        self.assertEqual(report.counterexamples, {})

    def test_not_multiplicative(self):
        # every ball of radius 1 has two points, but no radius covers B(B(0, 1), 1)
        support = [0, 1, 2]
        balls = {(x, 0): {x} for x in support}
        balls.update({(x, 1): {x, (x + 1) % 3} for x in support})
        report = check_axioms(BallStructure(support, [0, 1], balls))
        self.assertFalse(report.upper_multiplicative)
        self.assertEqual(report.counterexamples["upper_multiplicative"][:2], (1, 1))

    def test_random_graph_balleans(self):
        rng = random.Random(4)
        for _ in range(100):
            g = random_connected_graph(rng, rng.randint(1, 15), rng.randint(0, 8))
            t = explore_graph(g)
            bs = BallStructure.from_truncation(t)
            diam = bs.radii[-1]
            report = check_axioms(bs)
            for name in PROPERTIES:
                self.assertTrue(getattr(report, name), name)
            self.assertTrue(report.is_ballean)
            up_mult = report.witnesses["upper_multiplicative"]
            up_sym = report.witnesses["upper_symmetric"]
            for a in bs.radii:
                for b in bs.radii:
                    self.assertEqual(up_mult[(a, b)], min(a + b, diam))
                    self.assertEqual(up_sym[(a, b)], (a, b))


class BoundedAtScaleTest(unittest.TestCase):
    def test_rule(self):
        self.assertTrue(bounded_at_scale([]))
        self.assertTrue(bounded_at_scale([1, 1, 1, 1]))
        self.assertTrue(bounded_at_scale([5, 0, 0, 0]))
        self.assertFalse(bounded_at_scale([0, 1, 2, 3]))
        self.assertFalse(bounded_at_scale([0, 0, 0, 5]))
        self.assertTrue(bounded_at_scale([0, 2, 1, 2, 1]))


class FamilyRadiusTest(unittest.TestCase):
    def test_comb_tooth_pairs(self):
        t = explore_gen("comb:inf", 30)
        family = [{leg_vertex(n - 1, 1), spine_vertex(n)} for n in range(1, 30)]
        cert = family_radius(t, family)
        self.assertIsInstance(cert, BoundedFamilyCertificate)
        self.assertEqual(cert.alpha, 1)
        self.assertEqual(cert.centers, [spine_vertex(n - 1) for n in range(1, 30)])

    def test_ray_points(self):
        cert = family_radius(explore_gen("ray", 20), [{n} for n in range(21)])
        self.assertEqual(cert.alpha, 0)
        self.assertEqual(cert.centers, list(range(21)))

    def test_binary_tree_spheres(self):
        t = explore_gen("kary:2:inf", 8)
        report = family_radius(t, [t.sphere(n) for n in range(9)])
        self.assertIsInstance(report, UnboundedFamilyReport)
        self.assertEqual(report.radii, list(range(9)))
        self.assertEqual(report.centers, [0] * 9)

    def test_finite_spaces_are_bounded(self):
        t = explore_gen("path:8", 10)
        cert = family_radius(t, [{0, n} for n in range(9)])
        self.assertEqual(cert.radii, [(n + 1) // 2 for n in range(9)])
        self.assertEqual(cert.alpha, 4)

    def test_ray_prefix_is_judged_at_scale(self):
        report = family_radius(RayPrefix(20), [{0, n} for n in range(20)])
        self.assertIsInstance(report, UnboundedFamilyReport)

    def test_ball_structure(self):
        cert = family_radius(two_point(), [{"a", "b"}, {"b"}])
        self.assertEqual(cert, BoundedFamilyCertificate(1, ["a", "b"], [1, 0]))
        small = BallStructure([0, 1], [0], {(0, 0): {0}, (1, 0): {1}})
        self.assertIsInstance(family_radius(small, [{0, 1}]), UnboundedFamilyReport)

    def test_uncertified_member(self):
        t = explore_gen("ladder:inf", 6)
        with self.assertRaises(MarginError):
            family_radius(t, [t.sphere(n) for n in range(7)])

    def test_brute_force_agreement(self):
        rng = random.Random(5)
        for _ in range(40):
            g = random_connected_graph(rng, rng.randint(1, 15), rng.randint(0, 6))
            t = explore_graph(g)
            nodes = sorted(g.nodes())
            family = [set(rng.sample(nodes, rng.randint(1, len(nodes)))) for _ in range(4)]
            cert = family_radius(t, family)
            for member, radius, center in zip(family, cert.radii, cert.centers):
                self.assertEqual((radius, center), brute_force_radius(g, member))
                d = all_distances(g)[center]
                self.assertTrue(all(d[y] <= cert.alpha for y in member))


if __name__ == "__main__":
    unittest.main()
