import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr
from unittest import mock

from asymray.consistency import InternalConsistencyError
from asymray.document import CertificateDocument
from asymray.frontend.asymray_tool import (EXIT_CERTIFICATE, EXIT_INCONSISTENT,
                                           EXIT_REFUTATION, EXIT_USAGE, get_argparser, run)

TWO_POINT_TABLE = """\
support: 2, radii: 2
0 0: 0
1 0: 1
0 1: 0 1
1 1: 1
"""


class FrontendTest(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.tmp = self._tmp.name

    def tearDown(self):
        self._tmp.cleanup()

    def write(self, name, text):
        path = os.path.join(self.tmp, name)
        with open(path, "w") as f:
            f.write(text)
        return path

    def run_tool(self, *argv):
        """Run with --out into the temporary directory; returns (exit code, output)"""
        out = os.path.join(self.tmp, "out")
        if os.path.exists(out):
            os.remove(out)
        args = get_argparser().parse_args(list(argv) + ["--out", out])
        self.stderr = io.StringIO()
        with redirect_stderr(self.stderr):
            code = run(args)
        if not os.path.exists(out):
            return code, None
        with open(out) as f:
            return code, f.read()

    def run_json(self, *argv):
        code, text = self.run_tool(*argv, "--format", "json")
        return code, json.loads(text)


class AnalyzeTest(FrontendTest):
    def test_comb(self):
        code, doc = self.run_json("analyze", "-g", "comb:inf", "--depth", "40")
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(doc["verdict"], "asymptotic-ray")
        c = doc["constants"]
        self.assertEqual((c["r"], c["alpha"], c["forward_m"], c["inverse_m"]), (1, 1, 3, 3))
        self.assertEqual((c["t"], c["s"]), (2, 3))
        self.assertEqual(doc["scope"]["kind"], "exact")
        self.assertEqual(doc["input"]["gen"], "comb:inf")
        self.assertEqual(doc["schema_version"], "1")

    def test_ladder(self):
        code, doc = self.run_json("analyze", "-g", "ladder:inf", "--depth", "30")
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(doc["constants"]["forward_m"], 2)
        self.assertEqual(doc["scope"]["margin"], 2)
        self.assertNotIn("t", doc["constants"])

    def test_binary_tree_refuted(self):
        code, doc = self.run_json("analyze", "-g", "kary:2:inf", "--depth", "10")
        self.assertEqual(code, EXIT_REFUTATION)
        self.assertEqual(doc["verdict"], "refuted")
        self.assertEqual(doc["witnesses"]["evidence"], "sphere_radius_diverges")
        self.assertEqual(doc["witnesses"]["tree_verdict"], "refuted")

    def test_short_leg_caterpillar_below_the_leg_scale(self):
        for argv in (("caterpillar:const:5", "7"), ("caterpillar:const:1", "1"),
                     ("comb:inf", "1"), ("kary:2:inf", "1")):
            with self.subTest(argv=argv):
                code, doc = self.run_json("analyze", "-g", argv[0], "--depth", argv[1])
                self.assertIn(code, (EXIT_CERTIFICATE, EXIT_REFUTATION))
                self.assertEqual(doc["witnesses"]["tree_verdict"], doc["verdict"])

    def test_finite_graph_is_bounded(self):
        code, doc = self.run_json("analyze", "-g", "path:5")
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(doc["verdict"], "bounded")
        self.assertEqual(doc["constants"]["diameter"], 5)
        self.assertEqual(doc["constants"]["vertices"], 6)

    def test_bounded_classification(self):
        code, doc = self.run_json("analyze", "-g", "complete:5", "--compare-gen", "cycle:5")
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(doc["verdict"], "asymorphic")
        code, doc = self.run_json("analyze", "-g", "path:4", "--compare-gen", "path:5")
        self.assertEqual(code, EXIT_REFUTATION)
        self.assertEqual(doc["constants"]["sizes"], [5, 6])

    def test_edge_list_input(self):
        path = self.write("square.txt", "# a square\n0 1\n1 2\n2 3\n3 0\n")
        code, doc = self.run_json("analyze", "-i", path)
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(doc["constants"]["diameter"], 2)

    def test_text_format(self):
        code, text = self.run_tool("analyze", "-g", "ray", "--depth", "20")
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertIn("verdict: asymptotic-ray\n", text)
        self.assertIn("constants.r: 0\n", text)

    def test_deterministic(self):
        _, first = self.run_tool("analyze", "-g", "caterpillar:const:2", "--depth", "50",
                                 "--format", "json")
        _, second = self.run_tool("analyze", "-g", "caterpillar:const:2", "--depth", "50",
                                  "--format", "json")
        self.assertEqual(first, second)


class UsageTest(FrontendTest):
    def test_missing_input(self):
        code, text = self.run_tool("analyze")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIsNone(text)

    def test_both_inputs(self):
        path = self.write("e.txt", "0 1\n")
        self.assertEqual(self.run_tool("analyze", "-g", "ray", "-i", path)[0], EXIT_USAGE)

    def test_bad_generator(self):
        self.assertEqual(self.run_tool("analyze", "-g", "tree:5")[0], EXIT_USAGE)
        self.assertIn("tree", self.stderr.getvalue())

    def test_bad_edge_list(self):
        path = self.write("bad.txt", "0 1\n1 x\n")
        self.assertEqual(self.run_tool("analyze", "-i", path)[0], EXIT_USAGE)
        self.assertIn("line 2", self.stderr.getvalue())

    def test_missing_file(self):
        missing = os.path.join(self.tmp, "nope.txt")
        self.assertEqual(self.run_tool("analyze", "-i", missing)[0], EXIT_USAGE)

    def test_margin_beyond_depth(self):
        code, _ = self.run_tool("analyze", "-g", "ray", "--depth", "10", "--margin", "10")
        self.assertEqual(code, EXIT_USAGE)

    def test_finite_only_commands(self):
        self.assertEqual(self.run_tool("axioms", "-g", "comb:inf")[0], EXIT_USAGE)

    def test_not_a_tree(self):
        self.assertEqual(self.run_tool("decompose", "-g", "ladder:inf")[0], EXIT_USAGE)

    def test_internal_consistency(self):
        with mock.patch("asymray.frontend.asymray_tool.certify_ray",
                        side_effect=InternalConsistencyError("verdicts disagree")):
            code, _ = self.run_tool("analyze", "-g", "comb:inf", "--depth", "10")
        self.assertEqual(code, EXIT_INCONSISTENT)
        self.assertIn("verdicts disagree", self.stderr.getvalue())


class ConfigTest(FrontendTest):
    def test_defaults_from_file(self):
        config = self.write("defaults.pyon", '{"depth": 20, "format": "json"}')
        code, text = self.run_tool("analyze", "-g", "ray", "--config", config)
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(json.loads(text)["input"]["depth"], 20)

    def test_flags_override_file(self):
        config = self.write("defaults.pyon", '{"depth": 20, "format": "json"}')
        _, text = self.run_tool("analyze", "-g", "ray", "--config", config, "--depth", "30")
        self.assertEqual(json.loads(text)["input"]["depth"], 30)

    def test_unknown_key(self):
        config = self.write("defaults.pyon", '{"depht": 20}')
        self.assertEqual(self.run_tool("analyze", "-g", "ray", "--config", config)[0],
                         EXIT_USAGE)
        self.assertIn("depht", self.stderr.getvalue())

    def test_unparsable(self):
        config = self.write("defaults.pyon", "{depth: ")
        self.assertEqual(self.run_tool("analyze", "-g", "ray", "--config", config)[0],
                         EXIT_USAGE)


class CheckMapTest(FrontendTest):
    def test_identity_onto_ray(self):
        path = self.write("id.map", "".join("{0} {0}\n".format(v) for v in range(10)))
        code, doc = self.run_json("check-map", "-g", "path:9", "--map", path)
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(doc["verdict"], "asymorphic")
        self.assertEqual(doc["constants"]["edge_constant"], 1)
        self.assertEqual(doc["constants"]["global_constant"], 1)
        self.assertEqual((doc["constants"]["forward_m"], doc["constants"]["inverse_m"]), (1, 1))

    def test_doubling(self):
        path = self.write("double.map", "".join("{} {}\n".format(v, 2 * v) for v in range(11)))
        code, doc = self.run_json("check-map", "-g", "path:10", "--target-gen", "path:20",
                                  "--map", path)
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(doc["verdict"], "lipschitz")
        self.assertEqual(doc["constants"]["edge_constant"], 2)
        self.assertEqual(doc["witnesses"]["edge"], [0, 1])
        self.assertEqual(doc["witnesses"]["ball_profile"][1], [1, 2])

    def test_missing_vertex(self):
        path = self.write("partial.map", "0 0\n1 1\n3 3\n")
        code, _ = self.run_tool("check-map", "-g", "path:3", "--map", path)
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("2", self.stderr.getvalue())

    def test_comb_numbering_round_trip(self):
        code, lines = self.run_tool("numbering", "-g", "comb:inf", "--depth", "30")
        self.assertEqual(code, EXIT_CERTIFICATE)
        path = self.write("comb.map", lines)
        code, doc = self.run_json("check-map", "-g", "comb:inf", "--depth", "30", "--margin",
                                  "0", "--map", path)
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(doc["constants"]["edge_constant"], 3)


class AxiomsTest(FrontendTest):
    def test_cycle(self):
        code, doc = self.run_json("axioms", "-g", "cycle:6")
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(doc["verdict"], "ballean")
        self.assertTrue(doc["constants"]["upper_multiplicative"])

    def test_ball_table(self):
        path = self.write("two_point.txt", TWO_POINT_TABLE)
        code, doc = self.run_json("axioms", "--ball-table", path)
        self.assertEqual(code, EXIT_REFUTATION)
        self.assertEqual(doc["verdict"], "not-ballean")
        self.assertFalse(doc["constants"]["upper_symmetric"])
        self.assertEqual(doc["witnesses"]["counterexamples"]["upper_symmetric"]["x"], 0)

    def test_ball_table_with_graph(self):
        path = self.write("two_point.txt", TWO_POINT_TABLE)
        self.assertEqual(self.run_tool("axioms", "--ball-table", path, "-g", "path:3")[0],
                         EXIT_USAGE)


class DocumentFormatTest(FrontendTest):
    def commands(self):
        path = self.write("id.map", "".join("{0} {0}\n".format(v) for v in range(10)))
        return (("analyze", "-g", "comb:inf", "--depth", "40"),
                ("analyze", "-g", "kary:2:inf", "--depth", "8"),
                ("analyze", "-g", "cycle:7", "--compare-gen", "path:6"),
                ("check-map", "-g", "path:9", "--map", path),
                ("axioms", "-g", "cycle:6"),
                ("decompose", "-g", "caterpillar:const:2", "--depth", "20"))

    def test_json_reloads_byte_identical(self):
        for argv in self.commands():
            with self.subTest(argv=argv):
                _, text = self.run_tool(*argv, "--format", "json")
                self.assertEqual(CertificateDocument.from_json(text).to_json(), text)

    def test_text_and_json_carry_the_same_values(self):
        for argv in self.commands():
            with self.subTest(argv=argv):
                _, text = self.run_tool(*argv)
                _, json_text = self.run_tool(*argv, "--format", "json")
                doc = CertificateDocument.from_json(json_text)
                self.assertEqual(doc.to_text(), text)
                constants = [line for line in text.splitlines()
                             if line.startswith("constants.")]
                self.assertEqual(len(constants), len(doc.fields["constants"]))
                for line in constants:
                    key, value = line[len("constants."):].split(": ", 1)
                    expected = doc.fields["constants"][key]
                    if isinstance(expected, list):
                        self.assertEqual(value, " ".join(str(v) for v in expected))
                    elif isinstance(expected, bool):
                        self.assertEqual(value, "true" if expected else "false")
                    else:
                        self.assertEqual(value, "-" if expected is None else str(expected))


class DecomposeNumberingTest(FrontendTest):
    def test_decompose_comb(self):
        code, doc = self.run_json("decompose", "-g", "comb:inf", "--depth", "20")
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(doc["constants"]["t"], 2)
        self.assertEqual(doc["witnesses"]["components"][1], [2, 9])

    def test_decompose_linear_caterpillar(self):
        code, doc = self.run_json("decompose", "-g", "caterpillar:linear", "--depth", "50")
        self.assertEqual(code, EXIT_REFUTATION)
        self.assertEqual(doc["constants"]["t"], 25)

    def test_numbering_lines(self):
        code, text = self.run_tool("numbering", "-g", "comb:inf", "--depth", "3")
        self.assertEqual(code, EXIT_CERTIFICATE)
        self.assertEqual(text.splitlines(), ["0 0", "2 1", "4 3", "5 2", "6 5", "9 4", "15 6"])


if __name__ == "__main__":
    unittest.main()
