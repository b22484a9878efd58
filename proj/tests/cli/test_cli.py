"""End-to-end checks of the qsearch command line: exit codes, report schemas,
byte-identical reruns and transcript replay."""

import json
import os
import pathlib
import subprocess
import sys
import tempfile
import unittest

import jsonschema
from referencing import Registry, Resource

CLI = sys.argv.pop(1)
SCHEMAS = pathlib.Path(sys.argv.pop(1))


def load_registry():
    resources = []
    for path in SCHEMAS.glob("*.json"):
        doc = json.loads(path.read_text())
        resources.append((doc["$id"], Resource.from_contents(doc)))
    return Registry().with_resources(resources)


REGISTRY = load_registry()


def validate(doc, schema_name):
    schema = json.loads((SCHEMAS / schema_name).read_text())
    jsonschema.Draft202012Validator(schema, registry=REGISTRY).validate(doc)


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.update(env or {})
    return subprocess.run([CLI, *args], capture_output=True, text=True, env=full_env)


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.dir = pathlib.Path(self.tmp.name)

    def tearDown(self):
        self.tmp.cleanup()

    def report(self, schema, *args, code=0):
        r = run(*args)
        self.assertEqual(r.returncode, code, r.stderr + r.stdout)
        doc = json.loads(r.stdout)
        validate(doc, schema)
        return doc

    def test_plane_sweep_meets_bound(self):
        doc = self.report("adaptive.json", "adaptive", "--n", "3", "--q", "4", "--strategy", "plane",
                          "--oracle", "fixed:all")
        self.assertEqual(doc["max_queries"], 7)
        self.assertTrue(doc["passed"])

    def test_adversary_forces_count(self):
        doc = self.report("adaptive.json", "adaptive", "--n", "3", "--q", "3", "--strategy", "plane",
                          "--oracle", "adversary")
        self.assertGreaterEqual(doc["forced"], 5)

    def test_inductive_and_two_round_sweeps(self):
        for strategy in ("inductive", "two-round"):
            doc = self.report("adaptive.json", "adaptive", "--n", "4", "--q", "3", "--strategy", strategy)
            self.assertLessEqual(doc["max_queries"], 7)

    def test_single_point_and_text_format(self):
        r = run("adaptive", "--n", "3", "--q", "5", "--oracle", "fixed:(1,2,3)", "--format", "text")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertIn("passed: true", r.stdout)

    def test_usage_errors_exit_2(self):
        cases = [
            ("adaptive", "--n", "2", "--q", "6"),
            ("adaptive", "--n", "1", "--q", "3"),
            ("adaptive", "--n", "4", "--q", "3", "--strategy", "plane"),
            ("adaptive", "--n", "4", "--q", "3", "--strategy", "inductive", "--oracle", "adversary"),
            ("adaptive", "--n", "3", "--q", "3", "--strategy", "greedy"),
            ("adaptive", "--n", "3", "--q", "3", "--oracle", "fixed:(0,0,0)"),
            ("adaptive", "--n", "3", "--q", "3", "--oracle", "psychic"),
            ("construct", "--n", "4", "--q", "3", "--method", "random"),
            ("construct", "--n", "4", "--q", "3", "--method", "magic"),
            ("bounds", "--n", "3"),
            ("bounds", "--n", "3", "--q", "3", "--csv", "--json"),
            ("verify", str(self.dir / "missing.qs")),
            ("frobnicate",),
            (),
        ]
        for args in cases:
            with self.subTest(args=args):
                self.assertEqual(run(*args).returncode, 2)

    def test_point_cap_env(self):
        r = run("adaptive", "--n", "5", "--q", "9", env={"QSEARCH_POINT_CAP": "100"})
        self.assertEqual(r.returncode, 2)
        self.assertIn("TooLarge", r.stderr)

    def test_construct_explicit_and_verify(self):
        out = self.dir / "e.qs"
        doc = self.report("construct.json", "construct", "--n", "4", "--q", "3", "--method", "explicit",
                          "--out", str(out))
        self.assertEqual(doc["size"], 10)
        self.assertTrue(doc["separating"])
        self.assertEqual(out.read_text().splitlines()[0], "3 4 10")
        v = self.report("verify.json", "verify", str(out))
        self.assertTrue(v["separating"])
        self.assertEqual(v["size"], 10)

    def test_construct_q2_has_size_n(self):
        doc = self.report("construct.json", "construct", "--n", "3", "--q", "2", "--method", "explicit")
        self.assertEqual(doc["size"], 3)
        self.assertTrue(doc["query_set"].startswith("2 3 3\n"))

    def test_construct_random_is_reproducible(self):
        args = ("construct", "--n", "4", "--q", "3", "--method", "random", "--seed", "42")
        a = run(*args)
        b = run(*args)
        self.assertEqual(a.returncode, 0, a.stderr)
        self.assertEqual(a.stdout, b.stdout)
        doc = json.loads(a.stdout)
        validate(doc, "construct.json")
        self.assertLessEqual(doc["size"], 24)
        self.assertNotEqual(run("construct", "--n", "4", "--q", "3", "--method", "random",
                                "--seed", "43").stdout, a.stdout)

    def test_verify_fano_triangle(self):
        path = self.dir / "fano.qs"
        path.write_text("2 3 3\n"
                        "q=2 n=3 k=2 basis=[[0,1,0],[0,0,1]]\n"
                        "q=2 n=3 k=2 basis=[[1,0,0],[0,0,1]]\n"
                        "q=2 n=3 k=2 basis=[[1,0,0],[0,1,0]]\n")
        doc = self.report("verify.json", "verify", str(path))
        self.assertTrue(doc["separating"])
        self.assertNotIn("witness", doc)

    def test_verify_non_separating_exits_1(self):
        path = self.dir / "two.qs"
        path.write_text("2 3 2\n"
                        "q=2 n=3 k=2 basis=[[0,1,0],[0,0,1]]\n"
                        "q=2 n=3 k=2 basis=[[1,0,0],[0,0,1]]\n")
        doc = self.report("verify.json", "verify", str(path), code=1)
        self.assertFalse(doc["separating"])
        self.assertEqual(len(doc["witness"]), 2)

    def test_verify_malformed_exits_2(self):
        path = self.dir / "bad.qs"
        path.write_text("2 3 1\nq=2 n=3 k=2 basis=[[1,0,0],[1,0,0]]\n")
        self.assertEqual(run("verify", str(path)).returncode, 2)

    def test_bounds_json_and_csv(self):
        doc = self.report("bounds.json", "bounds", "--n", "3", "--q", "121", "--json")
        self.assertEqual(doc["plane"]["exact_m3q"]["exact"], "264")
        doc = self.report("bounds.json", "bounds", "--n", "5", "--q", "7")
        self.assertEqual(doc["nonadaptive"]["upper_random"]["exact"], "70")
        self.assertEqual(doc["nonadaptive"]["upper_explicit"]["exact"], "55")
        self.assertIsNone(doc["plane"])
        r = run("bounds", "--n", "3", "--q", "3", "--csv")
        self.assertEqual(r.returncode, 0)
        header, row = r.stdout.splitlines()
        self.assertEqual(len(header.split(",")), len(row.split(",")))
        self.assertTrue(header.startswith("n,q,points,adaptive_lower"))

    def test_oracle_claim_count(self):
        doc = self.report("oracle-claim-count.json", "oracle", "claim-count", "--n", "4", "--q", "2")
        self.assertEqual(doc["formula"], "7")
        self.assertEqual(doc["brute_min"], 7)
        doc = self.report("oracle-claim-count.json", "oracle", "claim-count", "--n", "4", "--q", "3")
        self.assertEqual(doc["formula"], "25")

    def test_oracle_brute_min(self):
        doc = self.report("oracle-brute-min.json", "oracle", "brute-min", "--n", "3", "--q", "3", "--max", "6")
        self.assertEqual(doc["minimum"], 6)
        self.assertEqual(len(doc["witness"]), 6)
        doc = self.report("oracle-brute-min.json", "oracle", "brute-min", "--n", "3", "--q", "3",
                          "--max", "5", code=1)
        self.assertFalse(doc["found"])

    def test_transcript_replay(self):
        for oracle in ("adversary", "fixed:(1,1,0)"):
            path = self.dir / "t.json"
            r = run("adaptive", "--n", "3", "--q", "4", "--strategy", "inductive", "--oracle", oracle,
                    "--transcript", str(path))
            self.assertEqual(r.returncode, 0, r.stderr)
            validate(json.loads(path.read_text()), "transcript.json")
            doc = self.report("replay.json", "replay", str(path))
            self.assertTrue(doc["reproduced"])

            tampered = json.loads(path.read_text())
            first = tampered["entries"][0]
            first["verdict"] = "YES" if first["verdict"] == "NO" else "NO"
            bad = self.dir / "bad.json"
            bad.write_text(json.dumps(tampered, indent=2) + "\n")
            doc = self.report("replay.json", "replay", str(bad), code=1)
            self.assertFalse(doc["reproduced"])

    def test_reports_are_byte_identical(self):
        for args in (("adaptive", "--n", "3", "--q", "5", "--oracle", "adversary"),
                     ("adaptive", "--n", "3", "--q", "3", "--strategy", "random-lines:7"),
                     ("bounds", "--n", "4", "--q", "9"),
                     ("oracle", "brute-min", "--n", "3", "--q", "2")):
            with self.subTest(args=args):
                self.assertEqual(run(*args).stdout, run(*args).stdout)


if __name__ == "__main__":
    unittest.main(verbosity=2)
