import unittest
import json
from fractions import Fraction
from unittest.mock import patch

# Добавляем путь к родительской директории, чтобы можно было импортировать scripts
import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from scripts import suites
from scripts.data_structures import STATUS_FAIL, STATUS_INCONCLUSIVE, STATUS_PASS, Check, Report
from scripts.deform import GradedModule, adjoint_weight, cohomology_table
from scripts.errors import InputError, NotSplitError
from scripts.models import build
from scripts.suites import SuiteOptions, check_from_report, checks_from_items, run_suite, simple_check


class TestSuiteOptions(unittest.TestCase):

    def test_defaults_are_valid(self):
        self.assertEqual(str(SuiteOptions().validate()), "1")

    def test_invalid_options(self):
        for options in (SuiteOptions(k=1), SuiteOptions(samples=0), SuiteOptions(depth=0), SuiteOptions(t="x")):
            with self.subTest(options=options):
                with self.assertRaises(InputError):
                    options.validate()


class TestCheckBuilders(unittest.TestCase):

    def setUp(self):
        self.report = Report(title="r")
        self.report.add("good", True)
        self.report.add("bad", False, pair=("a", "b"))

    def test_check_from_report(self):
        check = check_from_report("x.y", "anchor", self.report, extra=1)
        self.assertEqual(check.status, STATUS_FAIL)
        self.assertEqual(check.details["failures"][0]["details"]["pair"], ["a", "b"])
        self.assertEqual(check.details["extra"], 1)

    def test_checks_from_items(self):
        checks = checks_from_items("p", "anchor", self.report)
        self.assertEqual([(c.id, c.status) for c in checks], [("p.good", STATUS_PASS), ("p.bad", STATUS_FAIL)])

    def test_simple_check_is_jsonable(self):
        check = simple_check("s", "anchor", True, value=Fraction(1, 2))
        self.assertEqual(json.loads(json.dumps(check.to_dict()))["details"]["value"], "1/2")
        self.assertEqual(check.status, STATUS_PASS)


class TestRunSuite(unittest.TestCase):

    def test_unknown_suite(self):
        with self.assertRaises(InputError):
            run_suite("nope")

    def test_bad_options_before_running(self):
        with patch.dict(suites.SUITES, {"model": lambda options: self.fail("набор не должен запускаться")}):
            with self.assertRaises(InputError):
                run_suite("model", SuiteOptions(k=0))

    def test_error_becomes_inconclusive(self):
        def broken(options):
            raise NotSplitError("спектр не расщепляется")

        with patch.dict(suites.SUITES, {"ode": broken}):
            report = run_suite("ode", SuiteOptions(samples=1))
        self.assertFalse(report.passed)
        self.assertEqual([(c.id, c.status) for c in report.checks], [("ode.error", STATUS_INCONCLUSIVE)])
        self.assertNotIn("elapsed", json.loads(report.to_json()))
        self.assertIn("elapsed", json.loads(report.to_json(include_timing=True)))

    def test_all_runs_every_suite(self):
        called = []
        fake = {name: (lambda options, n=name: called.append(n) or [Check(f"{n}.ok", "a")])
                for name in suites.SUITE_NAMES}
        with patch.dict(suites.SUITES, fake):
            report = run_suite("all")
        self.assertEqual(called, list(suites.SUITE_NAMES))
        self.assertTrue(report.passed)
        self.assertEqual(report.counts()[STATUS_PASS], len(suites.SUITE_NAMES))

    def test_model_suite(self):
        report = run_suite("model", SuiteOptions(samples=2))
        failed = [c.id for c in report.checks if c.status != STATUS_PASS]
        self.assertEqual(failed, [])

    def test_model_suite_json_is_reproducible(self):
        first = run_suite("model", SuiteOptions(seed=3, samples=2)).to_json()
        second = run_suite("model", SuiteOptions(seed=3, samples=2)).to_json()
        self.assertEqual(first, second)


class TestCohomologySuite(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        entry = build("sl2_s3")
        cls.module = GradedModule.adjoint(entry.grading)
        cls.table = cohomology_table(cls.module, 2)
        cls.weight = adjoint_weight(cls.module, entry.elements["Et"])

    def test_weights_table(self):
        self.assertEqual(suites.COHOMOLOGY_WEIGHTS[3], [-5, -6])
        self.assertEqual(suites.COHOMOLOGY_WEIGHTS[4], [-7, -8])

    def test_representatives(self):
        for d in (2, 3, 4):
            with self.subTest(d=d):
                check = suites.representatives_check(self.table[d], self.weight)
                self.assertEqual(check.id, f"cohomology.representatives.d{d}")
                self.assertEqual(check.status, STATUS_PASS)
        classes = suites.representatives_check(self.table[3], self.weight).details["classes"]
        self.assertEqual(classes["psi3_1"]["eigenvalue"], "-5")
        self.assertFalse(classes["psi3_2"]["cocycle"])
        self.assertEqual(classes["psi3_2"]["boundary"], {"e-2,z,zb": {"z": "-8", "zb": "8"}})

    def test_wrong_expectation_fails(self):
        wrong = {3: {"psi3_1": ({"e-2,z": {"L": 1}, "e-2,zb": {"Lb": -1}}, True, "-6")}}
        with patch.dict(suites.COHOMOLOGY_CANDIDATES, wrong):
            check = suites.representatives_check(self.table[3], self.weight)
        self.assertEqual(check.status, STATUS_FAIL)


if __name__ == '__main__':
    unittest.main()
