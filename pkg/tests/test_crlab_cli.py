import unittest
from unittest.mock import patch
import json
import os
import sys
from click.testing import CliRunner

# Добавляем путь к родительской директории для импорта модулей проекта
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from crlab_cli import cli, format_combination
from scripts.data_structures import STATUS_FAIL, STATUS_INCONCLUSIVE, Check, SuiteReport
from scripts.errors import InputError
from scripts.suites import SuiteOptions


def make_report(*statuses) -> SuiteReport:
    report = SuiteReport(suite="model", seed=7)
    for n, status in enumerate(statuses):
        report.add(Check(f"model.c{n}", "[z, z̄] = −(i/2)e₋₂", status))
    report.elapsed = 0.25
    return report


class TestFormatCombination(unittest.TestCase):

    def test_terms(self):
        self.assertEqual(format_combination({"X": "2", "Y": "-1"}), "2*X - Y")
        self.assertEqual(format_combination({"z": "-1/2*i"}), "(-1/2*i)*z")
        self.assertEqual(format_combination({"E": "1", "N": "-3/4"}), "E - 3/4*N")
        self.assertEqual(format_combination({}), "0")


class TestRunCommand(unittest.TestCase):

    def setUp(self):
        self.runner = CliRunner()

    @patch('crlab_cli.run_suite')
    def test_run_passed(self, mock_run_suite):
        mock_run_suite.return_value = make_report("pass", "pass")
        result = self.runner.invoke(cli, ['run', 'model'])
        self.assertEqual(result.exit_code, 0)
        mock_run_suite.assert_called_once_with('model', SuiteOptions())
        self.assertIn("model.c0", result.output)
        self.assertIn("пройдено 2", result.output)

    @patch('crlab_cli.run_suite')
    def test_run_options_forwarded(self, mock_run_suite):
        mock_run_suite.return_value = make_report("pass")
        result = self.runner.invoke(cli, ['run', 'tube', '--seed', '3', '--samples', '2', '--k', '4', '--t', '2'])
        self.assertEqual(result.exit_code, 0)
        mock_run_suite.assert_called_once_with('tube', SuiteOptions(seed=3, samples=2, k=4, t="2", depth=2))

    @patch('crlab_cli.run_suite')
    def test_run_failed_and_inconclusive(self, mock_run_suite):
        for status in (STATUS_FAIL, STATUS_INCONCLUSIVE):
            with self.subTest(status=status):
                mock_run_suite.return_value = make_report("pass", status)
                result = self.runner.invoke(cli, ['run', 'model'])
                self.assertEqual(result.exit_code, 1)

    @patch('crlab_cli.run_suite')
    def test_run_input_error(self, mock_run_suite):
        mock_run_suite.side_effect = InputError("Неверный скаляр: 'x'")
        result = self.runner.invoke(cli, ['run', 'examples', '--t', 'x'])
        self.assertEqual(result.exit_code, 2)
        self.assertIn("Неверный скаляр", result.output)

    @patch('crlab_cli.run_suite')
    def test_run_json(self, mock_run_suite):
        mock_run_suite.return_value = make_report("pass", STATUS_FAIL)
        with self.runner.isolated_filesystem():
            result = self.runner.invoke(cli, ['run', 'model', '--json', 'out.json'])
            self.assertEqual(result.exit_code, 1)
            with open('out.json', encoding='utf-8') as f:
                data = json.load(f)
            self.assertEqual(data["counts"], {"pass": 1, "fail": 1, "inconclusive": 0})
            self.assertNotIn("elapsed", data)
            self.runner.invoke(cli, ['run', 'model', '--json', 'timed.json', '--timing'])
            with open('timed.json', encoding='utf-8') as f:
                self.assertEqual(json.load(f)["elapsed"], 0.25)

    def test_usage_errors(self):
        self.assertEqual(self.runner.invoke(cli, ['run', 'nope']).exit_code, 2)
        self.assertEqual(self.runner.invoke(cli, ['run', 'tube', '--k', '1']).exit_code, 2)
        self.assertEqual(self.runner.invoke(cli, ['run', 'model', '--samples', '0']).exit_code, 2)

    @patch('crlab_cli.run_suite')
    def test_depth_from_environment(self, mock_run_suite):
        mock_run_suite.return_value = make_report("pass")
        result = self.runner.invoke(cli, ['run', 'prolongation'], env={"CRLAB_DEPTH": "3"})
        self.assertEqual(result.exit_code, 0)
        self.assertEqual(mock_run_suite.call_args[0][1].depth, 3)
        result = self.runner.invoke(cli, ['run', 'prolongation'], env={"CRLAB_DEPTH": "0"})
        self.assertEqual(result.exit_code, 2)

    def test_version(self):
        result = self.runner.invoke(cli, ['--version'])
        self.assertEqual(result.exit_code, 0)
        self.assertIn("version", result.output)


class TestDescribeAndCatalog(unittest.TestCase):

    def setUp(self):
        self.runner = CliRunner()

    def test_describe_model8(self):
        result = self.runner.invoke(cli, ['describe', 'model8'])
        self.assertEqual(result.exit_code, 0)
        self.assertIn("model8: dim = 8", result.output)
        self.assertIn("[4, 3, 2, 1], k = 3", result.output)
        self.assertIn("[z, zb] = (-1/2*i)*e-2", result.output)

    def test_describe_json(self):
        result = self.runner.invoke(cli, ['describe', 'sl2_s3', '--json'])
        self.assertEqual(result.exit_code, 0)
        data = json.loads(result.output)
        self.assertEqual(data["dim"], 7)
        self.assertTrue(data["valid"])
        self.assertEqual(len(data["algebra"]["basis"]), 7)

    def test_describe_unknown(self):
        result = self.runner.invoke(cli, ['describe', 'nope'])
        self.assertEqual(result.exit_code, 2)
        self.assertIn("Неизвестная запись каталога", result.output)

    def test_catalog_list(self):
        result = self.runner.invoke(cli, ['catalog', 'list'])
        self.assertEqual(result.exit_code, 0)
        self.assertIn("model8", result.output.split())
        self.assertIn("rigid_sl2_s3", result.output.split())

    def test_catalog_export(self):
        with self.runner.isolated_filesystem():
            result = self.runner.invoke(cli, ['catalog', 'export', 'heis3', '-o', 'heis3.json'])
            self.assertEqual(result.exit_code, 0)
            with open('heis3.json', encoding='utf-8') as f:
                data = json.load(f)
        self.assertEqual(data["algebra"]["basis"], ["e-2", "e1", "e2"])
        self.assertEqual(data["algebra"]["brackets"], [{"i": "e1", "j": "e2", "value": {"e-2": "1"}}])


if __name__ == '__main__':
    unittest.main()
