import io
import json
from pathlib import Path

import jsonschema
import numpy as np
import pandas as pd
import pytest
import scipy.io
import scipy.sparse
from numpy.testing import assert_array_equal

from main import main
from tls_condition.cli_io import (RunConfig, json_number, load_problem, load_structure, read_matrix_market,
                                  read_vector, run, write_problem, write_vector)
from tls_condition.exceptions import DimensionMismatchError, ProblemParseError, StructureError
from tls_condition.experiments import make_example1
from tls_condition.numeric_config import EXIT_CODES

SCHEMA_PATH = Path(__file__).parent.parent / "docs" / "report_schema.json"


@pytest.fixture(scope="module")
def report_schema():
    with open(SCHEMA_PATH) as f:
        return json.load(f)


def _files(data_dir, name_a, name_b):
    return dict(matrix=str(data_dir / name_a), vector=str(data_dir / name_b))


class TestLoadProblem:
    def test_array_matrix_and_text_vector(self, data_dir):
        problem = load_problem(data_dir / "consistent_A.mtx", data_dir / "consistent_b.txt")
        assert_array_equal(problem.A, [[1, 0], [0, 1], [0, 0]])
        assert_array_equal(problem.b, [1, 1, 0])

    def test_coordinate_file_matches_generator(self, data_dir):
        problem = load_problem(data_dir / "example1.mtx", data_dir / "ones9.txt")
        expected = make_example1(1e-3)
        assert_array_equal(problem.A, expected.A)
        assert_array_equal(problem.b, expected.b)

    def test_short_vector(self, data_dir):
        with pytest.raises(DimensionMismatchError):
            load_problem(data_dir / "example1.mtx", data_dir / "short_b.txt")

    def test_bad_vector_line(self, data_dir):
        with pytest.raises(ProblemParseError) as info:
            read_vector(data_dir / "bad_vector.txt")
        assert info.value.line == 3

    def test_bad_matrix_line(self, data_dir):
        with pytest.raises(ProblemParseError) as info:
            read_matrix_market(data_dir / "bad_matrix.mtx")
        assert info.value.line == 4

    def test_complex_field_rejected(self, data_dir):
        with pytest.raises(ProblemParseError) as info:
            read_matrix_market(data_dir / "complex_matrix.mtx")
        assert info.value.line == 1

    def test_missing_header(self, data_dir):
        with pytest.raises(ProblemParseError) as info:
            read_matrix_market(data_dir / "ones9.txt")
        assert info.value.line == 1

    def test_missing_file(self, tmp_path):
        with pytest.raises(ProblemParseError):
            read_vector(tmp_path / "nowhere.txt")

    def test_empty_vector(self, tmp_path):
        path = tmp_path / "empty.txt"
        path.write_text("\n\n")
        with pytest.raises(ProblemParseError):
            read_vector(path)

    def test_matrix_market_column_vector(self, tmp_path):
        path = tmp_path / "b.mtx"
        scipy.io.mmwrite(str(path), np.array([[1.5], [-2.0], [0.25]]))
        assert_array_equal(read_vector(path), [1.5, -2.0, 0.25])


class TestWriteProblem:
    @pytest.mark.parametrize("sparse", [False, True])
    def test_reload_is_bit_identical(self, make_random_problem, tmp_path, sparse):
        problem = make_random_problem(6, 9, 4)
        write_problem(problem, tmp_path / "A.mtx", tmp_path / "b.txt", sparse=sparse)
        reloaded = load_problem(tmp_path / "A.mtx", tmp_path / "b.txt")
        assert_array_equal(reloaded.A, problem.A)
        assert_array_equal(reloaded.b, problem.b)

    def test_vector_text(self, tmp_path):
        write_vector(tmp_path / "v.txt", [0.1, 2.0])
        assert (tmp_path / "v.txt").read_text() == "0.1\n2.0\n"


class TestLoadStructure:
    def test_builtin_names(self):
        assert load_structure("Toeplitz", 5, 3).q == 7
        assert load_structure("diagonal", 5, 3).q == 3

    def test_directory_of_basis_files(self, tmp_path):
        scipy.io.mmwrite(str(tmp_path / "S1.mtx"), scipy.sparse.coo_matrix(np.eye(3, 2)))
        scipy.io.mmwrite(str(tmp_path / "S2.mtx"), scipy.sparse.coo_matrix(np.eye(3, 2, k=-1)))
        structure = load_structure(str(tmp_path), 3, 2)
        assert structure.q == 2
        assert structure.name == tmp_path.name

    def test_directory_shape_checked(self, tmp_path):
        scipy.io.mmwrite(str(tmp_path / "S1.mtx"), scipy.sparse.coo_matrix(np.eye(3, 2)))
        with pytest.raises(DimensionMismatchError):
            load_structure(str(tmp_path), 4, 2)

    def test_unknown(self, tmp_path):
        with pytest.raises(StructureError):
            load_structure("hankel", 4, 2)
        with pytest.raises(StructureError):
            load_structure(str(tmp_path), 4, 2)


class TestRunConfig:
    def test_needs_exactly_one_source(self, data_dir):
        with pytest.raises(ValueError):
            RunConfig(command='cond').validate()
        with pytest.raises(ValueError):
            RunConfig(command='cond', example='example1', **_files(data_dir, "example1.mtx", "ones9.txt")).validate()
        with pytest.raises(ValueError):
            RunConfig(command='cond', matrix=str(data_dir / "example1.mtx")).validate()

    @pytest.mark.parametrize("kwargs", [
        {'command': 'plot', 'example': 'example1'},
        {'command': 'cond', 'example': 'example4'},
        {'command': 'cond', 'example': 'example1', 'example_params': {'gamma': 1.0}},
        {'command': 'example', 'example': 'example1'},
        {'command': 'scond', 'example': 'example1'},
        {'command': 'cond', 'example': 'example1', 'epsilon': 0.0},
        {'command': 'cond', 'example': 'example1', 'trials': 0},
        {'command': 'cond', 'example': 'example1', 'workers': 0},
        {'command': 'cond', 'example': 'example1', 'output_format': 'xml'},
        {'command': 'cond', 'example': 'example1', 'selections': []},
    ])
    def test_rejects(self, kwargs):
        with pytest.raises(ValueError):
            RunConfig(**kwargs).validate()

    def test_from_json_with_overrides(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({'command': 'experiment', 'example': 'example1', 'trials': 5,
                                    'selections': 'standard', 'seed': 1}))
        config = RunConfig.from_json(path, seed=7, trials=None)
        assert config.trials == 5
        assert config.seed == 7
        assert config.selections == ['standard']

    def test_from_json_rejects_unknown_keys(self, tmp_path):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({'command': 'cond', 'colour': 'blue'}))
        with pytest.raises(ValueError):
            RunConfig.from_json(path)

    def test_seed_from_environment(self, monkeypatch):
        monkeypatch.setenv("TLS_CONDITION_SEED", "77")
        assert RunConfig(command='cond').seed == 77


class TestRun:
    def test_nongeneric_problem(self, data_dir, tmp_path):
        out = tmp_path / "report.json"
        result = run(RunConfig(command='cond', output_format='json', out=str(out),
                               **_files(data_dir, "nongeneric_A.mtx", "nongeneric_b.txt")))
        assert result.exit_code == EXIT_CODES['NOT_GENERIC'] == 5
        assert result.report is None
        assert not out.exists()

    def test_parse_error(self, data_dir):
        result = run(RunConfig(command='solve', **_files(data_dir, "bad_matrix.mtx", "ones9.txt")))
        assert result.exit_code == EXIT_CODES['PARSE']
        assert "bad_matrix.mtx:4" in result.error

    def test_dimension_error(self, data_dir):
        result = run(RunConfig(command='solve', **_files(data_dir, "example1.mtx", "short_b.txt")))
        assert result.exit_code == EXIT_CODES['DIMENSION']

    def test_usage_error(self):
        assert run(RunConfig(command='scond', example='example1')).exit_code == EXIT_CODES['USAGE']

    def test_not_in_subspace(self, data_dir):
        result = run(RunConfig(command='scond', structure='toeplitz',
                               **_files(data_dir, "example1.mtx", "ones9.txt")))
        assert result.exit_code == EXIT_CODES['NOT_IN_SUBSPACE']

    def test_cond_json_matches_schema(self, report_schema, tmp_path):
        out = tmp_path / "cond.json"
        result = run(RunConfig(command='cond', example='example1', selections=['standard'],
                               output_format='json', out=str(out)))
        assert result.ok
        report = json.loads(out.read_text())
        jsonschema.validate(report, report_schema)
        assert [c['label'] for c in report['conditions']][0] == "I_n"
        assert report['conditions'][0]['kappa_c'] == pytest.approx(8.4286, rel=1e-3)

    def test_scond_and_experiment_json_match_schema(self, report_schema):
        scond = run(RunConfig(command='scond', example='example3', example_params={'m': 40}, output_format='json'))
        jsonschema.validate(json.loads(scond.text), report_schema)
        assert scond.report['structure'] == "toeplitz"

        experiment = run(RunConfig(command='experiment', example='example1', selections=['standard'],
                                   trials=3, output_format='json'))
        report = json.loads(experiment.text)
        jsonschema.validate(report, report_schema)
        assert len(report['experiment']['trial_results']) == 12

    def test_csv(self):
        result = run(RunConfig(command='cond', example='example1', selections=['identity', 'index=4'],
                               output_format='csv'))
        frame = pd.read_csv(io.StringIO(result.text))
        assert list(frame['label']) == ["I_n", "e_4"]
        assert frame['kappa_c'].iloc[1] == pytest.approx(2.0, rel=1e-3)

    def test_example_command_writes_files(self, tmp_path):
        result = run(RunConfig(command='example', example='example2', example_params={'m': 12, 'n': 3},
                               out=str(tmp_path)))
        assert result.ok
        problem = load_problem(tmp_path / "A.mtx", tmp_path / "b.txt")
        assert (problem.m, problem.n) == (12, 3)


class TestJsonNumber:
    @pytest.mark.parametrize("value, expected", [
        (1.5, 1.5), (float('inf'), "inf"), (-np.inf, "-inf"), (np.int64(3), 3), (np.bool_(True), True), (None, None)
    ])
    def test_values(self, value, expected):
        assert json_number(value) == expected

    def test_nan_is_null(self):
        assert json_number(float('nan')) is None


class TestMain:
    def test_cond_table(self, capsys):
        assert main(['cond', '--example', 'example1', '--delta', '1e-3']) == 0
        out = capsys.readouterr().out
        assert "I_n" in out
        assert "8.43e+00" in out

    def test_nongeneric_exit_code(self, data_dir, capsys):
        code = main(['solve', '--matrix', str(data_dir / "nongeneric_A.mtx"),
                     '--vector', str(data_dir / "nongeneric_b.txt")])
        assert code == 5
        assert "error" in capsys.readouterr().err

    def test_example_then_cond(self, tmp_path, capsys):
        assert main(['example', '--example', 'example1', '--out', str(tmp_path)]) == 0
        capsys.readouterr()
        code = main(['cond', '--matrix', str(tmp_path / "A.mtx"), '--vector', str(tmp_path / "b.txt"),
                     '--L', 'index=4', '--L', 'rows=1,2', '--format', 'json'])
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert [c['label'] for c in report['conditions']] == ["e_4", "rows=1,2"]
        assert report['conditions'][0]['kappa_c'] == pytest.approx(2.0, rel=1e-3)

    def test_config_file(self, tmp_path, capsys):
        path = tmp_path / "run.json"
        path.write_text(json.dumps({'command': 'solve', 'example': 'example1'}))
        assert main(['solve', '--config', str(path), '--format', 'json']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['solution']['n'] == 4

    def test_usage_error(self, capsys):
        assert main(['cond', '--example', 'example1', '--eps', '-1']) == EXIT_CODES['USAGE']

    def test_scond_example3_defaults(self, capsys):
        assert main(['scond', '--example', 'example3', '--format', 'json']) == 0
        report = json.loads(capsys.readouterr().out)
        assert report['structure'] == "toeplitz"
        structured, unstructured = report['structured_conditions'][0], report['conditions'][0]
        assert structured['kappa_s_inf_rel'] <= unstructured['kappa_inf_rel']
