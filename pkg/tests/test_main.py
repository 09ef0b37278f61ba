from .utils import *
import pytest

import json
import logging
import os
import sys
from tempfile import TemporaryFile

import tdlccert.__main__ as main
from tdlccert.certify import PREMISES
from tdlccert.constants import *

OCTAHEDRON_JOB = '''\
complex:
  source: cross_polytope
  dimension: 3
'''

CYCLE_JOB = '''\
complex:
  source: facets
  facets: [[1, 2], [2, 3], [1, 3]]
'''

TREE_JOB = '''\
tree:
  x: 2
  y: 3
  radius: 2
  fix_root: false
'''


@pytest.mark.usefixtures("in_tmp_path")
class TestMain:

    def run_tdlccert(self, args, exp_retval=0):
        '''Run tdlccert, checking its return value

        Returns stdout and stderr data.
        '''
        with TemporaryFile(prefix='tdlccert-stdout', mode='w+t') as stdout:
            with TemporaryFile(prefix='tdlccert-stderr', mode='w+t') as stderr:
                old_stdout = sys.stdout
                old_stderr = sys.stderr
                sys.stdout = stdout
                sys.stderr = stderr

                try:
                    '''
                    Call main(), and expect it to either exit() with a
                    given return code, or return (implying an exit status
                    of 0).
                    '''
                    try:
                        main.main(argv = args)
                    except SystemExit as sysexit:
                        retcode = sysexit.code
                    else:
                        retcode = 0

                    stdout.seek(0)
                    stderr.seek(0)

                    stdout_data = stdout.read()
                    stderr_data = stderr.read()

                    logging.info('tdlccert stdout:\n' + stdout_data)
                    logging.info('tdlccert stderr:\n' + stderr_data)

                    assert exp_retval == retcode

                    return stdout_data, stderr_data

                finally:
                    sys.stdout = old_stdout
                    sys.stderr = old_stderr

    ######################################################################
    # Arguments

    def test_version(self):
        out, _ = self.run_tdlccert(['--version'])
        assert_str_equalish(out, 'tdlccert ' + main.__version__)

    def test_unknown_command(self):
        write_file('job.yml', OCTAHEDRON_JOB)
        self.run_tdlccert(['prove', '-c', 'job.yml'], EXIT_INPUT_ERROR)

    def test_config_required(self):
        self.run_tdlccert(['certify'], EXIT_INPUT_ERROR)

    ######################################################################
    # Input errors

    def test_missing_config(self):
        _, err = self.run_tdlccert(['certify', '-c', 'job.yml'], EXIT_INPUT_ERROR)
        assert 'not found' in err
        assert os.listdir('.') == []

    def test_bad_config(self):
        write_file('job.yml', 'complex:\n  source: sphere\n')
        _, err = self.run_tdlccert(['certify', '-c', 'job.yml'], EXIT_INPUT_ERROR)
        assert 'Config error' in err
        assert sorted(os.listdir('.')) == ['job.yml']

    def test_command_needs_node(self):
        write_file('job.yml', OCTAHEDRON_JOB)
        _, err = self.run_tdlccert(['tree-check', '-c', 'job.yml'], EXIT_INPUT_ERROR)
        assert "'tree'" in err
        self.run_tdlccert(['search-subgroups', '-c', 'job.yml'], EXIT_INPUT_ERROR)

    def test_bad_worker_count(self, monkeypatch):
        write_file('job.yml', OCTAHEDRON_JOB)
        monkeypatch.setenv(THREADS_ENV_VAR, 'many')
        _, err = self.run_tdlccert(['links', '-c', 'job.yml'], EXIT_INPUT_ERROR)
        assert THREADS_ENV_VAR in err

    def test_wrong_complex_schema(self):
        write_file('other.json', json.dumps({'schema': 'other/complex/1'}))
        write_file('job.yml', 'complex:\n  source: file\n  file: other.json\n')
        self.run_tdlccert(['certify', '-c', 'job.yml'], EXIT_INPUT_ERROR)

    ######################################################################
    # Commands

    def test_homology_cycle(self):
        write_file('job.yml', CYCLE_JOB)
        out, _ = self.run_tdlccert(['homology', '-c', 'job.yml'])
        assert 'H1: betti 1 torsion []' in out
        data = read_json('job-homology.json')
        assert data['schema'] == 'tdlccert/homology/1'
        assert data['homology'][1] == {'degree': 1, 'betti': 1, 'torsion': []}
        assert data['environment']['command'] == 'homology'
        assert read_text('job-homology.txt') == out

    def test_homology_sixteen_cell(self):
        write_file('job.yml', 'complex:\n  source: cross_polytope\n  dimension: 4\n')
        self.run_tdlccert(['homology', '-c', 'job.yml'])
        rows = read_json('job-homology.json')['homology']
        assert [r['betti'] for r in rows] == [1, 0, 0, 1]

    def test_certify_octahedron(self):
        write_file('job.yml', OCTAHEDRON_JOB)
        out, _ = self.run_tdlccert(['certify', '-c', 'job.yml'], EXIT_CHECK_FAILED)
        assert 'passed: False' in out
        data = read_json('job-certify.json')
        assert data['schema'] == 'tdlccert/certificate/1'
        assert data['measurements']['min_link_girth'] == 4
        assert data['premises']['edge_swap']['value'] is True
        assert data['premises']['link_girth_at_least_6']['value'] is False
        assert data['requested_checks'] == list(PREMISES)
        npc = [c for c in data['conclusions'] if c['name'] == 'npc'][0]
        assert npc['holds'] is False

    def test_certify_requested_checks(self):
        write_file('job.yml', OCTAHEDRON_JOB + 'checks: [flag, edge_swap, h1_trivial]\n')
        self.run_tdlccert(['certify', '-c', 'job.yml'])
        assert read_json('job-certify.json')['passed'] is False

    def test_json_output(self):
        write_file('job.yml', CYCLE_JOB)
        out, _ = self.run_tdlccert(['homology', '-c', 'job.yml', '--json'])
        assert json.loads(out) == read_json('job-homology.json')

    def test_quiet(self):
        write_file('job.yml', CYCLE_JOB)
        out, err = self.run_tdlccert(['homology', '-c', 'job.yml', '-q'])
        assert out == ''
        assert err == ''

    def test_verbose(self):
        write_file('job.yml', OCTAHEDRON_JOB)
        _, err = self.run_tdlccert(['certify', '-c', 'job.yml', '-V'], EXIT_CHECK_FAILED)
        assert 'tdlccert: flag: True' in err

    def test_out_dir(self):
        write_file('job.yml', CYCLE_JOB + 'output:\n  dir: ignored\n  name: cycle\n')
        self.run_tdlccert(['homology', '-c', 'job.yml', '-o', 'elsewhere'])
        assert os.path.exists(os.path.join('elsewhere', 'cycle-homology.json'))
        assert not os.path.exists('ignored')

    def test_output_dir_relative_to_job(self):
        write_file(os.path.join('jobs', 'job.yml'), CYCLE_JOB + 'output:\n  dir: out\n')
        self.run_tdlccert(['homology', '-c', os.path.join('jobs', 'job.yml')])
        assert os.path.exists(os.path.join('jobs', 'out', 'job-homology.json'))

    def test_build_coset_complex(self):
        write_file('job.yml', '\n'.join([
            'group:',
            '  symmetric: 4',
            'subgroups:',
            "  - generators: ['(1 2)']",
            "  - generators: ['(2 3)']",
            "  - generators: ['(3 4)']",
        ]) + '\n')
        out, _ = self.run_tdlccert(['build', '-c', 'job.yml'])
        assert 'vertices: 36' in out
        data = read_json('job-build.json')
        assert data['vertices'] == 36
        assert len(data['edges']) == 72
        assert data['environment']['group'] == 'symmetric(4)'
        assert data['environment']['group_order'] == 24
        assert [s['order'] for s in data['source']['subgroups']] == [2, 2, 2]
        assert data['symmetry'] is not None

    def test_build_then_certify_from_file(self):
        write_file('job.yml', OCTAHEDRON_JOB)
        self.run_tdlccert(['build', '-c', 'job.yml'])
        write_file('again.yml', 'complex:\n  source: file\n  file: job-build.json\n')
        self.run_tdlccert(['certify', '-c', 'again.yml'], EXIT_CHECK_FAILED)
        data = read_json('again-certify.json')
        assert data['counts'] == {'vertices': 6, 'edges': 12, 'triangles': 8}
        assert data['measurements']['triangle_orbits'] == 1

    def test_links(self):
        write_file('job.yml', OCTAHEDRON_JOB)
        self.run_tdlccert(['links', '-c', 'job.yml'], EXIT_CHECK_FAILED)
        data = read_json('job-links.json')
        assert data['histogram'] == {'4': 6}
        assert data['girths'] == [4] * 6
        assert data['passed'] is False

    def test_links_not_requested(self):
        write_file('job.yml', OCTAHEDRON_JOB + 'checks: [flag]\n')
        self.run_tdlccert(['links', '-c', 'job.yml'])

    def test_raag_check_octahedron(self):
        write_file('job.yml', 'raag:\n  graph: octahedron\n  samples: 20\n  length: 6\n')
        self.run_tdlccert(['raag-check', '-c', 'job.yml'])
        data = read_json('job-raag-check.json')
        assert data['graph'] == {'vertices': 6, 'edges': 12}
        assert data['rewrite']['failures'] == 0
        assert data['edge_identities'] == {'directed_edges': 24, 'checked': 24, 'failures': 0}
        assert data['conjugation_formula']['failures'] == 0
        assert data['passed'] is True

    def test_raag_check_edge_cap(self):
        write_file('job.yml', 'raag:\n  graph: octahedron\n  samples: 2\n  edges: 5\n')
        self.run_tdlccert(['raag-check', '-c', 'job.yml'])
        assert read_json('job-raag-check.json')['edge_identities']['checked'] == 5

    def test_raag_check_explicit_graph(self):
        write_file('job.yml', 'raag:\n  graph: {vertices: 3, edges: [[1, 2], [2, 3]]}\n')
        self.run_tdlccert(['raag-check', '-c', 'job.yml'])
        data = read_json('job-raag-check.json')
        assert data['edge_identities'] is None
        assert data['rewrite']['samples'] == 200

    def test_raag_check_disconnected(self):
        write_file('job.yml', 'raag:\n  graph: {vertices: 3, edges: [[1, 2]]}\n  samples: 5\n')
        self.run_tdlccert(['raag-check', '-c', 'job.yml'], EXIT_CHECK_FAILED)
        data = read_json('job-raag-check.json')
        assert data['rewrite']['failures'] == 5
        assert 'not connected' in data['rewrite']['error']

    def test_tree_check(self):
        write_file('job.yml', TREE_JOB)
        out, _ = self.run_tdlccert(['tree-check', '-c', 'job.yml'])
        assert 'universal maps fixing the root: 8' in out
        data = read_json('job-tree-check.json')
        assert data['labeling_valid'] is True
        assert data['universal_maps'] == 8
        assert data['maps_are_isometries'] is True
        assert data['root_local_actions'] == {'count': 2, 'equals_local_group': True}
        assert data['root_moving_maps'] == 5
        assert data['edge_fixator_sizes'] == {'2': 4, '3': 4}

    def test_tree_check_free_local_actions(self):
        write_file('job.yml', '\n'.join([
            'tree:',
            '  x: 3',
            '  y: 3',
            '  local_groups:',
            '    M: {cyclic: 3}',
            '    N: {cyclic: 3}',
        ]) + '\n')
        self.run_tdlccert(['tree-check', '-c', 'job.yml'])
        data = read_json('job-tree-check.json')
        assert data['local_groups']['M'] == {'order': 3, 'degree': 3, 'acts_freely': True}
        assert data['edge_fixator_sizes'] == {'2': 1, '3': 1}
        assert data['root_moving_maps'] is None

    def test_tree_check_deterministic(self):
        write_file('job.yml', TREE_JOB)
        self.run_tdlccert(['tree-check', '-c', 'job.yml'])
        first = read_text('job-tree-check.json')
        self.run_tdlccert(['tree-check', '-c', 'job.yml'])
        assert read_text('job-tree-check.json') == first

    def test_search_subgroups(self):
        write_file('job.yml', 'group:\n  symmetric: 4\nsubgroups:\n  search:\n    order: 3\n')
        out, _ = self.run_tdlccert(['search-subgroups', '-c', 'job.yml'])
        data = read_json('job-search-subgroups.json')
        assert data['subgroups_found'] == 4
        assert [(c['size'], c['order']) for c in data['classes']] == [(4, 3)]
        assert 'classes: 1' in out

    def test_search_nonabelian_none_found(self):
        write_file('job.yml', '\n'.join([
            'group:',
            '  symmetric: 4',
            'subgroups:',
            '  search:',
            '    order: 3',
            '    nonabelian: true',
        ]) + '\n')
        self.run_tdlccert(['search-subgroups', '-c', 'job.yml'], EXIT_CHECK_FAILED)
        assert read_json('job-search-subgroups.json')['classes'] == []
