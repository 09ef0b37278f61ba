# tdlccert - certificates for coset complexes and their groups
# PYTHON_ARGCOMPLETE_OK

import argparse
import json
import math
import os
import random
import sys
from collections import Counter, namedtuple
try:
    import argcomplete
except ImportError:
    class argcomplete:
        @staticmethod
        def autocomplete(*_, **__):
            pass

from .certify import (LINK_GIRTH_BOUND, certify, girth_value, link_girths,
        select_triple)
from .complex import (Complex2D, DirectedEdgeOrbits, build_coset_complex, extend_symmetry,
        from_facets, octahedron, swap_witness)
from .config import (ConfigError, ConfigNotFoundError, describe_group, load_config, make_group,
        make_subgroups)
from .constants import *
from .groups import cross_polytope_facets, from_cycles, hyperoctahedral
from .homology import homology_groups, simplicial_homology
from .perm import (PermGroup, acts_freely, conjugacy_classes_of, find_subgroups, nonabelian,
        normalizer, subgroups_of_order)
from .raag import (Raag, RaagDomainError, RaagError, conjugation_formula_check, edge_word,
        edge_generator_from_conjugates, random_kernel_word, rewrite_in_edge_generators)
from .tree import (build_ball, canonical_labeling, edge_fixator_sizes, enumerate_universal,
        identity_map, is_isometry, root_local_action_image, validate_labeling)
from .utils import atomic_write, format_cycles, worker_count
from .version import __version__

COMMANDS = (
    'build',
    'certify',
    'homology',
    'links',
    'raag-check',
    'tree-check',
    'search-subgroups',
)

g_verbose = False
g_quiet = False

def appmsg(fmt, *args):
    if not g_quiet:
        print('tdlccert: ' + fmt.format(*args), file=sys.stderr)

def errmsg(fmt, *args):
    print('tdlccert: ' + fmt.format(*args), file=sys.stderr)

def verbose_msg(fmt, *args):
    if g_verbose:
        appmsg(fmt, *args)


def parse_tdlccert_args(argv):
    ap = argparse.ArgumentParser(
            description='Certificates for coset complexes, RAAG identities and tree actions',
            epilog='Permutations use a right action: cycles are composed left to right '
                   'and points are numbered from 1.  {} caps worker processes.'.format(
                   THREADS_ENV_VAR))
    ap.add_argument('command', choices=COMMANDS, help='Job step to run')
    ap.add_argument('-c', '--config', required=True, help='Job file (YAML)')
    ap.add_argument('-o', '--out', help="Directory for artifacts (overrides 'output.dir')")
    ap.add_argument('--json', action='store_true',
            help='Print the JSON artifact to stdout')
    ap.add_argument('-q', '--quiet', action='store_true',
            help='Only print errors')
    ap.add_argument('-v', '--version', action='version', version='tdlccert ' + __version__)
    ap.add_argument('-V', '--verbose', action='store_true',
            help='Be verbose')

    argcomplete.autocomplete(ap, always_complete_options=False)
    args = ap.parse_args(argv)

    global g_verbose, g_quiet
    g_quiet = args.quiet
    g_verbose = args.verbose and not args.quiet

    return args


class JobError(Exception):
    pass


# kind names the artifact schema; ok is False when a requested check fails
Outcome = namedtuple('Outcome', 'kind data report ok')


def _artifact(kind, environment, **fields):
    data = {
        'schema': schema(kind),
        'conventions': dict(CONVENTIONS),
        'environment': environment,
    }
    data.update(fields)
    return data


def _text_report(title, lines):
    return '\n'.join([title] + ['  ' + line for line in lines]) + '\n'


class JobRunner:
    '''Runs one command of a job; every stage reports through appmsg'''

    def __init__(self, job, workers=1):
        self.job = job
        self.workers = workers
        self._group = None

    def group(self):
        if self.job.group is None:
            raise ConfigError("This job needs a 'group' node")
        if self._group is None:
            self._group = make_group(self.job.group)
            appmsg('group {} of order {} on {} points', describe_group(self.job.group),
                    self._group.order(), self._group.degree)
        return self._group

    def environment(self, command):
        env = {
            'tool': 'tdlccert',
            'version': __version__,
            'command': command,
            'job': self.job.output['name'],
        }
        if self.job.group is not None:
            env['group'] = describe_group(self.job.group)
            env['group_order'] = self.group().order()
        return env

    ################################################################################
    # Inputs

    def _subgroup_candidates(self):
        search = self.job.subgroups['search']
        G = self.group()
        found = subgroups_of_order(G, search['order'])
        if search['nonabelian']:
            found = [H for H in found if nonabelian(H)]
        appmsg('{} subgroups of order {}{}', len(found), search['order'],
                ', nonabelian' if search['nonabelian'] else '')
        return found

    def _facets(self):
        '''0-based facets of a facet-list source, with the acting group or None'''
        node = self.job.complex
        if node['source'] == 'cross_polytope':
            n = node['dimension']
            return [list(f) for f in cross_polytope_facets(n)], hyperoctahedral(n)
        facets = [[v - 1 for v in f] for f in node['facets']]
        if 'action' not in node:
            return facets, None
        n = max(v for f in facets for v in f) + 1
        action = from_cycles(node['action'], n)
        if action.degree != n:
            raise ConfigError("'complex.action' moves points beyond the {} vertices".format(n))
        return facets, action

    def complex(self):
        '''(complex, source info); the complex is None when a search finds nothing'''
        node = self.job.complex
        if node is None:
            raise ConfigError("This job needs a 'complex' node or 'subgroups'")
        info = {'source': node['source']}
        if node['source'] == 'coset':
            G = self.group()
            if isinstance(self.job.subgroups, dict):
                classes = conjugacy_classes_of(G, self._subgroup_candidates())
                appmsg('searching triples over {} conjugacy classes', len(classes))
                search = select_triple(G, classes, progress=lambda m: verbose_msg('{}', m))
                info['triples_examined'] = search.examined
                if search.triple is None:
                    appmsg('no triple passed after {} candidates', search.examined)
                    return None, info
                c, triple = search.complex, search.triple
            else:
                triple = make_subgroups(G, self.job.subgroups)
                c = build_coset_complex(G, triple)
            info['subgroups'] = [
                {'order': H.order(), 'generators': [format_cycles(g) for g in H.generators]}
                for H in triple
            ]
        elif node['source'] == 'file':
            c = self._load_complex(self.job.resolve(node['file']))
        else:
            facets, action = self._facets()
            c = from_facets(facets, action=action)
        appmsg('complex with {} vertices, {} edges, {} triangles',
                c.n_vertices, len(c.edges), len(c.triangles))

        if node['symmetry'] == 'extend':
            if c.symmetry is None:
                base = c.symmetry_group() or PermGroup.trivial(c.n_vertices)
                c = extend_symmetry(c, base)
            info['symmetry_generators'] = len(c.symmetry.generators)
        else:
            c = c.with_symmetry(None)
        return c, info

    @staticmethod
    def _load_complex(path):
        try:
            with open(path, 'r') as f:
                data = json.load(f)
        except IOError as e:
            raise ConfigError('Error opening {}: {}'.format(path, e))
        except ValueError as e:
            raise ConfigError('Error loading {}: {}'.format(path, e))
        try:
            return Complex2D.from_dict(data)
        except (KeyError, TypeError) as e:
            raise ConfigError('{}: malformed complex: {}'.format(path, e))

    def _no_complex(self, kind, command, info):
        data = _artifact(kind, self.environment(command), source=info, passed=False)
        report = _text_report('No complex', [
            'triples examined: {}'.format(info.get('triples_examined', 0)),
            'passed: False',
        ])
        return Outcome(kind, data, report, False)

    ################################################################################
    # Commands

    def build(self):
        c, info = self.complex()
        if c is None:
            return self._no_complex('complex', 'build', info)
        data = c.to_dict()
        data['environment'] = self.environment('build')
        data['source'] = info
        sizes = Counter(c.parts)
        lines = [
            'vertices: {}'.format(c.n_vertices),
            'edges: {}'.format(len(c.edges)),
            'triangles: {}'.format(len(c.triangles)),
        ]
        lines += ['part {}: {} vertices'.format(name, sizes[i])
                for i, name in enumerate(c.part_names)]
        return Outcome('complex', data, _text_report('Complex', lines), True)

    def certify(self):
        c, info = self.complex()
        if c is None:
            return self._no_complex('certificate', 'certify', info)
        cert = certify(c, environment=self.environment('certify'), workers=self.workers,
                expected_triangle_orbits=self.job.expect.get('triangle_orbits'),
                progress=lambda name, value: verbose_msg('{}: {}', name, value))
        for w in cert.warnings:
            appmsg('warning: {}', w)
        data = cert.to_dict()
        data['source'] = info
        data['requested_checks'] = list(self.job.checks)
        ok = all(cert.premises[name] is True for name in self.job.checks)
        return Outcome('certificate', data, cert.report(), ok)

    def homology(self):
        env = self.environment('homology')
        node = self.job.complex
        if node is not None and node['source'] in ('facets', 'cross_polytope'):
            facets, _ = self._facets()
            top = max(len(f) for f in facets) - 1
            groups = [simplicial_homology(facets, k) for k in range(top + 1)]
            counts = {'facets': len(facets), 'dimension': top}
        else:
            c, info = self.complex()
            if c is None:
                return self._no_complex('homology', 'homology', info)
            groups = homology_groups(c)
            counts = {'vertices': c.n_vertices, 'edges': len(c.edges),
                    'triangles': len(c.triangles)}
        rows = [{'degree': k, 'betti': h.betti, 'torsion': list(h.torsion)}
                for k, h in enumerate(groups)]
        data = _artifact('homology', env, counts=counts, homology=rows, passed=True)
        lines = ['{}: {}'.format(k, v) for k, v in counts.items()]
        lines += ['H{}: betti {} torsion {}'.format(r['degree'], r['betti'], r['torsion'])
                for r in rows]
        return Outcome('homology', data, _text_report('Homology', lines), True)

    def links(self):
        c, info = self.complex()
        if c is None:
            return self._no_complex('links', 'links', info)
        girths = link_girths(c, self.workers)
        least = min(girths, default=math.inf)
        histogram = Counter(girths)
        passed = least >= LINK_GIRTH_BOUND
        data = _artifact('links', self.environment('links'),
                counts={'vertices': c.n_vertices},
                bound=LINK_GIRTH_BOUND,
                min_link_girth=girth_value(least),
                histogram={str(girth_value(g)): histogram[g] for g in sorted(histogram)},
                girths=[girth_value(g) for g in girths],
                passed=passed)
        lines = [
            'vertices: {}'.format(c.n_vertices),
            'min_link_girth: {}'.format(girth_value(least)),
        ]
        lines += ['girth {}: {} vertices'.format(g, n) for g, n in data['histogram'].items()]
        lines.append('passed: {}'.format(passed))
        ok = passed or 'link_girth_at_least_6' not in self.job.checks
        return Outcome('links', data, _text_report('Links', lines), ok)

    def _raag_graph(self):
        graph = self.job.raag['graph']
        if isinstance(graph, dict):
            edges = [(u - 1, v - 1) for u, v in graph['edges']]
            return Raag.from_edges(graph['vertices'], edges), None
        if graph == 'octahedron':
            c = octahedron()
        else:
            c, _ = self.complex()
            if c is None:
                raise JobError('No complex to take the defining graph from')
        return Raag(c.graph()), c

    def raag_check(self):
        params = self.job.raag
        if params is None:
            raise ConfigError("This job needs a 'raag' node")
        raag, c = self._raag_graph()
        rng = random.Random(params['seed'])
        appmsg('RAAG on {} vertices, {} edges', len(raag.vertices), raag.graph.number_of_edges())

        rewrite = {'samples': params['samples'], 'length': params['length'], 'failures': 0}
        for i in range(params['samples']):
            h = random_kernel_word(raag, params['length'], rng)
            try:
                terms = rewrite_in_edge_generators(h)
            except RaagError as e:
                rewrite['failures'] += 1
                rewrite.setdefault('error', str(e))
                continue
            if i == 0:
                rewrite['example'] = {
                    'word': str(h),
                    'terms': [[x, y, k] for (x, y), k in terms],
                }
            if not edge_word(raag, terms).equals(h):
                rewrite['failures'] += 1
                rewrite.setdefault('first_failure', str(h))
        verbose_msg('rewriting: {} failures in {} samples', rewrite['failures'],
                params['samples'])

        identities = None
        conjugation = None
        group = c.symmetry_group() if c is not None else None
        if group is not None:
            table = DirectedEdgeOrbits(c, group)
            darts = table.darts
            if len(darts) > params['edges']:
                darts = sorted(rng.sample(darts, params['edges']))
            identities = {'directed_edges': len(table.darts), 'checked': len(darts),
                    'failures': 0}
            for x, y in darts:
                found = swap_witness(c, x, y, table=table)
                try:
                    if found is None:
                        raise RaagDomainError('No element fixes an apex of ({}, {})'.format(x, y))
                    z, g = found
                    edge_generator_from_conjugates(raag, x, y, z, g)
                except RaagDomainError as e:
                    identities['failures'] += 1
                    identities.setdefault('first_failure', {
                        'edge': [x, y],
                        'message': str(e),
                        'equation': e.equation,
                    })
            verbose_msg('edge identities: {} failures in {}', identities['failures'], len(darts))

            words = [random_kernel_word(raag, params['length'], rng)
                    for _ in range(min(params['samples'], 20))]
            bad = sum(1 for h in words if not conjugation_formula_check(h, group.generators))
            conjugation = {'checked': len(words), 'automorphisms': len(group.generators),
                    'failures': bad}

        passed = (rewrite['failures'] == 0
                and (identities is None or identities['failures'] == 0)
                and (conjugation is None or conjugation['failures'] == 0))
        data = _artifact('raag-check', self.environment('raag-check'),
                graph={'vertices': len(raag.vertices), 'edges': raag.graph.number_of_edges()},
                rewrite=rewrite,
                edge_identities=identities,
                conjugation_formula=conjugation,
                passed=passed)
        lines = [
            'vertices: {}'.format(len(raag.vertices)),
            'edges: {}'.format(raag.graph.number_of_edges()),
            'rewrite samples: {} failures: {}'.format(rewrite['samples'], rewrite['failures']),
        ]
        if identities is not None:
            lines.append('edge identities checked: {} of {} failures: {}'.format(
                    identities['checked'], identities['directed_edges'], identities['failures']))
        if conjugation is not None:
            lines.append('conjugation formula checked: {} failures: {}'.format(
                    conjugation['checked'], conjugation['failures']))
        lines.append('passed: {}'.format(passed))
        return Outcome('raag-check', data, _text_report('RAAG', lines), passed)

    def tree_check(self):
        t = self.job.tree
        if t is None:
            raise ConfigError("This job needs a 'tree' node")
        M = make_group(t['local_groups']['M'], 'tree.local_groups.M')
        N = make_group(t['local_groups']['N'], 'tree.local_groups.N')
        ball = build_ball(t['x'], t['y'], t['radius'], t['root_side'])
        labeling = canonical_labeling(ball)
        valid = validate_labeling(ball, labeling)
        appmsg('ball of radius {} with {} vertices', t['radius'], len(ball))

        maps = enumerate_universal(ball, labeling, M, N, fix_root=True)
        maps_valid = identity_map(ball) in maps and all(is_isometry(ball, g) for g in maps)
        root_group = M if t['root_side'] == 'X' else N
        root_actions = None
        if t['radius'] >= 2:
            image = root_local_action_image(ball, labeling, M, N)
            root_actions = {
                'count': len(image),
                'equals_local_group': {p.images for p in image} == root_group.element_set(),
            }
        moving = None
        if not t['fix_root'] and t['radius'] >= 2:
            moving = len(enumerate_universal(ball, labeling, M, N, fix_root=False))
        fixators = edge_fixator_sizes(t['x'], t['y'], t['radii'], M, N, t['root_side'])
        free = {'M': acts_freely(M), 'N': acts_freely(N)}
        verbose_msg('edge fixator sizes: {}', fixators)

        passed = valid.ok and maps_valid
        if root_actions is not None:
            passed = passed and root_actions['equals_local_group']
        if free['M'] and free['N']:
            passed = passed and all(n == 1 for n in fixators.values())

        violation = None
        if not valid.ok:
            v = valid.witness
            violation = {'axiom': v.axiom, 'vertex': v.vertex, 'edges': [list(e) for e in v.edges]}
        data = _artifact('tree-check', self.environment('tree-check'),
                tree={'x': t['x'], 'y': t['y'], 'radius': t['radius'],
                    'root_side': t['root_side'], 'vertices': len(ball)},
                local_groups={
                    name: {'order': G.order(), 'degree': G.degree, 'acts_freely': free[name]}
                    for name, G in (('M', M), ('N', N))
                },
                labeling_valid=valid.ok,
                violation=violation,
                universal_maps=len(maps),
                maps_are_isometries=maps_valid,
                root_local_actions=root_actions,
                root_moving_maps=moving,
                edge_fixator_sizes={str(r): n for r, n in fixators.items()},
                passed=passed)
        lines = [
            'vertices: {}'.format(len(ball)),
            'M: order {}, acts freely: {}'.format(M.order(), free['M']),
            'N: order {}, acts freely: {}'.format(N.order(), free['N']),
            'labeling valid: {}'.format(valid.ok),
            'universal maps fixing the root: {}'.format(len(maps)),
        ]
        if root_actions is not None:
            lines.append('root local actions: {} (equal to the local group: {})'.format(
                    root_actions['count'], root_actions['equals_local_group']))
        if moving is not None:
            lines.append('root-moving maps: {}'.format(moving))
        lines += ['edge fixator at radius {}: {}'.format(r, n) for r, n in fixators.items()]
        lines.append('passed: {}'.format(passed))
        return Outcome('tree-check', data, _text_report('Tree', lines), passed)

    def search_subgroups(self):
        if not isinstance(self.job.subgroups, dict):
            raise ConfigError("search-subgroups needs a 'subgroups.search' node")
        search = self.job.subgroups['search']
        G = self.group()
        reps = find_subgroups(G, search['order'], nonabelian if search['nonabelian'] else None)
        rows = [
            {
                'size': G.order() // normalizer(G, H).order(),
                'order': H.order(),
                'generators': [format_cycles(g) for g in H.generators],
            }
            for H in reps
        ]
        found = sum(r['size'] for r in rows)
        appmsg('{} subgroups of order {}{}', found, search['order'],
                ', nonabelian' if search['nonabelian'] else '')
        data = _artifact('subgroups', self.environment('search-subgroups'),
                search=search,
                subgroups_found=found,
                classes=rows,
                passed=bool(rows))
        lines = ['subgroups found: {}'.format(found), 'classes: {}'.format(len(rows))]
        lines += ['class {}: size {}, generated by {}'.format(i + 1, r['size'],
                ' '.join(r['generators'])) for i, r in enumerate(rows)]
        return Outcome('subgroups', data, _text_report('Subgroups', lines), bool(rows))

    def run(self, command):
        if command not in COMMANDS:
            raise JobError('Unknown command {!r}'.format(command))
        return getattr(self, command.replace('-', '_'))()


RunResult = namedtuple('RunResult', 'code outcome paths')


def artifact_paths(job, command, out_dir=None):
    directory = out_dir if out_dir is not None else job.resolve(job.output['dir'])
    base = os.path.join(directory, '{}-{}'.format(job.output['name'], command))
    return base + '.json', base + '.txt'


def run(command, job, out_dir=None, workers=1):
    '''Runs one command and writes its artifacts; returns a RunResult

    Input errors propagate before anything is written.
    '''
    outcome = JobRunner(job, workers).run(command)
    json_path, text_path = artifact_paths(job, command, out_dir)
    os.makedirs(os.path.dirname(json_path) or '.', exist_ok=True)
    atomic_write(json_path, json.dumps(outcome.data, indent=2) + '\n')
    atomic_write(text_path, outcome.report)
    appmsg('wrote {}', json_path)
    code = EXIT_OK if outcome.ok else EXIT_CHECK_FAILED
    return RunResult(code, outcome, (json_path, text_path))


def main(argv=None):
    args = parse_tdlccert_args(argv)

    try:
        workers = worker_count()
        job = load_config(args.config)
        result = run(args.command, job, out_dir=args.out, workers=workers)
    except ConfigNotFoundError as e:
        errmsg('{}', e)
        sys.exit(EXIT_INPUT_ERROR)
    except ConfigError as e:
        errmsg('Config error: {}', e)
        sys.exit(EXIT_INPUT_ERROR)
    except (JobError, ValueError) as e:
        errmsg('{}: {}', type(e).__name__, e)
        sys.exit(EXIT_INPUT_ERROR)

    if args.json:
        print(json.dumps(result.outcome.data, indent=2))
    elif not g_quiet:
        sys.stdout.write(result.outcome.report)
    sys.exit(result.code)

if __name__ == '__main__':
    main()
