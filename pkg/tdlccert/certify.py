'''
Curvature and finiteness certificates for 2-complexes.

A certificate separates what is checked (premises, computed here) from what
is derived (conclusions, read off cited theorems once their premises hold).
'''
import math
from collections import deque, namedtuple
from concurrent.futures import ProcessPoolExecutor
from functools import partial

import networkx as nx

from .complex import (ComplexError, DirectedEdgeOrbits, build_coset_complex, check_edge_swap,
        coset_link, every_edge_in_triangle, extend_symmetry, is_flag, swap_witness,
        triangle_orbits)
from .constants import CONVENTIONS, schema
from .homology import homology_groups, homology_rank_and_torsion
from .perm import PermGroup, conjugate_key, group_from_elements, normalizer
from .utils import format_cycles

# Minimal link girth for the link condition on triangle complexes
LINK_GIRTH_BOUND = 6

# Boolean premises, in certificate order
PREMISES = (
    'connected',
    'bounded',
    'flag',
    'every_edge_in_triangle',
    'directed_edge_transitive',
    'edge_swap',
    'edge_swap_or_transitive',
    'link_girth_at_least_6',
    'h1_trivial',
)

Conclusion = namedtuple('Conclusion', 'name holds premises citations')

# (name, premises, citations); later rules may depend on earlier conclusions
CONCLUSION_RULES = (
    ('npc', ('flag', 'link_girth_at_least_6'),
        ('Chapter II, Proposition 5.25',)),
    ('not_simply_connected', ('npc', 'bounded', 'every_edge_in_triangle'),
        ('Chapter II, Proposition 5.10', 'Proposition 5.8')),
    ('bb_fp2_not_fp', ('h1_trivial', 'not_simply_connected'),
        ('Bestvina-Brady Main Theorem: "if and only if L is simply connected"',)),
)


def derive_conclusions(premises):
    '''Applies CONCLUSION_RULES; a conclusion holds only if every premise is True

    Nothing is derived while any premise in PREMISES is unevaluated.
    '''
    known = dict(premises)
    evaluated = all(known.get(n) is not None for n in PREMISES)
    result = []
    for name, needs, citations in CONCLUSION_RULES:
        holds = evaluated and all(known.get(n) is True for n in needs)
        known[name] = holds
        result.append(Conclusion(name, holds, needs, citations))
    return result


################################################################################
# Links and girth

def vertex_link(c, v):
    '''The subgraph induced on the neighbors of v'''
    if not 0 <= v < c.n_vertices:
        raise ComplexError('Vertex {} out of range'.format(v))
    return c.graph().subgraph(c.neighbors(v)).copy()


def girth(g):
    '''Length of a shortest cycle; math.inf for a forest'''
    return nx.girth(g)


def _link_girths(adj, vertices):
    result = []
    for v in vertices:
        nbrs = adj[v]
        link = nx.Graph()
        link.add_nodes_from(nbrs)
        link.add_edges_from((a, b) for a in nbrs for b in adj[a] & nbrs if a < b)
        result.append(nx.girth(link))
    return result


def link_girths(c, workers=1):
    '''Girth of every vertex link, in vertex order'''
    adj = tuple(c.neighbors(v) for v in range(c.n_vertices))
    vertices = list(range(c.n_vertices))
    if workers <= 1 or len(vertices) < 2 * workers:
        return _link_girths(adj, vertices)
    size = -(-len(vertices) // workers)
    chunks = [vertices[i:i+size] for i in range(0, len(vertices), size)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = pool.map(partial(_link_girths, adj), chunks)
        return [g for part in parts for g in part]


def min_link_girth(c, workers=1):
    return min(link_girths(c, workers), default=math.inf)


def girth_value(g):
    '''JSON form of a girth'''
    return 'inf' if g == math.inf else int(g)


################################################################################
# Certificate

class Certificate:
    def __init__(self, counts, premises, measurements, witnesses, environment=None,
            warnings=()):
        self.counts = dict(counts)
        self.premises = {name: premises.get(name) for name in PREMISES}
        self.measurements = dict(measurements)
        self.witnesses = dict(witnesses)
        self.environment = dict(environment or {})
        self.warnings = list(warnings)
        self.conclusions = derive_conclusions(self.premises)

    @property
    def passed(self):
        '''True iff every premise was evaluated and holds'''
        return all(v is True for v in self.premises.values())

    def conclusion(self, name):
        return next(c.holds for c in self.conclusions if c.name == name)

    def to_dict(self):
        return {
            'schema': schema('certificate'),
            'conventions': dict(CONVENTIONS),
            'environment': self.environment,
            'counts': self.counts,
            'premises': {
                name: {'status': 'checked' if v is not None else 'not evaluated', 'value': v}
                for name, v in self.premises.items()
            },
            'measurements': self.measurements,
            'witnesses': self.witnesses,
            'conclusions': [
                {
                    'name': c.name,
                    'status': 'derived',
                    'holds': c.holds,
                    'premises': list(c.premises),
                    'citations': list(c.citations),
                }
                for c in self.conclusions
            ],
            'warnings': self.warnings,
            'passed': self.passed,
        }

    def report(self):
        lines = ['Certificate']
        for name in ('vertices', 'edges', 'triangles'):
            lines.append('  {}: {}'.format(name, self.counts[name]))
        lines.append('Measurements')
        for name, v in self.measurements.items():
            lines.append('  {}: {}'.format(name, v))
        lines.append('Premises (checked)')
        for name, v in self.premises.items():
            lines.append('  {}: {}'.format(name, 'not evaluated' if v is None else v))
        lines.append('Conclusions (derived)')
        for c in self.conclusions:
            lines.append('  {}: {}  [{}]'.format(c.name, c.holds, '; '.join(c.citations)))
        for w in self.warnings:
            lines.append('warning: ' + w)
        lines.append('passed: {}'.format(self.passed))
        return '\n'.join(lines) + '\n'


def certify(c, environment=None, workers=1, expected_triangle_orbits=None, progress=None):
    '''Checks every premise on c and derives the conclusions

    Premises that need a group are left unevaluated (None) when c carries
    none.  progress, if given, is called as progress(name, value) after each
    premise.
    '''
    def report(name, value):
        if progress is not None:
            progress(name, value)
        return value

    premises = {}
    measurements = {}
    witnesses = {}
    warnings = []
    counts = {
        'vertices': c.n_vertices,
        'edges': len(c.edges),
        'triangles': len(c.triangles),
    }

    premises['connected'] = report('connected',
            c.n_vertices > 0 and nx.is_connected(c.graph()))
    premises['bounded'] = True

    flag = is_flag(c)
    premises['flag'] = report('flag', flag.ok)
    if not flag.ok:
        witnesses['flag'] = list(flag.witness)

    covered = every_edge_in_triangle(c)
    premises['every_edge_in_triangle'] = report('every_edge_in_triangle', covered.ok)
    if not covered.ok:
        witnesses['every_edge_in_triangle'] = list(covered.witness)

    group = c.symmetry_group()
    if group is None:
        measurements['directed_edge_orbits'] = None
        for name in ('directed_edge_transitive', 'edge_swap', 'edge_swap_or_transitive'):
            premises[name] = report(name, None)
    else:
        table = DirectedEdgeOrbits(c, group)
        measurements['directed_edge_orbits'] = table.count
        premises['directed_edge_transitive'] = report('directed_edge_transitive', table.count == 1)
        swap = check_edge_swap(c, table=table)
        premises['edge_swap'] = report('edge_swap', swap.ok)
        if not swap.ok:
            witnesses['edge_swap'] = list(swap.witness)
        elif table.darts:
            x, y = table.darts[0]
            z, g = swap_witness(c, x, y, table=table)
            witnesses['edge_swap_example'] = {'edge': [x, y], 'apex': z, 'element': format_cycles(g)}
        premises['edge_swap_or_transitive'] = report('edge_swap_or_transitive',
                swap.ok or table.count == 1)

    least = min_link_girth(c, workers)
    measurements['min_link_girth'] = girth_value(least)
    premises['link_girth_at_least_6'] = report('link_girth_at_least_6', least >= LINK_GIRTH_BOUND)

    _, h1, h2 = homology_groups(c)
    measurements['h1'] = {'betti': h1.betti, 'torsion': list(h1.torsion)}
    measurements['h2'] = {'betti': h2.betti, 'torsion': list(h2.torsion)}
    premises['h1_trivial'] = report('h1_trivial', h1.betti == 0 and not h1.torsion)

    action = c.action if c.action is not None else c.symmetry
    if action is not None:
        n_orbits = len(triangle_orbits(c, action))
        measurements['triangle_orbits'] = n_orbits
        if expected_triangle_orbits is not None and n_orbits != expected_triangle_orbits:
            warnings.append('{} triangle orbits, expected {}'.format(
                    n_orbits, expected_triangle_orbits))
    else:
        measurements['triangle_orbits'] = None

    return Certificate(counts, premises, measurements, witnesses, environment, warnings)


################################################################################
# Subgroup triples

def _orbit_representatives(N, subgroups):
    '''First subgroup of each orbit of N acting by conjugation'''
    by_key = {H.element_set(): H for H in subgroups}
    seen = set()
    reps = []
    for H in subgroups:
        key = H.element_set()
        if key in seen:
            continue
        reps.append(H)
        seen.add(key)
        queue = deque([key])
        while queue:
            k = queue.popleft()
            for g in N.generators:
                img = conjugate_key(k, g)
                if img not in seen and img in by_key:
                    seen.add(img)
                    queue.append(img)
    return reps


def candidate_triples(G, classes):
    '''Triples (V1, V2, V3) of pairwise distinct subgroups, up to conjugation

    V1 runs over class representatives, V2 over the orbits of N(V1) and V3
    over the orbits of N(V1) and N(V2) acting together.
    '''
    everything = [H for cls in classes for H in cls]
    for cls in classes:
        V1 = cls[0]
        N1 = normalizer(G, V1)
        for V2 in _orbit_representatives(N1, everything):
            if V2.element_set() == V1.element_set():
                continue
            N2 = normalizer(G, V2)
            N12 = group_from_elements([g for g in N1.elements() if g in N2], G.degree)
            for V3 in _orbit_representatives(N12, everything):
                if V3.element_set() in (V1.element_set(), V2.element_set()):
                    continue
                yield V1, V2, V3


def generates(G, subgroups):
    gens = [g for H in subgroups for g in H.generators]
    return PermGroup(gens, degree=G.degree).order() == G.order()


def links_pass(G, triple):
    '''Girth of each base-vertex link at least 6, and the three links alike'''
    hashes = set()
    for i in range(len(triple)):
        link = coset_link(G, triple, i)
        if nx.girth(link) < LINK_GIRTH_BOUND:
            return False
        hashes.add(nx.weisfeiler_lehman_graph_hash(link))
    return len(hashes) == 1


TripleSearch = namedtuple('TripleSearch', 'triple complex examined')


def select_triple(G, classes, progress=None):
    '''The first candidate triple whose coset complex passes every check

    Cheap filters run first: generation, then the base-vertex links, then
    flagness, then directed-edge transitivity after extending the symmetry,
    and H1 last.  Returns a TripleSearch, with triple None if nothing passes.
    '''
    def note(msg, *args):
        if progress is not None:
            progress(msg.format(*args))

    examined = 0
    for triple in candidate_triples(G, classes):
        examined += 1
        if not generates(G, triple) or not links_pass(G, triple):
            continue
        note('candidate {}: links pass, building the complex', examined)
        c = build_coset_complex(G, list(triple))
        if not is_flag(c).ok or not every_edge_in_triangle(c).ok:
            continue
        c = extend_symmetry(c)
        orbits = DirectedEdgeOrbits(c, c.symmetry).count
        note('candidate {}: {} directed-edge orbits after extension', examined, orbits)
        if orbits != 1:
            continue
        h1 = homology_rank_and_torsion(c, 1)
        note('candidate {}: H1 betti {} torsion {}', examined, h1.betti, h1.torsion)
        if h1.betti == 0 and not h1.torsion:
            return TripleSearch(triple, c, examined)
    return TripleSearch(None, None, examined)
