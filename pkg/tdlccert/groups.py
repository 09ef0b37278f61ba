'''
Named permutation groups.
'''
from itertools import product

from .perm import Permutation, PermGroup, GroupError
from .utils import parse_cycles


def _cycle(degree, points):
    images = list(range(degree))
    for a, b in zip(points, points[1:] + points[:1]):
        images[a] = b
    return Permutation(images)


def trivial(n=1):
    return PermGroup.trivial(n)


def symmetric(n):
    if n < 1:
        raise GroupError('symmetric: degree must be positive, not {}'.format(n))
    if n == 1:
        return PermGroup.trivial(1)
    if n == 2:
        return PermGroup([_cycle(2, [0, 1])])
    return PermGroup([_cycle(n, [0, 1]), _cycle(n, list(range(n)))])


def alternating(n):
    if n < 1:
        raise GroupError('alternating: degree must be positive, not {}'.format(n))
    if n < 3:
        return PermGroup.trivial(n)
    return PermGroup([_cycle(n, [0, 1, i]) for i in range(2, n)])


def cyclic(n):
    if n < 1:
        raise GroupError('cyclic: order must be positive, not {}'.format(n))
    if n == 1:
        return PermGroup.trivial(1)
    return PermGroup([_cycle(n, list(range(n)))])


def _is_prime(p):
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def psl2(p):
    '''PSL(2,p) on the projective line

    Points 0..p-1 are the field elements and point p is infinity.  The
    generators are x -> x+1 and x -> -1/x.
    '''
    if not _is_prime(p):
        raise GroupError('psl2: p must be prime, not {}'.format(p))
    inf = p
    shift = [(x + 1) % p for x in range(p)] + [inf]
    invert = [inf] + [(-pow(x, p - 2, p)) % p for x in range(1, p)] + [0]
    return PermGroup([Permutation(shift), Permutation(invert)])


def affine(p, k):
    '''The group x -> a*x + b on Z/p with a of multiplicative order k'''
    if not _is_prime(p):
        raise GroupError('affine: p must be prime, not {}'.format(p))
    if k < 1 or (p - 1) % k:
        raise GroupError('affine: k must divide p-1, not {}'.format(k))
    a = next(a for a in range(1, p)
            if all(pow(a, j, p) != 1 for j in range(1, k)) and pow(a, k, p) == 1)
    gens = [Permutation([(x + 1) % p for x in range(p)])]
    if k > 1:
        gens.append(Permutation([(a * x) % p for x in range(p)]))
    return PermGroup(gens)


def hyperoctahedral(n):
    '''Symmetries of the n-dimensional cross-polytope

    Point 2i is the vertex +e_i and point 2i+1 is -e_i.
    '''
    if n < 1:
        raise GroupError('hyperoctahedral: dimension must be positive, not {}'.format(n))
    degree = 2 * n
    gens = [_cycle(degree, [0, 1])]
    if n > 1:
        swap = list(range(degree))
        swap[0], swap[1], swap[2], swap[3] = 2, 3, 0, 1
        gens.append(Permutation(swap))
    if n > 2:
        rotate = [(i + 2) % degree for i in range(degree)]
        gens.append(Permutation(rotate))
    return PermGroup(gens)


def direct_product(*groups):
    '''Direct product acting on the disjoint union of the point sets'''
    if not groups:
        raise GroupError('direct_product: at least one factor required')
    degree = sum(G.degree for G in groups)
    gens = []
    offset = 0
    for G in groups:
        for g in G.generators:
            images = list(range(degree))
            for i, j in enumerate(g.images):
                images[offset + i] = offset + j
            gens.append(Permutation(images))
        offset += G.degree
    return PermGroup(gens, degree=degree)


def regular_action(G):
    '''G acting on its own elements by multiplication

    Elements are numbered in sorted order; generator s acts as x -> x*s.
    '''
    elements = G.elements()
    index = {x.images: i for i, x in enumerate(elements)}
    gens = [Permutation([index[(x * s).images] for x in elements]) for s in G.generators]
    return PermGroup(gens, degree=len(elements))


def cross_polytope_facets(n):
    '''Facets of the boundary of the n-dimensional cross-polytope'''
    if n < 1:
        raise GroupError('cross_polytope: dimension must be positive, not {}'.format(n))
    return sorted(tuple(2 * i + s for i, s in enumerate(signs))
            for signs in product((0, 1), repeat=n))


def from_cycles(generators, degree=0):
    '''A group from generators in 1-based cycle notation'''
    perms = [parse_cycles(text, degree) for text in generators]
    degree = max([degree] + [p.degree for p in perms])
    if degree < 1:
        raise GroupError('from_cycles: degree must be positive')
    return PermGroup([parse_cycles(text, degree) for text in generators], degree=degree)
