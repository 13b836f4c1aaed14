# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Atom rearrangement planning.

After a loading image the detected atoms are moved into the target pattern.
Sources are matched to targets by the Hungarian algorithm on squared site
distances, then the moves are ordered so that no atom is ever moved onto an
occupied site.

@since: 0.1
"""

import numpy as np

import atomtwin
from atomtwin import util
from atomtwin.circuit import SiteCoord, as_site


__all__ = [
    'hungarian',
    'ArrayOccupancy',
    'MovePlan',
    'plan_rearrangement',
    'random_occupancy',
]


def hungarian(cost):
    """
    Minimum cost assignment of every target column to a distinct source row.

    This is the shortest augmenting path form with row and column potentials;
    one target is added per outer iteration, in C{O(m^2 n)}.

    @param cost: An C{n x m} matrix, C{n >= m}.
    @return: C{(rows, total)}; C{rows[j]} is the source row assigned to
        target column C{j}.
    @raise DomainError: More targets than sources, or costs that are not
        finite and nonnegative.
    """
    cost = np.asarray(cost, dtype=float)

    if cost.ndim != 2:
        raise atomtwin.DomainError('Cost must be a matrix')

    n, m = cost.shape

    if m > n:
        raise atomtwin.DomainError(
            '%d targets cannot be filled from %d sources' % (m, n))

    if not np.all(np.isfinite(cost)) or np.any(cost < 0):
        raise atomtwin.DomainError('Costs must be finite and nonnegative')

    if m == 0:
        return [], 0.0

    # targets are the rows of the working matrix, sources its columns
    a = cost.T
    u = np.zeros(m + 1)
    v = np.zeros(n + 1)
    owner = np.zeros(n + 1, dtype=int)
    way = np.zeros(n + 1, dtype=int)

    for i in range(1, m + 1):
        owner[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)

        while True:
            used[j0] = True
            i0 = owner[j0]
            free = ~used
            free[0] = False

            cur = a[i0 - 1] - u[i0] - v[1:]
            better = free[1:] & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0

            masked = np.where(free, minv, np.inf)
            j1 = int(np.argmin(masked))
            delta = masked[j1]

            u[owner[used]] += delta
            v[used] -= delta
            minv[~used] -= delta

            j0 = j1

            if owner[j0] == 0:
                break

        while j0:
            j1 = way[j0]
            owner[j0] = owner[j1]
            j0 = j1

    rows = [0] * m

    for j in range(1, n + 1):
        if owner[j]:
            rows[owner[j] - 1] = j - 1

    total = float(sum(cost[rows[j], j] for j in range(m)))

    return rows, total


def _check_sites(sites, rows, cols, name):
    sites = frozenset(as_site(s) for s in sites)

    for site in sites:
        if site.row >= rows or site.col >= cols:
            raise atomtwin.DomainError('%s site %s outside the %dx%d array' % (
                name, site, rows, cols))

    return sites


class ArrayOccupancy(object):
    """
    Loaded and wanted sites of a C{rows x cols} array.

    @ivar occupied: Sites holding an atom.
    @ivar targets: Sites that must hold an atom after rearrangement.
    """

    def __init__(self, occupied, targets, rows=7, cols=7):
        self.rows = int(rows)
        self.cols = int(cols)

        if self.rows < 1 or self.cols < 1:
            raise atomtwin.DomainError('Empty array')

        self.occupied = _check_sites(occupied, self.rows, self.cols,
                                     'Occupied')
        self.targets = _check_sites(targets, self.rows, self.cols, 'Target')

    @property
    def feasible(self):
        return len(self.occupied) >= len(self.targets)

    def sites(self):
        """
        Every site of the array in row-major order.
        """
        return [SiteCoord(r, c) for r in range(self.rows)
                for c in range(self.cols)]

    def __repr__(self):
        return '<ArrayOccupancy %dx%d occupied=%d targets=%d>' % (
            self.rows, self.cols, len(self.occupied), len(self.targets))


class MovePlan(object):
    """
    An ordered list of single atom moves.

    @ivar moves: C{(source, destination)} pairs in execution order.
    @ivar total_cost: Summed squared distance of the assignment.
    @ivar assignment: C{{target: source}} as matched.
    """

    def __init__(self, moves, total_cost, assignment=None):
        self.moves = [(as_site(a), as_site(b)) for a, b in moves]
        self.total_cost = total_cost
        self.assignment = dict(assignment or {})

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def execute(self, occupied):
        """
        Replays the moves on C{occupied}.

        @return: The final occupied sites.
        @raise DomainError: A move starts on an empty site or ends on an
            occupied one.
        """
        sites = set(as_site(s) for s in occupied)

        for src, dst in self.moves:
            if src not in sites:
                raise atomtwin.DomainError('No atom at %s to move' % (src,))

            if dst in sites:
                raise atomtwin.DomainError('Site %s is occupied' % (dst,))

            sites.remove(src)
            sites.add(dst)

        return frozenset(sites)

    def __repr__(self):
        return '<MovePlan moves=%d cost=%r>' % (len(self.moves),
                                                self.total_cost)


def _scratch_site(occ, occupied, near):
    """
    The free non-target site nearest to C{near}, ties broken row-major.
    """
    candidates = [
        s for s in occ.sites()
        if s not in occupied and s not in occ.targets
    ]

    if not candidates:
        raise atomtwin.DomainError('No free site to break a move cycle')

    return min(candidates, key=lambda s: (s.distance2(near), s))


def order_moves(occ, pairs):
    """
    Orders C{(source, destination)} pairs so that every destination is free
    when its move runs.

    A move waits for the atom on its destination to leave. Waiting chains are
    run from their free end; a closed cycle is opened by parking one atom on
    a scratch site.
    """
    occupied = set(occ.occupied)
    pending = sorted(pairs)
    ordered = []

    while pending:
        progress = False

        for move in list(pending):
            src, dst = move

            if dst in occupied:
                continue

            occupied.remove(src)
            occupied.add(dst)
            ordered.append(move)
            pending.remove(move)
            progress = True

        if progress:
            continue

        src, dst = pending[0]
        scratch = _scratch_site(occ, occupied, src)

        occupied.remove(src)
        occupied.add(scratch)
        ordered.append((src, scratch))
        pending[0] = (scratch, dst)

    return ordered


def plan_rearrangement(occ, **kwargs):
    """
    Plans the moves that fill every target of C{occ}.

    @type occ: L{ArrayOccupancy}
    @rtype: L{MovePlan}
    @raise DomainError: Fewer atoms than targets, or a move cycle with no
        free site to break it.
    """
    logger = kwargs.pop('logger', None)

    if not occ.feasible:
        raise atomtwin.DomainError('%d atoms cannot fill %d targets' % (
            len(occ.occupied), len(occ.targets)))

    sources = sorted(occ.occupied)
    targets = sorted(occ.targets)

    if not targets:
        return MovePlan([], 0.0)

    src = np.array(sources)
    dst = np.array(targets)
    cost = ((src[:, None, :] - dst[None, :, :]) ** 2).sum(axis=2)

    rows, total = hungarian(cost)
    assignment = dict((targets[j], sources[i]) for j, i in enumerate(rows))
    pairs = [(s, t) for t, s in assignment.items() if s != t]
    moves = order_moves(occ, pairs)

    if logger:
        logger.debug('%d atoms to %d targets: %d moves, cost %g',
                     len(sources), len(targets), len(moves), total)

    return MovePlan(moves, total, assignment)


def random_occupancy(rows, cols, fill, targets, seed):
    """
    A stochastically loaded array, each site holding an atom with
    probability C{fill}.
    """
    if not 0 <= fill <= 1:
        raise atomtwin.DomainError('Fill %r is not a probability' % (fill,))

    rng = util.make_rng(seed)
    loaded = rng.random((rows, cols)) < fill
    occupied = [SiteCoord(r, c) for r, c in zip(*np.nonzero(loaded))]

    return ArrayOccupancy(occupied, targets, rows, cols)
