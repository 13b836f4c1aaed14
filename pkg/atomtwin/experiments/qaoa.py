# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
QAOA MaxCut.

Angles are in half turns: layer C{k} applies C{ZZ(pi gamma_k)} on every edge
and then the global mixer C{GR(0, pi beta_k)}. The register starts in
C{|+..+>} from a global C{GR(pi/2, pi/2)}. The score is the approximation
ratio, the expected cut over the maximum cut.

@since: 0.1
"""

import math

import numpy as np
from scipy import optimize

import atomtwin
from atomtwin import compiler, experiments, qsim, util


__all__ = [
    'GraphSpec',
    'GRAPHS',
    'QaoaResult',
    'maxcut_oracle',
    'qaoa_program',
    'expected_cut',
    'approximation_ratio',
    'qaoa_run',
    'qaoa_optimize',
]

#: Largest graph the exhaustive oracle accepts.
MAX_VERTICES = 20

#: Default number of optimiser restarts.
RESTARTS = 16

#: Sampling box of the restarts, the period of each angle.
BETA_PERIOD = 1.0
GAMMA_PERIOD = 2.0

#: Hand tuned depth one angles, C{(betas, gammas)} by C{(graph, p)}.
REFERENCE_ANGLES = {
    ('t4', 1): ([0.750], [0.696]),
    ('line3', 1): ([1.25], [1.67]),
}


class GraphSpec(object):
    """
    An undirected simple graph on vertices C{0 .. n-1}.
    """

    def __init__(self, n_vertices, edges, name=None):
        self.n_vertices = int(n_vertices)
        self.name = name

        if self.n_vertices < 1:
            raise atomtwin.DomainError('A graph needs a vertex')

        normalised = []

        for a, b in edges:
            a, b = int(a), int(b)

            if a == b:
                raise atomtwin.DomainError('Self loop on vertex %d' % (a,))

            if not (0 <= a < self.n_vertices and 0 <= b < self.n_vertices):
                raise atomtwin.DomainError('Edge %d-%d outside the graph' % (
                    a, b))

            edge = (min(a, b), max(a, b))

            if edge in normalised:
                raise atomtwin.DomainError('Duplicate edge %d-%d' % edge)

            normalised.append(edge)

        self.edges = tuple(normalised)

    def cut_values(self):
        """
        Cut size of every partition, indexed by bitstring (vertex 0 most
        significant).
        """
        n = self.n_vertices
        idx = np.arange(2 ** n)
        cuts = np.zeros(2 ** n, dtype=np.int64)

        for a, b in self.edges:
            cuts += ((idx >> (n - 1 - a)) ^ (idx >> (n - 1 - b))) & 1

        return cuts

    def __repr__(self):
        return 'GraphSpec(%d, %r, name=%r)' % (self.n_vertices, self.edges,
                                               self.name)


#: The benchmark graphs, each with a default layout of the same name.
GRAPHS = {
    'edge2': GraphSpec(2, [(0, 1)], name='edge2'),
    'line3': GraphSpec(3, [(0, 1), (1, 2)], name='line3'),
    't4': GraphSpec(4, [(0, 1), (1, 2), (1, 3)], name='t4'),
}


def maxcut_oracle(graph):
    """
    Exhaustive MaxCut.

    @return: C{{'s_max', 'partitions'}}, the optimal partitions as
        bitstrings.
    @raise DomainError: More than L{MAX_VERTICES} vertices.
    """
    if graph.n_vertices > MAX_VERTICES:
        raise atomtwin.DomainError(
            '%d vertices exceed the oracle cap of %d' % (
                graph.n_vertices, MAX_VERTICES))

    cuts = graph.cut_values()
    s_max = int(cuts.max())
    best = np.flatnonzero(cuts == s_max)

    return {
        's_max': s_max,
        'partitions': [util.format_bits(i, graph.n_vertices) for i in best],
    }


def _check_angles(betas, gammas):
    betas = [float(b) for b in betas]
    gammas = [float(g) for g in gammas]

    if len(betas) != len(gammas):
        raise atomtwin.DomainError('%d betas for %d gammas' % (
            len(betas), len(gammas)))

    return betas, gammas


def qaoa_program(graph, betas, gammas):
    """
    The depth C{p = len(betas)} QAOA program, measurement included.
    """
    betas, gammas = _check_angles(betas, gammas)
    program = [compiler.GlobalRphi(math.pi / 2, math.pi / 2)]

    for beta, gamma in zip(betas, gammas):
        program.extend(
            compiler.ZZ(a, b, math.pi * gamma) for a, b in graph.edges)
        program.append(compiler.GlobalRphi(0.0, math.pi * beta))

    program.append(compiler.Measure())

    return program


def _final_probs(graph, betas, gammas, zz=None):
    n = graph.n_vertices

    if zz is None:
        zz = _zz_sum(graph)

    state = np.full(2 ** n, 2 ** (-n / 2.0), dtype=complex)

    for beta, gamma in zip(betas, gammas):
        state = state * np.exp(-0.5j * math.pi * gamma * zz)
        mixer = qsim.rotation_matrix(0.0, math.pi * beta)
        t = state.reshape((2,) * n)

        for q in range(n):
            t = np.moveaxis(np.tensordot(mixer, t, axes=([1], [q])), 0, q)

        state = t.reshape(-1)

    return np.abs(state) ** 2


def _zz_sum(graph):
    # sum over edges of z_a z_b, a cut edge gives -1
    return len(graph.edges) - 2 * graph.cut_values()


def expected_cut(graph, betas, gammas):
    """
    The exact expected cut of the QAOA state, straight from the diagonal
    cost layer and the product mixer.
    """
    betas, gammas = _check_angles(betas, gammas)

    return float(np.dot(_final_probs(graph, betas, gammas),
                        graph.cut_values()))


def approximation_ratio(graph, betas, gammas):
    s_max = maxcut_oracle(graph)['s_max']

    if not s_max:
        return 1.0

    return expected_cut(graph, betas, gammas) / s_max


def histogram_ratio(graph, histogram):
    """
    Approximation ratio of sampled partitions.
    """
    s_max = maxcut_oracle(graph)['s_max']
    cuts = graph.cut_values()
    total = sum(cuts[int(bits, 2)] * count
                for bits, count in histogram.counts.items())

    if not s_max:
        return 1.0

    return total / float(histogram.shots * s_max)


class QaoaResult(object):
    """
    @ivar ratio: Approximation ratio of the exact simulated distribution of
        the compiled circuit (ideal runs) or of the shots (noisy runs).
    @ivar sampled_ratio: Approximation ratio of the shots.
    @ivar expected_ratio: Approximation ratio from L{expected_cut}, the
        independent cross check.
    """

    def __init__(self, graph, betas, gammas, histogram, ratio, sampled_ratio,
                 expected_ratio, circuit):
        self.graph = graph
        self.betas = list(betas)
        self.gammas = list(gammas)
        self.histogram = histogram
        self.ratio = ratio
        self.sampled_ratio = sampled_ratio
        self.expected_ratio = expected_ratio
        self.circuit = circuit

    def __repr__(self):
        return '<QaoaResult p=%d ratio=%.4f>' % (len(self.betas), self.ratio)


def qaoa_run(graph, betas, gammas, shots, noise=None, seed=0, layout=None,
             timing=None, logger=None):
    """
    Compiles and runs QAOA on C{graph}.

    @param layout: Defaults to the layout named after the graph.
    @rtype: L{QaoaResult}
    @raise ConnectivityError: An edge joins sites sharing neither row nor
        column.
    """
    if isinstance(graph, str):
        graph = GRAPHS[graph]

    betas, gammas = _check_angles(betas, gammas)

    if layout is None:
        layout = experiments.get_layout(graph.name)

    circuit = compiler.compile(qaoa_program(graph, betas, gammas), layout,
                               graph.n_vertices, logger=logger)
    dist, histogram = experiments.simulate(circuit, shots, seed, noise,
                                           timing, logger)

    oracle = maxcut_oracle(graph)
    sampled = histogram_ratio(graph, histogram)
    expected = approximation_ratio(graph, betas, gammas)

    if dist is not None:
        ratio = dist.expectation(graph.cut_values()) / max(oracle['s_max'], 1)
    else:
        ratio = sampled

    if logger:
        logger.info('QAOA %s p=%d: ratio %.4f (sampled %.4f)', graph.name,
                    len(betas), ratio, sampled)

    return QaoaResult(graph, betas, gammas, histogram, ratio, sampled,
                      expected, circuit)


def qaoa_optimize(graph, p, restarts=RESTARTS, seed=0, logger=None):
    """
    Maximises the ideal expected cut over depth C{p} angles.

    Each restart draws angles uniformly over one period and runs a
    Nelder-Mead simplex; the best restart wins.

    @return: C{(betas, gammas, ratio)}.
    """
    if isinstance(graph, str):
        graph = GRAPHS[graph]

    if p < 1:
        raise atomtwin.DomainError('Depth must be at least 1')

    oracle = maxcut_oracle(graph)
    cuts = graph.cut_values()
    zz = _zz_sum(graph)
    s_max = max(oracle['s_max'], 1)

    def cost(x):
        probs = _final_probs(graph, x[:p], x[p:], zz)

        return -float(np.dot(probs, cuts)) / s_max

    rng = util.make_rng(seed)
    best = None

    for k in range(restarts):
        start = np.concatenate([
            rng.uniform(0, BETA_PERIOD, p),
            rng.uniform(0, GAMMA_PERIOD, p),
        ])
        fit = optimize.minimize(
            cost, start, method='Nelder-Mead',
            options={'xatol': 1e-8, 'fatol': 1e-10, 'maxiter': 4000 * p})

        if best is None or fit.fun < best.fun:
            best = fit

        if logger:
            logger.debug('restart %d: ratio %.6f', k, -fit.fun)

    betas = np.mod(best.x[:p], BETA_PERIOD)
    gammas = np.mod(best.x[p:], GAMMA_PERIOD)

    return ([float(b) for b in betas], [float(g) for g in gammas],
            -float(best.fun))
