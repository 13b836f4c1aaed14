# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Lowering of abstract gates to the native gate set.

Single qubit gates are built from two global microwave pulses around a local
Stark shift rotation::

    R_phi(theta) = GR(phi + pi/2, pi/2) . RZ(theta) . GR(phi + pi/2, -pi/2)

(right-most first), the global pulses cancel on every other qubit. Two qubit
gates go through C{C_Z}, which is only available between sites sharing a row
or a column of the array.

The inverse quantum Fourier transform absorbs its bit reversal swaps into a
relabelling of the register, the final placement becomes the readout
permutation of the compiled circuit.

@since: 0.1
"""

import cmath
import math

import numpy as np

import atomtwin
from atomtwin import qsim, util
from atomtwin.circuit import (
    GlobalRot, LocalRz, Cz, MeasureAll, NativeCircuit, as_site)


__all__ = [
    'AbstractGate',
    'H',
    'X',
    'Rz',
    'Ry',
    'Rphi',
    'CNOT',
    'CZ',
    'ZZ',
    'CPhase',
    'ControlledU',
    'GlobalRphi',
    'QFTInv',
    'SwapIntoQFTInv',
    'Measure',
    'Layout',
    'TimingConfig',
    'synth_local_rot',
    'decompose_cnot',
    'decompose_zz',
    'compile',
    'cancel',
    'estimate_duration',
    'program_unitary',
    'parse_program',
]

HALF_PI = math.pi / 2

#: Angles closer than this to a multiple of 2 pi count as zero.
ANGLE_TOLERANCE = 1e-12


class AbstractGate(object):
    """
    Base class for abstract (hardware independent) gates.

    @ivar qubits: Logical qubit indices, distinct.
    """

    name = None
    params = ()

    def __init__(self, *qubits):
        qubits = tuple(int(q) for q in qubits)

        for q in qubits:
            if q < 0:
                raise atomtwin.CompileError('Negative qubit %d in %s' % (
                    q, self.name))

        if len(set(qubits)) != len(qubits):
            raise atomtwin.CompileError('Repeated qubits %r in %s' % (
                qubits, self.name))

        self.qubits = qubits

    def matrix(self):
        """
        The gate's matrix on C{self.qubits}, qubit order as listed.
        """
        raise NotImplementedError

    def key(self):
        return (self.name, self.qubits) + tuple(
            getattr(self, p) for p in self.params)

    def __eq__(self, other):
        if not isinstance(other, AbstractGate):
            return NotImplemented

        return self.key() == other.key()

    def __ne__(self, other):
        result = self.__eq__(other)

        if result is NotImplemented:
            return result

        return not result

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        args = [str(q) for q in self.qubits]
        args += ['%s=%r' % (p, getattr(self, p)) for p in self.params]

        return '%s(%s)' % (self.name, ', '.join(args))


class H(AbstractGate):
    name = 'H'

    def __init__(self, q):
        AbstractGate.__init__(self, q)

    def matrix(self):
        return np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


class X(AbstractGate):
    name = 'X'

    def __init__(self, q):
        AbstractGate.__init__(self, q)

    def matrix(self):
        return np.array([[0, 1], [1, 0]], dtype=complex)


class Rz(AbstractGate):
    name = 'Rz'
    params = ('theta',)

    def __init__(self, q, theta):
        AbstractGate.__init__(self, q)

        self.theta = float(theta)

    def matrix(self):
        return qsim.rz_matrix(self.theta)


class Rphi(AbstractGate):
    """
    C{exp(-i theta/2 (cos(phi) X + sin(phi) Y))} on one qubit.
    """

    name = 'Rphi'
    params = ('phi', 'theta')

    def __init__(self, q, phi, theta):
        AbstractGate.__init__(self, q)

        self.phi = float(phi)
        self.theta = float(theta)

    def matrix(self):
        return qsim.rotation_matrix(self.phi, self.theta)


class Ry(Rphi):
    name = 'Ry'
    params = ('theta',)

    def __init__(self, q, theta):
        Rphi.__init__(self, q, HALF_PI, theta)


class CNOT(AbstractGate):
    name = 'CNOT'

    def __init__(self, c, t):
        AbstractGate.__init__(self, c, t)

    def matrix(self):
        return np.array([
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
        ], dtype=complex)


class CZ(AbstractGate):
    name = 'CZ'

    def __init__(self, a, b):
        AbstractGate.__init__(self, a, b)

    def matrix(self):
        return qsim.CZ_MATRIX.copy()


class ZZ(AbstractGate):
    """
    C{exp(-i gamma/2 Z.Z)}.
    """

    name = 'ZZ'
    params = ('gamma',)

    def __init__(self, a, b, gamma):
        AbstractGate.__init__(self, a, b)

        self.gamma = float(gamma)

    def matrix(self):
        z = np.array([1, -1, -1, 1])

        return np.diag(np.exp(-0.5j * self.gamma * z))


class CPhase(AbstractGate):
    """
    C{diag(1, 1, 1, exp(i lam))}.
    """

    name = 'CPhase'
    params = ('lam',)

    def __init__(self, c, t, lam):
        AbstractGate.__init__(self, c, t)

        self.lam = float(lam)

    def matrix(self):
        return np.diag([1, 1, 1, cmath.exp(1j * self.lam)])


class ControlledU(AbstractGate):
    """
    An arbitrary single qubit unitary on C{t} controlled by C{c}.
    """

    name = 'ControlledU'

    def __init__(self, c, t, unitary):
        AbstractGate.__init__(self, c, t)

        u = np.asarray(unitary, dtype=complex)

        if u.shape != (2, 2) or not np.allclose(
                u.conj().T @ u, np.eye(2), atol=1e-10):
            raise atomtwin.CompileError('ControlledU needs a 2x2 unitary')

        self.unitary = u

    def key(self):
        return (self.name, self.qubits, tuple(self.unitary.reshape(-1)))

    def matrix(self):
        m = np.eye(4, dtype=complex)
        m[2:, 2:] = self.unitary

        return m


class GlobalRphi(AbstractGate):
    """
    A whole register microwave pulse, C{Rphi(phi, theta)} on every qubit.
    """

    name = 'GlobalRphi'
    params = ('phi', 'theta')

    def __init__(self, phi, theta):
        AbstractGate.__init__(self)

        self.phi = float(phi)
        self.theta = float(theta)

    def matrix(self):
        return qsim.rotation_matrix(self.phi, self.theta)


class QFTInv(AbstractGate):
    """
    The inverse quantum Fourier transform on C{register}, read most
    significant qubit first.
    """

    name = 'QFTInv'

    def __init__(self, *register):
        if len(register) == 1 and not isinstance(register[0], int):
            register = tuple(register[0])

        AbstractGate.__init__(self, *register)

        if not self.qubits:
            raise atomtwin.CompileError('QFTInv needs a register')

    def matrix(self):
        dim = 2 ** len(self.qubits)
        j = np.arange(dim)

        return np.exp(-2j * math.pi * np.outer(j, j) / dim) / math.sqrt(dim)


#: The swap network of the inverse QFT is always realised as a relabelling.
SwapIntoQFTInv = QFTInv


class Measure(AbstractGate):
    name = 'Measure'

    def __init__(self):
        AbstractGate.__init__(self)


class Layout(object):
    """
    Maps logical qubit C{i} to C{sites[i]}.

    @ivar name: Group name in the machine config, if any.
    @ivar pairs: Declared C{C_Z} couplings, validated against the row or
        column rule.
    """

    def __init__(self, sites, name=None, pairs=()):
        if isinstance(sites, dict):
            keys = sorted(sites)

            if keys != list(range(len(keys))):
                raise atomtwin.CompileError(
                    'Layout qubits must be 0..n-1, got %r' % (keys,))

            sites = [sites[k] for k in keys]

        self.sites = tuple(as_site(s) for s in sites)
        self.name = name

        if len(set(self.sites)) != len(self.sites):
            raise atomtwin.CompileError('Layout %s is not injective: %r' % (
                name or '', self.sites))

        self.pairs = tuple(tuple(p) for p in pairs)

        for a, b in self.pairs:
            self.check_pair(a, b)

    @classmethod
    def from_sites(cls, *sites, **kwargs):
        return cls(sites, **kwargs)

    def __len__(self):
        return len(self.sites)

    def __iter__(self):
        return iter(self.sites)

    def site(self, q):
        """
        The site of logical qubit C{q}.

        @raise CompileError: C{q} is not covered by this layout.
        """
        if not 0 <= q < len(self.sites):
            raise atomtwin.CompileError(
                'Qubit %d is not covered by layout %s (%d sites)' % (
                    q, self.name or '', len(self.sites)))

        return self.sites[q]

    def check_pair(self, a, b):
        """
        @raise ConnectivityError: The sites of C{a} and C{b} share neither a
            row nor a column.
        """
        sa = self.site(a)
        sb = self.site(b)

        if not sa.shares_line(sb):
            raise atomtwin.ConnectivityError(sa, sb)

    def __repr__(self):
        return 'Layout(%r, name=%r)' % (self.sites, self.name)


class TimingConfig(object):
    """
    Pulse timing of the machine.

    @ivar rabi_frequency: Microwave Rabi frequency (Hz).
    @ivar stark_shift: Differential Stark shift of the local C{R_Z} beam (Hz).
    @ivar cz_duration: Duration of a compensated C{C_Z} (s).
    @ivar latency: Dead time between consecutive operations (s).
    """

    def __init__(self, rabi_frequency=76.5e3, stark_shift=600e3,
                 cz_duration=2e-6, latency=1e-6):
        self.rabi_frequency = float(rabi_frequency)
        self.stark_shift = float(stark_shift)
        self.cz_duration = float(cz_duration)
        self.latency = float(latency)

        for field in ('rabi_frequency', 'stark_shift', 'cz_duration',
                      'latency'):
            value = getattr(self, field)

            if not (value > 0 and math.isfinite(value)):
                raise atomtwin.ConfigError(
                    'must be positive, got %r' % (value,),
                    field='timing.%s' % (field,))

    def op_duration(self, op):
        """
        Pulse time of a single native operation.
        """
        if isinstance(op, GlobalRot):
            return abs(op.theta) / (2 * math.pi * self.rabi_frequency)
        elif isinstance(op, LocalRz):
            # the Stark shift has a fixed sign, negative angles wrap
            return (op.theta % (2 * math.pi)) / (
                2 * math.pi * self.stark_shift)
        elif isinstance(op, Cz):
            return self.cz_duration

        return 0.0


def synth_local_rot(site, phi, theta):
    """
    C{Rphi(phi, theta)} on the qubit at C{site} and identity elsewhere, from
    two global pulses and one local C{R_Z}.
    """
    return [
        GlobalRot(phi + HALF_PI, -HALF_PI),
        LocalRz(site, theta),
        GlobalRot(phi + HALF_PI, HALF_PI),
    ]


def synth_hadamard(site):
    """
    C{H = Ry(pi/2) . Z} up to a global phase: C{R_Z(pi)} then a local
    C{Ry(pi/2)}.
    """
    return [LocalRz(site, math.pi)] + synth_local_rot(site, HALF_PI, HALF_PI)


def decompose_cnot(control, target):
    """
    C{CNOT = (I x H) C_Z (I x H)} on sites C{control} and C{target}.
    """
    control = as_site(control)
    target = as_site(target)

    if control == target:
        raise atomtwin.CompileError('CNOT on identical sites %s' % (control,))

    return (
        synth_hadamard(target) +
        [Cz(control, target)] +
        synth_hadamard(target)
    )


def decompose_zz(a, b, gamma):
    """
    C{exp(-i gamma/2 Z.Z)} as C{CNOT . R_Z(gamma) . CNOT}.
    """
    return (
        decompose_cnot(a, b) +
        [LocalRz(b, gamma)] +
        decompose_cnot(a, b)
    )


def zyz_angles(u):
    """
    Returns C{(alpha, beta, gamma, delta)} with C{u = exp(i alpha) Rz(beta)
    Ry(gamma) Rz(delta)}.
    """
    u = np.asarray(u, dtype=complex)
    alpha = cmath.phase(np.linalg.det(u)) / 2.0
    v = u * cmath.exp(-1j * alpha)

    gamma = 2 * math.atan2(abs(v[1, 0]), abs(v[0, 0]))

    if abs(v[1, 0]) < 1e-12:
        beta = 2 * cmath.phase(v[1, 1])
        delta = 0.0
    elif abs(v[0, 0]) < 1e-12:
        beta = 2 * cmath.phase(v[1, 0])
        delta = 0.0
    else:
        plus = 2 * cmath.phase(v[1, 1])
        minus = 2 * cmath.phase(v[1, 0])
        beta = (plus + minus) / 2.0
        delta = (plus - minus) / 2.0

    return alpha, beta, gamma, delta


def _is_zero(theta):
    return abs(util.wrap_angle(theta)) < ANGLE_TOLERANCE


_NO_MERGE = object()


def _merge(a, b):
    """
    Merges two adjacent operations. Returns the merged op, C{None} if they
    cancel, or C{_NO_MERGE}.
    """
    if isinstance(a, GlobalRot) and isinstance(b, GlobalRot):
        delta = util.wrap_angle(b.phi - a.phi)

        if abs(delta) < ANGLE_TOLERANCE:
            theta = a.theta + b.theta
        elif abs(abs(delta) - math.pi) < ANGLE_TOLERANCE:
            theta = a.theta - b.theta
        else:
            return _NO_MERGE

        if _is_zero(theta):
            return None

        return GlobalRot(a.phi, theta)

    if isinstance(a, LocalRz) and isinstance(b, LocalRz):
        if a.site != b.site:
            return _NO_MERGE

        theta = a.theta + b.theta

        if _is_zero(theta):
            return None

        return LocalRz(a.site, theta)

    if isinstance(a, Cz) and isinstance(b, Cz) and a == b:
        return None

    return _NO_MERGE


def cancel(ops):
    """
    Peephole pass: drops zero angle operations, merges adjacent global
    rotations about the same axis (so inverse pairs vanish), merges adjacent
    C{R_Z} on one site and removes adjacent identical C{C_Z} pairs.

    The result never has more operations than C{ops} and has the same
    unitary up to a global phase.
    """
    out = []

    for op in ops:
        if isinstance(op, (GlobalRot, LocalRz)) and _is_zero(op.theta):
            continue

        while out:
            merged = _merge(out[-1], op)

            if merged is _NO_MERGE:
                break

            out.pop()
            op = merged

            if op is None:
                break

        if op is not None:
            out.append(op)

    return out


class Compiler(object):
    """
    Lowers one abstract program onto a L{Layout}.

    @ivar placement: C{placement[q]} is the register index currently holding
        logical qubit C{q}.
    """

    def __init__(self, layout, n_qubits, logger=None):
        if not isinstance(layout, Layout):
            layout = Layout(layout)

        if n_qubits > len(layout):
            raise atomtwin.CompileError(
                'Layout %s covers %d qubits, program needs %d' % (
                    layout.name or '', len(layout), n_qubits))

        self.layout = layout
        self.n_qubits = n_qubits
        self.sites = layout.sites[:n_qubits]
        self.placement = list(range(n_qubits))
        self.ops = []
        self.logger = logger

        self._func_cache = {}

    def site(self, q):
        if not 0 <= q < self.n_qubits:
            raise atomtwin.CompileError('Qubit %d outside the program' % (q,))

        return self.sites[self.placement[q]]

    def getTypeFunc(self, gate):
        return getattr(self, 'lower' + type(gate).__name__, None)

    def lowerElement(self, gate):
        key = type(gate)

        try:
            func = self._func_cache[key]
        except KeyError:
            func = self.getTypeFunc(gate)

            if func is None:
                raise atomtwin.CompileError('Unable to lower %r' % (gate,))

            self._func_cache[key] = func

        func(gate)

    def emit(self, ops):
        self.ops.extend(ops)

    def _pair(self, a, b):
        sa = self.site(a)
        sb = self.site(b)

        if not sa.shares_line(sb):
            raise atomtwin.ConnectivityError(sa, sb)

        return sa, sb

    def lowerH(self, gate):
        self.emit(synth_hadamard(self.site(gate.qubits[0])))

    def lowerX(self, gate):
        self.emit(synth_local_rot(self.site(gate.qubits[0]), 0.0, math.pi))

    def lowerRz(self, gate):
        self.emit([LocalRz(self.site(gate.qubits[0]), gate.theta)])

    def lowerRphi(self, gate):
        self.emit(synth_local_rot(
            self.site(gate.qubits[0]), gate.phi, gate.theta))

    lowerRy = lowerRphi

    def lowerCZ(self, gate):
        self.emit([Cz(*self._pair(*gate.qubits))])

    def lowerCNOT(self, gate):
        self.emit(decompose_cnot(*self._pair(*gate.qubits)))

    def lowerZZ(self, gate):
        sa, sb = self._pair(*gate.qubits)

        self.emit(decompose_zz(sa, sb, gate.gamma))

    def lowerCPhase(self, gate):
        c, t = gate.qubits
        lam = util.wrap_angle(gate.lam)

        if abs(lam) < ANGLE_TOLERANCE:
            return

        if abs(abs(lam) - math.pi) < ANGLE_TOLERANCE:
            self.lowerCZ(CZ(c, t))

            return

        sc, st = self._pair(c, t)

        # diag(1, 1, 1, e^{i lam}) = Rz_c(lam/2) Rz_t(lam/2) ZZ(-lam/2)
        self.emit([LocalRz(sc, lam / 2.0), LocalRz(st, lam / 2.0)])
        self.emit(decompose_zz(sc, st, -lam / 2.0))

    def lowerControlledU(self, gate):
        c, t = gate.qubits
        u = gate.unitary

        if abs(u[0, 1]) < 1e-12 and abs(u[1, 0]) < 1e-12:
            # diag(a, b) = a diag(1, b/a): a phase on the control and a
            # controlled phase
            a = cmath.phase(u[0, 0])
            lam = cmath.phase(u[1, 1]) - a

            if not _is_zero(a):
                self.emit([LocalRz(self.site(c), a)])

            self.lowerCPhase(CPhase(c, t, lam))

            return

        alpha, beta, gamma, delta = zyz_angles(u)
        sc, st = self._pair(c, t)

        self.emit([LocalRz(st, (delta - beta) / 2.0)])
        self.emit(decompose_cnot(sc, st))
        self.emit([LocalRz(st, -(delta + beta) / 2.0)])
        self.emit(synth_local_rot(st, HALF_PI, -gamma / 2.0))
        self.emit(decompose_cnot(sc, st))
        self.emit(synth_local_rot(st, HALF_PI, gamma / 2.0))
        self.emit([LocalRz(st, beta), LocalRz(sc, alpha)])

    def lowerGlobalRphi(self, gate):
        self.emit([GlobalRot(gate.phi, gate.theta)])

    def lowerQFTInv(self, gate):
        r = gate.qubits
        m = len(r)

        # the bit reversal comes first in the inverse transform, relabel
        old = list(self.placement)

        for i in range(m):
            self.placement[r[i]] = old[r[m - 1 - i]]

        if self.logger:
            self.logger.debug('QFTInv on %r relabelled to %r', r,
                              self.placement)

        for i in range(m - 1, -1, -1):
            for k in range(m - 1, i, -1):
                self.lowerCPhase(CPhase(
                    r[k], r[i], -2 * math.pi / 2 ** (k - i + 1)))

            self.lowerH(H(r[i]))

    def lowerMeasure(self, gate):
        self.emit([MeasureAll()])

    def circuit(self, optimise=True):
        ops = cancel(self.ops) if optimise else list(self.ops)

        return NativeCircuit(self.sites, ops, readout=self.placement)


def program_width(program):
    """
    The number of logical qubits a program touches (highest index + 1).
    """
    width = 0

    for gate in program:
        if gate.qubits:
            width = max(width, max(gate.qubits) + 1)

    return width


def compile(program, layout, n_qubits=None, optimise=True, logger=None):
    """
    Compiles an abstract program to a L{NativeCircuit}.

    The register is the first C{n_qubits} sites of C{layout} (by default the
    program width); the readout permutation reflects any relabelling done by
    L{QFTInv}.

    @raise CompileError: A gate cannot be lowered or a qubit is not covered.
    @raise ConnectivityError: A two-qubit gate between sites sharing neither
        row nor column.
    """
    program = list(program)

    if n_qubits is None:
        n_qubits = program_width(program)

    compiler = Compiler(layout, n_qubits, logger=logger)

    for gate in program:
        compiler.lowerElement(gate)

    circuit = compiler.circuit(optimise)

    if logger:
        logger.debug('Compiled %d gates to %d native ops %r', len(program),
                     len(circuit), circuit.counts())

    return circuit


def estimate_duration(circuit, timing=None):
    """
    Sum of the pulse durations plus one latency between consecutive
    operations. The final measurement takes no time in this model.
    """
    if timing is None:
        timing = TimingConfig()

    ops = [op for op in circuit if not isinstance(op, MeasureAll)]

    if not ops:
        return 0.0

    pulses = sum(timing.op_duration(op) for op in ops)

    return pulses + (len(ops) - 1) * timing.latency


def _apply_k(tensor, matrix, qubits, n):
    k = len(qubits)
    m = matrix.reshape((2,) * (2 * k))
    out = np.tensordot(m, tensor, axes=(list(range(k, 2 * k)), list(qubits)))

    return np.moveaxis(out, list(range(k)), list(qubits))


def program_unitary(program, n_qubits=None):
    """
    The dense unitary of an abstract program on C{n_qubits} logical qubits
    (oracle for the compiler).
    """
    program = list(program)

    if n_qubits is None:
        n_qubits = program_width(program)

    dim = 2 ** n_qubits
    tensor = np.eye(dim, dtype=complex).reshape((2,) * n_qubits + (dim,))

    for gate in program:
        if isinstance(gate, Measure):
            continue

        if isinstance(gate, GlobalRphi):
            m = gate.matrix()

            for q in range(n_qubits):
                tensor = _apply_k(tensor, m, (q,), n_qubits)

            continue

        tensor = _apply_k(tensor, gate.matrix(), gate.qubits, n_qubits)

    return tensor.reshape(dim, dim)


#: Program text mnemonics: gate class and the number of qubit arguments,
#: the rest are angles. C{None} takes every argument as a qubit.
PROGRAM_GATES = {
    'H': (H, 1),
    'X': (X, 1),
    'RZ': (Rz, 1),
    'RPHI': (Rphi, 1),
    'RY': (Ry, 1),
    'CNOT': (CNOT, 2),
    'CZ': (CZ, 2),
    'ZZ': (ZZ, 2),
    'CP': (CPhase, 2),
    'QFTINV': (QFTInv, None),
    'M': (Measure, 0),
}


def parse_program(text):
    """
    Reads an abstract program, one gate per line (C{H 0}, C{RZ 1 0.5},
    C{CNOT 0 1}, C{QFTINV 0 1 2} ...). Angles are in radians; C{#} starts a
    comment.

    @raise CompileError: Unknown mnemonic or bad arguments, with the line
        number.
    """
    program = []

    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split('#', 1)[0].strip()

        if not line:
            continue

        tokens = line.split()
        mnemonic = tokens[0].upper()

        try:
            klass, arity = PROGRAM_GATES[mnemonic]
        except KeyError:
            raise atomtwin.CompileError('line %d: unknown gate %r' % (
                lineno, tokens[0]))

        args = tokens[1:]

        try:
            if arity is None:
                gate = klass(*[int(a) for a in args])
            else:
                qubits = [int(a) for a in args[:arity]]
                angles = [float(a) for a in args[arity:]]
                gate = klass(*(qubits + angles))
        except (TypeError, ValueError) as e:
            raise atomtwin.CompileError('line %d: bad arguments for %s: %s' % (
                lineno, mnemonic, e))
        except atomtwin.CompileError as e:
            raise atomtwin.CompileError('line %d: %s' % (lineno, e))

        program.append(gate)

    return program
