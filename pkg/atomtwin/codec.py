# Copyright (c) The AtomTwin Project.
# See LICENSE.txt for details.

"""
Native circuit text format.

One element per line::

    # comment
    SITES 0,0 0,3
    READOUT 0 1
    GR 1.5707963267948966 3.141592653589793
    RZ 0 3 -1.5707963267948966
    CZ 0 0 0 3
    M

Angles are written with C{repr} precision so a written circuit reads back
identical. C{SITES} and C{READOUT} are optional; without C{SITES} the register
is every site in order of first appearance.

@since: 0.1
"""

import atomtwin
from atomtwin import util
from atomtwin.circuit import (
    NativeCircuit, GlobalRot, LocalRz, Cz, MeasureAll, SiteCoord)


__all__ = [
    'Context',
    'Decoder',
    'Encoder',
]


class Header(object):
    """
    A decoded C{SITES} or C{READOUT} line.
    """

    def __init__(self, name, values):
        self.name = name
        self.values = tuple(values)

    def __eq__(self, other):
        if not isinstance(other, Header):
            return NotImplemented

        return (self.name, self.values) == (other.name, other.values)

    def __repr__(self):
        return 'Header(%r, %r)' % (self.name, self.values)


class Context(object):
    """
    Codec state: the line number of the element being read and the sites
    seen so far, used to infer a register when there is no C{SITES} header.
    """

    def __init__(self):
        self.clear()

    def clear(self):
        self.lineno = 0
        self.sites = []
        self._seen = set()

    def addSite(self, site):
        if site not in self._seen:
            self._seen.add(site)
            self.sites.append(site)


class _Codec(object):
    """
    Base codec.

    @ivar stream: The underlying text stream.
    @type stream: L{util.LineStream}
    @ivar context: The codec context.
    @ivar strict: In strict mode a circuit must declare its C{SITES}.
    """

    def __init__(self, stream=None, context=None, strict=False):
        if not isinstance(stream, util.LineStream):
            stream = util.LineStream(stream)

        self.stream = stream
        self.context = context or Context()
        self.strict = strict

        self._func_cache = {}

    def getTypeFunc(self, data):
        """
        Returns a callable based on C{data}. If no such callable can be found,
        the default must be to return C{None}.
        """
        raise NotImplementedError


class Decoder(_Codec):
    """
    Reads native operations from circuit text.

    Supports a generator interface. Feed the decoder text using L{send} and
    get elements out by using C{next}.
    """

    def send(self, data):
        """
        Add text for the decoder to work on.
        """
        self.stream.append(data)

    def __next__(self):
        try:
            return self.readElement()
        except atomtwin.EOStream:
            raise StopIteration

    def __iter__(self):
        return self

    def getTypeFunc(self, data):
        return {
            'GR': self.readGlobalRot,
            'RZ': self.readLocalRz,
            'CZ': self.readCz,
            'M': self.readMeasure,
            'SITES': self.readSites,
            'READOUT': self.readReadout,
        }.get(data)

    def _fail(self, msg):
        raise atomtwin.DecodeError('line %d: %s' % (self.context.lineno, msg))

    def _floats(self, args, count):
        if len(args) != count:
            self._fail('expected %d arguments, got %d' % (count, len(args)))

        try:
            return [float(x) for x in args]
        except ValueError:
            self._fail('bad number in %r' % (' '.join(args),))

    def _ints(self, args, count=None):
        if count is not None and len(args) != count:
            self._fail('expected %d arguments, got %d' % (count, len(args)))

        try:
            return [int(x) for x in args]
        except ValueError:
            self._fail('bad integer in %r' % (' '.join(args),))

    def _site(self, row, col):
        site = SiteCoord(row, col)

        self.context.addSite(site)

        return site

    def readGlobalRot(self, args):
        phi, theta = self._floats(args, 2)

        return GlobalRot(phi, theta)

    def readLocalRz(self, args):
        if len(args) != 3:
            self._fail('expected 3 arguments, got %d' % (len(args),))

        row, col = self._ints(args[:2])
        theta, = self._floats(args[2:], 1)

        return LocalRz(self._site(row, col), theta)

    def readCz(self, args):
        r1, c1, r2, c2 = self._ints(args, 4)

        return Cz(self._site(r1, c1), self._site(r2, c2))

    def readMeasure(self, args):
        if args:
            self._fail('M takes no arguments')

        return MeasureAll()

    def readSites(self, args):
        sites = []

        for arg in args:
            try:
                row, col = arg.split(',')
            except ValueError:
                self._fail('bad site %r' % (arg,))

            sites.append(self._site(*self._ints([row, col])))

        return Header('SITES', sites)

    def readReadout(self, args):
        return Header('READOUT', self._ints(args))

    def _readElement(self):
        """
        Reads the next element, skipping blank lines and comments.

        @raise DecodeError: Unknown mnemonic or malformed arguments.
        @raise EOStream: No more text left to decode.
        """
        while True:
            pos = self.stream.tell()

            try:
                line = self.stream.read()
            except IOError:
                raise atomtwin.EOStream

            self.context.lineno = pos + 1
            line = line.split('#', 1)[0].strip()

            if line:
                break

        parts = line.split()
        t = parts[0].upper()

        try:
            func = self._func_cache[t]
        except KeyError:
            func = self.getTypeFunc(t)

            if not func:
                self._fail('unknown mnemonic %r' % (parts[0],))

            self._func_cache[t] = func

        try:
            return func(parts[1:])
        except atomtwin.CircuitError as e:
            self._fail(str(e))

    def readElement(self):
        """
        Reads the next native operation or header from the stream.

        @raise DecodeError: The line cannot be decoded.
        @raise EOStream: No more text left to decode.
        """
        return self._readElement()

    def readCircuit(self):
        """
        Reads every remaining element and assembles a L{NativeCircuit}.
        """
        sites = None
        readout = None
        ops = []

        for element in self:
            if isinstance(element, Header):
                if element.name == 'SITES':
                    sites = element.values
                else:
                    readout = element.values
            else:
                ops.append(element)

        if sites is None:
            if self.strict:
                raise atomtwin.DecodeError('Missing SITES header')

            sites = self.context.sites

        try:
            return NativeCircuit(sites, ops, readout)
        except atomtwin.CircuitError as e:
            raise atomtwin.DecodeError(str(e))


class Encoder(_Codec):
    """
    Writes native operations and circuits as circuit text.

    The encoder also supports a generator interface. Feed the encoder
    elements using L{send} and get text lines out using C{next}.
    """

    def __init__(self, *args, **kwargs):
        _Codec.__init__(self, *args, **kwargs)

        self.bucket = []

    def getTypeFunc(self, data):
        if isinstance(data, NativeCircuit):
            return self.writeCircuit
        elif isinstance(data, GlobalRot):
            return self.writeGlobalRot
        elif isinstance(data, LocalRz):
            return self.writeLocalRz
        elif isinstance(data, Cz):
            return self.writeCz
        elif isinstance(data, MeasureAll):
            return self.writeMeasure
        elif isinstance(data, Header):
            return self.writeHeader

        return None

    def writeGlobalRot(self, op):
        self.stream.write('GR %r %r' % (op.phi, op.theta))

    def writeLocalRz(self, op):
        self.stream.write('RZ %d %d %r' % (op.site.row, op.site.col, op.theta))

    def writeCz(self, op):
        self.stream.write('CZ %d %d %d %d' % (op.site_a + op.site_b))

    def writeMeasure(self, op):
        self.stream.write('M')

    def writeHeader(self, header):
        if header.name == 'SITES':
            values = [str(s) for s in header.values]
        else:
            values = [str(i) for i in header.values]

        self.stream.write(' '.join([header.name] + values))

    def writeCircuit(self, circuit):
        self.writeElement(Header('SITES', circuit.sites))

        if circuit.readout != tuple(range(circuit.n_qubits)):
            self.writeElement(Header('READOUT', circuit.readout))

        for op in circuit:
            self.writeElement(op)

    def writeElement(self, data):
        """
        Encodes C{data}. If C{data} is not a circuit, header or native
        operation L{atomtwin.EncodeError} is raised.
        """
        key = type(data)

        try:
            func = self._func_cache[key]
        except KeyError:
            func = self.getTypeFunc(data)

            if func is None:
                raise atomtwin.EncodeError('Unable to encode %r (type %r)' % (
                    data, key))

            self._func_cache[key] = func

        func(data)

    def send(self, element):
        self.bucket.append(element)

    def __next__(self):
        try:
            element = self.bucket.pop(0)
        except IndexError:
            raise StopIteration

        start_pos = self.stream.tell()

        self.writeElement(element)

        end_pos = self.stream.tell()

        self.stream.seek(start_pos)

        lines = [self.stream.read() for _ in range(end_pos - start_pos)]

        return '\n'.join(lines)

    def __iter__(self):
        return self
