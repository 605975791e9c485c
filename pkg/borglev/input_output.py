#!/usr/bin/python

"""Result tables, run summaries and the binary spectral cache"""

import re
import os
import gzip
import json
import logging

import numpy as np

from borglev.spectrum import SpectralData
from borglev.exceptions import (BadMagic, VersionMismatch, HashMismatch,
                                TruncatedCache, BadTraceMode)

logger = logging.getLogger(__name__)

MAGIC = b"BLIS"
VERSION = 1
MODE_CODES = {None: 0, "onesided2": 1, "variational": 2}
MODE_NAMES = dict((v, k) for k, v in MODE_CODES.items())

HEADER_DTYPE = np.dtype([("magic", "S4"),
                         ("version", "u1"),
                         ("n", "u1"),
                         ("has_traces", "u1"),
                         ("trace_mode", "u1"),
                         ("N", "<u4"),
                         ("K", "<u4"),
                         ("dim", "<u4"),
                         ("nb", "<u4"),
                         ("shift", "<f8"),
                         ("hash", "S32")])


class table_writer(object):
    """
    Long-format CSV table with a commented header

    Args:
        outputdir (str): Path for saving results
        filename (str): Desired output filename, gzipped if it ends in .gz

    Attributes:
        output (file): File being written
        columns (list): column names, set by write_header
    """
    def __init__(self, outputdir, filename):
        self.output = self.open_file(outputdir, filename)
        self.columns = None

    def open_file(self, outputdir, filename):
        """
        Open file and prepare for writing

        Args:
            outputdir (str): Path for saving results
            filename (str): Desired output filename

        Returns:
            file: File being written to
        """
        if not os.path.isdir(outputdir):
            os.makedirs(outputdir)
        if re.search('.gz$', filename):
            output = gzip.open(os.path.join(outputdir, str(filename)), 'wt')
        else:
            output = open(os.path.join(outputdir, str(filename)), "w")
        return output

    def write_header(self, title, columns, notes=()):
        """
        Record the table description and column names

        Args:
            title (str): one line description
            columns (list): column names
            notes (list): further comment lines
        """
        temp = "# borglev: {title}\n".format(**locals())
        temp += "".join("# {}\n".format(note) for note in notes)
        temp += ",".join(columns) + "\n"
        self.columns = list(columns)
        self.output.write(temp)

    def write(self, *rows):
        """
        Write rows; integers as is, everything else as %.12e

        Args:
            rows (list): sequences with one entry per column
        """
        for row in rows:
            self.output.write(",".join(_cell(x) for x in row) + "\n")

    def finish(self):
        self.output.close()


def _cell(x):
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, str):
        return x
    return '{:.12e}'.format(float(x))


def write_summary(outputdir, summary, filename="summary.json"):
    """
    Write the run summary as JSON, keys sorted

    Returns:
        str: path of the written file
    """
    if not os.path.isdir(outputdir):
        os.makedirs(outputdir)
    path = os.path.join(outputdir, filename)
    with open(path, "w") as output:
        json.dump(summary, output, sort_keys=True, indent=2,
                  default=_jsonable)
        output.write("\n")
    return path


def _jsonable(x):
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, complex):
        return [x.real, x.imag]
    raise TypeError("cannot serialise {!r}".format(x))


def get_outputdir():
    """
    Check that the BORGLEV_OUT environmental variable is set

    Returns:
        str: path to result folder
    """
    try:
        outdir = os.environ['BORGLEV_OUT']
    except KeyError:
        print("Enviromental variable BORGLEV_OUT not set")
        print("set to ./")
        outdir = "./"
    return outdir


def get_cachedir():
    """
    Check that the BORGLEV_CACHE environmental variable is set

    Returns:
        str: path to spectral cache folder
    """
    try:
        cachedir = os.environ['BORGLEV_CACHE']
    except KeyError:
        print("Enviromental variable BORGLEV_CACHE not set")
        print("set to ./")
        cachedir = "./"
    return cachedir


def print_config(experiment, n, N, q1, q2, K, trace_mode, seed, threads,
                 **kwargs):
    """
    Prints the configuration to the screen.
    """
    str = "##############################################################################\n"
    str += "##### borglev initializing {experiment} #####\n"
    str += "Grid: {n}-d unit box, N = {N}\n"
    str += "Potential q1: {q1}\n"
    str += "Potential q2: {q2}\n"
    str += "Eigenpairs: K = {K}, Neumann trace mode: {trace_mode}\n"
    str += "Seed: {seed}, threads: {threads}\n"
    str += "##### borglev initialization done #####\n"
    print((str.format(**locals())))


#################################################
#  Spectral cache
#################################################

def cache_path(cachedir, op, K, mode):
    """ file name keyed by operator hash, K and trace mode """
    name = "{}_K{}_{}.blis".format(op.key[:16], K, mode or "notrace")
    return os.path.join(cachedir, name)


def save_cache(path, sd):
    """
    Write SpectralData in the BLIS binary format: a fixed header record
    followed by values, residuals, vectors and traces as little-endian
    float64

    Args:
        path (str): file to write
        sd (SpectralData): data to store
    """
    grid = sd.grid
    header = np.zeros(1, dtype=HEADER_DTYPE)
    header["magic"] = MAGIC
    header["version"] = VERSION
    header["n"] = grid.n_dims
    header["has_traces"] = sd.traces is not None
    header["trace_mode"] = MODE_CODES[sd.trace_mode]
    header["N"] = grid.N
    header["K"] = sd.count
    header["dim"] = grid.dimension
    header["nb"] = grid.n_boundary
    header["shift"] = sd.shift
    header["hash"] = bytes.fromhex(sd.operator.key)
    parts = [sd.values, sd.residuals, sd.vectors]
    if sd.traces is not None:
        parts.append(sd.traces)
    with open(path, "wb") as output:
        output.write(header.tobytes())
        for part in parts:
            output.write(np.ascontiguousarray(part, dtype="<f8").tobytes())
    logger.debug("cached %d eigenpairs in %s", sd.count, path)


def load_cache(path, operator):
    """
    Read SpectralData written by save_cache

    Args:
        path (str): file to read
        operator (DiscreteOperator): operator the data must belong to

    Returns:
        SpectralData: bitwise equal to what was saved
    """
    with open(path, "rb") as source:
        raw = source.read()
    if len(raw) < HEADER_DTYPE.itemsize:
        raise BadMagic("{}: file shorter than the cache header".format(path))
    header = np.frombuffer(raw[:HEADER_DTYPE.itemsize], dtype=HEADER_DTYPE)[0]
    if header["magic"] != MAGIC:
        raise BadMagic("{}: not a spectral cache".format(path))
    if header["version"] != VERSION:
        raise VersionMismatch("{}: cache version {}, expected {}".format(
            path, header["version"], VERSION))
    if int(header["trace_mode"]) not in MODE_NAMES:
        raise BadTraceMode("{}: unknown trace mode code {}".format(
            path, int(header["trace_mode"])))
    if header["hash"] != bytes.fromhex(operator.key).rstrip(b"\0"):
        raise HashMismatch("{}: cache belongs to another potential"
                           .format(path))

    K, dim, nb = int(header["K"]), int(header["dim"]), int(header["nb"])
    sizes = [K, K, K * dim]
    if header["has_traces"]:
        sizes.append(K * nb)
    if len(raw) - HEADER_DTYPE.itemsize != 8 * sum(sizes):
        raise TruncatedCache("{}: payload has {} bytes, expected {}".format(
            path, len(raw) - HEADER_DTYPE.itemsize, 8 * sum(sizes)))
    payload = np.frombuffer(raw[HEADER_DTYPE.itemsize:], dtype="<f8")
    offsets = np.cumsum([0] + sizes)
    chunks = [payload[a:b].copy() for a, b in zip(offsets[:-1], offsets[1:])]
    traces = chunks[3].reshape(K, nb) if header["has_traces"] else None
    return SpectralData(chunks[0], chunks[2].reshape(K, dim), chunks[1],
                        operator, shift=float(header["shift"]),
                        traces=traces,
                        trace_mode=MODE_NAMES[int(header["trace_mode"])])
