"""
Text format for complex matrices.

Line 1 is `complex-matrix <rows> <cols>`; then one row per line, each entry
written as the pair `re im` with 17 significant digits.
"""
import numpy as np

from classification.exceptions import ShapeMismatch

HEADER = 'complex-matrix'


def dumps(matrix):
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.ndim != 2:
        raise ShapeMismatch(f'expected a matrix, got {matrix.ndim} dimensions')
    rows, cols = matrix.shape
    lines = [f'{HEADER} {rows} {cols}']
    for row in matrix:
        lines.append(' '.join(f'{z.real:.17g} {z.imag:.17g}' for z in row))
    return '\n'.join(lines) + '\n'


def loads(text):
    tokens = text.split()
    if len(tokens) < 3 or tokens[0] != HEADER:
        raise ShapeMismatch(f'missing "{HEADER} <rows> <cols>" header')
    rows, cols = int(tokens[1]), int(tokens[2])
    values = tokens[3:]
    if rows < 1 or cols < 1 or len(values) != 2 * rows * cols:
        raise ShapeMismatch(f'expected {2 * rows * cols} numbers for a {rows}×{cols} matrix, found {len(values)}')
    pairs = np.array(values, dtype=float).reshape(rows * cols, 2)
    return (pairs[:, 0] + 1j * pairs[:, 1]).reshape(rows, cols)


def dump(matrix, path):
    with open(path, 'w') as handle:
        handle.write(dumps(matrix))


def load(path):
    with open(path) as handle:
        return loads(handle.read())
