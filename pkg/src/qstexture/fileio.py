"""JSON file formats for states and channels.

Matrices are lists of rows, each entry a ``[re, im]`` pair::

    {"dim": 2, "matrix": [[[0.5, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.5, 0.0]]]}
    {"dim": 2, "amplitudes": [[0.7071067811865476, 0.0], [0.7071067811865476, 0.0]]}
    {"dim": 2, "kraus": [<matrix>, ...]}

Floats go through ``repr`` (shortest round-trip form, at most 17
significant digits), so writing then reading is lossless.
"""

import json

import numpy as np

from .channels import KrausSet
from .states import pure_density, validate_density, validate_pure


def _pair(z) -> list:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=np.complex128)
    return [[_pair(z) for z in row] for row in m]


def matrix_from_json(rows, dim=None) -> np.ndarray:
    a = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"matrix must be square, got shape {a.shape}")
    if dim is not None and a.shape[0] != dim:
        raise ValueError(f"declared dim {dim} but matrix is {a.shape[0]} x {a.shape[1]}")
    return a


def state_to_json(rho) -> dict:
    rho = np.asarray(rho)
    return {"dim": int(rho.shape[0]), "matrix": matrix_to_json(rho)}


def pure_to_json(psi) -> dict:
    psi = np.asarray(psi, dtype=np.complex128)
    return {"dim": int(psi.size), "amplitudes": [_pair(z) for z in psi]}


def state_from_json(obj: dict):
    """Return ``(rho, psi)``; ``psi`` is None unless the file held amplitudes."""
    dim = obj.get("dim")
    if "amplitudes" in obj:
        psi = validate_pure(np.array([complex(re, im) for re, im in obj["amplitudes"]]))
        if dim is not None and psi.size != dim:
            raise ValueError(f"declared dim {dim} but {psi.size} amplitudes given")
        return pure_density(psi), psi
    if "matrix" in obj:
        return validate_density(matrix_from_json(obj["matrix"], dim)), None
    raise ValueError("state file needs a 'matrix' or an 'amplitudes' field")


def channel_from_json(obj: dict) -> KrausSet:
    ops = [matrix_from_json(k, obj.get("dim")) for k in obj["kraus"]]
    return KrausSet.from_operators(ops)


def dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def load(path):
    with open(path) as fh:
        return json.load(fh)


def save(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps(obj) + "\n")
