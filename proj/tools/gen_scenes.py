#!/usr/bin/env python3
"""Regenerate the bundled scene files under scenes/.

Complex numbers are written as [re, im]; matrices as arrays of rows.
Run from anywhere: python3 tools/gen_scenes.py
"""

import itertools
import json
import re
from pathlib import Path

import numpy as np

ROOT = Path(__file__).resolve().parent.parent / "scenes"


def cjson(z):
    z = complex(z)
    return [z.real, z.imag]


def vec(v):
    return [cjson(x) for x in np.asarray(v).ravel()]


def mat(m):
    return [[cjson(x) for x in row] for row in np.asarray(m)]


def rep(matrices):
    return {"dim": int(matrices[0].shape[0]), "matrices": [mat(m) for m in matrices]}


def unit(v):
    v = np.asarray(v, dtype=complex)
    return v / np.linalg.norm(v)


def permutation_matrices(n):
    """Lexicographic permutations s of range(n), U |x> = |s(x)>."""
    out = []
    for perm in itertools.permutations(range(n)):
        m = np.zeros((n, n), dtype=complex)
        for x, y in enumerate(perm):
            m[y, x] = 1
        out.append(m)
    return out


def sign(perm):
    inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inversions % 2 else 1


def z6_matrices():
    w = np.exp(2j * np.pi / 3)
    return [np.diag([1, w**k, w ** (2 * k)]) for k in range(6)]


SCALAR_PAIR = re.compile(r"\[\s*([^\[\]\s,]+),\s*([^\[\]\s,]+)\s*\]")
ROW = re.compile(r"\[\s*((?:\[[^\[\]]*\],?\s*)+)\]")


def compact(text):
    """Complex scalars and matrix rows each on one line."""
    text = SCALAR_PAIR.sub(r"[\1, \2]", text)
    return ROW.sub(lambda m: "[" + ", ".join(re.findall(r"\[[^\[\]]*\]", m.group(1))) + "]", text)


def write(name, scene):
    path = ROOT / name
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(compact(json.dumps(scene, indent=2)) + "\n")


def main():
    eta = np.ones(3, dtype=complex)
    z6 = {
        "group": "cyclic 6",
        "rep": rep(z6_matrices()),
        "state": vec(unit(eta)),
        "channel": "component_projectors",
        "povm_seed": mat(np.outer(eta, eta.conj()) / 6),
        "cost": {"kind": "delta"},
    }
    write("z6_phase.json", z6)

    i2 = np.eye(2, dtype=complex)
    z = np.diag([1, -1]).astype(complex)
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    write("klein_pauli.json", {
        "group": "klein",
        "rep": rep([i2, z, x, z @ x]),
        "state": vec([1, 0]),
        "channel": "component_projectors",
    })

    write("s3_permutation.json", {
        "group": "symmetric 3",
        "rep": rep(permutation_matrices(3)),
        "state": vec([1, 0, 0]),
        "channel": "component_projectors",
    })

    write("s3_sign.json", {
        "group": "symmetric 3",
        "rep": rep([np.diag([1, sign(p)]).astype(complex) for p in itertools.permutations(range(3))]),
        "state": vec(unit([1, 1])),
        "channel": "component_projectors",
    })

    flip = np.diag([1, 1, -1]).astype(complex)
    write("z2_dim3_dephasing.json", {
        "group": "cyclic 2",
        "rep": rep([np.eye(3, dtype=complex), flip]),
        "state": vec(unit([1, 0, 1])),
        "channel": {"dim": 3, "kraus": [mat(np.diag([1, 0, 1])), mat(np.diag([0, 1, 0]))]},
    })

    write("invariant_state.json", {
        "group": "cyclic 3",
        "rep": rep([np.eye(2, dtype=complex)] * 3),
        "state": vec([0.6, 0.8j]),
        "channel": "component_projectors",
        "povm_seed": mat(np.eye(2) / 3),
        "cost": {"matrix": [[0.0] * 3 for _ in range(3)]},
    })

    # Z_3 given by a Cayley table whose identity is row 2; element 0 is the
    # generator. The regular action makes the orbit orthonormal.
    shift = np.roll(np.eye(3, dtype=complex), 1, axis=0)
    write("z3_regular_table.json", {
        "group": {"order": 3, "table": [[1, 2, 0], [2, 0, 1], [0, 1, 2]]},
        "rep": rep([shift, shift @ shift, np.eye(3, dtype=complex)]),
        "state": vec([1, 0, 0]),
        "channel": "component_projectors",
        "povm_seed": mat(np.diag([1, 0, 0])),
        "cost": {"kind": "delta"},
    })

    # Negative controls.
    h = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    write("controls/noncovariant_dfs.json", {
        "group": "cyclic 2",
        "rep": rep([i2, h]),
        "state": vec([1, 0]),
        "channel": {"dim": 2, "kraus": [mat(np.diag([1, 0])), mat(np.diag([0, 1]))]},
    })

    write("controls/seed_not_fixed.json", {
        "group": "cyclic 2",
        "rep": rep([np.eye(3, dtype=complex), flip]),
        "state": vec(unit([1, 0, 1])),
        "channel": {"dim": 3, "kraus": [mat(np.diag([1, 1, 0])), mat(np.diag([0, 0, 1]))]},
    })

    unscaled = dict(z6)
    unscaled["povm_seed"] = mat(np.outer(eta, eta.conj()))
    write("controls/unscaled_povm.json", unscaled)

    malformed = dict(z6)
    malformed_rep = rep(z6_matrices())
    malformed_rep["matrices"][1][2] = malformed_rep["matrices"][1][2][:2]
    malformed["rep"] = malformed_rep
    write("controls/malformed_row.json", malformed)


if __name__ == "__main__":
    main()
