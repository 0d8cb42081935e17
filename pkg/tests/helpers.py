"""Random exact cochains shared by the test modules."""

from fractions import Fraction

import numpy as np

from prelie_smatrix.exactla import wedge_enumerate
from prelie_smatrix.prelie import PreLieCochain
from prelie_smatrix.rotabaxter import MapCochain
from prelie_smatrix.smatrix import SymTensor2, TensorCochain


def rand_array(rng, shape, lo=-2, hi=2):
    out = np.empty(shape, dtype=object)
    for idx in np.ndindex(*shape):
        out[idx] = Fraction(rng.randint(lo, hi))
    return out


def rand_prelie_cochain(rng, degree, dim, vdim):
    data = {key: rand_array(rng, (dim, vdim)) for key in wedge_enumerate(dim, degree - 1)}
    return PreLieCochain(degree, dim, vdim, data)


def rand_map_cochain(rng, arity, source_dim, target_dim):
    data = {key: rand_array(rng, (target_dim,)) for key in wedge_enumerate(source_dim, arity)}
    return MapCochain(arity, source_dim, target_dim, data)


def rand_tensor_cochain(rng, arity, dim):
    data = {key: rand_array(rng, (dim,)) for key in wedge_enumerate(dim, arity - 1)}
    return TensorCochain(arity, dim, data)


def rand_sym(rng, n, lo=-1, hi=1):
    m = rand_array(rng, (n, n), lo, hi)
    return SymTensor2(np.triu(m) + np.triu(m, 1).T)
