# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled generation step.

Mirrors :func:`pivotalga.sga.step_generation` draw for draw: it pulls the
same variates in the same order from the same bit generator, and performs
the floating-point arithmetic in the same sequence, so outputs are
bit-for-bit identical to the numpy engine. Any behavioural change here must
be made in lockstep with the numpy implementation (the cross-engine tests
enforce this).

Per generation, with population n and genome length L (n even, p = n // 2):
  n standard normals             fitness noise
  1 uniform                      selection spin
  n uniforms                     shuffle sort keys
  p * (1 + L) uniforms           per pair: crossover decision, then a full
                                 mask (drawn even when the pair does not cross)
  n * L uniforms                 mutation, row-major
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from cpython.pycapsule cimport PyCapsule_GetPointer
from libc.math cimport sqrt
from libc.stdlib cimport qsort

import numpy as np

cimport numpy as cnp
from numpy.random cimport bitgen_t
from numpy.random.c_distributions cimport (random_standard_normal,
                                           random_standard_uniform)

cnp.import_array()


cdef struct KeyIdx:
    double key
    Py_ssize_t idx


cdef int _cmp_keyidx(const void *a, const void *b) noexcept nogil:
    # ascending by key, ties by original index: a stable sort of random keys
    cdef const KeyIdx *x = <const KeyIdx *> a
    cdef const KeyIdx *y = <const KeyIdx *> b
    if x.key < y.key:
        return -1
    if x.key > y.key:
        return 1
    if x.idx < y.idx:
        return -1
    return 1


def step_generation(cnp.uint8_t[:, ::1] pop, int kind,
                    cnp.int64_t[::1] loci0, cnp.uint8_t[::1] values,
                    double sigma, double on_mean, double off_mean,
                    double crossover_prob, double mutation_rate,
                    object bit_generator):
    """Advance ``pop`` one generation; returns a new population array.

    ``loci0`` holds 0-based pivotal columns; ``values`` is the target
    pattern for kind 1 and ignored for kind 2. The caller's
    ``bit_generator`` is advanced in place.
    """
    cdef bitgen_t *rng = <bitgen_t *> PyCapsule_GetPointer(
        bit_generator.capsule, "BitGenerator")
    cdef Py_ssize_t n = pop.shape[0]
    cdef Py_ssize_t span = pop.shape[1]
    cdef Py_ssize_t order = loci0.shape[0]
    cdef Py_ssize_t npairs = n // 2
    if n % 2:
        raise ValueError("population size must be even")

    out_arr = np.empty((n, span), dtype=np.uint8)
    fit_arr = np.empty(n, dtype=np.float64)
    cum_arr = np.empty(n, dtype=np.float64)
    sel_arr = np.empty(n, dtype=np.int64)
    cdef cnp.uint8_t[:, ::1] out = out_arr
    cdef double[::1] fit = fit_arr
    cdef double[::1] cum = cum_arr
    cdef cnp.int64_t[::1] sel = sel_arr

    cdef Py_ssize_t i, j, k, p, ia, ib
    cdef int match, comp, parity, crossing
    cdef double mean_i, s, mean, q, d, std, w, c, total, stepw, spin, point, u

    # fitness: one normal per member, in row order
    for i in range(n):
        if kind == 1:
            match = 1
            comp = 1
            for k in range(order):
                if pop[i, loci0[k]] != values[k]:
                    match = 0
                if pop[i, loci0[k]] == values[k]:
                    comp = 0
            mean_i = on_mean if (match or comp) else off_mean
        else:
            parity = 0
            for k in range(order):
                parity ^= pop[i, loci0[k]]
            mean_i = on_mean if parity else off_mean
        fit[i] = mean_i + sigma * random_standard_normal(rng)

    # sigma scaling, with in-order accumulation
    s = 0.0
    for i in range(n):
        s += fit[i]
    mean = s / n
    q = 0.0
    for i in range(n):
        d = fit[i] - mean
        q += d * d
    std = sqrt(q / n)

    # selection weights, cumulated in place for the sampling walk
    c = 0.0
    for i in range(n):
        if std == 0.0:
            w = 1.0
        else:
            w = 1.0 + (fit[i] - mean) / std
            if w < 0.0:
                w = 0.0
        c += w
        cum[i] = c
    total = cum[n - 1]
    if not total > 0.0:
        # rounding of a near-degenerate sample clamped every weight; use the
        # zero-variance behaviour (all ones), as the numpy engine does
        c = 0.0
        for i in range(n):
            c += 1.0
            cum[i] = c
        total = cum[n - 1]

    # stochastic universal sampling: one spin, n equally spaced pointers
    spin = random_standard_uniform(rng)
    stepw = total / n
    j = 0
    for k in range(n):
        point = (spin + <double> k) * stepw
        while j < n - 1 and cum[j] <= point:
            j += 1
        sel[k] = j

    # shuffle by sorting random keys (ties broken by index = stable)
    cdef KeyIdx *keys = <KeyIdx *> PyMem_Malloc(n * sizeof(KeyIdx))
    if keys == NULL:
        raise MemoryError()
    try:
        for i in range(n):
            keys[i].key = random_standard_uniform(rng)
            keys[i].idx = i
        qsort(keys, n, sizeof(KeyIdx), _cmp_keyidx)

        # crossover of adjacent pairs: decision uniform, then the full mask
        for p in range(npairs):
            ia = sel[keys[2 * p].idx]
            ib = sel[keys[2 * p + 1].idx]
            u = random_standard_uniform(rng)
            crossing = u < crossover_prob
            for j in range(span):
                u = random_standard_uniform(rng)
                if crossing and u >= 0.5:
                    out[2 * p, j] = pop[ib, j]
                    out[2 * p + 1, j] = pop[ia, j]
                else:
                    out[2 * p, j] = pop[ia, j]
                    out[2 * p + 1, j] = pop[ib, j]
    finally:
        PyMem_Free(keys)

    # mutation: one uniform per bit, row-major
    for i in range(n):
        for j in range(span):
            if random_standard_uniform(rng) < mutation_rate:
                out[i, j] ^= 1

    return out_arr
