# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_termops_py``.

Same data layout (tuple-keyed dicts, int/Fraction coefficients); the win
comes from C-level loops and fewer attribute lookups in the merge paths.
"""

BACKEND = "cython"


cpdef tuple mono_mul(tuple m1, tuple m2):
    # merge of two key-sorted factor tuples
    if not m1:
        return m2
    if not m2:
        return m1
    cdef list out = []
    cdef Py_ssize_t i = 0, j = 0, n1 = len(m1), n2 = len(m2)
    cdef tuple p1, p2, k1, k2
    while i < n1 and j < n2:
        p1 = m1[i]
        p2 = m2[j]
        k1 = p1[0]
        k2 = p2[0]
        if k1 == k2:
            out.append((k1, p1[1] + p2[1]))
            i += 1
            j += 1
        elif k1 < k2:
            out.append(p1)
            i += 1
        else:
            out.append(p2)
            j += 1
    while i < n1:
        out.append(m1[i])
        i += 1
    while j < n2:
        out.append(m2[j])
        j += 1
    return tuple(out)


cpdef dict terms_add(dict A, dict B):
    cdef dict out = dict(A)
    cdef tuple m
    cdef object c, s
    for m, c in B.items():
        if m in out:
            s = out[m] + c
            if s:
                out[m] = s
            else:
                del out[m]
        else:
            out[m] = c
    return out


cpdef dict terms_sub(dict A, dict B):
    cdef dict out = dict(A)
    cdef tuple m
    cdef object c, s
    for m, c in B.items():
        if m in out:
            s = out[m] - c
            if s:
                out[m] = s
            else:
                del out[m]
        else:
            out[m] = -c
    return out


cpdef dict terms_neg(dict A):
    cdef dict out = {}
    cdef tuple m
    cdef object c
    for m, c in A.items():
        out[m] = -c
    return out


cpdef dict terms_scale(dict A, object c):
    cdef dict out = {}
    cdef tuple m
    cdef object v
    if not c:
        return out
    for m, v in A.items():
        out[m] = c * v
    return out


cpdef dict terms_mul(dict A, dict B):
    cdef dict out = {}
    if not A or not B:
        return out
    if len(A) > len(B):
        A, B = B, A
    cdef tuple m1, m2, m
    cdef object c1, c2, s
    for m1, c1 in A.items():
        for m2, c2 in B.items():
            m = mono_mul(m1, m2)
            if m in out:
                s = out[m] + c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
            else:
                out[m] = c1 * c2
    return out


cpdef dict terms_derive(dict A):
    cdef dict out = {}
    cdef tuple mono, key, dkey, rest, newmono
    cdef object c, e, s
    cdef Py_ssize_t i
    for mono, c in A.items():
        for i in range(len(mono)):
            key, e = mono[i]
            dkey = (key[0], key[1], key[2] + 1)
            if e == 1:
                rest = mono[:i] + mono[i + 1:]
            else:
                rest = mono[:i] + ((key, e - 1),) + mono[i + 1:]
            newmono = mono_mul(rest, ((dkey, 1),))
            if newmono in out:
                s = out[newmono] + c * e
                if s:
                    out[newmono] = s
                else:
                    del out[newmono]
            else:
                out[newmono] = c * e
    return out
