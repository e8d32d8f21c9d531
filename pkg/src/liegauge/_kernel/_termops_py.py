"""Pure-Python term-dict kernels for sparse differential polynomials.

A *key* is a tuple ``(cls, idx, order)`` naming one derivative of one
indeterminate.  A *monomial* is a sorted tuple of ``(key, exp)`` pairs with
``exp >= 1``; the empty tuple is the constant monomial.  A term dict maps
monomials to nonzero rational coefficients (int or Fraction).

These functions are the hot inner loops; ``_termops_cy`` is a compiled twin
with the same signatures.
"""

BACKEND = "python"


def mono_mul(m1, m2):
    # merge of two key-sorted factor tuples
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    n1, n2 = len(m1), len(m2)
    while i < n1 and j < n2:
        k1, e1 = m1[i]
        k2, e2 = m2[j]
        if k1 == k2:
            out.append((k1, e1 + e2))
            i += 1
            j += 1
        elif k1 < k2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    if i < n1:
        out.extend(m1[i:])
    if j < n2:
        out.extend(m2[j:])
    return tuple(out)


def terms_add(A, B):
    out = dict(A)
    for m, c in B.items():
        s = out.get(m, 0) + c
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return out


def terms_sub(A, B):
    out = dict(A)
    for m, c in B.items():
        s = out.get(m, 0) - c
        if s:
            out[m] = s
        elif m in out:
            del out[m]
    return out


def terms_neg(A):
    return {m: -c for m, c in A.items()}


def terms_scale(A, c):
    if not c:
        return {}
    return {m: c * v for m, v in A.items()}


def terms_mul(A, B):
    if not A or not B:
        return {}
    # iterate over the smaller operand's monomials in the outer loop
    if len(A) > len(B):
        A, B = B, A
    out = {}
    for m1, c1 in A.items():
        for m2, c2 in B.items():
            m = mono_mul(m1, m2)
            s = out.get(m, 0) + c1 * c2
            if s:
                out[m] = s
            elif m in out:
                del out[m]
    return out


def terms_derive(A):
    """One application of the derivation: Leibniz over every monomial."""
    out = {}
    for mono, c in A.items():
        for i, (key, e) in enumerate(mono):
            dkey = (key[0], key[1], key[2] + 1)
            if e == 1:
                rest = mono[:i] + mono[i + 1 :]
            else:
                rest = mono[:i] + ((key, e - 1),) + mono[i + 1 :]
            newmono = mono_mul(rest, ((dkey, 1),))
            s = out.get(newmono, 0) + c * e
            if s:
                out[newmono] = s
            elif newmono in out:
                del out[newmono]
    return out
