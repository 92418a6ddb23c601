# Laurent polynomials in v with integer coefficients, as {exponent: coeff} dicts.
#
# The zero polynomial is the empty dict.  All functions return trimmed dicts
# (no stored zero coefficients), so equality of dicts is equality of values.

from __future__ import annotations


def trim(d):
    return {k: c for k, c in d.items() if c != 0}


def zero():
    return {}


def one():
    return {0: 1}


def v_power(n, coeff=1):
    return {n: coeff} if coeff else {}


def is_zero(d):
    return not d


def add(d1, d2):
    out = dict(d1)
    for k, c in d2.items():
        out[k] = out.get(k, 0) + c
    return trim(out)


def sub(d1, d2):
    out = dict(d1)
    for k, c in d2.items():
        out[k] = out.get(k, 0) - c
    return trim(out)


def scale(d, c):
    if c == 0:
        return {}
    return {k: c * a for k, a in d.items()}


def shift(d, n):
    """Multiply by v^n."""
    return {k + n: c for k, c in d.items()}


def mul(d1, d2):
    out = {}
    for k1, c1 in d1.items():
        for k2, c2 in d2.items():
            k = k1 + k2
            out[k] = out.get(k, 0) + c1 * c2
    return trim(out)


def bar(d):
    """The involution v -> v^-1."""
    return {-k: c for k, c in d.items()}


def degree(d):
    return max(d) if d else None


def valuation(d):
    return min(d) if d else None


def coeff(d, n):
    return d.get(n, 0)


def div_exact(d, q):
    """Exact division d / q; raises ValueError if q does not divide d."""
    if not q:
        raise ValueError("division by zero Laurent polynomial")
    rem = dict(d)
    top_q = degree(q)
    lead_q = q[top_q]
    out = {}
    while rem:
        top_r = max(rem)
        c, r = divmod(rem[top_r], lead_q)
        if r != 0:
            raise ValueError("inexact Laurent division")
        k = top_r - top_q
        out[k] = c
        for kq, cq in q.items():
            key = kq + k
            rem[key] = rem.get(key, 0) - cq * c
            if rem[key] == 0:
                del rem[key]
    return trim(out)


def is_nonneg(d):
    return all(c >= 0 for c in d.values())


def evaluate_int(d, x):
    """Evaluate at an integer or Fraction x (x must be invertible if needed)."""
    total = 0
    for k, c in d.items():
        total += c * (x ** k)
    return total


def fmt(d):
    """Render like "v^-1 - v" (ascending exponents)."""
    if not d:
        return "0"
    parts = []
    for k in sorted(d):
        c = d[k]
        if k == 0:
            body = str(abs(c))
        else:
            vp = "v" if k == 1 else "v^%d" % k
            body = vp if abs(c) == 1 else "%d%s" % (abs(c), vp)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


def parse(text):
    """Parse the output of fmt (and bare forms like "3", "-v^2", "2v")."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return {}
    out = {}
    term = ""
    terms = []
    for i, ch in enumerate(s):
        if ch in "+-" and i > 0 and s[i - 1] not in "^+-":
            terms.append(term)
            term = ch
        else:
            term += ch
    terms.append(term)
    for t in terms:
        sign = 1
        while t and t[0] in "+-":
            if t[0] == "-":
                sign = -sign
            t = t[1:]
        if "v" not in t:
            out[0] = out.get(0, 0) + sign * int(t)
            continue
        coef_s, _, exp_s = t.partition("v")
        c = sign * (int(coef_s) if coef_s else 1)
        if exp_s.startswith("^"):
            k = int(exp_s[1:])
        elif exp_s == "":
            k = 1
        else:
            raise ValueError("bad Laurent term: %r" % t)
        out[k] = out.get(k, 0) + c
    return trim(out)
