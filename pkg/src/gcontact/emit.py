"""Text and LaTeX rendering of polynomials, rational functions and PDE.

Output is byte-stable: terms are emitted in graded-lex order over the
variable table, with a fixed rational-coefficient format.
"""

from __future__ import annotations

from .rings import Poly, RatFunc, qq


_LATEX_NAMES = {"uyy": "u_{yy}", "uxx": "u_{xx}", "uxy": "u_{xy}",
                "lam": "\\lambda"}


def _latex_var(name):
    if name in _LATEX_NAMES:
        return _LATEX_NAMES[name]
    if name.startswith("u_") or name == "u":
        return name
    if len(name) > 1 and name[0] in "xtu" and name[1:].isdigit():
        return "%s^{%s}" % (name[0], name[1:]) if name[0] == "x" else \
            "%s_{%s}" % (name[0], name[1:])
    if name.startswith("e") and len(name) == 2:
        return "e^{%s}" % name[1]
    return name


def _coef_latex(c):
    if c.denominator == 1:
        return str(c.numerator)
    return "\\frac{%s}{%s}" % (abs(c.numerator), c.denominator) if \
        c.numerator >= 0 else "-\\frac{%s}{%s}" % (abs(c.numerator),
                                                   c.denominator)


def poly_latex(p):
    if isinstance(p, RatFunc):
        if p.is_poly():
            return poly_latex(p.as_poly())
        return "\\frac{%s}{%s}" % (poly_latex(p.num), poly_latex(p.den))
    if p.is_zero:
        return "0"
    names = p.table.names
    parts = []
    for m, c in p.sorted_terms():
        factors = []
        for i, e in m:
            v = _latex_var(names[i])
            factors.append(v if e == 1 else "%s^{%d}" % (v, e))
        mono = " ".join(factors)
        if not mono:
            parts.append(_coef_latex(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append("%s %s" % (_coef_latex(c), mono))
    out = " + ".join(parts).replace("+ -", "- ")
    return out


def value_str(v):
    """Canonical plain-text rendering for Poly / RatFunc / scalars."""
    if isinstance(v, (Poly, RatFunc)):
        return str(v)
    return str(qq(v))


def jet_name_plain(i, j=None, n=2):
    """u_xx-style names in the plane, u_ij-style in general."""
    if n == 2:
        letters = "xy"
        if j is None:
            return "u_%s" % letters[i]
        return "u_%s%s" % (letters[min(i, j)], letters[max(i, j)])
    if j is None:
        return "u_%d" % i
    return "u_%d%d" % (min(i, j), max(i, j))
