"""Embedded classification data: the isolated exceptional instructions,
the non-hyperbolic filling list for the three-chain-link exterior, the
construction sets for the slope enumeration, and the six tables of
filling instructions with extra exceptional slopes and their fillings.

Every record keeps the source coordinates verbatim; loaders validate
shape and unimodularity and record (rather than repair) the known
irregularities, which the verifier reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instructions import FillingInstruction, Manifold
from .seifert import (
    BaseSurface,
    ManifoldDescriptor,
    SeifertPiece,
    mat_det,
)
from .slopes import canonical_pair

__all__ = [
    "TableRow",
    "DescriptorTemplate",
    "PieceTemplate",
    "ALL_ROWS",
    "TABLES",
    "ISOLATED_INSTRUCTIONS",
    "M3_ISOLATED_SINGLES",
    "M3_ISOLATED_PAIRS",
    "M3_ISOLATED_TRIPLES",
    "L_SET_MEMBERS",
    "M_ROUTE_FILLINGS",
    "validate_tables",
]


def _c(num, den=1):
    return ("c", canonical_pair(num, den))


def _v(name):
    return ("v", name)


def _fc(p, q):
    return ("c", (p, q))


def _fv(name, matrix):
    return ("v", name, matrix)


@dataclass(frozen=True)
class PieceTemplate:
    base: BaseSurface
    fibers: tuple

    def instantiate(self, env):
        out = []
        for spec in self.fibers:
            if spec[0] == "c":
                out.append(spec[1])
            else:
                _, name, (a, b, c, d) = spec
                num, den = env[name]
                out.append((a * num + b * den, c * num + d * den))
        return SeifertPiece(self.base, tuple(out))


@dataclass(frozen=True)
class DescriptorTemplate:
    shape: str
    pieces: tuple
    glue: tuple = None

    def instantiate(self, env=None):
        env = env or {}
        pieces = tuple(p.instantiate(env) for p in self.pieces)
        if self.shape == "closed":
            return ManifoldDescriptor.closed(pieces[0])
        if self.shape == "union":
            return ManifoldDescriptor.union(pieces[0], self.glue, pieces[1])
        if self.shape == "selfglued":
            return ManifoldDescriptor.self_glued(pieces[0], self.glue)
        if self.shape == "torusbundle":
            return ManifoldDescriptor.torus_bundle(self.glue)
        raise AssertionError(self.shape)

    @property
    def params(self):
        names = set()
        for piece in self.pieces:
            for spec in piece.fibers:
                if spec[0] == "v":
                    names.add(spec[1])
        return names


D, A, S2, RP2 = BaseSurface.DISC, BaseSurface.ANNULUS, BaseSurface.SPHERE, BaseSurface.RP2


def _sphere(*fibers):
    return DescriptorTemplate("closed", (PieceTemplate(S2, tuple(fibers)),))


def _rp2(*fibers):
    return DescriptorTemplate("closed", (PieceTemplate(RP2, tuple(fibers)),))


def _union(left, glue, right):
    return DescriptorTemplate(
        "union", (PieceTemplate(D, tuple(left)), PieceTemplate(D, tuple(right))), glue
    )


def _ann(fibers, glue):
    return DescriptorTemplate("selfglued", (PieceTemplate(A, tuple(fibers)),), glue)


def _tb(glue):
    return DescriptorTemplate("torusbundle", (), glue)


@dataclass(frozen=True)
class TableRow:
    """One row of the embedded atlas: a (possibly parametric) filling
    instruction with its extra exceptional slopes and their fillings.

    Free parameters are named p, r, u; a parameter value P/Q enters
    symbolic fibers through an integer matrix acting on (P, Q).  The
    base exceptional slopes and generic parameter constraints are not
    stored per row: they are properties of the classification and live
    in the classifier.
    """

    row_id: str
    table: str
    manifold: Manifold
    alpha: tuple
    extras: tuple

    @property
    def params(self):
        return tuple(s[1] for s in self.alpha if s[0] == "v")

    @property
    def is_parametric(self):
        return bool(self.params)

    def alpha_pairs(self, env=None):
        env = env or {}
        out = []
        for spec in self.alpha:
            if spec[0] == "c":
                out.append(spec[1])
            else:
                out.append(canonical_pair(*env[spec[1]]))
        return tuple(out)

    def instruction(self, env=None):
        pairs = self.alpha_pairs(env) + ((0, 0),) * (
            self.manifold.cusps - len(self.alpha)
        )
        return FillingInstruction.from_pairs(self.manifold, pairs)

    def extra_slopes(self):
        return tuple(beta for beta, _ in self.extras)


M5, M4 = Manifold.M5, Manifold.M4

# ---------------------------------------------------------------------------
# instructions on M5 with two extra exceptional slopes
# ---------------------------------------------------------------------------

T1_ROWS = (
    TableRow(
        "t1.1", "t1", M5,
        (_c(-2), _c(-1, 2), _c(3), _c(3)),
        (
            ((-1, 1), _sphere(_fc(2, 1), _fc(5, -2), _fc(4, -1))),
            ((-1, 2), _ann((_fc(2, -1),), (1, 2, 1, 1))),
        ),
    ),
    TableRow(
        "t1.2", "t1", M5,
        (_c(-2), _c(3, 2), _c(3, 2), _c(-2)),
        (
            ((-1, 1), _rp2(_fc(2, -1), _fc(3, 1))),
            ((-1, 2), _ann((_fc(2, -1),), (1, 2, 1, 1))),
        ),
    ),
    TableRow(
        "t1.3", "t1", M5,
        (_c(-2), _c(-3), _c(-1, 2), _c(-2)),
        (
            ((-1, 1), _sphere(_fc(2, -1), _fc(3, 1), _fc(13, 2))),
            ((2, 1), _union((_fc(2, 1), _fc(3, 1)), (1, 1, 1, 0), (_fc(2, 1), _fc(3, -8)))),
        ),
    ),
    TableRow(
        "t1.4", "t1", M5,
        (_c(-2), _c(-1, 3), _c(3), _c(2, 3)),
        (
            ((-1, 1), _sphere(_fc(2, 1), _fc(7, -2), _fc(5, -3))),
            ((2, 1), _ann((_fc(2, 3),), (0, 1, 1, 0))),
        ),
    ),
    TableRow(
        "t1.5", "t1", M5,
        (_c(-2), _c(-1, 2), _c(3), _c(2, 3)),
        (
            ((-1, 1), _sphere(_fc(2, 1), _fc(5, -2), _fc(5, -3))),
            ((2, 1), _sphere(_fc(2, -1), _fc(3, 1), _fc(11, 2))),
        ),
    ),
    TableRow(
        "t1.6", "t1", M5,
        (_c(-2), _c(-2), _c(-2), _c(-2)),
        (
            ((-1, 1), _sphere(_fc(2, -1), _fc(3, 1), _fc(7, 1))),
            ((-2, 1), _union((_fc(2, 1), _fc(2, -1)), (-1, 5, 1, -4), (_fc(2, 1), _fc(3, 1)))),
        ),
    ),
)

# ---------------------------------------------------------------------------
# parametric instructions on M5 with one extra exceptional slope
# ---------------------------------------------------------------------------

T2_ROWS = (
    TableRow(
        "t2.1", "t2", M5,
        (_c(-2), _v("p"), _c(3), _v("u")),
        (((-1, 1), _union((_fc(2, 1), _fv("p", (1, 0, 0, -1))), (0, 1, 1, 0),
                          (_fc(2, 1), _fv("u", (1, 1, 0, -1))))),),
    ),
    TableRow(
        "t2.2", "t2", M5,
        (_c(-2), _v("p"), _v("r"), _c(-2)),
        (((-1, 1), _union((_fv("r", (0, 1, -1, 2)), _fv("p", (0, 1, -1, 1))),
                          (0, 1, -1, -1), (_fc(2, 1), _fc(3, 1)))),),
    ),
    TableRow(
        "t2.3", "t2", M5,
        (_c(-2), _c(3, 2), _c(3, 2), _v("u")),
        (((-1, 1), _union((_fc(2, 1), _fc(3, 1)), (1, 1, 0, -1),
                          (_fc(2, 1), _fv("u", (1, 0, 0, -1))))),),
    ),
    TableRow(
        "t2.4", "t2", M5,
        (_c(-2), _v("p"), _c(5, 2), _c(-1, 2)),
        (((-1, 1), _union((_fc(2, 1), _fc(3, 1)), (1, 1, 0, -1),
                          (_fc(2, 1), _fv("p", (-1, 1, 0, 1))))),),
    ),
    TableRow(
        "t2.5", "t2", M5,
        (_c(-2), _c(-2), _v("r"), _c(-3)),
        (((-1, 1), _ann((_fv("r", (0, 1, -1, 1)),), (0, 1, 1, 0))),),
    ),
    TableRow(
        "t2.6", "t2", M5,
        (_c(-2), _c(-1, 2), _c(4), _v("u")),
        (((-1, 1), _union((_fc(2, 1), _fc(3, 1)), (1, 1, 1, 0),
                          (_fc(2, 1), _fv("u", (0, 1, -1, -2))))),),
    ),
    TableRow(
        "t2.7", "t2", M5,
        (_c(-2), _v("p"), _c(4), _c(-3, 2)),
        (((-1, 1), _union((_fc(2, 1), _fc(3, 1)), (1, 1, 1, 0),
                          (_fc(2, 1), _fv("p", (0, 1, -1, -1))))),),
    ),
    TableRow(
        "t2.8", "t2", M5,
        (_c(-2), _c(1, 3), _v("r"), _c(3, 2)),
        (((1, 2), _sphere(_fc(2, -1), _fc(3, 1), _fv("r", (5, -4, 1, -1)))),),
    ),
)

# ---------------------------------------------------------------------------
# concrete instructions on M5 with one extra exceptional slope
# ---------------------------------------------------------------------------

def _concrete_row(row_id, table, slots, beta, template):
    return TableRow(
        row_id, table, M5,
        tuple(_c(*s) for s in slots),
        ((canonical_pair(*beta), template),),
    )


T3_ROWS = (
    _concrete_row("t3.1", "t3", ((-2, 1), (4, 1), (5, 1), (-3, 2)), (-1, 1),
                  _ann((_fc(2, 1),), (0, 1, 1, 0))),
    _concrete_row("t3.2", "t3", ((-2, 1), (-1, 2), (5, 1), (3, 1)), (-1, 1),
                  _ann((_fc(2, 1),), (0, 1, 1, 0))),
    _concrete_row("t3.3", "t3", ((-2, 1), (3, 1), (4, 1), (-4, 3)), (-1, 1),
                  _ann((_fc(2, 1),), (1, 1, 1, 0))),
    _concrete_row("t3.4", "t3", ((-2, 1), (3, 1), (3, 2), (-1, 2)), (-1, 1),
                  _tb((-3, 1, -1, 0))),
    _concrete_row("t3.5", "t3", ((-2, 1), (-2, 1), (4, 1), (-5, 3)), (-1, 1),
                  _union((_fc(2, 1), _fc(2, 1)), (0, 1, -1, -1), (_fc(2, 1), _fc(3, 1)))),
    _concrete_row("t3.6", "t3", ((-2, 1), (-2, 3), (4, 1), (-3, 1)), (-1, 1),
                  _union((_fc(2, 1), _fc(2, 1)), (0, 1, -1, -1), (_fc(2, 1), _fc(3, 1)))),
    _concrete_row("t3.7", "t3", ((-2, 1), (2, 3), (5, 2), (-1, 3)), (-1, 1),
                  _union((_fc(2, 1), _fc(2, 1)), (-1, 1, 0, -1), (_fc(2, 1), _fc(3, 1)))),
    _concrete_row("t3.8", "t3", ((-2, 1), (4, 3), (3, 2), (1, 3)), (-1, 1),
                  _ann((_fc(2, 1),), (1, 1, 1, 0))),
    _concrete_row("t3.9", "t3", ((-2, 1), (-3, 1), (-2, 1), (-3, 1)), (-1, 1),
                  _sphere(_fc(2, -1), _fc(3, 1), _fc(7, 1))),
    _concrete_row("t3.10", "t3", ((-2, 1), (-2, 1), (-2, 1), (-4, 1)), (-1, 1),
                  _sphere(_fc(2, -1), _fc(3, 1), _fc(7, 1))),
)

_T4_SIGMA245 = _sphere(_fc(2, -1), _fc(4, 1), _fc(5, 1))
# displayed as S2[(3,-2),(3,1),(5,1)] in the source; its homology
# disagrees with the instruction's by a factor of two (see the verifier
# report), so the displayed coordinates are kept verbatim here
_T4_SIGMA335 = _sphere(_fc(3, -2), _fc(3, 1), _fc(5, 1))
_T4_UNION_0110 = _union((_fc(2, 1), _fc(2, 1)), (0, 1, 1, 0), (_fc(2, 1), _fc(3, 1)))

T4_ROWS = (
    _concrete_row("t4.1", "t4", ((-2, 1), (-4, 1), (-2, 1), (-3, 1)), (-1, 1), _T4_SIGMA245),
    _concrete_row("t4.2", "t4", ((-2, 1), (-2, 1), (-2, 1), (-5, 1)), (-1, 1), _T4_SIGMA245),
    _concrete_row("t4.3", "t4", ((-2, 1), (-3, 1), (-3, 1), (-3, 1)), (-1, 1), _T4_SIGMA245),
    _concrete_row("t4.4", "t4", ((-2, 1), (-2, 1), (-3, 1), (-4, 1)), (-1, 1), _T4_SIGMA245),
    _concrete_row("t4.5", "t4", ((-2, 1), (-2, 1), (-4, 1), (-4, 1)), (-1, 1), _T4_SIGMA335),
    _concrete_row("t4.6", "t4", ((-2, 1), (-5, 1), (-2, 1), (-3, 1)), (-1, 1), _T4_SIGMA335),
    _concrete_row("t4.7", "t4", ((-2, 1), (-3, 1), (-4, 1), (-3, 1)), (-1, 1), _T4_SIGMA335),
    _concrete_row("t4.8", "t4", ((-2, 1), (-2, 1), (-2, 1), (-6, 1)), (-1, 1), _T4_SIGMA335),
    _concrete_row("t4.9", "t4", ((-2, 1), (-2, 1), (-2, 1), (-7, 1)), (-1, 1), _T4_UNION_0110),
    _concrete_row("t4.10", "t4", ((-2, 1), (-6, 1), (-2, 1), (-3, 1)), (-1, 1), _T4_UNION_0110),
    _concrete_row("t4.11", "t4", ((-2, 1), (-3, 1), (-5, 1), (-3, 1)), (-1, 1), _T4_UNION_0110),
    _concrete_row("t4.12", "t4", ((-2, 1), (-2, 1), (-5, 1), (-4, 1)), (-1, 1), _T4_UNION_0110),
    _concrete_row("t4.13", "t4", ((-2, 1), (-4, 1), (-3, 1), (-3, 1)), (-1, 1),
                  _union((_fc(2, 1), _fc(2, 1)), (1, 2, 0, -1), (_fc(2, 1), _fc(3, 1)))),
    _concrete_row("t4.14", "t4", ((-2, 1), (-2, 1), (-3, 1), (-5, 1)), (-1, 1),
                  _union((_fc(2, 1), _fc(2, 1)), (1, 2, 0, -1), (_fc(2, 1), _fc(3, 1)))),
    _concrete_row("t4.15", "t4", ((-2, 1), (-3, 1), (-2, 1), (-4, 1)), (-1, 1),
                  _union((_fc(2, 1), _fc(2, 1)), (2, 3, -1, -2), (_fc(2, 1), _fc(3, 1)))),
    _concrete_row("t4.16", "t4", ((-2, 1), (3, 2), (5, 2), (-2, 3)), (-1, 1),
                  _ann((_fc(2, 1),), (2, 1, 1, 0))),
    _concrete_row("t4.17", "t4", ((-2, 1), (-2, 1), (1, 4), (3, 1)), (1, 2),
                  _sphere(_fc(2, 1), _fc(3, -1), _fc(9, -2))),
    _concrete_row("t4.18", "t4", ((-2, 1), (1, 4), (3, 2), (4, 3)), (1, 2),
                  _union((_fc(2, 1), _fc(2, 1)), (-1, 4, 1, -3), (_fc(2, 1), _fc(3, 1)))),
    _concrete_row("t4.19", "t4", ((-2, 1), (1, 3), (2, 3), (5, 3)), (1, 2),
                  _sphere(_fc(2, 1), _fc(3, -1), _fc(5, 2))),
)

# ---------------------------------------------------------------------------
# instructions on M4
# ---------------------------------------------------------------------------

T5_ROWS = (
    TableRow(
        "t5.1", "t5", M4,
        (_c(-2), _c(-2), _c(-2)),
        (
            ((-2, 1), _union((_fc(2, 1), _fc(2, -1)), (-1, 4, 1, -3), (_fc(2, 1), _fc(3, 1)))),
            ((-1, 1), _tb((3, 1, -1, 0))),
        ),
    ),
    TableRow(
        "t5.2", "t5", M4,
        (_c(-2), _c(-1, 2), _c(-2)),
        (
            ((-1, 1), _ann((_fc(2, 1),), (-1, 1, 1, 0))),
            ((3, 1), _union((_fc(2, 1), _fc(2, 1)), (-1, 1, 0, -1), (_fc(2, 1), _fc(3, 1)))),
        ),
    ),
)

T6_ROWS = (
    TableRow(
        "t6.1", "t6", M4,
        (_c(-2), _v("r"), _c(-2)),
        (((-1, 1), _ann((_fv("r", (0, 1, -1, 1)),), (0, 1, 1, 0))),),
    ),
    TableRow(
        "t6.2", "t6", M4,
        (_v("p"), _c(4), _c(-1, 2)),
        (((-1, 1), _union((_fc(2, 1), _fc(3, 1)), (1, 1, 1, 0),
                          (_fc(2, 1), _fv("p", (0, -1, 1, 1))))),),
    ),
    TableRow(
        "t6.3", "t6", M4,
        (_c(4), _c(5), _c(-1, 2)),
        (((-1, 1), _ann((_fc(2, 1),), (0, 1, 1, 0))),),
    ),
    TableRow(
        "t6.4", "t6", M4,
        (_c(-2), _c(4), _c(-2, 3)),
        (((-1, 1), _union((_fc(2, 1), _fc(2, -1)), (-1, 1, 0, -1), (_fc(2, 1), _fc(3, 1)))),),
    ),
    TableRow(
        "t6.5", "t6", M4,
        (_c(-2), _c(-5), _c(-3)),
        (((-1, 1), _union((_fc(2, 1), _fc(2, 1)), (0, 1, 1, 0), (_fc(2, 1), _fc(3, 1)))),),
    ),
    TableRow(
        "t6.6", "t6", M4,
        (_c(-2), _c(-2), _c(-6)),
        (((-1, 1), _union((_fc(2, 1), _fc(2, 1)), (0, 1, 1, 0), (_fc(2, 1), _fc(3, 1)))),),
    ),
    TableRow(
        "t6.7", "t6", M4,
        (_c(-2), _c(-2), _c(-3)),
        (((-1, 1), _sphere(_fc(2, -1), _fc(3, 1), _fc(7, 1))),),
    ),
    TableRow(
        "t6.8", "t6", M4,
        (_c(-2), _c(-3), _c(-3)),
        (((-1, 1), _sphere(_fc(2, -1), _fc(4, 1), _fc(5, 1))),),
    ),
    TableRow(
        "t6.9", "t6", M4,
        (_c(-2), _c(-2), _c(-4)),
        (((-1, 1), _sphere(_fc(2, -1), _fc(4, 1), _fc(5, 1))),),
    ),
    TableRow(
        "t6.10", "t6", M4,
        (_c(-3), _c(-4), _c(-2)),
        (((-1, 1), _sphere(_fc(3, -2), _fc(3, 1), _fc(4, 1))),),
    ),
    TableRow(
        "t6.11", "t6", M4,
        (_c(-2), _c(-2), _c(-5)),
        (((-1, 1), _sphere(_fc(3, -2), _fc(3, 1), _fc(4, 1))),),
    ),
    TableRow(
        "t6.12", "t6", M4,
        (_c(-3), _c(-2), _c(-3)),
        (((-1, 1), _union((_fc(2, 1), _fc(2, -1)), (-1, 3, 1, -2), (_fc(2, 1), _fc(3, 1)))),),
    ),
)

ALL_ROWS = T1_ROWS + T2_ROWS + T3_ROWS + T4_ROWS + T5_ROWS + T6_ROWS
TABLES = {
    "t1": T1_ROWS,
    "t2": T2_ROWS,
    "t3": T3_ROWS,
    "t4": T4_ROWS,
    "t5": T5_ROWS,
    "t6": T6_ROWS,
}
EXPECTED_ROW_COUNTS = {"t1": 6, "t2": 8, "t3": 10, "t4": 19, "t5": 2, "t6": 12}

# ---------------------------------------------------------------------------
# the classification's primitive data
# ---------------------------------------------------------------------------

def _instr5(text):
    return FillingInstruction.parse(text, Manifold.M5)


# every exceptional filling instruction on M5 contains one of these,
# up to the symmetry maps
ISOLATED_INSTRUCTIONS = (
    _instr5("(inf)"),
    _instr5("(-1,-2,-2,-1)"),
    _instr5("(-1,-2,-3,-2,-4)"),
    _instr5("(-1,-2,-2,-3,-5)"),
    _instr5("(-1,-3,-2,-2,-3)"),
    _instr5("(-2,-1/2,3,3,-1/2)"),
    _instr5("(-2,-2,-2,-2,-2)"),
)

# the closed fillings of the last three isolated instructions get names
M_NAMES = {
    "m1": _instr5("(-1,-3,-2,-2,-3)"),
    "m2": _instr5("(-2,-1/2,3,3,-1/2)"),
    "m3": _instr5("(-2,-2,-2,-2,-2)"),
}

# isolated non-hyperbolic filling instructions on the three-chain-link
# exterior, up to permutation of the cusps
M3_ISOLATED_SINGLES = tuple(
    canonical_pair(*s) for s in ((0, 1), (1, 1), (2, 1), (3, 1), (1, 0))
)
M3_ISOLATED_PAIRS = (
    ((-1, 1), (-1, 1)),
    ((4, 1), (1, 2)),
    ((3, 2), (5, 2)),
)
M3_ISOLATED_TRIPLES = (
    ((5, 1), (5, 1), (1, 2)),
    ((4, 1), (4, 1), (2, 3)),
    ((4, 1), (3, 2), (3, 2)),
    ((4, 1), (1, 3), (-1, 1)),
    ((8, 3), (3, 2), (3, 2)),
    ((5, 2), (5, 2), (4, 3)),
    ((5, 2), (5, 3), (5, 3)),
    ((7, 3), (7, 3), (3, 2)),
    ((-1, 1), (-2, 1), (-2, 1)),
    ((-1, 1), (-2, 1), (-3, 1)),
    ((-1, 1), (-2, 1), (-4, 1)),
    ((-1, 1), (-2, 1), (-5, 1)),
    ((-1, 1), (-3, 1), (-3, 1)),
    ((-2, 1), (-2, 1), (-2, 1)),
)

# the closed instructions whose fillings realise the named manifolds,
# with the first slot in the reduced form: the eight members of the
# set called l in the construction
L_SET_MEMBERS = (
    _instr5("(-2,1/4,3/2,4/3,1/2)"),
    _instr5("(-2,-1/2,3,3,-1/2)"),
    _instr5("(-2,1/3,3,1/3,-2)"),
    _instr5("(-2,-2,1/3,3,1/3)"),
    _instr5("(-2,-1/2,-2,3/2,3/2)"),
    _instr5("(-2,3/2,3/2,-2,-1/2)"),
    _instr5("(-2,-2,-2,-2,-2)"),
    _instr5("(-2,1/3,3/2,3/2,1/3)"),
)

# closed five-slot instructions with a -1 first slot whose fillings are
# the named manifolds; these seed the four-chain-link pipeline
M_ROUTE_FILLINGS = (
    _instr5("(-1,-3,-2,-2,-3)"),
    _instr5("(-1,1/3,4/3,4/3,1/3)"),
    _instr5("(-1,-1/3,4,2/3,3)"),
    _instr5("(-1,3,2/3,4,-1/3)"),
)


def validate_tables():
    """Structural checks on the embedded data.

    Returns a list of notes; raises on malformed records.  Gluing
    matrices must be unimodular; the entries whose displayed matrix has
    determinant +1 rather than -1 are recorded as notes, as are the
    descriptors known to disagree with the surgery presentation.
    """
    notes = []
    for table, rows in TABLES.items():
        if len(rows) != EXPECTED_ROW_COUNTS[table]:
            raise ValueError("table %s has %d rows" % (table, len(rows)))
    for row in ALL_ROWS:
        if len(row.alpha) != row.manifold.cusps - 1:
            raise ValueError("row %s has wrong arity" % row.row_id)
        for beta, template in row.extras:
            if template.shape in ("union", "selfglued"):
                det = mat_det(template.glue)
                if det not in (1, -1):
                    raise ValueError("row %s glue is not unimodular" % row.row_id)
                if det == 1:
                    notes.append(
                        "row %s: displayed gluing matrix has determinant +1" % row.row_id
                    )
            if template.shape == "torusbundle":
                if mat_det(template.glue) not in (1, -1):
                    raise ValueError("row %s monodromy is not unimodular" % row.row_id)
            missing = template.params - set(row.params)
            if missing:
                raise ValueError(
                    "row %s descriptor uses unknown params %s" % (row.row_id, missing)
                )
    return notes
