"""Descriptors for the exceptional fillings: Seifert pieces, gluings,
self-gluings and torus bundles, with the filling formulas, a canonical
form, and first homology.

A Seifert piece is a circle bundle over a disc, annulus, sphere or
projective plane with an ordered list of integer fiber parameters
(p, q).  Parameters are unrestricted on input: (1, q) is a trivially
filled boundary carrying q vertical twists, (0, 1) is a filling along
the fiber, and (0, 0) marks a boundary left unfilled.  Descriptors
combine pieces into closed manifolds by a gluing matrix, a self-gluing
of an annulus piece, or a torus-bundle monodromy.

Boundary bases are (mu, lambda) = (base boundary circle, fiber).  The
homology conventions used here (the sign of the boundary circle class
and the direction a gluing matrix maps) were pinned by requiring the
first homology of every descriptor in the embedded tables to agree
with the chain-link surgery presentation; the test suite enforces this
rather than assuming it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from math import gcd

from .slopes import Slope, canonical_pair

__all__ = [
    "BaseSurface",
    "SeifertPiece",
    "ManifoldDescriptor",
    "AbelianGroup",
    "UnsupportedSlopeError",
    "BoundaryError",
    "fill_m5",
    "fill_m4",
    "normalize",
    "first_homology",
    "is_lens_like",
    "lens_parameters",
    "smith_invariant_factors",
    "descriptor_to_json",
    "descriptor_from_json",
    "h1_chain_link_surgery",
]


class BaseSurface(Enum):
    DISC = "D"
    ANNULUS = "A"
    SPHERE = "S2"
    RP2 = "RP2"


class UnsupportedSlopeError(ValueError):
    """The filling formulas only cover the base exceptional slopes."""


class BoundaryError(ValueError):
    """An operation that needs a closed manifold met unfilled boundary."""


@dataclass(frozen=True)
class SeifertPiece:
    base: BaseSurface
    fibers: tuple

    def __post_init__(self):
        object.__setattr__(self, "fibers", tuple((int(p), int(q)) for p, q in self.fibers))

    @property
    def genuine_fiber_count(self):
        """Fibers that survive normalisation as exceptional fibers."""
        return sum(1 for p, _ in self.fibers if abs(p) >= 2)

    def has_unfilled(self):
        return any((p, q) == (0, 0) for p, q in self.fibers)

    def __str__(self):
        return "%s[%s]" % (
            self.base.value,
            ",".join("(%d,%d)" % f for f in self.fibers),
        )


def _mat(entries):
    a, b, c, d = entries
    return (int(a), int(b), int(c), int(d))


def mat_det(m):
    return m[0] * m[3] - m[1] * m[2]


def mat_mul(m, n):
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


@dataclass(frozen=True)
class ManifoldDescriptor:
    """Shapes: closed (one piece, closed base), union (two disc pieces
    glued along their boundaries), selfglued (annulus piece with its two
    boundaries identified), torusbundle (mapping torus), withboundary
    (any of the above carrying unfilled boundary markers)."""

    shape: str
    pieces: tuple = ()
    glue: tuple = None
    reducible_candidate: bool = False

    @staticmethod
    def closed(piece):
        return ManifoldDescriptor("closed", (piece,))

    @staticmethod
    def union(left, glue, right):
        return ManifoldDescriptor("union", (left, right), _mat(glue))

    @staticmethod
    def self_glued(piece, glue):
        return ManifoldDescriptor("selfglued", (piece,), _mat(glue))

    @staticmethod
    def torus_bundle(monodromy):
        return ManifoldDescriptor("torusbundle", (), _mat(monodromy))

    @staticmethod
    def with_boundary(shape, pieces, glue=None):
        return ManifoldDescriptor("withboundary:" + shape, tuple(pieces), glue)

    @property
    def has_boundary(self):
        return self.shape.startswith("withboundary") or any(
            p.has_unfilled() for p in self.pieces
        )

    def __str__(self):
        if self.shape == "closed":
            return str(self.pieces[0])
        if self.shape == "union":
            return "%s u[%d,%d;%d,%d] %s" % (
                (self.pieces[0],) + self.glue + (self.pieces[1],)
            )
        if self.shape == "selfglued":
            return "%s /[%d,%d;%d,%d]" % ((self.pieces[0],) + self.glue)
        if self.shape == "torusbundle":
            return "T[%d,%d;%d,%d]" % self.glue
        return self.shape + " " + " ".join(str(p) for p in self.pieces)


@dataclass(frozen=True)
class AbelianGroup:
    """A finitely generated abelian group in invariant-factor form."""

    rank: int
    torsion: tuple

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))

    @property
    def order(self):
        """The order, or None for infinite groups."""
        if self.rank:
            return None
        n = 1
        for t in self.torsion:
            n *= t
        return n

    @property
    def is_trivial(self):
        return self.rank == 0 and not self.torsion

    def __str__(self):
        parts = ["Z"] * self.rank + ["Z/%d" % t for t in self.torsion]
        return " + ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_invariant_factors(rows, ncols):
    """Invariant factors (with divisibility) of an integer matrix.

    Returns the list of nonzero invariant factors; the matrix rank is
    their count.  Exact integer arithmetic throughout.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    invariants = []
    r = c = 0
    while r < nrows and c < ncols:
        pivot = None
        best = None
        for i in range(r, nrows):
            for j in range(c, ncols):
                v = abs(m[i][j])
                if v and (best is None or v < best):
                    best = v
                    pivot = (i, j)
        if pivot is None:
            break
        i0, j0 = pivot
        m[r], m[i0] = m[i0], m[r]
        for row in m:
            row[c], row[j0] = row[j0], row[c]
        p = m[r][c]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c] // p
                mr = m[r]
                m[i] = [a - f * b for a, b in zip(m[i], mr)]
        for j in range(ncols):
            if j != c and m[r][j]:
                f = m[r][j] // p
                for i in range(nrows):
                    m[i][j] -= f * m[i][c]
        if any(m[r][j] for j in range(ncols) if j != c) or any(
            m[i][c] for i in range(nrows) if i != r
        ):
            continue
        invariants.append(abs(p))
        r += 1
        c += 1
    invariants = [x for x in invariants if x]
    changed = True
    while changed:
        changed = False
        for i in range(len(invariants)):
            for j in range(i + 1, len(invariants)):
                a, b = invariants[i], invariants[j]
                g = gcd(a, b)
                l = a * b // g
                if (a, b) != (g, l):
                    invariants[i], invariants[j] = g, l
                    changed = True
    invariants.sort()
    return invariants


def _group_from_presentation(rows, ngens):
    invs = smith_invariant_factors(rows, ngens)
    rank = ngens - len(invs)
    torsion = tuple(x for x in invs if x > 1)
    return AbelianGroup(rank, torsion)


# ---------------------------------------------------------------------------
# first homology of descriptors
# ---------------------------------------------------------------------------

def _piece_presentation(piece, gen_names, rows, prefix):
    """Install a piece's generators and fiber relations.

    Returns (mu_vector, lambda_vector) expressions of the piece's first
    free boundary classes as coefficient dicts, or for closed bases
    installs the closing relation instead and returns None.
    """
    t = prefix + ".t"
    gen_names.append(t)
    fiber_gens = []
    for k, (p, q) in enumerate(piece.fibers):
        x = "%s.x%d" % (prefix, k)
        gen_names.append(x)
        fiber_gens.append(x)
        rows.append({x: p, t: q})
    if piece.base is BaseSurface.SPHERE:
        rows.append({x: 1 for x in fiber_gens})
        return None
    if piece.base is BaseSurface.RP2:
        v = prefix + ".v"
        gen_names.append(v)
        rows.append({t: 2})
        rel = {x: 1 for x in fiber_gens}
        rel[v] = 2
        rows.append(rel)
        return None
    if piece.base is BaseSurface.DISC:
        # the boundary circle is homologous to minus the sum of the
        # fiber circles in the punctured base
        mu = {x: -1 for x in fiber_gens}
        lam = {t: 1}
        return (mu, lam)
    if piece.base is BaseSurface.ANNULUS:
        u = prefix + ".u"
        gen_names.append(u)
        mu1 = {u: 1}
        lam1 = {t: 1}
        mu2 = {x: -1 for x in fiber_gens}
        mu2[u] = -1
        lam2 = {t: 1}
        return (mu1, lam1, mu2, lam2)
    raise AssertionError(piece.base)


def _combine(vec_a, coef_a, vec_b, coef_b):
    out = {}
    for vec, coef in ((vec_a, coef_a), (vec_b, coef_b)):
        if not coef:
            continue
        for g, v in vec.items():
            out[g] = out.get(g, 0) + coef * v
    return {g: v for g, v in out.items() if v}


def _glue_relations(mu_x, lam_x, mu_y, lam_y, glue):
    """Identify boundary tori through a gluing matrix (a, b, c, d):
    the class mu_X is identified with a*mu_Y + c*lam_Y and lam_X with
    b*mu_Y + d*lam_Y.

    The column reading (rather than rows) is forced by the homology
    cross-fit against the surgery presentation over the embedded table
    descriptors; the test suite enforces it.
    """
    a, b, c, d = glue
    rel1 = _combine(mu_x, 1, _combine(mu_y, a, lam_y, c), -1)
    rel2 = _combine(lam_x, 1, _combine(mu_y, b, lam_y, d), -1)
    return [rel1, rel2]


def first_homology(descriptor):
    """First homology of a closed descriptor, by Smith normal form of
    the abelianised block presentation."""
    if descriptor.has_boundary:
        raise BoundaryError("descriptor has unfilled boundary")
    gen_names = []
    rows = []
    if descriptor.shape == "torusbundle":
        a, b, c, d = descriptor.glue
        rows_tb = [(a - 1, b), (c, d - 1)]
        invs = smith_invariant_factors(rows_tb, 2)
        rank = 1 + (2 - len(invs))
        torsion = tuple(x for x in invs if x > 1)
        return AbelianGroup(rank, torsion)
    if descriptor.shape == "closed":
        _piece_presentation(descriptor.pieces[0], gen_names, rows, "a")
    elif descriptor.shape == "union":
        bx = _piece_presentation(descriptor.pieces[0], gen_names, rows, "a")
        by = _piece_presentation(descriptor.pieces[1], gen_names, rows, "b")
        rows.extend(_glue_relations(bx[0], bx[1], by[0], by[1], descriptor.glue))
    elif descriptor.shape == "selfglued":
        bx = _piece_presentation(descriptor.pieces[0], gen_names, rows, "a")
        mu1, lam1, mu2, lam2 = bx
        # identifying two boundaries of the same piece adds the class of
        # an arc joining them, which closes into a free loop
        gen_names.append("a.s")
        rows.extend(_glue_relations(mu2, lam2, mu1, lam1, descriptor.glue))
    else:
        raise BoundaryError("descriptor has unfilled boundary")
    index = {g: i for i, g in enumerate(gen_names)}
    matrix = []
    for rel in rows:
        row = [0] * len(gen_names)
        for g, v in rel.items():
            row[index[g]] = v
        matrix.append(row)
    return _group_from_presentation(matrix, len(gen_names))


# ---------------------------------------------------------------------------
# filling formulas
# ---------------------------------------------------------------------------

UNION_MATRIX = (0, 1, 1, 0)


def _slope_pairs(slopes, n):
    pairs = []
    for s in slopes:
        pairs.append(s.pair if isinstance(s, Slope) else canonical_pair(*s))
    if len(pairs) != n:
        raise ValueError("expected %d slopes" % n)
    return pairs


def _maybe_with_boundary(descriptor):
    if any(p.has_unfilled() for p in descriptor.pieces):
        return ManifoldDescriptor(
            "withboundary:" + descriptor.shape, descriptor.pieces, descriptor.glue
        )
    return descriptor


def fill_m5(alpha, beta):
    """The raw descriptor of the beta-filling of a four-slope
    instruction on the five-chain-link exterior, for beta in 0, 1, inf.

    Empty slots read as (0, 0) fiber parameters and leave boundary.  No
    simplification is applied.
    """
    (a, b), (c, d), (e, f), (g, h) = _slope_pairs(alpha, 4)
    beta_pair = beta.pair if isinstance(beta, Slope) else canonical_pair(*beta)
    if beta_pair == (1, 0):
        left = SeifertPiece(BaseSurface.DISC, ((a, -b), (d, c)))
        right = SeifertPiece(BaseSurface.DISC, ((f, e), (g, -h)))
    elif beta_pair == (1, 1):
        left = SeifertPiece(BaseSurface.DISC, ((a - b, b), (e, f)))
        right = SeifertPiece(BaseSurface.DISC, ((g - h, h), (c, d)))
    elif beta_pair == (0, 1):
        left = SeifertPiece(BaseSurface.DISC, ((b, b - a), (h, -g)))
        right = SeifertPiece(BaseSurface.DISC, ((c - d, c), (e - f, f)))
    else:
        raise UnsupportedSlopeError(
            "no filling formula for slope %s" % Slope.from_pair(beta_pair)
        )
    return _maybe_with_boundary(ManifoldDescriptor.union(left, UNION_MATRIX, right))


def fill_m4(alpha, beta):
    """The raw descriptor of the beta-filling of a three-slope
    instruction on the four-chain-link exterior, for beta in 0, 1, 2, inf."""
    (a, b), (c, d), (e, f) = _slope_pairs(alpha, 3)
    beta_pair = beta.pair if isinstance(beta, Slope) else canonical_pair(*beta)
    if beta_pair == (1, 0):
        out = ManifoldDescriptor.closed(
            SeifertPiece(BaseSurface.SPHERE, ((a, b), (d, -c), (e, f)))
        )
    elif beta_pair == (2, 1):
        out = ManifoldDescriptor.union(
            SeifertPiece(BaseSurface.DISC, ((a - b, b), (e - f, f))),
            UNION_MATRIX,
            SeifertPiece(BaseSurface.DISC, ((c, d), (2, -1))),
        )
    elif beta_pair == (1, 1):
        out = ManifoldDescriptor.closed(
            SeifertPiece(BaseSurface.SPHERE, ((a - 2 * b, b), (c - d, c), (e - 2 * f, f)))
        )
    elif beta_pair == (0, 1):
        out = ManifoldDescriptor.union(
            SeifertPiece(BaseSurface.DISC, ((f, -e), (b, 2 * b - a))),
            UNION_MATRIX,
            SeifertPiece(BaseSurface.DISC, ((2, 1), (c - 2 * d, d))),
        )
    else:
        raise UnsupportedSlopeError(
            "no filling formula for slope %s" % Slope.from_pair(beta_pair)
        )
    return _maybe_with_boundary(out)


# ---------------------------------------------------------------------------
# normalisation
# ---------------------------------------------------------------------------

def _clean_piece(piece):
    """Apply the fiber moves inside one piece: sign normalisation,
    q-reduction and trivial-fiber absorption.

    Returns (fibers, twist): every kept fiber has p >= 2 with
    0 <= q < p, or is (0, 1) (a filling along the fiber), or (0, 0)
    (unfilled boundary); the integer twist collects the transferred
    vertical twists.
    """
    fibers = []
    twist = 0
    for p, q in piece.fibers:
        if (p, q) == (0, 0):
            fibers.append((0, 0))
            continue
        if p < 0 or (p == 0 and q < 0):
            p, q = -p, -q
        if p == 0:
            # fillings along multiples of the fiber are kept verbatim:
            # (0, q) with q > 1 is not a slope and cannot be reduced
            fibers.append((0, q))
            continue
        k = q // p
        q -= k * p
        twist += k
        if p == 1 and q == 0:
            continue
        fibers.append((p, q))
    fibers.sort()
    return tuple(fibers), twist


def _glue_left_twist(glue, k):
    """Absorb k vertical twists of the left piece: mu_X becomes
    mu_X + k*lam_X, so the identified classes shift accordingly."""
    a, b, c, d = glue
    return (a - k * b, b, c - k * d, d)


def _glue_right_twist(glue, k):
    """Absorb k vertical twists of the right piece: mu_Y becomes
    mu_Y + k*lam_Y on the target side."""
    a, b, c, d = glue
    return (a, b, c + k * a, d + k * b)


def _glue_inverse(glue):
    """The gluing read from the other side."""
    a, b, c, d = glue
    det = a * d - b * c
    if det == 1:
        return (d, -b, -c, a)
    if det == -1:
        return (-d, b, c, -a)
    raise ValueError("gluing matrix is not unimodular")


def _transport_left_meridian(glue, p, q):
    """Coordinates on the right boundary of the slope p*mu_X + q*lam_X."""
    a, b, c, d = glue
    return (p * a + q * b, p * c + q * d)


def _solid_torus_meridian(fibers):
    """Boundary coordinates of the meridian disc of a one-fiber disc
    piece.  With the boundary circle equal to minus the fiber class,
    the disc piece D[(p, q)] kills -p*mu + q*lam; an empty disc piece
    kills mu itself."""
    if not fibers:
        return (1, 0)
    p, q = fibers[0]
    return (-p, q)


def _is_solid_torus(fibers):
    if not fibers:
        return True
    if len(fibers) > 1:
        return False
    p, q = fibers[0]
    return gcd(abs(p), abs(q)) == 1


def _piece_key(piece):
    return (piece.base.value, piece.fibers)


def _flag_fibers(fibers):
    """Conservative reducible test for a cleaned fiber list: a filling
    along the fiber direction living next to any other fiber splits off
    a summand."""
    zeros = sum(1 for p, q in fibers if p == 0 and q >= 1)
    others = sum(1 for p, _ in fibers if p >= 1)
    return zeros >= 2 or (zeros >= 1 and others >= 1)


def _normalize_closed(piece, flagged):
    fibers, twist = _clean_piece(piece)
    flagged = flagged or _flag_fibers(fibers)
    if twist != 0:
        fibers = tuple(sorted(fibers + ((1, twist),)))
    out = SeifertPiece(piece.base, fibers)
    shape = "withboundary:closed" if out.has_unfilled() else "closed"
    return ManifoldDescriptor(shape, (out,), None, flagged)


def _normalize_union(left, glue, right, flagged):
    lf, lt = _clean_piece(left)
    glue = _glue_left_twist(glue, lt)
    rf, rt = _clean_piece(right)
    glue = _glue_right_twist(glue, rt)
    flagged = flagged or _flag_fibers(lf) or _flag_fibers(rf)
    if any(f == (0, 0) for f in lf + rf):
        return ManifoldDescriptor(
            "withboundary:union",
            (SeifertPiece(BaseSurface.DISC, lf), SeifertPiece(BaseSurface.DISC, rf)),
            glue,
            flagged,
        )
    if _is_solid_torus(lf):
        p, q = _solid_torus_meridian(lf)
        new_fiber = _transport_left_meridian(glue, p, q)
        merged = SeifertPiece(BaseSurface.SPHERE, rf + (new_fiber,))
        return _normalize_closed(merged, flagged)
    if _is_solid_torus(rf):
        p, q = _solid_torus_meridian(rf)
        new_fiber = _transport_left_meridian(_glue_inverse(glue), p, q)
        merged = SeifertPiece(BaseSurface.SPHERE, lf + (new_fiber,))
        return _normalize_closed(merged, flagged)
    # canonical side order and gluing representative
    candidates = []
    for fibers_a, fibers_b, g in (
        (lf, rf, glue),
        (rf, lf, _glue_inverse(glue)),
    ):
        for gg in (g, tuple(-x for x in g)):
            candidates.append((fibers_a, gg, fibers_b))
    fibers_a, g, fibers_b = min(candidates)
    return ManifoldDescriptor(
        "union",
        (SeifertPiece(BaseSurface.DISC, fibers_a), SeifertPiece(BaseSurface.DISC, fibers_b)),
        g,
        flagged,
    )


def _normalize_selfglued(piece, glue, flagged):
    fibers, twist = _clean_piece(piece)
    glue = _glue_left_twist(glue, twist)
    flagged = flagged or _flag_fibers(fibers) or any(f == (0, 1) for f in fibers)
    if any(f == (0, 0) for f in fibers):
        return ManifoldDescriptor(
            "withboundary:selfglued",
            (SeifertPiece(BaseSurface.ANNULUS, fibers),),
            glue,
            flagged,
        )
    # no sign or inverse rewriting here: the two boundary circles of the
    # annulus piece play asymmetric roles in the presentation, so only
    # the twist transfer is homology-safe
    return ManifoldDescriptor(
        "selfglued", (SeifertPiece(BaseSurface.ANNULUS, fibers),), glue, flagged
    )


def _normalize_torus_bundle(mono, flagged):
    # reversing the bundle direction inverts the monodromy; negating it
    # would change the manifold, so only the inverse is identified
    return ManifoldDescriptor(
        "torusbundle", (), min(mono, _glue_inverse(mono)), flagged
    )


def normalize(descriptor):
    """Canonical form of a descriptor.

    Applies, to a fixed point: fiber sign and range normalisation with
    twist transfer into gluings (or into a trailing (1, b) fiber on
    closed bases), trivial-fiber absorption, solid-torus absorption of
    disc pieces inside unions, the reducible-candidate flag for fiber
    fillings, and a deterministic ordering of fibers, sides and gluing
    representatives.  Every move preserves first homology; the output
    is a fixed point of the move set.
    """
    flagged = descriptor.reducible_candidate
    shape = descriptor.shape
    base_shape = shape.split(":", 1)[1] if shape.startswith("withboundary:") else shape
    if base_shape == "closed":
        return _normalize_closed(descriptor.pieces[0], flagged)
    if base_shape == "union":
        return _normalize_union(
            descriptor.pieces[0], descriptor.glue, descriptor.pieces[1], flagged
        )
    if base_shape == "selfglued":
        return _normalize_selfglued(descriptor.pieces[0], descriptor.glue, flagged)
    if base_shape == "torusbundle":
        return _normalize_torus_bundle(descriptor.glue, flagged)
    raise AssertionError(shape)


def is_lens_like(descriptor):
    """True iff the normal form is a closed sphere-base piece with at
    most two exceptional fibers (after all absorptions)."""
    d = normalize(descriptor)
    if d.has_boundary or d.shape != "closed":
        return False
    piece = d.pieces[0]
    if piece.base is not BaseSurface.SPHERE:
        return False
    if any(p == 0 for p, _ in piece.fibers):
        return False
    return piece.genuine_fiber_count <= 2


def lens_parameters(descriptor):
    """Order of the fundamental group and the normal-form fibers of a
    lens-like descriptor, else None."""
    if not is_lens_like(descriptor):
        return None
    d = normalize(descriptor)
    return (first_homology(d).order, d.pieces[0].fibers)


# ---------------------------------------------------------------------------
# chain-link surgery presentation (independent homology route)
# ---------------------------------------------------------------------------

# linking signs of consecutive components; the gauge class (odd number
# of negative clasps) is what matters, pinned by the table homology fit
CHAIN_LINK_SIGNS = (1, 1, 1, 1, -1)


def h1_chain_link_surgery(pairs):
    """First homology of a filling of the five-chain-link exterior
    directly from the surgery presentation: one meridian generator per
    component, one relation p*mu_i + q*lambda_i per filled component.

    `pairs` is a length-5 sequence of slope pairs, (0, 0) for unfilled.
    """
    rows = []
    eps = CHAIN_LINK_SIGNS
    for i, (p, q) in enumerate(pairs):
        if (p, q) == (0, 0):
            continue
        row = [0] * 5
        row[i] = p
        row[(i + 1) % 5] += q * eps[i]
        row[(i - 1) % 5] += q * eps[(i - 1) % 5]
        rows.append(row)
    return _group_from_presentation(rows, 5)


# ---------------------------------------------------------------------------
# serialisation
# ---------------------------------------------------------------------------

FORMAT_VERSION = 1


def descriptor_to_json(descriptor):
    doc = {
        "format": FORMAT_VERSION,
        "shape": descriptor.shape,
        "pieces": [
            {"base": p.base.value, "fibers": [list(f) for f in p.fibers]}
            for p in descriptor.pieces
        ],
    }
    if descriptor.glue is not None:
        doc["glue"] = list(descriptor.glue)
    if descriptor.reducible_candidate:
        doc["reducible_candidate"] = True
    return doc


_BASES = {b.value: b for b in BaseSurface}


def descriptor_from_json(doc):
    if doc.get("format") != FORMAT_VERSION:
        raise ValueError("unsupported descriptor format: %r" % doc.get("format"))
    pieces = tuple(
        SeifertPiece(_BASES[p["base"]], tuple(tuple(f) for f in p["fibers"]))
        for p in doc["pieces"]
    )
    glue = tuple(doc["glue"]) if "glue" in doc else None
    return ManifoldDescriptor(
        doc["shape"], pieces, glue, bool(doc.get("reducible_candidate", False))
    )


def dumps(descriptor):
    return json.dumps(descriptor_to_json(descriptor), sort_keys=True)


def loads(text):
    return descriptor_from_json(json.loads(text))
