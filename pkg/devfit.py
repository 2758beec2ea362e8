"""Dev-only: fit the descriptor homology conventions against the
chain-link surgery presentation over all concrete table instances."""

import itertools

import chainfill.seifert as sf
from chainfill.seifert import (
    BaseSurface, SeifertPiece, ManifoldDescriptor, fill_m5, fill_m4,
    h1_chain_link_surgery, first_homology,
)
from chainfill.instructions import FillingInstruction, Manifold, m4_embed_pairs
from chainfill.slopes import canonical_pair

D, A, S2, RP2 = BaseSurface.DISC, BaseSurface.ANNULUS, BaseSurface.SPHERE, BaseSurface.RP2

def P(base, *fibers):
    return SeifertPiece(base, tuple(fibers))

def U(left, glue, right):
    return ManifoldDescriptor.union(left, glue, right)

def SG(piece, glue):
    return ManifoldDescriptor.self_glued(piece, glue)

def C(piece):
    return ManifoldDescriptor.closed(piece)

def TB(m):
    return ManifoldDescriptor.torus_bundle(m)

def I5(text):
    return FillingInstruction.parse(text, Manifold.M5)

def I4(text):
    return FillingInstruction.parse(text, Manifold.M4)

# (closed M5 instruction text, descriptor) for every concrete table entry
CASES_M5 = [
    # T1
    ("(-2,-1/2,3,3,-1)",   C(P(S2, (2,1),(5,-2),(4,-1)))),
    ("(-2,-1/2,3,3,-1/2)", SG(P(A, (2,-1)), (1,2,1,1))),
    ("(-2,3/2,3/2,-2,-1)", C(P(RP2, (2,-1),(3,1)))),
    ("(-2,3/2,3/2,-2,-1/2)", SG(P(A, (2,-1)), (1,2,1,1))),
    ("(-2,-3,-1/2,-2,-1)", C(P(S2, (2,-1),(3,1),(13,2)))),
    ("(-2,-3,-1/2,-2,2)",  U(P(D, (2,1),(3,1)), (1,1,1,0), P(D, (2,1),(3,-8)))),
    ("(-2,-1/3,3,2/3,-1)", C(P(S2, (2,1),(7,-2),(5,-3)))),
    ("(-2,-1/3,3,2/3,2)",  SG(P(A, (2,3)), (0,1,1,0))),
    ("(-2,-1/2,3,2/3,-1)", C(P(S2, (2,1),(5,-2),(5,-3)))),
    ("(-2,-1/2,3,2/3,2)",  C(P(S2, (2,-1),(3,1),(11,2)))),
    ("(-2,-2,-2,-2,-1)",   C(P(S2, (2,-1),(3,1),(7,1)))),
    ("(-2,-2,-2,-2,-2)",   U(P(D, (2,1),(2,-1)), (-1,5,1,-4), P(D, (2,1),(3,1)))),
    # T3
    ("(-2,4,5,-3/2,-1)",   SG(P(A, (2,1)), (0,1,1,0))),
    ("(-2,-1/2,5,3,-1)",   SG(P(A, (2,1)), (0,1,1,0))),
    ("(-2,3,4,-4/3,-1)",   SG(P(A, (2,1)), (1,1,1,0))),
    ("(-2,3,3/2,-1/2,-1)", TB((-3,1,-1,0))),
    ("(-2,-2,4,-5/3,-1)",  U(P(D, (2,1),(2,1)), (0,1,-1,-1), P(D, (2,1),(3,1)))),
    ("(-2,-2/3,4,-3,-1)",  U(P(D, (2,1),(2,1)), (0,1,-1,-1), P(D, (2,1),(3,1)))),
    ("(-2,2/3,5/2,-1/3,-1)", U(P(D, (2,1),(2,1)), (-1,1,0,-1), P(D, (2,1),(3,1)))),
    ("(-2,4/3,3/2,1/3,-1)", SG(P(A, (2,1)), (1,1,1,0))),
    ("(-2,-3,-2,-3,-1)",   C(P(S2, (2,-1),(3,1),(7,1)))),
    ("(-2,-2,-2,-4,-1)",   C(P(S2, (2,-1),(3,1),(7,1)))),
    # T4
    ("(-2,-4,-2,-3,-1)",   C(P(S2, (2,-1),(4,1),(5,1)))),
    ("(-2,-2,-2,-5,-1)",   C(P(S2, (2,-1),(4,1),(5,1)))),
    ("(-2,-3,-3,-3,-1)",   C(P(S2, (2,-1),(4,1),(5,1)))),
    ("(-2,-2,-3,-4,-1)",   C(P(S2, (2,-1),(4,1),(5,1)))),
    ("(-2,-2,-4,-4,-1)",   C(P(S2, (3,-2),(3,1),(5,1)))),
    ("(-2,-5,-2,-3,-1)",   C(P(S2, (3,-2),(3,1),(5,1)))),
    ("(-2,-3,-4,-3,-1)",   C(P(S2, (3,-2),(3,1),(5,1)))),
    ("(-2,-2,-2,-6,-1)",   C(P(S2, (3,-2),(3,1),(5,1)))),
    ("(-2,-2,-2,-7,-1)",   U(P(D, (2,1),(2,1)), (0,1,1,0), P(D, (2,1),(3,1)))),
    ("(-2,-6,-2,-3,-1)",   U(P(D, (2,1),(2,1)), (0,1,1,0), P(D, (2,1),(3,1)))),
    ("(-2,-3,-5,-3,-1)",   U(P(D, (2,1),(2,1)), (0,1,1,0), P(D, (2,1),(3,1)))),
    ("(-2,-2,-5,-4,-1)",   U(P(D, (2,1),(2,1)), (0,1,1,0), P(D, (2,1),(3,1)))),
    ("(-2,-4,-3,-3,-1)",   U(P(D, (2,1),(2,1)), (1,2,0,-1), P(D, (2,1),(3,1)))),
    ("(-2,-2,-3,-5,-1)",   U(P(D, (2,1),(2,1)), (1,2,0,-1), P(D, (2,1),(3,1)))),
    ("(-2,-3,-2,-4,-1)",   U(P(D, (2,1),(2,1)), (2,3,-1,-2), P(D, (2,1),(3,1)))),
    ("(-2,3/2,5/2,-2/3,-1)", SG(P(A, (2,1)), (2,1,1,0))),
    ("(-2,-2,1/4,3,1/2)",  C(P(S2, (2,1),(3,-1),(9,-2)))),
    ("(-2,1/4,3/2,4/3,1/2)", U(P(D, (2,1),(2,1)), (-1,4,1,-3), P(D, (2,1),(3,1)))),
    ("(-2,1/3,2/3,5/3,1/2)", C(P(S2, (2,1),(3,-1),(5,2)))),
]

# T2 parametric rows, instantiated on small grids: (alpha builder, beta, descriptor builder)
def t2_cases():
    cases = []
    grid = [(-3,1),(5,1),(7,2),(-5,3),(9,4)]
    for (p,q) in grid:
        for (u,v) in grid:
            cases.append(("(-2,%d/%d,3,%d/%d,-1)" % (p,q,u,v),
                          U(P(D,(2,1),(p,-q)), (0,1,1,0), P(D,(2,1),(u+v,-v)))))
            cases.append(("(-2,%d/%d,%d/%d,-2,-1)" % (p,q,u,v),
                          U(P(D,(v,2*v-u),(q,q-p)), (0,1,-1,-1), P(D,(2,1),(3,1)))))
    for (u,v) in grid:
        cases.append(("(-2,3/2,3/2,%d/%d,-1)" % (u,v),
                      U(P(D,(2,1),(3,1)), (1,1,0,-1), P(D,(2,1),(u,-v)))))
        cases.append(("(-2,%d/%d,5/2,-1/2,-1)" % (u,v),
                      U(P(D,(2,1),(3,1)), (1,1,0,-1), P(D,(2,1),(v-u,v)))))
        cases.append(("(-2,-2,%d/%d,-3,-1)" % (u,v),
                      SG(P(A,(v,v-u)), (0,1,1,0))))
        cases.append(("(-2,-1/2,4,%d/%d,-1)" % (u,v),
                      U(P(D,(2,1),(3,1)), (1,1,1,0), P(D,(2,1),(v,-u-2*v)))))
        cases.append(("(-2,%d/%d,4,-3/2,-1)" % (u,v),
                      U(P(D,(2,1),(3,1)), (1,1,1,0), P(D,(2,1),(v,-u-v)))))
        cases.append(("(-2,1/3,%d/%d,3/2,1/2)" % (u,v),
                      C(P(S2,(2,-1),(3,1),(5*u-4*v,u-v)))))
    return cases

# Tables 5-6 (M4 closed instructions)
CASES_M4 = [
    ("(-2,-2,-2,-2)",  U(P(D,(2,1),(2,-1)), (-1,4,1,-3), P(D,(2,1),(3,1)))),
    ("(-2,-2,-2,-1)",  TB((3,1,-1,0))),
    ("(-2,-1/2,-2,-1)", SG(P(A,(2,1)), (-1,1,1,0))),
    ("(-2,-1/2,-2,3)", U(P(D,(2,1),(2,1)), (-1,1,0,-1), P(D,(2,1),(3,1)))),
    ("(4,5,-1/2,-1)",  SG(P(A,(2,1)), (0,1,1,0))),
    ("(-2,4,-2/3,-1)", U(P(D,(2,1),(2,-1)), (-1,1,0,-1), P(D,(2,1),(3,1)))),
    ("(-2,-5,-3,-1)",  U(P(D,(2,1),(2,1)), (0,1,1,0), P(D,(2,1),(3,1)))),
    ("(-2,-2,-6,-1)",  U(P(D,(2,1),(2,1)), (0,1,1,0), P(D,(2,1),(3,1)))),
    ("(-2,-2,-3,-1)",  C(P(S2,(2,-1),(3,1),(7,1)))),
    ("(-2,-3,-3,-1)",  C(P(S2,(2,-1),(4,1),(5,1)))),
    ("(-2,-2,-4,-1)",  C(P(S2,(2,-1),(4,1),(5,1)))),
    ("(-3,-4,-2,-1)",  C(P(S2,(3,-2),(3,1),(4,1)))),
    ("(-2,-2,-5,-1)",  C(P(S2,(3,-2),(3,1),(4,1)))),
    ("(-3,-2,-3,-1)",  U(P(D,(2,1),(2,-1)), (-1,3,1,-2), P(D,(2,1),(3,1)))),
]

def m4_grid_cases():
    cases = []
    grid = [(-3,1),(5,1),(7,2),(-5,3),(9,4)]
    for (r,s) in grid:
        cases.append(("(-2,%d/%d,-2,-1)" % (r,s), SG(P(A,(s,s-r)), (0,1,1,0))))
        cases.append(("(%d/%d,4,-1/2,-1)" % (r,s),
                      U(P(D,(2,1),(3,1)), (1,1,1,0), P(D,(2,1),(-s,r+s)))))
    return cases

def surgery_h1_m5(text):
    return h1_chain_link_surgery(I5(text).pairs)

def surgery_h1_m4(text):
    return h1_chain_link_surgery(m4_embed_pairs(I4(text).pairs))

def base_formula_cases():
    """fill_m5/fill_m4 on concrete instructions at base slopes."""
    out = []
    m5_alphas = ["(-2,5,3,7)", "(-2,-2,-2,-2)", "(-2,7/2,-7,9)", "(-2,-1/3,3,2/3)",
                 "(5,-7/2,9,11/4)", "(-2,1/3,5,3/2)"]
    for a in m5_alphas:
        inst = I5(a + "[0:-1]") if False else FillingInstruction.parse(a, Manifold.M5)
        slopes = inst.slots[:4]
        for beta in ["0", "1", "inf"]:
            from chainfill.slopes import parse_slope
            b = parse_slope(beta)
            closed = FillingInstruction(Manifold.M5, list(slopes) + [b])
            out.append(("m5", closed, fill_m5(slopes, b)))
    m4_alphas = ["(-2,-2,-2)", "(-2,5/3,-2)", "(9/2,7,-9)", "(5,-7/3,8)"]
    for a in m4_alphas:
        inst = FillingInstruction.parse(a, Manifold.M4)
        slopes = inst.slots[:3]
        for beta in ["0", "1", "2", "inf"]:
            from chainfill.slopes import parse_slope
            b = parse_slope(beta)
            closed = FillingInstruction(Manifold.M4, list(slopes) + [b])
            out.append(("m4", closed, fill_m4(slopes, b)))
    return out

def run_fit():
    results = {}
    for mu_sign, direction in itertools.product([-1, 1], ["xy", "yx"]):
        sf.MU_SIGN = mu_sign
        sf.GLUE_DIRECTION = direction
        ok = 0
        bad = []
        for text, desc in CASES_M5 + t2_cases():
            want = surgery_h1_m5(text)
            got = first_homology(desc)
            if want == got:
                ok += 1
            else:
                bad.append((text, str(want), str(got)))
        for text, desc in CASES_M4 + m4_grid_cases():
            want = surgery_h1_m4(text)
            got = first_homology(desc)
            if want == got:
                ok += 1
            else:
                bad.append((text, str(want), str(got)))
        for kind, closed, desc in base_formula_cases():
            if kind == "m5":
                want = h1_chain_link_surgery(closed.pairs)
            else:
                want = h1_chain_link_surgery(m4_embed_pairs(closed.pairs))
            got = first_homology(desc)
            if want == got:
                ok += 1
            else:
                bad.append((str(closed), str(want), str(got)))
        results[(mu_sign, direction)] = (ok, bad)
    total = None
    for key, (ok, bad) in sorted(results.items()):
        total = ok + len(bad)
        print(key, "agree %d / %d" % (ok, total))
    best = max(results, key=lambda k: results[k][0])
    print("best:", best)
    for line in results[best][1][:25]:
        print("  MISMATCH", line)

if __name__ == "__main__":
    run_fit()
