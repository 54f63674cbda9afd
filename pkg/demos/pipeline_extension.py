"""Extend a sequence of functionals from a two-dimensional subspace to all of C(K).

K is the lexicographic double of a three-point line.  The pipeline builds a
finite quotient, extends on it, and pulls the result back.
"""
from fractions import Fraction

from compactlines.cli import load_instance, pipeline_from_json
from compactlines.decomposition import DecompositionConfig
from compactlines.extension import full_pipeline

doc = load_instance("golden:pipeline_lexdouble.json")
K, basis, matrix, T0 = pipeline_from_json(doc)
for eps in ("1/10", "1/100"):
    cfg = DecompositionConfig(Fraction(eps), Fraction(1, 2))
    Tp, rep = full_pipeline(K, basis, matrix, T0, cfg)
    print(f"eps={eps}: quotient of {rep.quotient_size} points, |T0|={rep.norm_T0}, "
          f"|T'|={rep.norm_Tprime}, ratio={rep.ratio} (bound {rep.bound}), exact={rep.restriction_exact}")
