"""Glue between package objects and the plain-data oracles."""
from novikov import RR, BasedComplex

from oracles import rank_Qz_by_evaluation


def cone_over_R(cone: BasedComplex) -> BasedComplex:
    """A cone over the untwisted Laurent ring, viewed inside R."""
    return cone.map_entries(lambda p: p.to_rational(), RR)


def matrix_entries(m):
    return [[(x.numerator.coefficients, x.denominator.coefficients) for x in row] for row in m.rows]


def ranks_over_Qz(c: BasedComplex):
    """Betti numbers over Q(z) computed by point evaluation, independent of the package."""
    rk = [rank_Qz_by_evaluation(matrix_entries(c.d(i))) if c.d(i).nrows and c.d(i).ncols else 0
          for i in range(c.top + 2)]
    return [c.rank(i) - rk[i] - rk[i + 1] for i in range(c.top + 1)]
