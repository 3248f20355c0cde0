from equigeom.exactfield import GF, QQ
from equigeom.ideals import IdealHandle
from equigeom.textio import parse_poly

F2, F3, F5 = GF(2), GF(3), GF(5)


def P(text, field=QQ, names=("x",)):
    return parse_poly(text, field, names)


def ideal(field, names, *gens):
    return IdealHandle(field, len(names), [P(g, field, names) for g in gens], names)
