"""Compare the coset Virasoro field with a difference of Sugawara vectors.

Builds L_sl3 + L_bc - L_sl2(diagonal, level l+1) - L_u1(identity image) in
V^l(sl3) (x) E(2) and checks that it equals the L^ of the coset generators.
Exploratory; not part of any suite.
"""
import sys
from fractions import Fraction

from flint import fmpq, fmpq_mat

from voa.algebras import bc_virasoro, sl_lie_data
from voa.coset import coset_generators_n2, diagonal_embedding
from voa.core import virasoro_data
from voa.scalar import GENERIC


def casimir(alg, lie, field_of, shift):
    """``1/(2 shift) sum :u_a u^a:`` with ``u_a = field_of(basis name)``."""
    d = lie.dim
    inv = fmpq_mat(d, d, [fmpq(x.numerator, x.denominator) for row in lie.gram() for x in row]).inv()
    out = alg.zero()
    for a in range(d):
        for b in range(d):
            c = inv[a, b]
            if c != 0:
                out = out + field_of(lie.basis[a]).nop(field_of(lie.basis[b])) * Fraction(int(c.p), int(c.q))
    return out / (2 * shift)


def main():
    emb = diagonal_embedding(2)
    alg = emb.algebra
    l = alg.context.symbol("l")
    L_sl3 = casimir(alg, sl_lie_data(3), alg.gen, l + 3)
    L_bc = bc_virasoro(alg, 2)
    L_sl2 = casimir(alg, sl_lie_data(2), emb.image, l + 1 + 2)
    ident = emb.image("I")
    L_u1 = ident.nop(ident) / (2 * ident.bracket(ident)[1].terms[()])
    diff = L_sl3 + L_bc - L_sl2 - L_u1
    target = coset_generators_n2()["L^"]
    c = virasoro_data(diff).central_charge
    print(f"central charge of the difference: {GENERIC.render(c, 'l')}")
    same = (diff - target).is_zero()
    print(f"difference equals L^: {same}")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
