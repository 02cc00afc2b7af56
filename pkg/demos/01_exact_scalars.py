"""Exact scalar arithmetic in Q(s)
==================================

Every coefficient in this package lives in the field Q(s) of rational
functions in one formal variable s, a square root of the residue
cardinality q.  Nothing is ever floated: values are reduced fractions of
integer polynomials in s, and the only way to get a number out is to
evaluate at a concrete q.
"""

from fractions import Fraction

from hecke2d import Coeff, PoleError
from hecke2d.coeff import ONE, Q, S

# The module constants cover most hand-written formulas.  Q is literally
# S * S, not a second generator.
print("S * S == Q:", S * S == Q)
print("Q - 1:     ", Q - ONE)
print("1 - 1/q:   ", ONE - Q ** -1)

# Printed values round-trip through the parser; the normal form clears
# denominator content and keeps the denominator monic up to sign.
c = (Q - ONE) / (Coeff.integer(2) * S ** 3)
print("\nc            =", c)
print("parse(str(c)) =", Coeff.parse(str(c)))
assert Coeff.parse(str(c)) == c

# The parser also takes free-form expressions in q and s.
d = Coeff.parse("(q - 1)^2 / (q * s)")
print("free-form     =", d)

# Evaluation substitutes a number for q.  Even powers of s substitute
# directly; odd powers need an exact square root of q.
e = (Q - ONE) * Q ** -2
print("\ne =", e)
for q0 in (2, 3, Fraction(1, 4)):
    print(f"  e at q={q0}: {e.eval_at_q(q0)}")
print("S at q=4:", S.eval_at_q(4))
try:
    S.eval_at_q(2)
except ValueError as err:
    print("S at q=2:", err)

# Denominators can vanish at special values; that is a pole, not a zero.
f = ONE / (Q - ONE)
try:
    f.eval_at_q(1)
except PoleError as err:
    print("1/(q-1) at q=1:", err)
