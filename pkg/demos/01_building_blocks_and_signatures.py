"""Seifert matrices and Tristram-Levine signatures.

The library represents a knot by a Seifert matrix V, an integer matrix
with det(V - V^T) = 1.  Three built-in families cover everything the
obstruction machinery needs: the unknot, the right handed trefoil, and
the twisted doubles with Seifert matrix [[0, m+1], [m, 0]].

The Tristram-Levine signature at a rational angle c/den is the
signature of the Hermitian matrix (1-w)V + (1-conj(w))V^T at
w = exp(2 pi i c / den).  Away from roots of the Alexander polynomial
it is computed with a floating eigensolver; at or near a root the
library switches to exact interval arithmetic, so every returned value
is certified.
"""

from knotorder import (
    alexander_polynomial,
    connected_sum,
    parse_knot,
    signature_profile,
    trefoil,
    tristram_levine_signature,
    twisted_double,
)

t = trefoil()
print("trefoil Seifert matrix:", t.matrix.entries)
print("Alexander polynomial (constant term first):", alexander_polynomial(t))
print()

print("Signature profile of the trefoil at the 7th roots of unity:")
for c, value in enumerate(signature_profile(t, 7)):
    print("  sigma(%d/7) = %+d" % (c, value.value))
print()

print("At an Alexander root the value averages the two one-sided limits")
print("and the result is flagged:")
value = tristram_levine_signature(t, 1, 6)
print("  sigma(1/6) =", value.value, "; at_alexander_root =", value.at_alexander_root)
print()

print("Twisted doubles have no Alexander roots on the unit circle, so")
print("their profiles are flat:")
for m in (1, 2):
    profile = [v.value for v in signature_profile(twisted_double(m), 7)]
    print("  twisted:%d profile at den 7: %s" % (m, profile))
print()

print("Signatures are additive under connected sum and change sign under")
print("the concordance inverse:")
s = connected_sum(t, t)
print("  sigma(trefoil # trefoil at 2/7) =",
      tristram_levine_signature(s, 2, 7).value)
inverse = parse_knot("-trefoil")
print("  sigma(-trefoil at 2/7) =", tristram_levine_signature(inverse, 2, 7).value)
cancel = connected_sum(t, inverse)
print("  profile of trefoil # -trefoil:",
      [v.value for v in signature_profile(cancel, 7)])
