"""Private primes for an independent family.

The cover order F(m) = 3m^2 + 3m + 1 is odd and congruent to 1 mod 3,
and an odd prime p divides some F(m) exactly when p is congruent to
1 mod 3; the residues m with p | F(m) are the two roots of
3m^2 + 3m + 1 mod p.

To obstruct linear combinations of satellite blocks independently,
each block needs a private prime: one that divides its own cover order
exactly once and no other block's.  select_independent_family picks
twist parameters greedily by increasing m, attaching to each the
largest exponent-one prime factor of F(m) not yet claimed.
"""

from knotorder import F, select_independent_family, solve_F_mod_p
from knotorder.number_theory import exponent_of, factorize

print("Cover orders and their factorizations:")
for m in range(1, 8):
    print("  F(%d) = %d = %s" % (m, F(m), factorize(F(m))))
print()

print("Roots of F mod p locate every divisible twist parameter:")
for p in (7, 13, 19):
    roots = solve_F_mod_p(p)
    print("  p=%d: roots %s, so p | F(m) iff m = %s mod %d"
          % (p, roots, " or ".join(str(r) for r in roots), p))
print()

print("A greedy family of five blocks with private primes:")
for witness in select_independent_family(5):
    print("  m=%d -> p=%d (exponent %d in F(m) = %d)"
          % (witness.m, witness.p, witness.exponent, F(witness.m)))
print()

print("m=5 is skipped: F(5) = 91 = 7 * 13, the prime 7 is already")
print("claimed by m=1, and 13 is smaller, so the greedy rule prefers")
print("m=6 with the prime 127.")
print()

print("Exponent-one witnesses exist even when a root itself fails:")
print("  F(7) = 169 = 13^2, exponent", exponent_of(13, F(7)))
print("  F(7 + 13) = F(20) =", F(20), "= 13 *", F(20) // 13,
      ", exponent", exponent_of(13, F(20)))
