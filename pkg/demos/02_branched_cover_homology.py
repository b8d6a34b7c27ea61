"""Cyclic branched covers and the deck action.

For a prime power q, the first homology of the q-fold cyclic branched
cover of a knot is presented by Gamma^q - (Gamma - I)^q where
Gamma = V (V - V^T)^{-1}.  The library computes the group via Smith
normal form.

For the twisted double with parameter m the q = 3 cover has homology
(Z/a)^2 with a = F(m) = (m+1)^3 - m^3, and when an odd prime p divides
a exactly once, the deck transformation acts on the p-torsion
(F_p)^2 x (F_p)^2 with a pair of reciprocal eigenvalues.  Those two
eigenspaces are what the metabolizer analysis lives on.
"""

from knotorder import (
    build_p_torsion,
    cover_homology,
    connected_sum,
    deck_action,
    trefoil,
    twisted_cover_order,
    twisted_double,
)

print("Branched cover homology:")
for q in (2, 3):
    hom = cover_homology(trefoil(), q)
    print("  trefoil, q=%d: invariant factors %s" % (q, hom.invariant_factors))
for m in (1, 2, 3):
    hom = cover_homology(twisted_double(m), 3)
    print("  twisted:%d, q=3: invariant factors %s (F(%d) = %d)"
          % (m, hom.invariant_factors, m, twisted_cover_order(m, 3)))
s = connected_sum(twisted_double(1), twisted_double(2))
print("  twisted:1 # twisted:2, q=3:", cover_homology(s, 3).invariant_factors)
print()

print("Deck transformation eigenvalues on the p-torsion:")
for m, p in ((1, 7), (2, 19), (5, 13)):
    action = deck_action(m, 3, p)
    print("  m=%d, p=%d: lambda_plus=%d, lambda_minus=%d (product %d mod %d)"
          % (m, p, action.lam_plus, action.lam_minus,
             action.lam_plus * action.lam_minus % p, p))
print()

print("The p-torsion module of one satellite block records, per basis")
print("vector, the lift label, the deck eigenvalue, and the linking form:")
module = build_p_torsion([(1, False)], 3, 7)
for index, (summand, label) in enumerate(module.labels):
    print("  site %d: summand %d, lift %-3s eigenvalue %d"
          % (index, summand, label, module.deck_eigenvalues[index]))
print("  linking form:")
for row in module.form.entries:
    print("   ", row)
