"""Building the orthogonal idempotents of U_r and checking they split the unity.

Run: python demos/idempotents_tour.py
"""

from sl2hyper import AlgebraElement, idempotent, mu, parse_tuple, tuples, weight_index
from sl2hyper.blocks import x_set
from sl2hyper.idempotents import b_element, n_eps, n_tilde, pairs

p = 3

print("mu_a in U_1 (the weight idempotents):")
for a in range(p):
    print(f"  mu({a}) = {mu(a, 1, p)}")

print("\nlabels a:2j, their case and leading indices of the rank-one elements:")
for pr in pairs(p):
    print(f"  {pr.label}  case {pr.case}  n = ({n_eps(0, pr)}, {n_eps(1, pr)})  n~ = ({n_tilde(0, pr)}, {n_tilde(1, pr)})")

r = 2
es = [idempotent(t) for t in tuples(p, r)]
total = sum(es, AlgebraElement.zero(p))
print(f"\n{len(es)} idempotents at p={p}, r={r}; sum is 1: {total == AlgebraElement.one(p)}")
print("all square to themselves:", all(e * e == e for e in es))

t = parse_tuple("1:0,0:2", p)
k = weight_index(t)
print(f"\nblock {t.label} lives in weight {k} mod {p ** r}:")
for theta in x_set(t).members:
    b = b_element(theta, t)
    print(f"  eps={''.join(map(str, theta))}  terms={len(b)}  fixed by mu({k}): {mu(k, r, p) * b == b}")
