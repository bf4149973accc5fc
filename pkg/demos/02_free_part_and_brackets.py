"""The positive part is free: Witt dimensions, Lyndon words, and brackets across gl2."""

from __future__ import annotations

from monsterlie.algebra import MonsterAlgebra, cartan_involution
from monsterlie.freelie import format_tree, fricke_generators, graded_dimension, lyndon_basis, standard_bracket
from monsterlie.moonshine import monster_multiplicity
from monsterlie.parser import evaluate_text

print("dimension of u+ at (m,n) against c(mn):")
for m in range(1, 4):
    row = []
    for n in range(1, 4):
        d = graded_dimension(fricke_generators("1A", (m, n)), (m, n))
        assert d == monster_multiplicity(m, n)
        row.append(str(d))
    print("  ", "  ".join(row))

# only two copies per block: a basis small enough to print
g = fricke_generators("1A", (2, 3)).restrict(2)
letter = lambda a: f"e({a.l};{a.j},{a.k})"
print("basis at (2,3), k <= 2:")
for w in lyndon_basis(g, (2, 3)):
    print("  ", format_tree(standard_bracket(w), letter))

alg = MonsterAlgebra("1A", window=(5, 5))
for text in ["[e(-1),f(-1)]", "[e(0;2,1),f(0;2,1)]", "[f(-1),e(1;3,1)]",
             "[[e(0;1,1),e(0;1,2)],f(0;1,1)]", "[e(-1),[e(0;1,1),e(0;2,1)]]"]:
    x = evaluate_text(text, alg)
    print(f"{text:32s} = {x}")

x = evaluate_text("[e(0;1,1),e(1;2,1)]", alg)
print("eta", x, "=", cartan_involution(x))
print("weight string of block 3:", [str(w) for _, w in alg.weight_string(3)])
