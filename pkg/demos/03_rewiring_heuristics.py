"""The polynomial-time rewiring heuristics, side by side on a bottleneck graph.

Exact optimization is intractable in general, so practice falls back to
greedy ascent, curvature/resistance surgery, and PageRank densification.
Each run reports the edit set and the before/after bottleneck metrics.
"""

from rewirelab import (
    apply_edits,
    barbell_graph,
    conductance_exact,
    effective_resistance,
    forman_curvature,
    greedy_rewire,
    ppr_rewire,
    sdrf_like_rewire,
    spectral_summary,
)


def show(name, g, edits, trace=None):
    after = apply_edits(g, edits)
    print(f"--- {name}")
    print(f"    adds {sorted(edits.additions)}, removes {sorted(edits.removals)}")
    print(f"    phi: {conductance_exact(g).phi} -> {conductance_exact(after).phi}")
    print(f"    lambda2: {spectral_summary(g).lambda2:.5f} -> {spectral_summary(after).lambda2:.5f}")
    if trace:
        print(f"    trace: {trace}")


g = barbell_graph(5)
print(f"barbell(5): phi = {conductance_exact(g).phi}, bridge curvature = {forman_curvature(g, (4, 5))}")
print(f"resistance across the bridge (0,5): {effective_resistance(g, 0, 5):.4f}")
print(f"resistance inside a clique (0,1):  {effective_resistance(g, 0, 1):.4f}\n")

# Greedy single-toggle ascent on exact conductance.
edits, trace = greedy_rewire(g, budget=2, objective="conductance")
show("greedy (conductance objective)", g, edits, [round(t, 5) for t in trace])

# Curvature-guided removals plus resistance-guided additions.  With
# removal_fraction 0.5, half the steps remove the most negatively curved
# removable edge, half add the highest-resistance non-edge.  Watch the trace:
# on a barbell the freshly added cross edge is itself the most negatively
# curved edge (bridge-like, no triangles), so the next removal step undoes
# it.  Naive curvature surgery can oscillate; pure addition (fraction 0)
# makes monotone progress here.
edits, steps = sdrf_like_rewire(g, budget=4, removal_fraction=0.5)
show("sdrf-like (alternating, oscillates on this graph)", g, edits)
for op, pair, score in steps:
    print(f"    step: {op} {pair} (score {score})")

edits, _ = sdrf_like_rewire(g, budget=2, removal_fraction=0.0)
show("sdrf-like (additions only)", g, edits)

# Diffusion densification: personalized PageRank keeps each node's strongest
# targets; pairs that are not edges yet become additions.
edits, _ = ppr_rewire(g, alpha=0.15, epsilon=1e-3, per_node_cap=5)
show("ppr densification", g, edits)
