"""W-random graphs and exact monotone coupling.

A W-random graph on n vertices draws latent uniforms X_1..X_n and joins
i ~ j with probability W(X_i, X_j).  Because draws are indexed by a
counter-based generator, two graphons sampled under the same seed share
all their randomness: if W1 <= W2 pointwise, the first sample is a
subgraph of the second, surely.
"""

from graphlimitlab import (
    SampleSeed,
    StepGraphon,
    make_wrs,
    sample_coupled,
    sample_wrandom,
    to_graph6,
)

# ── basic sampling ──────────────────────────────────────────────────────

W = make_wrs(2, 0)
G = sample_wrandom(W, 12, SampleSeed(2024))
print("sample of W[2,0] at n=12:", to_graph6(G), f"({G.edge_count} edges)")
print("same seed, same graph:",
      G == sample_wrandom(W, 12, SampleSeed(2024)))
print("different stream differs:",
      G != sample_wrandom(W, 12, SampleSeed(2024, 1)))

# within-block probability is 0, so the latent blocks 2-color the sample
def bipartite(G):
    color, stack = {}, []
    adj = [set() for _ in range(G.n)]
    for i, j in G.edges:
        adj[i].add(j)
        adj[j].add(i)
    for s in range(G.n):
        if s in color:
            continue
        color[s] = 0
        stack.append(s)
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in color:
                    color[u] = 1 - color[v]
                    stack.append(u)
                elif color[u] == color[v]:
                    return False
    return True

checks = sum(bipartite(sample_wrandom(W, 40, SampleSeed(7, s)))
             for s in range(200))
print("bipartite samples at n=40:", checks, "/ 200")

# ── density matches the graphon ─────────────────────────────────────────

for p in (0.1, 0.5, 0.9):
    Wp = StepGraphon.constant(p)
    n, samples = 100, 50
    mean = sum(
        sample_wrandom(Wp, n, SampleSeed(11, s)).edge_count
        for s in range(samples)
    ) / samples / (n * (n - 1) / 2)
    print(f"constant-{p} graphon: mean sample density {mean:.3f}")

# ── monotone coupling ───────────────────────────────────────────────────

low, high = make_wrs(2, 0), StepGraphon.constant(0.5)
print("\ncoupled samples (W[2,0] below constant-1/2):")
for s in range(5):
    G_low, G_high = sample_coupled(low, high, 30, SampleSeed(99, s))
    print(f"  stream {s}: {G_low.edge_count:3d} edges inside "
          f"{G_high.edge_count:3d} edges, nested: "
          f"{G_low.edges <= G_high.edges}")
