# Regenerates the graph6 reference corpus with networkx.
# Usage: python3 make_corpus.py  (writes corpus.edges and corpus.g6 next to this file)
import pathlib
import random

import networkx as nx

rng = random.Random(20240611)
graphs = [
    nx.empty_graph(1),
    nx.empty_graph(2),
    nx.complete_graph(2),
    nx.complete_graph(3),
    nx.path_graph(3),
    nx.cycle_graph(5),
    nx.petersen_graph(),
    nx.complete_graph(62),
    nx.empty_graph(62),
    nx.complete_bipartite_graph(3, 4),
    nx.hypercube_graph(4),
    nx.icosahedral_graph(),
]
while len(graphs) < 100:
    n = rng.randint(1, 62)
    p = rng.choice([0.05, 0.2, 0.5, 0.8, 0.95])
    graphs.append(nx.gnp_random_graph(n, p, seed=rng.randint(0, 2**31)))

here = pathlib.Path(__file__).parent
with open(here / "corpus.edges", "w") as edges, open(here / "corpus.g6", "wb") as g6:
    for g in graphs:
        g = nx.convert_node_labels_to_integers(g, ordering="sorted")
        h = nx.Graph()
        h.add_nodes_from(range(g.number_of_nodes()))
        h.add_edges_from(g.edges())
        g = h
        pairs = sorted(tuple(sorted(e)) for e in g.edges())
        edges.write(f"{g.number_of_nodes()}" + "".join(f" {a}-{b}" for a, b in pairs) + "\n")
        g6.write(nx.to_graph6_bytes(g, header=False))
