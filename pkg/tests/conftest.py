import networkx as nx
from tilepot import MultiGraph

# pots that recur across the suite
LATTICE_EXAMPLE = "a,b ; a,^b ; ^a,^a,b ; ^a,^a,^b"
CUBE_S2 = "a,b,b ; a,a,^b ; a,^a,^a"
CUBE_T3 = "a,b,c ; ^a,^a,^e ; e,d,f ; ^b,^d,^d ; ^c,^c,^e ; ^b,^f,^f"
CUBE_B3 = "a,a,a ; e,e,e ; b,b,^a ; c,c,^b ; d,d,^b ; ^a,^c,^e ; ^c,^d,^e ; ^a,^d,^e"
CUBE_B2_SMALL = "a,a,^a ; ^a,^a,^a"

ACCEPTANCE_LINES: list[str] = []


def to_nx(g: MultiGraph) -> nx.MultiGraph:
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
