from contactpred import ContactEvent, ContactGraph


def graph(edges, vertices=()):
    verts = set(vertices)
    for a, b in edges:
        verts.update((a, b))
    return ContactGraph(verts, edges)


def ev(start, end, a, b):
    return ContactEvent(start, end, a, b)
