import pytest

from wlpa import leavitt_algebra_graph, weighted_graph


def g_e():
    """Two vertices, one weight-2 edge u->v and one weight-1 edge back."""
    return weighted_graph(("u", "v"), (("alpha", "u", "v", 2), ("beta", "v", "u", 1)))


def g_f():
    """g_e plus a second unweighted edge v->u; irreducible."""
    return weighted_graph(
        ("u", "v"),
        (("alpha", "u", "v", 2), ("beta", "v", "u", 1), ("gamma", "v", "u", 1)),
    )


def g_r():
    """Five vertices; reducible: the weight forest is the line u => v -> w."""
    return weighted_graph(
        ("u", "v", "w", "x", "y"),
        (
            ("alpha", "u", "v", 2),
            ("beta", "v", "w", 1),
            ("gamma", "x", "v", 1),
            ("delta", "y", "w", 1),
        ),
    )


def g_i():
    """Like g_r but delta has weight 2, which makes the graph irreducible."""
    return weighted_graph(
        ("u", "v", "w", "x", "y"),
        (
            ("alpha", "u", "v", 2),
            ("beta", "v", "w", 1),
            ("gamma", "x", "v", 1),
            ("delta", "y", "w", 2),
        ),
    )


def g_rose():
    """LV-rose: one vertex, three loops of weight 3 and one of weight 2."""
    return weighted_graph(
        ("v",),
        (
            ("alpha", "v", "v", 3),
            ("beta", "v", "v", 3),
            ("gamma", "v", "v", 3),
            ("delta", "v", "v", 2),
        ),
    )


def g_l23():
    """Single vertex with three loops of weight 2."""
    return leavitt_algebra_graph(2, 1)


def g_f2():
    """One weighted and one unweighted edge sharing a source; no lr-normal witness."""
    return weighted_graph(("u", "v"), (("alpha", "u", "v", 2), ("beta", "u", "v", 1)))


def g_two_weighted():
    """Two weight-2 edges sharing a source; beta[2] is lr-normal."""
    return weighted_graph(("u", "v"), (("alpha", "u", "v", 2), ("beta", "u", "v", 2)))


FIXTURE_BUILDERS = {
    "G_E": g_e,
    "G_F": g_f,
    "G_R": g_r,
    "G_I": g_i,
    "G_ROSE": g_rose,
    "G_L23": g_l23,
    "G_F2": g_f2,
}


@pytest.fixture(params=sorted(FIXTURE_BUILDERS))
def fixture_graph(request):
    return FIXTURE_BUILDERS[request.param]()
