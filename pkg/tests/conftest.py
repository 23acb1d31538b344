import math
import os
import sys

import numpy as np
import pytest

sys.path.insert(0, os.path.dirname(__file__))

from csistp import Instance, MetricGraph

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def euclidean_graph(points):
    n = len(points)
    cost = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                cost[i, j] = math.dist(points[i], points[j])
    return MetricGraph(cost)


@pytest.fixture
def fixture5():
    # two axis-aligned unit pairs plus a far-away Steiner vertex
    g = euclidean_graph([(0, 0), (1, 0), (0, 2), (1, 2), (5, 5)])
    return Instance(g, ((0, 1), (2, 3)), ((), ()))


@pytest.fixture
def fixture5_path():
    return os.path.join(FIXTURES, "two_cluster_5v.csistp.json")
