"""Graph-structured Hamiltonians and the infection identifiability test.

The Hamiltonian of a network is assembled from real edge weights,
omega = sum w_ij (e_i e_j^T + e_j e_i^T), with the field coupled through a
known set of accessible vertices. If the accessible set infects the whole
graph (an infected vertex with exactly one uninfected neighbour infects
it) and the system is minimal, the edge weights are identifiable. The
converse does not hold, so a failed test asserts nothing.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .analysis import structure_report
from .errors import InvalidNetwork
from .model import PassiveSystem, new_system


@dataclass(frozen=True)
class NetworkModel:
    """Undirected weighted graph with an accessible vertex subset.

    ``edges`` maps canonical pairs (i, j), i < j, to real weights; a weight
    of zero keeps the edge structural. ``coupling`` is the m x n field
    coupling whose support lies inside ``accessible``. Optional
    ``detunings`` add real diagonal Hamiltonian terms (an extension of the
    strictly off-diagonal edge form, flagged in serialized output).
    """

    n: int
    edges: tuple[tuple[int, int, float], ...]
    accessible: tuple[int, ...]
    coupling: np.ndarray
    detunings: np.ndarray | None = None


def new_network(n, edges, accessible, coupling=None, detunings=None) -> NetworkModel:
    """Validate and build a :class:`NetworkModel` (0-based vertex indices).

    ``coupling`` defaults to one unit row per accessible vertex. Weights
    must be real; complex-weight networks are outside the infection
    theorem and rejected.
    """
    n = int(n)
    if n < 1:
        raise InvalidNetwork("need at least one vertex")
    canon = {}
    for edge in edges:
        i, j, w = int(edge[0]), int(edge[1]), edge[2]
        if not (0 <= i < n and 0 <= j < n):
            raise InvalidNetwork(f"edge ({i}, {j}) out of range for n={n}")
        if i == j:
            raise InvalidNetwork(f"self-loop at vertex {i}")
        if isinstance(w, complex) and w.imag != 0.0:
            raise InvalidNetwork(f"edge ({i}, {j}) has complex weight {w}")
        key = (min(i, j), max(i, j))
        if key in canon:
            raise InvalidNetwork(f"duplicate edge {key}")
        canon[key] = float(np.real(w))
    accessible = tuple(sorted({int(v) for v in accessible}))
    if not accessible:
        raise InvalidNetwork("accessible set is empty")
    if accessible[0] < 0 or accessible[-1] >= n:
        raise InvalidNetwork(f"accessible vertices {accessible} out of range")
    if coupling is None:
        coupling = np.zeros((len(accessible), n), dtype=complex)
        for row, v in enumerate(accessible):
            coupling[row, v] = 1.0
    else:
        coupling = np.atleast_2d(np.asarray(coupling, dtype=complex))
        if coupling.shape[1] != n:
            raise InvalidNetwork(f"coupling must have {n} columns, got {coupling.shape}")
        outside = [
            v for v in range(n)
            if v not in accessible and np.abs(coupling[:, v]).max() > 0.0
        ]
        if outside:
            raise InvalidNetwork(f"coupling supported outside accessible set: {outside}")
    gram = coupling.conj().T @ coupling
    sub = gram[np.ix_(accessible, accessible)]
    eigs = np.linalg.eigvalsh(0.5 * (sub + sub.conj().T))
    if eigs.min() <= 1e-12 * max(eigs.max(), 1e-300):
        raise InvalidNetwork("c†c restricted to the accessible set is not positive")
    if detunings is not None:
        detunings = np.asarray(detunings, dtype=float).reshape(n)
    edge_tuple = tuple((i, j, canon[(i, j)]) for (i, j) in sorted(canon))
    coupling = coupling.copy()
    coupling.setflags(write=False)
    return NetworkModel(
        n=n,
        edges=edge_tuple,
        accessible=accessible,
        coupling=coupling,
        detunings=detunings,
    )


@dataclass(frozen=True)
class InfectionTrace:
    """Witness of one infection run.

    ``steps`` lists (newly infected vertex, infecting neighbour) in the
    order taken; at each step the infecting neighbour had exactly one
    uninfected neighbour. ``residual`` holds the never-infected vertices.
    """

    infecting: bool
    steps: tuple[tuple[int, int], ...]
    residual: tuple[int, ...]


@dataclass(frozen=True)
class InfectionVerdict:
    """Result of the sufficient identifiability test.

    ``reason`` is None when identifiable, otherwise "NotInfecting" or
    "NotMinimal". A non-identifiable verdict is never issued: the test is
    one-directional.
    """

    identifiable_by_infection: bool
    reason: str | None


def omega_from_network(net: NetworkModel) -> PassiveSystem:
    """Assemble the real symmetric Hamiltonian and pair it with the coupling."""
    omega = np.zeros((net.n, net.n))
    for i, j, w in net.edges:
        omega[i, j] += w
        omega[j, i] += w
    if net.detunings is not None:
        omega[np.arange(net.n), np.arange(net.n)] += net.detunings
    return new_system(omega, net.coupling)


def _adjacency(net: NetworkModel) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(net.n)]
    for i, j, _ in net.edges:
        adj[i].add(j)
        adj[j].add(i)
    return adj


def infection_closure(net: NetworkModel, reverse_scan: bool = False) -> InfectionTrace:
    """Run the infection iteration to its fixed point.

    Infected vertices are scanned in ascending index order (descending
    with ``reverse_scan``), infecting whenever a scanned vertex has exactly
    one uninfected neighbour, until a full pass makes no progress. The
    final verdict is scan-order independent; the trace records the order
    actually taken.
    """
    adj = _adjacency(net)
    infected = set(net.accessible)
    steps: list[tuple[int, int]] = []
    progress = True
    while progress:
        progress = False
        for v in sorted(infected, reverse=reverse_scan):
            open_nbrs = [u for u in adj[v] if u not in infected]
            if len(open_nbrs) == 1:
                u = open_nbrs[0]
                infected.add(u)
                steps.append((u, v))
                progress = True
    residual = tuple(v for v in range(net.n) if v not in infected)
    return InfectionTrace(
        infecting=not residual, steps=tuple(steps), residual=residual
    )


def infection_identifiability_verdict(
    net: NetworkModel, rank_tol: float | None = None
) -> InfectionVerdict:
    """Sufficient test: infecting accessible set plus minimality.

    Returns the positive verdict only when both conditions hold; otherwise
    names the failed condition without claiming non-identifiability (the
    tree counterexample is identifiable yet not infecting).
    """
    if not infection_closure(net).infecting:
        return InfectionVerdict(identifiable_by_infection=False, reason="NotInfecting")
    report = structure_report(omega_from_network(net), rank_tol)
    if not report.minimal:
        return InfectionVerdict(identifiable_by_infection=False, reason="NotMinimal")
    return InfectionVerdict(identifiable_by_infection=True, reason=None)
