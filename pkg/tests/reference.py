"""Naive reference implementations used as test oracles.

Everything here is written as plain double loops over Python lists, with
no numpy vectorisation and no shared code with the package, so agreement
between the two is meaningful.  Distances accumulate squared differences
in dimension order and take a square root, the one convention shared with
the package on purpose: it makes distance values bitwise comparable.
"""

import math


def dist(p, q):
    s = 0.0
    for a, b in zip(p, q):
        d = a - b
        s += d * d
    return math.sqrt(s)


def ref_mean_pairwise(pts):
    n = len(pts)
    total = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            total += dist(pts[i], pts[j])
    return 2.0 * total / (n * (n - 1))


def ref_rho(pts, d_c):
    n = len(pts)
    out = []
    for i in range(n):
        s = 0.0
        for j in range(n):
            if j == i:
                continue
            d = dist(pts[i], pts[j])
            s += math.exp(-((d / d_c) ** 2))
        out.append(s)
    return out


def ref_denser(rho, i, j):
    """Tie-broken total order: is j denser than i?"""
    return rho[j] > rho[i] or (rho[j] == rho[i] and j < i)


def ref_delta_nhd(pts, rho):
    """Separation distances and nearest-denser links; densest gets
    (max pairwise distance, -1)."""
    n = len(pts)
    delta = [None] * n
    nhd = [None] * n
    max_d = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            d = dist(pts[i], pts[j])
            if d > max_d:
                max_d = d
    for i in range(n):
        best = None
        best_j = -1
        for j in range(n):
            if j == i or not ref_denser(rho, i, j):
                continue
            d = dist(pts[i], pts[j])
            if best is None or d < best:
                best = d
                best_j = j
        if best is None:
            delta[i] = max_d
            nhd[i] = -1
        else:
            delta[i] = best
            nhd[i] = best_j
    return delta, nhd


def ref_order(rho):
    return sorted(range(len(rho)), key=lambda i: (-rho[i], i))


def ref_select_centers(rho, delta, d_c):
    """Center rule; empty selection falls back to the densest point."""
    rho_bar = sum(rho) / len(rho)
    chosen = [i for i in range(len(rho)) if delta[i] > d_c and rho[i] > rho_bar]
    if not chosen:
        chosen = [ref_order(rho)[0]]
    return chosen


def ref_assign(pts, rho, nhd, order, centers):
    n = len(rho)
    labels = [-1] * n
    for k, c in enumerate(centers):
        labels[c] = k
    for i in order:
        if labels[i] >= 0:
            continue
        j = nhd[i]
        if j < 0:
            best = None
            best_k = None
            for k, c in enumerate(centers):
                d = dist(pts[i], pts[c])
                if best is None or d < best:
                    best = d
                    best_k = k
            labels[i] = best_k
        else:
            labels[i] = labels[j]
    return labels


def ref_core_flags(rho, labels, n_clusters):
    sums = [0.0] * n_clusters
    counts = [0] * n_clusters
    for i in range(len(rho)):
        sums[labels[i]] += rho[i]
        counts[labels[i]] += 1
    means = [sums[k] / counts[k] for k in range(n_clusters)]
    return [rho[i] > means[labels[i]] for i in range(len(rho))]


def ref_edges(pts, labels, core, d_c):
    """Set of (k, l) pairs, k < l, joined by a strict-within-d_c core pair."""
    n = len(pts)
    edges = set()
    for i in range(n):
        if not core[i]:
            continue
        for j in range(i + 1, n):
            if not core[j] or labels[i] == labels[j]:
                continue
            if dist(pts[i], pts[j]) < d_c:
                a, b = labels[i], labels[j]
                edges.add((min(a, b), max(a, b)))
    return edges


def ref_components(n_clusters, edges):
    """Connected components by BFS; each maps to its smallest member, and
    final ids follow ascending smallest members."""
    neighbors = {k: [] for k in range(n_clusters)}
    for a, b in edges:
        neighbors[a].append(b)
        neighbors[b].append(a)
    seen = [False] * n_clusters
    groups = []
    for start in range(n_clusters):
        if seen[start]:
            continue
        queue = [start]
        seen[start] = True
        group = []
        while queue:
            k = queue.pop(0)
            group.append(k)
            for m in neighbors[k]:
                if not seen[m]:
                    seen[m] = True
                    queue.append(m)
        groups.append(group)
    groups.sort(key=min)
    local_to_final = [None] * n_clusters
    for c, group in enumerate(groups):
        for k in group:
            local_to_final[k] = c
    return local_to_final, len(groups)


def ref_pipeline(pts, d_c):
    """The whole two-stage pipeline on a precomputed cutoff distance."""
    rho = ref_rho(pts, d_c)
    delta, nhd = ref_delta_nhd(pts, rho)
    order = ref_order(rho)
    centers = ref_select_centers(rho, delta, d_c)
    labels = ref_assign(pts, rho, nhd, order, centers)
    core = ref_core_flags(rho, labels, len(centers))
    edges = ref_edges(pts, labels, core, d_c)
    local_to_final, n_final = ref_components(len(centers), edges)
    final = [local_to_final[labels[i]] for i in range(len(pts))]
    return {
        "rho": rho,
        "delta": delta,
        "nhd": nhd,
        "order": order,
        "centers": centers,
        "labels": labels,
        "core": core,
        "edges": edges,
        "local_to_final": local_to_final,
        "final": final,
        "n_final": n_final,
    }


def ref_dbscan(pts, eps, min_pts):
    """DBSCAN with ascending-index scan order and FIFO expansion."""
    n = len(pts)
    neighbors = []
    for i in range(n):
        row = [j for j in range(n) if dist(pts[i], pts[j]) <= eps]
        neighbors.append(row)
    core = [len(row) >= min_pts for row in neighbors]
    labels = [-1] * n
    cluster = 0
    for i in range(n):
        if labels[i] != -1 or not core[i]:
            continue
        labels[i] = cluster
        queue = [i]
        while queue:
            j = queue.pop(0)
            for m in neighbors[j]:
                if labels[m] == -1:
                    labels[m] = cluster
                    if core[m]:
                        queue.append(m)
        cluster += 1
    return labels, cluster


def ref_median_4nn(pts):
    """Median (lower middle for even n) of 4th-nearest-neighbour distances."""
    n = len(pts)
    fourth = []
    for i in range(n):
        ds = sorted(dist(pts[i], pts[j]) for j in range(n) if j != i)
        fourth.append(ds[3])
    fourth.sort()
    return fourth[(n - 1) // 2]


def ref_accuracy_bruteforce(pred, truth):
    """Best one-to-one matched accuracy by enumerating all bijections."""
    import itertools

    pairs = [(p, t) for p, t in zip(pred, truth) if t >= 0]
    pred_ids = sorted(set(p for p, _ in pairs))
    truth_ids = sorted(set(t for _, t in pairs))
    size = max(len(pred_ids), len(truth_ids))
    # Pad both sides with placeholder ids so every bijection is total.
    pred_pad = pred_ids + [f"p{k}" for k in range(size - len(pred_ids))]
    truth_pad = truth_ids + [f"t{k}" for k in range(size - len(truth_ids))]
    best = 0
    for perm in itertools.permutations(range(size)):
        hits = 0
        mapping = {pred_pad[a]: truth_pad[perm[a]] for a in range(size)}
        for p, t in pairs:
            if mapping[p] == t:
                hits += 1
        if hits > best:
            best = hits
    return best / len(pairs)
