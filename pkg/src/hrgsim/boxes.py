"""Multi-scale box dissection of the strip.

The strip is cut into ln(2)-high layers, each split into power-of-two many
equal boxes; layer i has 2^(ell-i) boxes of width 2^i * b, where
b = 2^-ell * pi * e^{R/2} lies in [1/6, 1/3) by the choice of ell. The top
layer is a single box covering everything above ell*ln(2). Two box graphs
live on the dissection: the corner-sharing graph and its edge-sharing
subgraph (a matching pair in percolation terminology).

All x bookkeeping is done in integer units of b, so interval touching and
overlap tests are exact; the circle has 2^ell units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as _sparse_cc

LN2 = math.log(2.0)

# dense per-box arrays are only materialized below this box count
_MAX_DENSE_BOXES = 1 << 25


class BoxId(NamedTuple):
    layer: int
    index: int


@dataclass(frozen=True)
class Dissection:
    """Geometry of the box grid for one strip radius."""

    radius: float
    ell: int
    ell_tilde: int
    box_width: float
    strip_width: float

    @property
    def total_boxes(self) -> int:
        return (1 << (self.ell + 1)) - 1

    def boxes_in_layer(self, layer: int) -> int:
        self._check_layer(layer)
        return 1 << (self.ell - layer)

    def _check_layer(self, layer: int) -> None:
        if not 0 <= layer <= self.ell:
            raise ValueError(f"layer {layer} outside [0, {self.ell}]")

    def check_box(self, box: BoxId) -> None:
        self._check_layer(box.layer)
        if not 0 <= box.index < self.boxes_in_layer(box.layer):
            raise ValueError(f"box {box} index out of range")

    def layer_top(self, layer: int) -> float:
        """Upper y edge of a layer (the top layer is closed at R)."""
        self._check_layer(layer)
        return self.radius if layer == self.ell else (layer + 1) * LN2

    def flat_offset(self, layer: int) -> int:
        """First flat id of a layer; layers are stored bottom to top."""
        self._check_layer(layer)
        return (1 << (self.ell + 1)) - (1 << (self.ell - layer + 1))

    def flat_id(self, box: BoxId) -> int:
        self.check_box(box)
        return self.flat_offset(box.layer) + box.index

    def unflatten(self, flat: int) -> BoxId:
        if not 0 <= flat < self.total_boxes:
            raise ValueError(f"flat id {flat} out of range")
        m = (1 << (self.ell + 1)) - flat
        layer = self.ell + 1 - (m - 1).bit_length()
        return BoxId(layer, flat - self.flat_offset(layer))

    def boxes_above(self, y: float) -> int:
        """Number of boxes whose closed rectangle reaches above height y."""
        if y >= self.radius:
            return 0
        layer = 0
        while layer < self.ell and self.layer_top(layer) <= y:
            layer += 1
        return (1 << (self.ell - layer + 1)) - 1

    def k_layer_start(self) -> int:
        """First layer whose boxes intersect the region y > R/4."""
        quarter = self.radius / 4.0
        layer = 0
        while layer < self.ell and self.layer_top(layer) <= quarter:
            layer += 1
        return layer


def build_dissection(radius: float) -> Dissection:
    """Dissection for the given strip radius; requires radius > 2*ln(2)."""
    if radius <= 2.0 * LN2:
        raise ValueError(f"radius must exceed 2*ln(2) ~ 1.386, got {radius}")
    half_exp = math.exp(radius / 2.0)
    ell = int(math.floor((math.log(6.0 * math.pi) + radius / 2.0) / LN2))
    # floor guard against boundary rounding
    while 2.0**ell > 6.0 * math.pi * half_exp:
        ell -= 1
    while 2.0 ** (ell + 1) <= 6.0 * math.pi * half_exp:
        ell += 1
    if ell >= 62:
        raise ValueError(f"radius {radius} gives an unrepresentable grid (ell={ell})")
    width = math.pi * half_exp
    b = width / 2.0**ell
    ell_tilde = int(math.floor(radius / (2.0 * LN2))) - 1
    d = Dissection(
        radius=radius, ell=ell, ell_tilde=ell_tilde, box_width=b, strip_width=width
    )
    assert 3.0 * math.pi * half_exp < 2.0**ell <= 6.0 * math.pi * half_exp
    assert 1.0 / 6.0 <= b < 1.0 / 3.0
    assert 0 <= ell_tilde < ell
    return d


def layer_of_y(y, d: Dissection):
    """Layer assignment, half-open against the float boundaries k*ln(2)."""
    y = np.asarray(y, dtype=float)
    ly = np.minimum(np.floor(y / LN2), d.ell).astype(np.int64)
    ly = np.maximum(ly, 0)
    ly -= (y < ly * LN2) & (ly > 0)
    ly += (y >= (ly + 1) * LN2) & (ly + 1 <= d.ell)
    return ly


def box_of_arrays(x, y, d: Dissection):
    """Vectorized box assignment; returns (layer, index) arrays."""
    x = np.asarray(x, dtype=float)
    ly = layer_of_y(y, d)
    w = d.box_width * np.exp2(ly.astype(float))
    j = np.floor(x / w)
    j -= x < j * w
    j += x >= (j + 1.0) * w
    n = np.int64(1) << (d.ell - ly)
    return ly, np.remainder(j.astype(np.int64), n)


def box_of(s, d: Dissection) -> BoxId:
    """Box containing a strip point; raises outside the strip."""
    x, y = float(s[0]), float(s[1])
    half = d.strip_width / 2.0
    if not (-half < x <= half):
        raise ValueError(f"x={x} outside the strip of half-width {half}")
    if not (0.0 <= y <= d.radius):
        raise ValueError(f"y={y} outside [0, {d.radius}]")
    ly, j = box_of_arrays(np.array([x]), np.array([y]), d)
    return BoxId(int(ly[0]), int(j[0]))


def _circ_overlap_units(a1: int, len1: int, a2: int, len2: int, circle: int):
    """Closed-arc intersection on the integer circle.

    Returns (touches, positive_length) for arcs [a1, a1+len1], [a2, a2+len2].
    """
    if len1 >= circle or len2 >= circle:
        return True, True
    best = -circle
    dstart = (a2 - a1) % circle
    for shift in (dstart, dstart - circle):
        lo = max(0, shift)
        hi = min(len1, shift + len2)
        best = max(best, hi - lo)
    return best >= 0, best > 0


def boxes_touch(a: BoxId, b: BoxId, d: Dissection) -> tuple[bool, bool]:
    """(share at least a corner, share a positive-length boundary segment).

    Same-layer neighbors always share a vertical segment; cross-layer pairs
    share a horizontal segment only when their x intervals overlap in more
    than a point.
    """
    d.check_box(a)
    d.check_box(b)
    if a == b or abs(a.layer - b.layer) > 1:
        return False, False
    circle = 1 << d.ell
    touch, positive_x = _circ_overlap_units(
        a.index << a.layer, 1 << a.layer, b.index << b.layer, 1 << b.layer, circle
    )
    if not touch:
        return False, False
    if a.layer == b.layer:
        return True, True
    return True, positive_x


def neighbors_B(a: BoxId, d: Dissection) -> list[BoxId]:
    """Corner-sharing neighbors (at most 8), sorted."""
    return _neighbors(a, d, star=False)


def neighbors_Bstar(a: BoxId, d: Dissection) -> list[BoxId]:
    """Edge-sharing neighbors (at most 5), sorted."""
    return _neighbors(a, d, star=True)


def _neighbors(a: BoxId, d: Dissection, star: bool) -> list[BoxId]:
    d.check_box(a)
    i, j = a
    candidates: set[BoxId] = set()
    n_same = d.boxes_in_layer(i)
    if n_same > 1:
        candidates.add(BoxId(i, (j - 1) % n_same))
        candidates.add(BoxId(i, (j + 1) % n_same))
    if i > 0:
        n_below = d.boxes_in_layer(i - 1)
        for jj in range(2 * j - 1, 2 * j + 3):
            candidates.add(BoxId(i - 1, jj % n_below))
    if i < d.ell:
        n_above = d.boxes_in_layer(i + 1)
        for jj in (j // 2 - 1, j // 2, j // 2 + 1):
            candidates.add(BoxId(i + 1, jj % n_above))
    out = []
    for c in candidates:
        if c == a:
            continue
        touch, positive = boxes_touch(a, c, d)
        if star:
            if touch and (c.layer == a.layer or positive):
                out.append(c)
        elif touch:
            out.append(c)
    return sorted(out)


class BoxLattice:
    """Dense per-instance arrays for one dissection: flat ids, layer/index
    lookup, and CSR adjacency for both box graphs."""

    def __init__(self, d: Dissection):
        if d.total_boxes > _MAX_DENSE_BOXES:
            raise MemoryError(
                f"dissection has {d.total_boxes} boxes; dense lattice refused"
            )
        self.dissection = d
        total = d.total_boxes
        self.total = total
        self.layer_of = np.empty(total, dtype=np.int64)
        self.index_of = np.empty(total, dtype=np.int64)
        self.offsets = np.array([d.flat_offset(i) for i in range(d.ell + 1)], dtype=np.int64)
        for i in range(d.ell + 1):
            n_i = d.boxes_in_layer(i)
            sl = slice(d.flat_offset(i), d.flat_offset(i) + n_i)
            self.layer_of[sl] = i
            self.index_of[sl] = np.arange(n_i)
        star_u, star_v, corner_u, corner_v = self._edge_arrays()
        self.csr_star = self._csr(star_u, star_v)
        self.csr_full = self._csr(
            np.concatenate([star_u, corner_u]), np.concatenate([star_v, corner_v])
        )

    def _edge_arrays(self):
        d = self.dissection
        star_u, star_v = [], []
        corner_u, corner_v = [], []
        for i in range(d.ell + 1):
            n_i = d.boxes_in_layer(i)
            base = d.flat_offset(i)
            j = np.arange(n_i, dtype=np.int64)
            if n_i > 1:
                # same-layer ring (positive-length vertical contact)
                star_u.append(base + j)
                star_v.append(base + (j + 1) % n_i)
            if i < d.ell:
                n_up = d.boxes_in_layer(i + 1)
                up_base = d.flat_offset(i + 1)
                parent = j >> 1
                star_u.append(base + j)
                star_v.append(up_base + parent)
                # diagonal corner contact with the parent's lateral neighbor
                if n_up > 1:
                    corner = np.where(j % 2 == 0, (parent - 1) % n_up, (parent + 1) % n_up)
                    corner_u.append(base + j)
                    corner_v.append(up_base + corner)
        cat = lambda parts: (
            np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
        )
        return cat(star_u), cat(star_v), cat(corner_u), cat(corner_v)

    def _csr(self, u: np.ndarray, v: np.ndarray):
        rows = np.concatenate([u, v])
        cols = np.concatenate([v, u])
        # drop duplicate undirected entries (two-box rings touch twice)
        codes = rows * np.int64(self.total) + cols
        keep = np.unique(codes, return_index=True)[1]
        rows, cols = rows[keep], cols[keep]
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]
        indptr = np.zeros(self.total + 1, dtype=np.int64)
        np.cumsum(np.bincount(rows, minlength=self.total), out=indptr[1:])
        return indptr, cols

    def flat_ids(self, layers: np.ndarray, indices: np.ndarray) -> np.ndarray:
        return self.offsets[layers] + indices

    def layer0_mask(self) -> np.ndarray:
        mask = np.zeros(self.total, dtype=bool)
        mask[: self.dissection.boxes_in_layer(0)] = True
        return mask

    def k_region_mask(self) -> np.ndarray:
        """Boxes whose closed rectangle intersects {y > R/4}."""
        return self.layer_of >= self.dissection.k_layer_start()


@lru_cache(maxsize=4)
def lattice_for(d: Dissection) -> BoxLattice:
    return BoxLattice(d)


def bfs_mask(indptr: np.ndarray, indices: np.ndarray, starts: np.ndarray, allowed: np.ndarray):
    """Reachable-set mask over allowed vertices from the allowed starts."""
    visited = np.zeros(allowed.size, dtype=bool)
    frontier = np.asarray(starts, dtype=np.int64)
    frontier = frontier[allowed[frontier]]
    frontier = np.unique(frontier)
    visited[frontier] = True
    while frontier.size:
        counts = indptr[frontier + 1] - indptr[frontier]
        total = int(counts.sum())
        if total == 0:
            break
        offsets = np.repeat(np.cumsum(counts) - counts, counts)
        flat = np.repeat(indptr[frontier], counts) + (np.arange(total) - offsets)
        nbr = indices[flat]
        nbr = nbr[allowed[nbr] & ~visited[nbr]]
        frontier = np.unique(nbr)
        visited[frontier] = True
    return visited


class ActivityMap:
    """Per-box activity with respect to the truncated vertex set.

    A box in layers 0..ell_tilde is active iff it holds at least one vertex
    below the truncation height (ell_tilde+1)*ln(2); every box above is
    inactive by definition.
    """

    def __init__(self, dissection: Dissection, active_boxes: Iterable[BoxId] = ()):
        self.dissection = dissection
        flats = []
        for box in active_boxes:
            dissection.check_box(box)
            if box.layer > dissection.ell_tilde:
                raise ValueError(
                    f"box {box} lies above the truncation layer {dissection.ell_tilde}"
                )
            flats.append(dissection.flat_id(box))
        self.active_flat = np.unique(np.asarray(flats, dtype=np.int64))

    @classmethod
    def from_flat(cls, dissection: Dissection, active_flat: np.ndarray) -> "ActivityMap":
        obj = cls.__new__(cls)
        obj.dissection = dissection
        obj.active_flat = np.unique(np.asarray(active_flat, dtype=np.int64))
        return obj

    @property
    def active_count(self) -> int:
        return int(self.active_flat.size)

    def is_active(self, box: BoxId) -> bool:
        flat = self.dissection.flat_id(box)
        pos = np.searchsorted(self.active_flat, flat)
        return bool(pos < self.active_flat.size and self.active_flat[pos] == flat)

    def dense(self, lattice: Optional[BoxLattice] = None) -> np.ndarray:
        lattice = lattice or lattice_for(self.dissection)
        mask = np.zeros(lattice.total, dtype=bool)
        mask[self.active_flat] = True
        return mask

    def active_per_layer(self) -> np.ndarray:
        """Active box counts per layer 0..ell."""
        d = self.dissection
        bounds = np.array(
            [d.flat_offset(i) for i in range(d.ell + 1)] + [d.total_boxes], dtype=np.int64
        )
        return np.histogram(self.active_flat, bins=bounds)[0]


def mark_active(d: Dissection, graph) -> ActivityMap:
    """Activity map of a graph with strip coordinates: a box in the layers
    0..ell_tilde is active iff it contains a vertex."""
    if graph.n == 0:
        return ActivityMap(d)
    x = graph.strip[:, 0]
    y = graph.strip[:, 1]
    layers, indices = box_of_arrays(x, y, d)
    keep = layers <= d.ell_tilde
    offsets = np.array([d.flat_offset(i) for i in range(d.ell + 1)], dtype=np.int64)
    flats = offsets[layers[keep]] + indices[keep]
    return ActivityMap.from_flat(d, flats)


def activity_from_points(d: Dissection, x: np.ndarray, y: np.ndarray) -> ActivityMap:
    """Activity map straight from point coordinates (no graph needed)."""
    layers, indices = box_of_arrays(x, y, d)
    keep = layers <= d.ell_tilde
    offsets = np.array([d.flat_offset(i) for i in range(d.ell + 1)], dtype=np.int64)
    flats = offsets[layers[keep]] + indices[keep]
    return ActivityMap.from_flat(d, flats)


def canonical_path_L(a: BoxId, a2: BoxId, d: Dissection) -> list[BoxId]:
    """Canonical box path: lift the deeper box with parent steps, then climb
    both chains to the lowest common box above them; at most 2*ell+1 boxes."""
    d.check_box(a)
    d.check_box(a2)
    i1, j1 = a
    i2, j2 = a2
    chain1 = [BoxId(i1, j1)]
    chain2 = [BoxId(i2, j2)]
    while i1 < i2:
        i1, j1 = i1 + 1, j1 >> 1
        chain1.append(BoxId(i1, j1))
    while i2 < i1:
        i2, j2 = i2 + 1, j2 >> 1
        chain2.append(BoxId(i2, j2))
    while j1 != j2:
        i1, j1 = i1 + 1, j1 >> 1
        i2, j2 = i2 + 1, j2 >> 1
        chain1.append(BoxId(i1, j1))
        chain2.append(BoxId(i2, j2))
    if chain2[-1] == chain1[-1]:
        chain2.pop()
    return chain1 + chain2[::-1]


class InactiveComponents:
    """Connected components of the corner-sharing graph restricted to the
    inactive boxes, with component sizes; precomputed once per activity map."""

    def __init__(self, act: ActivityMap, lattice: Optional[BoxLattice] = None):
        lattice = lattice or lattice_for(act.dissection)
        self.lattice = lattice
        inactive = ~act.dense(lattice)
        indptr, indices = lattice.csr_full
        rows = np.repeat(np.arange(lattice.total), np.diff(indptr))
        keep = inactive[rows] & inactive[indices]
        sub = csr_matrix(
            (np.ones(int(keep.sum()), dtype=np.int8), (rows[keep], indices[keep])),
            shape=(lattice.total, lattice.total),
        )
        n_comp, labels = _sparse_cc(sub, directed=False)
        labels = labels.astype(np.int64)
        # collapse the labels of active boxes to -1 and relabel compactly
        inactive_labels = labels[inactive]
        uniq, compact = np.unique(inactive_labels, return_inverse=True)
        self.labels = np.full(lattice.total, -1, dtype=np.int64)
        self.labels[inactive] = compact
        self.sizes = np.bincount(compact, minlength=uniq.size).astype(np.int64)
        self.n_components = int(uniq.size)
        order = np.argsort(self.labels, kind="stable")
        self._members = order[np.searchsorted(self.labels[order], 0) :]
        self._member_ptr = np.zeros(self.n_components + 1, dtype=np.int64)
        np.cumsum(self.sizes, out=self._member_ptr[1:])

    def members(self, comp: int) -> np.ndarray:
        return self._members[self._member_ptr[comp] : self._member_ptr[comp + 1]]


def compute_W(
    a: BoxId,
    a2: BoxId,
    act: ActivityMap,
    d: Dissection,
    pre: Optional[InactiveComponents] = None,
) -> np.ndarray:
    """The canonical path between the boxes plus every inactive component
    meeting it; returned as sorted flat box ids."""
    pre = pre or InactiveComponents(act)
    lattice = pre.lattice
    path = canonical_path_L(a, a2, d)
    flats = np.array([d.flat_id(b) for b in path], dtype=np.int64)
    comp_ids = np.unique(pre.labels[flats])
    comp_ids = comp_ids[comp_ids >= 0]
    parts = [flats] + [pre.members(int(c)) for c in comp_ids]
    return np.unique(np.concatenate(parts))


def w_size(
    a: BoxId,
    a2: BoxId,
    act: ActivityMap,
    d: Dissection,
    pre: Optional[InactiveComponents] = None,
) -> int:
    """|W| without materializing the set."""
    pre = pre or InactiveComponents(act)
    path = canonical_path_L(a, a2, d)
    flats = np.array([d.flat_id(b) for b in path], dtype=np.int64)
    labels = pre.labels[flats]
    inactive_on_path = int((labels >= 0).sum())
    comp_ids = np.unique(labels[labels >= 0])
    return len(path) + int(pre.sizes[comp_ids].sum()) - inactive_on_path


def find_separating_red_walk(
    red: np.ndarray,
    x: BoxId,
    y: BoxId,
    d: Dissection,
    lattice: Optional[BoxLattice] = None,
) -> Optional[list[BoxId]]:
    """Red walk in the edge-sharing graph blocking every corner-graph path
    between two blue boxes, or None when a blue path exists.

    The walk is read off the red boundary of the blue-reachable set of x,
    on the side facing y's component of the remainder.
    """
    lattice = lattice or lattice_for(d)
    red = np.asarray(red, dtype=bool)
    if red.size != lattice.total:
        raise ValueError("coloring length does not match the box count")
    fx, fy = d.flat_id(x), d.flat_id(y)
    if red[fx] or red[fy]:
        raise ValueError("both endpoints must be blue")
    indptr, indices = lattice.csr_full
    blue_reach = bfs_mask(indptr, indices, np.array([fx]), ~red)
    if blue_reach[fy]:
        return None
    remainder = bfs_mask(indptr, indices, np.array([fy]), ~blue_reach)
    # boundary of the blue-reachable set facing y's side
    rows = np.repeat(np.arange(lattice.total), np.diff(indptr))
    touching = np.zeros(lattice.total, dtype=bool)
    touching[indices[blue_reach[rows]]] = True
    boundary = np.flatnonzero(touching & ~blue_reach & remainder & red)
    if boundary.size == 0:
        raise AssertionError("no blue path, yet the separating boundary is empty")
    walk_set = _select_separating_component(boundary, fx, fy, lattice)
    walk = _euler_walk(walk_set, lattice)
    return [BoxId(int(lattice.layer_of[f]), int(lattice.index_of[f])) for f in walk]


def _select_separating_component(
    boundary: np.ndarray, fx: int, fy: int, lattice: BoxLattice
) -> np.ndarray:
    """Restrict the boundary to one edge-sharing component that separates."""
    indptr_s, indices_s = lattice.csr_star
    in_boundary = np.zeros(lattice.total, dtype=bool)
    in_boundary[boundary] = True
    sub_rows = np.repeat(np.arange(lattice.total), np.diff(indptr_s))
    keep = in_boundary[sub_rows] & in_boundary[indices_s]
    sub = csr_matrix(
        (np.ones(int(keep.sum()), dtype=np.int8), (sub_rows[keep], indices_s[keep])),
        shape=(lattice.total, lattice.total),
    )
    _, labels = _sparse_cc(sub, directed=False)
    comps = np.unique(labels[boundary])
    indptr_f, indices_f = lattice.csr_full
    allowed_base = np.ones(lattice.total, dtype=bool)
    for comp in comps:
        members = boundary[labels[boundary] == comp]
        allowed = allowed_base.copy()
        allowed[members] = False
        reach = bfs_mask(indptr_f, indices_f, np.array([fx]), allowed)
        if not reach[fy]:
            return members
    raise AssertionError("no single boundary component separates the endpoints")


def _euler_walk(members: np.ndarray, lattice: BoxLattice) -> list[int]:
    """Walk visiting every member, consecutive boxes edge-sharing: a DFS
    tree traversal that returns through each parent."""
    member_set = set(int(m) for m in members)
    indptr_s, indices_s = lattice.csr_star
    root = int(members[0])
    walk = [root]
    seen = {root}
    stack = [(root, iter(indices_s[indptr_s[root] : indptr_s[root + 1]]))]
    while stack:
        node, it = stack[-1]
        advanced = False
        for nbr in it:
            nbr = int(nbr)
            if nbr in member_set and nbr not in seen:
                seen.add(nbr)
                walk.append(nbr)
                stack.append(
                    (nbr, iter(indices_s[indptr_s[nbr] : indptr_s[nbr + 1]]))
                )
                advanced = True
                break
        if not advanced:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
    return walk


@dataclass(frozen=True)
class HBlock:
    """A layer h-1 box with the full pyramid of boxes below it."""

    h: int
    top: BoxId

    def members(self) -> list[BoxId]:
        out = []
        for layer in range(self.h):
            span = 1 << (self.h - 1 - layer)
            start = self.top.index * span
            out.extend(BoxId(layer, start + k) for k in range(span))
        return out


def h_block_partition(d: Dissection, h: int) -> list[HBlock]:
    """The 2^(ell-h+1) blocks tiling layers 0..h-1."""
    if not 1 <= h <= d.ell_tilde:
        raise ValueError(f"h must lie in [1, {d.ell_tilde}], got {h}")
    return [HBlock(h=h, top=BoxId(h - 1, k)) for k in range(d.boxes_in_layer(h - 1))]


def has_vertical_active_crossing(blk: HBlock, act: ActivityMap, d: Dissection) -> bool:
    """True iff active boxes of the block contain an edge-sharing path from
    the block's top box to some box in the bottom layer."""
    if not act.is_active(blk.top):
        return False
    members = blk.members()
    member_active = {b for b in members if act.is_active(b)}
    frontier = [blk.top]
    seen = {blk.top}
    while frontier:
        nxt = []
        for box in frontier:
            if box.layer == 0:
                return True
            for nbr in neighbors_Bstar(box, d):
                if nbr in member_active and nbr not in seen:
                    seen.add(nbr)
                    nxt.append(nbr)
        frontier = nxt
    return False


def inactive_path_L0_to_K_exists(
    act: ActivityMap, d: Dissection, lattice: Optional[BoxLattice] = None
) -> bool:
    """True iff some inactive corner-graph path joins the bottom layer to a
    box intersecting {y > R/4}."""
    lattice = lattice or lattice_for(d)
    inactive = ~act.dense(lattice)
    indptr, indices = lattice.csr_full
    starts = np.flatnonzero(lattice.layer0_mask() & inactive)
    if starts.size == 0:
        return False
    reach = bfs_mask(indptr, indices, starts, inactive)
    return bool(np.any(reach & lattice.k_region_mask()))


def dump_boxes(act: ActivityMap, d: Dissection) -> str:
    """Debug dump: one `layer index active` line per box."""
    lines = []
    for layer in range(d.ell + 1):
        for index in range(d.boxes_in_layer(layer)):
            flag = int(act.is_active(BoxId(layer, index))) if layer <= d.ell_tilde else 0
            lines.append(f"{layer} {index} {flag}")
    return "\n".join(lines) + "\n"
