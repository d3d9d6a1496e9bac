"""Ordered list with O(1) order queries (a dynamic priority space).

Cells carry 64-bit integer tags that strictly increase along the list, so
comparing two cells is a single integer comparison.  Inserting between two
cells picks the midpoint tag; when adjacent tags leave no room, a local
neighborhood is renumbered (classic list-labeling: the smallest enclosing
power-of-two tag range whose density is under a geometrically decaying
threshold is respaced evenly).  This gives amortized polylog relabeling,
which is all the experiment scales here need.

Deleting a cell marks its handle dead; using a dead handle raises
StaleHandleError.
"""

from __future__ import annotations

from typing import Iterator, Optional

TAG_BITS = 64
TAG_SPAN = 1 << TAG_BITS

# Density ceiling for a tag window of size 2**i is DENSITY_DECAY**-i.
# Root window (i = 64) then admits ~6.7e7 cells, far above any run here.
DENSITY_DECAY = 1.5

_CAPACITY = [int((1 << i) / (DENSITY_DECAY ** i)) for i in range(TAG_BITS + 1)]


class StaleHandleError(Exception):
    """A deleted (or foreign) OrderLabel was used."""


class OrderLabel:
    """Handle to one cell of an OrderedList.

    The handle stays valid until the cell is deleted; its ``tag`` may be
    rewritten by renumbering but its order relative to live cells never
    changes.
    """

    __slots__ = ("tag", "value", "prev", "next", "alive", "_list")

    def __init__(self, tag: int, value=None):
        self.tag = tag
        self.value = value
        self.prev: Optional[OrderLabel] = None
        self.next: Optional[OrderLabel] = None
        self.alive = False
        self._list: Optional[OrderedList] = None

    def __repr__(self):
        state = "live" if self.alive else "dead"
        return f"OrderLabel(tag={self.tag}, value={self.value!r}, {state})"

    def _check(self):
        if not self.alive:
            raise StaleHandleError(f"label {self!r} is not live")

    def __lt__(self, other: "OrderLabel") -> bool:
        self._check()
        other._check()
        return self.tag < other.tag

    def __le__(self, other: "OrderLabel") -> bool:
        self._check()
        other._check()
        return self.tag <= other.tag


class OrderedList:
    """Doubly linked list of OrderLabel cells under a total tag order.

    Supports insert_after / insert_before / delete / compare; all O(1)
    amortized up to occasional local renumbering.
    """

    def __init__(self):
        # Sentinels sit outside the tag space: head acts as tag -1,
        # tail as tag 2**64.  They are never handed out.
        self._head = OrderLabel(-1)
        self._tail = OrderLabel(TAG_SPAN)
        self._head.next = self._tail
        self._tail.prev = self._head
        self.size = 0
        self.relabel_count = 0  # cells retagged by renumbering, cumulative

    # -- construction ------------------------------------------------------

    @classmethod
    def from_values(cls, values) -> tuple["OrderedList", list[OrderLabel]]:
        """Build a list holding *values* in order, with evenly spread tags."""
        lst = cls()
        values = list(values)
        n = len(values)
        if n == 0:
            return lst, []
        step = TAG_SPAN // (n + 1)
        if step == 0:
            raise ValueError(f"too many cells for tag space: {n}")
        cells = []
        prev = lst._head
        for i, val in enumerate(values):
            cell = OrderLabel((i + 1) * step, val)
            cell.alive = True
            cell._list = lst
            cell.prev = prev
            prev.next = cell
            prev = cell
            cells.append(cell)
        prev.next = lst._tail
        lst._tail.prev = prev
        lst.size = n
        return lst, cells

    # -- queries -----------------------------------------------------------

    def compare(self, a: OrderLabel, b: OrderLabel) -> int:
        """Strict total order: -1 if a before b, 0 if same cell, +1 after."""
        self._own(a)
        self._own(b)
        if a is b:
            return 0
        return -1 if a.tag < b.tag else 1

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[OrderLabel]:
        cell = self._head.next
        while cell is not self._tail:
            yield cell
            cell = cell.next

    def values(self) -> list:
        return [cell.value for cell in self]

    def first(self) -> Optional[OrderLabel]:
        cell = self._head.next
        return None if cell is self._tail else cell

    def last(self) -> Optional[OrderLabel]:
        cell = self._tail.prev
        return None if cell is self._head else cell

    # -- mutation ----------------------------------------------------------

    def insert_after(self, anchor: OrderLabel, value=None) -> OrderLabel:
        self._own(anchor)
        return self._insert_after_cell(anchor, value)

    def insert_before(self, anchor: OrderLabel, value=None) -> OrderLabel:
        self._own(anchor)
        return self._insert_after_cell(anchor.prev, value)

    def insert_first(self, value=None) -> OrderLabel:
        return self._insert_after_cell(self._head, value)

    def insert_last(self, value=None) -> OrderLabel:
        return self._insert_after_cell(self._tail.prev, value)

    def delete(self, label: OrderLabel) -> None:
        self._own(label)
        label.prev.next = label.next
        label.next.prev = label.prev
        label.prev = label.next = None
        label.alive = False
        label._list = None
        self.size -= 1

    # -- internals ---------------------------------------------------------

    def _own(self, label: OrderLabel):
        if not label.alive or label._list is not self:
            raise StaleHandleError(f"label {label!r} is not live in this list")

    def _insert_after_cell(self, left: OrderLabel, value) -> OrderLabel:
        # left may be a sentinel; right is its current successor.
        while True:
            right = left.next
            lo = left.tag
            hi = right.tag
            if hi - lo >= 2:
                cell = OrderLabel(lo + (hi - lo) // 2, value)
                cell.alive = True
                cell._list = self
                cell.prev = left
                cell.next = right
                left.next = cell
                right.prev = cell
                self.size += 1
                return cell
            self._renumber_around(left if left is not self._head else right)

    def _renumber_around(self, cell: OrderLabel) -> None:
        """Respace the smallest sufficiently sparse tag window around *cell*."""
        pivot = cell.tag
        for level in range(1, TAG_BITS + 1):
            size = 1 << level
            lo = pivot & ~(size - 1)
            hi = lo + size
            # Collect live cells with tags in [lo, hi); the list is tag
            # sorted, so walk outward from the pivot cell.
            left_edge = cell
            while left_edge.prev.tag >= lo:
                left_edge = left_edge.prev
            count = 0
            walker = left_edge
            while walker.tag < hi:
                count += 1
                walker = walker.next
            # Require headroom: one new slot plus spacing >= 4 so the
            # pending insert always finds a gap afterwards.
            if 4 * (count + 1) <= size and count <= _CAPACITY[level]:
                walker = left_edge
                for j in range(count):
                    walker.tag = lo + ((j + 1) * size) // (count + 1)
                    walker = walker.next
                self.relabel_count += count
                return
        raise RuntimeError("tag space exhausted")  # unreachable below ~6.7e7 cells
