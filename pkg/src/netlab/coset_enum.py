"""Todd-Coxeter coset enumeration for finitely presented groups.

HLT-style strategy with a union-find coincidence queue, after the classic
exposition of the algorithm.  Enumeration is over the trivial subgroup, so a
completed table has one row per group element.  Deterministic: cosets are
scanned in creation order and relators in input order.
"""

from __future__ import annotations

UNDEF = -1


class CosetTable:
    """Coset table over ``ngens`` generators and their inverses.

    Column ``2*g`` is the action of generator ``g``, column ``2*g + 1`` its
    inverse.  Rows are created lazily; a union-find structure tracks coset
    identifications discovered while tracing relators.  Stale entries are
    resolved through ``find`` rather than rewritten eagerly.
    """

    def __init__(self, ngens, max_cosets):
        self.ngens = ngens
        self.max_cosets = max_cosets
        self.labels = []
        self.rows = []
        self.overflowed = False
        self._new_coset()

    def _new_coset(self):
        if len(self.rows) >= self.max_cosets:
            self.overflowed = True
            return None
        c = len(self.rows)
        self.labels.append(c)
        self.rows.append([UNDEF] * (2 * self.ngens))
        return c

    def find(self, c):
        while self.labels[c] != c:
            self.labels[c] = self.labels[self.labels[c]]
            c = self.labels[c]
        return c

    @staticmethod
    def _col(sym):
        # sym is a signed 1-based generator index
        g = abs(sym) - 1
        return 2 * g if sym > 0 else 2 * g + 1

    def step(self, c, sym, define=True):
        c = self.find(c)
        col = self._col(sym)
        nxt = self.rows[c][col]
        if nxt != UNDEF:
            return self.find(nxt)
        if not define:
            return None
        d = self._new_coset()
        if d is None:
            return None
        self.rows[c][col] = d
        self.rows[d][self._col(-sym)] = c
        return d

    def merge(self, a, b):
        queue = [(a, b)]
        while queue:
            a, b = queue.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            a, b = min(a, b), max(a, b)
            self.labels[b] = a
            ra, rb = self.rows[a], self.rows[b]
            for col in range(2 * self.ngens):
                nb = rb[col]
                if nb == UNDEF:
                    continue
                na = ra[col]
                if na == UNDEF:
                    # stale pointers on the other end resolve through find
                    ra[col] = nb
                else:
                    queue.append((na, nb))

    def trace_relator(self, c, relator):
        """Force the relator to close at coset c, defining cosets as needed."""
        start = self.find(c)
        cur = start
        for i, sym in enumerate(relator):
            if i == len(relator) - 1:
                col = self._col(sym)
                cur = self.find(cur)
                start = self.find(start)
                nxt = self.rows[cur][col]
                if nxt == UNDEF:
                    self.rows[cur][col] = start
                    inv = self._col(-sym)
                    back = self.rows[start][inv]
                    if back == UNDEF:
                        self.rows[start][inv] = cur
                    else:
                        self.merge(back, cur)
                else:
                    self.merge(nxt, start)
                return
            cur = self.step(cur, sym)
            if cur is None:
                return

    def live_cosets(self):
        return [c for c in range(len(self.rows)) if self.find(c) == c]

    def is_complete(self):
        return all(
            all(v != UNDEF for v in self.rows[c]) for c in self.live_cosets()
        )

    def relators_close(self, relators):
        for c in self.live_cosets():
            for rel in relators:
                cur = c
                ok = True
                for sym in rel:
                    cur = self.step(cur, sym, define=False)
                    if cur is None:
                        ok = False
                        break
                if not ok or self.find(cur) != self.find(c):
                    return False
        return True


def simplify_presentation(ngens, relators):
    """Tietze reduction: kill length-1 relators, merge length-2 identifications.

    Returns (n_live_gens, relators) over a relabelled generator set.  Cheap
    preprocessing that preserves the group.
    """
    sub = {}  # gen (1-based) -> signed replacement, or 0 when trivial

    def resolve(sym):
        sign = 1 if sym > 0 else -1
        g = abs(sym)
        seen = set()
        while g in sub:
            if g in seen:
                break
            seen.add(g)
            rep = sub[g]
            if rep == 0:
                return 0
            sign *= 1 if rep > 0 else -1
            g = abs(rep)
        return sign * g

    def reduce_word(word):
        out = []
        for sym in word:
            sym = resolve(sym)
            if sym == 0:
                continue
            if out and out[-1] == -sym:
                out.pop()
            else:
                out.append(sym)
        return out

    work = [list(r) for r in relators]
    changed = True
    while changed:
        changed = False
        nxt = []
        for r in work:
            r = reduce_word(r)
            if not r:
                continue
            if len(r) == 1:
                g = abs(r[0])
                if resolve(g) != 0:
                    sub[g] = 0
                    changed = True
                continue
            if len(r) == 2 and abs(r[0]) != abs(r[1]):
                a, b = r
                # a * b = 1  =>  a = b^-1
                sub[abs(a)] = -b if a > 0 else b
                changed = True
                continue
            nxt.append(r)
        work = nxt

    live = sorted(
        {abs(resolve(g)) for g in range(1, ngens + 1)} - {0}
    )
    relabel = {g: i + 1 for i, g in enumerate(live)}
    out = []
    seen = set()
    for r in work:
        r = reduce_word(r)
        if not r:
            continue
        w = tuple(relabel[abs(s)] * (1 if s > 0 else -1) for s in r)
        if w not in seen:
            seen.add(w)
            out.append(list(w))
    return len(live), out


def coset_enumeration(ngens, relators, max_cosets=10_000, presimplify=True):
    """Enumerate cosets of the trivial subgroup.

    Returns {"status": "complete" | "overflow", "index": int | None,
    "cosets_defined": int}.  A complete run with index n certifies |G| = n.
    """
    if presimplify:
        ngens, relators = simplify_presentation(ngens, relators)
    if ngens == 0:
        return {"status": "complete", "index": 1, "cosets_defined": 1}
    table = CosetTable(ngens, max_cosets)

    def full_pass():
        """Trace every relator at every live coset; fill open entries."""
        c = 0
        while c < len(table.rows) and not table.overflowed:
            if table.find(c) != c:
                c += 1
                continue
            for rel in relators:
                table.trace_relator(c, rel)
                if table.overflowed:
                    return
            if table.find(c) == c:
                for col in range(2 * table.ngens):
                    if table.rows[c][col] == UNDEF:
                        sym = col // 2 + 1 if col % 2 == 0 else -(col // 2 + 1)
                        table.step(c, sym)
                        if table.overflowed:
                            return
            c += 1

    # merges after a coset was scanned can leave unforced traces; iterate to
    # quiescence, at which point closure holds by construction
    while not table.overflowed:
        before = (len(table.rows), tuple(table.labels))
        full_pass()
        if table.overflowed:
            break
        if (len(table.rows), tuple(table.labels)) == before:
            break
    if table.overflowed:
        return {
            "status": "overflow",
            "index": None,
            "cosets_defined": len(table.rows),
        }
    # certify: the table must be closed and every relator must trace home
    if not table.is_complete() or not table.relators_close(relators):
        return {
            "status": "overflow",
            "index": None,
            "cosets_defined": len(table.rows),
        }
    return {
        "status": "complete",
        "index": len(table.live_cosets()),
        "cosets_defined": len(table.rows),
    }
