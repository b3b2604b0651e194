"""Pure-Python strict feasibility kernel.

Decides whether ``E x = 0, G x > 0`` has a solution by maximising a slack
``d`` subject to ``E x = 0``, ``G x >= d``, ``-1 <= x <= 1`` and ``0 <= d <= 1``.
Free variables are split as ``x = p - q`` so the all-zero point is a basic
feasible solution and no phase one is needed.

The simplex runs on a condensed integer tableau with fraction-free pivoting:
every entry is an integer scaled by the common denominator ``den`` (the
previous pivot), so divisions are exact. Bland's rule guarantees termination
on the heavily degenerate systems produced here. The search stops as soon as
the slack becomes positive.

The compiled kernel implements the same pivot sequence with 64-bit integers.
"""


def build_rows(nvars, eq_rows, strict_rows):
    """Constraint rows ``a . (p, q, d) <= b`` with ``b >= 0``."""
    rows = []
    rhs = []
    for e in eq_rows:
        neg = [-c for c in e]
        rows.append(list(e) + neg + [0])
        rows.append(neg + list(e) + [0])
        rhs += [0, 0]
    for g in strict_rows:
        rows.append([-c for c in g] + list(g) + [1])
        rhs.append(0)
    width = 2 * nvars + 1
    for j in range(width):
        row = [0] * width
        row[j] = 1
        rows.append(row)
        rhs.append(1)
    return rows, rhs


def solve_strict(nvars, eq_rows, strict_rows):
    """Return ``(numerators, den)`` of a strictly feasible point, or None.

    ``eq_rows`` and ``strict_rows`` are integer coefficient lists of length
    ``nvars``. The point is ``x_j = numerators[j] / den``.
    """
    rows, b = build_rows(nvars, eq_rows, strict_rows)
    width = 2 * nvars + 1
    m = len(rows)
    tab = rows
    obj = [0] * width
    obj[width - 1] = -1
    z = 0
    den = 1
    nonbasic = list(range(width))
    basic = list(range(width, width + m))

    while True:
        if z > 0:
            break
        col = -1
        best = None
        for j in range(width):
            if obj[j] < 0 and (best is None or nonbasic[j] < best):
                best = nonbasic[j]
                col = j
        if col < 0:
            return None
        row = -1
        for i in range(m):
            a = tab[i][col]
            if a <= 0:
                continue
            if row < 0:
                row = i
                continue
            lhs = b[i] * tab[row][col]
            rhs_ = b[row] * a
            if lhs < rhs_ or (lhs == rhs_ and basic[i] < basic[row]):
                row = i
        if row < 0:
            # objective is bounded by the box, so this cannot happen
            raise ArithmeticError("unbounded slack in a boxed system")

        piv_row = tab[row]
        piv = piv_row[col]
        b_r = b[row]
        for i in range(m):
            if i == row:
                continue
            t = tab[i]
            f = t[col]
            if f == 0:
                if piv != den:
                    for j in range(width):
                        if j != col:
                            t[j] = t[j] * piv // den
                    b[i] = b[i] * piv // den
                continue
            for j in range(width):
                if j != col:
                    t[j] = (piv * t[j] - f * piv_row[j]) // den
            t[col] = -f
            b[i] = (piv * b[i] - f * b_r) // den
        f = obj[col]
        for j in range(width):
            if j != col:
                obj[j] = (piv * obj[j] - f * piv_row[j]) // den
        obj[col] = -f
        z = (piv * z - f * b_r) // den
        piv_row[col] = den
        den = piv
        nonbasic[col], basic[row] = basic[row], nonbasic[col]

    values = [0] * width
    for i, var in enumerate(basic):
        if var < width:
            values[var] = b[i]
    nums = [values[j] - values[nvars + j] for j in range(nvars)]
    return nums, den
