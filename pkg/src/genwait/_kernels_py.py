"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``.

Same signatures, same results bit for bit; used when the extension is not
built or when ``GENWAIT_PURE_PYTHON`` is set.
"""

import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
STREAM = 0xD1B54A32D192ED03


def mix64(z):
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def _bits(mask):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def _rows(table):
    if isinstance(table, np.ndarray):
        return table.tolist()
    return table


def closure(table, seed_mask, gens):
    rows = _rows(table)
    gens = [int(s) for s in np.asarray(gens).reshape(-1)]
    queue = list(_bits(int(seed_mask)))
    seen = set(queue)
    if 0 not in seen:
        seen.add(0)
        queue.append(0)
    head = 0
    while head < len(queue):
        row = rows[queue[head]]
        head += 1
        for s in gens:
            y = row[s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    mask = 0
    for y in seen:
        mask |= 1 << y
    return mask


def sample_tau_batch(table, trials, seed, first_trial=0):
    rows = _rows(table)
    n = len(rows)
    threshold = ((1 << 64) - n) % n
    out = np.empty(trials, dtype=np.int64)
    for t in range(trials):
        key = mix64(seed + (first_trial + t + 1) * STREAM)
        counter = 0
        seen = {0}
        queue = [0]
        gens = []
        draws = 0
        while len(queue) < n:
            while True:
                counter += 1
                word = mix64(key + counter * GOLDEN)
                if word >= threshold:
                    break
            x = word % n
            draws += 1
            if x in seen:
                continue
            gens.append(x)
            head = 0
            while head < len(queue):
                row = rows[queue[head]]
                head += 1
                for s in gens:
                    y = row[s]
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        out[t] = draws
    return out
