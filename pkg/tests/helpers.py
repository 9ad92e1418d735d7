import random

ACCEPTANCE_LINES = []


def record_criterion(number, name, passed, detail=""):
    line = f"[{'PASS' if passed else 'FAIL'}] AC{number} {name}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    return passed


def random_instance(rng: random.Random, max_len=6, max_links=8):
    """Random (|S|, |T|, B, D) with B and D of at most ``max_links`` links."""
    n = rng.randint(1, max_len)
    m = rng.randint(1, max_len)
    cells = [(i, j) for i in range(n) for j in range(m)]
    B = set(rng.sample(cells, rng.randint(0, min(max_links, len(cells)))))
    D = set(rng.sample(cells, rng.randint(0, min(max_links, len(cells)))))
    return n, m, B, D
