"""Source generator for the unrolled limb arithmetic in ``_limbs.py``.

Run ``python -m fab.accel._limbgen`` to rewrite ``_limbs.py`` after
changing anything here; a test asserts the two are in sync.
"""

from pathlib import Path

from ..field import P

NLIMBS = 8
_LIMBS = [(P >> (32 * k)) & 0xFFFFFFFF for k in range(NLIMBS)]
_N0 = (-pow(P, -1, 1 << 32)) % (1 << 32)


def _ge_p_expr(n: int) -> str:
    expr = "True"
    for k in range(n):
        expr = f"(t{k} > P{k} or (t{k} == P{k} and {expr}))"
    return expr


def _sub_p_lines(n: int, indent: str) -> list[str]:
    out = [f"{indent}br = Z"]
    for k in range(n):
        out += [
            f"{indent}d = t{k} - P{k} - br",
            f"{indent}br = (d >> S63) & O",
            f"{indent}t{k} = d & M",
        ]
    return out


def _unpack(name: str, var: str, n: int) -> str:
    return "    " + ", ".join(f"{var}{k}" for k in range(n)) + f" = {name}"


def _ret(n: int) -> str:
    return "    return (" + ", ".join(f"t{k}" for k in range(n)) + ")"


def _gen_mul(n: int) -> str:
    lines = ["def mul(a, b):", _unpack("a", "a", n), _unpack("b", "b", n)]
    lines += [f"    t{k} = Z" for k in range(n + 2)]
    for i in range(n):
        lines.append("    c = Z")
        for j in range(n):
            lines += [f"    s = t{j} + a{j} * b{i} + c", f"    t{j} = s & M", "    c = s >> S"]
        lines += [f"    s = t{n} + c", f"    t{n} = s & M", f"    t{n + 1} = s >> S"]
        lines += ["    m = (t0 * N0) & M", "    s = t0 + m * P0", "    c = s >> S"]
        for j in range(1, n):
            lines += [f"    s = t{j} + m * P{j} + c", f"    t{j - 1} = s & M", "    c = s >> S"]
        lines += [f"    s = t{n} + c", f"    t{n - 1} = s & M", f"    t{n} = t{n + 1} + (s >> S)"]
    lines.append(f"    if {_ge_p_expr(n)}:")
    lines += _sub_p_lines(n, "        ")
    lines.append(_ret(n))
    return "\n".join(lines)


def _gen_add(n: int) -> str:
    lines = ["def add(a, b):", _unpack("a", "a", n), _unpack("b", "b", n), "    c = Z"]
    for k in range(n):
        lines += [f"    s = a{k} + b{k} + c", f"    t{k} = s & M", "    c = s >> S"]
    # p < 2^255, so a + b < 2^256 never carries out
    lines.append(f"    if {_ge_p_expr(n)}:")
    lines += _sub_p_lines(n, "        ")
    lines.append(_ret(n))
    return "\n".join(lines)


def _gen_sub(n: int) -> str:
    lines = ["def sub(a, b):", _unpack("a", "a", n), _unpack("b", "b", n), "    br = Z"]
    for k in range(n):
        lines += [f"    d = a{k} - b{k} - br", "    br = (d >> S63) & O", f"    t{k} = d & M"]
    lines.append("    if br:")
    lines.append("        c = Z")
    for k in range(n):
        lines += [f"        s = t{k} + P{k} + c", f"        t{k} = s & M", "        c = s >> S"]
    lines.append(_ret(n))
    return "\n".join(lines)


def _gen_io(n: int) -> str:
    load = "def load(arr, i):\n    return (" + ", ".join(f"arr[i, {k}]" for k in range(n)) + ")"
    store = "def store(arr, i, v):\n" + "\n".join(f"    arr[i, {k}] = v[{k}]" for k in range(n))
    return load + "\n\n" + store


def render() -> str:
    header = [
        "# Generated by fab.accel._limbgen; do not edit.",
        "# Montgomery arithmetic on 8 x 32-bit limbs (uint64 containers), R = 2^256.",
        "import numpy as np",
        "from numba import njit",
        "",
        "Z = np.uint64(0)",
        "O = np.uint64(1)",
        "M = np.uint64(0xFFFFFFFF)",
        "S = np.uint64(32)",
        "S63 = np.uint64(63)",
        f"N0 = np.uint64({_N0:#x})",
    ]
    header += [f"P{k} = np.uint64({v:#010x})" for k, v in enumerate(_LIMBS)]
    bodies = [_gen_mul(NLIMBS), _gen_add(NLIMBS), _gen_sub(NLIMBS), _gen_io(NLIMBS)]
    out = "\n".join(header) + "\n\n\n" + "\n\n\n".join(bodies) + "\n"
    out += "\n\n# Inlining suits the short butterfly/map loops; the Poseidon body has ~20\n"
    out += "# multiply sites and compiles and runs slower when fully inlined.\n"
    for name in ("mul", "add", "sub", "load", "store"):
        out += f"{name}_i = njit(cache=True, inline=\"always\")({name})\n"
    for name in ("mul", "add", "sub", "load", "store"):
        out += f"{name} = njit(cache=True)({name})\n"
    return out


if __name__ == "__main__":
    Path(__file__).with_name("_limbs.py").write_text(render())
