# Generated by fab.accel._limbgen; do not edit.
# Montgomery arithmetic on 8 x 32-bit limbs (uint64 containers), R = 2^256.
import numpy as np
from numba import njit

Z = np.uint64(0)
O = np.uint64(1)
M = np.uint64(0xFFFFFFFF)
S = np.uint64(32)
S63 = np.uint64(63)
N0 = np.uint64(0xffffffff)
P0 = np.uint64(0x00000001)
P1 = np.uint64(0xffffffff)
P2 = np.uint64(0xfffe5bfe)
P3 = np.uint64(0x53bda402)
P4 = np.uint64(0x09a1d805)
P5 = np.uint64(0x3339d808)
P6 = np.uint64(0x299d7d48)
P7 = np.uint64(0x73eda753)


def mul(a, b):
    a0, a1, a2, a3, a4, a5, a6, a7 = a
    b0, b1, b2, b3, b4, b5, b6, b7 = b
    t0 = Z
    t1 = Z
    t2 = Z
    t3 = Z
    t4 = Z
    t5 = Z
    t6 = Z
    t7 = Z
    t8 = Z
    t9 = Z
    c = Z
    s = t0 + a0 * b0 + c
    t0 = s & M
    c = s >> S
    s = t1 + a1 * b0 + c
    t1 = s & M
    c = s >> S
    s = t2 + a2 * b0 + c
    t2 = s & M
    c = s >> S
    s = t3 + a3 * b0 + c
    t3 = s & M
    c = s >> S
    s = t4 + a4 * b0 + c
    t4 = s & M
    c = s >> S
    s = t5 + a5 * b0 + c
    t5 = s & M
    c = s >> S
    s = t6 + a6 * b0 + c
    t6 = s & M
    c = s >> S
    s = t7 + a7 * b0 + c
    t7 = s & M
    c = s >> S
    s = t8 + c
    t8 = s & M
    t9 = s >> S
    m = (t0 * N0) & M
    s = t0 + m * P0
    c = s >> S
    s = t1 + m * P1 + c
    t0 = s & M
    c = s >> S
    s = t2 + m * P2 + c
    t1 = s & M
    c = s >> S
    s = t3 + m * P3 + c
    t2 = s & M
    c = s >> S
    s = t4 + m * P4 + c
    t3 = s & M
    c = s >> S
    s = t5 + m * P5 + c
    t4 = s & M
    c = s >> S
    s = t6 + m * P6 + c
    t5 = s & M
    c = s >> S
    s = t7 + m * P7 + c
    t6 = s & M
    c = s >> S
    s = t8 + c
    t7 = s & M
    t8 = t9 + (s >> S)
    c = Z
    s = t0 + a0 * b1 + c
    t0 = s & M
    c = s >> S
    s = t1 + a1 * b1 + c
    t1 = s & M
    c = s >> S
    s = t2 + a2 * b1 + c
    t2 = s & M
    c = s >> S
    s = t3 + a3 * b1 + c
    t3 = s & M
    c = s >> S
    s = t4 + a4 * b1 + c
    t4 = s & M
    c = s >> S
    s = t5 + a5 * b1 + c
    t5 = s & M
    c = s >> S
    s = t6 + a6 * b1 + c
    t6 = s & M
    c = s >> S
    s = t7 + a7 * b1 + c
    t7 = s & M
    c = s >> S
    s = t8 + c
    t8 = s & M
    t9 = s >> S
    m = (t0 * N0) & M
    s = t0 + m * P0
    c = s >> S
    s = t1 + m * P1 + c
    t0 = s & M
    c = s >> S
    s = t2 + m * P2 + c
    t1 = s & M
    c = s >> S
    s = t3 + m * P3 + c
    t2 = s & M
    c = s >> S
    s = t4 + m * P4 + c
    t3 = s & M
    c = s >> S
    s = t5 + m * P5 + c
    t4 = s & M
    c = s >> S
    s = t6 + m * P6 + c
    t5 = s & M
    c = s >> S
    s = t7 + m * P7 + c
    t6 = s & M
    c = s >> S
    s = t8 + c
    t7 = s & M
    t8 = t9 + (s >> S)
    c = Z
    s = t0 + a0 * b2 + c
    t0 = s & M
    c = s >> S
    s = t1 + a1 * b2 + c
    t1 = s & M
    c = s >> S
    s = t2 + a2 * b2 + c
    t2 = s & M
    c = s >> S
    s = t3 + a3 * b2 + c
    t3 = s & M
    c = s >> S
    s = t4 + a4 * b2 + c
    t4 = s & M
    c = s >> S
    s = t5 + a5 * b2 + c
    t5 = s & M
    c = s >> S
    s = t6 + a6 * b2 + c
    t6 = s & M
    c = s >> S
    s = t7 + a7 * b2 + c
    t7 = s & M
    c = s >> S
    s = t8 + c
    t8 = s & M
    t9 = s >> S
    m = (t0 * N0) & M
    s = t0 + m * P0
    c = s >> S
    s = t1 + m * P1 + c
    t0 = s & M
    c = s >> S
    s = t2 + m * P2 + c
    t1 = s & M
    c = s >> S
    s = t3 + m * P3 + c
    t2 = s & M
    c = s >> S
    s = t4 + m * P4 + c
    t3 = s & M
    c = s >> S
    s = t5 + m * P5 + c
    t4 = s & M
    c = s >> S
    s = t6 + m * P6 + c
    t5 = s & M
    c = s >> S
    s = t7 + m * P7 + c
    t6 = s & M
    c = s >> S
    s = t8 + c
    t7 = s & M
    t8 = t9 + (s >> S)
    c = Z
    s = t0 + a0 * b3 + c
    t0 = s & M
    c = s >> S
    s = t1 + a1 * b3 + c
    t1 = s & M
    c = s >> S
    s = t2 + a2 * b3 + c
    t2 = s & M
    c = s >> S
    s = t3 + a3 * b3 + c
    t3 = s & M
    c = s >> S
    s = t4 + a4 * b3 + c
    t4 = s & M
    c = s >> S
    s = t5 + a5 * b3 + c
    t5 = s & M
    c = s >> S
    s = t6 + a6 * b3 + c
    t6 = s & M
    c = s >> S
    s = t7 + a7 * b3 + c
    t7 = s & M
    c = s >> S
    s = t8 + c
    t8 = s & M
    t9 = s >> S
    m = (t0 * N0) & M
    s = t0 + m * P0
    c = s >> S
    s = t1 + m * P1 + c
    t0 = s & M
    c = s >> S
    s = t2 + m * P2 + c
    t1 = s & M
    c = s >> S
    s = t3 + m * P3 + c
    t2 = s & M
    c = s >> S
    s = t4 + m * P4 + c
    t3 = s & M
    c = s >> S
    s = t5 + m * P5 + c
    t4 = s & M
    c = s >> S
    s = t6 + m * P6 + c
    t5 = s & M
    c = s >> S
    s = t7 + m * P7 + c
    t6 = s & M
    c = s >> S
    s = t8 + c
    t7 = s & M
    t8 = t9 + (s >> S)
    c = Z
    s = t0 + a0 * b4 + c
    t0 = s & M
    c = s >> S
    s = t1 + a1 * b4 + c
    t1 = s & M
    c = s >> S
    s = t2 + a2 * b4 + c
    t2 = s & M
    c = s >> S
    s = t3 + a3 * b4 + c
    t3 = s & M
    c = s >> S
    s = t4 + a4 * b4 + c
    t4 = s & M
    c = s >> S
    s = t5 + a5 * b4 + c
    t5 = s & M
    c = s >> S
    s = t6 + a6 * b4 + c
    t6 = s & M
    c = s >> S
    s = t7 + a7 * b4 + c
    t7 = s & M
    c = s >> S
    s = t8 + c
    t8 = s & M
    t9 = s >> S
    m = (t0 * N0) & M
    s = t0 + m * P0
    c = s >> S
    s = t1 + m * P1 + c
    t0 = s & M
    c = s >> S
    s = t2 + m * P2 + c
    t1 = s & M
    c = s >> S
    s = t3 + m * P3 + c
    t2 = s & M
    c = s >> S
    s = t4 + m * P4 + c
    t3 = s & M
    c = s >> S
    s = t5 + m * P5 + c
    t4 = s & M
    c = s >> S
    s = t6 + m * P6 + c
    t5 = s & M
    c = s >> S
    s = t7 + m * P7 + c
    t6 = s & M
    c = s >> S
    s = t8 + c
    t7 = s & M
    t8 = t9 + (s >> S)
    c = Z
    s = t0 + a0 * b5 + c
    t0 = s & M
    c = s >> S
    s = t1 + a1 * b5 + c
    t1 = s & M
    c = s >> S
    s = t2 + a2 * b5 + c
    t2 = s & M
    c = s >> S
    s = t3 + a3 * b5 + c
    t3 = s & M
    c = s >> S
    s = t4 + a4 * b5 + c
    t4 = s & M
    c = s >> S
    s = t5 + a5 * b5 + c
    t5 = s & M
    c = s >> S
    s = t6 + a6 * b5 + c
    t6 = s & M
    c = s >> S
    s = t7 + a7 * b5 + c
    t7 = s & M
    c = s >> S
    s = t8 + c
    t8 = s & M
    t9 = s >> S
    m = (t0 * N0) & M
    s = t0 + m * P0
    c = s >> S
    s = t1 + m * P1 + c
    t0 = s & M
    c = s >> S
    s = t2 + m * P2 + c
    t1 = s & M
    c = s >> S
    s = t3 + m * P3 + c
    t2 = s & M
    c = s >> S
    s = t4 + m * P4 + c
    t3 = s & M
    c = s >> S
    s = t5 + m * P5 + c
    t4 = s & M
    c = s >> S
    s = t6 + m * P6 + c
    t5 = s & M
    c = s >> S
    s = t7 + m * P7 + c
    t6 = s & M
    c = s >> S
    s = t8 + c
    t7 = s & M
    t8 = t9 + (s >> S)
    c = Z
    s = t0 + a0 * b6 + c
    t0 = s & M
    c = s >> S
    s = t1 + a1 * b6 + c
    t1 = s & M
    c = s >> S
    s = t2 + a2 * b6 + c
    t2 = s & M
    c = s >> S
    s = t3 + a3 * b6 + c
    t3 = s & M
    c = s >> S
    s = t4 + a4 * b6 + c
    t4 = s & M
    c = s >> S
    s = t5 + a5 * b6 + c
    t5 = s & M
    c = s >> S
    s = t6 + a6 * b6 + c
    t6 = s & M
    c = s >> S
    s = t7 + a7 * b6 + c
    t7 = s & M
    c = s >> S
    s = t8 + c
    t8 = s & M
    t9 = s >> S
    m = (t0 * N0) & M
    s = t0 + m * P0
    c = s >> S
    s = t1 + m * P1 + c
    t0 = s & M
    c = s >> S
    s = t2 + m * P2 + c
    t1 = s & M
    c = s >> S
    s = t3 + m * P3 + c
    t2 = s & M
    c = s >> S
    s = t4 + m * P4 + c
    t3 = s & M
    c = s >> S
    s = t5 + m * P5 + c
    t4 = s & M
    c = s >> S
    s = t6 + m * P6 + c
    t5 = s & M
    c = s >> S
    s = t7 + m * P7 + c
    t6 = s & M
    c = s >> S
    s = t8 + c
    t7 = s & M
    t8 = t9 + (s >> S)
    c = Z
    s = t0 + a0 * b7 + c
    t0 = s & M
    c = s >> S
    s = t1 + a1 * b7 + c
    t1 = s & M
    c = s >> S
    s = t2 + a2 * b7 + c
    t2 = s & M
    c = s >> S
    s = t3 + a3 * b7 + c
    t3 = s & M
    c = s >> S
    s = t4 + a4 * b7 + c
    t4 = s & M
    c = s >> S
    s = t5 + a5 * b7 + c
    t5 = s & M
    c = s >> S
    s = t6 + a6 * b7 + c
    t6 = s & M
    c = s >> S
    s = t7 + a7 * b7 + c
    t7 = s & M
    c = s >> S
    s = t8 + c
    t8 = s & M
    t9 = s >> S
    m = (t0 * N0) & M
    s = t0 + m * P0
    c = s >> S
    s = t1 + m * P1 + c
    t0 = s & M
    c = s >> S
    s = t2 + m * P2 + c
    t1 = s & M
    c = s >> S
    s = t3 + m * P3 + c
    t2 = s & M
    c = s >> S
    s = t4 + m * P4 + c
    t3 = s & M
    c = s >> S
    s = t5 + m * P5 + c
    t4 = s & M
    c = s >> S
    s = t6 + m * P6 + c
    t5 = s & M
    c = s >> S
    s = t7 + m * P7 + c
    t6 = s & M
    c = s >> S
    s = t8 + c
    t7 = s & M
    t8 = t9 + (s >> S)
    if (t7 > P7 or (t7 == P7 and (t6 > P6 or (t6 == P6 and (t5 > P5 or (t5 == P5 and (t4 > P4 or (t4 == P4 and (t3 > P3 or (t3 == P3 and (t2 > P2 or (t2 == P2 and (t1 > P1 or (t1 == P1 and (t0 > P0 or (t0 == P0 and True)))))))))))))))):
        br = Z
        d = t0 - P0 - br
        br = (d >> S63) & O
        t0 = d & M
        d = t1 - P1 - br
        br = (d >> S63) & O
        t1 = d & M
        d = t2 - P2 - br
        br = (d >> S63) & O
        t2 = d & M
        d = t3 - P3 - br
        br = (d >> S63) & O
        t3 = d & M
        d = t4 - P4 - br
        br = (d >> S63) & O
        t4 = d & M
        d = t5 - P5 - br
        br = (d >> S63) & O
        t5 = d & M
        d = t6 - P6 - br
        br = (d >> S63) & O
        t6 = d & M
        d = t7 - P7 - br
        br = (d >> S63) & O
        t7 = d & M
    return (t0, t1, t2, t3, t4, t5, t6, t7)


def add(a, b):
    a0, a1, a2, a3, a4, a5, a6, a7 = a
    b0, b1, b2, b3, b4, b5, b6, b7 = b
    c = Z
    s = a0 + b0 + c
    t0 = s & M
    c = s >> S
    s = a1 + b1 + c
    t1 = s & M
    c = s >> S
    s = a2 + b2 + c
    t2 = s & M
    c = s >> S
    s = a3 + b3 + c
    t3 = s & M
    c = s >> S
    s = a4 + b4 + c
    t4 = s & M
    c = s >> S
    s = a5 + b5 + c
    t5 = s & M
    c = s >> S
    s = a6 + b6 + c
    t6 = s & M
    c = s >> S
    s = a7 + b7 + c
    t7 = s & M
    c = s >> S
    if (t7 > P7 or (t7 == P7 and (t6 > P6 or (t6 == P6 and (t5 > P5 or (t5 == P5 and (t4 > P4 or (t4 == P4 and (t3 > P3 or (t3 == P3 and (t2 > P2 or (t2 == P2 and (t1 > P1 or (t1 == P1 and (t0 > P0 or (t0 == P0 and True)))))))))))))))):
        br = Z
        d = t0 - P0 - br
        br = (d >> S63) & O
        t0 = d & M
        d = t1 - P1 - br
        br = (d >> S63) & O
        t1 = d & M
        d = t2 - P2 - br
        br = (d >> S63) & O
        t2 = d & M
        d = t3 - P3 - br
        br = (d >> S63) & O
        t3 = d & M
        d = t4 - P4 - br
        br = (d >> S63) & O
        t4 = d & M
        d = t5 - P5 - br
        br = (d >> S63) & O
        t5 = d & M
        d = t6 - P6 - br
        br = (d >> S63) & O
        t6 = d & M
        d = t7 - P7 - br
        br = (d >> S63) & O
        t7 = d & M
    return (t0, t1, t2, t3, t4, t5, t6, t7)


def sub(a, b):
    a0, a1, a2, a3, a4, a5, a6, a7 = a
    b0, b1, b2, b3, b4, b5, b6, b7 = b
    br = Z
    d = a0 - b0 - br
    br = (d >> S63) & O
    t0 = d & M
    d = a1 - b1 - br
    br = (d >> S63) & O
    t1 = d & M
    d = a2 - b2 - br
    br = (d >> S63) & O
    t2 = d & M
    d = a3 - b3 - br
    br = (d >> S63) & O
    t3 = d & M
    d = a4 - b4 - br
    br = (d >> S63) & O
    t4 = d & M
    d = a5 - b5 - br
    br = (d >> S63) & O
    t5 = d & M
    d = a6 - b6 - br
    br = (d >> S63) & O
    t6 = d & M
    d = a7 - b7 - br
    br = (d >> S63) & O
    t7 = d & M
    if br:
        c = Z
        s = t0 + P0 + c
        t0 = s & M
        c = s >> S
        s = t1 + P1 + c
        t1 = s & M
        c = s >> S
        s = t2 + P2 + c
        t2 = s & M
        c = s >> S
        s = t3 + P3 + c
        t3 = s & M
        c = s >> S
        s = t4 + P4 + c
        t4 = s & M
        c = s >> S
        s = t5 + P5 + c
        t5 = s & M
        c = s >> S
        s = t6 + P6 + c
        t6 = s & M
        c = s >> S
        s = t7 + P7 + c
        t7 = s & M
        c = s >> S
    return (t0, t1, t2, t3, t4, t5, t6, t7)


def load(arr, i):
    return (arr[i, 0], arr[i, 1], arr[i, 2], arr[i, 3], arr[i, 4], arr[i, 5], arr[i, 6], arr[i, 7])

def store(arr, i, v):
    arr[i, 0] = v[0]
    arr[i, 1] = v[1]
    arr[i, 2] = v[2]
    arr[i, 3] = v[3]
    arr[i, 4] = v[4]
    arr[i, 5] = v[5]
    arr[i, 6] = v[6]
    arr[i, 7] = v[7]


# Inlining suits the short butterfly/map loops; the Poseidon body has ~20
# multiply sites and compiles and runs slower when fully inlined.
mul_i = njit(cache=True, inline="always")(mul)
add_i = njit(cache=True, inline="always")(add)
sub_i = njit(cache=True, inline="always")(sub)
load_i = njit(cache=True, inline="always")(load)
store_i = njit(cache=True, inline="always")(store)
mul = njit(cache=True)(mul)
add = njit(cache=True)(add)
sub = njit(cache=True)(sub)
load = njit(cache=True)(load)
store = njit(cache=True)(store)
