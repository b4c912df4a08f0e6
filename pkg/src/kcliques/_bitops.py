"""Word-level primitives shared by the traversal kernels.

Everything here is numba-compiled and safe to call from nogil code. Bit
rows are little-endian within a word: local index i lives at bit (i % 64)
of word (i // 64).
"""

import numpy as np
from llvmlite import ir
from numba import njit, types
from numba.extending import intrinsic

W = 64  # bits per word

U0 = np.uint64(0)
U1 = np.uint64(1)
FULL = np.uint64(0xFFFFFFFFFFFFFFFF)


@intrinsic
def popcount(typingctx, x):
    """Set-bit count of one 64-bit word."""
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        (val,) = args
        fn = builder.module.declare_intrinsic("llvm.ctpop", [ir.IntType(64)])
        return builder.call(fn, [val])

    return sig, codegen


@intrinsic
def trailing_zeros(typingctx, x):
    """Index of the lowest set bit; 64 when x == 0."""
    sig = types.uint64(types.uint64)

    def codegen(context, builder, signature, args):
        (val,) = args
        i64 = ir.IntType(64)
        fnty = ir.FunctionType(i64, [i64, ir.IntType(1)])
        fn = builder.module.declare_intrinsic("llvm.cttz", [i64], fnty)
        return builder.call(fn, [val, ir.Constant(ir.IntType(1), 0)])

    return sig, codegen


@intrinsic
def atomic_fetch_add(typingctx, arr, inc):
    """Atomically add inc to arr[0] and return the previous value."""
    sig = types.int64(types.int64[::1], types.int64)

    def codegen(context, builder, signature, args):
        arr_val, inc_val = args
        ary = context.make_array(signature.args[0])(context, builder, arr_val)
        return builder.atomic_rmw("add", ary.data, inc_val, ordering="monotonic")

    return sig, codegen


@njit(inline="always")
def csr_contains(col, lo, hi, x):
    # binary search in the sorted slice col[lo:hi]
    while lo < hi:
        mid = (lo + hi) >> 1
        c = col[mid]
        if c < x:
            lo = mid + 1
        elif c > x:
            hi = mid
        else:
            return True
    return False


@njit(inline="always")
def acc_add(out, add_lo):
    # out[0:2] is a little-endian 128-bit accumulator, out[3] the overflow
    # flag; add_lo is a plain 64-bit amount
    lo = out[0] + add_lo
    if lo < out[0]:
        hi = out[1] + U1
        if hi == U0:
            out[3] = U1
        out[1] = hi
    out[0] = lo


@njit(inline="always")
def acc_add128(out, add_lo, add_hi):
    lo = out[0] + add_lo
    carry = U1 if lo < out[0] else U0
    mid = out[1] + add_hi
    wrapped = mid < out[1]
    hi = mid + carry
    if wrapped or hi < mid:
        out[3] = U1
    out[0] = lo
    out[1] = hi


@njit(inline="always")
def slot_add128(lo_arr, hi_arr, i, add_lo, add_hi, meta):
    # same carry logic over parallel per-slot arrays; meta[1] is the error flag
    lo = lo_arr[i] + add_lo
    carry = U1 if lo < lo_arr[i] else U0
    mid = hi_arr[i] + add_hi
    wrapped = mid < hi_arr[i]
    hi = mid + carry
    if wrapped or hi < mid:
        meta[1] = U1
    lo_arr[i] = lo
    hi_arr[i] = hi


@njit(inline="always")
def fill_all_ones(row, count, wpr):
    # first `count` bits set, the rest of the active words zero
    for w in range(wpr):
        lo_bit = w << 6
        if lo_bit + W <= count:
            row[w] = FULL
        elif lo_bit < count:
            row[w] = (U1 << np.uint64(count - lo_bit)) - U1
        else:
            row[w] = U0


def value128(lo, hi):
    """Python integer from a (lo, hi) pair of 64-bit words."""
    return int(lo) | (int(hi) << 64)
