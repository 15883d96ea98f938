// SPDX-License-Identifier: Apache-2.0
#include "xsplanes/bitlin.hpp"

#include <stdexcept>
#include <string>

namespace xsplanes {

void check_shift(int count) {
    if (count < 0 || count > 63) {
        throw std::out_of_range("shift count out of range [0,63]: " + std::to_string(count));
    }
}

Word64 shl(Word64 x, int a) {
    check_shift(a);
    return x << a;
}

Word64 shr(Word64 x, int b) {
    check_shift(b);
    return x >> b;
}

Word64 xorshift_xform(Word64 x, int a, ShiftDir dir) {
    return x ^ (dir == ShiftDir::left ? shl(x, a) : shr(x, a));
}

BitMatrix64 BitMatrix64::identity() {
    BitMatrix64 m;
    for (int i = 1; i <= 64; ++i) {
        m.set_row(i, basis(i));
    }
    return m;
}

void BitMatrix64::set(int i, int j, bool bit) {
    Word64 r = row(i);
    r = bit ? (r | basis(j)) : (r & ~basis(j));
    set_row(i, r);
}

Word64 BitMatrix64::act(Word64 v) const {
    Word64 acc = 0;
    for (int i = 1; i <= 64; ++i) {
        if (v & basis(i)) {
            acc ^= row(i);
        }
    }
    return acc;
}

BitMatrix64 operator*(const BitMatrix64& lhs, const BitMatrix64& rhs) {
    BitMatrix64 out;
    for (int i = 1; i <= 64; ++i) {
        out.set_row(i, rhs.act(lhs.row(i)));
    }
    return out;
}

BitMatrix64 operator+(const BitMatrix64& lhs, const BitMatrix64& rhs) {
    BitMatrix64 out;
    for (int i = 1; i <= 64; ++i) {
        out.set_row(i, lhs.row(i) ^ rhs.row(i));
    }
    return out;
}

BitMatrix64 matrix_of(const std::function<Word64(Word64)>& op) {
    BitMatrix64 m;
    for (int i = 1; i <= 64; ++i) {
        m.set_row(i, op(basis(i)));
    }
    return m;
}

} // namespace xsplanes
