// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <functional>

namespace xsplanes {

/// A 64-bit word read as a row vector (x_1, ..., x_64) over F2, where x_1 is
/// the most significant bit: value = sum x_i * 2^(64-i).
using Word64 = std::uint64_t;

enum class ShiftDir { left, right };

/// Throws std::out_of_range unless 0 <= count <= 63.
void check_shift(int count);

/// x * L^a: left shift, i.e. 2^a * x mod 2^64.
Word64 shl(Word64 x, int a);

/// x * R^b: logical right shift.
Word64 shr(Word64 x, int b);

/// Word action of I + L^a (left) or I + R^a (right): x ^ (x shifted by a).
Word64 xorshift_xform(Word64 x, int a, ShiftDir dir);

/// 1-based MSB-first basis vector e_i.
constexpr Word64 basis(int i) { return Word64{1} << (64 - i); }

/// Explicit 64x64 matrix over F2, row-major, acting on row vectors (v -> vM).
/// Only used to cross-check that the word operations realize the intended
/// matrices; the generator never touches it.
class BitMatrix64 {
public:
    BitMatrix64() = default;

    static BitMatrix64 identity();

    /// Row i (1-based) is the image of e_i.
    Word64 row(int i) const { return rows_[static_cast<std::size_t>(i - 1)]; }
    void set_row(int i, Word64 r) { rows_[static_cast<std::size_t>(i - 1)] = r; }

    bool get(int i, int j) const { return (row(i) & basis(j)) != 0; }
    void set(int i, int j, bool bit);

    /// v * M: xor of the rows selected by the set bits of v.
    Word64 act(Word64 v) const;

    friend BitMatrix64 operator*(const BitMatrix64& lhs, const BitMatrix64& rhs);
    friend BitMatrix64 operator+(const BitMatrix64& lhs, const BitMatrix64& rhs);
    friend bool operator==(const BitMatrix64&, const BitMatrix64&) = default;

private:
    std::array<Word64, 64> rows_{};
};

/// Materializes an F2-linear word transform: row i = op(e_i). The caller
/// asserts linearity; act(matrix_of(op), v) == op(v) then holds for all v.
BitMatrix64 matrix_of(const std::function<Word64(Word64)>& op);

} // namespace xsplanes
