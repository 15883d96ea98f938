// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "xsplanes/bitlin.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <string_view>

namespace xsplanes {

/// Which arithmetic relation x ^ y agrees with:
///   sum   (A):  x ^ y == x + y
///   diff  (B):  x ^ y == x - y
///   rdiff (C):  x ^ y == y - x
/// Applied to (s, 2^a s) the three give multipliers 1+2^a, 1-2^a, 2^a-1;
/// applied to the xor operands of the output sum they give the +, -, t- rows.
enum class CaseKind { sum = 0, diff = 1, rdiff = 2 };

inline constexpr std::array<CaseKind, 3> kAllCases{CaseKind::sum, CaseKind::diff, CaseKind::rdiff};

/// Maximum bit width for classification of n-bit pairs.
inline constexpr int kMaxWidth = 16;
/// Maximum width for exhaustive 4^n enumeration.
inline constexpr int kMaxExhaustiveWidth = 12;

struct CaseLabel {
    bool in_A = false;
    bool in_B = false;
    bool in_C = false;

    bool has(CaseKind k) const {
        switch (k) {
        case CaseKind::sum: return in_A;
        case CaseKind::diff: return in_B;
        case CaseKind::rdiff: return in_C;
        }
        return false;
    }
    bool any() const { return in_A || in_B || in_C; }

    friend bool operator==(const CaseLabel&, const CaseLabel&) = default;
};

struct CaseCounts {
    std::uint64_t total = 0;
    std::uint64_t cA = 0, cB = 0, cC = 0;
    std::uint64_t cAB = 0, cBC = 0, cCA = 0;
    std::uint64_t cABC = 0;
    std::uint64_t cUnion = 0;

    bool inclusion_exclusion_holds() const {
        return cUnion + cAB + cBC + cCA == cA + cB + cC + cABC;
    }
};

/// Columnwise classification of an n-bit pair: A iff no (1,1) column,
/// B iff no (0,1) column, C iff no (1,0) column.
/// Throws std::out_of_range for n outside 1..16 or operands >= 2^n.
CaseLabel classify(std::uint64_t x, std::uint64_t y, int n);

/// Exhaustive census of all 4^n pairs using the arithmetic definitions of
/// A, B, C (no modulus). Throws std::out_of_range for n outside 1..12.
CaseCounts count_cases(int n);

struct TheoremCheck {
    bool holds = false;
    std::uint64_t pairs = 0;
    std::uint64_t equality_pairs = 0;
};

/// For every n-bit pair: x ^ y <= x + y, with equality iff (x & y) == 0.
TheoremCheck verify_xor_sum(int n);

/// For every n-bit pair: x ^ y >= x - y (signed), with equality iff
/// (~x & y) == 0.
TheoremCheck verify_xor_diff(int n);

/// The top n bits of a 64-bit word, as an n-bit integer.
constexpr std::uint64_t top_bits(Word64 s, int n) { return s >> (64 - n); }

/// Classifies (top n of s, top n of 2^a s mod 2^64).
CaseLabel classify_inner(Word64 s, int a, int n);

/// Classifies (top n of s_next, top n of t), t = s (I + L^a) of the previous
/// state word, supplied by the caller.
CaseLabel classify_outer(Word64 s_next, Word64 t, int n);

/// The arithmetic stand-in for s ^ (2^a s) under case k, mod 2^64:
/// (1+2^a)s, (1-2^a)s, (2^a-1)s.
Word64 inner_approx(Word64 s, int a, CaseKind k);

/// The arithmetic stand-in for s_next ^ t under case k, mod 2^64:
/// s_next + t, s_next - t, t - s_next.
Word64 outer_approx(Word64 s_next, Word64 t, CaseKind k);

/// True when label k holds on the top n bits but a carry or borrow from the
/// lower bits still makes the top n bits of the xor and of the arithmetic
/// stand-in disagree.
bool carry_leaks(Word64 xor_value, Word64 approx_value, int n);

struct CompoundProbability {
    boost::multiprecision::cpp_int numerator;
    boost::multiprecision::cpp_int denominator;
    double value = 0.0;
    /// n == 0: the formula still evaluates (to 9) but is not a probability.
    bool degenerate = false;
};

/// ((p^2) * 3)^2 with p = (3/4)^n, the chance of one of the three cases
/// holding on n bits for two independent pairs, for both the outer and the
/// inner case families. Exact and reduced. Throws for n < 0 or n > 64.
CompoundProbability compound_probability(int n);

struct Table1Coeffs {
    std::int64_t coef_x = 0;
    int coef_y = 0;

    friend bool operator==(const Table1Coeffs&, const Table1Coeffs&) = default;
};

/// Coefficients (m_x, m_y) with z ~ m_x x + m_y y when outer case `outer`
/// holds at steps i and i+1 and inner case `inner` holds at both as well.
/// Throws std::out_of_range unless 1 <= a <= 62.
Table1Coeffs table1_coeffs(CaseKind outer, CaseKind inner, int a);

std::string_view outer_name(CaseKind k);
std::string_view inner_name(CaseKind k);

} // namespace xsplanes
