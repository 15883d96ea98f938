// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "xsplanes/control.hpp"
#include "xsplanes/planes.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <tuple>

using namespace xsplanes;

namespace {

constexpr double kGrid = 0x1.0p-53;

// frac(m * k 2^-53) computed exactly in 128-bit integers.
double exact_frac_mul(std::uint64_t m, std::uint64_t k) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(m) * k;
    const std::uint64_t low = static_cast<std::uint64_t>(prod) & ((std::uint64_t{1} << 53) - 1);
    return static_cast<double>(low) * kGrid;
}

double circular(double u, double v) {
    const double d = std::abs(u - v);
    return std::min(d, 1.0 - d);
}

} // namespace

TEST_CASE("family(23)") {
    const PlaneFamily f = family(23);
    CHECK(f.a == 23);
    CHECK(f.planes.size() == 8);
    std::set<std::tuple<std::uint64_t, int, int>> combos;
    for (const auto& p : f.planes) {
        CHECK((p.m == 8388609 || p.m == 8388607));
        combos.emplace(p.m, p.sign_x, p.sign_y);
    }
    CHECK(combos.size() == 8);
    CHECK(f.planes[0] == Plane{8388607, 1, 1});
    CHECK(f.planes[1] == Plane{8388607, 1, -1});
    CHECK(f.planes[2] == Plane{8388607, -1, 1});
    CHECK(f.planes[7] == Plane{8388609, -1, -1});
}

TEST_CASE("family(1) and range") {
    const PlaneFamily f = family(1);
    for (const auto& p : f.planes) {
        CHECK((p.m == 1 || p.m == 3));
    }
    CHECK(family(62).planes[7].m == (std::uint64_t{1} << 62) + 1);
    CHECK_THROWS_AS(family(0), std::out_of_range);
    CHECK_THROWS_AS(family(63), std::out_of_range);
}

TEST_CASE("frac_mul against exact integer arithmetic") {
    Philox4x32 rng(8);
    for (std::uint64_t m : {std::uint64_t{3}, std::uint64_t{8388607}, std::uint64_t{8388609},
                            (std::uint64_t{1} << 40) + 1, (std::uint64_t{1} << 62) + 1,
                            ~std::uint64_t{0}}) {
        for (int i = 0; i < 20000; ++i) {
            const std::uint64_t k = rng() >> 11;
            const double x = static_cast<double>(k) * kGrid;
            REQUIRE(circular(frac_mul(m, x), exact_frac_mul(m, k)) <= 0x1.0p-50);
        }
    }
    CHECK(frac_mul(8388609, 0x1.0p-23) == 0x1.0p-23);
    CHECK(frac_mul(8388609, 0.0) == 0.0);
}

TEST_CASE("torus_dist examples") {
    for (const auto& p : family(23).planes) {
        if (p.sign_y > 0) {
            CHECK(torus_dist(Point3{0.0, 0.25, 0.25}, p) == 0.0);
        }
    }
    // Residue 0.75 folds to 0.25.
    CHECK(torus_dist(Point3{0.0, 0.0, 0.75}, Plane{5, 1, 1}) == 0.25);
    CHECK(torus_dist(Point3{0.0, 0.5, 0.0}, Plane{5, 1, 1}) == 0.5);
}

TEST_CASE("points built on a plane are at distance zero") {
    // x = k 2^-53, y = j 2^-53, z = frac(-m x + y) exactly in integers.
    const Plane plane{8388609, -1, 1};
    Philox4x32 rng(99);
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t k = (rng() >> 11) >> 20; // x < 2^-20
        const std::uint64_t j = rng() >> 11;
        const std::uint64_t mask = (std::uint64_t{1} << 53) - 1;
        const std::uint64_t zk = (j - plane.m * k) & mask;
        const Point3 p{static_cast<double>(k) * kGrid, static_cast<double>(j) * kGrid,
                       static_cast<double>(zk) * kGrid};
        REQUIRE(torus_dist(p, plane) <= 0x1.0p-40);
        const Nearest n = min_dist(p, family(23));
        REQUIRE(n.dist <= 0x1.0p-40);
    }
}

TEST_CASE("torus_dist is periodic in z") {
    Philox4x32 rng(3);
    const Plane plane{8388607, 1, -1};
    for (int i = 0; i < 1000; ++i) {
        const Point3 p{rng.uniform(), rng.uniform(), rng.uniform()};
        const Point3 q{p.x, p.y, p.z + 1.0};
        REQUIRE(std::abs(torus_dist(p, plane) - torus_dist(q, plane)) < 1e-12);
        REQUIRE(torus_dist(p, plane) <= 0.5);
    }
}

TEST_CASE("min_dist tie-break and arg-min") {
    // At x = 0 every plane with sign_y = + passes through z = y.
    const Nearest n = min_dist(Point3{0.0, 0.3, 0.3}, family(23));
    CHECK(n.dist == 0.0);
    CHECK(n.index == 0);
    CHECK(n.which == Plane{8388607, 1, 1});

    // A point on (2^23+1, -, -) away from the others.
    const Point3 p{0x1.0p-25, 0.4, 0.0};
    const double z = std::fmod(2.0 - 0.4 - 8388609.0 * 0x1.0p-25, 1.0);
    const Nearest m = min_dist(Point3{p.x, p.y, z}, family(23));
    CHECK(m.dist < 1e-12);
    CHECK(m.which.sign_x == -1);
    CHECK(m.which.sign_y == -1);
}

TEST_CASE("uniform points hit the family at about 16 epsilon") {
    Philox4x32 rng(1234);
    const PlaneFamily fam = family(23);
    for (double eps : {0x1.0p-8, 0x1.0p-10, 0x1.0p-12}) {
        const int N = 400000;
        int hits = 0;
        for (int i = 0; i < N; ++i) {
            const Point3 p{rng.uniform(), rng.uniform(), rng.uniform()};
            const double d = min_dist(p, fam).dist;
            REQUIRE(d <= 0.5);
            hits += d <= eps;
        }
        const double f = static_cast<double>(hits) / N;
        const double bound = 16 * eps;
        CHECK(f <= bound + 4 * std::sqrt(bound * (1 - bound) / N));
    }
}

TEST_CASE("the two coefficient families stay within 2x of each other on the slab") {
    Philox4x32 rng(55);
    const int a = 23;
    const double x_max = std::ldexp(1.0, -a);
    for (int i = 0; i < 10000; ++i) {
        const double x = rng.uniform() * x_max;
        const double y = rng.uniform();
        for (int sx : {1, -1}) {
            for (int sy : {1, -1}) {
                const Plane plus{(std::uint64_t{1} << a) + 1, sx, sy};
                const Plane minus{(std::uint64_t{1} << a) - 1, sx, sy};
                // A point on the "+" plane sits 2x above or below the "-" one.
                const double z = std::fmod(sx * frac_mul(plus.m, x) + sy * y + 4.0, 1.0);
                const Point3 p{x, y, z};
                REQUIRE(torus_dist(p, plus) <= 1e-12);
                REQUIRE(torus_dist(p, minus) <= 2 * x + 1e-12);
                REQUIRE(2 * x <= 0x1.0p-22);
            }
        }
    }
}

TEST_CASE("mesh of the 2^23+1 planes has two components") {
    const PlaneFamily fam = family(23);
    for (const auto& plane : fam.planes) {
        const Mesh m = mesh(plane, 0x1.0p-23, 0x1.0p23, MeshGrid{32, 129});
        CAPTURE(plane_label(plane));
        CHECK(connected_components(m) == 2);
        CHECK(m.vertex_count() == 32 * 129);
        for (const auto& s : m.strips) {
            for (const auto& v : s.vertices) {
                REQUIRE(v.x > 0.0);
                REQUIRE(v.x < 1.0);
                REQUIRE(v.z >= 0.0);
                REQUIRE(v.z < 1.0);
            }
        }
    }
}

TEST_CASE("mesh component count follows the wrap lines") {
    // u = 3x + y on the unit square crosses u = 1, 2, 3: four pieces.
    CHECK(connected_components(mesh(Plane{3, 1, 1}, 1.0, 1.0, MeshGrid{64, 257})) == 4);
    // u = x + y crosses u = 1 only.
    CHECK(connected_components(mesh(Plane{1, 1, 1}, 1.0, 1.0, MeshGrid{64, 257})) == 2);
    // u = -x - y lies in (-2, 0): crosses u = -1 only.
    CHECK(connected_components(mesh(Plane{1, -1, -1}, 1.0, 1.0, MeshGrid{64, 257})) == 2);
    // Near x = 0, u = x + y reaches 1 only in the closing row y = 1.
    const Mesh thin = mesh(Plane{1, 1, 1}, 0x1.0p-10, 1.0, MeshGrid{4, 9});
    CHECK(connected_components(thin) == 2);
}

TEST_CASE("mesh strips split at wraps and count vertices") {
    const Mesh m = mesh(Plane{8388609, 1, -1}, 0x1.0p-23, 0x1.0p23, MeshGrid{4, 17});
    CHECK(m.vertex_count() == 4 * 17);
    for (const auto& s : m.strips) {
        for (std::size_t i = 1; i < s.vertices.size(); ++i) {
            REQUIRE(std::abs(s.vertices[i].z - s.vertices[i - 1].z) < 0.5);
        }
    }
    CHECK(m.strips.size() == 8); // every column wraps once at y = m x
}

TEST_CASE("mesh argument checks") {
    const Plane p{3, 1, 1};
    CHECK_THROWS_AS(mesh(p, 0.5, 1.0, MeshGrid{0, 10}), std::invalid_argument);
    CHECK_THROWS_AS(mesh(p, 0.5, 1.0, MeshGrid{10, 1}), std::invalid_argument);
    CHECK_THROWS_AS(mesh(p, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mesh(p, 1.5, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(mesh(p, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("plane labels") {
    CHECK(plane_label(Plane{8388609, 1, -1}) == "(8388609,+,-)");
    CHECK(plane_file_stem(Plane{8388607, -1, 1}) == "plane_8388607_m_p");
}
